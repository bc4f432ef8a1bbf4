"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 unsupported operation or bound exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from .automata import Dwa, Wa, dwa_minimize, to_dwa, to_wa, wa_determinize
from .config import DEFAULT_BOUNDS
from .errors import BoundExceeded, Unsupported, WquotError
from .io import (
    DocumentError, export_dot, load_document, to_document, value_table,
)
from .quotient import series_quotient, word_quotient
from .residual import inclusion_degree, residual
from .series import as_word, word_str
from .universal import canonical_morphism, mergible, universal_automaton
from .wcfg import Wcfg, wcfg_eval, wcfg_left_quotient, wcfg_right_quotient


class InputError(Exception):
    pass


def _payload(path, kinds=None):
    doc = load_document(path)
    if kinds and doc.kind not in kinds:
        raise InputError(f"{path}: expected a {' or '.join(kinds)} document, got {doc.kind}")
    return doc.payload


def _dwa(path, bound):
    X = _payload(path, ("dwa", "wa", "series"))
    return to_dwa(X, bound)


def _word(X, w):
    if w.startswith("[") and w.endswith("]"):
        return X.check_word(json.loads(w))
    return X.check_word(as_word(w))


def _emit(obj):
    print(json.dumps(obj, ensure_ascii=False, sort_keys=False))


def _by(arg):
    kind, _, rest = arg.partition(":")
    if kind not in ("word", "series") or (kind == "series" and not rest):
        raise InputError(f"--by expects word:<w> or series:<file>, got {arg!r}")
    return kind, rest


def cmd_eval(a):
    X = _payload(a.doc)
    S = X.semiring
    if a.word is not None:
        words = [_word(X, w) for w in a.word]
    else:
        from .series import words_upto
        words = list(words_upto(X.alphabet, a.window if a.window is not None else DEFAULT_BOUNDS.window))
    if isinstance(X, Wcfg):
        _emit({word_str(w): S.encode(wcfg_eval(X, w, a.depth)) for w in words})
    else:
        _emit({word_str(w): S.encode(X.eval(w)) for w in words})


def cmd_minimize(a):
    _emit(to_document(dwa_minimize(_dwa(a.doc, a.bound))))


def cmd_determinize(a):
    _emit(to_document(wa_determinize(to_wa(_payload(a.doc, ("wa", "dwa", "series"))), a.bound)))


def cmd_quotient(a):
    A = _payload(a.doc, ("dwa", "wa", "series"))
    kind, arg = _by(a.by)
    if kind == "word":
        Q = word_quotient(A, _word(A, arg), a.side)
    else:
        Q = series_quotient(A, _payload(arg, ("dwa", "wa", "series")), a.side,
                            iteration_bound=a.bound, state_bound=a.bound)
    if a.window is not None:
        _emit(value_table(Q, a.window))
    else:
        _emit(to_document(Q))


def cmd_residual(a):
    A = _payload(a.doc, ("dwa", "wa", "series"))
    kind, arg = _by(a.by)
    if kind == "word":
        from .series import Polynomial
        D = Polynomial(A.semiring, A.alphabet, {_word(A, arg): A.semiring.one})
    else:
        D = _payload(arg, ("dwa", "wa", "series"))
    R = residual(A, D, a.side, state_bound=a.bound)
    if a.emit == "automaton":
        _emit(to_document(R))
    else:
        _emit(value_table(R, a.window if a.window is not None else 1))


def cmd_include(a):
    f = _payload(a.f, ("dwa", "wa", "series"))
    g = _payload(a.g, ("dwa", "wa", "series"))
    _emit(f.semiring.encode(inclusion_degree(f, g, a.bound)))


def _universal(a):
    return universal_automaton(_dwa(a.doc, a.bound), audit=False)


def cmd_universal(a):
    U = _universal(a)
    if a.dot:
        sys.stdout.write(export_dot(U, "U"))
        return
    S = U.A.semiring
    enc = S.encode
    _emit({
        "classes": [{"h": [enc(v) for v in c.h], "J": enc(c.J), "G": enc(c.G),
                     "X_eps": enc(c.X.eval(())), "Y_eps": enc(c.Y.eval(()))} for c in U.classes],
        "eta": [[c, s, d, enc(w)] for (c, s, d), w in sorted(U.eta.items(), key=lambda kv: (kv[0][0], U.A.alphabet.index(kv[0][1]), kv[0][2]))],
    })


def cmd_factorize(a):
    U = _universal(a)
    k = a.window if a.window is not None else DEFAULT_BOUNDS.window
    _emit([{"h": [U.A.semiring.encode(v) for v in c.h],
            "X": value_table(c.X, k), "Y": value_table(c.Y, k)} for c in U.classes])


def cmd_morphism(a):
    B = to_wa(_payload(a.b, ("dwa", "wa", "series")))
    A = _dwa(a.a, a.bound)
    U = universal_automaton(A, audit=False)
    m = canonical_morphism(B, U, window=a.window)
    v = m.verdict
    _emit({"phi": m.phi, "plain": v.plain, "strong": v.strong, "surjective": v.surjective,
           "injective": m.injective})


def cmd_mergible(a):
    X = _payload(a.doc, ("dwa", "wa"))
    if a.universal:
        W = universal_automaton(to_dwa(X, a.bound), audit=False)
        n = W.n
    else:
        W = to_wa(X)
        n = W.n
    for p in (a.p, a.q):
        if not 0 <= p < n:
            raise InputError(f"state {p} is out of range (automaton has {n} states)")
    mode = "exact" if a.window is None else a.window
    v = mergible(W, a.p, a.q, mode=mode, state_bound=a.bound)
    _emit({"mergible": v.mergible, "witness": None if v.witness is None else word_str(v.witness)})


def cmd_wcfg_quotient(a):
    G = _payload(a.grammar, ("grammar",))
    B = to_wa(_payload(a.automaton, ("dwa", "wa", "series")))
    Q = wcfg_right_quotient(G, B) if a.side == "right" else wcfg_left_quotient(G, B)
    _emit(to_document(Q))


def cmd_wcfg_eval(a):
    G = _payload(a.grammar, ("grammar",))
    w = _word(G, a.word)
    _emit(G.semiring.encode(wcfg_eval(G, w, a.depth)))


def cmd_dot(a):
    X = _payload(a.doc, ("dwa", "wa", "series"))
    if not isinstance(X, (Dwa, Wa)):
        X = to_dwa(X, a.bound)
    sys.stdout.write(export_dot(X))


def build_parser():
    p = argparse.ArgumentParser(prog="wquot", description="Quotients, residuals and universal automata of weighted series.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *docs, side=False, window=False, bound=True):
        sp = sub.add_parser(name)
        for d in docs:
            sp.add_argument(d)
        if side:
            sp.add_argument("--side", choices=("left", "right"), default="left")
        if window:
            sp.add_argument("--window", type=int, default=None)
        if bound:
            sp.add_argument("--bound", type=int, default=DEFAULT_BOUNDS.state_bound)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("eval", cmd_eval, "doc", window=True)
    sp.add_argument("--word", action="append")
    sp.add_argument("--depth", type=int, default=None)
    add("minimize", cmd_minimize, "doc")
    add("determinize", cmd_determinize, "doc")
    add("quotient", cmd_quotient, "doc", side=True, window=True).add_argument("--by", required=True)
    sp = add("residual", cmd_residual, "doc", side=True, window=True)
    sp.add_argument("--by", required=True)
    sp.add_argument("--emit", choices=("table", "automaton"), default="table")
    add("include", cmd_include, "f", "g")
    add("universal", cmd_universal, "doc").add_argument("--dot", action="store_true")
    add("factorize", cmd_factorize, "doc", window=True)
    add("morphism", cmd_morphism, "b", "a", window=True)
    sp = add("mergible", cmd_mergible, "doc", window=True)
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("--universal", action="store_true", help="merge classes of the universal automaton of doc")
    add("wcfg-quotient", cmd_wcfg_quotient, "grammar", "automaton", side=True, bound=False).set_defaults(side="right")
    sp = add("wcfg-eval", cmd_wcfg_eval, "grammar", bound=False)
    sp.add_argument("--word", required=True)
    sp.add_argument("--depth", type=int, default=None)
    add("dot", cmd_dot, "doc")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        args.fn(args)
    except DocumentError as e:
        for path, msg in e.violations:
            print(f"error: {path}: {msg}", file=sys.stderr)
        return 2
    except (BoundExceeded, Unsupported) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3
    except (InputError, WquotError, ValueError, KeyError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
