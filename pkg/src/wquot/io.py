"""JSON documents and DOT export."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import semiring as sr
from .automata import Dfa, Dwa, Wa
from .errors import WquotError
from .series import Polynomial, StepFunction, word_str
from .wcfg import Wcfg

PAYLOADS = ("dwa", "wa", "series", "grammar")


class DocumentError(WquotError, ValueError):
    """Invalid input document; ``violations`` lists (json_path, message)."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(f"{p}: {m}" for p, m in self.violations))


@dataclass
class Document:
    semiring: object
    kind: str
    payload: object
    metadata: dict = field(default_factory=dict)


class _Checker:
    def __init__(self):
        self.violations = []

    def fail(self, path, msg):
        self.violations.append((path, msg))
        return None

    def int_in(self, v, lo, hi, path):
        if not (isinstance(v, int) and not isinstance(v, bool) and lo <= v < hi):
            return self.fail(path, f"expected an integer in [{lo}, {hi}), got {v!r}")
        return v

    def value(self, S, v, path):
        try:
            return S.decode(v)
        except (WquotError, ValueError, TypeError):
            return self.fail(path, f"{v!r} is not an element of {S}")

    def alphabet(self, d, path):
        a = d.get("alphabet")
        if not isinstance(a, list) or not all(isinstance(s, str) and s for s in a):
            return self.fail(path + ".alphabet", "expected a list of non-empty strings")
        if len(set(a)) != len(a):
            return self.fail(path + ".alphabet", "duplicate symbols")
        return a

    def word(self, w, alphabet, path):
        if isinstance(w, str):
            w = list(w)
        if not isinstance(w, list):
            return self.fail(path, f"expected a word, got {w!r}")
        for s in w:
            if alphabet is not None and s not in alphabet:
                return self.fail(path, f"symbol {s!r} is not in the alphabet")
        return tuple(w)


def _parse_semiring(d, ck):
    if not isinstance(d, dict):
        return ck.fail("$.semiring", "missing or not an object")
    try:
        return sr.from_json(d)
    except (KeyError, ValueError, TypeError) as e:
        return ck.fail("$.semiring", str(e))


def _parse_dwa(S, d, ck, path):
    if not isinstance(d, dict):
        return ck.fail(path, "expected an object")
    n = d.get("states")
    if ck.int_in(n, 1, 1 << 31, path + ".states") is None:
        return None
    alph = ck.alphabet(d, path)
    if alph is None:
        return None
    init = ck.int_in(d.get("initial"), 0, n, path + ".initial")
    delta = d.get("delta")
    ok = True
    if not isinstance(delta, list) or len(delta) != n:
        ck.fail(path + ".delta", "delta not total: expected one row per state")
        ok = False
    else:
        for q, row in enumerate(delta):
            if not isinstance(row, list) or len(row) != len(alph):
                ck.fail(f"{path}.delta[{q}]", "delta not total: expected one target per symbol")
                ok = False
                continue
            for j, t in enumerate(row):
                if ck.int_in(t, 0, n, f"{path}.delta[{q}][{j}]") is None:
                    ok = False
    final = d.get("final")
    fin = []
    if not isinstance(final, list) or len(final) != n:
        ck.fail(path + ".final", "expected one final weight per state")
        ok = False
    else:
        for q, v in enumerate(final):
            x = ck.value(S, v, f"{path}.final[{q}]")
            ok = ok and x is not None
            fin.append(x)
    if not ok or init is None:
        return None
    return Dwa(S, alph, delta, init, fin, labels=d.get("labels"))


def _parse_weights(S, d, n, ck, path):
    out = {}
    if d is None:
        return out
    if isinstance(d, list):
        d = {str(i): v for i, v in enumerate(d)}
    if not isinstance(d, dict):
        return ck.fail(path, "expected an object mapping states to weights")
    for k, v in d.items():
        try:
            q = int(k)
        except ValueError:
            ck.fail(f"{path}.{k}", "state keys must be integers")
            continue
        if ck.int_in(q, 0, n, f"{path}.{k}") is None:
            continue
        x = ck.value(S, v, f"{path}.{k}")
        if x is not None:
            out[q] = x
    return out


def _parse_wa(S, d, ck, path):
    if not isinstance(d, dict):
        return ck.fail(path, "expected an object")
    alph = ck.alphabet(d, path)
    if alph is None:
        return None
    trans = d.get("transitions", [])
    if not isinstance(trans, list):
        return ck.fail(path + ".transitions", "expected a list")
    ids = [t[0] for t in trans if isinstance(t, list) and len(t) == 4] + \
          [t[2] for t in trans if isinstance(t, list) and len(t) == 4]
    keys = []
    for part in ("initial", "final"):
        v = d.get(part) or {}
        keys += [int(k) for k in (v if isinstance(v, dict) else range(len(v))) if str(k).lstrip("-").isdigit()]
    n = d.get("states", max([i for i in ids + keys if isinstance(i, int)], default=0) + 1)
    if ck.int_in(n, 1, 1 << 31, path + ".states") is None:
        return None
    edges = []
    for i, t in enumerate(trans):
        p = f"{path}.transitions[{i}]"
        if not (isinstance(t, list) and len(t) == 4):
            ck.fail(p, "expected [source, symbol, target, weight]")
            continue
        a, s, b, w = t
        ok = ck.int_in(a, 0, n, p + "[0]") is not None
        ok &= ck.int_in(b, 0, n, p + "[2]") is not None
        if s not in alph:
            ck.fail(p + "[1]", f"symbol {s!r} is not in the alphabet")
            ok = False
        x = ck.value(S, w, p + "[3]")
        if ok and x is not None:
            edges.append((a, s, b, x))
    I = _parse_weights(S, d.get("initial"), n, ck, path + ".initial")
    F = _parse_weights(S, d.get("final"), n, ck, path + ".final")
    if ck.violations:
        return None
    return Wa(S, alph, n, edges, I, F, labels=d.get("labels"))


def _parse_dfa(d, alph, ck, path):
    if not isinstance(d, dict):
        return ck.fail(path, "expected a DFA object")
    n = d.get("states")
    if ck.int_in(n, 1, 1 << 31, path + ".states") is None:
        return None
    delta = d.get("delta")
    if not isinstance(delta, list) or len(delta) != n or any(
            not isinstance(r, list) or len(r) != len(alph) for r in delta):
        return ck.fail(path + ".delta", "delta not total")
    for q, row in enumerate(delta):
        for j, t in enumerate(row):
            ck.int_in(t, 0, n, f"{path}.delta[{q}][{j}]")
    init = ck.int_in(d.get("initial", 0), 0, n, path + ".initial")
    acc = d.get("accepting", [])
    for i, q in enumerate(acc):
        ck.int_in(q, 0, n, f"{path}.accepting[{i}]")
    if ck.violations or init is None:
        return None
    return Dfa(alph, delta, init, acc)


def _parse_series(S, d, ck, path):
    if not isinstance(d, dict):
        return ck.fail(path, "expected an object")
    kind = d.get("kind")
    if kind in ("dwa", "wa"):
        return (_parse_dwa if kind == "dwa" else _parse_wa)(S, d, ck, path)
    alph = ck.alphabet(d, path)
    if alph is None:
        return None
    if kind == "poly":
        terms = []
        for i, t in enumerate(d.get("terms", [])):
            p = f"{path}.terms[{i}]"
            if not (isinstance(t, list) and len(t) == 2):
                ck.fail(p, "expected [word, value]")
                continue
            w = ck.word(t[0], alph, p + "[0]")
            v = ck.value(S, t[1], p + "[1]")
            if w is not None and v is not None:
                terms.append((w, v))
        return None if ck.violations else Polynomial(S, alph, terms)
    if kind == "step":
        parts = []
        for i, t in enumerate(d.get("parts", [])):
            p = f"{path}.parts[{i}]"
            if not (isinstance(t, list) and len(t) == 2):
                ck.fail(p, "expected [value, dfa]")
                continue
            v = ck.value(S, t[0], p + "[0]")
            dfa = _parse_dfa(t[1], alph, ck, p + "[1]")
            if v is not None and dfa is not None:
                parts.append((v, dfa))
        if ck.violations:
            return None
        try:
            return StepFunction(S, alph, parts)
        except ValueError as e:
            return ck.fail(path, str(e))
    return ck.fail(path + ".kind", f"unknown series kind {kind!r}")


def _parse_grammar(S, d, ck, path):
    if not isinstance(d, dict):
        return ck.fail(path, "expected an object")
    for k in ("terminals", "nonterminals", "start", "productions"):
        if k not in d:
            ck.fail(f"{path}.{k}", "missing")
    if ck.violations:
        return None
    prods = []
    for i, t in enumerate(d["productions"]):
        p = f"{path}.productions[{i}]"
        if not (isinstance(t, list) and len(t) == 3 and isinstance(t[1], (list, str))):
            ck.fail(p, "expected [head, [symbols...], weight]")
            continue
        v = ck.value(S, t[2], p + "[2]")
        if v is not None:
            prods.append((t[0], list(t[1]), v))
    if ck.violations:
        return None
    try:
        return Wcfg(S, d["terminals"], d["nonterminals"], d["start"], prods)
    except (ValueError, WquotError) as e:
        return ck.fail(path, str(e))


def parse_document(data):
    """Validate a decoded JSON document; raises DocumentError listing violations."""
    ck = _Checker()
    if not isinstance(data, dict):
        raise DocumentError([("$", "the document must be a JSON object")])
    S = _parse_semiring(data.get("semiring"), ck)
    present = [k for k in PAYLOADS if k in data]
    if len(present) != 1:
        ck.fail("$", f"expected exactly one payload among {list(PAYLOADS)}, found {present}")
    if ck.violations:
        raise DocumentError(ck.violations)
    kind = present[0]
    parser = {"dwa": _parse_dwa, "wa": _parse_wa, "series": _parse_series, "grammar": _parse_grammar}[kind]
    try:
        payload = parser(S, data[kind], ck, f"$.{kind}")
    except (WquotError, ValueError, TypeError) as e:
        ck.fail(f"$.{kind}", str(e))
        payload = None
    if ck.violations or payload is None:
        raise DocumentError(ck.violations or [(f"$.{kind}", "invalid payload")])
    return Document(S, kind, payload, data.get("metadata", {}))


def load_document(path):
    import sys
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
    except OSError as e:
        raise DocumentError([("$", f"cannot read {path}: {e.strerror}")])
    except json.JSONDecodeError as e:
        raise DocumentError([("$", f"malformed JSON: {e}")])
    return parse_document(data)


# -- printing -------------------------------------------------------------------

def _word_json(w):
    return "".join(w) if all(len(s) == 1 for s in w) else list(w)


def dwa_json(A):
    S = A.semiring
    d = {"states": A.n, "alphabet": list(A.alphabet), "initial": A.initial,
         "delta": [list(r) for r in A.delta], "final": [S.encode(v) for v in A.final]}
    if A.labels and all(isinstance(x, str) for x in A.labels):
        d["labels"] = list(A.labels)
    return d


def wa_json(B):
    S = B.semiring
    d = {"states": B.n, "alphabet": list(B.alphabet),
         "transitions": [[p, s, q, S.encode(w)] for p, s, q, w in B.transitions()],
         "initial": {str(q): S.encode(w) for q, w in sorted(B.initial.items())},
         "final": {str(q): S.encode(w) for q, w in sorted(B.final.items())}}
    if B.labels and all(isinstance(x, str) for x in B.labels):
        d["labels"] = list(B.labels)
    return d


def dfa_json(D):
    return {"states": D.n, "initial": D.initial, "delta": [list(r) for r in D.delta],
            "accepting": sorted(D.accepting)}


def payload_json(X):
    S = X.semiring
    if isinstance(X, Dwa):
        return "dwa", dwa_json(X)
    if isinstance(X, Wa):
        return "wa", wa_json(X)
    if isinstance(X, Polynomial):
        return "series", {"kind": "poly", "alphabet": list(X.alphabet),
                          "terms": [[_word_json(w), S.encode(v)]
                                    for w, v in sorted(X.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))]}
    if isinstance(X, StepFunction):
        return "series", {"kind": "step", "alphabet": list(X.alphabet),
                          "parts": [[S.encode(r), dfa_json(d)] for r, d in X.parts]}
    if isinstance(X, Wcfg):
        return "grammar", {"terminals": list(X.terminals), "nonterminals": list(X.nonterminals),
                           "start": X.start,
                           "productions": [[l, list(r), S.encode(w)] for (l, r), w in X.productions.items()]}
    raise TypeError(f"cannot serialize {X!r}")


def to_document(X, metadata=None):
    kind, body = payload_json(X)
    d = {"semiring": X.semiring.to_json(), kind: body}
    if metadata:
        d["metadata"] = metadata
    return d


def value_table(X, window):
    from .series import words_upto
    S = X.semiring
    return {word_str(w): S.encode(X.eval(w)) for w in words_upto(X.alphabet, window)}


# -- DOT ---------------------------------------------------------------------------

def _fmt(S, v):
    return "inf" if v is sr.INF else str(v)


def export_dot(X, name="A"):
    """Byte-stable DOT text: states "name/F", edges "σ/weight", double circles for nonzero F."""
    from .universal import UniversalAutomaton
    if isinstance(X, UniversalAutomaton):
        X = X.as_wa()
    S = X.semiring
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    if isinstance(X, Dwa):
        labels = X.labels if X.labels and all(isinstance(l, str) for l in X.labels) else None
        for q in range(X.n):
            lab = labels[q] if labels else f"q{q}"
            shape = "doublecircle" if X.final[q] != S.zero else "circle"
            lines.append(f'  {q} [shape={shape}, label="{lab}/{_fmt(S, X.final[q])}"];')
        lines.append('  start [shape=point];')
        lines.append(f"  start -> {X.initial};")
        for q in range(X.n):
            for j, s in enumerate(X.alphabet):
                lines.append(f'  {q} -> {X.delta[q][j]} [label="{s}/{_fmt(S, S.one)}"];')
    else:
        labels = X.labels if X.labels and all(isinstance(l, str) for l in X.labels) else None
        for q in range(X.n):
            lab = labels[q] if labels else f"q{q}"
            f = X.final.get(q, S.zero)
            shape = "doublecircle" if f != S.zero else "circle"
            lines.append(f'  {q} [shape={shape}, label="{lab}/{_fmt(S, f)}"];')
        for q, w in sorted(X.initial.items()):
            lines.append(f'  start{q} [shape=point];')
            lines.append(f'  start{q} -> {q} [label="{_fmt(S, w)}"];')
        for p, s, q, w in X.transitions():
            lines.append(f'  {p} -> {q} [label="{s}/{_fmt(S, w)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
