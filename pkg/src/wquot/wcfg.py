"""Weighted context-free grammars and their quotients by regular series."""
from __future__ import annotations

import itertools
from collections import defaultdict

from .automata import Wa, to_wa, trim
from .errors import BoundExceeded, NonCommutative, NotProper
from .series import Series, as_word


class Wcfg(Series):
    """Grammar with weighted productions; |G|(w) sums derivation weights."""

    def __init__(self, semiring, terminals, nonterminals, start, productions):
        super().__init__(semiring, terminals)
        self.terminals = tuple(terminals)
        self.nonterminals = tuple(nonterminals)
        overlap = set(self.terminals) & set(self.nonterminals)
        if overlap:
            raise ValueError(f"symbols used as both terminal and nonterminal: {sorted(map(str, overlap))}")
        if start not in self.nonterminals:
            raise ValueError(f"start symbol {start!r} is not a nonterminal")
        self.start = start
        known = set(self.terminals) | set(self.nonterminals)
        prods = {}
        for lhs, rhs, w in productions:
            rhs = tuple(rhs)
            if lhs not in self.nonterminals:
                raise ValueError(f"production head {lhs!r} is not a nonterminal")
            for y in rhs:
                if y not in known:
                    raise ValueError(f"production {lhs!r} uses undeclared symbol {y!r}")
            semiring.check(w)
            if w == semiring.zero:
                continue
            k = (lhs, rhs)
            prods[k] = semiring.plus(prods.get(k, semiring.zero), w)
        self.productions = prods
        self._nts = frozenset(self.nonterminals)

    def is_terminal(self, y):
        return y not in self._nts

    def by_head(self):
        out = defaultdict(list)
        for (lhs, rhs), w in self.productions.items():
            out[lhs].append((rhs, w))
        return out

    def eval(self, w):
        return wcfg_eval(self, w)

    def nullable(self):
        null = set()
        changed = True
        while changed:
            changed = False
            for (lhs, rhs) in self.productions:
                if lhs not in null and all(y in null for y in rhs):
                    null.add(lhs)
                    changed = True
        return null

    def __repr__(self):
        return f"Wcfg(start={self.start!r}, productions={len(self.productions)})"


def default_depth(G, w):
    maxrhs = max((len(r) for _, r in G.productions), default=1)
    return max(1, len(w)) * (len(G.nonterminals) + 2) * max(1, maxrhs)


def _chart_eval(G, w, max_sweeps):
    """Least fixpoint of the span chart; exact when the sum is idempotent."""
    S = G.semiring
    n = len(w)
    spans = [(i, j) for i in range(n + 1) for j in range(i, n + 1)]
    V = defaultdict(dict)  # nonterminal -> {(i, j): value}
    prods = list(G.productions.items())

    def cover(rhs, i, j):
        dp = {i: S.one}
        for y in rhs:
            nxt = {}
            for p, v in dp.items():
                if G.is_terminal(y):
                    if p < j and w[p] == y:
                        nxt[p + 1] = S.plus(nxt.get(p + 1, S.zero), v)
                else:
                    for (a, b), x in V[y].items():
                        if a == p and b <= j:
                            nxt[b] = S.plus(nxt.get(b, S.zero), S.times(v, x))
            dp = {p: v for p, v in nxt.items() if v != S.zero}
            if not dp:
                return S.zero
        return dp.get(j, S.zero)

    for _ in range(max_sweeps):
        changed = False
        for (lhs, rhs), r in prods:
            for i, j in spans:
                c = cover(rhs, i, j)
                if c == S.zero:
                    continue
                old = V[lhs].get((i, j), S.zero)
                new = S.plus(old, S.times(r, c))
                if new != old:
                    V[lhs][(i, j)] = new
                    changed = True
        if not changed:
            return V[G.start].get((0, n), S.zero)
    raise BoundExceeded(f"chart did not stabilize within {max_sweeps} sweeps", max_sweeps)


def _derivation_eval(G, w, depth):
    """Sum over leftmost derivations with at most ``depth`` steps."""
    S = G.semiring
    n = len(w)
    null = G.nullable()
    heads = G.by_head()
    forms = {(G.start,): S.one}
    total = S.zero
    for _ in range(depth + 1):
        nxt = defaultdict(lambda: S.zero)
        for form, x in forms.items():
            k = 0
            while k < len(form) and G.is_terminal(form[k]):
                k += 1
            if k == len(form):
                if form == w:
                    total = S.plus(total, x)
                continue
            X = form[k]
            for rhs, r in heads.get(X, ()):
                new = form[:k] + rhs + form[k + 1:]
                # terminal prefix must match, and the non-erasable part must fit
                m = 0
                while m < len(new) and G.is_terminal(new[m]):
                    m += 1
                if new[:m] != w[:m]:
                    continue
                if sum(1 for y in new if G.is_terminal(y) or y not in null) > n:
                    continue
                nxt[new] = S.plus(nxt[new], S.times(x, r))
        forms = {f: v for f, v in nxt.items() if v != S.zero}
        if not forms:
            return total
    raise BoundExceeded(f"derivations of {''.join(map(str, w))!r} still open at depth {depth}", depth)


def wcfg_eval(G, w, depth_bound=None):
    """|G|(w).  Idempotent semirings use an exact chart fixpoint; others a
    bounded leftmost-derivation search that raises BoundExceeded if live
    derivations remain at the depth bound."""
    w = G.check_word(as_word(w))
    if G.semiring.idempotent:
        return _chart_eval(G, w, depth_bound or 10_000)
    return _derivation_eval(G, w, depth_bound or default_depth(G, w))


def normalize_proper(B):
    """Equivalent Wa with a fresh weight-one initial state without in-transitions
    and a single weight-one final state distinct from it."""
    B = to_wa(B)
    S = B.semiring
    if B.eval(()) != S.zero:
        raise NotProper("the series has a nonzero value on the empty word")
    n = B.n
    s0, f = n, n + 1
    edges = list(B.transitions())
    for s in B.alphabet:
        first = B.advance(dict(B.initial), s)
        for q, w in first.items():
            edges.append((s0, s, q, w))
            if q in B.final:
                edges.append((s0, s, f, S.times(w, B.final[q])))
        for p in range(n):
            out = S.sum(S.times(w, B.final[q]) for q, w in B.delta.get((p, s), {}).items() if q in B.final)
            if out != S.zero:
                edges.append((p, s, f, out))
    N = Wa(S, B.alphabet, n + 2, edges, {s0: S.one}, {f: S.one})
    N = trim(N)
    if N.n == 0:  # zero series: keep the two required states
        return Wa(S, B.alphabet, 2, [], {0: S.one}, {1: S.one})
    return N


def _fresh(base, taken):
    name = base
    while name in taken:
        name = name + "'"
    return name


def prune(G):
    """Drop unproductive and unreachable nonterminals."""
    S = G.semiring
    prod = set()
    changed = True
    while changed:
        changed = False
        for (lhs, rhs) in G.productions:
            if lhs not in prod and all(G.is_terminal(y) or y in prod for y in rhs):
                prod.add(lhs)
                changed = True
    keep = {k: w for k, w in G.productions.items() if k[0] in prod and all(G.is_terminal(y) or y in prod for y in k[1])}
    reach = {G.start}
    todo = [G.start]
    heads = defaultdict(list)
    for (lhs, rhs) in keep:
        heads[lhs].append(rhs)
    while todo:
        X = todo.pop()
        for rhs in heads[X]:
            for y in rhs:
                if not G.is_terminal(y) and y not in reach:
                    reach.add(y)
                    todo.append(y)
    nts = [X for X in G.nonterminals if X in reach]
    if G.start not in nts:
        nts.insert(0, G.start)
    prods = [(lhs, rhs, w) for (lhs, rhs), w in keep.items() if lhs in reach]
    return Wcfg(S, G.terminals, nts, G.start, prods)


def wcfg_right_quotient(G, B):
    """Grammar for A Y⁻¹ with A = |G| and Y = |B| (B any Wa/Dwa)."""
    S = G.semiring
    if not S.commutative:
        raise NonCommutative("the grammar quotient needs a commutative semiring")
    B = to_wa(B)
    if B.semiring != S:
        raise ValueError("grammar and automaton use different semirings")
    y_eps = B.eval(())
    proper = Wa(S, B.alphabet, B.n, B.transitions(), dict(B.initial),
                dict(B.final)) if y_eps == S.zero else _strip_eps(B)
    N = normalize_proper(proper)
    (q0,) = N.initial
    (qf,) = N.final
    Q = range(N.n)
    taken = set(G.terminals) | set(G.nonterminals)
    name = {}

    def tri(q, x, q2):
        k = (q, x, q2)
        if k not in name:
            name[k] = _fresh(f"<{q},{x},{q2}>", taken)
            taken.add(name[k])
        return name[k]

    prods = []
    for x in G.terminals:
        prods.append((tri(q0, x, q0), (x,), S.one))                         # emitted into w
        for q in Q:
            for (p, s), row in N.delta.items():
                if p == q and s == x:
                    for q2, r in row.items():
                        prods.append((tri(q, x, q2), (), r))                 # read by the automaton
    for (lhs, rhs), r in G.productions.items():
        for q in Q:
            if not rhs:
                prods.append((tri(q, lhs, q), (), r))
                continue
            for mids in itertools.product(Q, repeat=len(rhs) - 1):
                for q2 in Q:
                    states = (q,) + mids + (q2,)
                    body = tuple(tri(states[i], y, states[i + 1]) for i, y in enumerate(rhs))
                    prods.append((tri(q, lhs, q2), body, r))
    start = tri(q0, G.start, qf)
    if y_eps != S.zero:
        top = _fresh("S'", taken)
        taken.add(top)
        prods.append((top, (start,), S.one))
        prods.append((top, (G.start,), y_eps))
        prods.extend((lhs, rhs, w) for (lhs, rhs), w in G.productions.items())
        nts = [top] + list(G.nonterminals) + list(name.values())
        start = top
    else:
        nts = list(name.values())
    return prune(Wcfg(S, G.terminals, nts, start, prods))


def _strip_eps(B):
    """Wa for the proper part of |B| (value zero on ε)."""
    S = B.semiring
    n = B.n
    edges = list(B.transitions())
    # copy of B entered after the first symbol, so the empty path is excluded
    s0 = n
    for s in B.alphabet:
        for q, w in B.advance(dict(B.initial), s).items():
            edges.append((s0, s, q, w))
    return Wa(S, B.alphabet, n + 1, edges, {s0: S.one}, dict(B.final))


def reverse_grammar(G):
    return Wcfg(G.semiring, G.terminals, G.nonterminals, G.start,
                [(lhs, rhs[::-1], w) for (lhs, rhs), w in G.productions.items()])


def wcfg_left_quotient(G, B):
    """Grammar for X⁻¹A via reversal: X⁻¹A = (A^R (X^R)⁻¹)^R."""
    from .automata import reverse_wa
    return reverse_grammar(wcfg_right_quotient(reverse_grammar(G), reverse_wa(to_wa(B))))


__all__ = [
    "Wcfg", "wcfg_eval", "normalize_proper", "wcfg_right_quotient", "wcfg_left_quotient",
    "reverse_grammar", "prune",
]
