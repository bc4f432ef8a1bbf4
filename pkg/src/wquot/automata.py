"""Deterministic and nondeterministic weighted automata."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import BoundExceeded, MixedSemiring, Unsupported
from .series import Lazy, Polynomial, Series, StepFunction, words_upto


class Dfa:
    """Unweighted complete DFA, used for the languages of step functions."""

    def __init__(self, alphabet, delta, initial, accepting):
        self.alphabet = tuple(alphabet)
        self.index = {s: i for i, s in enumerate(self.alphabet)}
        self.delta = [tuple(row) for row in delta]
        self.initial = initial
        self.accepting = frozenset(accepting)

    @property
    def n(self):
        return len(self.delta)

    def run(self, q, w):
        for s in w:
            q = self.delta[q][self.index[s]]
        return q

    def accepts(self, w):
        return self.run(self.initial, w) in self.accepting


class Dwa(Series):
    """Deterministic weighted automaton (Q, Σ, δ, q0, F) with a total δ."""

    def __init__(self, semiring, alphabet, delta, initial, final, labels=None):
        super().__init__(semiring, alphabet)
        self.index = {s: i for i, s in enumerate(self.alphabet)}
        self.delta = [tuple(row) for row in delta]
        n = len(self.delta)
        if n == 0:
            raise ValueError("a DWA needs at least one state")
        k = len(self.alphabet)
        for q, row in enumerate(self.delta):
            if len(row) != k:
                raise ValueError(f"state {q}: transition row must have {k} entries")
            for t in row:
                if not (isinstance(t, int) and 0 <= t < n):
                    raise ValueError(f"state {q}: transition to unknown state {t!r}")
        if not (0 <= initial < n):
            raise ValueError(f"initial state {initial} out of range")
        if len(final) != n:
            raise ValueError(f"final weights must have {n} entries")
        for v in final:
            semiring.check(v)
        self.initial = initial
        self.final = tuple(final)
        self.labels = list(labels) if labels is not None else None

    @property
    def n(self):
        return len(self.delta)

    def step(self, q, s):
        return self.delta[q][self.index[s]]

    def run(self, q, w):
        d, idx = self.delta, self.index
        for s in w:
            q = d[q][idx[s]]
        return q

    def eval(self, w):
        return self.final[self.run(self.initial, w)]

    def fut(self, q):
        """The series of state q (Fut with the crisp initial at q)."""
        return Dwa(self.semiring, self.alphabet, self.delta, q, self.final)

    def __repr__(self):
        return f"Dwa(n={self.n}, alphabet={list(self.alphabet)}, final={list(self.final)})"


class Wa(Series):
    """Weighted automaton (Q, Σ, δ, I, F) with sparse transition weights."""

    def __init__(self, semiring, alphabet, n, transitions=(), initial=None, final=None, labels=None):
        super().__init__(semiring, alphabet)
        self.n = n
        S = semiring
        self.delta = {}  # (p, symbol) -> {q: weight}
        for p, s, q, w in transitions:
            if s not in self._symbols:
                raise ValueError(f"transition symbol {s!r} is not in the alphabet")
            if not (0 <= p < n and 0 <= q < n):
                raise ValueError(f"transition ({p}, {s!r}, {q}) references an unknown state")
            S.check(w)
            if w == S.zero:
                continue
            row = self.delta.setdefault((p, s), {})
            row[q] = S.plus(row.get(q, S.zero), w)
        self.initial = self._vector(initial or {})
        self.final = self._vector(final or {})
        self.labels = list(labels) if labels is not None else None

    def _vector(self, d):
        S = self.semiring
        items = d.items() if isinstance(d, dict) else enumerate(d)
        out = {}
        for q, w in items:
            if not (0 <= q < self.n):
                raise ValueError(f"weight for unknown state {q}")
            S.check(w)
            if w != S.zero:
                out[q] = S.plus(out.get(q, S.zero), w)
        return out

    def transitions(self):
        for (p, s), row in sorted(self.delta.items(), key=lambda kv: (kv[0][0], self.alphabet.index(kv[0][1]))):
            for q, w in sorted(row.items()):
                yield p, s, q, w

    def weight(self, p, s, q):
        return self.delta.get((p, s), {}).get(q, self.semiring.zero)

    def advance(self, vec, s):
        """One forward sweep: (vec ⊗ δ_s)(q) = Σ_p vec(p) ⊗ δ(p, s, q)."""
        S = self.semiring
        out = {}
        for p, x in vec.items():
            row = self.delta.get((p, s))
            if not row:
                continue
            for q, w in row.items():
                y = S.times(x, w)
                out[q] = S.plus(out[q], y) if q in out else y
        return {q: v for q, v in out.items() if v != S.zero}

    def forward(self, vec, w):
        for s in w:
            if not vec:
                break
            vec = self.advance(vec, s)
        return vec

    def output(self, vec):
        S = self.semiring
        return S.sum(S.times(x, self.final[q]) for q, x in vec.items() if q in self.final)

    def eval(self, w):
        return self.output(self.forward(self.initial, w))

    def __repr__(self):
        return f"Wa(n={self.n}, alphabet={list(self.alphabet)}, edges={sum(len(r) for r in self.delta.values())})"


_BIG = 1 << 60  # stands in for INF inside numpy arrays


def _np_kernel(S):
    """(encode, decode, step) for semirings with an int-array fast path, else None."""
    import numpy as np
    from .semiring import INF, Chain, _Boolean, _MaxMinNat, _TropicalNat

    enc = lambda v: _BIG if v is INF else v
    dec = lambda x: INF if x >= _BIG else int(x)
    if isinstance(S, (Chain, _Boolean, _MaxMinNat)):
        return enc, dec, lambda v, M: np.minimum(v[:, None], M).max(axis=0)
    if isinstance(S, _TropicalNat):
        return enc, dec, lambda v, M: np.minimum(v[:, None] + M, _BIG).min(axis=0)
    return None


def eval_words(B, maxlen):
    """Values of B on every word of length <= maxlen, sharing prefix work."""
    B = to_wa(B)
    S = B.semiring
    kernel = _np_kernel(S)
    out = {}
    if kernel is None:
        stack = [((), dict(B.initial))]
        while stack:
            w, vec = stack.pop()
            out[w] = B.output(vec)
            if len(w) < maxlen:
                for s in B.alphabet:
                    stack.append((w + (s,), B.advance(vec, s)))
        return out
    import numpy as np
    enc, dec, step = kernel
    zero = enc(S.zero)
    mats = {}
    for s in B.alphabet:
        M = np.full((B.n, B.n), zero, dtype=np.int64)
        for (p, t), row in B.delta.items():
            if t == s:
                for q, w in row.items():
                    M[p, q] = enc(w)
        mats[s] = M
    init = np.full(B.n, zero, dtype=np.int64)
    fin = np.full(B.n, zero, dtype=np.int64)
    for q, w in B.initial.items():
        init[q] = enc(w)
    for q, w in B.final.items():
        fin[q] = enc(w)
    stack = [((), init)]
    while stack:
        w, v = stack.pop()
        out[w] = dec(step(v, fin[:, None])[0])
        if len(w) < maxlen:
            for s in B.alphabet:
                stack.append((w + (s,), step(v, mats[s])))
    return out


def dwa_eval(A, w):
    return A(w)


def wa_eval(B, w):
    return B(w)


def to_wa(X):
    if isinstance(X, Wa):
        return X
    if isinstance(X, Dwa):
        S = X.semiring
        edges = [(q, s, X.delta[q][i], S.one) for q in range(X.n) for i, s in enumerate(X.alphabet)]
        return Wa(S, X.alphabet, X.n, edges, {X.initial: S.one},
                  {q: v for q, v in enumerate(X.final)}, labels=X.labels)
    if isinstance(X, Lazy):
        return rational_to_wa(X)
    return to_wa(to_dwa(X))


def _shift(B, k):
    return [(p + k, s, q + k, w) for p, s, q, w in B.transitions()]


def _proper_wa(B):
    """Wa for B with the empty-word value removed (fresh start entered once)."""
    S, n = B.semiring, B.n
    edges = list(B.transitions())
    for s in B.alphabet:
        edges += [(n, s, q, w) for q, w in B.advance(dict(B.initial), s).items()]
    return Wa(S, B.alphabet, n + 1, edges, {n: S.one}, dict(B.final))


def rational_to_wa(X):
    """Compile a composite of finite series built by ``combine`` into a Wa."""
    if not isinstance(X, Lazy):
        return to_wa(X)
    S, alph, op = X.semiring, X.alphabet, X.op
    if op == "sum":
        A, B = map(rational_to_wa, X.args)
        k = A.n
        return Wa(S, alph, A.n + B.n, list(A.transitions()) + _shift(B, k),
                  {**A.initial, **{q + k: w for q, w in B.initial.items()}},
                  {**A.final, **{q + k: w for q, w in B.final.items()}})
    if op in ("scalar_left", "scalar_right"):
        r, A = X.args if op == "scalar_left" else X.args[::-1]
        A = rational_to_wa(A)
        if op == "scalar_left":
            return Wa(S, alph, A.n, list(A.transitions()), {q: S.times(r, w) for q, w in A.initial.items()}, dict(A.final))
        return Wa(S, alph, A.n, list(A.transitions()), dict(A.initial), {q: S.times(w, r) for q, w in A.final.items()})
    if op == "reversal":
        return reverse_wa(rational_to_wa(X.args[0]))
    if op == "proper":
        return _proper_wa(rational_to_wa(X.args[0]))
    if op == "cauchy":
        A, B = map(rational_to_wa, X.args)
        k = A.n
        edges = list(A.transitions()) + _shift(B, k)
        for s in alph:
            entry = B.advance(dict(B.initial), s)
            for p, f in A.final.items():
                edges += [(p, s, q + k, S.times(f, w)) for q, w in entry.items()]
        b_eps, a_eps = B.eval(()), A.eval(())
        initial = dict(A.initial)
        initial.update({q + k: S.times(a_eps, w) for q, w in B.initial.items()})
        final = {q + k: w for q, w in B.final.items()}
        final.update({p: S.times(f, b_eps) for p, f in A.final.items()})
        return Wa(S, alph, A.n + B.n, edges, initial, final)
    if op == "star":
        # in a c-semiring A(ε)* = one, so A* = P* for the proper part P
        A = rational_to_wa(X.args[0])
        if A.eval(()) != S.zero and not S.is_c_semiring:
            raise Unsupported("star of a series with nonzero constant term needs a c-semiring")
        P = _proper_wa(A)
        n = P.n
        edges = list(P.transitions())
        for s in alph:
            entry = P.advance(dict(P.initial), s)
            edges += [(n, s, q, w) for q, w in entry.items()]
            for p, f in P.final.items():
                edges += [(p, s, q, S.times(f, w)) for q, w in entry.items()]
        return Wa(S, alph, n + 1, edges, {n: S.one}, {**P.final, n: S.one})
    if op == "word_quotient":
        from .quotient import word_quotient
        A, u, side = X.args
        return word_quotient(rational_to_wa(A), u, side)
    raise Unsupported(f"cannot compile {X!r} into an automaton")


def reverse_wa(B):
    B = to_wa(B)
    edges = [(q, s, p, w) for p, s, q, w in B.transitions()]
    return Wa(B.semiring, B.alphabet, B.n, edges, dict(B.final), dict(B.initial), labels=B.labels)


# -- accessibility ----------------------------------------------------------

def accessible_states(X):
    if isinstance(X, Dwa):
        seen, todo = {X.initial}, [X.initial]
        while todo:
            q = todo.pop()
            for t in X.delta[q]:
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return seen
    seen = set(X.initial)
    todo = list(seen)
    while todo:
        p = todo.pop()
        for s in X.alphabet:
            for q in X.delta.get((p, s), ()):
                if q not in seen:
                    seen.add(q)
                    todo.append(q)
    return seen


def _restrict_wa(B, keep):
    keep = sorted(keep)
    ren = {q: i for i, q in enumerate(keep)}
    edges = [(ren[p], s, ren[q], w) for p, s, q, w in B.transitions() if p in ren and q in ren]
    labels = [B.labels[q] for q in keep] if B.labels else None
    return Wa(B.semiring, B.alphabet, max(len(keep), 0),
              edges, {ren[q]: w for q, w in B.initial.items() if q in ren},
              {ren[q]: w for q, w in B.final.items() if q in ren}, labels=labels)


def trim_accessible(X):
    """Restrict to states reachable from the initial state(s), in BFS order."""
    if isinstance(X, Dwa):
        order, seen = [X.initial], {X.initial}
        i = 0
        while i < len(order):
            for t in X.delta[order[i]]:
                if t not in seen:
                    seen.add(t)
                    order.append(t)
            i += 1
        if len(order) == X.n and order == list(range(X.n)):
            return X
        ren = {q: i for i, q in enumerate(order)}
        delta = [[ren[t] for t in X.delta[q]] for q in order]
        labels = [X.labels[q] for q in order] if X.labels else None
        return Dwa(X.semiring, X.alphabet, delta, 0, [X.final[q] for q in order], labels)
    return _restrict_wa(X, accessible_states(X))


def trim(B):
    """Accessible and co-accessible part of a Wa."""
    B = to_wa(B)
    acc = accessible_states(B)
    back = {}
    for p, s, q, w in B.transitions():
        back.setdefault(q, set()).add(p)
    co, todo = set(B.final), list(B.final)
    while todo:
        q = todo.pop()
        for p in back.get(q, ()):
            if p not in co:
                co.add(p)
                todo.append(p)
    return _restrict_wa(B, acc & co)


# -- minimization -------------------------------------------------------------

def moore_partition(A):
    """Block id per state for the coarsest F-respecting congruence."""
    vals = {}
    block = [vals.setdefault(v, len(vals)) for v in A.final]
    nblocks = len(vals)
    while True:
        sig = {}
        new = [sig.setdefault((block[q],) + tuple(block[t] for t in A.delta[q]), len(sig))
               for q in range(A.n)]
        if len(sig) == nblocks:
            return new
        block, nblocks = new, len(sig)


def dwa_minimize(A):
    """The minimal DWA of |A|, states numbered in BFS order from the initial state."""
    A = trim_accessible(A)
    block = moore_partition(A)
    rep = {}
    for q in range(A.n):
        rep.setdefault(block[q], q)
    order, seen, i = [block[A.initial]], {block[A.initial]}, 0
    while i < len(order):
        for t in A.delta[rep[order[i]]]:
            b = block[t]
            if b not in seen:
                seen.add(b)
                order.append(b)
        i += 1
    ren = {b: i for i, b in enumerate(order)}
    delta = [[ren[block[t]] for t in A.delta[rep[b]]] for b in order]
    final = [A.final[rep[b]] for b in order]
    return Dwa(A.semiring, A.alphabet, delta, 0, final)


def canonical_form(A):
    """Hashable description of the minimal DWA; equal iff the series are equal."""
    M = dwa_minimize(A)
    return (tuple(M.alphabet), tuple(M.delta), M.final)


# -- determinization ------------------------------------------------------------

def wa_determinize(B, state_bound=1000):
    """Weighted subset construction with exact weight vectors."""
    B = to_wa(B)
    S = B.semiring
    if not S.idempotent:
        raise Unsupported(f"determinization needs an idempotent sum; {S} is not")
    n = B.n

    def key(vec):
        return tuple(vec.get(q, S.zero) for q in range(n))

    start = dict(B.initial)
    ids = {key(start): 0}
    vecs = [start]
    delta = []
    i = 0
    while i < len(vecs):
        row = []
        for s in B.alphabet:
            nxt = B.advance(vecs[i], s)
            k = key(nxt)
            if k not in ids:
                if len(vecs) >= state_bound:
                    raise BoundExceeded(
                        f"determinization produced more than {state_bound} weight vectors", state_bound)
                ids[k] = len(vecs)
                vecs.append(nxt)
            row.append(ids[k])
        delta.append(row)
        i += 1
    final = [B.output(v) for v in vecs]
    return Dwa(S, B.alphabet, delta, 0, final, labels=[key(v) for v in vecs])


def to_dwa(X, state_bound=1000):
    """Convert any finite representation to a Dwa."""
    if isinstance(X, Dwa):
        return X
    if isinstance(X, Wa):
        return wa_determinize(X, state_bound)
    if isinstance(X, Polynomial):
        return poly_to_dwa(X)
    if isinstance(X, StepFunction):
        return step_to_dwa(X)
    if isinstance(X, Lazy):
        return wa_determinize(rational_to_wa(X), state_bound)
    raise Unsupported(f"cannot build a finite automaton for {X!r}")


def poly_to_dwa(P):
    """Trie of the support plus a zero sink."""
    S, alph = P.semiring, P.alphabet
    nodes = {(): 0}
    for w in sorted(P.terms, key=lambda w: (len(w), w)):
        for i in range(1, len(w) + 1):
            nodes.setdefault(w[:i], len(nodes))
    sink = len(nodes)
    delta = [[sink] * len(alph) for _ in range(sink + 1)]
    for u, q in nodes.items():
        for j, s in enumerate(alph):
            if u + (s,) in nodes:
                delta[q][j] = nodes[u + (s,)]
    final = [S.zero] * (sink + 1)
    for u, q in nodes.items():
        final[q] = P.eval(u)
    return Dwa(S, alph, delta, 0, final)


def step_to_dwa(F):
    """Product of the part DFAs; value of the first accepting part."""
    S, alph = F.semiring, F.alphabet
    parts = F.parts
    start = tuple(d.initial for _, d in parts)
    ids, order, delta = {start: 0}, [start], []
    i = 0
    while i < len(order):
        cur = order[i]
        row = []
        for s in alph:
            nxt = tuple(d.delta[q][d.index[s]] for (_, d), q in zip(parts, cur))
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
            row.append(ids[nxt])
        delta.append(row)
        i += 1
    final = []
    for tup in order:
        v = S.zero
        for (r, d), q in zip(parts, tup):
            if q in d.accepting:
                v = r
                break
        final.append(v)
    return Dwa(S, alph, delta, 0, final)


# -- Past / Fut / Trans ----------------------------------------------------------

def past(B, q):
    B = to_wa(B)
    S = B.semiring
    return Wa(S, B.alphabet, B.n, B.transitions(), dict(B.initial), {q: S.one})


def fut(B, q):
    B = to_wa(B)
    S = B.semiring
    return Wa(S, B.alphabet, B.n, B.transitions(), {q: S.one}, dict(B.final))


def trans(B, p, q):
    B = to_wa(B)
    S = B.semiring
    return Wa(S, B.alphabet, B.n, B.transitions(), {p: S.one}, {q: S.one})


# -- morphisms ---------------------------------------------------------------------

@dataclass
class MorphismVerdict:
    plain: bool
    strong: bool
    surjective: bool
    witnesses: dict = field(default_factory=dict)

    def __bool__(self):
        return self.plain


def _block_sums(B, phi, m):
    """Morphic-image weights of B under the state map phi (onto range(m))."""
    S = B.semiring
    I, F, D = [S.zero] * m, [S.zero] * m, {}
    for q, w in B.initial.items():
        I[phi[q]] = S.plus(I[phi[q]], w)
    for q, w in B.final.items():
        F[phi[q]] = S.plus(F[phi[q]], w)
    for p, s, q, w in B.transitions():
        k = (phi[p], s, phi[q])
        D[k] = S.plus(D.get(k, S.zero), w)
    return I, F, D


def check_morphism(A, B, phi):
    """Check the morphism conditions for the state map ``phi`` from A to B."""
    A, B = to_wa(A), to_wa(B)
    if A.semiring != B.semiring:
        raise MixedSemiring("automata over different semirings")
    S = A.semiring
    phi = list(phi)
    if len(phi) != A.n or any(not (0 <= x < B.n) for x in phi):
        raise ValueError("the state map must send every state of A to a state of B")
    zero, leq = S.zero, S.leq
    Ai = lambda q: A.initial.get(q, zero)
    Af = lambda q: A.final.get(q, zero)
    Bi = lambda q: B.initial.get(q, zero)
    Bf = lambda q: B.final.get(q, zero)
    wit = {}
    plain = True
    for p in range(A.n):
        if not leq(Ai(p), Bi(phi[p])):
            plain = False
            wit.setdefault("plain", ("initial", p))
        if not leq(Af(p), Bf(phi[p])):
            plain = False
            wit.setdefault("plain", ("final", p))
    for p, s, q, w in A.transitions():
        if not leq(w, B.weight(phi[p], s, phi[q])):
            plain = False
            wit.setdefault("plain", ("transition", p, s, q))

    strong = plain
    Jsum = [zero] * B.n
    for q, w in A.initial.items():
        Jsum[phi[q]] = S.plus(Jsum[phi[q]], w)
    for p in range(B.n):
        if Bi(p) != Jsum[p]:
            strong = False
            wit.setdefault("strong", ("initial", p))
    for q in range(A.n):
        if Bf(phi[q]) != Af(q):
            strong = False
            wit.setdefault("strong", ("final", q))
        for s in A.alphabet:
            sums = {}
            for r, w in A.delta.get((q, s), {}).items():
                sums[phi[r]] = S.plus(sums.get(phi[r], zero), w)
            for p in range(B.n):
                if B.weight(phi[q], s, p) != sums.get(p, zero):
                    strong = False
                    wit.setdefault("strong", ("transition", q, s, p))

    onto = set(phi) == set(range(B.n))
    surjective = plain and onto
    if surjective:
        I, F, D = _block_sums(A, phi, B.n)
        same = all(I[p] == Bi(p) and F[p] == Bf(p) for p in range(B.n))
        edges = {(p, s, q): w for p, s, q, w in B.transitions()}
        same = same and {k: v for k, v in D.items() if v != zero} == edges
        if not same:
            surjective = False
            wit.setdefault("surjective", "B is not the morphic image of A")
    elif not onto:
        wit.setdefault("surjective", ("missing", sorted(set(range(B.n)) - set(phi))))
    return MorphismVerdict(plain, strong, surjective, wit)


def partition_map(n, partition):
    """Normalize a partition (list of blocks, or a block id per state) to a dense state map."""
    partition = list(partition)
    if partition and isinstance(partition[0], (list, tuple, set, frozenset)):
        phi = [None] * n
        for b, block in enumerate(partition):
            for q in block:
                if phi[q] is not None:
                    raise ValueError(f"state {q} appears in two blocks")
                phi[q] = b
        if None in phi:
            raise ValueError("the partition does not cover every state")
    else:
        if len(partition) != n:
            raise ValueError("the block map must have one entry per state")
        phi = partition
    ren = {}
    for b in phi:
        ren.setdefault(b, len(ren))
    return [ren[b] for b in phi]


def merge_states(B, partition):
    """Morphic image of B: states of a block merged, weights summed."""
    B = to_wa(B)
    phi = partition_map(B.n, partition)
    m = max(phi) + 1 if phi else 0
    I, F, D = _block_sums(B, phi, m)
    edges = [(p, s, q, w) for (p, s, q), w in D.items()]
    return Wa(B.semiring, B.alphabet, m, edges, dict(enumerate(I)), dict(enumerate(F)))


# -- equivalence ------------------------------------------------------------------

@dataclass
class Equivalence:
    equal: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.equal


def first_difference(A1, A2):
    """Shortest-first word where two Dwas differ, or None (product BFS, exact)."""
    if A1.semiring != A2.semiring:
        raise MixedSemiring("automata over different semirings")
    start = (A1.initial, A2.initial)
    prev = {start: None}
    todo = deque([start])
    while todo:
        p, q = todo.popleft()
        if A1.final[p] != A2.final[q]:
            w = []
            cur = (p, q)
            while prev[cur] is not None:
                cur, s = prev[cur]
                w.append(s)
            return tuple(reversed(w))
        for s in A1.alphabet:
            nxt = (A1.step(p, s), A2.step(q, s))
            if nxt not in prev:
                prev[nxt] = ((p, q), s)
                todo.append(nxt)
    return None


def first_violation(B, A, ok, state_bound=100_000):
    """Shortest-first word w with not ok(|B|(w), A(w)) for a Wa B and a Dwa A, or None.

    Explores the product of B's reachable weight vectors with A's states, so it
    terminates whenever B has finitely many reachable vectors.
    """
    S = A.semiring
    B = to_wa(B)
    key = lambda v: tuple(sorted((q, S.sort_key(x)) for q, x in v.items() if x != S.zero))
    start = (key(B.initial), A.initial)
    vecs = {start[0]: dict(B.initial)}
    prev = {start: None}
    todo = deque([start])
    while todo:
        node = todo.popleft()
        kv, q = node
        v = vecs[kv]
        if not ok(B.output(v), A.final[q]):
            w = []
            while prev[node] is not None:
                node, s = prev[node]
                w.append(s)
            return tuple(reversed(w))
        for s in A.alphabet:
            v2 = B.advance(v, s)
            nd = (key(v2), A.step(q, s))
            if nd not in prev:
                if len(prev) >= state_bound:
                    raise BoundExceeded(f"product search exceeded {state_bound} states", state_bound)
                vecs.setdefault(nd[0], v2)
                prev[nd] = (node, s)
                todo.append(nd)
    return None


def equivalent(A1, A2, mode="exact_dwa"):
    """Series equality; ``mode`` is "exact_dwa" or an int horizon k for bounded checking."""
    if mode == "exact_dwa":
        if not (isinstance(A1, Dwa) and isinstance(A2, Dwa)):
            raise Unsupported("exact equivalence needs two DWAs; determinize first")
        w = first_difference(A1, A2)
        return Equivalence(w is None, w)
    k = mode if isinstance(mode, int) else 2 * max(getattr(A1, "n", 1), getattr(A2, "n", 1))
    for w in words_upto(A1.alphabet, k):
        if A1.eval(w) != A2.eval(w):
            return Equivalence(False, w)
    return Equivalence(True)


def transformations(A):
    """Transition monoid of a Dwa: maps Q->Q reachable from the identity.

    Returns a list of (map, word) with the identity first; the word is a
    shortest representative.
    """
    ident = tuple(range(A.n))
    seen = {ident: ()}
    order = [ident]
    i = 0
    cols = [tuple(A.delta[q][j] for q in range(A.n)) for j in range(len(A.alphabet))]
    while i < len(order):
        m = order[i]
        for j, s in enumerate(A.alphabet):
            col = cols[j]
            nm = tuple(col[x] for x in m)
            if nm not in seen:
                seen[nm] = seen[m] + (s,)
                order.append(nm)
        i += 1
    return [(m, seen[m]) for m in order]


def pushforward(B, A):
    """g(q) = Σ{ |B|(u) : δ*(q0,u) = q } for a Dwa A and series B given as Wa/Dwa/Polynomial."""
    S = A.semiring
    if S != B.semiring:
        raise MixedSemiring("series over different semirings")
    g = [S.zero] * A.n
    if isinstance(B, Polynomial):
        for u, v in B.terms.items():
            q = A.run(A.initial, u)
            g[q] = S.plus(g[q], v)
        return g
    Bw = to_wa(B)
    # fixpoint over pairs (state of B, state of A) carrying accumulated weight
    weight = {}
    todo = deque()
    for p, w in Bw.initial.items():
        weight[(p, A.initial)] = w
        todo.append((p, A.initial))
    while todo:
        p, q = todo.popleft()
        x = weight[(p, q)]
        for s in A.alphabet:
            t = A.step(q, s)
            for r, w in Bw.delta.get((p, s), {}).items():
                y = S.times(x, w)
                old = weight.get((r, t), S.zero)
                new = S.plus(old, y)
                if new != old:
                    weight[(r, t)] = new
                    todo.append((r, t))
    for (p, q), x in weight.items():
        if p in Bw.final:
            g[q] = S.plus(g[q], S.times(x, Bw.final[p]))
    return g
