"""Effective construction of the universal weighted automaton of a DWA-recognizable series.

Weighted states f: Q -> l_A index the factorizations of A through
Y_f = ⋀_q f(q) → Fut_A(q).  Grouping the raw automaton A₁ over all weighted
states by Y_f yields an automaton isomorphic to the universal one.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .automata import (
    Dwa, Wa, check_morphism, dwa_minimize, eval_words, first_violation, merge_states, past, pushforward,
    to_wa, transformations, trim_accessible, wa_determinize, MorphismVerdict,
)
from .errors import BoundExceeded, ClassNotFound, NotDominated, Unsupported
from .quotient import word_quotient
from .residual import (
    dominated_witness, inclusion_degree, residual, weighted_state_dwa, weighted_state_key,
)
from .series import words_upto


@dataclass
class ValueLattice:
    S_A: list
    meet_closure: list
    lattice: list  # l_A, sorted bottom-first along the natural order


def _closure(S, values, op, bound):
    vals = set(values)
    frontier = list(vals)
    while frontier:
        new = []
        for x in frontier:
            for y in list(vals):
                z = op(x, y)
                if z not in vals:
                    vals.add(z)
                    new.append(z)
                    if len(vals) > bound:
                        raise Unsupported(f"value closure exceeds {bound} elements")
        frontier = new
    return vals


def value_lattice(A, bound=10_000):
    """S_A = {c → a | a ∈ Im(A)}, its meet closure, and the join closure of that."""
    S = A.semiring
    S.require_c_semiring()
    A = trim_accessible(A)
    S_A = set()
    for a in set(A.final):
        S_A |= set(S.residual_image(a))
    meets = _closure(S, S_A, S.meet, bound)
    lat = _closure(S, meets, S.join, bound)
    key = S.sort_key
    return ValueLattice(sorted(S_A, key=key), sorted(meets, key=key), sorted(lat, key=key))


class A1:
    """The raw automaton over all weighted states f: Q -> l_A.

    J(f) = f(q0), G(f) = ⋀_q f(q) → F(q), η(f,σ,g) = ⋀_q fσ(q) → g(q) with
    fσ(q) = ⋁{f(p) | δ(p,σ) = q}.
    """

    def __init__(self, A, lattice=None, raw_bound=1_000_000):
        self.A = A = trim_accessible(A)
        S = self.semiring = A.semiring
        self.lattice = lattice or value_lattice(A)
        L = self.lattice.lattice
        if len(L) ** A.n > raw_bound:
            raise BoundExceeded(f"{len(L)}^{A.n} weighted states exceed {raw_bound}", raw_bound)
        self.states = list(itertools.product(L, repeat=A.n))
        self.index = {f: i for i, f in enumerate(self.states)}
        self.J = [f[A.initial] for f in self.states]
        self.G = [S.meet_all(S.residual(f[q], A.final[q]) for q in range(A.n)) for f in self.states]

    @property
    def n(self):
        return len(self.states)

    def shift(self, f, sym):
        """fσ(q) = ⋁{f(p) | δ(p,σ)=q}."""
        S, A = self.semiring, self.A
        out = [S.zero] * A.n
        j = A.index[sym]
        for p in range(A.n):
            t = A.delta[p][j]
            out[t] = S.plus(out[t], f[p])
        return tuple(out)

    def eta_from_shift(self, fs, g):
        S = self.semiring
        return S.meet_all(S.residual(fs[q], g[q]) for q in range(len(g)))

    def eta(self, f, sym, g):
        return self.eta_from_shift(self.shift(f, sym), g)

    def to_wa(self):
        S = self.semiring
        edges = []
        for i, f in enumerate(self.states):
            for s in self.A.alphabet:
                fs = self.shift(f, s)
                for j, g in enumerate(self.states):
                    w = self.eta_from_shift(fs, g)
                    if w != S.zero:
                        edges.append((i, s, j, w))
        return Wa(S, self.A.alphabet, self.n, edges, dict(enumerate(self.J)), dict(enumerate(self.G)))


def build_A1(A, raw_bound=1_000_000):
    return A1(A, raw_bound=raw_bound)


@dataclass
class UClass:
    h: tuple          # largest weighted state of the class
    members: int
    X: Dwa
    Y: Dwa
    J: object
    G: object
    key: tuple = field(repr=False, default=())


@dataclass
class UniversalAutomaton:
    A: Dwa
    classes: list
    eta: dict          # (c, σ, c′) -> nonzero weight
    a1: A1 = field(repr=False, default=None)
    class_of: list = field(repr=False, default_factory=list)  # A₁ state index -> class
    audit: dict = field(default_factory=dict)
    T: list = field(repr=False, default_factory=list)

    @property
    def n(self):
        return len(self.classes)

    def as_wa(self):
        S = self.A.semiring
        edges = [(c, s, d, w) for (c, s, d), w in self.eta.items()]
        return Wa(S, self.A.alphabet, self.n, edges,
                  {i: c.J for i, c in enumerate(self.classes)},
                  {i: c.G for i, c in enumerate(self.classes)},
                  labels=[f"u{i + 1}" for i in range(self.n)])

    def class_by_key(self, key):
        for i, c in enumerate(self.classes):
            if c.key == key:
                return i
        raise ClassNotFound("no class of the universal automaton has this Y series")


def universal_automaton(A, raw_bound=1_000_000, audit=True, audit_window=None):
    """Classes of weighted states with equal Y_f, with J, G, η and audits."""
    a1 = A1(A, raw_bound=raw_bound)
    A = a1.A
    S = A.semiring
    T = transformations(A)
    key_ids, members = {}, []
    class_of = []
    for f in a1.states:
        k = weighted_state_key(A, f, T)
        if k not in key_ids:
            key_ids[k] = len(members)
            members.append([])
        c = key_ids[k]
        members[c].append(f)
        class_of.append(c)
    keys = list(key_ids)
    classes = []
    for c, fs in enumerate(members):
        h = tuple(S.sum(f[q] for f in fs) for q in range(A.n))
        if weighted_state_key(A, h, T) != keys[c]:
            raise AssertionError("the join of a class left the class")
        Y = weighted_state_dwa(A, h, T)
        X = dwa_minimize(residual(A, Y, "right"))
        J = S.sum(a1.J[a1.index[f]] for f in fs)
        G = a1.G[a1.index[fs[0]]]
        classes.append(UClass(h, len(fs), X, Y, J, G, keys[c]))
    eta = {}
    for c, cl in enumerate(classes):
        for s in A.alphabet:
            hs = a1.shift(cl.h, s)
            acc = {}
            for j, g in enumerate(a1.states):
                d = class_of[j]
                acc[d] = S.plus(acc.get(d, S.zero), a1.eta_from_shift(hs, g))
            for d, w in acc.items():
                if w != S.zero:
                    eta[(c, s, d)] = w
    U = UniversalAutomaton(A, classes, eta, a1, class_of, {}, T)
    if audit:
        U.audit = audit_universal(U, audit_window)
    return U


def audit_universal(U, window=None):
    """Cross-checks of J, G, η against inclusion degrees, and |A₁| = |A′| = A."""
    A, S = U.A, U.A.semiring
    out = {}
    out["J_is_X_eps"] = all(c.J == c.X.eval(()) for c in U.classes)
    out["G_is_Y_eps"] = all(c.G == c.Y.eval(()) for c in U.classes)
    out["J_is_Y_incl_A"] = all(c.J == inclusion_degree(c.Y, A) for c in U.classes)
    out["G_is_X_incl_A"] = all(c.G == inclusion_degree(c.X, A) for c in U.classes)
    ok_eta = ok_eta_y = True
    for c, cl in enumerate(U.classes):
        for s in A.alphabet:
            for d, cl2 in enumerate(U.classes):
                w = U.eta.get((c, s, d), S.zero)
                # (Xσ →incl X′) = (X →incl X′σ⁻¹)
                if w != inclusion_degree(cl.X, word_quotient(cl2.X, (s,), "right")):
                    ok_eta = False
                if w != inclusion_degree(cl2.Y, word_quotient(cl.Y, (s,), "left")):
                    ok_eta_y = False
    out["eta_is_X_inclusion"] = ok_eta
    out["eta_is_Y_inclusion"] = ok_eta_y
    k = window if window is not None else 2 * A.n
    target = {w: A.eval(w) for w in words_upto(A.alphabet, k)}
    out["A_prime_recognizes_A"] = eval_words(U.as_wa(), k) == target
    out["A1_recognizes_A"] = eval_words(U.a1.to_wa(), k) == target
    out["window"] = k
    return out


def factorizations(A, **kw):
    """All factorizations (X, Y) of A, one per class of the universal automaton."""
    return [(c.X, c.Y) for c in universal_automaton(A, **kw).classes]


@dataclass
class Morphism:
    phi: list
    verdict: MorphismVerdict

    @property
    def injective(self):
        return len(set(self.phi)) == len(self.phi)


def canonical_morphism(B, U, A=None, window=None):
    """p ↦ the class of Past_B(p)\\A; checked against U's J, G and η."""
    A = U.A if A is None else trim_accessible(A)
    B = to_wa(B)
    if window is None:
        w = first_violation(B, A, A.semiring.leq)
    else:
        w = dominated_witness(B, A, window)
    if w is not None:
        raise NotDominated(f"|B| exceeds A on {''.join(w)!r}", witness=w)
    T = U.T or transformations(U.A)
    phi = []
    for p in range(B.n):
        g = pushforward(past(B, p), U.A)
        phi.append(U.class_by_key(weighted_state_key(U.A, g, T)))
    return Morphism(phi, check_morphism(B, U.as_wa(), phi))


@dataclass
class MergeVerdict:
    mergible: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.mergible


def mergible(W, p, q, A=None, mode="exact", state_bound=100_000):
    """Whether merging states p and q of W preserves the accepted series."""
    if isinstance(W, UniversalAutomaton):
        A = W.A if A is None else A
        W = W.as_wa()
    W = to_wa(W)
    if A is None:
        A = wa_determinize(W, state_bound)
    blocks = [[x] for x in range(W.n) if x not in (p, q)] + [sorted({p, q})]
    M = merge_states(W, blocks)
    if mode == "exact":
        w = first_violation(M, A, lambda x, y: x == y, state_bound)
        return MergeVerdict(w is None, w)
    k = int(mode)
    for w in words_upto(A.alphabet, k):
        if M.eval(w) != A.eval(w):
            return MergeVerdict(False, w)
    return MergeVerdict(True)


__all__ = [
    "ValueLattice", "value_lattice", "A1", "build_A1", "UClass", "UniversalAutomaton",
    "universal_automaton", "audit_universal", "factorizations", "Morphism",
    "canonical_morphism", "mergible", "MergeVerdict",
]
