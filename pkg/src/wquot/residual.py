"""Residuals, inclusion degrees and factorizations over complete c-semirings."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .automata import (
    Dwa, Wa, dwa_minimize, first_difference, poly_to_dwa, pushforward, to_dwa,
    transformations, wa_determinize,
)
from .errors import NotSubFactorization, Unsupported
from .series import Polynomial, Series, combine, words_upto


def as_dwa(X, state_bound=10_000):
    if isinstance(X, Dwa):
        return X
    if isinstance(X, Polynomial):
        return poly_to_dwa(X)
    if isinstance(X, Wa):
        return wa_determinize(X, state_bound)
    return to_dwa(X, state_bound)


def inclusion_degree(f, g, state_bound=10_000):
    """⋀_w f(w) → g(w), as a finite meet over product-reachable state pairs."""
    f.compatible(g)
    S = f.semiring
    S.require_c_semiring()
    if isinstance(f, Polynomial):
        return S.meet_all(S.residual(v, g.eval(w)) for w, v in f.terms.items())
    F, G = as_dwa(f, state_bound), as_dwa(g, state_bound)
    start = (F.initial, G.initial)
    seen = {start}
    todo = deque([start])
    acc = S.one
    k = len(F.alphabet)
    gidx = [G.index[s] for s in F.alphabet]
    while todo:
        p, q = todo.popleft()
        acc = S.meet(acc, S.residual(F.final[p], G.final[q]))
        if acc == S.zero:
            return acc
        for j in range(k):
            nxt = (F.delta[p][j], G.delta[q][gidx[j]])
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return acc


def weighted_state_dwa(A, f, T=None, minimize=True):
    """Y_f = ⋀_q f(q) → Fut_A(q) on the transition monoid of A.

    States are the maps m: Q -> Q reachable from the identity; the output at m
    is ⋀_q f(q) → F(m(q)).
    """
    S = A.semiring
    if T is None:
        T = transformations(A)
    ids = {m: i for i, (m, _) in enumerate(T)}
    cols = [tuple(A.delta[q][j] for q in range(A.n)) for j in range(len(A.alphabet))]
    delta = [[ids[tuple(col[x] for x in m)] for col in cols] for m, _ in T]
    final = [S.meet_all(S.residual(f[q], A.final[m[q]]) for q in range(A.n) if f[q] != S.zero)
             for m, _ in T]
    Y = Dwa(S, A.alphabet, delta, 0, final)
    return dwa_minimize(Y) if minimize else Y


def weighted_state_key(A, f, T):
    """Canonical key of Y_f: its outputs over the transition monoid."""
    S = A.semiring
    F, n = A.final, A.n
    return tuple(S.meet_all(S.residual(f[q], F[m[q]]) for q in range(n) if f[q] != S.zero)
                 for m, _ in T)


def right_residual_finals(A, D, state_bound=10_000):
    """F^D(q) = ⋀_u D(u) → F(δ*(q,u)) for every state q of the Dwa A."""
    S = A.semiring
    if isinstance(D, Polynomial):
        return [S.meet_all(S.residual(v, A.final[A.run(q, u)]) for u, v in D.terms.items())
                for q in range(A.n)]
    Dd = as_dwa(D, state_bound)
    return [inclusion_degree(Dd, A.fut(q)) for q in range(A.n)]


def residual(A, D, side="left", state_bound=10_000):
    """D\\A (side="left") or A/D (side="right"), as a Dwa."""
    A.compatible(D)
    S = A.semiring
    S.require_c_semiring()
    Ad = as_dwa(A, state_bound)
    if side == "right":
        return Dwa(S, Ad.alphabet, Ad.delta, Ad.initial, right_residual_finals(Ad, D, state_bound))
    if side == "left":
        if isinstance(D, Series) and not isinstance(D, (Polynomial, Dwa, Wa)):
            D = as_dwa(D, state_bound)
        g = pushforward(D, Ad)
        return weighted_state_dwa(Ad, g)
    raise ValueError("side must be 'left' or 'right'")


def residual_oracle(A, D, side, support_len, value_set):
    """Brute-force residual: join of every Z with support in Σ^{<=support_len}
    and values in ``value_set`` such that D·Z <= A (left) or Z·D <= A (right),
    checked on all words up to maxlen(D) + support_len.  Test oracle only.
    """
    if not isinstance(D, Polynomial):
        raise Unsupported("the oracle needs a polynomial divisor")
    S = A.semiring
    alph = A.alphabet
    window = list(words_upto(alph, support_len))
    horizon = D.max_length() + support_len
    targets = {w: A.eval(w) for w in words_upto(alph, horizon)}
    dterms = list(D.terms.items())
    values = list(value_set)
    best = {w: S.zero for w in window}
    for combo in itertools.product(values, repeat=len(window)):
        Z = dict(zip(window, combo))
        ok = True
        for w, a in targets.items():
            acc = S.zero
            for u, d in dterms:
                k = len(u)
                if side == "left":
                    if w[:k] == u and w[k:] in Z:
                        acc = S.plus(acc, S.times(d, Z[w[k:]]))
                elif len(w) >= k and w[len(w) - k:] == u and w[:len(w) - k] in Z:
                    acc = S.plus(acc, S.times(Z[w[:len(w) - k]], d))
            if not S.leq(acc, a):
                ok = False
                break
        if ok:
            for w in window:
                best[w] = S.plus(best[w], Z[w])
    return Polynomial(S, alph, best)


@dataclass
class Factorization:
    X: Dwa
    Y: Dwa
    A: Series

    def product(self):
        return combine("cauchy", self.X, self.Y)


def series_equal(f, g, state_bound=10_000):
    return first_difference(as_dwa(f, state_bound), as_dwa(g, state_bound)) is None


def is_factorization(A, X, Y):
    """(X, Y) is a factorization iff X = A/Y and Y = X\\A."""
    return series_equal(residual(A, Y, "right"), X) and series_equal(residual(A, X, "left"), Y)


def dominated_witness(P, A, window):
    """First word of length <= window with P(w) not <= A(w), or None."""
    S = A.semiring
    for w in words_upto(A.alphabet, window):
        if not S.leq(P.eval(w), A.eval(w)):
            return w
    return None


def extend_to_factorization(A, W, Z, window=None):
    """A factorization (A/Z, (A/Z)\\A) dominating the sub-factorization (W, Z)."""
    if window is None:
        window = 2 * sum(getattr(x, "n", 0) or 0 for x in (as_dwa(A), as_dwa(W), as_dwa(Z)))
    w = dominated_witness(combine("cauchy", W, Z), A, window)
    if w is not None:
        raise NotSubFactorization(f"W·Z exceeds A on {''.join(w)!r}", witness=w)
    X = residual(A, Z, "right")
    Y = residual(A, X, "left")
    return Factorization(dwa_minimize(X), Y, A)


def closure(A, X):
    """cl(X) = A/(X\\A)."""
    return residual(A, residual(A, X, "left"), "right")


__all__ = [
    "inclusion_degree", "residual", "residual_oracle", "is_factorization",
    "extend_to_factorization", "Factorization", "weighted_state_dwa", "weighted_state_key",
    "closure", "series_equal",
]
