"""Quotients of series by words and by series; Nerode and quotient-indexed automata."""
from __future__ import annotations

import itertools

from .automata import (
    Dwa, Wa, first_difference, poly_to_dwa, reverse_wa, to_dwa, to_wa, transformations,
    trim_accessible, wa_determinize,
)
from .errors import BoundExceeded, Unsupported
from .series import Lazy, Polynomial


def _automaton(A):
    if isinstance(A, (Dwa, Wa)):
        return A
    if isinstance(A, Polynomial):
        return poly_to_dwa(A)
    return to_dwa(A)


def word_quotient(A, u, side="left"):
    """u⁻¹A (left) or Au⁻¹ (right)."""
    u = A.check_word(u)
    S = A.semiring
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if isinstance(A, Polynomial):
        k = len(u)
        if side == "left":
            return Polynomial(S, A.alphabet, {w[k:]: v for w, v in A.terms.items() if w[:k] == u})
        return Polynomial(S, A.alphabet,
                          {w[:len(w) - k]: v for w, v in A.terms.items() if len(w) >= k and w[len(w) - k:] == u})
    if isinstance(A, Dwa):
        if side == "left":
            return Dwa(S, A.alphabet, A.delta, A.run(A.initial, u), A.final)
        return Dwa(S, A.alphabet, A.delta, A.initial, [A.final[A.run(q, u)] for q in range(A.n)])
    if isinstance(A, Wa):
        if side == "left":
            return Wa(S, A.alphabet, A.n, A.transitions(), A.forward(dict(A.initial), u), dict(A.final))
        R = reverse_wa(A)
        back = R.forward(dict(R.initial), u[::-1])
        return Wa(S, A.alphabet, A.n, A.transitions(), dict(A.initial), back)
    if side == "left":
        return Lazy(S, A.alphabet, "word_quotient", (A, u, side), lambda w: A.eval(u + w))
    return Lazy(S, A.alphabet, "word_quotient", (A, u, side), lambda w: A.eval(w + u))


def _pair_fixpoint(S, starts, succ, iteration_bound):
    """Least solution of v = starts ⊕ Σ succ-contributions, by Gauss-Seidel sweeps.

    ``succ(node)`` yields (node2, weight) pairs; v(node2) ⊕= v(node) ⊗ weight.
    """
    val = dict(starts)
    nodes = list(val)
    seen = set(nodes)
    i = 0
    while i < len(nodes):  # discover the reachable part
        for t, _ in succ(nodes[i]):
            if t not in seen:
                seen.add(t)
                nodes.append(t)
        i += 1
    edges = {x: list(succ(x)) for x in nodes}
    for _ in range(iteration_bound):
        changed = False
        for x in nodes:
            vx = val.get(x, S.zero)
            if vx == S.zero:
                continue
            for t, w in edges[x]:
                old = val.get(t, S.zero)
                new = S.plus(old, S.times(vx, w))
                if new != old:
                    val[t] = new
                    changed = True
        if not changed:
            return val
    raise BoundExceeded(f"join iteration did not stabilize within {iteration_bound} sweeps", iteration_bound)


def left_initial_weights(A, X, iteration_bound=10_000):
    """I_X(q) = Σ_u X(u) ⊗ (I δ*(u))(q) for automaton A (as Wa)."""
    S = A.semiring
    A = to_wa(A)
    if isinstance(X, Polynomial):
        out = {}
        for u, x in X.terms.items():
            for q, v in A.forward(dict(A.initial), u).items():
                out[q] = S.plus(out.get(q, S.zero), S.times(x, v))
        return out
    Xw = to_wa(_automaton(X))
    starts = {(r, q): S.times(a, b) for r, a in Xw.initial.items() for q, b in A.initial.items()}

    def succ(node):
        r, q = node
        for s in A.alphabet:
            for r2, w1 in Xw.delta.get((r, s), {}).items():
                for q2, w2 in A.delta.get((q, s), {}).items():
                    yield (r2, q2), S.times(w1, w2)
    val = _pair_fixpoint(S, starts, succ, iteration_bound)
    out = {}
    for (r, q), v in val.items():
        if r in Xw.final:
            out[q] = S.plus(out.get(q, S.zero), S.times(v, Xw.final[r]))
    return out


def right_final_weights(A, Y, iteration_bound=10_000):
    """F_Y(q) = Σ_u Fut_A(q)(u) ⊗ Y(u), computed on the reversed automata."""
    S = A.semiring
    R = reverse_wa(to_wa(A))
    Yr = Polynomial(S, Y.alphabet, {u[::-1]: v for u, v in Y.terms.items()}) if isinstance(Y, Polynomial) \
        else reverse_wa(to_wa(_automaton(Y)))
    return left_initial_weights(R, Yr, iteration_bound)


def series_quotient(A, X, side="left", iteration_bound=10_000, state_bound=10_000):
    """X⁻¹A (left) or AX⁻¹ (right).

    A Dwa base gives a Dwa result (left quotients are determinized, which
    always terminates because the weights stay inside a finite join closure).
    """
    A.compatible(X)
    base = _automaton(A)
    S = A.semiring
    if side == "left":
        I = left_initial_weights(base, X, iteration_bound)
        B = to_wa(base)
        out = Wa(S, A.alphabet, B.n, B.transitions(), I, dict(B.final))
        if isinstance(base, Dwa) and S.idempotent:
            return wa_determinize(out, state_bound)
        return out
    if side == "right":
        F = right_final_weights(base, X, iteration_bound)
        if isinstance(base, Dwa):
            return Dwa(S, A.alphabet, base.delta, base.initial, [F.get(q, S.zero) for q in range(base.n)])
        return Wa(S, A.alphabet, base.n, base.transitions(), dict(base.initial), F)
    raise ValueError("side must be 'left' or 'right'")


def nerode_automaton(A):
    """M_A′: states are the distinct left quotients u⁻¹A, found by word BFS.

    Two quotients are identified by an exact product-equivalence test, so the
    result does not depend on partition refinement.
    """
    S = A.semiring
    reps = []  # state of A representing each class
    cls_of = {}

    def classify(q):
        if q in cls_of:
            return cls_of[q]
        Aq = Dwa(S, A.alphabet, A.delta, q, A.final)
        for c, r in enumerate(reps):
            if first_difference(Aq, Dwa(S, A.alphabet, A.delta, r, A.final)) is None:
                cls_of[q] = c
                return c
        reps.append(q)
        cls_of[q] = len(reps) - 1
        return cls_of[q]

    classify(A.initial)
    delta = []
    i = 0
    while i < len(reps):
        delta.append([classify(A.delta[reps[i]][j]) for j in range(len(A.alphabet))])
        i += 1
    return Dwa(S, A.alphabet, delta, 0, [A.final[r] for r in reps])


def linear_key(A, T, c):
    """Key of the series Σ_q c(q) ⊗ Fut_A(q): its value at each m in the transition monoid."""
    S = A.semiring
    F = A.final
    return tuple(S.sum(S.times(c[q], F[m[q]]) for q in range(A.n) if c[q] != S.zero) for m, _ in T)


def quotient_automaton_BA(A, state_bound=10_000, scalar_bound=None):
    """The automaton whose states are all distinct quotients X⁻¹A.

    Every X⁻¹A equals Σ_q c(q) ⊗ Fut_A(q) for c(q) = Σ{X(u) | δ*(q0,u)=q}, so the
    states are enumerated over coefficient vectors c.  The initial state is
    A itself; ``trim_accessible`` of the result is the Nerode automaton.
    Infinite carriers are explored over growing scalar sets and raise
    BoundExceeded once more than ``state_bound`` distinct quotients appear.
    """
    A = trim_accessible(A)
    S = A.semiring
    T = transformations(A)
    n, k = A.n, len(A.alphabet)
    keys = {}
    vecs = []

    def add(c):
        key = linear_key(A, T, c)
        if key not in keys:
            if len(vecs) >= state_bound:
                raise BoundExceeded(f"more than {state_bound} distinct quotients", state_bound)
            keys[key] = len(vecs)
            vecs.append(c)
        return keys[key]

    start = tuple(S.one if q == A.initial else S.zero for q in range(n))
    add(start)
    if S.finite:
        for c in itertools.product(list(S.elements()), repeat=n):
            add(c)
    else:
        limit = scalar_bound or (state_bound + 2)
        scalars = []
        for x in itertools.islice(S.elements(), limit):
            scalars.append(x)
            for c in itertools.product(scalars, repeat=n):
                if x in c:
                    add(c)
        raise Unsupported(
            f"could not certify finiteness of the quotient set over {S} after {limit} scalars")

    def push(c, j):
        out = [S.zero] * n
        for q in range(n):
            if c[q] != S.zero:
                t = A.delta[q][j]
                out[t] = S.plus(out[t], c[q])
        return tuple(out)

    delta = [[add(push(c, j)) for j in range(k)] for c in vecs]
    final = [S.sum(S.times(c[q], A.final[q]) for q in range(n)) for c in vecs]
    return Dwa(S, A.alphabet, delta, 0, final, labels=list(vecs))


__all__ = [
    "word_quotient", "series_quotient", "nerode_automaton", "quotient_automaton_BA",
    "left_initial_weights", "right_final_weights", "linear_key",
]
