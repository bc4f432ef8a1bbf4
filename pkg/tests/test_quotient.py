import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wquot.automata import Dwa, dwa_minimize, equivalent, trim_accessible
from wquot.errors import BoundExceeded
from wquot.fixtures import contains_ab_dwa, tropical_pair
from wquot.quotient import (
    nerode_automaton, quotient_automaton_BA, series_quotient, word_quotient,
)
from wquot.semiring import BOOLEAN, MAXMIN_NAT, chain
from wquot.series import Polynomial, combine, constant, words_upto
from strategies import carrier, dwas, finite_semirings, polys, semirings, was, words


def brute_left(S, A, X, v):
    """Σ_u X(u) ⊗ A(uv) over the finite support of X."""
    return S.sum(S.times(x, A.eval(u + v)) for u, x in X.terms.items())


def brute_right(S, A, Y, v):
    return S.sum(S.times(A.eval(v + u), y) for u, y in Y.terms.items())


def test_word_quotient_examples():
    A, _ = tropical_pair()
    assert word_quotient(A, "b")(("b",)) == 0
    C = contains_ab_dwa()
    Q = word_quotient(C, "ab")
    for w in words_upto("ab", 4):
        assert Q.eval(w) == 2
    E = word_quotient(C, "")
    assert all(E.eval(w) == C.eval(w) for w in words_upto("ab", 4))


def test_series_quotient_examples():
    A, X = tropical_pair()
    Q = series_quotient(A, X, "left")
    assert Q(("a",)) == 2 and Q(("b",)) == 2
    one = Polynomial(A.semiring, "ab", {"": 0})
    I = series_quotient(A, one, "left")
    assert all(I.eval(w) == A.eval(w) for w in words_upto("ab", 3))
    C = contains_ab_dwa()
    Q = series_quotient(C, Polynomial(MAXMIN_NAT, "ab", {"a": 2}), "left")
    assert Q(("b",)) == 2


def test_series_quotient_by_automaton_divisor():
    S = chain(3)
    A = contains_ab_dwa(S, 1, 3)
    # X = 2 on a*, infinite support
    X = Dwa(S, "ab", [[0, 1], [1, 1]], 0, [2, 0])
    Q = series_quotient(A, X, "left")
    for v in words_upto("ab", 4):
        expect = S.sum(S.times(X.eval(u), A.eval(u + v)) for u in words_upto("ab", 6))
        assert Q.eval(v) == expect
    R = series_quotient(A, X, "right")
    for v in words_upto("ab", 4):
        expect = S.sum(S.times(A.eval(v + u), X.eval(u)) for u in words_upto("ab", 6))
        assert R.eval(v) == expect


@given(semirings, st.data())
@settings(max_examples=200)
def test_series_quotient_matches_finite_sum(S, data):
    A = data.draw(st.one_of(dwas(S), was(S)))
    X = data.draw(polys(S))
    L, R = series_quotient(A, X, "left"), series_quotient(A, X, "right")
    for v in words_upto("ab", 3):
        assert L.eval(v) == brute_left(S, A, X, v)
        assert R.eval(v) == brute_right(S, A, X, v)


@given(semirings, st.data())
@settings(max_examples=200)
def test_word_action(S, data):
    A = data.draw(st.one_of(dwas(S), was(S), polys(S)))
    u, v = data.draw(words(3)), data.draw(words(3))
    left_uv = word_quotient(A, u + v)
    left_nested = word_quotient(word_quotient(A, u), v)
    right_uv = word_quotient(A, u + v, "right")
    right_nested = word_quotient(word_quotient(A, v, "right"), u, "right")
    for w in words_upto("ab", 3):
        assert left_uv.eval(w) == left_nested.eval(w) == A.eval(u + v + w)
        assert right_uv.eval(w) == right_nested.eval(w) == A.eval(w + u + v)


def test_nerode_examples():
    assert nerode_automaton(contains_ab_dwa()).n == 3
    assert nerode_automaton(constant(chain(3), "ab", 2)).n == 1


@given(semirings, st.data())
@settings(max_examples=200)
def test_nerode_matches_minimize(S, data):
    A = data.draw(dwas(S, max_states=5))
    N, M = nerode_automaton(A), dwa_minimize(A)
    assert N.n == M.n
    assert equivalent(N, A)
    # isomorphic: equal canonical BFS numbering after minimization
    assert dwa_minimize(N).delta == M.delta and dwa_minimize(N).final == M.final


def test_quotient_automaton_boolean_language():
    # Σ*ab: classical quotient complexity 3
    A = Dwa(BOOLEAN, "ab", [[1, 0], [1, 2], [1, 0]], 0, [0, 0, 1])
    B = quotient_automaton_BA(A)
    assert trim_accessible(B).n == 3
    # the quotients are L, L+b, L+ε; their unions add L+b+ε and the empty series
    assert B.n == 5


def test_quotient_automaton_finite_chain():
    A = contains_ab_dwa(chain(2))
    B = quotient_automaton_BA(A)
    assert trim_accessible(B).n == 3
    assert equivalent(trim_accessible(B), A)


def test_quotient_automaton_infinite_carrier_blows_up():
    A = constant(MAXMIN_NAT, "ab", MAXMIN_NAT.one)
    with pytest.raises(BoundExceeded):
        quotient_automaton_BA(A, state_bound=20)


@given(finite_semirings, st.data())
@settings(max_examples=200)
def test_quotient_automaton_states_are_quotients(S, data):
    A = data.draw(dwas(S, max_states=3))
    B = quotient_automaton_BA(A)
    assert equivalent(trim_accessible(B), A)
    for i, c in enumerate(B.labels):
        # the state's series is Σ_q c(q) Fut_A(q) on the trimmed automaton
        T = trim_accessible(A)
        Bi = Dwa(S, B.alphabet, B.delta, i, B.final)
        for w in words_upto("ab", 3):
            assert Bi.eval(w) == S.sum(S.times(c[q], T.final[T.run(q, w)]) for q in range(T.n))


@given(semirings, st.data())
@settings(max_examples=200)
def test_quotient_sum_laws(S, data):
    A, B = data.draw(dwas(S)), data.draw(dwas(S))
    X1, X2 = data.draw(polys(S)), data.draw(polys(S))
    u = data.draw(words(2))
    AB = combine("sum", A, B)
    lhs_u = word_quotient(AB, u)
    lhs_x = series_quotient(A, combine("sum", X1, X2))
    rhs_x1, rhs_x2 = series_quotient(A, X1), series_quotient(A, X2)
    for w in words_upto("ab", 4):
        assert lhs_u.eval(w) == S.plus(word_quotient(A, u).eval(w), word_quotient(B, u).eval(w))
        assert lhs_x.eval(w) == S.plus(rhs_x1.eval(w), rhs_x2.eval(w))


@given(semirings, st.data())
@settings(max_examples=200)
def test_word_quotient_scalars(S, data):
    A = data.draw(dwas(S))
    k = data.draw(st.sampled_from(carrier(S)))
    u = data.draw(words(2))
    kA, Ak = combine("scalar_left", k, A), combine("scalar_right", A, k)
    for side in ("left", "right"):
        q = word_quotient(A, u, side)
        for w in words_upto("ab", 3):
            assert word_quotient(kA, u, side).eval(w) == S.times(k, q.eval(w))
            assert word_quotient(Ak, u, side).eval(w) == S.times(q.eval(w), k)


@given(semirings, st.data())
@settings(max_examples=200)
def test_series_quotient_of_sum_and_scalars(S, data):
    A1, A2 = data.draw(dwas(S)), data.draw(dwas(S))
    X = data.draw(polys(S))
    r = data.draw(st.sampled_from(carrier(S)))
    for side in ("left", "right"):
        lhs = series_quotient(combine("sum", A1, A2), X, side)
        q1, q2 = series_quotient(A1, X, side), series_quotient(A2, X, side)
        scaled = series_quotient(A1, combine("scalar_left", r, X), side)
        for w in words_upto("ab", 3):
            assert lhs.eval(w) == S.plus(q1.eval(w), q2.eval(w))
            assert scaled.eval(w) == S.times(r, q1.eval(w))


@given(semirings, st.data())
@settings(max_examples=200)
def test_quotient_by_product(S, data):
    A = data.draw(dwas(S))
    X1, X2 = data.draw(polys(S)), data.draw(polys(S))
    L = series_quotient(A, combine("cauchy", X1, X2))
    nested = series_quotient(series_quotient(A, X1), X2)
    R = series_quotient(A, combine("cauchy", X1, X2), "right")
    nested_r = series_quotient(series_quotient(A, X2, "right"), X1, "right")
    for w in words_upto("ab", 3):
        assert L.eval(w) == nested.eval(w) and R.eval(w) == nested_r.eval(w)


@given(semirings, st.data())
@settings(max_examples=200)
def test_left_right_quotient_duality(S, data):
    A, X = data.draw(dwas(S)), data.draw(polys(S))
    L = series_quotient(A, X)
    RA = combine("reversal", A)
    RX = Polynomial(S, "ab", {tuple(reversed(u)): v for u, v in X.terms.items()})
    for w in words_upto("ab", 4):
        expect = S.sum(S.times(RA.eval(tuple(reversed(w)) + u), v) for u, v in RX.terms.items())
        assert L.eval(w) == expect
