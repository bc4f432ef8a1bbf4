import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wquot.automata import (
    Dwa, Wa, check_morphism, dwa_minimize, equivalent, eval_words, fut, merge_states, moore_partition,
    partition_map, past, to_wa, trans, transformations, trim, trim_accessible, wa_determinize,
)
from wquot.errors import BoundExceeded, Unsupported
from wquot.fixtures import contains_ab_dwa, shifted_length_wa
from wquot.semiring import BOOLEAN, NATURAL, TROPICAL_NAT, chain
from wquot.series import combine, words_upto
from strategies import dwas, semirings, was, words


def brute_wa(B, w):
    """Sum over all state paths, written independently of the vector sweep."""
    S = B.semiring
    total = S.zero
    for path in itertools.product(range(B.n), repeat=len(w) + 1):
        x = S.times(B.initial.get(path[0], S.zero), B.final.get(path[-1], S.zero))
        for i, s in enumerate(w):
            x = S.times(x, B.weight(path[i], s, path[i + 1]))
        total = S.plus(total, x)
    return total


def distinguishable(A, p, q, k):
    return any(A.final[A.run(p, w)] != A.final[A.run(q, w)] for w in words_upto(A.alphabet, k))


def test_examples():
    A = contains_ab_dwa()
    assert A("bab") == 2
    B = shifted_length_wa()
    assert B("a") == 0 and B("aaa") == 2
    assert B("") == TROPICAL_NAT.zero


def test_empty_word_on_wa():
    S = chain(3)
    B = Wa(S, "ab", 2, [], {0: 2, 1: 3}, {0: 1, 1: 2})
    assert B(()) == S.plus(S.times(2, 1), S.times(3, 2))


@given(semirings, st.data())
@settings(max_examples=200)
def test_wa_eval_matches_path_sum(S, data):
    B = data.draw(was(S))
    for w in words_upto("ab", 3):
        assert B.eval(w) == brute_wa(B, w)


def test_wa_eval_over_naturals_counts_paths():
    B = Wa(NATURAL, "a", 2, [(0, "a", 0, 1), (0, "a", 1, 1), (1, "a", 1, 1)], {0: 1}, {0: 1, 1: 1})
    assert B(tuple("aaa")) == brute_wa(B, tuple("aaa")) == 4


@given(semirings, st.data())
@settings(max_examples=100)
def test_batch_eval_matches_pointwise(S, data):
    B = data.draw(was(S))
    table = eval_words(B, 4)
    for w in words_upto("ab", 4):
        assert table[w] == B.eval(w)


def test_trim_removes_isolated_state():
    S = chain(3)
    A = Dwa(S, "ab", [[0, 1], [1, 0], [2, 2]], 0, [1, 2, 3])
    T = trim_accessible(A)
    assert T.n == 2
    for w in words_upto("ab", 6):
        assert T.eval(w) == A.eval(w)
    assert trim_accessible(contains_ab_dwa()).n == 3


def test_trim_wa_ignores_zero_weight_edges():
    S = chain(3)
    B = Wa(S, "ab", 3, [(0, "a", 1, 2), (0, "b", 2, 0)], {0: 3}, {1: 3, 2: 3})
    T = trim_accessible(B)
    assert T.n == 2
    for w in words_upto("ab", 6):
        assert T.eval(w) == B.eval(w)


def test_minimize_examples():
    assert dwa_minimize(contains_ab_dwa()).n == 3
    A = contains_ab_dwa()
    for p, q in itertools.combinations(range(3), 2):
        assert distinguishable(A, p, q, 6)
    S = chain(3)
    dup = Dwa(S, "ab", [[1, 2], [1, 1], [2, 2]], 0, [0, 3, 3])
    assert dwa_minimize(dup).n == 2


@given(semirings, st.data())
@settings(max_examples=200)
def test_minimize_states_pairwise_distinguishable(S, data):
    A = data.draw(dwas(S, max_states=6))
    M = dwa_minimize(A)
    for w in words_upto("ab", 6):
        assert M.eval(w) == A.eval(w)
    for p, q in itertools.combinations(range(M.n), 2):
        assert distinguishable(M, p, q, M.n)


def test_determinize_boolean_subset_construction():
    # NFA for Σ*ab
    B = Wa(BOOLEAN, "ab", 3, [(0, "a", 0, 1), (0, "b", 0, 1), (0, "a", 1, 1), (1, "b", 2, 1)], {0: 1}, {2: 1})
    D = wa_determinize(B)
    assert dwa_minimize(D).n == 3
    for w in words_upto("ab", 6):
        assert D.eval(w) == int("".join(w).endswith("ab"))


def test_determinize_blows_up_on_shifted_length():
    with pytest.raises(BoundExceeded) as e:
        wa_determinize(shifted_length_wa(), 50)
    assert e.value.bound == 50


def test_determinize_needs_idempotent_sum():
    with pytest.raises(Unsupported):
        wa_determinize(Wa(NATURAL, "a", 1, [], {0: 1}, {0: 1}))


@given(semirings, st.data())
@settings(max_examples=200)
def test_determinize_commutes_with_eval(S, data):
    B = data.draw(was(S))
    try:
        D = wa_determinize(B, 60)
    except BoundExceeded:
        return
    for w in words_upto("ab", 5):
        assert D.eval(w) == B.eval(w)


def test_past_fut_trans():
    B = shifted_length_wa()
    S = B.semiring
    assert past(B, 0)(()) == 0
    assert fut(B, 1)(()) == 0
    assert fut(B, 1)("aa") == 2
    assert trans(B, 0, 1)("a") == 0
    assert trans(B, 1, 0)("a") == S.zero


@given(semirings, st.data())
@settings(max_examples=200)
def test_past_fut_bound(S, data):
    B = data.draw(was(S))
    for q in range(B.n):
        P = combine("cauchy", past(B, q), fut(B, q))
        for w in words_upto("ab", 6):
            assert S.leq(P.eval(w), B.eval(w))


@given(semirings, st.data())
@settings(max_examples=200)
def test_run_composes(S, data):
    A = data.draw(dwas(S))
    u, v = data.draw(words()), data.draw(words())
    for q in range(A.n):
        assert A.run(q, u + v) == A.run(A.run(q, u), v)


def test_identity_morphism_is_strong():
    A = to_wa(contains_ab_dwa())
    v = check_morphism(A, A, range(A.n))
    assert v.plain and v.strong and v.surjective


def test_collapsing_equivalent_states_is_strong():
    S = chain(3)
    A = Dwa(S, "ab", [[1, 2], [1, 1], [2, 2]], 0, [0, 3, 3])
    M = dwa_minimize(A)
    phi = [0, 1, 1]
    v = check_morphism(A, M, phi)
    assert v.plain and v.strong
    for w in words_upto("ab", 6):
        assert M.eval(w) == A.eval(w)


def test_violated_final_weight_gives_witness():
    S = chain(3)
    A = Wa(S, "a", 1, [], {0: 3}, {0: 3})
    B = Wa(S, "a", 1, [], {0: 3}, {0: 1})
    v = check_morphism(A, B, [0])
    assert not v.plain
    assert v.witnesses["plain"] == ("final", 0)


def test_merge_states_examples():
    S = chain(3)
    B = Wa(S, "ab", 3, [(0, "a", 1, 2), (0, "a", 2, 2), (1, "b", 1, 3), (2, "b", 2, 3)], {0: 3}, {1: 1, 2: 1})
    M = merge_states(B, [[0], [1, 2]])
    assert M.n == 2
    for w in words_upto("ab", 6):
        assert M.eval(w) == B.eval(w)
    assert check_morphism(B, M, [0, 1, 1]).surjective
    same = merge_states(B, [[0], [1], [2]])
    assert [tuple(t) for t in same.transitions()] == [tuple(t) for t in B.transitions()]


@given(semirings, st.data())
@settings(max_examples=200)
def test_morphism_implies_dominance(S, data):
    B = data.draw(was(S))
    k = data.draw(st.integers(1, B.n))
    phi = partition_map(B.n, [data.draw(st.integers(0, k - 1)) for _ in range(B.n)])
    M = merge_states(B, phi)
    assert check_morphism(B, M, phi).surjective
    # adding weight to the target keeps the map a (plain) morphism
    extra = data.draw(was(S, max_states=M.n))
    extra = Wa(S, "ab", M.n, [t for t in extra.transitions() if t[0] < M.n and t[2] < M.n],
               {q: w for q, w in extra.initial.items() if q < M.n},
               {q: w for q, w in extra.final.items() if q < M.n})
    big = Wa(S, "ab", M.n, list(M.transitions()) + list(extra.transitions()),
             {q: S.plus(M.initial.get(q, S.zero), extra.initial.get(q, S.zero)) for q in range(M.n)},
             {q: S.plus(M.final.get(q, S.zero), extra.final.get(q, S.zero)) for q in range(M.n)})
    assert check_morphism(B, big, phi).plain
    for w in words_upto("ab", 6):
        assert S.leq(B.eval(w), big.eval(w))


def test_equivalent_modes():
    A = contains_ab_dwa()
    assert equivalent(A, trim_accessible(A))
    C = Dwa(A.semiring, "ab", A.delta, 0, [1, 1, 3])
    r = equivalent(A, C)
    assert not r and r.witness == ("a", "b")
    assert not equivalent(A, C, 4)
    with pytest.raises(Unsupported):
        equivalent(to_wa(A), A)


def test_transformations_start_with_identity():
    T = transformations(contains_ab_dwa())
    assert T[0] == ((0, 1, 2), ())
    for m, w in T:
        assert m == tuple(contains_ab_dwa().run(q, w) for q in range(3))


def test_trim_keeps_series():
    S = chain(3)
    B = Wa(S, "ab", 4, [(0, "a", 1, 2), (1, "b", 2, 3), (3, "a", 0, 3)], {0: 3}, {2: 2, 1: 0})
    T = trim(B)
    assert T.n == 3
    for w in words_upto("ab", 6):
        assert T.eval(w) == B.eval(w)


def test_moore_partition_blocks():
    S = chain(3)
    A = Dwa(S, "ab", [[1, 2], [1, 1], [2, 2]], 0, [0, 3, 3])
    b = moore_partition(A)
    assert b[1] == b[2] != b[0]
