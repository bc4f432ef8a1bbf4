import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wquot.errors import MixedSemiring, Unsupported
from wquot.semiring import (
    BOOLEAN, INF, MAXMIN_NAT, NATURAL, TROPICAL_NAT, TableSemiring, chain, from_json,
    validate_axioms,
)
from strategies import C_SEMIRINGS, carrier, semirings


def brute_residual(S, a, b):
    """Largest x (over a finite window of the carrier) with a ⊗ x <= b."""
    cands = [x for x in carrier(S) + list(range(6, 40)) if S.contains(x) and S.leq(S.times(a, x), b)]
    return S.sum(cands)


@pytest.mark.parametrize("S", C_SEMIRINGS, ids=repr)
def test_shipped_semirings_satisfy_laws(S):
    report = validate_axioms(S)
    assert report.ok, str(report)


def test_natural_is_not_idempotent():
    report = validate_axioms(NATURAL, samples=200)
    failed = {c.law for c in report.failed()}
    assert "plus idempotent" in failed
    assert "one absorbs plus" in failed
    assert "left distributive" not in failed


def test_broken_table_reports_witness():
    # plus = max on {0,1,2}, times a non-distributive table
    plus = [[max(a, b) for b in range(3)] for a in range(3)]
    times = [[0, 0, 0], [0, 1, 2], [0, 2, 1]]
    S = TableSemiring.from_tables(["0", "x", "y"], plus, times, 0, 1)
    report = validate_axioms(S)
    assert not report.ok
    for c in report.failed():
        assert c.witness is not None


def test_table_copy_of_chain_matches_chain():
    C = chain(2)
    plus = [[C.plus(a, b) for b in range(3)] for a in range(3)]
    times = [[C.times(a, b) for b in range(3)] for a in range(3)]
    T = TableSemiring.from_tables(["lo", "mid", "hi"], plus, times, 0, 2)
    assert validate_axioms(T).ok
    for a, b in itertools.product(range(3), repeat=2):
        assert T.residual(a, b) == C.residual(a, b)
        assert T.meet(a, b) == C.meet(a, b)
    assert from_json(T.to_json()) == T


@pytest.mark.parametrize("S", C_SEMIRINGS, ids=repr)
def test_residual_matches_sup_enumeration(S):
    for a, b in itertools.product(carrier(S), repeat=2):
        if S is TROPICAL_NAT and b is INF and a is not INF:
            assert S.residual(a, b) is INF  # a + x >= INF numerically only at x = INF
            continue
        if S is MAXMIN_NAT and S.leq(a, b):
            assert S.residual(a, b) is INF
            continue
        assert S.residual(a, b) == brute_residual(S, a, b), (a, b)


def test_residual_examples():
    assert MAXMIN_NAT.residual(3, 5) is INF
    assert MAXMIN_NAT.residual(5, 3) == 3
    assert TROPICAL_NAT.residual(4, 10) == 6
    assert TROPICAL_NAT.residual(2, 0) == 0
    assert TROPICAL_NAT.residual(INF, 7) == 0
    assert chain(3).residual(2, 1) == 1
    assert BOOLEAN.residual(1, 0) == 0


def test_residual_images():
    assert MAXMIN_NAT.residual_image(1) == {1, INF}
    assert MAXMIN_NAT.residual_image(2) == {2, INF}
    assert TROPICAL_NAT.residual_image(3) == {0, 1, 2, 3}
    assert TROPICAL_NAT.residual_image(INF) == {0, INF}
    assert chain(3).residual_image(1) == {1, 3}
    with pytest.raises(Unsupported):
        NATURAL.residual_image(1)


@pytest.mark.parametrize("S", [MAXMIN_NAT, TROPICAL_NAT], ids=repr)
def test_residual_image_is_exact_on_window(S):
    for a in carrier(S):
        seen = {S.residual(c, a) for c in carrier(S) + list(range(6, 30))}
        assert seen == set(S.residual_image(a))


def test_natural_rejects_residual_and_divergent_star():
    with pytest.raises(Unsupported):
        NATURAL.residual(1, 2)
    assert NATURAL.star(0) == 1
    with pytest.raises(Unsupported):
        NATURAL.star(2)


def test_membership_checks():
    with pytest.raises(MixedSemiring):
        chain(2).check(3)
    with pytest.raises(MixedSemiring):
        BOOLEAN.check(2)
    assert MAXMIN_NAT.decode("inf") is INF
    assert TROPICAL_NAT.encode(INF) == "inf"


def test_infinity_arithmetic():
    assert INF + 3 is INF
    assert 3 < INF and not INF < 3
    assert max(2, INF) is INF and min(2, INF) == 2


@given(semirings, st.data())
@settings(max_examples=200)
def test_sort_key_extends_order(S, data):
    a, b = data.draw(st.sampled_from(carrier(S))), data.draw(st.sampled_from(carrier(S)))
    if S.leq(a, b) and a != b:
        assert S.sort_key(a) < S.sort_key(b)


@given(semirings, st.data())
@settings(max_examples=200)
def test_meet_is_greatest_lower_bound(S, data):
    a, b, x = (data.draw(st.sampled_from(carrier(S))) for _ in range(3))
    m = S.meet(a, b)
    assert S.leq(m, a) and S.leq(m, b)
    if S.leq(x, a) and S.leq(x, b):
        assert S.leq(x, m)


@pytest.mark.parametrize("S", C_SEMIRINGS, ids=repr)
def test_json_round_trip(S):
    assert from_json(S.to_json()) == S
