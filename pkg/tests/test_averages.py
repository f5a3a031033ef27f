"""Repeated averaging vectors, their exact sizes, and block combinations.

The frozen prefixes below were derived by hand from the recursion: a
successor-order vector uniformly averages a block of the order below whose
length is the value of the first index it covers, and a limit-order vector
follows the approximating order picked by the first value of the remaining
stream.
"""

from fractions import Fraction

import pytest

from schreier_lab.averages import (
    AmbiguousReconstructionError, ExplicitMethod, NibccWitness,
    RepeatedAverages, apply, cesaro_mean, cesaro_reweight, check_nibcc,
    pair_sum, repeated_avg, successor_pair_prefix, support_size)
from schreier_lab.budget import Budget, BudgetExceededError
from schreier_lab.ordinal import parse
from schreier_lab.schreier import FinSet, trace_member
from schreier_lab.streams import IndexStream
from schreier_lab.vectors import ProbVector, RatVec

ALL = IndexStream.all_indices()
HALF = Fraction(1, 2)


def uniform(values) -> dict:
    values = list(values)
    w = Fraction(1, len(values))
    return {v: w for v in values}


# -- materialized vectors ------------------------------------------------------


def test_order_zero_is_the_stream_basis():
    for M in (ALL, IndexStream.shift(2), IndexStream.cubes()):
        for n in (1, 2, 5):
            assert repeated_avg(parse("0"), M, n).entries == {M.element(n): 1}


def test_order_one_prefix_over_all():
    expected = [
        {1: Fraction(1)},
        uniform([2, 3]),
        uniform(range(4, 8)),
        uniform(range(8, 16)),
    ]
    for n, want in enumerate(expected, start=1):
        assert repeated_avg(parse("1"), ALL, n).entries == want


def test_order_one_along_other_streams():
    assert repeated_avg(parse("1"), IndexStream.shift(1), 1).entries == \
        uniform([2, 3])
    assert repeated_avg(parse("1"), IndexStream.evens(), 1).entries == \
        uniform([2, 4])
    assert repeated_avg(parse("1"), IndexStream.evens(), 2).entries == \
        uniform([6, 8, 10, 12, 14, 16])
    cubes = IndexStream.cubes()
    assert repeated_avg(parse("1"), cubes, 1).entries == {1: Fraction(1)}
    assert repeated_avg(parse("1"), cubes, 2).entries == \
        uniform([n ** 3 for n in range(2, 10)])


def test_order_two_prefix_over_all():
    assert repeated_avg(parse("2"), ALL, 1).entries == {1: Fraction(1)}
    second = repeated_avg(parse("2"), ALL, 2)
    want = {2: Fraction(1, 4), 3: Fraction(1, 4)}
    want.update({i: Fraction(1, 8) for i in range(4, 8)})
    assert second.entries == want
    # The third vector averages the eight order-one blocks covering 8..2047.
    third = repeated_avg(parse("2"), ALL, 3)
    assert len(third) == 2040
    assert third.support()[0] == 8 and third.support()[-1] == 2047
    assert third[8] == Fraction(1, 64)        # 1/8 of the 8-wide block
    assert third[1024] == Fraction(1, 8192)   # 1/8 of the 1024-wide block
    assert third.total() == 1


def test_order_two_over_shift():
    first = repeated_avg(parse("2"), IndexStream.shift(1), 1)
    want = {2: Fraction(1, 4), 3: Fraction(1, 4)}
    want.update({i: Fraction(1, 8) for i in range(4, 8)})
    assert first.entries == want


def test_limit_order_follows_the_stream_head():
    # Over All the limit recursion lands on order n at the n-th step.
    assert repeated_avg(parse("w"), ALL, 1).entries == {1: Fraction(1)}
    second = repeated_avg(parse("w"), ALL, 2)
    assert second == repeated_avg(parse("2"), ALL, 2)
    # Over cubes the first remaining value is 1, so order 1 is used.
    assert repeated_avg(parse("w"), IndexStream.cubes(), 1).entries == \
        {1: Fraction(1)}


def test_supports_are_consecutive_stream_blocks():
    for M in (ALL, IndexStream.shift(1), IndexStream.evens()):
        consumed = 0
        for n in range(1, 6):
            supp = repeated_avg(parse("1"), M, n).support()
            width = len(supp)
            assert supp == M.prefix(consumed + width)[consumed:]
            consumed += width


def test_supports_trace_into_the_family():
    cells = [("1", ALL, 5), ("1", IndexStream.cubes(), 3),
             ("2", ALL, 3), ("2", IndexStream.shift(1), 2), ("w", ALL, 2)]
    for xi_text, M, n_max in cells:
        xi = parse(xi_text)
        for n in range(1, n_max + 1):
            supp = FinSet(repeated_avg(xi, M, n).support())
            assert trace_member(xi, M, supp), (xi_text, M.name, n)


# -- exact sizes without materializing ---------------------------------------------


def test_support_sizes_match_materialization():
    for n, want in ((1, 1), (2, 6), (3, 2040)):
        assert support_size(parse("2"), ALL, n) == want
    for n in range(1, 8):
        assert support_size(parse("1"), ALL, n) == \
            len(repeated_avg(parse("1"), ALL, n))


def test_infeasible_size_reports_a_lower_bound():
    with pytest.raises(BudgetExceededError) as info:
        support_size(parse("2"), ALL, 4)
    assert info.value.needed_is_lower_bound
    assert info.value.needed >= 262143
    with pytest.raises(BudgetExceededError) as info:
        support_size(parse("1"), IndexStream.cubes(), 4)
    assert info.value.needed >= 1_030_301_000


def test_materialization_respects_the_work_budget():
    with pytest.raises(BudgetExceededError):
        repeated_avg(parse("1"), ALL, 8, budget=Budget(work=100))


# -- summability methods --------------------------------------------------------------


def test_repeated_averages_method():
    method = RepeatedAverages(parse("1"), ALL)
    assert method.stream == ALL
    assert method.vector(2) == repeated_avg(parse("1"), ALL, 2)
    method.validate_prefix(4)


def test_explicit_method_validation():
    good = ExplicitMethod([ProbVector.unit(1), ProbVector(uniform([2, 3]))],
                          ALL)
    good.validate_prefix(2)
    gap = ExplicitMethod([ProbVector.unit(1), ProbVector.unit(3)], ALL)
    with pytest.raises(ValueError):
        gap.validate_prefix(2)
    backwards = ExplicitMethod([ProbVector.unit(2), ProbVector.unit(1)], ALL)
    with pytest.raises(ValueError):
        backwards.validate_prefix(2)
    with pytest.raises(IndexError):
        good.vector(3)


def test_apply_averages_a_sequence():
    method = RepeatedAverages(parse("1"), ALL)
    xs = [RatVec.unit(10 + i) for i in range(1, 8)]
    out = apply(method, xs, 2)
    assert out.entries == {12: HALF, 13: HALF}
    with pytest.raises(ValueError):
        apply(method, xs[:2], 3)  # sequence shorter than the support


def test_pair_sum():
    a = RatVec({1: HALF, 2: Fraction(1, 3), 5: 1})
    assert pair_sum(a, FinSet.of(1, 5)) == Fraction(3, 2)
    assert pair_sum(a, FinSet.of(4)) == 0
    assert pair_sum(a, FinSet()) == 0


def test_cesaro_mean():
    xs = [RatVec.unit(1), RatVec.unit(2), RatVec.unit(3)]
    assert cesaro_mean(xs, 2).entries == {1: HALF, 2: HALF}
    with pytest.raises(ValueError):
        cesaro_mean(xs, 4)
    with pytest.raises(ValueError):
        cesaro_mean(xs, 0)


# -- block combination witnesses -------------------------------------------------------


def test_successor_pair_prefix_shapes():
    z, y = successor_pair_prefix(parse("0"), ALL, 3)
    assert [v.entries for v in z] == [
        {1: Fraction(1)}, uniform([2, 3]), uniform(range(4, 8))]
    assert [v.entries for v in y] == [{i: Fraction(1)} for i in range(1, 8)]


def test_check_nibcc_on_generated_pairs():
    z, y = successor_pair_prefix(parse("0"), ALL, 3)
    witness = check_nibcc(z, y)
    assert witness.breakpoints == (0, 1, 3, 7)
    assert witness.weights == (Fraction(1), HALF, HALF) + (Fraction(1, 4),) * 4
    assert witness.blocks == 3
    assert list(witness.block_range(2)) == [2, 3]

    z, y = successor_pair_prefix(parse("1"), ALL, 2)
    witness = check_nibcc(z, y)
    assert witness.breakpoints == (0, 1, 3)
    assert witness.weights == (Fraction(1), HALF, HALF)


def test_check_nibcc_rejects_increasing_weights():
    y = [RatVec.unit(1), RatVec.unit(2)]
    z = [RatVec({1: Fraction(1, 3), 2: Fraction(2, 3)})]
    assert check_nibcc(z, y) is None


def test_check_nibcc_needs_unique_weights():
    # Two copies of the same vector, each half the target: no single vector
    # works (its weight would be 2), and the two-vector block is
    # underdetermined, so the checker must refuse rather than pick weights.
    quarter = RatVec({1: Fraction(1, 4), 2: Fraction(1, 4)})
    z = [RatVec({1: HALF, 2: HALF})]
    with pytest.raises(AmbiguousReconstructionError):
        check_nibcc(z, [quarter, quarter])


def test_check_nibcc_repeated_vector_with_unit_weight():
    # A repeated vector is harmless when the first copy alone matches.
    u = RatVec({1: HALF, 2: HALF})
    witness = check_nibcc([u], [u, u])
    assert witness.breakpoints == (0, 1)
    assert witness.weights == (Fraction(1),)


def test_check_nibcc_overlapping_supports():
    y = [RatVec({1: HALF, 2: HALF}), RatVec({2: HALF, 3: HALF})]
    witness = check_nibcc([RatVec({1: Fraction(1, 4), 2: HALF,
                                   3: Fraction(1, 4)})], y)
    assert witness.breakpoints == (0, 2)
    assert witness.weights == (HALF, HALF)
    # Same supports, but the unique solution has increasing weights.
    bad = RatVec({1: Fraction(1, 8), 2: HALF, 3: Fraction(3, 8)})
    assert check_nibcc([bad], y) is None


def test_check_nibcc_rejects_non_combinations():
    z, y = successor_pair_prefix(parse("0"), ALL, 2)
    assert check_nibcc([z[0], z[1] + RatVec.unit(50)], y) is None


def test_witness_validation():
    with pytest.raises(ValueError):
        NibccWitness((1, 2), (Fraction(1),))          # must start at 0
    with pytest.raises(ValueError):
        NibccWitness((0, 2), (Fraction(1),))          # weight count off
    with pytest.raises(ValueError):
        NibccWitness((0, 2), (HALF, -HALF))           # not positive
    with pytest.raises(ValueError):
        NibccWitness((0, 2), (Fraction(1, 3), Fraction(2, 3)))  # increasing
    with pytest.raises(ValueError):
        NibccWitness((0, 1, 2), (HALF, HALF))         # block sums to 1/2


def cesaro_identity_holds(witness, z, y, n) -> bool:
    beta = cesaro_reweight(witness, n)
    lhs = RatVec()
    for vec in z[:n]:
        lhs = lhs + vec
    rhs = RatVec()
    for j, weight in beta.items():
        rhs = rhs + cesaro_mean(y, j).scale(weight)
    return lhs == rhs


@pytest.mark.parametrize("xi_text, count", [("0", 4), ("1", 2)])
def test_cesaro_reweighting_identity(xi_text, count):
    z, y = successor_pair_prefix(parse(xi_text), ALL, count)
    witness = check_nibcc(z, y)
    for n in range(1, count + 1):
        beta = cesaro_reweight(witness, n)
        assert all(v >= 0 for v in beta.values())
        assert sum(beta.values()) == n
        assert max(beta) == witness.breakpoints[n]
        assert cesaro_identity_holds(witness, z, y, n)


def test_cesaro_reweight_bounds():
    witness = NibccWitness((0, 1), (Fraction(1),))
    with pytest.raises(ValueError):
        cesaro_reweight(witness, 2)
    with pytest.raises(ValueError):
        cesaro_reweight(witness, 0)
