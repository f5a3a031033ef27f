"""Window oscillation statistics, threshold families, and the ratio formula.

Frozen window values were computed by hand from the order-one norm: the best
admissible set is a final segment of the support no longer than its least
element.
"""

from fractions import Fraction

import pytest

from schreier_lab.budget import BudgetExceededError
from schreier_lab.ordinal import parse
from schreier_lab.quantities import (
    CanonicalBasis, DeltaFamily, ExplicitSequence, HorizonEstimate,
    Subsequence, WeightedBasis, ca_window, cca_window, cca_xi_tilde,
    cca_xi_tilde_sup, cca_xi_window, compose_refinements, f_delta,
    large_check, prop_formula, sm_constant)
from schreier_lab.schreier import FinSet, enumerate_family
from schreier_lab.spaces import (
    CertificationRefusedError, Functional, NormSpec,
    coordinate_sum_functional)
from schreier_lab.streams import IndexStream
from schreier_lab.vectors import RatVec

S1 = NormSpec.schreier(parse("1"))
STAR1 = NormSpec.star(parse("1"))
ALL = IndexStream.all_indices()
HALF = Fraction(1, 2)


# -- sequences ---------------------------------------------------------------------


def test_sequence_specs():
    basis = CanonicalBasis(S1)
    assert basis.element(3) == RatVec.unit(3)
    assert basis.describe() == "basis"
    with pytest.raises(ValueError):
        basis.element(0)

    weighted = WeightedBasis(S1, [Fraction(2), Fraction(3)], tail=HALF)
    assert weighted.element(2) == RatVec({2: 3})
    assert weighted.element(9) == RatVec({9: HALF})

    explicit = ExplicitSequence(S1, [RatVec.unit(5)])
    assert explicit.element(1) == RatVec.unit(5)
    with pytest.raises(ValueError):
        explicit.element(2)
    assert explicit.describe() == "explicit[1]"

    sub = Subsequence(basis, IndexStream.evens())
    assert sub.element(2) == RatVec.unit(4)
    assert sub.describe() == "basis[evens]"


# -- window statistics -------------------------------------------------------------


def test_ca_window_on_the_basis():
    basis = CanonicalBasis(S1)
    assert ca_window(basis, 2, 10) == 2     # e_k - e_l carries a full pair
    assert ca_window(basis, 1, 2) == 1      # only e_1 - e_2, and 1 is special
    assert ca_window(CanonicalBasis(STAR1), 1, 4) == 1
    assert ca_window(basis, 5, 5) == 0      # no pairs in a singleton window


def test_ca_window_constant_sequence_is_flat():
    xs = ExplicitSequence(S1, [RatVec.unit(3)] * 6)
    assert ca_window(xs, 1, 6) == 0


def test_window_validation():
    basis = CanonicalBasis(S1)
    for n0, N in ((0, 3), (4, 3), (-1, -1)):
        with pytest.raises(ValueError):
            ca_window(basis, n0, N)
        with pytest.raises(ValueError):
            cca_window(basis, n0, N)
        with pytest.raises(ValueError):
            cca_xi_window(parse("1"), ALL, basis, n0, N)


def test_cca_window_frozen_values():
    basis = CanonicalBasis(S1)
    # Means of the basis: u_1 - u_4 puts 3/4 on index 1, which dominates.
    assert cca_window(basis, 1, 4) == Fraction(3, 4)
    assert cca_window(basis, 2, 4) == HALF


def test_cca_xi_at_order_zero_is_plain_cca():
    basis = CanonicalBasis(S1)
    for n0, N in ((1, 5), (2, 6)):
        assert cca_xi_window(parse("0"), ALL, basis, n0, N) == \
            cca_window(basis, n0, N)


def test_cca_xi_window_frozen_value():
    # Averaging the basis at order one reproduces the averaging vectors, so
    # the first two means differ by half of (zeta_1 - zeta_2).
    assert cca_xi_window(parse("1"), ALL, CanonicalBasis(S1), 1, 2) == HALF


def test_cca_xi_surfaces_infeasible_supports():
    with pytest.raises(BudgetExceededError):
        cca_xi_window(parse("1"), IndexStream.cubes(), CanonicalBasis(S1), 1, 4)


# -- catalog estimates --------------------------------------------------------------


def test_horizon_estimate_validation_and_json():
    est = HorizonEstimate(HALF, "upper_bound", 7, witness="2,3")
    assert est.to_json() == {"value": "1/2", "approx": 0.5,
                             "direction": "upper_bound", "horizon": "7",
                             "witness": "2,3"}
    with pytest.raises(ValueError):
        HorizonEstimate(HALF, "sideways", 7)


def test_cca_xi_tilde_minimizes_over_the_catalog():
    basis = CanonicalBasis(S1)
    catalog = [ALL, IndexStream.evens()]
    separate = [cca_xi_window(parse("1"), M, basis, 1, 2) for M in catalog]
    est = cca_xi_tilde(parse("1"), basis, catalog, 1, 2)
    assert est.value == min(separate)
    assert est.direction == "upper_bound"
    assert est.witness in ("all", "evens")


def test_cca_xi_tilde_exact_at_zero():
    constant = ExplicitSequence(S1, [RatVec.unit(1)] * 16)
    est = cca_xi_tilde(parse("1"), constant, [ALL, IndexStream.evens()], 1, 2)
    assert est.value == 0
    assert est.direction == "exact"
    assert est.witness == "all"


def test_cca_xi_tilde_needs_a_catalog():
    with pytest.raises(ValueError):
        cca_xi_tilde(parse("1"), CanonicalBasis(S1), [], 1, 2)


def test_compose_refinements():
    refine = compose_refinements([ALL, IndexStream.evens()])
    refined = refine(IndexStream.evens())
    assert [M.prefix(3) for M in refined] == [(2, 4, 6), (4, 8, 12)]


def test_cca_xi_tilde_sup_frozen():
    basis = CanonicalBasis(S1)
    est = cca_xi_tilde_sup(parse("1"), basis, [ALL, IndexStream.evens()],
                           None, 1, 2)
    assert est.value == HALF
    assert est.direction == "unverified"
    assert est.witness == "all"


def test_cca_xi_tilde_sup_rejects_empty_refinements():
    with pytest.raises(ValueError):
        cca_xi_tilde_sup(parse("1"), CanonicalBasis(S1), [ALL],
                         lambda M: [], 1, 2)


# -- smallest admissible combinations ---------------------------------------------


def test_sm_constant_on_the_basis():
    est = sm_constant(parse("1"), CanonicalBasis(S1), 6)
    assert est.value == 1
    assert est.direction == "upper_bound"
    assert est.witness == "1;1"


def test_sm_constant_sees_cancellation_in_the_star_norm():
    est = sm_constant(parse("1"), CanonicalBasis(STAR1), 6)
    assert est.value == HALF
    assert est.witness == "2,3;1,-1"


def test_sm_constant_respects_the_coefficient_budget():
    # With only the uniform positive pattern the star cancellation is gone.
    est = sm_constant(parse("1"), CanonicalBasis(STAR1), 6, coeff_budget=1)
    assert est.value == 1


# -- threshold families --------------------------------------------------------------


def test_f_delta_hit_sets():
    functionals = [coordinate_sum_functional(FinSet.of(2, 3), S1),
                   coordinate_sum_functional(FinSet.of(4), S1)]
    family = f_delta(functionals, CanonicalBasis(S1), Fraction(1), 6)
    assert family.hit_sets == (FinSet.of(2, 3), FinSet.of(4))
    assert family.labels == ("sum[2,3]", "sum[4]")
    assert family.contains(FinSet.of(2))
    assert family.contains(FinSet())
    assert not family.contains(FinSet.of(2, 4))
    assert family.members() == [FinSet(), FinSet.of(2), FinSet.of(2, 3),
                                FinSet.of(3), FinSet.of(4)]
    assert family.to_json()["hit_sets"] == ["2,3", "4"]


def test_f_delta_threshold_scaling():
    functionals = [coordinate_sum_functional(FinSet.of(2, 3), S1)]
    xs = WeightedBasis(S1, [], tail=HALF)
    at_half = f_delta(functionals, xs, HALF, 5)
    assert at_half.hit_sets == (FinSet.of(2, 3),)
    above = f_delta(functionals, xs, Fraction(2, 3), 5)
    assert above.hit_sets == (FinSet(),)
    assert above.contains(FinSet())
    assert not above.contains(FinSet.of(2))


def test_f_delta_refuses_uncertified_functionals():
    bare = Functional(RatVec({2: Fraction(1)}), None, label="raw")
    with pytest.raises(CertificationRefusedError):
        f_delta([bare], CanonicalBasis(S1), Fraction(1), 4)


# -- largeness checks ----------------------------------------------------------------


def all_sum_functionals(xi, spec, N):
    return [coordinate_sum_functional(F, spec)
            for F in enumerate_family(xi, N) if F]


def test_large_check_basis_is_large_at_one():
    functionals = all_sum_functionals(parse("1"), S1, 6)
    result = large_check(parse("1"), Fraction(1), CanonicalBasis(S1), ALL,
                         functionals, 6)
    assert result.ok and result.certificate is None
    assert result.checked == len(list(enumerate_family(parse("1"), 6)))
    assert result.to_json()["ok"] is True


def test_large_check_fails_above_one_with_lex_first_certificate():
    functionals = all_sum_functionals(parse("1"), S1, 6)
    result = large_check(parse("1"), Fraction(11, 10), CanonicalBasis(S1),
                         ALL, functionals, 6)
    assert not result.ok
    assert result.certificate == FinSet.of(1)
    assert result.checked == 2      # the empty set passes, then {1} fails


def test_large_check_follows_the_stream():
    functionals = [coordinate_sum_functional(FinSet.of(2), S1),
                   coordinate_sum_functional(FinSet.of(4), S1),
                   coordinate_sum_functional(FinSet.of(2, 4), S1)]
    result = large_check(parse("1"), Fraction(1), CanonicalBasis(S1),
                         IndexStream.evens(), functionals, 5)
    # Carried sets live on {2, 4}; all of them are hit sets here.
    assert result.ok
    assert result.stream == "evens"


def test_large_check_recenters_by_the_weak_limit():
    drift = RatVec.unit(1)
    xs = ExplicitSequence(S1, [drift + RatVec.unit(n + 1)
                               for n in range(1, 5)])
    sets = [FinSet.of(1), FinSet.of(2), FinSet.of(3), FinSet.of(2, 3)]
    functionals = [coordinate_sum_functional(F, S1) for F in sets]
    uncentered = large_check(parse("1"), Fraction(1), xs, ALL, functionals, 4)
    assert uncentered.ok      # sum[1] sees the drift on every vector
    centered = large_check(parse("1"), Fraction(1), xs, ALL, functionals, 4,
                           weak_limit=drift)
    assert not centered.ok
    assert centered.certificate == FinSet.of(2, 3)


# -- the two-term ratio formula ----------------------------------------------------


def test_prop_formula_golden_values():
    values = prop_formula(10, HALF)
    assert values.main == Fraction(945, 1111)
    assert values.vanishing == Fraction(9, 1111)
    json = values.to_json()
    assert json["main"] == "945/1111" and json["vanishing"] == "9/1111"


def test_prop_formula_degenerate_and_invalid():
    assert prop_formula(1, HALF).main == 0
    assert prop_formula(1, HALF).vanishing == 0
    with pytest.raises(ValueError):
        prop_formula(0, HALF)


def test_prop_formula_is_linear_in_the_level():
    for l in (2, 7, 30):
        double = prop_formula(l, Fraction(4, 5))
        single = prop_formula(l, Fraction(2, 5))
        assert double.main == 2 * single.main
        assert double.vanishing == single.vanishing


def test_prop_formula_closed_form():
    # Independent reduction of the two-term expression to one ratio.
    for l in range(2, 60):
        values = prop_formula(l, Fraction(3, 7))
        expect = Fraction(l * (l - 1) * (2 * l + 1),
                          (l * l + 1) * (l + 1))
        assert values.main == Fraction(3, 7) * expect
        assert values.vanishing == Fraction(l - 1, (l + 1) * (l * l + 1))


def test_prop_formula_envelopes():
    previous = None
    for l in range(2, 400):
        values = prop_formula(l, HALF)
        assert values.vanishing <= Fraction(1, l)
        assert 2 * HALF - values.main <= Fraction(5, l) * HALF
        if previous is not None:
            assert values.main >= previous
        previous = values.main
