"""Desk-scale verification bundles for the worked norm examples and the
two-term ratio formula.

Each bundle returns a :class:`~schreier_lab.reports.Report` whose checks are
exact: the spreading constant 1 for the base norm, the constant 1/2 with its
explicit witness for the renorming, largeness of the basis just below level
1, certified dual evaluations on seeded samples, the unit cap on pairwise
distances of running means, and the convergence envelopes of the ratio
formula.  All sampling is seeded, so two runs emit identical JSON.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from itertools import product

from .budget import Budget, BudgetExceededError, get_budget
from .ordinal import FundamentalRule, Ordinal, default_fundamental_seq
from .quantities import CanonicalBasis, large_check, prop_formula, sm_constant
from .reports import Report
from .schreier import FinSet, enumerate_family
from .spaces import NormSpec, coordinate_sum_functional, norm
from .streams import IndexStream
from .vectors import RatVec, format_fraction

__all__ = [
    "verify_example_schreier",
    "verify_example_star",
    "verify_prop_formula",
]


def _sum_functionals(order: Ordinal, spec: NormSpec, N: int, *,
                     fs: FundamentalRule, budget: Budget):
    return [coordinate_sum_functional(F, spec)
            for F in enumerate_family(order, N, fs=fs, budget=budget) if F]


def _sample_vector(rng: random.Random, N: int) -> RatVec:
    size = rng.randint(1, min(6, N))
    support = rng.sample(range(1, N + 1), size)
    entries = {}
    for index in support:
        numerator = rng.choice([n for n in range(-9, 10) if n != 0])
        entries[index] = Fraction(numerator, rng.randint(1, 9))
    return RatVec(entries)


def _dual_certificate_trials(spec: NormSpec, order: Ordinal, N: int, *,
                             trials: int, seed: int,
                             fs: FundamentalRule, budget: Budget):
    """Seeded spot check that certified sums never beat the norm.

    The guarded evaluation re-derives the bound internally; the explicit
    comparison here keeps the check meaningful even if guarding is off.
    """
    rng = random.Random(seed)
    pool = [F for F in enumerate_family(order, N, fs=fs, budget=budget) if F]
    worst = Fraction(0)
    for _ in range(trials):
        F = rng.choice(pool)
        x = _sample_vector(rng, N)
        functional = coordinate_sum_functional(F, spec)
        value = functional.evaluate(x, check=True, budget=budget)
        bound = norm(spec, x, budget=budget).value
        if abs(value) > bound:
            return False, f"|{value}| > {bound} at F={{{F}}}"
        if bound > 0 and abs(value) / bound > worst:
            worst = abs(value) / bound
    return True, f"{trials} certified evaluations, max |f(x)|/norm = {worst}"


def verify_example_schreier(xi: Ordinal, N: int, coeff_budget: int = 3, *,
                            c_override: Fraction | None = None,
                            fs: FundamentalRule = default_fundamental_seq,
                            budget: Budget | None = None) -> Report:
    """Exact checks for the canonical basis one order above ``xi``.

    The basis is normalized with spreading constant exactly 1, is large just
    below level 1 along the identity stream, and its admissible coordinate
    sums act as certified dual functionals.
    """
    started = time.perf_counter()
    budget = get_budget(budget)
    order = xi.successor()
    spec = NormSpec.schreier(order, fs=fs)
    basis = CanonicalBasis(spec)
    c = Fraction(1) - Fraction(1, N) if c_override is None else Fraction(c_override)
    report = Report(f"verify example-schreier --xi {xi} --N {N}",
                    {"xi": str(xi), "space": str(spec), "N": N,
                     "coeff_budget": coeff_budget, "c": format_fraction(c),
                     "seed": 0})

    sm = sm_constant(order, basis, N, coeff_budget, fs=fs, budget=budget)
    report.check("spreading-constant-is-one", sm.value == 1,
                 f"min ratio {sm.to_json()['value']} at {sm.witness}")
    report.result("sm", sm.to_json())

    functionals = _sum_functionals(order, spec, N, fs=fs, budget=budget)
    large = large_check(order, c, basis, IndexStream.all_indices(),
                        functionals, N, fs=fs, budget=budget)
    report.check("basis-large-below-one", large.ok,
                 f"{large.checked} admissible sets at level {format_fraction(c)}"
                 + ("" if large.ok else f"; first failure {{{large.certificate}}}"))
    report.result("large", large.to_json())

    ok, detail = _dual_certificate_trials(spec, order, N, trials=30, seed=0,
                                          fs=fs, budget=budget)
    report.check("dual-certificates-hold", ok, detail)

    report.wall_seconds = time.perf_counter() - started
    return report


def verify_example_star(xi: Ordinal, N: int, coeff_budget: int = 3, *,
                        fs: FundamentalRule = default_fundamental_seq,
                        budget: Budget | None = None) -> Report:
    """Exact checks for the basis under the positive/negative renorming.

    The sign split halves the spreading constant, with the first admissible
    pair and alternating signs as the extremal witness, while largeness
    survives and the running means stay within unit distance of each other.
    """
    started = time.perf_counter()
    budget = get_budget(budget)
    order = xi.successor()
    spec = NormSpec.star(order, fs=fs)
    basis = CanonicalBasis(spec)
    c = Fraction(1) - Fraction(1, N)
    report = Report(f"verify example-star --xi {xi} --N {N}",
                    {"xi": str(xi), "space": str(spec), "N": N,
                     "coeff_budget": coeff_budget, "c": format_fraction(c),
                     "seed": 0})

    difference = RatVec.unit(2) - RatVec.unit(3)
    diff_norm = norm(spec, difference, budget=budget).value
    report.check("alternating-pair-has-norm-one", diff_norm == 1,
                 f"norm {format_fraction(diff_norm)}")

    half = Fraction(1, 2)
    violations = 0
    tested = 0
    for F in enumerate_family(order, N, fs=fs, budget=budget):
        if not F or len(F) > coeff_budget:
            continue
        for signs in product((Fraction(1), Fraction(-1)), repeat=len(F)):
            combined = RatVec()
            for n, sign in zip(F, signs):
                combined = combined + RatVec.unit(n).scale(sign)
            tested += 1
            if norm(spec, combined, budget=budget).value < half * len(F):
                violations += 1
    report.check("half-lower-bound-holds", violations == 0,
                 f"{tested} sign patterns, {violations} below half mass")

    sm = sm_constant(order, basis, N, coeff_budget, fs=fs, budget=budget)
    expected_witness = "2,3;1,-1"
    report.check("spreading-constant-is-half",
                 sm.value == half and sm.witness == expected_witness,
                 f"min ratio {sm.to_json()['value']} at {sm.witness}")
    report.result("sm", sm.to_json())

    functionals = _sum_functionals(order, spec, N, fs=fs, budget=budget)
    large = large_check(order, c, basis, IndexStream.all_indices(),
                        functionals, N, fs=fs, budget=budget)
    report.check("basis-large-below-one", large.ok,
                 f"{large.checked} admissible sets at level {format_fraction(c)}"
                 + ("" if large.ok else f"; first failure {{{large.certificate}}}"))
    report.result("large", large.to_json())

    # Distances of running means: exact norms when the search is affordable,
    # otherwise the l1 mass of each sign part, which already caps the max.
    running = RatVec()
    means = {}
    for n in range(1, N + 1):
        running = running + RatVec.unit(n)
        means[n] = running.scale(Fraction(1, n))
    cap_violations = 0
    largest = Fraction(0)
    routes = {"exact": 0, "l1-certificate": 0}
    for k in range(1, N + 1):
        for l in range(k + 1, N + 1):
            diff = means[k] - means[l]
            try:
                value = norm(spec, diff, budget=budget).value
                routes["exact"] += 1
            except BudgetExceededError:
                value = max(diff.positive_part().l1(), diff.negative_part().l1())
                routes["l1-certificate"] += 1
            if value > 1:
                cap_violations += 1
            elif value > largest:
                largest = value
    report.check("mean-distances-capped-at-one", cap_violations == 0,
                 f"max distance {format_fraction(largest)} "
                 f"({routes['exact']} exact, {routes['l1-certificate']} certified)")
    report.result("mean_distance_routes", routes)

    report.wall_seconds = time.perf_counter() - started
    return report


def verify_prop_formula(l_max: int, c: Fraction, *,
                        budget: Budget | None = None) -> Report:
    """Tabulate the ratio formula and check its approach to ``2c``.

    The main term must climb once past the degenerate first row and stay
    within ``5/l`` of the limit in relative terms; the remainder must fall
    and stay below ``1/l``.
    """
    started = time.perf_counter()
    if l_max < 1:
        raise ValueError("need l_max >= 1")
    c = Fraction(c)
    if c <= 0:
        raise ValueError("the level must be positive")
    report = Report(f"verify prop-formula --l-max {l_max} --c {format_fraction(c)}",
                    {"l_max": l_max, "c": format_fraction(c),
                     "target": format_fraction(2 * c)})

    rows = [prop_formula(l, c) for l in range(1, l_max + 1)]

    envelope_bad = [r.l for r in rows if abs(r.main / c - 2) > Fraction(5, r.l)]
    report.check("main-within-five-over-l", not envelope_bad,
                 "relative gap |main/c - 2| <= 5/l on every row"
                 if not envelope_bad else f"violated at l = {envelope_bad[:5]}")

    vanishing_bad = [r.l for r in rows if r.vanishing > Fraction(1, r.l)]
    report.check("vanishing-below-one-over-l", not vanishing_bad,
                 "vanishing <= 1/l on every row"
                 if not vanishing_bad else f"violated at l = {vanishing_bad[:5]}")

    main_drops = [rows[i].l for i in range(2, len(rows))
                  if rows[i].main < rows[i - 1].main]
    report.check("main-climbs-from-two", not main_drops,
                 "main is non-decreasing for l >= 2"
                 if not main_drops else f"drops at l = {main_drops[:5]}")

    vanishing_rises = [rows[i].l for i in range(2, len(rows))
                       if rows[i].vanishing > rows[i - 1].vanishing]
    report.check("vanishing-falls-from-two", not vanishing_rises,
                 "vanishing is non-increasing for l >= 2"
                 if not vanishing_rises else f"rises at l = {vanishing_rises[:5]}")

    stride = max(1, l_max // 10)
    shown = [r for r in rows if r.l == 1 or r.l == l_max or r.l % stride == 0]
    report.result("table", [r.to_json() for r in shown])
    report.result("final", rows[-1].to_json())

    report.wall_seconds = time.perf_counter() - started
    return report
