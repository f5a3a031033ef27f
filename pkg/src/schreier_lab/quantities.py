"""Finite-horizon estimates of asymptotic oscillation and spreading quantities.

Everything here scans a stated finite window or horizon and says so in the
result.  Quantities defined through an infimum or supremum over all index
streams cannot be decided by a finite computation, so those estimators
return a :class:`HorizonEstimate` whose ``direction`` tag records how the
computed value relates to the limit quantity (``exact``, ``upper_bound``,
``lower_bound``, or ``unverified``).  Plain window statistics return the
exact rational maximum with no pretense of being the limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Callable, Sequence

from .averages import repeated_avg
from .budget import Budget, get_budget
from .ordinal import FundamentalRule, Ordinal, default_fundamental_seq
from .schreier import FinSet, enumerate_family
from .spaces import (CertificationRefusedError, Functional, NormSpec, norm)
from .streams import IndexStream
from .vectors import RatVec, format_fraction

__all__ = [
    "DIRECTIONS",
    "HorizonEstimate",
    "SeqSpec",
    "CanonicalBasis",
    "Subsequence",
    "WeightedBasis",
    "ExplicitSequence",
    "ca_window",
    "cca_window",
    "cca_xi_window",
    "cca_xi_tilde",
    "cca_xi_tilde_sup",
    "compose_refinements",
    "sm_constant",
    "DeltaFamily",
    "f_delta",
    "LargeCheckResult",
    "large_check",
    "PropFormulaValues",
    "prop_formula",
]

DIRECTIONS = ("exact", "upper_bound", "lower_bound", "unverified")


def _format_value(value) -> str:
    if isinstance(value, Fraction):
        return format_fraction(value)
    return repr(float(value))


@dataclass(frozen=True)
class HorizonEstimate:
    """A value computed over a finite horizon, tagged with its direction.

    ``direction`` says how ``value`` relates to the limit quantity the
    computation stands in for: equal to it, a one-sided bound for it, or
    unverified when neither side is certified.
    """

    value: object                 # Fraction, or float when irrational
    direction: str
    horizon: object
    witness: object = None

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise ValueError(f"unknown direction {self.direction!r}")

    def to_json(self) -> dict:
        return {
            "value": _format_value(self.value),
            "approx": float(self.value),
            "direction": self.direction,
            "horizon": str(self.horizon),
            "witness": "" if self.witness is None else str(self.witness),
        }


# -- vector sequences --------------------------------------------------------------


class SeqSpec:
    """A 1-indexed sequence of vectors living in a normed ambient."""

    ambient: NormSpec

    def element(self, n: int) -> RatVec:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


class CanonicalBasis(SeqSpec):
    def __init__(self, ambient: NormSpec):
        self.ambient = ambient

    def element(self, n: int) -> RatVec:
        if n < 1:
            raise ValueError("sequences are 1-indexed")
        return RatVec.unit(n)

    def describe(self) -> str:
        return "basis"


class Subsequence(SeqSpec):
    """``base`` re-indexed along a stream: element(n) = base.element(m_n)."""

    def __init__(self, base: SeqSpec, along: IndexStream):
        self.base = base
        self.along = along
        self.ambient = base.ambient

    def element(self, n: int) -> RatVec:
        return self.base.element(self.along.element(n))

    def describe(self) -> str:
        return f"{self.base.describe()}[{self.along.name}]"


class WeightedBasis(SeqSpec):
    """``w_n e_n`` with explicitly listed leading weights and a constant tail."""

    def __init__(self, ambient: NormSpec, weights: Sequence[Fraction],
                 tail: Fraction = Fraction(1)):
        self.ambient = ambient
        self.weights = tuple(Fraction(w) for w in weights)
        self.tail = Fraction(tail)

    def element(self, n: int) -> RatVec:
        if n < 1:
            raise ValueError("sequences are 1-indexed")
        weight = self.weights[n - 1] if n <= len(self.weights) else self.tail
        return RatVec.unit(n).scale(weight)

    def describe(self) -> str:
        return f"weighted-basis[{len(self.weights)} weights, tail {self.tail}]"


class ExplicitSequence(SeqSpec):
    def __init__(self, ambient: NormSpec, vectors: Sequence[RatVec]):
        self.ambient = ambient
        self.vectors = tuple(RatVec(v.entries) for v in vectors)

    def element(self, n: int) -> RatVec:
        if not 1 <= n <= len(self.vectors):
            raise ValueError(f"sequence has {len(self.vectors)} vectors, "
                             f"asked for {n}")
        return self.vectors[n - 1]

    def describe(self) -> str:
        return f"explicit[{len(self.vectors)}]"


# -- window oscillation statistics ---------------------------------------------------


def _norm_value(ambient: NormSpec, x: RatVec, budget: Budget):
    result = norm(ambient, x, budget=budget)
    return result.value if result.value is not None else result.approx


def _max_pairwise(vectors: dict, n0: int, N: int, ambient: NormSpec,
                  budget: Budget):
    best = Fraction(0)
    for k in range(n0, N + 1):
        for l in range(k + 1, N + 1):
            value = _norm_value(ambient, vectors[k] - vectors[l], budget)
            if value > best:
                best = value
    return best


def _check_window(n0: int, N: int) -> None:
    if not 1 <= n0 <= N:
        raise ValueError(f"window needs 1 <= n0 <= N, got [{n0}, {N}]")


def ca_window(xs: SeqSpec, n0: int, N: int, *,
              budget: Budget | None = None):
    """Largest pairwise distance over the window, exactly.

    A window maximum truncates the tail supremum at ``N`` and starts it at
    ``n0``, so by itself it bounds the limit quantity from neither side; it
    is non-decreasing in ``N`` and non-increasing in ``n0``.
    """
    _check_window(n0, N)
    budget = get_budget(budget)
    vectors = {n: xs.element(n) for n in range(n0, N + 1)}
    return _max_pairwise(vectors, n0, N, xs.ambient, budget)


def _cesaro_prefix(xs, N: int) -> dict:
    """Running means 1..N of anything with a 1-indexed element method."""
    means = {}
    running = RatVec()
    for n in range(1, N + 1):
        running = running + xs.element(n)
        means[n] = running.scale(Fraction(1, n))
    return means


def cca_window(xs: SeqSpec, n0: int, N: int, *,
               budget: Budget | None = None):
    """Largest pairwise distance of the running means over the window."""
    _check_window(n0, N)
    budget = get_budget(budget)
    means = _cesaro_prefix(xs, N)
    return _max_pairwise(means, n0, N, xs.ambient, budget)


class _Transformed:
    """The sequence pushed through repeated averages of a fixed order."""

    def __init__(self, xi: Ordinal, M: IndexStream, xs: SeqSpec,
                 fs: FundamentalRule, budget: Budget):
        self.xi = xi
        self.M = M
        self.xs = xs
        self.fs = fs
        self.budget = budget

    def element(self, n: int) -> RatVec:
        weights = repeated_avg(self.xi, self.M, n, fs=self.fs,
                               budget=self.budget)
        out = RatVec()
        for index, weight in weights.items():
            out = out + self.xs.element(index).scale(weight)
        return out


def cca_xi_window(xi: Ordinal, M: IndexStream, xs: SeqSpec, n0: int, N: int, *,
                  fs: FundamentalRule = default_fundamental_seq,
                  budget: Budget | None = None):
    """Mean oscillation after pushing the sequence through repeated averages.

    Order zero along the identity stream leaves the sequence unchanged, so
    this collapses to :func:`cca_window` there.  Infeasibly large averaging
    supports surface as budget errors carrying the required size.
    """
    _check_window(n0, N)
    budget = get_budget(budget)
    transformed = _Transformed(xi, M, xs, fs, budget)
    means = _cesaro_prefix(transformed, N)
    return _max_pairwise(means, n0, N, xs.ambient, budget)


def cca_xi_tilde(xi: Ordinal, xs: SeqSpec, catalog: Sequence[IndexStream],
                 n0: int, N: int, *,
                 fs: FundamentalRule = default_fundamental_seq,
                 budget: Budget | None = None) -> HorizonEstimate:
    """Catalog minimum of the averaged mean oscillation.

    The limit quantity takes an infimum over all streams; a minimum over a
    finite catalog can only overshoot it, except at zero where the infimum
    is pinned.
    """
    catalog = list(catalog)
    if not catalog:
        raise ValueError("the stream catalog must be nonempty")
    best = None
    best_stream = None
    for M in catalog:
        value = cca_xi_window(xi, M, xs, n0, N, fs=fs, budget=budget)
        if best is None or value < best:
            best, best_stream = value, M
    direction = "exact" if best == 0 else "upper_bound"
    return HorizonEstimate(best, direction, f"[{n0},{N}]x{len(catalog)}",
                           best_stream.name)


def compose_refinements(catalog: Sequence[IndexStream]
                        ) -> Callable[[IndexStream], list[IndexStream]]:
    """The default refinement rule: compose the base stream with the catalog."""
    fixed = list(catalog)

    def refine(M: IndexStream) -> list[IndexStream]:
        return [M.compose(inner) for inner in fixed]

    return refine


def cca_xi_tilde_sup(xi: Ordinal, xs: SeqSpec, catalog: Sequence[IndexStream],
                     subcatalog_rule: Callable[[IndexStream],
                                               Sequence[IndexStream]] | None,
                     n0: int, N: int, *,
                     fs: FundamentalRule = default_fundamental_seq,
                     budget: Budget | None = None) -> HorizonEstimate:
    """Catalog maximum over base streams of the refined minimum.

    Finite catalogs bound the inner infimum from above and the outer
    supremum from below, so the two errors point in opposite directions and
    the result is tagged unverified.
    """
    catalog = list(catalog)
    if not catalog:
        raise ValueError("the stream catalog must be nonempty")
    if subcatalog_rule is None:
        subcatalog_rule = compose_refinements(catalog)
    best = None
    best_stream = None
    for M in catalog:
        refinements = list(subcatalog_rule(M))
        if not refinements:
            raise ValueError(f"refinement rule produced nothing for {M.name}")
        inner = min(cca_xi_window(xi, refined, xs, n0, N, fs=fs, budget=budget)
                    for refined in refinements)
        if best is None or inner > best:
            best, best_stream = inner, M
    return HorizonEstimate(best, "unverified", f"[{n0},{N}]x{len(catalog)}",
                           best_stream.name)


# -- smallest normalized admissible combination ----------------------------------------


def sm_constant(xi: Ordinal, xs: SeqSpec, N: int, coeff_budget: int = 4, *,
                fs: FundamentalRule = default_fundamental_seq,
                budget: Budget | None = None) -> HorizonEstimate:
    """Smallest ``norm(sum a_n x_n) / sum |a_n|`` over admissible supports.

    Scans every nonempty admissible subset of ``1..N``; coefficient patterns
    are all sign choices up to ``coeff_budget`` coordinates and the uniform
    positive pattern above it.  A finite scan of an infimum over all real
    coefficients can only overshoot, hence the upper-bound tag.
    """
    budget = get_budget(budget)
    best = None
    best_witness = None
    for F in enumerate_family(xi, N, fs=fs, budget=budget):
        if not F:
            continue
        elements = [xs.element(n) for n in F]
        if len(F) <= coeff_budget:
            patterns = product((Fraction(1), Fraction(-1)), repeat=len(F))
        else:
            patterns = [tuple(Fraction(1) for _ in F)]
        for signs in patterns:
            combined = RatVec()
            for vec, sign in zip(elements, signs):
                combined = combined + vec.scale(sign)
            ratio = _norm_value(xs.ambient, combined, budget) / len(F)
            if best is None or ratio < best:
                best = ratio
                best_witness = (F, signs)
    if best is None:
        raise ValueError("no nonempty admissible sets in the horizon")
    F, signs = best_witness
    witness = f"{F};{','.join(format_fraction(s) for s in signs)}"
    return HorizonEstimate(best, "upper_bound", N, witness)


# -- threshold families and largeness --------------------------------------------------


@dataclass(frozen=True)
class DeltaFamily:
    """Sets on which some listed functional clears the threshold everywhere.

    ``hit_sets[i]`` collects the indices ``n`` in ``1..horizon`` where the
    i-th functional is at least ``delta`` on the n-th vector; the family
    consists of all subsets of the hit sets, so it is hereditary by
    construction.
    """

    hit_sets: tuple[FinSet, ...]
    delta: Fraction
    horizon: int
    labels: tuple[str, ...] = ()

    @cached_property
    def _exact_hits(self) -> frozenset:
        return frozenset(tuple(h) for h in self.hit_sets)

    def contains(self, F: FinSet) -> bool:
        if tuple(F) in self._exact_hits:
            return True
        return any(all(n in hits for n in F) for hits in self.hit_sets)

    def members(self) -> list[FinSet]:
        """Every set in the family, deduplicated, in lexicographic order."""
        seen = set()
        for hits in self.hit_sets:
            values = tuple(hits)
            for mask in range(1 << len(values)):
                subset = tuple(v for i, v in enumerate(values) if mask >> i & 1)
                seen.add(subset)
        return [FinSet(s) for s in sorted(seen)]

    def to_json(self) -> dict:
        return {
            "hit_sets": [str(h) for h in self.hit_sets],
            "delta": format_fraction(self.delta),
            "horizon": self.horizon,
            "labels": list(self.labels),
        }


def f_delta(functionals: Sequence[Functional], xs: SeqSpec, delta: Fraction,
            N: int) -> DeltaFamily:
    """The sets in ``1..N`` that one functional pushes past ``delta``.

    Every functional must carry a certification; thresholding against
    arbitrary maps says nothing about the dual ball.
    """
    delta = Fraction(delta)
    uncertified = [f.label or "?" for f in functionals if f.certified_for is None]
    if uncertified:
        raise CertificationRefusedError(
            f"uncertified functionals not allowed here: {', '.join(uncertified)}")
    elements = [xs.element(n) for n in range(1, N + 1)]
    hit_sets = []
    for f in functionals:
        hits = [n for n in range(1, N + 1)
                if f.evaluate(elements[n - 1], check=False) >= delta]
        hit_sets.append(FinSet.of(*hits))
    return DeltaFamily(tuple(hit_sets), delta, N,
                       tuple(f.label for f in functionals))


@dataclass(frozen=True)
class LargeCheckResult:
    """Whether every admissible image set in the horizon lies in the family."""

    ok: bool
    checked: int
    certificate: FinSet | None
    order: str
    stream: str
    horizon: int

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checked": self.checked,
            "certificate": None if self.certificate is None
            else str(self.certificate),
            "order": self.order,
            "stream": self.stream,
            "horizon": self.horizon,
        }


def large_check(xi: Ordinal, c: Fraction, xs: SeqSpec, M: IndexStream,
                functionals: Sequence[Functional], N: int, *,
                weak_limit: RatVec | None = None,
                fs: FundamentalRule = default_fundamental_seq,
                budget: Budget | None = None) -> LargeCheckResult:
    """Check largeness at level ``c`` along ``M`` over the window ``1..N``.

    The sequence is recentered by the caller-supplied weak limit (zero by
    default, right for basis-like sequences); every set carried by ``M``
    with admissible positions must then lie in the level-``c`` threshold
    family.  The first failing set in lexicographic order is the
    certificate.  The verdict is certified on this window only.
    """
    budget = get_budget(budget)
    weak_limit = RatVec() if weak_limit is None else weak_limit
    shifted = ExplicitSequence(xs.ambient,
                               [xs.element(n) - weak_limit
                                for n in range(1, N + 1)])
    family = f_delta(functionals, shifted, c, N)
    values = []
    position = 1
    while True:
        value = M.element(position)
        if value > N:
            break
        values.append(value)
        position += 1
    checked = 0
    for G in enumerate_family(xi, len(values), fs=fs, budget=budget):
        F = FinSet.of(*(values[g - 1] for g in G))
        checked += 1
        if not family.contains(F):
            return LargeCheckResult(False, checked, F, str(xi), M.name, N)
    return LargeCheckResult(True, checked, None, str(xi), M.name, N)


# -- the two-term ratio formula ---------------------------------------------------------


@dataclass(frozen=True)
class PropFormulaValues:
    """Exact values of the vanishing remainder and the main lower-bound term."""

    l: int
    c: Fraction
    vanishing: Fraction
    main: Fraction

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "c": format_fraction(self.c),
            "vanishing": format_fraction(self.vanishing),
            "main": format_fraction(self.main),
            "vanishing_approx": float(self.vanishing),
            "main_approx": float(self.main),
        }


def prop_formula(l: int, c: Fraction) -> PropFormulaValues:
    """Evaluate the two-term ratio formula at length scale ``l`` and level ``c``.

    ``main`` climbs to ``2c`` and ``vanishing`` falls to 0 as ``l`` grows;
    both are exact rationals.

    >>> values = prop_formula(10, Fraction(1, 2))
    >>> (values.main, values.vanishing)
    (Fraction(945, 1111), Fraction(9, 1111))
    """
    if l < 1:
        raise ValueError("the length scale must be a positive integer")
    c = Fraction(c)
    cube, square = l ** 3, l ** 2
    vanishing = Fraction(cube - square, (square + l) * (cube + l))
    main = c * (vanishing * square + Fraction(cube - square, cube + l))
    return PropFormulaValues(l, c, vanishing, main)
