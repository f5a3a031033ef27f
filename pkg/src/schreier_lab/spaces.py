"""Norms built from admissible sets, and certified coordinate functionals.

Three norms share the admissibility machinery: the base norm (largest
absolute coordinate sum over one admissible set), its renorming taking the
larger of the positive-part and negative-part base norms, and a
Baernstein-style norm summing squared coordinate masses over a strictly
increasing chain of admissible sets.

Exact values are rationals; the Baernstein norm is reported through its
exact square together with a floating approximation of the root.  Small
orders (0 and 1) have closed-form or polynomial evaluations with no search;
everything else runs a branch-and-bound over admissible prefixes, metered
by the active budget.  ``norm_oracle`` is the same quantity computed by
exhaustive enumeration, kept deliberately free of pruning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .budget import Budget, BudgetExceededError, WorkMeter, get_budget
from .ordinal import FundamentalRule, Ordinal, default_fundamental_seq, parse as parse_ordinal
from .schreier import FinSet, _member
from .vectors import RatVec, format_fraction

__all__ = [
    "NormSpec",
    "NormResult",
    "norm",
    "norm_oracle",
    "l1_certificate",
    "Functional",
    "coordinate_sum_functional",
    "CertificationRefusedError",
    "CertificationViolationError",
]

_FAMILY_KINDS = ("schreier", "schreier_star", "baernstein")
_CLASSICAL_KINDS = ("l1", "l2", "sup")


@dataclass(frozen=True)
class NormSpec:
    """Which norm to evaluate: a kind, plus an order for the family-based kinds."""

    kind: str
    xi: Ordinal | None = None
    fs: FundamentalRule = default_fundamental_seq

    def __post_init__(self):
        if self.kind in _FAMILY_KINDS:
            if self.xi is None:
                raise ValueError(f"kind {self.kind!r} needs an order")
        elif self.kind in _CLASSICAL_KINDS:
            if self.xi is not None:
                raise ValueError(f"kind {self.kind!r} takes no order")
        else:
            raise ValueError(f"unknown norm kind {self.kind!r}")

    @classmethod
    def l1(cls):
        return cls("l1")

    @classmethod
    def l2(cls):
        return cls("l2")

    @classmethod
    def sup(cls):
        return cls("sup")

    @classmethod
    def schreier(cls, xi: Ordinal, *, fs: FundamentalRule = default_fundamental_seq):
        return cls("schreier", xi, fs)

    @classmethod
    def star(cls, xi: Ordinal, *, fs: FundamentalRule = default_fundamental_seq):
        return cls("schreier_star", xi, fs)

    @classmethod
    def baernstein(cls, xi: Ordinal, *, fs: FundamentalRule = default_fundamental_seq):
        return cls("baernstein", xi, fs)

    @classmethod
    def parse(cls, text: str, *, fs: FundamentalRule = default_fundamental_seq):
        """Parse ``l1``/``l2``/``sup`` or ``kind:order`` like ``star:w``."""
        kind, sep, order = text.partition(":")
        alias = {"star": "schreier_star"}.get(kind, kind)
        if not sep:
            if alias in _CLASSICAL_KINDS:
                return cls(alias)
            raise ValueError(f"kind {alias!r} needs an order, like {alias}:1")
        return cls(alias, parse_ordinal(order), fs)

    def __str__(self) -> str:
        short = {"schreier_star": "star"}.get(self.kind, self.kind)
        return short if self.xi is None else f"{short}:{self.xi}"


def _witness_str(witness) -> str:
    if witness is None:
        return ""
    if isinstance(witness, FinSet):
        return str(witness)
    if isinstance(witness, tuple) and witness and isinstance(witness[0], str):
        part, F = witness
        return f"{part}:{F}"
    return "|".join(str(F) for F in witness)


@dataclass(frozen=True)
class NormResult:
    """An exactly computed norm with a maximizing witness.

    ``value`` is None when the norm is irrational (possible only for the
    Baernstein kind); ``value_squared`` is always exact.
    """

    spec: NormSpec
    value: Fraction | None
    value_squared: Fraction
    approx: float
    witness: object

    def to_json(self) -> dict:
        return {
            "spec": str(self.spec),
            "value": None if self.value is None else format_fraction(self.value),
            "value_squared": format_fraction(self.value_squared),
            "approx": self.approx,
            "witness": _witness_str(self.witness),
        }


def _exact_result(spec: NormSpec, value: Fraction, witness) -> NormResult:
    return NormResult(spec, value, value * value, float(value), witness)


def _sqrt_result(spec: NormSpec, squared: Fraction, witness) -> NormResult:
    p, q = squared.numerator, squared.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    value = Fraction(rp, rq) if rp * rp == p and rq * rq == q else None
    return NormResult(spec, value, squared, math.sqrt(p / q), witness)


# -- base norm ------------------------------------------------------------------


def _norm_order_zero(mags: RatVec) -> tuple[Fraction, FinSet]:
    best = Fraction(0)
    where: tuple[int, ...] = ()
    for i, v in mags.items():
        if v > best:
            best, where = v, (i,)
    return best, FinSet(where)


def _norm_order_one(mags: RatVec) -> tuple[Fraction, FinSet]:
    """Exact maximum of coordinate sums over sets with size at most their minimum.

    For the optimal set with least element m, the top values at indices >= m
    (at most m of them) form an admissible set too, so scanning every support
    index as the cutoff is exhaustive.  Runs of equal values keep each scan
    linear in the number of distinct values.
    """
    support = mags.support()
    if not support:
        return Fraction(0), FinSet(())
    values = [mags[i] for i in support]
    # Runs of equal value over consecutive support positions.
    runs: list[tuple[int, int, Fraction]] = []   # (start_pos, end_pos, value)
    start = 0
    for pos in range(1, len(support) + 1):
        if pos == len(support) or values[pos] != values[start]:
            runs.append((start, pos, values[start]))
            start = pos
    by_value = sorted(range(len(runs)), key=lambda r: runs[r][2], reverse=True)

    best = Fraction(0)
    best_cut = None
    for cut_pos, m in enumerate(support):
        allowance = m
        total = Fraction(0)
        taken: list[tuple[int, int]] = []   # (run index, count) for the witness
        for r in by_value:
            lo, hi, value = runs[r]
            avail = hi - max(lo, cut_pos)
            if avail <= 0:
                continue
            take = min(avail, allowance)
            total += value * take
            taken.append((r, take))
            allowance -= take
            if allowance == 0:
                break
        if total > best:
            best = total
            best_cut = (cut_pos, taken)
    if best_cut is None:
        return Fraction(0), FinSet(())
    cut_pos, taken = best_cut
    chosen: list[int] = []
    for r, take in taken:
        lo, hi, _ = runs[r]
        lo = max(lo, cut_pos)
        chosen.extend(support[lo:lo + take])
    return best, FinSet.of(*chosen)


def _norm_search(mags: RatVec, xi: Ordinal, fs: FundamentalRule,
                 budget: Budget) -> tuple[Fraction, FinSet]:
    """Branch and bound over admissible subsets of the support.

    Depth-first in lexicographic order, so the first maximizer found is the
    lexicographically least one; a branch is cut when even taking all of the
    remaining suffix cannot beat the incumbent.
    """
    support = mags.support()
    if len(support) > budget.norm_support:
        raise BudgetExceededError("norm search support", budget.norm_support,
                                  needed=len(support))
    meter = WorkMeter("norm search nodes", budget.work)
    suffix = [Fraction(0)] * (len(support) + 1)
    for pos in range(len(support) - 1, -1, -1):
        suffix[pos] = suffix[pos + 1] + mags[support[pos]]

    best = Fraction(0)
    best_set: tuple[int, ...] = ()

    def dfs(prefix: tuple[int, ...], total: Fraction, pos: int) -> None:
        nonlocal best, best_set
        for nxt in range(pos, len(support)):
            if total + suffix[nxt] <= best:
                return
            meter.spend(1)
            extended = prefix + (support[nxt],)
            if not _member(xi, extended, fs):
                continue
            value = total + mags[support[nxt]]
            if value > best:
                best, best_set = value, extended
            dfs(extended, value, nxt + 1)

    dfs((), Fraction(0), 0)
    return best, FinSet(best_set)


def _base_norm(mags: RatVec, xi: Ordinal, fs: FundamentalRule,
               budget: Budget) -> tuple[Fraction, FinSet]:
    if xi.is_zero:
        return _norm_order_zero(mags)
    if xi == Ordinal.from_int(1):
        return _norm_order_one(mags)
    return _norm_search(mags, xi, fs, budget)


# -- Baernstein-style chain norm ---------------------------------------------------


def _chain_squared_search(mags: RatVec, xi: Ordinal, fs: FundamentalRule,
                          budget: Budget) -> tuple[Fraction, tuple[FinSet, ...]]:
    support = mags.support()
    if xi.is_zero:
        # Singleton blocks at every support point; any subfamily only loses mass.
        squared = sum((v * v for _, v in mags.items()), Fraction(0))
        return squared, tuple(FinSet.of(i) for i in support)
    if len(support) > budget.baernstein_support:
        raise BudgetExceededError("chain norm support", budget.baernstein_support,
                                  needed=len(support))
    meter = WorkMeter("chain norm nodes", budget.work)
    suffix = [Fraction(0)] * (len(support) + 1)
    for pos in range(len(support) - 1, -1, -1):
        suffix[pos] = suffix[pos + 1] + mags[support[pos]]

    best = Fraction(0)
    best_chain: tuple[tuple[int, ...], ...] = ()

    # Two alternating states: between blocks, and growing an open block.
    # Bounds fold everything still available into a single block, which can
    # only overstate the reachable value; suffix masses shrink with the
    # position, so a failed bound ends the whole loop.

    def between(chain: tuple[tuple[int, ...], ...], closed_sq: Fraction,
                pos: int) -> None:
        nonlocal best, best_chain
        if closed_sq > best:
            best, best_chain = closed_sq, chain
        for nxt in range(pos, len(support)):
            if closed_sq + suffix[nxt] ** 2 <= best:
                return
            meter.spend(1)
            grow(chain, closed_sq, (support[nxt],), mags[support[nxt]], nxt + 1)

    def grow(chain: tuple[tuple[int, ...], ...], closed_sq: Fraction,
             block: tuple[int, ...], block_sum: Fraction, pos: int) -> None:
        between(chain + (block,), closed_sq + block_sum * block_sum, pos)
        for nxt in range(pos, len(support)):
            if closed_sq + (block_sum + suffix[nxt]) ** 2 <= best:
                return
            meter.spend(1)
            extended = block + (support[nxt],)
            if _member(xi, extended, fs):
                grow(chain, closed_sq, extended, block_sum + mags[support[nxt]],
                     nxt + 1)

    between((), Fraction(0), 0)
    return best, tuple(FinSet(b) for b in best_chain)


# -- dispatch -------------------------------------------------------------------


def _classical_norm(spec: NormSpec, x: RatVec) -> NormResult:
    support = FinSet(x.support())
    if spec.kind == "l1":
        return _exact_result(spec, x.l1(), support)
    if spec.kind == "l2":
        return _sqrt_result(spec, x.l2_squared(), support)
    value, where = _norm_order_zero(x.abs())
    return _exact_result(spec, value, where)


def norm(spec: NormSpec, x: RatVec, *, budget: Budget | None = None) -> NormResult:
    """Evaluate the norm described by ``spec`` on ``x``, exactly.

    >>> from .vectors import RatVec
    >>> from .ordinal import Ordinal
    >>> x = RatVec({1: 1, 2: 1, 3: 1})
    >>> norm(NormSpec.schreier(Ordinal.from_int(1)), x).value
    Fraction(2, 1)
    """
    budget = get_budget(budget)
    if spec.kind in _CLASSICAL_KINDS:
        return _classical_norm(spec, x)
    if spec.kind == "schreier":
        value, F = _base_norm(x.abs(), spec.xi, spec.fs, budget)
        return _exact_result(spec, value, F)
    if spec.kind == "schreier_star":
        value_pos, F_pos = _base_norm(x.positive_part(), spec.xi, spec.fs, budget)
        value_neg, F_neg = _base_norm(x.negative_part(), spec.xi, spec.fs, budget)
        if value_neg > value_pos:
            return _exact_result(spec, value_neg, ("-", F_neg))
        return _exact_result(spec, value_pos, ("+", F_pos))
    squared, chain = _chain_squared_search(x.abs(), spec.xi, spec.fs, budget)
    return _sqrt_result(spec, squared, chain)


def l1_certificate(x: RatVec) -> Fraction:
    """An upper bound for every norm here: blocks only see part of the mass."""
    return x.l1()


# -- exhaustive oracle ----------------------------------------------------------


def _oracle_base(mags: RatVec, xi: Ordinal, fs: FundamentalRule,
                 meter: WorkMeter) -> Fraction:
    from itertools import combinations

    support = mags.support()
    best = Fraction(0)
    for size in range(1, len(support) + 1):
        for combo in combinations(support, size):
            meter.spend(1)
            if _member(xi, combo, fs):
                best = max(best, sum((mags[i] for i in combo), Fraction(0)))
    return best


def _oracle_chain(mags: RatVec, xi: Ordinal, fs: FundamentalRule,
                  meter: WorkMeter) -> Fraction:
    from itertools import combinations

    support = mags.support()
    position = {value: pos for pos, value in enumerate(support)}
    best = Fraction(0)

    def rec(pos: int, acc: Fraction) -> None:
        nonlocal best
        best = max(best, acc)
        for start in range(pos, len(support)):
            tail = support[start + 1:]
            for size in range(0, len(tail) + 1):
                for combo in combinations(tail, size):
                    block = (support[start],) + combo
                    meter.spend(1)
                    if _member(xi, block, fs):
                        mass = sum((mags[i] for i in block), Fraction(0))
                        rec(position[block[-1]] + 1, acc + mass * mass)

    rec(0, Fraction(0))
    return best


def norm_oracle(spec: NormSpec, x: RatVec, *,
                budget: Budget | None = None) -> NormResult:
    """The same norm by exhaustive enumeration, with no pruning or fast paths.

    Deliberately simple, as a cross-check for :func:`norm`; refuses supports
    larger than the oracle budget.
    """
    budget = get_budget(budget)
    if spec.kind in _CLASSICAL_KINDS:
        return _classical_norm(spec, x)
    if len(x.support()) > budget.oracle_support:
        raise BudgetExceededError("oracle norm support", budget.oracle_support,
                                  needed=len(x.support()))
    meter = WorkMeter("oracle norm candidates", budget.work)
    if spec.kind == "schreier":
        return _exact_result(spec, _oracle_base(x.abs(), spec.xi, spec.fs, meter),
                             witness=None)
    if spec.kind == "schreier_star":
        value = max(_oracle_base(x.positive_part(), spec.xi, spec.fs, meter),
                    _oracle_base(x.negative_part(), spec.xi, spec.fs, meter))
        return _exact_result(spec, value, witness=None)
    squared = _oracle_chain(x.abs(), spec.xi, spec.fs, meter)
    return _sqrt_result(spec, squared, witness=None)


# -- certified coordinate functionals ---------------------------------------------


class CertificationRefusedError(ValueError):
    """The requested functional cannot be certified to have norm at most one."""


class CertificationViolationError(RuntimeError):
    """A certified bound failed on concrete data, which indicates a bug."""


@dataclass(frozen=True)
class Functional:
    """A finitely supported functional ``x -> sum_i c_i x_i``.

    When ``certified_for`` is set, evaluation checks ``|f(x)| <= ||x||``
    against that norm; the inequality holds by construction, so a failure is
    a defect in the norm code, not in the data.
    """

    coefficients: RatVec
    certified_for: NormSpec | None = None
    label: str = ""

    def evaluate(self, x: RatVec, *, check: bool = True,
                 budget: Budget | None = None) -> Fraction:
        value = sum((weight * x[i] for i, weight in self.coefficients.items()),
                    Fraction(0))
        if check and self.certified_for is not None:
            try:
                bound = norm(self.certified_for, x, budget=budget)
            except BudgetExceededError:
                bound = None
            if bound is not None and abs(value) > bound.value:
                raise CertificationViolationError(
                    f"certified functional {self.label or 'f'} exceeded the "
                    f"norm: |{value}| > {bound.value}")
        return value

    def to_json(self) -> dict:
        return {
            "coefficients": self.coefficients.to_map(),
            "certified_for": None if self.certified_for is None
            else str(self.certified_for),
            "label": self.label,
        }


def coordinate_sum_functional(F: FinSet, spec: NormSpec) -> Functional:
    """The functional summing the coordinates over ``F``, certified at norm one.

    Certification needs ``F`` admissible at the given order and a kind whose
    unit ball dominates single-set coordinate sums; the chain norm does not
    qualify and is refused.
    """
    from .schreier import is_member

    if spec.kind not in ("schreier", "schreier_star"):
        raise CertificationRefusedError(
            f"kind {spec.kind!r} does not certify coordinate-sum functionals")
    if not is_member(spec.xi, F, fs=spec.fs):
        raise CertificationRefusedError(
            f"{{{F}}} is not admissible at order {spec.xi}")
    ones = RatVec({i: Fraction(1) for i in F})
    return Functional(ones, spec, label=f"sum[{F}]")
