"""Transfinite Schreier families: membership, enumeration, traces, and images.

The family of order 0 consists of the singletons and the empty set.  The
family of order ``x+1`` collects unions ``F_1 < F_2 < ... < F_n`` of members
of order ``x`` with ``n <= min F_1``, and at a limit order the family
collects the sets that belong to the n-th member of a fundamental sequence
for some ``n <= min F``.  Every family is hereditary (closed under subsets)
and spreading (closed under moving elements to the right), which the fast
membership test exploits and the exhaustive oracle deliberately does not.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator

from .budget import Budget, BudgetExceededError, get_budget, WorkMeter
from .ordinal import (FundamentalRule, Ordinal, classify,
                      default_fundamental_seq)
from .streams import IndexStream

__all__ = [
    "FinSet",
    "is_member",
    "is_member_oracle",
    "enumerate_family",
    "is_member_image",
    "trace_member",
    "threshold",
]


class FinSet:
    """A finite set of positive integers, stored strictly increasing."""

    __slots__ = ("_elements",)

    def __init__(self, elements: Iterable[int] = ()):
        elements = tuple(int(v) for v in elements)
        for a, b in zip(elements, elements[1:]):
            if b <= a:
                raise ValueError("elements must be strictly increasing")
        if elements and elements[0] < 1:
            raise ValueError("elements must be positive")
        object.__setattr__(self, "_elements", elements)

    def __setattr__(self, name, value):
        raise AttributeError("FinSet is immutable")

    @classmethod
    def of(cls, *values: int) -> "FinSet":
        return cls(sorted(set(values)))

    @classmethod
    def parse(cls, text: str) -> "FinSet":
        """Parse comma-separated ascending integers; '' is the empty set."""
        text = text.strip()
        if not text:
            return cls()
        try:
            values = [int(p) for p in text.split(",")]
        except ValueError:
            raise ValueError(f"bad finite set literal {text!r}") from None
        return cls(values)

    @property
    def elements(self) -> tuple[int, ...]:
        return self._elements

    def min(self) -> int:
        if not self._elements:
            raise ValueError("empty set has no minimum")
        return self._elements[0]

    def max(self) -> int:
        if not self._elements:
            raise ValueError("empty set has no maximum")
        return self._elements[-1]

    def __len__(self):
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __contains__(self, value):
        return value in self._elements

    def __bool__(self):
        return bool(self._elements)

    def __eq__(self, other):
        if not isinstance(other, FinSet):
            return NotImplemented
        return self._elements == other._elements

    def __le__(self, other):
        return set(self._elements) <= set(other._elements)

    def __hash__(self):
        return hash(("FinSet", self._elements))

    def union(self, other: "FinSet") -> "FinSet":
        return FinSet.of(*self._elements, *other._elements)

    def __str__(self):
        return ",".join(map(str, self._elements))

    def __repr__(self):
        return f"FinSet({self})"


# -- fast membership ---------------------------------------------------------


@lru_cache(maxsize=None)
def _member(xi: Ordinal, elements: tuple[int, ...], rule: FundamentalRule) -> bool:
    if not elements:
        return True
    kind, pred = classify(xi)
    if kind == "zero":
        return len(elements) <= 1
    if kind == "successor":
        # Greedily strip the longest initial segment belonging to the
        # predecessor family.  Heredity makes prefix membership downward
        # closed in length, so the longest good prefix minimizes the piece
        # count and binary search locates it.
        pieces = 0
        rest = elements
        allowed = elements[0]
        while rest:
            lo, hi = 1, len(rest)
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if _member(pred, rest[:mid], rule):
                    lo = mid
                else:
                    hi = mid - 1
            rest = rest[lo:]
            pieces += 1
            if pieces > allowed:
                return False
        return True
    # Limit order: member of the n-th approximating family for some n <= min.
    return any(_member(rule(xi, n), elements, rule)
               for n in range(1, elements[0] + 1))


def is_member(xi: Ordinal, F: FinSet, *,
              fs: FundamentalRule = default_fundamental_seq) -> bool:
    """Decide membership of ``F`` in the family of order ``xi``.

    Uses the greedy longest-prefix decomposition at successor orders; its
    correctness against the exhaustive search is part of the test suite.

    >>> is_member(Ordinal.from_int(1), FinSet.of(2, 3))
    True
    """
    return _member(xi, F.elements, fs)


# -- exhaustive oracle ---------------------------------------------------------


def is_member_oracle(xi: Ordinal, F: FinSet, *,
                     fs: FundamentalRule = default_fundamental_seq,
                     budget: Budget | None = None) -> bool:
    """Membership by exhaustive decomposition search, with no greedy shortcut.

    Exponential in ``len(F)``; intended as the ground truth that validates
    :func:`is_member` on small sets.
    """
    budget = get_budget(budget)
    if len(F) > budget.oracle_support:
        raise BudgetExceededError("oracle set size", budget.oracle_support, len(F))

    @lru_cache(maxsize=None)
    def member(o: Ordinal, elements: tuple[int, ...]) -> bool:
        if not elements:
            return True
        kind, pred = classify(o)
        if kind == "zero":
            return len(elements) <= 1
        if kind == "successor":
            size = len(elements)
            for n in range(1, min(elements[0], size) + 1):
                if _any_split(elements, n, pred):
                    return True
            return False
        return any(member(fs(o, n), elements)
                   for n in range(1, elements[0] + 1))

    def _any_split(elements: tuple[int, ...], n: int, pred: Ordinal) -> bool:
        # All ways to cut `elements` into n non-empty consecutive blocks.
        if n == 1:
            return member(pred, elements)
        size = len(elements)
        for first in range(1, size - n + 2):
            if member(pred, elements[:first]) and _any_split(elements[first:], n - 1, pred):
                return True
        return False

    return member(xi, F.elements)


# -- enumeration ---------------------------------------------------------------


def enumerate_family(xi: Ordinal, max_value: int, *,
                     fs: FundamentalRule = default_fundamental_seq,
                     budget: Budget | None = None) -> Iterator[FinSet]:
    """Yield every member contained in ``{1..max_value}`` in lexicographic order.

    Heredity lets the search extend only through member prefixes: a set all
    of whose proper initial segments fail would fail itself.

    >>> [str(F) for F in enumerate_family(Ordinal.from_int(1), 3)]
    ['', '1', '2', '2,3', '3']
    """
    budget = get_budget(budget)
    meter = WorkMeter("family enumeration", budget.work)

    def extend(prefix: tuple[int, ...], start: int) -> Iterator[FinSet]:
        for k in range(start, max_value + 1):
            candidate = prefix + (k,)
            if _member(xi, candidate, fs):
                meter.spend()
                yield FinSet(candidate)
                yield from extend(candidate, k + 1)

    meter.spend()
    yield FinSet()
    yield from extend((), 1)


# -- traces and images -----------------------------------------------------------


def is_member_image(xi: Ordinal, M: IndexStream, F: FinSet, *,
                    fs: FundamentalRule = default_fundamental_seq) -> bool:
    """Membership in the image family: F = (m_i) for i in some member.

    The image family is the pointwise push-forward of the order-``xi``
    family along ``M`` and is in general strictly smaller than the trace.
    """
    positions = []
    for value in F:
        pos = M.index_of(value)
        if pos is None:
            return False
        positions.append(pos)
    return _member(xi, tuple(positions), fs)


def trace_member(xi: Ordinal, M: IndexStream, F: FinSet, *,
                 fs: FundamentalRule = default_fundamental_seq) -> bool:
    """Membership in the trace family: members of order ``xi`` inside ``M``.

    For hereditary families the trace on ``M`` is exactly the members that
    are subsets of ``M``.
    """
    if not all(value in M for value in F):
        return False
    return _member(xi, F.elements, fs)


# -- threshold --------------------------------------------------------------------


def threshold(zeta: Ordinal, xi: Ordinal, max_value: int, *,
              fs: FundamentalRule = default_fundamental_seq,
              budget: Budget | None = None) -> int | None:
    """Smallest n such that every order-``zeta`` member of {1..max_value}
    with min >= n belongs to the order-``xi`` family.

    Returns None when no n <= max_value works; since singletons belong to
    every family that value is reachable only vacuously, but the contract
    keeps it as a distinguished result.
    """
    outside: list[int] = []
    for F in enumerate_family(zeta, max_value, fs=fs, budget=budget):
        if F and not _member(xi, F.elements, fs):
            outside.append(F.min())
    if not outside:
        return 1
    worst = max(outside)
    return worst + 1 if worst < max_value else None
