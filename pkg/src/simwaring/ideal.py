"""Monomial ideals in the dual ring ``C[X0, ..., X{n-1}]``.

Generators are kept minimal at all times.  Everything here is combinatorial:
a monomial lies in the ideal iff some generator divides it, so intersections,
colons and sums reduce to operations on exponent vectors.

Standard-monomial counts come in two flavours.  ``method="box"`` enumerates
the box bounded by the pure-power generators and filters by membership; it is
deliberately naive and serves as the reference.  ``method="slice"`` splits on
the first variable and recurses, grouping exponent ranges that select the same
sub-ideal, which keeps counts exact without touching every monomial.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import CapacityError, DimensionMismatch, HypothesisError
from .monomial import Monomial

__all__ = [
    "MonomialIdeal",
    "StandardMonomialSet",
    "apolar_ideal",
    "intersect",
    "colon",
    "ideal_sum",
    "contains",
    "is_artinian",
    "standard_monomial_count",
    "hilbert_function",
    "DEFAULT_ENUMERATION_CAP",
]

DEFAULT_ENUMERATION_CAP = 10**7


def _minimalize(gens: Iterable[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    kept: list[tuple[int, ...]] = []
    for g in sorted(set(gens), key=lambda e: (sum(e), e)):
        if not any(all(a <= b for a, b in zip(h, g)) for h in kept):
            kept.append(g)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class MonomialIdeal:
    """Ideal generated by a finite set of monomials, stored minimally."""

    nvars: int
    gens: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for g in self.gens:
            if len(g) != self.nvars:
                raise DimensionMismatch(f"generator {g} does not have {self.nvars} entries")
        object.__setattr__(self, "gens", _minimalize(tuple(g) for g in self.gens))

    @classmethod
    def generated_by(cls, nvars: int, monomials: Iterable[Monomial | Sequence[int]]) -> MonomialIdeal:
        return cls(nvars, tuple(tuple(m) for m in monomials))

    @classmethod
    def unit(cls, nvars: int) -> MonomialIdeal:
        return cls(nvars, ((0,) * nvars,))

    @classmethod
    def zero(cls, nvars: int) -> MonomialIdeal:
        return cls(nvars, ())

    @classmethod
    def variable(cls, index: int, nvars: int) -> MonomialIdeal:
        return cls(nvars, (Monomial.variable(index, nvars).exponents,))

    @property
    def generators(self) -> tuple[Monomial, ...]:
        return tuple(Monomial(g) for g in self.gens)

    def is_unit(self) -> bool:
        return any(sum(g) == 0 for g in self.gens)

    def __contains__(self, m: Monomial) -> bool:
        return contains(self, m)

    def __add__(self, other: MonomialIdeal) -> MonomialIdeal:
        return ideal_sum(self, other)

    def __and__(self, other: MonomialIdeal) -> MonomialIdeal:
        return intersect(self, other)

    def __str__(self) -> str:
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(str(m).replace("x", "X") for m in self.generators) + ")"


@dataclass(frozen=True)
class StandardMonomialSet:
    count: int
    monomials: tuple[Monomial, ...] | None = None


def _same(I: MonomialIdeal, n: int) -> None:
    if I.nvars != n:
        raise DimensionMismatch(f"ideal in {I.nvars} variables, expected {n}")


def apolar_ideal(m: Monomial) -> MonomialIdeal:
    """Annihilator of ``m`` under differentiation: ``(X_i^(a_i + 1))``."""
    n = m.nvars
    return MonomialIdeal(n, tuple(Monomial.variable(i, n, a + 1).exponents for i, a in enumerate(m)))


def intersect(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same(J, I.nvars)
    return MonomialIdeal(I.nvars, tuple(tuple(map(max, g, h)) for g in I.gens for h in J.gens))


def intersect_all(ideals: Sequence[MonomialIdeal]) -> MonomialIdeal:
    if not ideals:
        raise ValueError("intersection of no ideals")
    out = ideals[0]
    for J in ideals[1:]:
        out = intersect(out, J)
    return out


def colon(I: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    """``I : (m)``, generated by ``g / gcd(g, m)`` over the generators ``g``."""
    _same(I, m.nvars)
    return MonomialIdeal(I.nvars, tuple(tuple(max(a - b, 0) for a, b in zip(g, m)) for g in I.gens))


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    _same(J, I.nvars)
    return MonomialIdeal(I.nvars, I.gens + J.gens)


def contains(I: MonomialIdeal, m: Monomial) -> bool:
    _same(I, m.nvars)
    e = m.exponents
    return any(all(a <= b for a, b in zip(g, e)) for g in I.gens)


def pure_power_bounds(I: MonomialIdeal) -> list[int | None]:
    """Smallest ``k`` with ``X_i^k`` in ``I`` for each variable, or ``None``."""
    if I.is_unit():
        return [0] * I.nvars
    bounds: list[int | None] = [None] * I.nvars
    for g in I.gens:
        support = [i for i, a in enumerate(g) if a > 0]
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or g[i] < bounds[i]:
                bounds[i] = g[i]
    return bounds


def is_artinian(I: MonomialIdeal) -> bool:
    return all(b is not None for b in pure_power_bounds(I))


@lru_cache(maxsize=65536)
def _slice_count(gens: tuple[tuple[int, ...], ...], nvars: int) -> int:
    # gens is minimal and artinian in nvars variables
    if any(sum(g) == 0 for g in gens):
        return 0
    if nvars == 0:
        return 1
    bound = min(g[0] for g in gens if all(a == 0 for a in g[1:]))
    cuts = sorted({g[0] for g in gens if g[0] < bound} | {0})
    total = 0
    for lo, hi in zip(cuts, cuts[1:] + [bound]):
        sub = _minimalize(g[1:] for g in gens if g[0] <= lo)
        total += (hi - lo) * _slice_count(sub, nvars - 1)
    return total


def _box_standard(I: MonomialIdeal, bounds: list[int], cap: int) -> np.ndarray:
    size = math.prod(bounds)
    if size > cap:
        raise CapacityError(f"enumeration box has {size} monomials, cap is {cap}")
    if size == 0:
        return np.zeros((0, I.nvars), dtype=np.int64)
    grid = np.indices(bounds, dtype=np.int64).reshape(I.nvars, -1).T
    inside = np.zeros(len(grid), dtype=bool)
    for g in I.gens:
        inside |= np.all(grid >= np.asarray(g, dtype=np.int64), axis=1)
    return grid[~inside]


def standard_monomial_count(
    I: MonomialIdeal,
    explicit: bool = False,
    method: str = "auto",
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> StandardMonomialSet:
    """Number of monomials outside the artinian ideal ``I``.

    ``method`` is ``"box"``, ``"slice"`` or ``"auto"`` (slice unless an
    explicit listing is requested).  Enumerations larger than ``cap`` are refused.
    """
    bounds = pure_power_bounds(I)
    if any(b is None for b in bounds):
        raise HypothesisError(f"{I} is not artinian; its quotient is infinite-dimensional")
    if method == "auto":
        method = "box" if explicit else "slice"
    if method == "slice":
        count = _slice_count(I.gens, I.nvars)
        if not explicit:
            return StandardMonomialSet(count)
        if count > cap:
            raise CapacityError(f"{count} standard monomials exceed the cap {cap}")
        rows = _box_standard(I, bounds, max(cap, math.prod(bounds)))
    elif method == "box":
        rows = _box_standard(I, bounds, cap)
        if not explicit:
            return StandardMonomialSet(len(rows))
    else:
        raise ValueError(f"unknown counting method {method!r}")
    monos = tuple(Monomial(tuple(int(a) for a in r)) for r in rows)
    return StandardMonomialSet(len(monos), monos)


@lru_cache(maxsize=65536)
def _slice_hilbert(gens: tuple[tuple[int, ...], ...], nvars: int, d: int) -> int:
    if any(sum(g) == 0 for g in gens):
        return 0
    if nvars == 0:
        return 1 if d == 0 else 0
    total = 0
    for e in range(d + 1):
        sub = _minimalize(g[1:] for g in gens if g[0] <= e)
        total += _slice_hilbert(sub, nvars - 1, d - e)
    return total


def hilbert_function(I: MonomialIdeal, d: int) -> int:
    """Number of degree-``d`` monomials not in ``I``; finite even when ``I`` is not artinian."""
    if d < 0:
        return 0
    return _slice_hilbert(I.gens, I.nvars, d)


def degree_monomials(nvars: int, d: int):
    """All exponent vectors of total degree ``d``, lexicographically descending."""
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in degree_monomials(nvars - 1, d - first):
            yield (first,) + rest


def box(bounds: Sequence[int]):
    """Every exponent vector ``e`` with ``0 <= e_i < bounds[i]``."""
    return product(*(range(b) for b in bounds))
