"""Simultaneous Waring ranks of monomial collections.

Exact values are only reported when a collection meets the hypotheses of one
of the known rank formulas; everything else gets a lower/upper bound pair.
The lower bound is the length of the artinian algebra obtained by adding a
variable to the intersection of the apolar ideals, and the upper bound comes
from the least common multiple (or, when smaller, the sum of the individual
ranks).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DimensionMismatch, HypothesisError
from .ideal import MonomialIdeal, apolar_ideal, ideal_sum, intersect_all, standard_monomial_count
from .monomial import Monomial, as_monomials, gcd, lcm, min_positions, waring_rank

__all__ = [
    "Collection",
    "BaseVariable",
    "Justification",
    "RankVerdict",
    "find_base_variable",
    "check_11_free",
    "check_free",
    "alternating_sum",
    "subset_terms",
    "lower_bound",
    "upper_bound_lcm",
    "bounds",
    "pair_rank_same_support",
    "pair_rank_different_support",
    "free_collection_rank",
    "derivative_collection",
    "derivative_collection_rank",
    "binomial_upper_bound",
    "high_rank_pair",
    "high_rank_pair_formula",
    "generic_ternary_pair_rank",
    "simultaneous_rank",
]


@dataclass(frozen=True)
class Collection:
    """An ordered family of distinct monomials in a common ring.

    Duplicates are dropped (with a warning) on construction, keeping the first
    occurrence.
    """

    monomials: tuple[Monomial, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        monos = tuple(self.monomials)
        if not monos:
            raise ValueError("a collection needs at least one monomial")
        n = monos[0].nvars
        if any(m.nvars != n for m in monos):
            raise DimensionMismatch("all monomials of a collection must share the number of variables")
        labels = self.labels
        seen: dict[Monomial, int] = {}
        for k, m in enumerate(monos):
            seen.setdefault(m, k)
        if len(seen) < len(monos):
            warnings.warn("duplicate monomials removed from collection", stacklevel=3)
            keep = sorted(seen.values())
            monos = tuple(monos[k] for k in keep)
            if labels is not None:
                labels = tuple(labels[k] for k in keep)
        if labels is not None and len(labels) != len(monos):
            raise ValueError("one label per monomial expected")
        object.__setattr__(self, "monomials", monos)
        object.__setattr__(self, "labels", None if labels is None else tuple(labels))

    @classmethod
    def of(cls, items: Iterable[Monomial | str], nvars: int | None = None) -> Collection:
        items = list(items)
        if nvars is None and any(isinstance(m, str) for m in items):
            nvars = max(as_monomials([m])[0].nvars if isinstance(m, str) else m.nvars for m in items)
        return cls(tuple(as_monomials(items, nvars)))

    @property
    def nvars(self) -> int:
        return self.monomials[0].nvars

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def exponent_sequence(self, i: int) -> tuple[int, ...]:
        """Sorted exponents of variable ``i`` across the collection (with repeats)."""
        return tuple(sorted(m[i] for m in self.monomials))

    def differences(self, i: int) -> tuple[int, ...]:
        seq = self.exponent_sequence(i)
        return tuple(b - a for a, b in zip(seq, seq[1:]))

    def lcm(self) -> Monomial:
        return lcm(*self.monomials)

    def gcd(self) -> Monomial:
        return gcd(*self.monomials)

    def restrict(self, indices: Iterable[int]) -> Collection:
        return Collection(tuple(self.monomials[k] for k in indices))

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.monomials)) + "}"


@dataclass(frozen=True)
class BaseVariable:
    index: int
    c: int


class Justification(str, Enum):
    SAME_SUPPORT_PAIR = "same-support-pair"
    FREE_COLLECTION = "free-collection"
    DIFFERENT_SUPPORT_PAIR = "different-support-pair"
    DERIVATIVE_COLLECTION = "derivative-collection"
    SINGLE_MONOMIAL = "single-monomial"
    BOUNDS_COINCIDE = "bounds-coincide"
    BOUNDS_ONLY = "bounds-only"


@dataclass(frozen=True)
class RankVerdict:
    kind: str  # "exact" or "bounds"
    lower: int
    upper: int
    justification: Justification

    def __post_init__(self):
        if self.kind not in ("exact", "bounds"):
            raise ValueError(f"unknown verdict kind {self.kind!r}")
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")
        if self.kind == "exact" and (self.lower != self.upper or self.lower < 1):
            raise ValueError("an exact verdict carries one positive value")

    @classmethod
    def exact(cls, value: int, justification: Justification) -> RankVerdict:
        return cls("exact", value, value, justification)

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    @property
    def value(self) -> int | None:
        return self.lower if self.is_exact else None

    def __str__(self) -> str:
        if self.is_exact:
            return f"exact {self.lower} ({self.justification.value})"
        return f"bounds [{self.lower}, {self.upper}] ({self.justification.value})"


def _coll(coll: Collection | Sequence[Monomial]) -> Collection:
    return coll if isinstance(coll, Collection) else Collection(tuple(coll))


def _require_nonconstant(coll: Collection) -> None:
    for m in coll:
        if m.is_constant():
            raise HypothesisError("collections may not contain the constant monomial")


def find_base_variable(coll: Collection) -> BaseVariable | None:
    """Smallest index that is a minimal position of every monomial, with one shared exponent."""
    coll = _coll(coll)
    _require_nonconstant(coll)
    common = frozenset.intersection(*(min_positions(m) for m in coll))
    for i in sorted(common):
        if len({m[i] for m in coll}) == 1:
            return BaseVariable(i, coll.monomials[0][i])
    return None


def check_11_free(coll: Collection) -> bool:
    """No variable has two successive exponent differences equal to 1."""
    coll = _coll(coll)
    return all(coll.differences(i).count(1) <= 1 for i in range(coll.nvars))


def _free_base(coll: Collection) -> BaseVariable | None:
    base = find_base_variable(coll)
    if base is None:
        return None
    # the construction needs every exponent at least c, in particular full support
    if any(e < base.c for m in coll for e in m):
        return None
    if not check_11_free(coll):
        return None
    for i in range(coll.nvars):
        if any(1 < d <= base.c for d in coll.differences(i)):
            return None
    return base


def check_free(coll: Collection) -> bool:
    """Freeness: a shared base exponent ``c``, full support, and per-variable
    successive differences drawn from ``{0, 1, c+1, c+2, ...}`` with at most one 1.
    """
    return _free_base(_coll(coll)) is not None


def subset_terms(coll: Collection) -> list[tuple[tuple[int, ...], Monomial, int, int]]:
    """``(indices, gcd, sign, rank)`` for every nonempty subset, by size then index."""
    coll = _coll(coll)
    terms = []
    for k in range(1, len(coll) + 1):
        for subset in combinations(range(len(coll)), k):
            g = gcd(*(coll.monomials[j] for j in subset))
            if g.is_constant():
                raise HypothesisError(f"gcd of monomials {list(subset)} is constant")
            terms.append((subset, g, (-1) ** (k + 1), waring_rank(g)))
    return terms


def alternating_sum(coll: Collection) -> int:
    """Inclusion-exclusion of the ranks of subset gcds."""
    return sum(sign * rank for _, _, sign, rank in subset_terms(coll))


def lower_bound_at(coll: Collection, i: int) -> int:
    """Length of ``T / ((X_i) + intersection of the apolar ideals)``."""
    coll = _coll(coll)
    if any(m[i] == 0 for m in coll):
        raise HypothesisError(f"x{i} does not divide every monomial")
    ideal = intersect_all([apolar_ideal(m) for m in coll])
    return standard_monomial_count(ideal_sum(MonomialIdeal.variable(i, coll.nvars), ideal)).count


def lower_bound(coll: Collection) -> int:
    """Best apolar-algebra lower bound over all variables dividing every monomial."""
    coll = _coll(coll)
    admissible = coll.gcd().support
    if not admissible:
        raise HypothesisError("no variable divides every monomial of the collection")
    return max(lower_bound_at(coll, i) for i in admissible)


def upper_bound_lcm(coll: Collection) -> int:
    coll = _coll(coll)
    return waring_rank(coll.lcm())


def bounds(coll: Collection) -> RankVerdict:
    """Bound pair, tightened with the trivial bounds ``max rk M_j <= rk <= sum rk M_j``."""
    coll = _coll(coll)
    _require_nonconstant(coll)
    ranks = [waring_rank(m) for m in coll]
    lo = max(ranks)
    if coll.gcd().support:
        lo = max(lo, lower_bound(coll))
    hi = min(upper_bound_lcm(coll), sum(ranks))
    return RankVerdict("bounds", lo, hi, Justification.BOUNDS_ONLY)


def _pair_formula(m1: Monomial, m2: Monomial) -> int:
    return waring_rank(m1) + waring_rank(m2) - waring_rank(gcd(m1, m2))


def pair_rank_same_support(m1: Monomial, m2: Monomial) -> RankVerdict:
    """Exact rank of a pair sharing a base variable ``x^c`` whose other exponent
    gaps are 0, 1 or at least ``c + 1``."""
    if m1.nvars != m2.nvars:
        raise DimensionMismatch("pair in different rings")
    if m1 == m2:
        return RankVerdict.exact(waring_rank(m1), Justification.SAME_SUPPORT_PAIR)
    pair = Collection((m1, m2))
    if _free_base(pair) is None:
        return bounds(pair)
    return RankVerdict.exact(_pair_formula(m1, m2), Justification.SAME_SUPPORT_PAIR)


def _different_support_ok(m1: Monomial, m2: Monomial) -> bool:
    shared = [i for i in range(m1.nvars) if m1[i] == 1 and m2[i] == 1]
    if not shared:
        return False
    for a, b in zip(m1, m2):
        if (a == 0) != (b == 0) and max(a, b) < 2:
            return False
    return True


def pair_rank_different_support(m1: Monomial, m2: Monomial) -> RankVerdict:
    """Exact rank of a pair sharing a linear factor ``x0`` where every variable
    private to one monomial appears with exponent at least 2."""
    if m1.nvars != m2.nvars:
        raise DimensionMismatch("pair in different rings")
    if m1 == m2:
        return RankVerdict.exact(waring_rank(m1), Justification.DIFFERENT_SUPPORT_PAIR)
    if not _different_support_ok(m1, m2):
        return bounds(Collection((m1, m2)))
    return RankVerdict.exact(_pair_formula(m1, m2), Justification.DIFFERENT_SUPPORT_PAIR)


def free_collection_rank(coll: Collection) -> RankVerdict:
    coll = _coll(coll)
    _require_nonconstant(coll)
    if not check_free(coll):
        return bounds(coll)
    return RankVerdict.exact(alternating_sum(coll), Justification.FREE_COLLECTION)


def derivative_collection(m: Monomial) -> Collection:
    """First partial derivatives of ``m`` with scalar factors dropped."""
    if m.is_constant():
        raise HypothesisError("the constant monomial has no nonzero derivatives")
    return Collection(tuple(m / Monomial.variable(i, m.nvars) for i in m.support))


def derivative_collection_rank(m: Monomial) -> tuple[RankVerdict, Collection]:
    """Rank of the derivative collection of ``m``; equals ``rk m`` when every exponent exceeds 1."""
    derivs = derivative_collection(m)
    if all(e > 1 for e in m):
        return RankVerdict.exact(waring_rank(m), Justification.DERIVATIVE_COLLECTION), derivs
    if any(d.is_constant() for d in derivs):
        raise HypothesisError(f"{m} has a constant derivative")
    return bounds(derivs), derivs


def _is_derivative_collection(coll: Collection) -> Monomial | None:
    if len(coll) != coll.nvars:
        return None
    top = coll.lcm()
    if not all(e > 1 for e in top):
        return None
    if set(derivative_collection(top).monomials) != set(coll.monomials):
        return None
    return top


def binomial_upper_bound(m1: Monomial, m2: Monomial) -> int:
    """Upper bound for ``rk(m1 + m2)`` from the exact pair rank; not sharp in general."""
    verdict = pair_rank_same_support(m1, m2)
    if not verdict.is_exact:
        raise HypothesisError(f"{m1} and {m2} do not form a qualifying pair")
    return verdict.lower


def high_rank_pair(t: int, family: int) -> tuple[Monomial, Monomial]:
    """Ternary pair ``x0 x1^t x2^(t+g), x0 x1^(t+g) x2^t`` with gap ``g = family``."""
    if t < 1:
        raise ValueError("t must be positive")
    if family not in (1, 2):
        raise ValueError("family must be 1 or 2")
    return Monomial((1, t, t + family)), Monomial((1, t + family, t))


def high_rank_pair_formula(t: int, family: int) -> int:
    if t < 1:
        raise ValueError("t must be positive")
    if family == 1:
        return t * t + 4 * t + 3
    if family == 2:
        return t * t + 6 * t + 5
    raise ValueError("family must be 1 or 2")


def generic_ternary_pair_rank(d: int) -> int:
    """Simultaneous rank of two general ternary forms of degree ``d``.

    ``ceil(C(d+2, 2) / 2)`` except for cubics, where the expected secant
    variety is defective by one and the answer is 6.
    """
    if d < 2:
        raise ValueError("degree must be at least 2")
    if d == 3:
        return 6
    return -(-math.comb(d + 2, 2) // 2)


def simultaneous_rank(coll: Collection) -> RankVerdict:
    """Dispatch to the first rank formula whose hypotheses hold, else bounds."""
    coll = _coll(coll)
    _require_nonconstant(coll)
    if len(coll) == 1:
        return RankVerdict.exact(waring_rank(coll.monomials[0]), Justification.SINGLE_MONOMIAL)
    if check_free(coll):
        tag = Justification.SAME_SUPPORT_PAIR if len(coll) == 2 else Justification.FREE_COLLECTION
        return RankVerdict.exact(alternating_sum(coll), tag)
    if len(coll) == 2:
        verdict = pair_rank_different_support(*coll.monomials)
        if verdict.is_exact:
            return verdict
    top = _is_derivative_collection(coll)
    if top is not None:
        return RankVerdict.exact(waring_rank(top), Justification.DERIVATIVE_COLLECTION)
    verdict = bounds(coll)
    if verdict.lower == verdict.upper:
        return RankVerdict.exact(verdict.lower, Justification.BOUNDS_COINCIDE)
    return verdict
