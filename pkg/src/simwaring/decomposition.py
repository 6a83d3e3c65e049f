"""Explicit simultaneous power-sum decompositions of free collections.

For every non-base variable ``x_i`` the distinct exponents ``e_1 < e_2 < ...``
it takes across the collection are turned into nested root sets
(:class:`RootChain`).  The set for ``e_1`` is the ``(e_1+1)``-th roots of
unity.  A gap of 1 adds the root 0; a gap ``g >= c + 1`` adds ``2^s`` times
the ``g``-th roots of unity, with ``s`` counting such gaps along the chain.
Each monomial then gets the Cartesian product of its root sets, and the union
over the collection is a minimal apolar point set.

Root bookkeeping is exact (:class:`SymbolicRoot`); only the final coefficient
solve is done in floating point.
"""
from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .errors import CapacityError, HypothesisError
from .ideal import degree_monomials
from .monomial import Monomial, gcd, waring_rank
from .simrank import Collection, _free_base, _is_derivative_collection, alternating_sum, check_free, lower_bound

__all__ = [
    "SymbolicRoot",
    "RootChain",
    "ApolarScheme",
    "Decomposition",
    "build_root_chain",
    "construct_apolar_scheme",
    "materialize",
    "expand_power",
    "power_matrix",
    "solve_coefficients",
    "verify_decomposition",
    "decompose",
    "scheme_for",
    "decomposition_to_json",
    "DEFAULT_TOL",
    "DEFAULT_MAX_POINTS",
]

DEFAULT_TOL = 1e-8
DEFAULT_MAX_POINTS = 10**5


@dataclass(frozen=True)
class SymbolicRoot:
    """Either 0 or ``2^s * exp(2 pi i * angle)`` with ``angle = k/m`` in ``[0, 1)``."""

    radius_exp: int | None
    angle: Fraction = Fraction(0)

    def __post_init__(self):
        if self.radius_exp is None:
            object.__setattr__(self, "angle", Fraction(0))
        else:
            if self.radius_exp < 0:
                raise ValueError("radius exponent must be non-negative")
            object.__setattr__(self, "angle", Fraction(self.angle) % 1)

    @classmethod
    def zero(cls) -> SymbolicRoot:
        return cls(None)

    @classmethod
    def unity(cls, k: int, m: int, s: int = 0) -> SymbolicRoot:
        if m < 1:
            raise ValueError("root order must be positive")
        return cls(s, Fraction(k, m))

    @property
    def is_zero(self) -> bool:
        return self.radius_exp is None

    @property
    def order(self) -> int:
        return self.angle.denominator

    @property
    def index(self) -> int:
        return self.angle.numerator

    def sort_key(self) -> tuple:
        if self.is_zero:
            return (-1, Fraction(0))
        return (self.radius_exp, self.angle)

    def __lt__(self, other: SymbolicRoot) -> bool:
        return self.sort_key() < other.sort_key()

    def value(self) -> complex:
        if self.is_zero:
            return 0j
        r = float(2**self.radius_exp)
        quarter = self.angle * 4
        if quarter.denominator == 1:
            # exact on the axes
            return r * (1, 1j, -1, -1j)[int(quarter)]
        return r * cmath.exp(2j * math.pi * float(self.angle))

    def descriptor(self) -> dict:
        if self.is_zero:
            return {"kind": "zero"}
        return {"kind": "root", "radius_exp": self.radius_exp, "k": self.index, "m": self.order}

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        scale = "" if self.radius_exp == 0 else f"2^{self.radius_exp}*"
        return f"{scale}e(2pi*{self.index}/{self.order})"


def roots_of_unity(m: int, s: int = 0) -> tuple[SymbolicRoot, ...]:
    return tuple(SymbolicRoot.unity(k, m, s) for k in range(m))


ONE = SymbolicRoot.unity(0, 1)


@dataclass(frozen=True)
class RootChain:
    variable: int
    sets: dict[int, tuple[SymbolicRoot, ...]]

    def __getitem__(self, exponent: int) -> tuple[SymbolicRoot, ...]:
        return self.sets[exponent]


def build_root_chain(exponents: Sequence[int], c: int, variable: int = 0) -> RootChain:
    """Nested root sets of sizes ``e + 1`` for the distinct exponents ``e``."""
    chain = sorted(set(exponents))
    if not chain:
        raise ValueError("empty exponent chain")
    if c < 1:
        raise ValueError("base exponent must be positive")
    if chain[0] < c:
        raise HypothesisError(f"exponent {chain[0]} is below the base exponent {c}")
    gaps = [b - a for a, b in zip(chain, chain[1:])]
    if gaps.count(1) > 1:
        raise HypothesisError(f"chain {chain} has more than one gap equal to 1")
    if any(1 < g <= c for g in gaps):
        raise HypothesisError(f"chain {chain} has a gap in 2..{c}")

    current = list(roots_of_unity(chain[0] + 1))
    sets = {chain[0]: tuple(current)}
    step = 0
    for e, gap in zip(chain[1:], gaps):
        if gap == 1:
            current.append(SymbolicRoot.zero())
        else:
            step += 1
            current.extend(roots_of_unity(gap, step))
        sets[e] = tuple(current)
    return RootChain(variable, sets)


@dataclass(frozen=True)
class ApolarScheme:
    """Affine points (1 at the base coordinate) with per-monomial membership."""

    nvars: int
    base: int
    points: tuple[tuple[SymbolicRoot, ...], ...]
    members: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.points)

    def subset(self, indices: Sequence[int]) -> frozenset[int]:
        return frozenset.intersection(*(frozenset(self.members[j]) for j in indices))

    def without_point(self, k: int) -> ApolarScheme:
        """Copy with point ``k`` removed; memberships are renumbered."""
        remap = {old: new for new, old in enumerate(i for i in range(len(self.points)) if i != k)}
        members = tuple(tuple(remap[p] for p in mem if p != k) for mem in self.members)
        points = tuple(p for i, p in enumerate(self.points) if i != k)
        return ApolarScheme(self.nvars, self.base, points, members)


def _scheme_base(coll: Collection):
    base = _free_base(coll)
    if base is None:
        raise HypothesisError(f"{coll} is not a free collection; no construction is known")
    return base


def construct_apolar_scheme(coll: Collection, max_points: int = DEFAULT_MAX_POINTS) -> ApolarScheme:
    """Minimal apolar point set for a free collection."""
    base = _scheme_base(coll)
    expected = alternating_sum(coll)
    if expected > max_points:
        raise CapacityError(f"scheme would have {expected} points, cap is {max_points}")
    others = [i for i in range(coll.nvars) if i != base.index]
    chains = {i: build_root_chain([m[i] for m in coll], base.c, i) for i in others}

    per_monomial = []
    for m in coll:
        factors = [chains[i][m[i]] if i != base.index else (ONE,) for i in range(coll.nvars)]
        per_monomial.append(list(product(*factors)))
    union = sorted({p for pts in per_monomial for p in pts}, key=lambda p: tuple(r.sort_key() for r in p))
    index = {p: k for k, p in enumerate(union)}
    members = tuple(tuple(sorted(index[p] for p in pts)) for pts in per_monomial)
    scheme = ApolarScheme(coll.nvars, base.index, tuple(union), members)
    if len(scheme) != expected:
        raise AssertionError(f"constructed {len(scheme)} points, expected {expected}")
    return scheme


def materialize(scheme: ApolarScheme, dtype=np.complex128) -> np.ndarray:
    """Points as an ``(npoints, nvars)`` complex array."""
    return np.array([[r.value() for r in p] for p in scheme.points], dtype=dtype).reshape(len(scheme), scheme.nvars)


def _basis(nvars: int, d: int) -> list[tuple[int, ...]]:
    return list(degree_monomials(nvars, d))


def _multinomials(basis: Sequence[tuple[int, ...]], d: int) -> np.ndarray:
    fd = math.factorial(d)
    return np.array([fd // math.prod(math.factorial(a) for a in alpha) for alpha in basis], dtype=float)


def power_matrix(points: np.ndarray, d: int) -> np.ndarray:
    """Column ``k`` holds the coefficients of ``(p_k . x)^d`` in the lex-descending basis."""
    points = np.atleast_2d(points)
    basis = np.array(_basis(points.shape[1], d))
    mono = np.prod(points[None, :, :] ** basis[:, None, :], axis=2)
    return _multinomials(basis.tolist(), d)[:, None] * mono


def expand_power(point: Sequence[complex], d: int) -> np.ndarray:
    if d < 1:
        raise ValueError("degree must be positive")
    return power_matrix(np.asarray(point, dtype=complex)[None, :], d)[:, 0]


def monomial_vector(m: Monomial) -> np.ndarray:
    basis = _basis(m.nvars, m.degree)
    vec = np.zeros(len(basis), dtype=complex)
    vec[basis.index(m.exponents)] = 1.0
    return vec


def _relative_residual(A: np.ndarray, lam: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(A @ lam - b)) / np.max(np.abs(b)))


def _lstsq(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    scale = np.linalg.norm(A, axis=0)
    scale[scale == 0] = 1.0
    lam, *_ = np.linalg.lstsq(A / scale, b, rcond=None)
    return lam / scale


@dataclass
class Decomposition:
    scheme: ApolarScheme
    monomials: tuple[Monomial, ...]
    degrees: tuple[int, ...]
    coefficients: np.ndarray  # (nmonomials, npoints)
    residuals: tuple[float, ...]
    tol: float
    claimed_rank: int
    restricted: tuple[bool, ...] = field(default=())

    @property
    def verified(self) -> bool:
        return all(r <= self.tol for r in self.residuals) and len(self.scheme) == self.claimed_rank

    @property
    def max_residual(self) -> float:
        return max(self.residuals)


def _solve_one(pts: np.ndarray, members: Sequence[int], m: Monomial, tol: float):
    d = m.degree
    b = monomial_vector(m)
    lam = np.zeros(len(pts), dtype=complex)
    if members:
        idx = np.asarray(members)
        A = power_matrix(pts[idx], d)
        sub = _lstsq(A, b)
        res = _relative_residual(A, sub, b)
        if res <= tol:
            lam[idx] = sub
            return lam, res, True
    A = power_matrix(pts, d)
    lam = _lstsq(A, b)
    return lam, _relative_residual(A, lam, b), False


def solve_coefficients(
    scheme: ApolarScheme,
    coll: Collection,
    tol: float = DEFAULT_TOL,
    members: Sequence[Sequence[int]] | None = None,
    threads: int = 1,
    claimed_rank: int | None = None,
) -> Decomposition:
    """Least-squares coefficients ``lambda[j, k]`` with ``M_j = sum_k lambda[j, k] L_k^deg(M_j)``.

    Each monomial is first solved on its own point subset and falls back to
    the whole scheme if that leaves a residual above ``tol``.
    """
    pts = materialize(scheme)
    if members is None:
        members = scheme.members if len(scheme.members) == len(coll) else [()] * len(coll)
    jobs = list(zip(coll.monomials, members))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda job: _solve_one(pts, job[1], job[0], tol), jobs))
    else:
        results = [_solve_one(pts, mem, m, tol) for m, mem in jobs]
    coeffs = np.array([r[0] for r in results]).reshape(len(coll), len(scheme))
    return Decomposition(
        scheme=scheme,
        monomials=coll.monomials,
        degrees=tuple(m.degree for m in coll),
        coefficients=coeffs,
        residuals=tuple(r[1] for r in results),
        tol=tol,
        claimed_rank=len(scheme) if claimed_rank is None else claimed_rank,
        restricted=tuple(r[2] for r in results),
    )


def _expand_sum(points: np.ndarray, weights: np.ndarray, d: int) -> dict[tuple[int, ...], complex]:
    # Multiply the linear forms out one factor at a time (no multinomial table).
    n = points.shape[1]
    basis = [(0,) * n]
    coef = weights.astype(complex)[None, :]
    for e in range(d):
        nxt_basis = _basis(n, e + 1)
        where = {alpha: k for k, alpha in enumerate(nxt_basis)}
        nxt = np.zeros((len(nxt_basis), points.shape[0]), dtype=complex)
        for i in range(n):
            target = [where[a[:i] + (a[i] + 1,) + a[i + 1 :]] for a in basis]
            np.add.at(nxt, target, coef * points[:, i])
        basis, coef = nxt_basis, nxt
    sums = coef.sum(axis=1)
    return {alpha: complex(v) for alpha, v in zip(basis, sums)}


def verify_decomposition(dec: Decomposition, coll: Collection, tol: float = DEFAULT_TOL) -> bool:
    """Recompute every coefficient from scratch and compare with each monomial."""
    if tuple(coll.monomials) != tuple(dec.monomials):
        return False
    if len(dec.scheme) != dec.claimed_rank:
        return False
    pts = materialize(dec.scheme)
    for j, m in enumerate(coll):
        poly = _expand_sum(pts, dec.coefficients[j], m.degree)
        err = max(abs(v - (1.0 if alpha == m.exponents else 0.0)) for alpha, v in poly.items())
        if not err <= tol:
            return False
    return True


def scheme_for(coll: Collection, max_points: int = DEFAULT_MAX_POINTS) -> tuple[ApolarScheme, bool]:
    """Apolar scheme for a free collection, or for a derivative collection via its parent.

    The flag says whether the scheme's memberships line up with ``coll``.
    """
    if check_free(coll):
        return construct_apolar_scheme(coll, max_points=max_points), True
    parent = _is_derivative_collection(coll)
    if parent is not None:
        parent_coll = Collection((parent,))
        if check_free(parent_coll):
            return construct_apolar_scheme(parent_coll, max_points=max_points), False
    raise HypothesisError(f"{coll} is neither free nor a derivative collection; no construction is known")


def decompose(
    coll: Collection,
    tol: float = DEFAULT_TOL,
    max_points: int = DEFAULT_MAX_POINTS,
    threads: int = 1,
) -> Decomposition:
    """Scheme construction plus coefficient solve; the claimed rank is the lower bound."""
    scheme, aligned = scheme_for(coll, max_points=max_points)
    members = None if aligned else [()] * len(coll)
    return solve_coefficients(scheme, coll, tol=tol, members=members, threads=threads, claimed_rank=lower_bound(coll))


def decomposition_to_json(dec: Decomposition, justification: str | None = None) -> dict:
    pts = materialize(dec.scheme)
    return {
        "nvars": dec.scheme.nvars,
        "base_variable": dec.scheme.base,
        "monomials": [str(m) for m in dec.monomials],
        "degrees": list(dec.degrees),
        "rank": str(dec.claimed_rank),
        "justification": justification,
        "verified": dec.verified,
        "tol": dec.tol,
        "points": [
            {
                "coordinates": [{"re": float(z.real), "im": float(z.imag)} for z in row],
                "symbolic": [r.descriptor() for r in p],
            }
            for row, p in zip(pts, dec.scheme.points)
        ],
        "members": [list(mem) for mem in dec.scheme.members],
        "coefficients": [
            [{"re": float(z.real), "im": float(z.imag)} for z in row] for row in dec.coefficients
        ],
        "residuals": list(dec.residuals),
    }


def individual_rank_check(scheme: ApolarScheme, coll: Collection) -> bool:
    """Every subset intersection has the size of the rank of the subset gcd."""
    for k in range(1, len(coll) + 1):
        for subset in combinations(range(len(coll)), k):
            g = gcd(*(coll.monomials[j] for j in subset))
            if len(scheme.subset(subset)) != waring_rank(g):
                return False
    return True
