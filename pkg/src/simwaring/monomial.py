"""Exact monomials over a fixed set of variables ``x0, ..., x{n-1}``.

A :class:`Monomial` is nothing more than an immutable exponent vector.  The
complex Waring rank of a single monomial has a closed form, implemented by
:func:`waring_rank`.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .errors import DimensionMismatch, HypothesisError, ParseError

__all__ = [
    "Monomial",
    "parse_monomial",
    "gcd",
    "lcm",
    "waring_rank",
    "min_positions",
]


@dataclass(frozen=True, order=True)
class Monomial:
    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(self.exponents)
        if not exps:
            raise ValueError("a monomial needs at least one variable")
        for e in exps:
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError(f"exponents must be integers, got {e!r}")
            if e < 0:
                raise ValueError(f"negative exponent {e}")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def constant(cls, nvars: int) -> Monomial:
        return cls((0,) * nvars)

    @classmethod
    def variable(cls, index: int, nvars: int, power: int = 1) -> Monomial:
        exps = [0] * nvars
        exps[index] = power
        return cls(tuple(exps))

    @property
    def nvars(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.exponents) if e > 0)

    def is_constant(self) -> bool:
        return self.degree == 0

    def divides(self, other: Monomial) -> bool:
        _check_same(self, other)
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: Monomial) -> Monomial:
        _check_same(self, other)
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: Monomial) -> Monomial:
        """Exact quotient; raises ``ValueError`` if ``other`` does not divide ``self``."""
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def __getitem__(self, i: int) -> int:
        return self.exponents[i]

    def __iter__(self):
        return iter(self.exponents)

    def __len__(self) -> int:
        return len(self.exponents)

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Monomial({render(self)!r}, nvars={self.nvars})"


def _check_same(*ms: Monomial) -> None:
    n = ms[0].nvars
    for m in ms[1:]:
        if m.nvars != n:
            raise DimensionMismatch(f"monomials in {n} and {m.nvars} variables")


def render(m: Monomial, var: str = "x") -> str:
    """Canonical text: ascending variable index, exponent 1 omitted, ``"1"`` for constants."""
    terms = []
    for i, e in enumerate(m.exponents):
        if e == 1:
            terms.append(f"{var}{i}")
        elif e > 1:
            terms.append(f"{var}{i}^{e}")
    return "*".join(terms) if terms else "1"


_TERM = re.compile(r"\s*x(\d+)\s*(?:\^\s*(-?\d+))?\s*$")
_BRACKET = re.compile(r"\s*\[(.*)\]\s*$")


def parse_monomial(text: str, nvars: int | None = None) -> Monomial:
    """Parse ``"x0*x1^3"`` or ``"[1,3]"`` into a :class:`Monomial`.

    Repeated variables add their exponents.  If ``nvars`` is omitted it is
    inferred from the bracket length or from the largest variable index.
    """
    if nvars is not None and nvars < 1:
        raise ParseError(f"nvars must be positive, got {nvars}")
    bracket = _BRACKET.match(text)
    if bracket:
        body = bracket.group(1).strip()
        if not body:
            raise ParseError(f"empty exponent list in {text!r}")
        try:
            exps = [int(tok) for tok in body.split(",")]
        except ValueError:
            raise ParseError(f"bad exponent list {text!r}") from None
        if any(e < 0 for e in exps):
            raise ParseError(f"negative exponent in {text!r}")
        if nvars is not None and len(exps) != nvars:
            raise ParseError(f"expected {nvars} exponents, got {len(exps)} in {text!r}")
        return Monomial(tuple(exps))

    if text.strip() == "1":
        if nvars is None:
            raise ParseError("cannot infer the number of variables of the constant 1")
        return Monomial.constant(nvars)

    powers: dict[int, int] = {}
    for chunk in text.split("*"):
        match = _TERM.match(chunk)
        if not match:
            raise ParseError(f"cannot parse term {chunk.strip()!r} in {text!r}")
        index = int(match.group(1))
        exp = 1 if match.group(2) is None else int(match.group(2))
        if exp < 0:
            raise ParseError(f"negative exponent in {text!r}")
        powers[index] = powers.get(index, 0) + exp
    size = max(powers) + 1 if nvars is None else nvars
    if max(powers) >= size:
        raise ParseError(f"variable x{max(powers)} out of range for {size} variables")
    exps = [0] * size
    for index, exp in powers.items():
        exps[index] = exp
    return Monomial(tuple(exps))


def gcd(*ms: Monomial) -> Monomial:
    """Componentwise minimum of exponents."""
    if not ms:
        raise ValueError("gcd of no monomials")
    _check_same(*ms)
    return Monomial(tuple(map(min, zip(*(m.exponents for m in ms)))))


def lcm(*ms: Monomial) -> Monomial:
    """Componentwise maximum of exponents."""
    if not ms:
        raise ValueError("lcm of no monomials")
    _check_same(*ms)
    return Monomial(tuple(map(max, zip(*(m.exponents for m in ms)))))


def gcd_all(ms: Iterable[Monomial]) -> Monomial:
    return reduce(gcd, ms)


def _nonconstant(m: Monomial) -> None:
    if m.is_constant():
        raise HypothesisError("the rank of the constant monomial is not defined")


def waring_rank(m: Monomial) -> int:
    """Complex Waring rank of a monomial.

    With ``S`` the nonzero exponents, the rank is ``prod(a + 1 for a in S)``
    divided by ``min(S) + 1``.  The quotient is always exact.
    """
    _nonconstant(m)
    plus_one = [e + 1 for e in m.exponents if e > 0]
    return math.prod(plus_one) // min(plus_one)


def min_positions(m: Monomial) -> frozenset[int]:
    """Indices of the smallest nonzero exponent."""
    _nonconstant(m)
    low = min(e for e in m.exponents if e > 0)
    return frozenset(i for i, e in enumerate(m.exponents) if e == low)


def as_monomials(items: Sequence[Monomial | str], nvars: int | None = None) -> list[Monomial]:
    return [m if isinstance(m, Monomial) else parse_monomial(m, nvars) for m in items]
