"""Finite exterior algebra on six ordered anticommuting generators.

The generators, in canonical order, are zeta1, zeta2, zeta3, mu1, mu2,
omega.  Elements are sparse maps from monomials (subsets of generators,
stored as 6-bit masks) to coefficients in either the complex scalars or
complex matrices of one declared size.  Matrix coefficients are even:
they commute with the generators, so the Koszul sign depends only on
generator content, while coefficients themselves multiply in operand
order.

Left-derivative convention throughout: d_g removes g from a monomial
with sign (-1)^(number of generators preceding g in the monomial).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

import numpy as np

from .errors import OddBodyUnsupported, RingMismatch

NGEN = 6
GENERATOR_NAMES = ("zeta1", "zeta2", "zeta3", "mu1", "mu2", "omega")

SCALAR = ("scalar",)

# Coefficients this far below the element's own maximum are dropped;
# well under double precision, so genuine residuals are never masked.
PRUNE_REL = 1e-14


@dataclass(frozen=True, order=True)
class Generator:
    """One of the six anticommuting generators, identified by index."""

    index: int

    def __post_init__(self):
        if not 0 <= self.index < NGEN:
            raise ValueError(f"generator index {self.index} out of range")

    @property
    def name(self) -> str:
        return GENERATOR_NAMES[self.index]

    def __repr__(self) -> str:
        return self.name


ZETA1, ZETA2, ZETA3, MU1, MU2, OMEGA = (Generator(i) for i in range(NGEN))
ZETAS = (ZETA1, ZETA2, ZETA3)


@dataclass(frozen=True)
class Monomial:
    """A squarefree product of generators, stored as a bit mask."""

    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < (1 << NGEN):
            raise ValueError(f"monomial mask {self.mask} out of range")

    @classmethod
    def of(cls, *gens: Generator) -> Monomial:
        mask = 0
        for g in gens:
            if mask & (1 << g.index):
                raise ValueError(f"repeated generator {g}")
            mask |= 1 << g.index
        return cls(mask)

    @property
    def degree(self) -> int:
        return self.mask.bit_count()

    def generators(self) -> tuple[Generator, ...]:
        return tuple(Generator(i) for i in range(NGEN) if self.mask >> i & 1)

    def __repr__(self) -> str:
        if self.mask == 0:
            return "1"
        return "*".join(g.name for g in self.generators())


def _merge_sign(a: int, b: int) -> int:
    """Koszul sign for merging two monomial masks; 0 if they intersect."""
    if a & b:
        return 0
    swaps = 0
    rest = b
    while rest:
        i = (rest & -rest).bit_length() - 1
        swaps += (a >> (i + 1)).bit_count()
        rest &= rest - 1
    return -1 if swaps & 1 else 1


_SIGN = np.zeros((1 << NGEN, 1 << NGEN), dtype=np.int8)
for _a in range(1 << NGEN):
    for _b in range(1 << NGEN):
        _SIGN[_a, _b] = _merge_sign(_a, _b)


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    MIXED = "mixed"


MonomialKey = Union[Monomial, int, Iterable[Generator]]


def _as_mask(m: MonomialKey) -> int:
    if isinstance(m, Monomial):
        return m.mask
    if isinstance(m, int):
        return m
    return Monomial.of(*m).mask


class GrassmannElement:
    """Sparse exterior-algebra element over a scalar or matrix ring."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: tuple, terms: Mapping[int, object], prune: bool = True):
        self.ring = ring
        self.terms = dict(terms)
        if prune:
            self._prune()

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ring: tuple = SCALAR) -> GrassmannElement:
        return cls(ring, {}, prune=False)

    @classmethod
    def scalar(cls, value: complex) -> GrassmannElement:
        return cls(SCALAR, {0: complex(value)})

    @classmethod
    def from_generator(cls, g: Generator, coeff: complex = 1.0) -> GrassmannElement:
        return cls(SCALAR, {1 << g.index: complex(coeff)})

    @classmethod
    def from_terms(cls, terms: Mapping[MonomialKey, object],
                   ring: tuple = SCALAR) -> GrassmannElement:
        return cls(ring, {_as_mask(m): c for m, c in terms.items()})

    @classmethod
    def matrix_identity(cls, n: int) -> GrassmannElement:
        return cls(("matrix", n), {0: np.eye(n, dtype=complex)})

    # -- internals -----------------------------------------------------

    def _mag(self, c) -> float:
        if self.ring == SCALAR:
            return abs(c)
        return float(np.abs(c).max()) if c.size else 0.0

    def _prune(self) -> None:
        if not self.terms:
            return
        mags = {m: self._mag(c) for m, c in self.terms.items()}
        top = max(mags.values())
        cut = PRUNE_REL * top
        self.terms = {m: c for m, c in self.terms.items() if mags[m] > cut}

    def _check_ring(self, other: GrassmannElement) -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    # -- queries -------------------------------------------------------

    def coeff(self, m: MonomialKey):
        """Coefficient of a monomial (ring zero if absent)."""
        mask = _as_mask(m)
        if mask in self.terms:
            return self.terms[mask]
        if self.ring == SCALAR:
            return 0j
        return np.zeros((self.ring[1], self.ring[1]), dtype=complex)

    def max_abs(self) -> float:
        """Largest coefficient magnitude (max |entry| for matrices)."""
        if not self.terms:
            return 0.0
        return max(self._mag(c) for c in self.terms.values())

    def parity(self) -> Parity:
        degrees = {m.bit_count() & 1 for m in self.terms}
        if degrees <= {0}:
            return Parity.EVEN
        if degrees == {1}:
            return Parity.ODD
        return Parity.MIXED

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.max_abs() <= tol

    # -- algebra -------------------------------------------------------

    def __add__(self, other: GrassmannElement) -> GrassmannElement:
        self._check_ring(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return GrassmannElement(self.ring, terms)

    def __sub__(self, other: GrassmannElement) -> GrassmannElement:
        return self + (-1.0) * other

    def __neg__(self) -> GrassmannElement:
        return (-1.0) * self

    def __rmul__(self, c: complex) -> GrassmannElement:
        return GrassmannElement(self.ring, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other) -> GrassmannElement:
        if isinstance(other, GrassmannElement):
            return gmul(self, other)
        return other * self

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms):
            c = self.terms[m]
            cs = f"{c:.6g}" if self.ring == SCALAR else f"<{self.ring[1]}x{self.ring[1]}>"
            bits.append(f"({cs})*{Monomial(m)!r}")
        return " + ".join(bits)


# -- operation surface ------------------------------------------------


def gmul(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    """Bilinear product; generators anticommute, coefficients multiply
    in operand order."""
    a._check_ring(b)
    scalar = a.ring == SCALAR
    terms: dict[int, object] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign = _SIGN[ma, mb]
            if sign == 0:
                continue
            c = ca * cb if scalar else ca @ cb
            if sign < 0:
                c = -c
            key = ma | mb
            terms[key] = terms[key] + c if key in terms else c
    return GrassmannElement(a.ring, terms)


def gadd(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    return a + b


def gscale(c, a: GrassmannElement) -> GrassmannElement:
    """Left multiplication of every coefficient by a ring element."""
    if a.ring != SCALAR and isinstance(c, np.ndarray):
        return GrassmannElement(a.ring, {m: c @ v for m, v in a.terms.items()})
    return GrassmannElement(a.ring, {m: c * v for m, v in a.terms.items()})


def gderiv(a: GrassmannElement, g: Generator) -> GrassmannElement:
    """Left derivative with respect to one generator."""
    bit = 1 << g.index
    below = bit - 1
    terms: dict[int, object] = {}
    for m, c in a.terms.items():
        if not m & bit:
            continue
        sign = -1 if (m & below).bit_count() & 1 else 1
        terms[m ^ bit] = sign * c if sign < 0 else c
    return GrassmannElement(a.ring, terms)


def gexp(a: GrassmannElement) -> GrassmannElement:
    """Exponential of a scalar-ring element with even nilpotent part."""
    if a.ring != SCALAR:
        raise RingMismatch("gexp requires the scalar ring")
    body = a.terms.get(0, 0j)
    nil_terms = {m: c for m, c in a.terms.items() if m != 0}
    if any(m.bit_count() & 1 for m in nil_terms):
        raise OddBodyUnsupported("nilpotent part has odd-degree monomials")
    nil = GrassmannElement(SCALAR, nil_terms, prune=False)
    out = GrassmannElement.scalar(1.0)
    power = out
    for k in range(1, NGEN // 2 + 1):
        power = gmul(power, nil)
        if not power.terms:
            break
        out = out + (1.0 / math.factorial(k)) * power
    return cmath.exp(body) * out


def gcoeff(a: GrassmannElement, m: MonomialKey):
    return a.coeff(m)


def parity(a: GrassmannElement) -> Parity:
    return a.parity()
