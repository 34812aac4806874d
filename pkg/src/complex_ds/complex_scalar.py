"""Cartesian complex scalars with explicit component arithmetic.

Every mass value and amplitude in the package is carried by :class:`Complex`.
The arithmetic is written out component-wise rather than delegated to the
builtin ``complex`` so the formulas are auditable and non-finite values are
rejected at construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

#: Hard guard on the divisor magnitude in :func:`c_div`.
EPS_DIV = 1e-300


class DivisionByNearZero(ZeroDivisionError):
    """Raised when dividing by a complex number with magnitude <= EPS_DIV."""


@dataclass(frozen=True, slots=True)
class Complex:
    re: float
    im: float = 0.0

    def __post_init__(self):
        re, im = float(self.re), float(self.im)
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ValueError(f"non-finite complex value ({self.re}, {self.im})")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @classmethod
    def of(cls, value) -> "Complex":
        """Coerce a ``Complex``, builtin ``complex`` or real number."""
        if isinstance(value, Complex):
            return value
        if isinstance(value, complex):
            return cls(value.real, value.imag)
        return cls(float(value), 0.0)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __add__(self, other):
        return c_add(self, Complex.of(other))

    __radd__ = __add__

    def __sub__(self, other):
        return c_sub(self, Complex.of(other))

    def __rsub__(self, other):
        return c_sub(Complex.of(other), self)

    def __mul__(self, other):
        return c_mul(self, Complex.of(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return c_div(self, Complex.of(other))

    def __rtruediv__(self, other):
        return c_div(Complex.of(other), self)

    def __neg__(self):
        return Complex(-self.re, -self.im)

    def __abs__(self) -> float:
        return c_abs(self)

    def conjugate(self) -> "Complex":
        return c_conj(self)

    def __str__(self) -> str:
        sign = "-" if self.im < 0 else "+"
        return f"{self.re:.6f} {sign} {abs(self.im):.6f}i"


ZERO = Complex(0.0, 0.0)
ONE = Complex(1.0, 0.0)


def c_add(z1: Complex, z2: Complex) -> Complex:
    return Complex(z1.re + z2.re, z1.im + z2.im)


def c_sub(z1: Complex, z2: Complex) -> Complex:
    return Complex(z1.re - z2.re, z1.im - z2.im)


def c_mul(z1: Complex, z2: Complex) -> Complex:
    return Complex(z1.re * z2.re - z1.im * z2.im, z1.re * z2.im + z2.re * z1.im)


def c_div(z1: Complex, z2: Complex) -> Complex:
    """Quotient ``z1 / z2``.

    Raises :class:`DivisionByNearZero` when ``|z2| <= EPS_DIV``. Callers that
    need a looser singularity threshold must check it themselves.
    """
    if c_abs(z2) <= EPS_DIV:
        raise DivisionByNearZero(f"divisor magnitude {c_abs(z2)!r} <= {EPS_DIV}")
    # scale by the larger component so x2^2 + y2^2 cannot underflow
    scale = max(abs(z2.re), abs(z2.im))
    x1, y1 = z1.re / scale, z1.im / scale
    x2, y2 = z2.re / scale, z2.im / scale
    denom = x2 * x2 + y2 * y2
    return Complex((x1 * x2 + y1 * y2) / denom, (x2 * y1 - x1 * y2) / denom)


def c_abs(z: Complex) -> float:
    # hypot returns |x| exactly when y == 0
    return math.hypot(z.re, z.im)


def c_abs_sq(z: Complex) -> float:
    return z.re * z.re + z.im * z.im


def c_conj(z: Complex) -> Complex:
    return Complex(z.re, -z.im)
