"""Bicomplex numbers and their idempotent representation.

A bicomplex number is ``w = z1 + z2*i2`` with ``z1, z2`` in C(i1), or in real
coordinates ``a + b*i1 + c*i2 + d*j`` where ``z1 = a + b*i1`` and
``z2 = c + d*i1``.  Python ``complex`` plays the role of C(i1) throughout, so
``1j`` is ``i1``.

Every ``w`` also has a unique idempotent form ``w = p1*e1 + p2*e2`` with
``e1 = (1 + j)/2``, ``e2 = (1 - j)/2``, ``p1 = z1 - z2*i1`` and
``p2 = z1 + z2*i1``.  In that form the ring operations act componentwise.

>>> to_idempotent(Bicomplex.from_parts(0.0635, 0.3725, 0.3725, 0.1865))
IdempotentPair(p1=(0.25+0j), p2=(-0.123+0.745j))
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from numbers import Number
from typing import NamedTuple

import numpy as np

__all__ = [
    "NonFiniteError",
    "Bicomplex",
    "IdempotentPair",
    "Discus",
    "ONE",
    "I1",
    "I2",
    "J",
    "E1",
    "E2",
    "csqrt",
    "to_idempotent",
    "from_idempotent",
    "add",
    "mul",
    "power",
    "norm",
    "sqrt_branches",
    "is_null_cone",
    "is_null_cone_eps",
    "ball_contains",
    "discus_contains",
    "idempotent_arrays",
    "from_idempotent_arrays",
]


class NonFiniteError(ArithmeticError):
    """Raised when a bicomplex value would hold a NaN or an infinity."""


def csqrt(z: complex) -> complex:
    """Principal complex square root with a fixed branch cut.

    The result has non-negative real part; on the negative real axis the
    root is ``+i*sqrt(x)`` regardless of the sign of a zero imaginary part.
    """
    z = complex(z)
    return cmath.sqrt(complex(z.real, z.imag + 0.0))


@dataclass(frozen=True, slots=True)
class Bicomplex:
    """Immutable bicomplex number ``z1 + z2*i2``."""

    z1: complex = 0j
    z2: complex = 0j

    def __post_init__(self):
        z1 = complex(self.z1)
        z2 = complex(self.z2)
        if not (cmath.isfinite(z1) and cmath.isfinite(z2)):
            raise NonFiniteError(f"non-finite bicomplex components ({z1!r}, {z2!r})")
        object.__setattr__(self, "z1", z1)
        object.__setattr__(self, "z2", z2)

    @classmethod
    def from_parts(cls, a: float, b: float = 0.0, c: float = 0.0, d: float = 0.0) -> Bicomplex:
        """Build ``a + b*i1 + c*i2 + d*j``."""
        return cls(complex(a, b), complex(c, d))

    @classmethod
    def coerce(cls, x) -> Bicomplex:
        if isinstance(x, Bicomplex):
            return x
        if isinstance(x, Number):
            return cls(complex(x))
        raise TypeError(f"cannot interpret {type(x).__name__} as a bicomplex number")

    @property
    def a(self) -> float:
        return self.z1.real

    @property
    def b(self) -> float:
        return self.z1.imag

    @property
    def c(self) -> float:
        return self.z2.real

    @property
    def d(self) -> float:
        return self.z2.imag

    @property
    def parts(self) -> tuple[float, float, float, float]:
        return (self.z1.real, self.z1.imag, self.z2.real, self.z2.imag)

    def __str__(self):
        a, b, c, d = self.parts
        return f"{a!r} + {b!r}i1 + {c!r}i2 + {d!r}j"

    def __add__(self, other):
        try:
            other = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return _checked(self.z1 - other.z1, self.z2 - other.z2)

    def __rsub__(self, other):
        try:
            other = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __neg__(self):
        return Bicomplex(-self.z1, -self.z2)

    def __mul__(self, other):
        try:
            other = Bicomplex.coerce(other)
        except TypeError:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return power(self, n)

    def __abs__(self):
        return norm(self)


class IdempotentPair(NamedTuple):
    """Coefficients of ``e1`` and ``e2`` in the idempotent form."""

    p1: complex
    p2: complex


ONE = Bicomplex(1)
I1 = Bicomplex(1j)
I2 = Bicomplex(0, 1)
J = Bicomplex(0, 1j)
E1 = Bicomplex.from_parts(0.5, 0, 0, 0.5)
E2 = Bicomplex.from_parts(0.5, 0, 0, -0.5)


def _checked(z1: complex, z2: complex) -> Bicomplex:
    if not (cmath.isfinite(z1) and cmath.isfinite(z2)):
        raise NonFiniteError("bicomplex operation overflowed to a non-finite value")
    return Bicomplex(z1, z2)


def to_idempotent(w: Bicomplex) -> IdempotentPair:
    w = Bicomplex.coerce(w)
    t = w.z2 * 1j
    return IdempotentPair(w.z1 - t, w.z1 + t)


def from_idempotent(p) -> Bicomplex:
    """Recombine ``p1*e1 + p2*e2`` into ``z1 + z2*i2``."""
    p1, p2 = complex(p[0]), complex(p[1])
    return _checked((p1 + p2) / 2, 1j * (p1 - p2) / 2)


def add(u: Bicomplex, v: Bicomplex) -> Bicomplex:
    return _checked(u.z1 + v.z1, u.z2 + v.z2)


def mul(u: Bicomplex, v: Bicomplex) -> Bicomplex:
    # i2*i2 = -1 in the z1 + z2*i2 expansion
    return _checked(u.z1 * v.z1 - u.z2 * v.z2, u.z1 * v.z2 + u.z2 * v.z1)


def power(u: Bicomplex, n: int) -> Bicomplex:
    """``u**n`` for whole ``n``, computed on the idempotent components."""
    if n < 0:
        raise ValueError("power requires a whole-number exponent")
    if n == 0:
        return ONE
    p1, p2 = to_idempotent(u)
    try:
        q1, q2 = p1**n, p2**n
    except OverflowError as exc:
        raise NonFiniteError("bicomplex power overflowed") from exc
    return from_idempotent((q1, q2))


def norm(w: Bicomplex) -> float:
    """Euclidean norm of ``(a, b, c, d)``."""
    return math.hypot(*w.parts)


def sqrt_branches(w: Bicomplex) -> list[Bicomplex]:
    """All square roots of ``w``.

    Roots are ordered by branch pair ``(s1, s2)`` lexicographically, where
    ``s = 0`` picks the principal complex root of a projection and ``s = 1``
    its negation.  A vanishing projection has a single root, so the list has
    4, 2 or 1 entries depending on how many projections are zero.
    """
    p1, p2 = to_idempotent(w)
    r1, r2 = csqrt(p1), csqrt(p2)
    roots1 = [r1] if p1 == 0 else [r1, -r1]
    roots2 = [r2] if p2 == 0 else [r2, -r2]
    return [from_idempotent((x, y)) for x in roots1 for y in roots2]


def is_null_cone(w: Bicomplex) -> bool:
    """True when ``w`` is a zero divisor (a projection is exactly zero)."""
    p1, p2 = to_idempotent(w)
    return p1 == 0 or p2 == 0


def is_null_cone_eps(w: Bicomplex, tol: float = 1e-14) -> bool:
    p1, p2 = to_idempotent(w)
    return abs(p1) <= tol or abs(p2) <= tol


@dataclass(frozen=True)
class Discus:
    """Open discus ``B(P1(center), r1) x_e B(P2(center), r2)``."""

    center: Bicomplex
    r1: float
    r2: float

    def __post_init__(self):
        if not (self.r1 > 0 and self.r2 > 0):
            raise ValueError(f"discus radii must be positive, got r1={self.r1}, r2={self.r2}")
        object.__setattr__(self, "center", Bicomplex.coerce(self.center))


def ball_contains(center: Bicomplex, r: float, w: Bicomplex) -> bool:
    if not r > 0:
        raise ValueError(f"ball radius must be positive, got {r}")
    return norm(Bicomplex.coerce(w) - center) < r


def discus_contains(d: Discus, w: Bicomplex) -> bool:
    q1, q2 = to_idempotent(d.center)
    p1, p2 = to_idempotent(w)
    return abs(p1 - q1) < d.r1 and abs(p2 - q2) < d.r2


# Array forms used by the point-cloud code.  Points are (N, 4) float arrays
# holding (a, b, c, d) per row.

def idempotent_arrays(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Projections ``(P1, P2)`` of an ``(N, 4)`` array of bicomplex points."""
    points = np.asarray(points, dtype=float).reshape(-1, 4)
    z1 = points[:, 0] + 1j * points[:, 1]
    # z2*i1 = -d + c*i1
    t = -points[:, 3] + 1j * points[:, 2]
    return z1 - t, z1 + t


def from_idempotent_arrays(p1, p2) -> np.ndarray:
    """Inverse of :func:`idempotent_arrays`; returns an ``(N, 4)`` array."""
    p1 = np.asarray(p1, dtype=complex).ravel()
    p2 = np.asarray(p2, dtype=complex).ravel()
    s = (p1 + p2) / 2
    h = (p1 - p2) / 2
    out = np.empty((p1.size, 4))
    out[:, 0] = s.real
    out[:, 1] = s.imag
    # z2 = i1*h = -Im(h) + Re(h)*i1
    out[:, 2] = -h.imag
    out[:, 3] = h.real
    return out
