"""Real quaternions q = w + x i + y j + z k stored as four doubles.

The complex numbers are identified with the quaternions ``w + x i``; every
quaternion splits as ``q = a + b j`` with ``a = w + x i`` and ``b = y + z i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real


@dataclass(frozen=True, slots=True)
class Quaternion:
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def coerce(cls, value) -> "Quaternion":
        """Convert reals, complex numbers and 4-sequences to a Quaternion."""
        if isinstance(value, Quaternion):
            return value
        if isinstance(value, Real):
            return cls(float(value))
        if isinstance(value, complex):
            return cls(value.real, value.imag)
        w, x, y, z = value
        return cls(float(w), float(x), float(y), float(z))

    @classmethod
    def from_complex_pair(cls, a: complex, b: complex) -> "Quaternion":
        """Inverse of :func:`complex_pair`: returns ``a + b j``."""
        a, b = complex(a), complex(b)
        return cls(a.real, a.imag, b.real, b.imag)

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        o = _as_quaternion(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_quaternion(other)
        if o is None:
            return NotImplemented
        return Quaternion(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)

    def __rsub__(self, other):
        o = _as_quaternion(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        o = _as_quaternion(other)
        if o is None:
            return NotImplemented
        return mul(self, o)

    def __rmul__(self, other):
        o = _as_quaternion(other)
        if o is None:
            return NotImplemented
        return mul(o, self)

    def __truediv__(self, other):
        # right division: self * other^{-1}
        o = _as_quaternion(other)
        if o is None:
            return NotImplemented
        return mul(self, inv(o))

    def __abs__(self) -> float:
        return math.hypot(self.w, self.x, self.y, self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def inv(self) -> "Quaternion":
        return inv(self)

    @property
    def real(self) -> float:
        return self.w

    def is_real(self, tol: float = 0.0) -> bool:
        return max(abs(self.x), abs(self.y), abs(self.z)) <= tol

    def to_list(self) -> list[float]:
        return [self.w, self.x, self.y, self.z]

    def __iter__(self):
        return iter((self.w, self.x, self.y, self.z))

    def __repr__(self) -> str:
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


def _as_quaternion(value):
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, (Real, complex)):
        return Quaternion.coerce(value)
    return None


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p q``."""
    return Quaternion(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )


def conj(q: Quaternion) -> Quaternion:
    return q.conj()


def inv(q: Quaternion) -> Quaternion:
    """Multiplicative inverse ``conj(q) / |q|^2``.

    Raises
    ------
    ZeroDivisionError
        If ``q`` is zero.
    """
    n2 = q.norm2()
    if n2 == 0.0:
        raise ZeroDivisionError("quaternion inverse of zero")
    return Quaternion(q.w / n2, -q.x / n2, -q.y / n2, -q.z / n2)


def complex_pair(q: Quaternion) -> tuple[complex, complex]:
    """Split ``q = a + b j`` into its two complex coordinates ``(a, b)``."""
    return complex(q.w, q.x), complex(q.y, q.z)
