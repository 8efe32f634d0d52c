"""Dense quaternionic matrices and their complex adjoint embedding.

A :class:`QMatrix` stores an ``m x n`` matrix as a read-only float array of
shape ``(m, n, 4)`` holding the ``(w, x, y, z)`` components of each entry.
Vectors are ``n x 1`` matrices. Matrices act on the left of column vectors and
scalars act on the right, so ``A (v q) = (A v) q``.

Writing ``A = A1 + A2 j`` with complex ``A1, A2``, the embedding is

    embed(A) = [[A1, A2], [-conj(A2), conj(A1)]]

and a quaternionic vector ``v = v1 + v2 j`` corresponds to the complex vector
``[v1; -conj(v2)]``, so that ``embed(A) @ vector_to_complex(v)`` equals
``vector_to_complex(A v)``.
"""

from __future__ import annotations

from numbers import Real

import numpy as np

from .errors import ContractViolation
from .quaternion import Quaternion


# L(p) with p q = L(p) @ q, as gather indices into p and signs
_L_IDX = np.array([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])
_L_SIGN = np.array(
    [[1.0, -1.0, -1.0, -1.0], [1.0, 1.0, -1.0, 1.0], [1.0, 1.0, 1.0, -1.0], [1.0, -1.0, 1.0, 1.0]]
)


def _qmul_arrays(a, b):
    """Matrix product of component stacks ``(m, l, 4) x (l, n, 4)``.

    Each entry of ``a`` is replaced by its 4x4 real left-multiplication
    matrix, turning the quaternionic product into one real matmul.
    """
    m, l = a.shape[0], a.shape[1]
    n = b.shape[1]
    La = (a[..., _L_IDX] * _L_SIGN).transpose(0, 2, 1, 3).reshape(4 * m, 4 * l)
    Bf = b.transpose(0, 2, 1).reshape(4 * l, n)
    return (La @ Bf).reshape(m, 4, n).transpose(0, 2, 1)


def _scalar_mul(a, q, right=True):
    """Entrywise ``a q`` (right) or ``q a`` (left) for a scalar quaternion."""
    q = np.asarray(q.to_list(), dtype=float)
    # a right/left scalar is a 1x1 matrix product broadcast over entries
    p0, p1, p2, p3 = (a[..., r] for r in range(4))
    s0, s1, s2, s3 = q
    if not right:
        # q a = conj(conj(a) conj(q))
        out = _scalar_mul(a * _CONJ, Quaternion(s0, -s1, -s2, -s3), right=True)
        return out * _CONJ
    out = np.empty_like(a)
    out[..., 0] = p0 * s0 - p1 * s1 - p2 * s2 - p3 * s3
    out[..., 1] = p0 * s1 + p1 * s0 + p2 * s3 - p3 * s2
    out[..., 2] = p0 * s2 - p1 * s3 + p2 * s0 + p3 * s1
    out[..., 3] = p0 * s3 + p1 * s2 - p2 * s1 + p3 * s0
    return out


_CONJ = np.array([1.0, -1.0, -1.0, -1.0])


class QMatrix:
    """Immutable dense matrix of quaternions."""

    __slots__ = ("_data",)
    __array_priority__ = 1000  # keep numpy scalars from hijacking operators

    def __init__(self, data):
        arr = np.array(data, dtype=float)
        if arr.ndim != 3 or arr.shape[2] != 4:
            raise ContractViolation(
                f"QMatrix data must have shape (rows, cols, 4), got {arr.shape}"
            )
        if arr.shape[0] == 0 and arr.shape[1] == 0:
            raise ContractViolation("QMatrix needs at least one dimension")
        arr.setflags(write=False)
        self._data = arr

    # construction -----------------------------------------------------------

    @classmethod
    def _wrap(cls, arr):
        obj = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=float)
        arr.setflags(write=False)
        obj._data = arr
        return obj

    @classmethod
    def from_components(cls, w, x=None, y=None, z=None) -> "QMatrix":
        w = np.atleast_2d(np.asarray(w, dtype=float))
        parts = [w] + [
            np.zeros_like(w) if c is None else np.broadcast_to(np.asarray(c, float), w.shape)
            for c in (x, y, z)
        ]
        return cls._wrap(np.stack(parts, axis=-1))

    @classmethod
    def from_entries(cls, rows) -> "QMatrix":
        """Build from nested rows of scalars (real, complex, Quaternion or 4-lists)."""
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ContractViolation("from_entries needs a non-empty nested list")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ContractViolation("ragged rows")
        arr = np.array(
            [[Quaternion.coerce(e).to_list() for e in r] for r in rows], dtype=float
        )
        return cls._wrap(arr)

    @classmethod
    def from_complex_parts(cls, a1, a2) -> "QMatrix":
        """Return ``a1 + a2 j`` for complex arrays of equal shape."""
        a1 = np.atleast_2d(np.asarray(a1, dtype=complex))
        a2 = np.atleast_2d(np.asarray(a2, dtype=complex))
        return cls._wrap(np.stack([a1.real, a1.imag, a2.real, a2.imag], axis=-1))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls._wrap(np.zeros((rows, cols, 4)))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        arr = np.zeros((n, n, 4))
        arr[np.arange(n), np.arange(n), 0] = 1.0
        return cls._wrap(arr)

    @classmethod
    def diag(cls, values) -> "QMatrix":
        values = [Quaternion.coerce(v) for v in values]
        n = len(values)
        arr = np.zeros((n, n, 4))
        for i, v in enumerate(values):
            arr[i, i] = v.to_list()
        return cls._wrap(arr)

    @classmethod
    def column(cls, values) -> "QMatrix":
        """Column vector from a sequence of scalars."""
        return cls.from_entries([[v] for v in values])

    @classmethod
    def hstack(cls, mats) -> "QMatrix":
        mats = [m for m in mats if m.cols > 0]
        return cls._wrap(np.concatenate([m._data for m in mats], axis=1))

    @classmethod
    def vstack(cls, mats) -> "QMatrix":
        mats = [m for m in mats if m.rows > 0]
        return cls._wrap(np.concatenate([m._data for m in mats], axis=0))

    @classmethod
    def empty(cls, rows: int) -> "QMatrix":
        """A ``rows x 0`` matrix, the basis of the zero subspace."""
        return cls._wrap(np.zeros((rows, 0, 4)))

    # access -----------------------------------------------------------------

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def shape(self) -> tuple[int, int]:
        return self._data.shape[0], self._data.shape[1]

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    def component(self, r: int) -> np.ndarray:
        return self._data[..., r]

    def __getitem__(self, key):
        if isinstance(key, tuple) and len(key) == 2:
            i, j = key
            if isinstance(i, (int, np.integer)) and isinstance(j, (int, np.integer)):
                return Quaternion(*map(float, self._data[i, j]))
            if isinstance(i, (int, np.integer)):
                i = slice(i, i + 1) if i != -1 else slice(i, None)
            if isinstance(j, (int, np.integer)):
                j = slice(j, j + 1) if j != -1 else slice(j, None)
            return QMatrix._wrap(self._data[i, j])
        raise TypeError("QMatrix indices must be (row, col) pairs")

    def col(self, j: int) -> "QMatrix":
        return QMatrix._wrap(self._data[:, j : j + 1])

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def to_nested(self) -> list:
        return self._data.tolist()

    # algebra ----------------------------------------------------------------

    @property
    def H(self) -> "QMatrix":
        """Conjugate transpose."""
        return QMatrix._wrap(np.transpose(self._data, (1, 0, 2)) * _CONJ)

    def adjoint(self) -> "QMatrix":
        return self.H

    def conj(self) -> "QMatrix":
        return QMatrix._wrap(self._data * _CONJ)

    def __matmul__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ContractViolation(
                f"shape mismatch for product: {self.shape} @ {other.shape}"
            )
        return QMatrix._wrap(_qmul_arrays(self._data, other._data))

    def __add__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        self._check_same(other)
        return QMatrix._wrap(self._data + other._data)

    def __sub__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        self._check_same(other)
        return QMatrix._wrap(self._data - other._data)

    def __neg__(self):
        return QMatrix._wrap(-self._data)

    def __mul__(self, q):
        # A * q: scalar on the right
        if isinstance(q, Real):
            return QMatrix._wrap(self._data * float(q))
        if isinstance(q, (Quaternion, complex)):
            return QMatrix._wrap(_scalar_mul(self._data, Quaternion.coerce(q)))
        return NotImplemented

    def __rmul__(self, q):
        # q * A: scalar on the left
        if isinstance(q, Real):
            return QMatrix._wrap(self._data * float(q))
        if isinstance(q, (Quaternion, complex)):
            return QMatrix._wrap(_scalar_mul(self._data, Quaternion.coerce(q), right=False))
        return NotImplemented

    def __truediv__(self, s):
        if isinstance(s, Real):
            return QMatrix._wrap(self._data / float(s))
        return NotImplemented

    def scale_columns(self, scalars) -> "QMatrix":
        """Right-multiply column ``j`` by the quaternion ``scalars[j]``."""
        out = np.empty_like(self._data)
        for j, q in enumerate(scalars):
            out[:, j] = _scalar_mul(self._data[:, j], Quaternion.coerce(q))
        return QMatrix._wrap(out)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ContractViolation(f"shape mismatch: {self.shape} vs {other.shape}")

    # norms and predicates ---------------------------------------------------

    def abs_entries(self) -> np.ndarray:
        return np.sqrt(np.sum(self._data**2, axis=-1))

    def norm(self) -> float:
        """Frobenius norm."""
        return float(np.sqrt(np.sum(self._data**2)))

    def max_abs(self) -> float:
        if self._data.size == 0:
            return 0.0
        return float(self.abs_entries().max())

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_hermitian(self, rtol: float = 1e-12) -> bool:
        if not self.is_square():
            return False
        scale = self.max_abs()
        diff = np.max(np.abs(self._data - self.H._data)) if self._data.size else 0.0
        return diff <= rtol * scale

    def hermitian_part(self) -> "QMatrix":
        return QMatrix._wrap(0.5 * (self._data + self.H._data))

    def real_diagonal(self) -> np.ndarray:
        return np.diagonal(self._data[..., 0]).copy()

    def allclose(self, other: "QMatrix", atol: float = 1e-12) -> bool:
        return self.shape == other.shape and bool(
            np.all(np.abs(self._data - other._data) <= atol)
        )

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    __hash__ = None

    def __repr__(self) -> str:
        return f"QMatrix(shape={self.shape})\n{self._data!r}"


# complex adjoint embedding --------------------------------------------------


def complex_parts(A: QMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(A1, A2)`` with ``A = A1 + A2 j``."""
    d = A.data
    return d[..., 0] + 1j * d[..., 1], d[..., 2] + 1j * d[..., 3]


def embed(A: QMatrix) -> np.ndarray:
    """Complex adjoint (symplectic image) of ``A``, a ``2m x 2n`` complex array."""
    a1, a2 = complex_parts(A)
    return np.block([[a1, a2], [-a2.conj(), a1.conj()]])


def unembed(C: np.ndarray) -> QMatrix:
    """Inverse of :func:`embed`, reading the top block row.

    No check is made that ``C`` has the block structure of an image.
    """
    C = np.asarray(C, dtype=complex)
    m, n = C.shape[0] // 2, C.shape[1] // 2
    return QMatrix.from_complex_parts(C[:m, :n], C[:m, n:])


def vector_to_complex(v: QMatrix) -> np.ndarray:
    """Map the columns ``v1 + v2 j`` of ``v`` to ``[v1; -conj(v2)]``."""
    v1, v2 = complex_parts(v)
    return np.vstack([v1, -v2.conj()])


def complex_to_vector(u: np.ndarray) -> QMatrix:
    """Inverse of :func:`vector_to_complex` for a ``2n x k`` complex array."""
    u = np.asarray(u, dtype=complex)
    if u.ndim == 1:
        u = u[:, None]
    n = u.shape[0] // 2
    return QMatrix.from_complex_parts(u[:n], -u[n:].conj())
