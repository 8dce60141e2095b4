"""Exact scalar and matrix arithmetic.

Scalars are Python integers, :class:`fractions.Fraction` and :class:`Surd`
(elements a + b*sqrt(D) of a real quadratic extension).  Matrices come in two
flavours: :class:`IntMatrix` (dense integer matrices) and :class:`SurdMatrix`
(dense matrices over one quadratic extension).  Every operation is exact;
nothing in this module ever touches floating point.

IntMatrix is backed by a numpy array.  The fast path uses int64 and is gated
by a conservative a-priori magnitude bound, so int64 arithmetic is provably
overflow-free whenever it is used; outside the bound the matrix silently
falls back to an object-dtype array of Python integers.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .errors import ParameterError

Rational = Fraction

# int64 products are exact below this; leave headroom for accumulation.
_INT64_SAFE = 2**62


def square_free_decomposition(value: int) -> tuple[int, int]:
    """Write ``value`` = s**2 * d with d square-free; return ``(s, d)``."""
    if value < 0:
        raise ParameterError("square_free_decomposition needs a non-negative integer")
    if value == 0:
        return 0, 0
    r = isqrt(value)
    if r * r == value:
        return r, 1
    s, d, rest = 1, 1, value
    f = 2
    while f * f <= rest:
        if rest % f == 0:
            e = 0
            while rest % f == 0:
                rest //= f
                e += 1
            s *= f ** (e // 2)
            if e % 2:
                d *= f
        f += 1 if f == 2 else 2
    return s, d * rest


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


@dataclass(frozen=True)
class Surd:
    """Exact element a + b*sqrt(d) with rational a, b and square-free d >= 0.

    Normal form: b == 0 implies d == 0, and d is never 0 or 1 when b != 0.
    Two surds interoperate when their radicands agree or one side is rational.
    """

    a: Fraction
    b: Fraction
    d: int

    @staticmethod
    def of(a, b=0, d: int = 0) -> "Surd":
        a = _as_fraction(a)
        b = _as_fraction(b)
        if d < 0:
            raise ParameterError("negative radicand: only real quadratic extensions are supported")
        if b == 0:
            return Surd(a, Fraction(0), 0)
        s, d0 = square_free_decomposition(d)
        b = b * s
        if d0 in (0, 1):
            return Surd(a + b * (1 if d0 == 1 else 0), Fraction(0), 0)
        return Surd(a, b, d0)

    @staticmethod
    def sqrt(value) -> "Surd":
        """Exact square root of a non-negative rational, as s*sqrt(d)."""
        value = _as_fraction(value)
        if value < 0:
            raise ParameterError("cannot take a real square root of a negative rational")
        num, den = value.numerator, value.denominator
        sn, dn = square_free_decomposition(num * den)
        return Surd.of(0, Fraction(sn, den), dn)

    # -- predicates ------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ParameterError(f"{self} is irrational")
        return self.a

    def sign(self) -> int:
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return (self.b > 0) - (self.b < 0)
        sa = 1 if self.a > 0 else -1
        sb = 1 if self.b > 0 else -1
        if sa == sb:
            return sa
        # sign of a + b*sqrt(d) with opposite-signed parts: compare a^2, b^2 d
        lhs, rhs = self.a * self.a, self.b * self.b * self.d
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "Surd":
        if isinstance(x, Surd):
            return x
        return Surd.of(_as_fraction(x))

    def _common_d(self, other: "Surd") -> int:
        if self.b == 0:
            return other.d
        if other.b == 0:
            return self.d
        if self.d != other.d:
            raise ParameterError(f"incompatible radicands: sqrt({self.d}) vs sqrt({other.d})")
        return self.d

    def __add__(self, other):
        other = Surd._coerce(other)
        d = self._common_d(other)
        return Surd.of(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-Surd._coerce(other))

    def __rsub__(self, other):
        return Surd._coerce(other) + (-self)

    def __mul__(self, other):
        other = Surd._coerce(other)
        d = self._common_d(other)
        return Surd.of(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "Surd":
        return Surd(self.a, -self.b, self.d)

    def __truediv__(self, other):
        other = Surd._coerce(other)
        if other.sign() == 0:
            raise ZeroDivisionError("surd division by zero")
        d = self._common_d(other)
        norm = other.a * other.a - other.b * other.b * d
        num = self * Surd.of(other.a, -other.b, d)
        return Surd.of(num.a / norm, num.b / norm, d)

    def __rtruediv__(self, other):
        return Surd._coerce(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, np.integer, Fraction)):
            other = Surd._coerce(other)
        if not isinstance(other, Surd):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __lt__(self, other):
        return (self - Surd._coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - Surd._coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - Surd._coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - Surd._coerce(other)).sign() >= 0

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        if self.b == 0:
            return f"Surd({self.a})"
        return f"Surd({self.a} + {self.b}*sqrt({self.d}))"


class IntMatrix:
    """Dense exact integer matrix."""

    __slots__ = ("a",)

    def __init__(self, data):
        if isinstance(data, IntMatrix):
            arr = data.a
        else:
            arr = self._build_array(data)
        if arr.ndim != 2:
            raise ParameterError("IntMatrix must be two-dimensional")
        self.a = arr

    @staticmethod
    def _build_array(data) -> np.ndarray:
        arr = np.asarray(data)
        if arr.dtype == np.int64 or arr.dtype == object:
            pass
        elif arr.dtype.kind in "iu":
            arr = arr.astype(np.int64)
        else:
            raise ParameterError("IntMatrix entries must be integers")
        if arr.dtype == object:
            out = np.empty(arr.shape, dtype=object)
            for idx in np.ndindex(*arr.shape):
                out[idx] = operator.index(arr[idx])
            arr = out
        return arr

    # -- constructors ----------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "IntMatrix":
        return cls(np.zeros((rows, cols if cols is not None else rows), dtype=np.int64))

    @classmethod
    def identity(cls, order: int) -> "IntMatrix":
        return cls(np.eye(order, dtype=np.int64))

    @classmethod
    def ones(cls, rows: int, cols: int | None = None) -> "IntMatrix":
        return cls(np.ones((rows, cols if cols is not None else rows), dtype=np.int64))

    @classmethod
    def group_blocks(cls, m: int, n: int) -> "IntMatrix":
        """The block-diagonal group indicator I_m (x) J_n."""
        return cls.identity(m).kron(cls.ones(n))

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        return cls([list(r) for r in rows])

    # -- shape and access -------------------------------------------------
    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        return int(self.a[idx])

    def row(self, i: int) -> list[int]:
        return [int(x) for x in self.a[i]]

    def entries(self) -> list[int]:
        """Row-major entry list."""
        return [int(x) for x in self.a.ravel()]

    def max_abs(self) -> int:
        if self.a.size == 0:
            return 0
        return int(np.abs(self.a).max())

    def is_zero_one(self) -> bool:
        return bool(((self.a == 0) | (self.a == 1)).all())

    def is_symmetric(self) -> bool:
        return bool((self.a == self.a.T).all())

    # -- exactness gate ---------------------------------------------------
    def _object(self) -> np.ndarray:
        return self.a if self.a.dtype == object else self.a.astype(object)

    @staticmethod
    def _wrap(arr: np.ndarray) -> "IntMatrix":
        if arr.dtype == object:
            try:
                m = int(np.abs(arr).max()) if arr.size else 0
                if m < _INT64_SAFE:
                    arr = arr.astype(np.int64)
            except (OverflowError, TypeError):
                pass
        return IntMatrix(arr)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.a.shape != other.a.shape:
            raise ParameterError("dimension mismatch in matrix addition")
        if (
            self.a.dtype == np.int64
            and other.a.dtype == np.int64
            and self.max_abs() + other.max_abs() < _INT64_SAFE
        ):
            return IntMatrix(self.a + other.a)
        return self._wrap(self._object() + other._object())

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(-self.a)

    def scalar_mul(self, c: int) -> "IntMatrix":
        c = int(c)
        if self.a.dtype == np.int64 and abs(c) * max(self.max_abs(), 1) < _INT64_SAFE:
            return IntMatrix(self.a * c)
        return self._wrap(self._object() * c)

    def __mul__(self, c: int) -> "IntMatrix":
        return self.scalar_mul(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ParameterError("dimension mismatch in matrix product")
        bound = max(self.max_abs(), 1) * max(other.max_abs(), 1) * max(self.cols, 1)
        if self.a.dtype == np.int64 and other.a.dtype == np.int64 and bound < _INT64_SAFE:
            return IntMatrix(self.a @ other.a)
        return self._wrap(np.dot(self._object(), other._object()))

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.a.T.copy())

    def kron(self, other: "IntMatrix") -> "IntMatrix":
        if (
            self.a.dtype == np.int64
            and other.a.dtype == np.int64
            and max(self.max_abs(), 1) * max(other.max_abs(), 1) < _INT64_SAFE
        ):
            return IntMatrix(np.kron(self.a, other.a))
        return self._wrap(np.kron(self._object(), other._object()))

    def trace(self) -> int:
        return sum(int(self.a[i, i]) for i in range(min(self.rows, self.cols)))

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.a.shape == other.a.shape and bool((self.a == other.a).all())

    def __hash__(self):
        return hash((self.a.shape, tuple(self.entries())))

    def first_difference(self, other: "IntMatrix") -> tuple[int, int] | None:
        """Row-major first coordinate where the two matrices differ."""
        if self.a.shape != other.a.shape:
            return (0, 0)
        diff = np.argwhere(self.a != other.a)
        if diff.size == 0:
            return None
        return int(diff[0][0]), int(diff[0][1])

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols})"


def mat_add(a, b):
    """Sum of two matrices of the same kind (IntMatrix or SurdMatrix)."""
    return a + b


def mat_mul(a, b):
    """Product of two matrices of the same kind (IntMatrix or SurdMatrix)."""
    return a @ b


def mat_transpose(a):
    return a.T


def scalar_mul(a, c):
    return a.scalar_mul(c)


def kron(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return a.kron(b)


class SurdMatrix:
    """Dense matrix over Q(sqrt(d)); all entries share one radicand."""

    __slots__ = ("rows", "cols", "data", "d")

    def __init__(self, data):
        self.data = [[x if isinstance(x, Surd) else Surd._coerce(x) for x in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(row) != self.cols for row in self.data):
            raise ParameterError("ragged rows in SurdMatrix")
        d = 0
        for row in self.data:
            for x in row:
                if x.d not in (0, d):
                    if d == 0:
                        d = x.d
                    else:
                        raise ParameterError("mixed radicands in SurdMatrix")
        self.d = d

    @classmethod
    def identity(cls, order: int) -> "SurdMatrix":
        return cls([[Surd.of(1 if i == j else 0) for j in range(order)] for i in range(order)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "SurdMatrix":
        cols = cols if cols is not None else rows
        return cls([[Surd.of(0)] * cols for _ in range(rows)])

    @classmethod
    def from_int(cls, m: IntMatrix) -> "SurdMatrix":
        return cls([[Surd.of(x) for x in m.row(i)] for i in range(m.rows)])

    def __getitem__(self, idx) -> Surd:
        i, j = idx
        return self.data[i][j]

    def __add__(self, other: "SurdMatrix") -> "SurdMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ParameterError("dimension mismatch in matrix addition")
        return SurdMatrix(
            [[self.data[i][j] + other.data[i][j] for j in range(self.cols)] for i in range(self.rows)]
        )

    def __sub__(self, other: "SurdMatrix") -> "SurdMatrix":
        return self + other.scalar_mul(-1)

    def scalar_mul(self, c) -> "SurdMatrix":
        c = Surd._coerce(c)
        return SurdMatrix([[x * c for x in row] for row in self.data])

    def __matmul__(self, other: "SurdMatrix") -> "SurdMatrix":
        if self.cols != other.rows:
            raise ParameterError("dimension mismatch in matrix product")
        zero = Surd.of(0)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for t in range(self.cols):
                    acc = acc + self.data[i][t] * other.data[t][j]
                row.append(acc)
            out.append(row)
        return SurdMatrix(out)

    def hadamard(self, other: "SurdMatrix") -> "SurdMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ParameterError("dimension mismatch in entrywise product")
        return SurdMatrix(
            [[self.data[i][j] * other.data[i][j] for j in range(self.cols)] for i in range(self.rows)]
        )

    @property
    def T(self) -> "SurdMatrix":
        return SurdMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def trace(self) -> Surd:
        acc = Surd.of(0)
        for i in range(min(self.rows, self.cols)):
            acc = acc + self.data[i][i]
        return acc

    def __eq__(self, other):
        if not isinstance(other, SurdMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            self.data[i][j] == other.data[i][j] for i in range(self.rows) for j in range(self.cols)
        )

    def __hash__(self):
        return hash((self.rows, self.cols))

    def __repr__(self):
        return f"SurdMatrix({self.rows}x{self.cols}, d={self.d})"
