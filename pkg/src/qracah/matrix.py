"""Dense square matrices over an exact field.

Entries are stored as a numpy array of raw field values: ``int64`` residues
for prime fields small enough that an n-term dot product cannot overflow,
Python objects (``gmpy2.mpq`` or big ints) otherwise.  Every operation
returns a new, read-only :class:`Matrix` in canonical form, so ``==`` is an
entrywise comparison.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .fields import Field, FieldElement

__all__ = [
    "Matrix",
    "ShapeClass",
    "SingularMatrixError",
    "mat_mul",
    "commutator",
    "mat_trace",
    "mat_inverse",
    "mat_rank",
    "rank_of_rows",
    "eval_tau_polynomial",
    "classify_shape",
    "krylov_matrix",
    "solve_in_span",
    "pair_products",
    "linear_combination",
]


class SingularMatrixError(ArithmeticError):
    pass


class Matrix:
    __slots__ = ("field", "arr")

    def __init__(self, field: Field, arr: np.ndarray):
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValueError(f"matrix must be square of order >= 1, got shape {arr.shape}")
        arr.flags.writeable = False
        self.field = field
        self.arr = arr

    # -- construction ----------------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable]) -> "Matrix":
        return cls(field, field.array(rows))

    @classmethod
    def zeros(cls, field: Field, n: int) -> "Matrix":
        return cls(field, field.full((n, n), 0, n))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls.scalar(field, n, 1)

    @classmethod
    def scalar(cls, field: Field, n: int, value) -> "Matrix":
        arr = field.full((n, n), 0, n)
        v = field._raw_of(value)
        for i in range(n):
            arr[i, i] = v
        return cls(field, arr)

    @classmethod
    def banded(cls, field: Field, diag: Sequence, sub: Sequence = (), sup: Sequence = ()) -> "Matrix":
        """Tridiagonal matrix from its diagonal, subdiagonal and superdiagonal."""
        n = len(diag)
        arr = field.full((n, n), 0, n)
        for i, v in enumerate(diag):
            arr[i, i] = field._raw_of(v)
        for i, v in enumerate(sub):
            arr[i + 1, i] = field._raw_of(v)
        for i, v in enumerate(sup):
            arr[i, i + 1] = field._raw_of(v)
        return cls(field, arr)

    # -- access ----------------------------------------------------------------

    @property
    def order(self) -> int:
        return self.arr.shape[0]

    def __getitem__(self, ij: tuple[int, int]) -> FieldElement:
        i, j = ij
        return FieldElement(self.field, self._scalar(self.arr[i, j]))

    def _scalar(self, raw):
        return int(raw) if self.field.kind == "prime" else raw

    def rows(self) -> list[list[FieldElement]]:
        n = self.order
        return [[self[i, j] for j in range(n)] for i in range(n)]

    def with_entry(self, i: int, j: int, value) -> "Matrix":
        arr = self.arr.copy()
        arr[i, j] = self.field._raw_of(value)
        return Matrix(self.field, arr)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows())
        return f"Matrix({self.field.descriptor}, [{body}])"

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: "Matrix") -> None:
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.field is not self.field and other.field != self.field:
            raise ValueError("field mismatch")
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def _new(self, arr: np.ndarray) -> "Matrix":
        return Matrix(self.field, self.field.reduce(arr))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return self._new(self.arr + other.arr)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return self._new(self.arr - other.arr)

    def __neg__(self) -> "Matrix":
        return self._new(-self.arr)

    def __mul__(self, s) -> "Matrix":
        if isinstance(s, Matrix):
            raise TypeError("use @ for matrix products")
        return self._new(self.arr * self.field._raw_of(s))

    __rmul__ = __mul__

    def __truediv__(self, s) -> "Matrix":
        return self * self.field(s).inverse()

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return self._new(self.arr @ other.arr)

    def shift(self, s) -> "Matrix":
        """``self - s*I``."""
        arr = self.arr.copy()
        v = self.field._raw_of(s)
        for i in range(self.order):
            arr[i, i] = arr[i, i] - v
        return self._new(arr)

    def plus_scalar(self, s) -> "Matrix":
        """``self + s*I``."""
        return self.shift(-self.field(s))

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            return mat_inverse(self) ** (-k)
        result = Matrix.identity(self.field, self.order)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    # -- comparison ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.order == other.order
            and bool(np.array_equal(self.arr, other.arr))
        )

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not bool(np.any(self.arr != 0))

    def is_scalar(self, s) -> bool:
        return self == Matrix.scalar(self.field, self.order, s)

    def first_difference(self, other: "Matrix"):
        """First entry ``(i, j, self[i,j], other[i,j])`` where the two differ, else None."""
        self._check(other)
        neq = self.arr != other.arr
        if not neq.any():
            return None
        idx = np.argwhere(neq)
        i, j = (int(v) for v in idx[0])
        return i, j, self[i, j], other[i, j]

    def trace(self) -> FieldElement:
        return mat_trace(self)


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    return x @ y


def commutator(x: Matrix, y: Matrix) -> Matrix:
    return x @ y - y @ x


def mat_trace(x: Matrix) -> FieldElement:
    total = x.field.zero
    for i in range(x.order):
        total = total + x[i, i]
    return total


def _element_dtype(field: Field):
    # elimination multiplies two canonical entries at a time, never sums them
    return field.dtype(1)


def _rref(field: Field, arr: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form by exact elimination (first nonzero pivot)."""
    a = np.array(arr, dtype=_element_dtype(field))
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if len(nz) == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = field.raw_inv(a[r, c])
        a[r] = field.reduce(a[r] * inv)
        col = a[:, c].copy()
        col[r] = 0
        a = field.reduce(a - np.outer(col, a[r]))
        pivots.append(c)
        r += 1
    return a, pivots


def mat_inverse(x: Matrix) -> Matrix:
    f, n = x.field, x.order
    aug = np.concatenate([x.arr, Matrix.identity(f, n).arr], axis=1)
    red, pivots = _rref(f, aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("singular")
    return Matrix(f, np.array(red[:, n:], dtype=f.dtype(n)))


def mat_rank(x: Matrix) -> int:
    return len(_rref(x.field, x.arr)[1])


def rank_of_rows(field: Field, rows: Sequence[Sequence]) -> int:
    """Rank of a rectangular system given as rows of field values."""
    if not rows:
        return 0
    return len(_rref(field, field.array(rows, n=1))[1])


def eval_tau_polynomial(x: Matrix, roots: Sequence, coeffs: Sequence) -> Matrix:
    """``sum_i coeffs[i] * (x - roots[0]) ... (x - roots[i-1])`` by nested Horner."""
    if len(coeffs) > len(roots) + 1:
        raise ValueError("more coefficients than tau-basis elements")
    f, n = x.field, x.order
    if not coeffs:
        return Matrix.zeros(f, n)
    acc = Matrix.scalar(f, n, coeffs[-1])
    for i in range(len(coeffs) - 2, -1, -1):
        acc = (acc @ x.shift(roots[i])).plus_scalar(coeffs[i])
    return acc


class ShapeClass(str, Enum):
    DIAGONAL = "diagonal"
    LOWER_BIDIAGONAL = "lower-bidiagonal"
    UPPER_BIDIAGONAL = "upper-bidiagonal"
    IRREDUCIBLE_TRIDIAGONAL = "irreducible-tridiagonal"
    TRIDIAGONAL = "tridiagonal"
    GENERAL = "general"


def classify_shape(x: Matrix) -> ShapeClass:
    nz = x.arr != 0
    n = x.order
    i, j = np.indices((n, n))
    band = i - j
    if nz[np.abs(band) > 1].any():
        return ShapeClass.GENERAL
    below = nz[band == 1]
    above = nz[band == -1]
    if not below.any() and not above.any():
        return ShapeClass.DIAGONAL
    if not above.any():
        return ShapeClass.LOWER_BIDIAGONAL
    if not below.any():
        return ShapeClass.UPPER_BIDIAGONAL
    if below.all() and above.all():
        return ShapeClass.IRREDUCIBLE_TRIDIAGONAL
    return ShapeClass.TRIDIAGONAL


def krylov_matrix(x: Matrix, start: int = 0) -> Matrix:
    """Matrix whose k-th column is ``x**k e_start`` for k = 0..n-1."""
    f, n = x.field, x.order
    cols = []
    v = f.full((n,), 0, n)
    v[start] = f.raw(1)
    for _ in range(n):
        cols.append(v)
        v = f.reduce(x.arr @ v)
    return Matrix(f, np.array(np.stack(cols, axis=1), dtype=f.dtype(n)))


def solve_in_span(basis: Sequence[Matrix], target: Matrix) -> list[FieldElement] | None:
    """Coefficients ``c`` with ``sum c_k basis[k] == target``, or None if no solution."""
    f = target.field
    k = len(basis)
    system = np.stack([b.arr.reshape(-1) for b in basis] + [target.arr.reshape(-1)], axis=1)
    red, pivots = _rref(f, system)
    if k in pivots:
        return None
    coeffs = [f.zero] * k
    for row, c in enumerate(pivots):
        raw = red[row, k]
        coeffs[c] = f(int(raw) if f.kind == "prime" else raw)
    return coeffs


def pair_products(lefts: Sequence[Matrix], middle: Matrix | None, rights: Sequence[Matrix]) -> list[list[Matrix]]:
    """All ``lefts[i] @ middle @ rights[j]`` (``middle`` None means identity), batched."""
    f = middle.field if middle is not None else lefts[0].field
    left = np.stack([m.arr for m in lefts])
    if middle is not None:
        left = f.reduce(np.matmul(left, middle.arr))
    right = np.stack([m.arr for m in rights])
    prods = f.reduce(np.matmul(left[:, None], right[None, :]))
    return [[Matrix(f, np.ascontiguousarray(prods[i, j])) for j in range(len(rights))] for i in range(len(lefts))]


def linear_combination(coeffs: Sequence, mats: Sequence[Matrix]) -> Matrix:
    """``sum coeffs[i] * mats[i]``."""
    f = mats[0].field
    acc = None
    for c, m in zip(coeffs, mats):
        term = m.arr * f._raw_of(c)
        acc = term if acc is None else f.reduce(acc + term)
    return Matrix(f, f.reduce(acc))
