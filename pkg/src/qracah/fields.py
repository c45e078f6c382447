"""Exact fields: unbounded rationals and prime fields.

Every value lives in exactly one field.  Elements are immutable and kept in
canonical form (reduced fraction with positive denominator, or a residue in
``[0, p)``), so equality is a structural comparison.

Matrix code works on the *raw* representation (``gmpy2.mpq`` for rationals,
plain ``int`` residues for prime fields) through the vectorised helpers on
:class:`Field`; :class:`FieldElement` is the user-facing wrapper.
"""

from __future__ import annotations

import re
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Union

import gmpy2
import numpy as np

__all__ = [
    "Field",
    "RationalField",
    "PrimeField",
    "FieldElement",
    "QQ",
    "is_prime",
    "make_rational",
    "make_prime_element",
    "field_pow",
    "field_inv",
    "parse_field",
]

# Miller-Rabin with these bases is exact below 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with fixed bases)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise ValueError(f"modulus {n} is beyond the deterministic primality range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


Scalar = Union["FieldElement", int, Fraction]


class Field(ABC):
    """An exact field.  Subclasses supply the raw arithmetic."""

    kind: str

    # -- raw scalar arithmetic -------------------------------------------------

    @abstractmethod
    def raw(self, value: Any) -> Any:
        """Convert ``value`` to this field's canonical raw representation."""

    @abstractmethod
    def raw_inv(self, x: Any) -> Any: ...

    @abstractmethod
    def reduce(self, arr: np.ndarray) -> np.ndarray:
        """Bring an array of raw values back to canonical form."""

    @abstractmethod
    def dtype(self, n: int) -> Any:
        """numpy dtype able to hold an n-term dot product without overflow."""

    @abstractmethod
    def format_raw(self, x: Any) -> str: ...

    @abstractmethod
    def parse(self, text: str) -> "FieldElement": ...

    @property
    @abstractmethod
    def descriptor(self) -> str:
        """The field selection string (``rational`` or ``fp:<p>``)."""

    # -- conveniences ----------------------------------------------------------

    def __call__(self, value: Any) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("field mismatch")
            return value
        return FieldElement(self, self.raw(value))

    @property
    def zero(self) -> "FieldElement":
        return self(0)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    def array(self, rows, n: int | None = None) -> np.ndarray:
        """Build a raw 2-D array from nested values (ints, fractions, elements)."""
        rows = [list(r) for r in rows]
        n = n if n is not None else len(rows)
        out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=self.dtype(n))
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                out[i, j] = self._raw_of(v)
        return out

    def full(self, shape, value: Any, n: int) -> np.ndarray:
        out = np.empty(shape, dtype=self.dtype(n))
        out.fill(self._raw_of(value))
        return out

    def _raw_of(self, v: Any) -> Any:
        if isinstance(v, FieldElement):
            if v.field != self:
                raise ValueError("field mismatch")
            return v.raw
        return self.raw(v)

    def __repr__(self) -> str:
        return f"Field({self.descriptor!r})"

    def __str__(self) -> str:
        return self.descriptor


class RationalField(Field):
    """The rationals, backed by ``gmpy2.mpq``."""

    kind = "rational"

    def raw(self, value: Any) -> Any:
        if isinstance(value, FieldElement):
            return self._raw_of(value)
        if isinstance(value, Fraction):
            return gmpy2.mpq(value.numerator, value.denominator)
        if isinstance(value, (int, np.integer)):
            return gmpy2.mpq(int(value))
        if isinstance(value, gmpy2.mpq):
            return value
        if isinstance(value, gmpy2.mpz):
            return gmpy2.mpq(value)
        raise TypeError(f"cannot convert {value!r} to a rational")

    def raw_inv(self, x: Any) -> Any:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr

    def dtype(self, n: int) -> Any:
        return object

    def format_raw(self, x: Any) -> str:
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def parse(self, text: str) -> "FieldElement":
        m = re.fullmatch(r"\s*([+-]?\d+)(?:\s*/\s*([+-]?\d+))?\s*", text)
        if m is None:
            raise ValueError(f"malformed rational literal {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        return make_rational(num, den)

    @property
    def descriptor(self) -> str:
        return "rational"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("rational")


class PrimeField(Field):
    """Integers modulo an odd prime ``p``."""

    kind = "prime"
    __slots__ = ("p",)

    def __init__(self, p: int):
        p = int(p)
        if p == 2 or not is_prime(p):
            raise ValueError(f"modulus must be an odd prime, got {p}")
        self.p = p

    def raw(self, value: Any) -> int:
        if isinstance(value, FieldElement):
            return self._raw_of(value)
        if isinstance(value, (int, np.integer)):
            return int(value) % self.p
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        raise TypeError(f"cannot convert {value!r} to a residue mod {self.p}")

    def raw_inv(self, x: Any) -> int:
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr % self.p

    def dtype(self, n: int) -> Any:
        if max(n, 1) * (self.p - 1) ** 2 < 2**63:
            return np.int64
        return object

    def format_raw(self, x: Any) -> str:
        return str(int(x))

    def parse(self, text: str) -> "FieldElement":
        m = re.fullmatch(r"\s*([+-]?\d+)\s*", text)
        if m is None:
            raise ValueError(f"malformed residue literal {text!r} for fp:{self.p}")
        return make_prime_element(self, int(m.group(1)))

    @property
    def descriptor(self) -> str:
        return f"fp:{self.p}"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("prime", self.p))


QQ = RationalField()


class FieldElement:
    """Immutable element of a :class:`Field`.

    Plain ``int`` and ``Fraction`` operands are coerced into the element's
    field; two elements combine only if their fields are equal.
    """

    __slots__ = ("field", "raw")

    def __init__(self, field: Field, raw: Any):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "raw", raw)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _other(self, other: Any) -> Any:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("field mismatch")
            return other.raw
        if isinstance(other, (int, Fraction, np.integer)):
            return self.field.raw(other)
        return NotImplemented

    def _wrap(self, raw: Any) -> "FieldElement":
        f = self.field
        if f.kind == "prime":
            raw %= f.p
        return FieldElement(f, raw)

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.raw + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.raw - o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(o - self.raw)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.raw * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(self.raw * self.field.raw_inv(o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._wrap(o * self.field.raw_inv(self.raw))

    def __neg__(self):
        return self._wrap(-self.raw)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        return field_pow(self, n)

    def inverse(self) -> "FieldElement":
        return field_inv(self)

    def is_zero(self) -> bool:
        return self.raw == 0

    def __bool__(self) -> bool:
        return self.raw != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.raw == other.raw and (self.field is other.field or self.field == other.field)
        if isinstance(other, (int, Fraction)):
            return self.raw == self.field.raw(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, int(self.raw) if self.field.kind == "prime" else self.raw))

    def __str__(self) -> str:
        return self.field.format_raw(self.raw)

    def __repr__(self) -> str:
        return f"FieldElement({self.field.descriptor}, {self})"

    def to_fraction(self) -> Fraction:
        """Rational value (rational fields only)."""
        if self.field.kind != "rational":
            raise TypeError("only rational elements convert to Fraction")
        return Fraction(int(self.raw.numerator), int(self.raw.denominator))


def make_rational(numerator: int, denominator: int = 1) -> FieldElement:
    if denominator == 0:
        raise ZeroDivisionError("division by zero")
    return FieldElement(QQ, gmpy2.mpq(int(numerator), int(denominator)))


def make_prime_element(field: Field, residue: int) -> FieldElement:
    if not isinstance(field, PrimeField):
        raise TypeError(f"{field} is not a prime field")
    return FieldElement(field, int(residue) % field.p)


def field_inv(x: FieldElement) -> FieldElement:
    return FieldElement(x.field, x.field.raw_inv(x.raw))


def field_pow(x: FieldElement, n: int) -> FieldElement:
    """``x**n`` for any integer ``n``; negative powers go through the inverse."""
    f = x.field
    if n < 0:
        x = field_inv(x)
        n = -n
    if f.kind == "prime":
        return FieldElement(f, pow(int(x.raw), n, f.p))
    return FieldElement(f, x.raw**n)


def parse_field(descriptor: str) -> Field:
    """Parse ``"rational"`` or ``"fp:<p>"``."""
    descriptor = descriptor.strip()
    if descriptor == "rational":
        return QQ
    m = re.fullmatch(r"fp:(\d+)", descriptor)
    if m is None:
        raise ValueError(f"unknown field {descriptor!r}; expected 'rational' or 'fp:<p>'")
    return PrimeField(int(m.group(1)))
