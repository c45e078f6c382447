"""Parameters (q, a, b, c, d), their admissibility test and derived scalars.

Also home to the q-combinatorics used elsewhere: balanced q-integers,
q-shifted factorials and terminating 2phi1 sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .fields import Field, FieldElement, PrimeField, field_pow

__all__ = [
    "AssumptionViolation",
    "SamplingExhausted",
    "QRacahParams",
    "EigenData",
    "validate_params",
    "eigen_data",
    "eigenvalue",
    "q_bracket",
    "q_pochhammer",
    "phi21_terminating",
    "chu_identity1",
    "chu_identity3",
    "invert_huang_data",
    "cyclic_shift",
    "swap_ab",
    "is_similar",
    "sample_params",
    "sample_stream",
    "MAX_REJECTION_ROUNDS",
]

MAX_REJECTION_ROUNDS = 10_000


class AssumptionViolation(ValueError):
    """Parameters rejected; ``clause`` is one of nonzero, q4, i, ii, iii."""

    def __init__(self, clause: str, witness: str, exponent: int | None = None):
        self.clause = clause
        self.witness = witness
        self.exponent = exponent
        label = "" if clause in ("q4", "nonzero") else f" ({clause})"
        super().__init__(f"assumption violated{label}: {witness}")


class SamplingExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class QRacahParams:
    q: FieldElement
    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: int

    @property
    def field(self) -> Field:
        return self.q.field

    @property
    def huang(self) -> tuple[FieldElement, FieldElement, FieldElement]:
        return self.a, self.b, self.c

    def describe(self) -> str:
        return f"q={self.q} a={self.a} b={self.b} c={self.c} d={self.d} over {self.field}"


@dataclass(frozen=True)
class EigenData:
    """Scalars derived from validated parameters.

    ``eig_a``/``eig_b``/``eig_c`` are the eigenvalue sequences of A, B, C in
    standard order; ``rel_a``/``rel_b``/``rel_c`` are the scalars on the right
    of the three cyclic relations; ``split_first``/``split_second`` hold the
    superdiagonal of B in the first and second basis (index i-1 for i=1..d).
    """

    eig_a: tuple[FieldElement, ...]
    eig_b: tuple[FieldElement, ...]
    eig_c: tuple[FieldElement, ...]
    rel_a: FieldElement
    rel_b: FieldElement
    rel_c: FieldElement
    split_first: tuple[FieldElement, ...]
    split_second: tuple[FieldElement, ...]


def _exponent_lists(d: int) -> tuple[list[int], list[int]]:
    even = list(range(2 * d - 2, 1 - 2 * d, -2))  # 2d-2, ..., 2-2d
    odd = list(range(d - 1, -d, -2))  # d-1, ..., 1-d
    return even, odd


def validate_params(q: FieldElement, a: FieldElement, b: FieldElement, c: FieldElement, d: int) -> QRacahParams:
    """Return validated parameters or raise :class:`AssumptionViolation`."""
    field = q.field
    if any(x.field != field for x in (a, b, c)):
        raise ValueError("field mismatch")
    if not isinstance(d, int) or d < 0:
        raise AssumptionViolation("nonzero", f"d must be a nonnegative integer, got {d!r}")
    for name, x in (("q", q), ("a", a), ("b", b), ("c", c)):
        if x.is_zero():
            raise AssumptionViolation("nonzero", f"{name} = 0")
    if q**4 == 1:
        raise AssumptionViolation("q4", "q^4 = 1", 4)
    for i in range(1, d + 1):
        if q ** (2 * i) == 1:
            raise AssumptionViolation("i", f"q^{2 * i} = 1", 2 * i)
    even, odd = _exponent_lists(d)
    qpow = {e: q**e for e in set(even) | set(odd)}
    for name, x in (("a", a), ("b", b), ("c", c)):
        sq = x * x
        for e in even:
            if sq == qpow[e]:
                raise AssumptionViolation("ii", f"{name}^2 = q^{e}", e)
    products = (
        ("abc", a * b * c),
        ("a^-1bc", b * c / a),
        ("ab^-1c", a * c / b),
        ("abc^-1", a * b / c),
    )
    for name, x in products:
        for e in odd:
            if x == qpow[e]:
                raise AssumptionViolation("iii", f"{name} = q^{e}", e)
    return QRacahParams(q, a, b, c, d)


def eigenvalue(x: FieldElement, q: FieldElement, d: int, i: int) -> FieldElement:
    """``x q^(2i-d) + x^-1 q^(d-2i)``."""
    return x * q ** (2 * i - d) + q ** (d - 2 * i) / x


def _rel(x, y, z, q, d):
    return ((x + 1 / x) * (q ** (d + 1) + q ** (-d - 1)) + (y + 1 / y) * (z + 1 / z)) / (q + 1 / q)


def eigen_data(p: QRacahParams) -> EigenData:
    q, a, b, c, d = p.q, p.a, p.b, p.c, p.d
    eig = tuple(tuple(eigenvalue(x, q, d, i) for i in range(d + 1)) for x in (a, b, c))
    first, second = [], []
    for i in range(1, d + 1):
        common = q ** (d + 1) * (q**i - q ** (-i)) * (q ** (i - d - 1) - q ** (d - i + 1))
        s = q ** (i - d - 1)
        first.append(common / (a * b) * (q ** (-i) - a * b * c * s) * (q ** (-i) - a * b / c * s))
        second.append(common * a / b * (q ** (-i) - b * c / a * s) * (q ** (-i) - b / (a * c) * s))
    data = EigenData(
        eig_a=eig[0],
        eig_b=eig[1],
        eig_c=eig[2],
        rel_a=_rel(a, b, c, q, d),
        rel_b=_rel(b, c, a, q, d),
        rel_c=_rel(c, a, b, q, d),
        split_first=tuple(first),
        split_second=tuple(second),
    )
    for seq in eig:
        if len(set(seq)) != len(seq):
            raise ArithmeticError("eigenvalues not distinct despite validation")
    if any(x.is_zero() for x in first + second):
        raise ArithmeticError("split sequence vanishes despite validation")
    return data


def q_bracket(n: int, q: FieldElement) -> FieldElement:
    """Balanced q-integer ``(q^n - q^-n) / (q - q^-1)``."""
    den = q - 1 / q
    if den.is_zero():
        raise ZeroDivisionError("q^2 = 1: q-integers undefined")
    return (q**n - q ** (-n)) / den


def q_pochhammer(x: FieldElement, t: FieldElement, n: int) -> FieldElement:
    """``(x; t)_n = (1-x)(1-xt)...(1-xt^(n-1))``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = x.field.one
    term = x
    for _ in range(n):
        out = out * (1 - term)
        term = term * t
    return out


def phi21_terminating(
    top1: FieldElement,
    top2: FieldElement,
    bottom: FieldElement,
    base: FieldElement,
    argument: FieldElement,
    terminates_at: int,
) -> FieldElement:
    """Terminating 2phi1 with ``top1 = base**(-terminates_at)``.

    A zero ``bottom`` is allowed; its shifted factorials are identically 1.
    """
    if terminates_at < 0 or top1 != base ** (-terminates_at):
        raise ValueError("series does not terminate: top1 must be base^(-n)")
    total = top1.field.zero
    term = top1.field.one
    for k in range(terminates_at + 1):
        total = total + term
        if k == terminates_at:
            break
        den = (1 - base ** (k + 1)) * (1 - bottom * base**k)
        if den.is_zero():
            raise ZeroDivisionError("series undefined")
        term = term * (1 - top1 * base**k) * (1 - top2 * base**k) / den * argument
    return total


def chu_identity1(q: FieldElement, x: FieldElement, d: int, j: int, inverted: bool = False):
    """Both sides of the q^2 Chu-Vandermonde evaluation behind the tau-form of W^{-1}.

    With ``inverted`` the same identity under ``x, q -> x^-1, q^-1`` (used for W).
    Returns ``(closed_form, series)``.
    """
    if inverted:
        q, x = 1 / q, 1 / x
    q2 = q * q
    lhs = (-1) ** j * x**j * q ** (j * (j - d))
    rhs = phi21_terminating(q ** (-2 * j), x * x * q ** (2 * j - 2 * d), x * q ** (1 - d), q2, q2, j)
    return lhs, rhs


def chu_identity3(q: FieldElement, x: FieldElement, d: int, j: int, inverted: bool = False):
    """Zero-bottom variant behind the tau-form of W^{-2} (``inverted``: W^2)."""
    if inverted:
        q, x = 1 / q, 1 / x
    q2 = q * q
    lhs = x ** (2 * j) * q ** (2 * j * (j - d))
    rhs = phi21_terminating(q ** (-2 * j), x * x * q ** (2 * j - 2 * d), q.field.zero, q2, q2, j)
    return lhs, rhs


def invert_huang_data(p: QRacahParams, flips: Iterable[str]) -> QRacahParams:
    flips = set(flips)
    unknown = flips - {"a", "b", "c"}
    if unknown:
        raise ValueError(f"unknown parameters to invert: {sorted(unknown)}")
    a, b, c = (1 / x if name in flips else x for name, x in zip("abc", p.huang))
    return validate_params(p.q, a, b, c, p.d)


def cyclic_shift(p: QRacahParams) -> QRacahParams:
    """Huang data of the rotated triple B, C, A."""
    return validate_params(p.q, p.b, p.c, p.a, p.d)


def swap_ab(p: QRacahParams) -> QRacahParams:
    """Huang data of B, A, C, which has q^-1 type."""
    return validate_params(1 / p.q, p.b, p.a, p.c, p.d)


def is_similar(x: FieldElement, y: FieldElement) -> bool:
    return x == y or x * y == 1


def _uniform_nonzero(rng: np.random.Generator, p: int) -> int:
    if p <= 2**62:
        return int(rng.integers(1, p))
    nbytes = (p.bit_length() + 7) // 8
    while True:
        v = int.from_bytes(rng.bytes(nbytes), "little") % (1 << p.bit_length())
        if 1 <= v < p:
            return v


def sample_stream(field: PrimeField, d: int, seed: int, count: int) -> Iterator[QRacahParams]:
    """``count`` independent admissible samples over ``field``.

    Generator: numpy ``SeedSequence(entropy=(p, d, seed))`` spawns one child
    per sample; each child drives a ``PCG64`` stream that draws q, a, b, c
    uniformly from the nonzero residues until the tuple validates.
    """
    if not isinstance(field, PrimeField):
        raise TypeError("sampling needs a prime field")
    root = np.random.SeedSequence(entropy=(field.p, d, seed))
    for child in root.spawn(count):
        rng = np.random.Generator(np.random.PCG64(child))
        for _ in range(MAX_REJECTION_ROUNDS):
            q, a, b, c = (field(_uniform_nonzero(rng, field.p)) for _ in range(4))
            try:
                yield validate_params(q, a, b, c, d)
                break
            except AssumptionViolation:
                continue
        else:
            raise SamplingExhausted(
                f"sampling exhausted after {MAX_REJECTION_ROUNDS} rounds (p={field.p}, d={d})"
            )


def sample_params(field: PrimeField, d: int, seed: int) -> QRacahParams:
    return next(sample_stream(field, d, seed, 1))
