"""Explicit Leonard triples of q-Racah type and the operators built from them."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .fields import FieldElement
from .matrix import (
    Matrix,
    commutator,
    eval_tau_polynomial,
    linear_combination,
    mat_inverse,
    rank_of_rows,
)
from .params import EigenData, QRacahParams, eigen_data, eigenvalue, q_bracket, q_pochhammer

__all__ = [
    "Basis",
    "TauExpansion",
    "CommutantSolution",
    "WElements",
    "BarForm",
    "Member",
    "TripleRealization",
    "build_triple",
    "lagrange_idempotents",
    "build_w_elements",
    "build_bars",
    "idempotent_tau_expansion",
    "w_tau_expansion",
    "bar_closed_form",
    "commutant_system",
    "solve_commutant_w",
]


class Basis(str, Enum):
    FIRST = "first"
    SECOND = "second"


@dataclass(frozen=True)
class TauExpansion:
    roots: tuple[FieldElement, ...]
    coeffs: tuple[FieldElement, ...]

    def evaluate(self, x: Matrix) -> Matrix:
        return eval_tau_polynomial(x, self.roots, self.coeffs)


@dataclass(frozen=True)
class CommutantSolution:
    t: tuple[FieldElement, ...]
    scale: FieldElement
    nullity: int


@dataclass(frozen=True)
class WElements:
    """W for one member of the triple with its inverse and squares (closed forms)."""

    w: Matrix
    inv: Matrix
    sq: Matrix
    sq_inv: Matrix


@dataclass(frozen=True)
class BarForm:
    case: str  # "top" (x = q^(d+1)), "bottom" (x = q^(-d-1)) or "generic"
    matrix: Matrix
    tau_matrix: Matrix


@dataclass(frozen=True)
class Member:
    """One element ``x`` of the triple seen with the two that follow it cyclically.

    For member ``a`` this is (A, B, C) with Huang data (a, b, c); for ``b`` it
    is (B, C, A) with (b, c, a); for ``c`` it is (C, A, B) with (c, a, b).
    """

    name: str
    x: Matrix
    y: Matrix
    z: Matrix
    px: FieldElement
    py: FieldElement
    pz: FieldElement
    rel_x: FieldElement
    rel_y: FieldElement
    rel_z: FieldElement
    eig: tuple[FieldElement, ...]
    idem: tuple[Matrix, ...]
    w: WElements
    bar: Matrix


@dataclass(frozen=True)
class TripleRealization:
    params: QRacahParams
    eig: EigenData
    basis: Basis
    A: Matrix
    B: Matrix
    C: Matrix
    idem_a: tuple[Matrix, ...]
    idem_b: tuple[Matrix, ...]
    idem_c: tuple[Matrix, ...]
    w_a: WElements
    w_b: WElements
    w_c: WElements
    bar_a: Matrix
    bar_b: Matrix
    bar_c: Matrix
    cycler: Matrix  # W' W

    @property
    def order(self) -> int:
        return self.params.d + 1

    @property
    def identity(self) -> Matrix:
        return Matrix.identity(self.params.field, self.order)

    def member(self, name: str) -> Member:
        p, e = self.params, self.eig
        mats = {"a": self.A, "b": self.B, "c": self.C}
        prm = {"a": p.a, "b": p.b, "c": p.c}
        rel = {"a": e.rel_a, "b": e.rel_b, "c": e.rel_c}
        eig = {"a": e.eig_a, "b": e.eig_b, "c": e.eig_c}
        idem = {"a": self.idem_a, "b": self.idem_b, "c": self.idem_c}
        w = {"a": self.w_a, "b": self.w_b, "c": self.w_c}
        bar = {"a": self.bar_a, "b": self.bar_b, "c": self.bar_c}
        x, y, z = _ROTATION[name]
        return Member(
            name=name,
            x=mats[x], y=mats[y], z=mats[z],
            px=prm[x], py=prm[y], pz=prm[z],
            rel_x=rel[x], rel_y=rel[y], rel_z=rel[z],
            eig=eig[x], idem=idem[x], w=w[x], bar=bar[x],
        )

    def members(self) -> tuple[Member, Member, Member]:
        return self.member("a"), self.member("b"), self.member("c")


_ROTATION = {"a": "abc", "b": "bca", "c": "cab"}


def lagrange_idempotents(x: Matrix, eigs: Sequence[FieldElement]) -> list[Matrix]:
    """Primitive idempotents ``prod_{j != i} (x - eigs[j]) / (eigs[i] - eigs[j])``.

    Raises ValueError unless the eigenvalues are distinct and annihilate ``x``.
    """
    n = len(eigs)
    if n != x.order:
        raise ValueError("need one eigenvalue per dimension")
    if len(set(eigs)) != n:
        raise ValueError("eigenvalues are not distinct")
    factors = [x.shift(t) for t in eigs]
    prefix = [Matrix.identity(x.field, n)]
    for f in factors:
        prefix.append(prefix[-1] @ f)
    if not prefix[-1].is_zero():
        raise ValueError("not multiplicity-free with given spectrum")
    suffix = [Matrix.identity(x.field, n)]
    for f in reversed(factors[1:]):
        suffix.append(f @ suffix[-1])
    suffix.reverse()  # suffix[i] = factors[i+1] ... factors[n-1]
    out = []
    for i, ti in enumerate(eigs):
        den = x.field.one
        for j, tj in enumerate(eigs):
            if j != i:
                den = den * (ti - tj)
        out.append(prefix[i] @ suffix[i] / den)
    return out


def _w_weights(x: FieldElement, q: FieldElement, d: int) -> list[FieldElement]:
    return [(-1) ** i * x ** (-i) * q ** (i * (d - i)) for i in range(d + 1)]


def _w_elements(x: FieldElement, q: FieldElement, d: int, idem: Sequence[Matrix]) -> WElements:
    wt = _w_weights(x, q, d)
    return WElements(
        w=linear_combination(wt, idem),
        inv=linear_combination([1 / t for t in wt], idem),
        sq=linear_combination([t * t for t in wt], idem),
        sq_inv=linear_combination([1 / (t * t) for t in wt], idem),
    )


def _bars(A: Matrix, B: Matrix, C: Matrix, wa: WElements, wb: WElements, wc: WElements):
    return (
        wa.inv @ B @ wa.w - C,
        wb.inv @ C @ wb.w - A,
        wc.inv @ A @ wc.w - B,
    )


def build_triple(p: QRacahParams, basis: Basis | str = Basis.FIRST) -> TripleRealization:
    basis = Basis(basis)
    f, q, d = p.field, p.q, p.d
    eig = eigen_data(p)
    ones = [1] * d
    if basis is Basis.FIRST:
        A = Matrix.banded(f, eig.eig_a, sub=ones)
        B = Matrix.banded(f, eig.eig_b, sup=eig.split_first)
    else:
        A = Matrix.banded(f, eig.eig_a[::-1], sub=ones)
        B = Matrix.banded(f, eig.eig_b, sup=eig.split_second)
    C = (A @ B * q - B @ A / q) / (q * q - q ** (-2))
    C = Matrix.scalar(f, d + 1, eig.rel_c) - C
    idem_a = tuple(lagrange_idempotents(A, eig.eig_a))
    idem_b = tuple(lagrange_idempotents(B, eig.eig_b))
    idem_c = tuple(lagrange_idempotents(C, eig.eig_c))
    wa = _w_elements(p.a, q, d, idem_a)
    wb = _w_elements(p.b, q, d, idem_b)
    wc = _w_elements(p.c, q, d, idem_c)
    bar_a, bar_b, bar_c = _bars(A, B, C, wa, wb, wc)
    return TripleRealization(
        params=p, eig=eig, basis=basis, A=A, B=B, C=C,
        idem_a=idem_a, idem_b=idem_b, idem_c=idem_c,
        w_a=wa, w_b=wb, w_c=wc,
        bar_a=bar_a, bar_b=bar_b, bar_c=bar_c,
        cycler=wb.w @ wa.w,
    )


def build_w_elements(r: TripleRealization) -> tuple[WElements, WElements, WElements]:
    """Recompute W, W', W'' (and inverses, squares) from the idempotents of ``r``."""
    p = r.params
    return (
        _w_elements(p.a, p.q, p.d, r.idem_a),
        _w_elements(p.b, p.q, p.d, r.idem_b),
        _w_elements(p.c, p.q, p.d, r.idem_c),
    )


def build_bars(r: TripleRealization) -> tuple[Matrix, Matrix, Matrix]:
    return _bars(r.A, r.B, r.C, r.w_a, r.w_b, r.w_c)


def idempotent_tau_expansion(eigs: Sequence[FieldElement], i: int) -> TauExpansion:
    """E_i in the tau-basis: coefficient of tau_j is ``1 / prod_{k <= j, k != i} (th_i - th_k)`` for j >= i."""
    f = eigs[0].field
    coeffs = []
    den = f.one
    for j in range(len(eigs)):
        if j != i:
            den = den * (eigs[i] - eigs[j])
        coeffs.append(f.zero if j < i else 1 / den)
    return TauExpansion(tuple(eigs[:-1]), tuple(coeffs))


def w_tau_expansion(p: QRacahParams, which: str, member: str = "a") -> TauExpansion:
    """Coefficients of W, W^-1, W^2 or W^-2 (``which``) in the tau-basis of its member.

    ``which`` is one of ``"W"``, ``"Winv"``, ``"Wsq"``, ``"Wsqinv"``.
    """
    q, d = p.q, p.d
    x = {"a": p.a, "b": p.b, "c": p.c}[member]
    q2 = q * q
    roots = tuple(eigenvalue(x, q, d, i) for i in range(d))
    coeffs = []
    for i in range(d + 1):
        base = q_pochhammer(q2, q2, i)
        if which == "W":
            c = (-1) ** i * q ** (i * i) / (base * q_pochhammer(x * q ** (1 - d), q2, i))
        elif which == "Winv":
            c = (-1) ** i * x**i * q ** (i * (i - d + 1)) / (base * q_pochhammer(x * q ** (1 - d), q2, i))
        elif which == "Wsq":
            c = x ** (-i) * q ** (i * d) / base
        elif which == "Wsqinv":
            c = (-1) ** i * x**i * q ** (i * (i - d + 1)) / base
        else:
            raise ValueError(f"unknown expansion {which!r}")
        coeffs.append(c)
    return TauExpansion(roots, tuple(coeffs))


def _tau_products(x: Matrix, roots: Sequence[FieldElement]) -> list[Matrix]:
    out = [Matrix.identity(x.field, x.order)]
    for t in roots:
        out.append(out[-1] @ x.shift(t))
    return out


def bar_closed_form(p: QRacahParams, r: TripleRealization, member: str = "a") -> BarForm:
    """Closed forms of the bar element of ``member``: idempotent/inverse form and tau form."""
    m = r.member(member)
    q, d, f = p.q, p.d, p.field
    x, y, z = m.px, m.py, m.pz
    th = m.eig
    s = q + 1 / q
    trace_scale = (y - z) * (y - 1 / z) / y * q_bracket(d + 1, q)
    taus = _tau_products(m.x, th[:d])
    if x == q ** (d + 1):
        coeffs, den = [], f.one
        for i in range(d + 1):
            if i:
                den = den * (th[0] - th[i])
            coeffs.append(trace_scale / den)
        return BarForm("top", m.idem[0] * trace_scale, linear_combination(coeffs, taus))
    if x == q ** (-d - 1):
        den = f.one
        for k in range(d):
            den = den * (th[d] - th[k])
        return BarForm("bottom", m.idem[d] * trace_scale, taus[d] * (trace_scale / den))
    ident = Matrix.identity(f, d + 1)
    inv_form = mat_inverse(ident - m.x / s) * (m.rel_y - m.rel_z)
    lead = (x - q ** (-d - 1)) * (y - z) * (y - 1 / z) / y * q**d / (x - q ** (d - 1))
    coeffs, den = [], f.one
    for i in range(d + 1):
        if i:
            den = den * (s - th[i])
        coeffs.append(lead / den)
    return BarForm("generic", inv_form, linear_combination(coeffs, taus))


def commutant_system(r: TripleRealization, member: str = "a") -> list[list[FieldElement]]:
    """Rows of the homogeneous system ``t_j + (q th_i - q^-1 th_j)/(q^2 - q^-2) t_i = 0``, |i-j| = 1."""
    m = r.member(member)
    q, d, f = r.params.q, r.params.d, r.params.field
    s2 = q * q - q ** (-2)
    rows = []
    for i in range(d + 1):
        for j in (i - 1, i + 1):
            if 0 <= j <= d:
                row = [f.zero] * (d + 1)
                row[j] = row[j] + 1
                row[i] = row[i] + (q * m.eig[i] - m.eig[j] / q) / s2
                rows.append(row)
    return rows


def solve_commutant_w(r: TripleRealization, member: str = "a") -> CommutantSolution:
    """Weights t with t_0 = 1 making ``sum t_i E_i`` satisfy the commutation conditions.

    Verifies that the weights solve every equation of :func:`commutant_system`,
    that the resulting operator commutes with its member and with the
    corrected conjugate, and reports the nullity of the system.
    """
    m = r.member(member)
    q, d, f = r.params.q, r.params.d, r.params.field
    s2 = q * q - q ** (-2)
    t = [f.one]
    for i in range(1, d + 1):
        t.append(-t[-1] * (q * m.eig[i - 1] - m.eig[i] / q) / s2)
    rows = commutant_system(r, member)
    for row in rows:
        if sum((c * ti for c, ti in zip(row, t)), f.zero) != 0:
            raise ArithmeticError("recurrence inconsistent")
    if any(ti.is_zero() for ti in t):
        raise ArithmeticError("recurrence produced a zero weight")
    w = linear_combination(t, m.idem)
    w_inv = linear_combination([1 / ti for ti in t], m.idem)
    if not commutator(m.x, w).is_zero():
        raise ArithmeticError("solution does not commute with its member")
    if not commutator(m.x, w_inv @ m.y @ w - m.z).is_zero():
        raise ArithmeticError("corrected conjugate does not commute with the member")
    nullity = (d + 1) - rank_of_rows(f, rows)
    return CommutantSolution(tuple(t), t[0], nullity)
