"""Catalog of exact identity checks over a :class:`TripleRealization`.

Each check is a function that either returns a short detail string (pass)
or raises :class:`CheckFailed` with a concrete witness: the first differing
matrix entry or the offending scalar.  Nothing is compared with a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fnmatch import fnmatchcase
from typing import Callable, Iterator

import numpy as np

from .fields import FieldElement
from .matrix import (
    Matrix,
    ShapeClass,
    classify_shape,
    commutator,
    krylov_matrix,
    mat_inverse,
    mat_rank,
    pair_products,
    solve_in_span,
)
from .params import chu_identity1, chu_identity3, is_similar, q_bracket
from .report import CheckResult, VerificationReport
from .triple import (
    Member,
    TripleRealization,
    bar_closed_form,
    idempotent_tau_expansion,
    solve_commutant_w,
    w_tau_expansion,
)

__all__ = [
    "CheckFailed",
    "CheckDescriptor",
    "list_checks",
    "select_checks",
    "run_check",
    "run_all",
]


class CheckFailed(AssertionError):
    pass


@dataclass(frozen=True)
class CheckDescriptor:
    id: str
    paper_ref: str  # the identity being checked, in words
    func: Callable[["_Context"], str | None]
    applies: Callable[[TripleRealization], bool] | None = None
    requires: str = ""

    def applicable(self, r: TripleRealization) -> bool:
        return self.applies is None or self.applies(r)


_CATALOG: list[CheckDescriptor] = []


def _register(id: str, ref: str, func, applies=None, requires: str = "") -> None:
    if any(c.id == id for c in _CATALOG):
        raise RuntimeError(f"duplicate check id {id}")
    _CATALOG.append(CheckDescriptor(id, ref, func, applies, requires))


def check(id: str, ref: str, applies=None, requires: str = ""):
    def deco(func):
        _register(id, ref, func, applies, requires)
        return func

    return deco


# -- comparison helpers --------------------------------------------------------


def _same(label: str, lhs: Matrix, rhs: Matrix) -> None:
    diff = lhs.first_difference(rhs)
    if diff is not None:
        i, j, x, y = diff
        raise CheckFailed(f"{label}: entry ({i},{j}) {x} != {y}")


def _same_scalar(label: str, lhs: FieldElement, rhs: FieldElement) -> None:
    if lhs != rhs:
        raise CheckFailed(f"{label}: {lhs} != {rhs}")


def _zero(label: str, x: Matrix) -> None:
    _same(label, x, Matrix.zeros(x.field, x.order))


def _nonzero(label: str, x: Matrix) -> None:
    if x.is_zero():
        raise CheckFailed(f"{label}: matrix is zero")


class _Context:
    """A realization plus a cache of the conjugates several checks share."""

    def __init__(self, r: TripleRealization):
        self.r = r
        self.p = r.params
        self.q = r.params.q
        self.d = r.params.d
        self.f = r.params.field
        self.kappa = self.q - 1 / self.q
        self.sigma = self.q + 1 / self.q
        self.members = r.members()
        self._cache: dict = {}

    def member(self, name: str) -> Member:
        return {"a": self.members[0], "b": self.members[1], "c": self.members[2]}[name]

    def conj(self, m: Member, power: int, target: str) -> Matrix:
        """``W^-k T W^k`` for ``power = k`` in {1, -1, 2, -2} and ``target`` in x, y, z."""
        key = (m.name, power, target)
        if key not in self._cache:
            w = m.w
            left, right = {1: (w.inv, w.w), -1: (w.w, w.inv), 2: (w.sq_inv, w.sq), -2: (w.sq, w.sq_inv)}[power]
            self._cache[key] = left @ getattr(m, target) @ right
        return self._cache[key]

    @property
    def ident(self) -> Matrix:
        return self.r.identity

    def scalar(self, s) -> Matrix:
        return Matrix.scalar(self.f, self.d + 1, s)


def _names(m: Member) -> tuple[str, str, str]:
    return tuple({"a": "ABC", "b": "BCA", "c": "CAB"}[m.name])


def _wname(m: Member) -> str:
    return {"a": "W", "b": "W'", "c": "W''"}[m.name]


# -- eigenvalue scalars --------------------------------------------------------


def _sequences(ctx: _Context):
    for m in ctx.members:
        yield m.name, m.px, m.eig


@check("eig.distinct", "each eigenvalue sequence has d+1 distinct terms")
def _eig_distinct(ctx):
    for name, _, th in _sequences(ctx):
        if len(set(th)) != len(th):
            raise CheckFailed(f"eigenvalues of member {name} repeat")


@check("eig.lem1", "th_i - th_j = (1 - q^(2j-2i)) (x q^(2i-d) - x^-1 q^(d-2j))")
def _eig_lem1(ctx):
    q, d = ctx.q, ctx.d
    for name, x, th in _sequences(ctx):
        for i in range(d + 1):
            for j in range(d + 1):
                rhs = (1 - q ** (2 * j - 2 * i)) * (x * q ** (2 * i - d) - q ** (d - 2 * j) / x)
                _same_scalar(f"{name}: th_{i} - th_{j}", th[i] - th[j], rhs)


@check(
    "eig.lem4",
    "(q th_i - q^-1 th_(i-1)) / (q^2 - q^-2) = x q^(2i-d-1) and the reversed form = x^-1 q^(d-2i+1)",
    applies=lambda r: r.params.d >= 1,
    requires="d >= 1",
)
def _eig_lem4(ctx):
    q, d = ctx.q, ctx.d
    s = q * q - q ** (-2)
    for name, x, th in _sequences(ctx):
        for i in range(1, d + 1):
            up = (q * th[i] - th[i - 1] / q) / s
            down = (q * th[i - 1] - th[i] / q) / s
            _same_scalar(f"{name}: forward quotient at i={i}", up, x * q ** (2 * i - d - 1))
            _same_scalar(f"{name}: backward quotient at i={i}", down, q ** (d - 2 * i + 1) / x)
            _same_scalar(f"{name}: product at i={i}", up * down, ctx.f.one)


@check("eig.qqth", "th_i - q - q^-1 = (x - q^(d-2i+1)) (x - q^(d-2i-1)) q^(2i-d) x^-1")
def _eig_qqth(ctx):
    q, d = ctx.q, ctx.d
    for name, x, th in _sequences(ctx):
        for i in range(d + 1):
            rhs = (x - q ** (d - 2 * i + 1)) * (x - q ** (d - 2 * i - 1)) * q ** (2 * i - d) / x
            _same_scalar(f"{name}: th_{i} - q - q^-1", th[i] - ctx.sigma, rhs)


@check(
    "eig.eigreq",
    "(th_(i-2) - th_(i+1)) / (th_(i-1) - th_i) is q^2 + 1 + q^-2 for every sequence",
    applies=lambda r: r.params.d >= 3,
    requires="d >= 3",
)
def _eig_eigreq(ctx):
    q, d = ctx.q, ctx.d
    target = q * q + 1 + q ** (-2)
    for name, _, th in _sequences(ctx):
        for i in range(2, d):
            ratio = (th[i - 2] - th[i + 1]) / (th[i - 1] - th[i])
            _same_scalar(f"{name}: ratio at i={i}", ratio, target)
    return f"ratio = {target}"


# -- the triple itself ----------------------------------------------------------


@check("triple.shape", "A is lower bidiagonal and B upper bidiagonal in the chosen basis")
def _triple_shape(ctx):
    r = ctx.r
    if ctx.d == 0:
        return None
    for label, mat, want in (("A", r.A, ShapeClass.LOWER_BIDIAGONAL), ("B", r.B, ShapeClass.UPPER_BIDIAGONAL)):
        got = classify_shape(mat)
        if got is not want:
            raise CheckFailed(f"{label} is {got.value}, expected {want.value}")
    order = r.eig.eig_a if r.basis.value == "first" else r.eig.eig_a[::-1]
    for i, t in enumerate(order):
        _same_scalar(f"A diagonal entry {i}", r.A[i, i], t)
    for i, t in enumerate(r.eig.eig_b):
        _same_scalar(f"B diagonal entry {i}", r.B[i, i], t)


@check(
    "triple.idempotents",
    "prod (X - th_i I) = 0, E_i E_j = delta_ij E_i, sum E_i = I, X E_i = th_i E_i, tr E_i = 1, tau form of E_i",
)
def _triple_idempotents(ctx):
    for m in ctx.members:
        e = m.idem
        minpoly = ctx.ident
        for t in m.eig:
            minpoly = minpoly @ m.x.shift(t)
        _zero(f"{m.name}: minimal polynomial", minpoly)
        for i in range(ctx.d + 1):
            _same(f"{m.name}: tau form of E_{i}", idempotent_tau_expansion(m.eig, i).evaluate(m.x), e[i])
        prods = pair_products(e, None, e)
        zero = Matrix.zeros(ctx.f, ctx.d + 1)
        total = zero
        for i in range(ctx.d + 1):
            for j in range(ctx.d + 1):
                _same(f"{m.name}: E_{i} E_{j}", prods[i][j], e[i] if i == j else zero)
            _same(f"{m.name}: X E_{i}", m.x @ e[i], e[i] * m.eig[i])
            _same_scalar(f"{m.name}: tr E_{i}", e[i].trace(), ctx.f.one)
            total = total + e[i]
        _same(f"{m.name}: sum of idempotents", total, ctx.ident)


def _eigenbasis(e: tuple[Matrix, ...]) -> Matrix:
    cols = []
    for k, ek in enumerate(e):
        nz = np.flatnonzero(np.any(ek.arr != 0, axis=0))
        if len(nz) == 0:
            raise CheckFailed(f"idempotent E_{k} is zero")
        cols.append(ek.arr[:, nz[0]])
    return Matrix(e[0].field, np.array(np.stack(cols, axis=1)))


@check("triple.leonard", "each member is diagonal in a basis where the other two are irreducible tridiagonal")
def _triple_leonard(ctx):
    n = ctx.d + 1
    for m in ctx.members:
        s = _eigenbasis(m.idem)
        if mat_rank(s) != n:
            raise CheckFailed(f"{m.name}: eigenvectors do not span")
        s_inv = mat_inverse(s)
        conj_x = s_inv @ m.x @ s
        _same(f"{m.name}: member in its eigenbasis", conj_x, Matrix.banded(ctx.f, m.eig))
        for label, other in (("y", m.y), ("z", m.z)):
            shape = classify_shape(s_inv @ other @ s)
            want = ShapeClass.IRREDUCIBLE_TRIDIAGONAL if n > 1 else ShapeClass.DIAGONAL
            if shape is not want:
                raise CheckFailed(f"{m.name}: {label} is {shape.value} in the eigenbasis")


@check(
    "triple.cshape",
    "C is irreducible tridiagonal with subdiagonal entries -b^-1 q^(d-2i+1)",
    applies=lambda r: r.params.d >= 1,
    requires="d >= 1",
)
def _triple_cshape(ctx):
    r, q, d = ctx.r, ctx.q, ctx.d
    shape = classify_shape(r.C)
    if shape is not ShapeClass.IRREDUCIBLE_TRIDIAGONAL:
        raise CheckFailed(f"C is {shape.value}")
    for i in range(1, d + 1):
        _same_scalar(f"C entry ({i},{i - 1})", r.C[i, i - 1], -(q ** (d - 2 * i + 1)) / ctx.p.b)


for _k, _name in enumerate("abc"):

    def _zrel(ctx, name=_name):
        m, q = ctx.member(name), ctx.q
        x, y, z = _names(m)
        lhs = m.x + (m.y @ m.z * q - m.z @ m.y / q) / (q * q - q ** (-2))
        _same(f"{x} + (q{y}{z} - q^-1{z}{y})/(q^2-q^-2) vs alpha I", lhs, ctx.scalar(m.rel_x))

    _register(f"triple.zrel.{_name}", "X + (q YZ - q^-1 ZY)/(q^2 - q^-2) = alpha_x I, cyclically", _zrel)


_CUBIC_ORDER = (("a", False), ("b", False), ("c", False), ("a", True), ("b", True), ("c", True))

for _k, (_name, _swapped) in enumerate(_CUBIC_ORDER, start=1):

    def _cubic(ctx, name=_name, swapped=_swapped):
        m, q = ctx.member(name), ctx.q
        x = m.x
        y, rel_y, rel_other = (m.z, m.rel_z, m.rel_y) if swapped else (m.y, m.rel_y, m.rel_z)
        s = q * q - q ** (-2)
        beta = q * q + q ** (-2)
        lhs = x @ x @ y - x @ y @ x * beta + y @ x @ x + y * (s * s)
        rhs = ctx.scalar(rel_y * s * s) - x * (rel_other * ctx.kappa * s)
        _same("cubic relation", lhs, rhs)

    _register(
        f"triple.cubic.{_k}",
        "X^2Y - (q^2+q^-2) XYX + YX^2 + (q^2-q^-2)^2 Y = alpha_y (q^2-q^-2)^2 I - alpha_z (q-q^-1)(q^2-q^-2) X",
        _cubic,
    )


@check(
    "triple.trid",
    "E_i Y E_j (and E_i Z E_j) is zero for |i-j| > 1 and nonzero for |i-j| = 1",
    applies=lambda r: r.params.d >= 1,
    requires="d >= 1",
)
def _triple_trid(ctx):
    for m in ctx.members:
        for label, other in (("y", m.y), ("z", m.z)):
            prods = pair_products(m.idem, other, m.idem)
            for i in range(ctx.d + 1):
                for j in range(ctx.d + 1):
                    tag = f"{m.name}: E_{i} {label} E_{j}"
                    if abs(i - j) > 1:
                        _zero(tag, prods[i][j])
                    elif abs(i - j) == 1:
                        _nonzero(tag, prods[i][j])


# -- traces ---------------------------------------------------------------------


@check("trace.abc", "tr A = (a + a^-1)[d+1]_q, and likewise for B, C")
def _trace_abc(ctx):
    br = q_bracket(ctx.d + 1, ctx.q)
    for m in ctx.members:
        _same_scalar(f"tr {_names(m)[0]}", m.x.trace(), (m.px + 1 / m.px) * br)


for _k, (_name, _swapped) in enumerate(_CUBIC_ORDER, start=1):

    def _threea(ctx, name=_name, swapped=_swapped):
        m = ctx.member(name)
        y, rel_y, rel_z = (m.z, m.rel_z, m.rel_y) if swapped else (m.y, m.rel_y, m.rel_z)
        sg = ctx.sigma
        for i, (e, th) in enumerate(zip(m.idem, m.eig)):
            lhs = ((y @ e).trace() * (sg + th) / sg - rel_z) * (1 - th / sg)
            _same_scalar(f"trace equation at i={i}", lhs, rel_y - rel_z)

    _register(
        f"trace.threea.{_k}",
        "(tr(Y E_i)(q+q^-1+th_i)/(q+q^-1) - alpha_z)(1 - th_i/(q+q^-1)) = alpha_y - alpha_z",
        _threea,
    )


for _k, _name in enumerate("abc", start=1):

    def _alphadif(ctx, name=_name):
        m, q, d = ctx.member(name), ctx.q, ctx.d
        x, y, z = m.px, m.py, m.pz
        rhs = (y - x) * (y - 1 / x) * (z - q ** (d + 1)) * (z - q ** (-d - 1)) / (y * z * ctx.sigma)
        _same_scalar("alpha difference", m.rel_x - m.rel_y, rhs)

    _register(
        f"trace.alphadif.{_k}",
        "alpha_x - alpha_y = (y-x)(y-x^-1)(z-q^(d+1))(z-q^(-d-1)) y^-1 z^-1 / (q+q^-1)",
        _alphadif,
    )


# -- W-elements -----------------------------------------------------------------


@check("w.commute", "X commutes with W and with W^-1 Y W - Z")
def _w_commute(ctx):
    for m in ctx.members:
        _zero(f"[{_names(m)[0]}, {_wname(m)}]", commutator(m.x, m.w.w))
        _zero(f"{m.name}: [X, W^-1 Y W - Z]", commutator(m.x, ctx.conj(m, 1, "y") - m.z))


@check("w.unique", "weights t_i solving the commutation conditions form a one-dimensional space")
def _w_unique(ctx):
    for m in ctx.members:
        try:
            sol = solve_commutant_w(ctx.r, m.name)
        except ArithmeticError as exc:
            raise CheckFailed(f"{m.name}: {exc}") from None
        if sol.nullity != 1:
            raise CheckFailed(f"{m.name}: solution space has dimension {sol.nullity}")
        # the W-element is the t_0 = 1 solution
        for i, (t, e) in enumerate(zip(sol.t, m.idem)):
            _same(f"{m.name}: W E_{i}", m.w.w @ e, e * t)
    return "nullity 1 for each member"


@check("w.inverse", "the closed forms of W and W^-1 are mutually inverse")
def _w_inverse(ctx):
    for m in ctx.members:
        _same(f"{_wname(m)} {_wname(m)}^-1", m.w.w @ m.w.inv, ctx.ident)
        _same(f"{_wname(m)}^-1 {_wname(m)}", m.w.inv @ m.w.w, ctx.ident)


@check("w.squares", "the closed forms of W^2 and W^-2 are the squares of W and W^-1")
def _w_squares(ctx):
    for m in ctx.members:
        _same(f"{_wname(m)}^2", m.w.w @ m.w.w, m.w.sq)
        _same(f"{_wname(m)}^-2", m.w.inv @ m.w.inv, m.w.sq_inv)


# -- bar elements ----------------------------------------------------------------


@check("bar.membership", "the bar element commutes with X and equals sum E_i bar E_i")
def _bar_membership(ctx):
    for m in ctx.members:
        _zero(f"{m.name}: [bar, X]", commutator(m.bar, m.x))
        diag = Matrix.zeros(ctx.f, ctx.d + 1)
        for e in m.idem:
            diag = diag + e @ m.bar @ e
        _same(f"{m.name}: bar vs sum E_i bar E_i", m.bar, diag)


@check("bar.altform", "bar = Y - W Z W^-1")
def _bar_altform(ctx):
    for m in ctx.members:
        _same(f"{m.name}: bar vs Y - W Z W^-1", m.bar, m.y - ctx.conj(m, -1, "z"))


@check("bar.trace", "tr(bar) = tr Y - tr Z = (y-z)(y-z^-1) y^-1 [d+1]_q")
def _bar_trace(ctx):
    br = q_bracket(ctx.d + 1, ctx.q)
    for m in ctx.members:
        t = m.bar.trace()
        _same_scalar(f"{m.name}: tr bar vs tr Y - tr Z", t, m.y.trace() - m.z.trace())
        _same_scalar(f"{m.name}: tr bar closed form", t, (m.py - m.pz) * (m.py - 1 / m.pz) / m.py * br)


for _k, _name in enumerate("abc", start=1):

    def _abarinv(ctx, name=_name):
        m = ctx.member(name)
        factor = ctx.ident - m.x / ctx.sigma
        target = ctx.scalar(m.rel_y - m.rel_z)
        _same("bar (I - X/(q+q^-1))", m.bar @ factor, target)
        _same("(I - X/(q+q^-1)) bar", factor @ m.bar, target)

    _register(f"bar.abarinv.{_k}", "bar (I - X/(q+q^-1)) = (alpha_y - alpha_z) I = (I - X/(q+q^-1)) bar", _abarinv)


@check("bar.closed", "closed form of the bar element: scalar multiple of E_0, of E_d, or of (I - X/(q+q^-1))^-1")
def _bar_closed(ctx):
    cases = []
    for m in ctx.members:
        form = bar_closed_form(ctx.p, ctx.r, m.name)
        _same(f"{m.name} ({form.case}): bar vs closed form", m.bar, form.matrix)
        _same(f"{m.name} ({form.case}): bar vs tau form", m.bar, form.tau_matrix)
        cases.append(f"{m.name}:{form.case}")
    return " ".join(cases)


# -- conjugation tables ------------------------------------------------------------


def _table1(ctx: _Context, m: Member, power: int, target: str) -> Matrix:
    """Expected ``W^-k T W^k`` for k = power in {1, -1}."""
    k = ctx.kappa
    x, y, z, bar = m.x, m.y, m.z, m.bar
    if target == "x":
        return x
    if power == 1:
        return z + bar if target == "y" else y + commutator(z, x) / k - bar
    return z + commutator(x, y) / k + bar if target == "y" else y - bar


def _table2(ctx: _Context, m: Member, power: int, target: str) -> Matrix:
    """Expected ``W^-k T W^k`` for k = power in {2, -2}."""
    k = ctx.kappa
    x, y, z = m.x, m.y, m.z
    if target == "x":
        return x
    if power == 2:
        if target == "y":
            return y + commutator(z, x) / k
        return z - commutator(x, y) / k + commutator(x, commutator(x, z)) / (k * k)
    if target == "y":
        return y - commutator(z, x) / k + commutator(x, commutator(x, y)) / (k * k)
    return z + commutator(x, y) / k


def _conj_label(m: Member, power: int, target: str) -> str:
    w = _wname(m)
    t = dict(zip("xyz", _names(m)))[target]
    exp = {1: "", 2: "^2", -1: "", -2: "^2"}[power]
    inv = {1: "^-1", 2: "^-2", -1: "^-1", -2: "^-2"}[power]
    if power > 0:
        return f"{w}{inv} {t} {w}{exp}"
    return f"{w}{exp} {t} {w}{inv}"


def _table_cells(powers):
    for name in "abc":
        for power in powers:
            for target in "xyz":
                yield name, power, target


for _k, (_name, _power, _target) in enumerate(_table_cells((1, -1)), start=1):

    def _t1(ctx, name=_name, power=_power, target=_target):
        m = ctx.member(name)
        _same(_conj_label(m, power, target), ctx.conj(m, power, target), _table1(ctx, m, power, target))

    _register(f"conj.table1.{_k}", "conjugation of A, B, C by W^(+-1), W'^(+-1), W''^(+-1)", _t1)


@check("conj.wbwi", "W Y W^-1 - W^-1 Y W = [X,Y]/(q-q^-1), and likewise for Z")
def _conj_wbwi(ctx):
    for m in ctx.members:
        for t, other in (("y", m.y), ("z", m.z)):
            lhs = ctx.conj(m, -1, t) - ctx.conj(m, 1, t)
            _same(f"{m.name}: difference of {t}-conjugates", lhs, commutator(m.x, other) / ctx.kappa)


@check("conj.w22", "W^2 Y W^-2 + W^-2 Y W^2 = 2Y + [X,[X,Y]]/(q-q^-1)^2, and likewise for Z")
def _conj_w22(ctx):
    k2 = ctx.kappa * ctx.kappa
    for m in ctx.members:
        for t, other in (("y", m.y), ("z", m.z)):
            lhs = ctx.conj(m, -2, t) + ctx.conj(m, 2, t)
            rhs = other * 2 + commutator(m.x, commutator(m.x, other)) / k2
            _same(f"{m.name}: sum of squared {t}-conjugates", lhs, rhs)


for _k, (_name, _power, _target) in enumerate(_table_cells((2, -2)), start=1):

    def _t2(ctx, name=_name, power=_power, target=_target):
        m = ctx.member(name)
        _same(_conj_label(m, power, target), ctx.conj(m, power, target), _table2(ctx, m, power, target))

    _register(f"conj.table2.{_k}", "conjugation of A, B, C by the squares W^(+-2), W'^(+-2), W''^(+-2)", _t2)


_LUSZTIG = (("y", 2), ("y", -2), ("z", 2), ("z", -2))

for _k, (_target, _power) in enumerate(_LUSZTIG, start=1):

    def _lusztig(ctx, target=_target, power=_power):
        q = ctx.q
        den = ctx.kappa * (q * q - q ** (-2))
        left, right = (q, 1 / q) if power == 2 else (1 / q, q)
        for m in ctx.members:
            t = getattr(m, target)
            x = m.x
            rhs = t + (x @ x @ t * left - x @ t @ x * ctx.sigma + t @ x @ x * right) / den
            _same(_conj_label(m, power, target), ctx.conj(m, power, target), rhs)

    _register(
        f"conj.lusztig.{_k}",
        "W^(-+2) T W^(+-2) = T + (q^(+-1) X^2 T - (q+q^-1) XTX + q^(-+1) T X^2)/((q-q^-1)(q^2-q^-2))",
        _lusztig,
    )


# -- tau-expansions and q-series -------------------------------------------------


_W_FORMS = (("w", "W", "w"), ("winv", "Winv", "inv"), ("wsq", "Wsq", "sq"), ("wsqinv", "Wsqinv", "sq_inv"))

for _suffix, _which, _attr in _W_FORMS:

    def _poly(ctx, which=_which, attr=_attr):
        for m in ctx.members:
            expansion = w_tau_expansion(ctx.p, which, m.name)
            _same(f"{m.name}: tau form of {which}", expansion.evaluate(m.x), getattr(m.w, attr))

    _register(f"poly.w.{_suffix}", f"tau-basis expansion of {_which} equals its idempotent form", _poly)


_CHU = (
    ("1", chu_identity1, False),
    ("1inv", chu_identity1, True),
    ("3", chu_identity3, False),
    ("3inv", chu_identity3, True),
)

for _suffix, _fn, _inv in _CHU:

    def _chu(ctx, fn=_fn, inverted=_inv):
        for m in ctx.members:
            for j in range(ctx.d + 1):
                closed, series = fn(ctx.q, m.px, ctx.d, j, inverted=inverted)
                _same_scalar(f"{m.name}: j={j}", series, closed)
        return f"j = 0..{ctx.d}"

    _register(f"qser.chu.{_suffix}", "terminating q^2 Chu-Vandermonde evaluation for j = 0..d", _chu)


# -- products of W-elements -----------------------------------------------------------


def _product_scalar(ctx: _Context) -> FieldElement:
    p = ctx.p
    return (p.a * p.b * p.c) ** (-ctx.d) * ctx.q ** (ctx.d * (ctx.d - 1))


def _three(ctx: _Context) -> list[tuple[str, Matrix]]:
    r = ctx.r
    return [
        ("W'W", r.w_b.w @ r.w_a.w),
        ("W''W'", r.w_c.w @ r.w_b.w),
        ("WW''", r.w_a.w @ r.w_c.w),
    ]


@check("prod.squares", "W''^2 W'^2 W^2 = (abc)^-d q^(d(d-1)) I")
def _prod_squares(ctx):
    r = ctx.r
    s = _product_scalar(ctx)
    _same("W''^2 W'^2 W^2", r.w_c.sq @ r.w_b.sq @ r.w_a.sq, ctx.scalar(s))
    return f"scalar = {s}"


@check("prod.sumcomm", "W'W, W''W', WW'' each commute with A+B+C")
def _prod_sumcomm(ctx):
    total = ctx.r.A + ctx.r.B + ctx.r.C
    for label, g in _three(ctx):
        _zero(f"[{label}, A+B+C]", commutator(g, total))


@check("prod.cyclic", "e_0 generates the whole space under A+B+C")
def _prod_cyclic(ctx):
    total = ctx.r.A + ctx.r.B + ctx.r.C
    rank = mat_rank(krylov_matrix(total, 0))
    if rank != ctx.d + 1:
        raise CheckFailed(f"Krylov rank {rank} < {ctx.d + 1}")


@check("prod.commutant", "W'W, W''W', WW'' are polynomials in A+B+C")
def _prod_commutant(ctx):
    total = ctx.r.A + ctx.r.B + ctx.r.C
    powers = [ctx.ident]
    for _ in range(ctx.d):
        powers.append(powers[-1] @ total)
    for label, g in _three(ctx):
        if solve_in_span(powers, g) is None:
            raise CheckFailed(f"{label} is not a polynomial in A+B+C of degree <= {ctx.d}")


@check("prod.mutual", "W'W, W''W', WW'' mutually commute")
def _prod_mutual(ctx):
    three = _three(ctx)
    for i in range(3):
        for j in range(i + 1, 3):
            _zero(f"[{three[i][0]}, {three[j][0]}]", commutator(three[i][1], three[j][1]))


@check("prod.scalar", "(W'W)(W''W')(WW'') = (abc)^-d q^(d(d-1)) I")
def _prod_scalar(ctx):
    (_, g1), (_, g2), (_, g3) = _three(ctx)
    s = _product_scalar(ctx)
    _same("(W'W)(W''W')(WW'')", g1 @ g2 @ g3, ctx.scalar(s))
    return f"scalar = {s}"


# -- modular case ------------------------------------------------------------------------


@check("mod.threepart", "bar element of x vanishes iff y ~ z (equal or mutually inverse)")
def _mod_threepart(ctx):
    for m in ctx.members:
        similar = is_similar(m.py, m.pz)
        if m.bar.is_zero() != similar:
            state = "zero" if m.bar.is_zero() else "nonzero"
            raise CheckFailed(f"{m.name}: bar is {state} but similarity is {similar}")


def _is_modular(r: TripleRealization) -> bool:
    p = r.params
    return p.a == p.b == p.c


@check(
    "mod.cycle",
    "for a = b = c, P = W'W cycles A -> B -> C, the idempotents and W-elements, and P^3 = a^-3d q^(d(d-1)) I",
    applies=_is_modular,
    requires="a = b = c",
)
def _mod_cycle(ctx):
    r = ctx.r
    P = r.cycler
    P_inv = mat_inverse(P)
    for s, t, u in (("a", "b", "c"), ("b", "c", "a"), ("c", "a", "b")):
        ms, mt = ctx.member(s), ctx.member(t)
        if ms.eig != mt.eig:
            raise CheckFailed(f"eigenvalues of {s} and {t} differ")
        _same(f"P^-1 {_names(ms)[0]} P", P_inv @ ms.x @ P, mt.x)
        for i, (es, et) in enumerate(zip(ms.idem, mt.idem)):
            _same(f"P^-1 E_{i} P ({s} -> {t})", P_inv @ es @ P, et)
        _same(f"P^-1 {_wname(ms)} P", P_inv @ ms.w.w @ P, mt.w.w)
    _same("P vs W''W'", P, r.w_c.w @ r.w_b.w)
    _same("P vs WW''", P, r.w_a.w @ r.w_c.w)
    s = ctx.p.a ** (-3 * ctx.d) * ctx.q ** (ctx.d * (ctx.d - 1))
    _same("P^3", P @ P @ P, ctx.scalar(s))
    return f"P^3 = {s} I"


# -- running ------------------------------------------------------------------------------


def list_checks() -> list[CheckDescriptor]:
    return list(_CATALOG)


def select_checks(pattern: str | None) -> list[CheckDescriptor]:
    """Catalog entries whose id matches the glob ``pattern`` (all if None)."""
    if not pattern:
        return list_checks()
    return [c for c in _CATALOG if fnmatchcase(c.id, pattern)]


def _descriptor(id: str) -> CheckDescriptor:
    for c in _CATALOG:
        if c.id == id:
            return c
    raise KeyError(f"unknown check id {id!r}")


def _run(desc: CheckDescriptor, ctx: _Context) -> CheckResult:
    if not desc.applicable(ctx.r):
        return CheckResult(desc.id, desc.paper_ref, "skipped", f"requires {desc.requires}")
    try:
        detail = desc.func(ctx)
    except CheckFailed as exc:
        return CheckResult(desc.id, desc.paper_ref, "fail", str(exc))
    except (ArithmeticError, ValueError) as exc:
        return CheckResult(desc.id, desc.paper_ref, "fail", f"{type(exc).__name__}: {exc}")
    return CheckResult(desc.id, desc.paper_ref, "pass", detail or "")


def run_check(id: str, r: TripleRealization) -> CheckResult:
    return _run(_descriptor(id), _Context(r))


def iter_results(r: TripleRealization, checks: list[CheckDescriptor] | None = None) -> Iterator[CheckResult]:
    ctx = _Context(r)
    for desc in checks if checks is not None else _CATALOG:
        yield _run(desc, ctx)


def run_all(r: TripleRealization, checks: list[CheckDescriptor] | None = None) -> VerificationReport:
    """Run the catalog (or the given subset) in catalog order."""
    return VerificationReport.from_results(r.params, r.basis.value, list(iter_results(r, checks)))
