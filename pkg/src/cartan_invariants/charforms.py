"""Atiyah, Chern, Chern-character, Todd and Chern-Simons forms of a model.

Conventions.  The Atiyah matrix A of a module V collects the 2-forms
a(x, y) = -rho_V(proj_0 [x, y]) against the dual monomials x* ^ y* for x in
g+, y in g-; its entries carry no tau.  Chern forms are c_k = tau^k e_k(A),
Chern characters ch_j = tau^j tr(A^j)/j!, and the transgression form of an
invariant f of degree k carries tau^k.

The transgression is normalized so that d CS_f = f(A, ..., A) (tau-scaled)
holds as an exact exterior identity on models whose g- bracket has no g0
component, which covers every built-in family; the coefficient sequence a_j
matches the classical one after the usual 2^j rebalancing against the
commutator argument (``cs_coefficients``).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import factorial

from .forms import Form, Grade, ce_differential, plus_component
from .invariants import InvPoly
from .linalg import QMatrix
from .model import LieModel, Part, Rep
from .scalars import TauScalar


class MatrixForm:
    """Rectangular array of Forms."""

    __slots__ = ("grid", "rows", "cols")

    def __init__(self, grid: list[list[Form]]):
        self.grid = grid
        self.rows = len(grid)
        self.cols = len(grid[0]) if grid else 0
        for row in grid:
            if len(row) != self.cols:
                raise ValueError("ragged MatrixForm")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatrixForm":
        return cls([[Form.zero() for _ in range(cols)] for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "MatrixForm":
        return cls([[Form.unit() if i == j else Form.zero() for j in range(n)] for i in range(n)])

    def __add__(self, other: "MatrixForm") -> "MatrixForm":
        return MatrixForm(
            [[self.grid[i][j] + other.grid[i][j] for j in range(self.cols)]
             for i in range(self.rows)]
        )

    def scale(self, c) -> "MatrixForm":
        return MatrixForm([[f.scale(c) for f in row] for row in self.grid])

    def matwedge(self, other: "MatrixForm") -> "MatrixForm":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = Form.zero()
                for k in range(self.cols):
                    a = self.grid[i][k]
                    b = other.grid[k][j]
                    if a.is_zero or b.is_zero:
                        continue
                    acc = acc + a.wedge(b)
                row.append(acc)
            out.append(row)
        return MatrixForm(out)

    def trace(self) -> Form:
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        acc = Form.zero()
        for i in range(self.rows):
            acc = acc + self.grid[i][i]
        return acc

    def is_zero(self) -> bool:
        return all(f.is_zero for row in self.grid for f in row)

    def entry_degree(self) -> int | None:
        degs = set()
        for row in self.grid:
            for f in row:
                degs |= f.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"inhomogeneous matrix form, degrees {sorted(degs)}")
        return degs.pop()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixForm)
            and self.rows == other.rows
            and self.cols == other.cols
            and all(
                self.grid[i][j] == other.grid[i][j]
                for i in range(self.rows)
                for j in range(self.cols)
            )
        )


def atiyah_form(m: LieModel, rep: Rep) -> MatrixForm:
    """Matrix of 2-forms sum_{x,y} a(x,y) x*^y*, a(x,y) = -rho(proj0 [x,y])."""
    n = rep.dim
    grid = [[dict() for _ in range(n)] for _ in range(n)]
    for x in m.part_range(Part.PLUS):
        for y in m.part_range(Part.MINUS):
            comp = m.bracket_basis(x, y)
            coeffs = m.zero_coefficients(comp)
            if not any(coeffs):
                continue
            rho = rep.act(coeffs).data  # rho(proj0[x,y])
            mask = (1 << y) | (1 << x)
            # a(x,y) = -rho, and x*^y* = -(y*^x*) in canonical (y-first)
            # order, so the stored coefficient on the mask is +rho.
            for i in range(n):
                for j in range(n):
                    if rho[i][j]:
                        grid[i][j][mask] = TauScalar.of(rho[i][j])
    return MatrixForm([[Form(grid[i][j]) for j in range(n)] for i in range(n)])


def tangent_atiyah_form(m: LieModel, rep: Rep | None = None):
    """Symmetrized tangent Atiyah tensor a_T(x,y,z) = (a(x,y)z + a(x,z)y)/2.

    Returned as a nested dict a_T[x][y][z] -> coefficient list over g-, with
    x a g+ gid and y, z g- gids.
    """
    rep = rep or tangent_rep(m)
    if rep.dim != m.dims[0]:
        raise ValueError("tangent Atiyah tensor needs the g- action")
    minus = list(m.part_range(Part.MINUS))
    out: dict[int, dict[int, dict[int, list[Fraction]]]] = {}
    amap: dict[tuple[int, int], list[list[Fraction]]] = {}
    for x in m.part_range(Part.PLUS):
        for y in minus:
            coeffs = m.zero_coefficients(m.bracket_basis(x, y))
            amap[(x, y)] = [[-v for v in row] for row in rep.act(coeffs).data]
    for x in m.part_range(Part.PLUS):
        out[x] = {}
        for yi, y in enumerate(minus):
            out[x][y] = {}
            for zi, z in enumerate(minus):
                col_yz = [amap[(x, y)][i][zi] for i in range(len(minus))]
                col_zy = [amap[(x, z)][i][yi] for i in range(len(minus))]
                out[x][y][z] = [Fraction(a + b, 2) for a, b in zip(col_yz, col_zy)]
    return out


def tangent_rep(m: LieModel, label: str = "tangent") -> Rep:
    """g0 acting on g- through the bracket (the model-level tangent module)."""
    minus = list(m.part_range(Part.MINUS))
    pos = {g: i for i, g in enumerate(minus)}
    mats = []
    for u in m.part_range(Part.ZERO):
        data = [[Fraction(0)] * len(minus) for _ in minus]
        for j, y in enumerate(minus):
            for k, c in m.bracket_basis(u, y).items():
                if k in pos:
                    data[pos[k]][j] = c
        mats.append(QMatrix(data))
    return Rep(label, mats)


def omega0_matrix(m: LieModel, rep: Rep) -> MatrixForm:
    """The 1-form matrix sum_b rho(e_b) eta^b over the g0 basis."""
    n = rep.dim
    grid = [[dict() for _ in range(n)] for _ in range(n)]
    for pos, b in enumerate(m.part_range(Part.ZERO)):
        mat = rep.matrices[pos].data
        mask = 1 << b
        for i in range(n):
            for j in range(n):
                if mat[i][j]:
                    grid[i][j][mask] = TauScalar.of(mat[i][j])
    return MatrixForm([[Form(grid[i][j]) for j in range(n)] for i in range(n)])


# -- Chern forms -----------------------------------------------------------


def chern_forms(m: LieModel, rep: Rep, k_max: int) -> list[Form]:
    """c_1 .. c_k by the Faddeev-LeVerrier recursion over the even-form ring:
    G_k = A B_{k-1}, e_k = tr(G_k)/k, B_k = e_k I - G_k; c_k = tau^k e_k."""
    if k_max > rep.dim:
        raise ValueError("k_max exceeds module dimension")
    a = atiyah_form(m, rep)
    out = []
    b = MatrixForm.identity(rep.dim)
    for k in range(1, k_max + 1):
        g = a.matwedge(b)
        ek = g.trace().scale(Fraction(1, k))
        out.append(ek.tau_shift(k))
        b = _sub(_diag(ek, rep.dim), g)
    return out


def _diag(f: Form, n: int) -> MatrixForm:
    return MatrixForm([[f if i == j else Form.zero() for j in range(n)] for i in range(n)])


def _sub(a: MatrixForm, b: MatrixForm) -> MatrixForm:
    return MatrixForm(
        [[a.grid[i][j] - b.grid[i][j] for j in range(a.cols)] for i in range(a.rows)]
    )


def chern_character(m: LieModel, rep: Rep, j_max: int) -> list[Form]:
    """ch_1 .. ch_j with ch_j = tau^j tr(A^j)/j!."""
    a = atiyah_form(m, rep)
    out = []
    power = a
    for j in range(1, j_max + 1):
        if j > 1:
            power = power.matwedge(a)
        out.append(power.trace().scale(Fraction(1, factorial(j))).tau_shift(j))
    return out


TODD_MAX = 4


def todd_forms(m: LieModel, rep: Rep, k_max: int) -> list[Form]:
    """Todd forms through degree 4 from the universal polynomials."""
    if k_max > TODD_MAX:
        raise ValueError("todd_forms supports degree <= 4 only")
    cs = chern_forms(m, rep, min(k_max, rep.dim))

    def c(k: int) -> Form:
        return cs[k - 1] if k <= len(cs) else Form.zero()

    out = []
    if k_max >= 1:
        out.append(c(1).scale(Fraction(1, 2)))
    if k_max >= 2:
        out.append((c(1).wedge(c(1)) + c(2)).scale(Fraction(1, 12)))
    if k_max >= 3:
        out.append(c(1).wedge(c(2)).scale(Fraction(1, 24)))
    if k_max >= 4:
        c1 = c(1)
        c1sq = c1.wedge(c1)
        term = (
            c1sq.wedge(c1sq).scale(-1)
            + c1sq.wedge(c(2)).scale(4)
            + c1.wedge(c(3))
            + c(2).wedge(c(2)).scale(3)
            - c(4)
        )
        out.append(term.scale(Fraction(1, 720)))
    return out


# -- polarization / Chern-Simons ---------------------------------------------


def _koszul_sign(perm: tuple[int, ...], degrees: list[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        if degrees[perm[i]] % 2 == 0:
            continue
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j] and degrees[perm[j]] % 2 == 1:
                sign = -sign
    return sign


def _infer_degrees(args: list[MatrixForm]) -> list[int]:
    degs = []
    for a in args:
        d = a.entry_degree()
        degs.append(2 if d is None else d)
    return degs


def _polarized(f: InvPoly, args: list[MatrixForm], degrees: list[int] | None = None) -> Form:
    """Unnormalized graded symmetrization sum_{sigma in S_k} of the trace words.

    Arguments with the same identity are collapsed first, folding Koszul signs
    into multiplicities, so the k! loop never touches matrix arithmetic.
    """
    k = len(args)
    if f.degree != k:
        raise ValueError(f"invariant of degree {f.degree} applied to {k} arguments")
    if k == 0:
        return Form.zero()
    degrees = degrees or _infer_degrees(args)
    ids = []
    seen: dict[int, int] = {}
    for a in args:
        seen.setdefault(id(a), len(seen))
        ids.append(seen[id(a)])
    uniq: dict[int, MatrixForm] = {}
    for a, i in zip(args, ids):
        uniq[i] = a
    weights: dict[tuple[int, ...], int] = {}
    for perm in permutations(range(k)):
        seq = tuple(ids[p] for p in perm)
        weights[seq] = weights.get(seq, 0) + _koszul_sign(perm, degrees)
    result = Form.zero()
    prod_cache: dict[tuple[int, ...], MatrixForm] = {}

    def product(seq: tuple[int, ...]) -> MatrixForm:
        if seq in prod_cache:
            return prod_cache[seq]
        if len(seq) == 1:
            mat = uniq[seq[0]]
        else:
            mat = product(seq[:-1]).matwedge(uniq[seq[-1]])
        prod_cache[seq] = mat
        return mat

    for seq, weight in weights.items():
        if not weight:
            continue
        for word, coeff in f.terms.items():
            pos = 0
            acc = Form.unit()
            for part in word:
                group = seq[pos:pos + part]
                pos += part
                acc = acc.wedge(product(group).trace())
                if acc.is_zero:
                    break
            if not acc.is_zero:
                result = result + acc.scale(coeff * weight)
    return result


def invariant_poly_eval(f: InvPoly, args: list[MatrixForm],
                        degrees: list[int] | None = None) -> Form:
    """Symmetric multilinear evaluation; at equal arguments it recovers f."""
    return _polarized(f, args, degrees).scale(Fraction(1, factorial(len(args))))


def cs_coefficients(k: int, halved: bool = False) -> list[Fraction]:
    """Transgression coefficients a_j = (-1)^j (k-1)! / ((k+j)! (k-1-j)!).

    ``halved`` returns the classical A_j = a_j / 2^j; the resulting form is
    the same either way because that normalization pairs with the doubled
    commutator argument.
    """
    out = []
    for j in range(k):
        a = Fraction((-1) ** j * factorial(k - 1), factorial(k + j) * factorial(k - 1 - j))
        out.append(a / 2 ** j if halved else a)
    return out


def chern_simons_form(m: LieModel, rep: Rep, f: InvPoly) -> Form:
    """Transgression CS_f = tau^k sum_j a_j f~(u, v^j, a^(k-1-j)) with
    u the g0 1-form matrix, v its matrix square, a the Atiyah matrix and
    f~ the unnormalized polarization.  d(CS_f) recovers the Chern form of f
    on models with [g-, g-]_0 = 0 (all built-in families)."""
    k = f.degree
    if k < 1:
        raise ValueError("need a positive-degree invariant")
    u = omega0_matrix(m, rep)
    a = atiyah_form(m, rep)
    v = u.matwedge(u)
    coeffs = cs_coefficients(k)
    acc = Form.zero()
    for j in range(k):
        args = [u] + [v] * j + [a] * (k - 1 - j)
        degrees = [1] + [2] * (k - 1)
        acc = acc + _polarized(f, args, degrees).scale(coeffs[j])
    return acc.tau_shift(k)


def cs_class(m: LieModel, rep: Rep, f: InvPoly) -> tuple[Form, Grade]:
    """The surviving quotient term of CS_f: tau^k a_0 f~(u, a^(k-1)), at grade
    (k-1, 1, k-1).  Equals the plus-count-(k-1) component of the full form."""
    k = f.degree
    if k < 1:
        raise ValueError("need a positive-degree invariant")
    u = omega0_matrix(m, rep)
    a = atiyah_form(m, rep)
    args = [u] + [a] * (k - 1)
    form = _polarized(f, args, [1] + [2] * (k - 1)).scale(cs_coefficients(k)[0]).tau_shift(k)
    return form, Grade(k - 1, 1, k - 1)


def chern_form_of(m: LieModel, rep: Rep, f: InvPoly) -> Form:
    """tau^k f(A, ..., A), the Chern form associated to an invariant f."""
    a = atiyah_form(m, rep)
    return invariant_poly_eval(f, [a] * f.degree, [2] * f.degree).tau_shift(f.degree)


def transgression_checks(m: LieModel, rep: Rep, f: InvPoly) -> dict:
    """Convenience bundle: d CS_f vs the Chern form, and the quotient identity
    quotient_d(cs_class) = Chern form."""
    cs = chern_simons_form(m, rep, f)
    target = chern_form_of(m, rep, f)
    t_form, grade = cs_class(m, rep, f)
    return {
        "d_cs_equals_chern": ce_differential(m, cs) == target,
        "class_is_projection": plus_component(m, cs, f.degree - 1) == t_form,
        "quotient_d_equals_chern": plus_component(m, ce_differential(m, t_form), f.degree)
        == target,
    }


def verify_multiplicativity(m: LieModel, sub: Rep, total: Rep, quot: Rep,
                            k_max: int) -> dict:
    """Check the block-triangular splitting and c(sub)^c(quot) = c(total).

    ``total`` must act block-triangularly with ``sub`` in the top-left and
    ``quot`` in the bottom-right corner of the given basis.
    """
    ds, dq = sub.dim, quot.dim
    if total.dim != ds + dq:
        raise ValueError("dimension mismatch in exact sequence")
    for pos, mat in enumerate(total.matrices):
        for i in range(ds, ds + dq):
            for j in range(ds):
                if mat.data[i][j]:
                    raise ValueError(
                        f"total rep is not block-triangular at g0 generator {pos}"
                    )
        for i in range(ds):
            for j in range(ds):
                if mat.data[i][j] != sub.matrices[pos].data[i][j]:
                    raise ValueError("sub block mismatch")
        for i in range(dq):
            for j in range(dq):
                if mat.data[ds + i][ds + j] != quot.matrices[pos].data[i][j]:
                    raise ValueError("quot block mismatch")
    c_sub = [Form.unit()] + chern_forms(m, sub, min(k_max, ds))
    c_quot = [Form.unit()] + chern_forms(m, quot, min(k_max, dq))
    c_tot = [Form.unit()] + chern_forms(m, total, min(k_max, ds + dq))
    results = {}
    for k in range(1, min(k_max, ds + dq) + 1):
        acc = Form.zero()
        for i in range(0, k + 1):
            if i < len(c_sub) and (k - i) < len(c_quot):
                acc = acc + c_sub[i].wedge(c_quot[k - i])
        results[k] = acc == c_tot[k]
    return {"ok": all(results.values()), "by_degree": results}
