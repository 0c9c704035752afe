"""Exact relations among Chern forms, closedness, and transgression primitives.

Relation discovery is a nullspace computation: columns are the monomials
c_1^{m_1} ... c_k^{m_k} of weighted degree k (one per partition of k),
rows are the coefficients of the evaluated 2k-forms.  Every returned
relation is re-evaluated from scratch before it is reported.

A primitive of a class xi at grade (p, q, r) is a cochain psi with plus
count r-1 whose induced differential reproduces xi exactly; failure is a
mathematical finding reported with the rank certificate of the linear
system, not an error.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .charforms import chern_forms
from .forms import (Form, Grade, ce_differential, invariant_basis, is_at_grade,
                    monomial_masks, plus_component, quotient_d)
from .linalg import QMatrix, nullspace, rank, row_space_rref, solve
from .model import LieModel, Rep
from .scalars import TauScalar

Partition = tuple[int, ...]


def partitions_of(k: int) -> list[Partition]:
    """Partitions of k in descending lex order, so c_k comes first and c_1^k last."""
    out: list[Partition] = []

    def rec(remaining: int, cap: int, acc: list[int]):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for part in range(min(cap, remaining), 0, -1):
            acc.append(part)
            rec(remaining - part, part, acc)
            acc.pop()

    rec(k, k, [])
    out.sort(reverse=True)
    return out


def partition_label(p: Partition) -> str:
    factors = []
    i = 0
    while i < len(p):
        j = i
        while j < len(p) and p[j] == p[i]:
            j += 1
        factors.append(f"c{p[i]}" + (f"^{j - i}" if j - i > 1 else ""))
        i = j
    return "*".join(factors) if factors else "1"


def _thread_map(fn, items):
    workers = int(os.environ.get("CARTAN_INVARIANTS_THREADS", "1") or "1")
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def evaluate_partition(cforms: list[Form], p: Partition) -> Form:
    acc = Form.unit()
    for part in p:
        acc = acc.wedge(cforms[part - 1])
        if acc.is_zero:
            break
    return acc


@dataclass
class Relation:
    degree: int
    partitions: tuple[Partition, ...]
    coefficients: tuple[int, ...]  # aligned with ``partitions``, coprime, leading > 0

    def nonzero(self) -> list[tuple[Partition, int]]:
        return [(p, c) for p, c in zip(self.partitions, self.coefficients) if c]

    def to_json(self) -> dict:
        nz = self.nonzero()
        return {
            "monomials": [partition_label(p) for p, _ in nz],
            "coefficients": [str(c) for _, c in nz],
        }


def _normalize(vec: list[Fraction]) -> tuple[int, ...]:
    denom = 1
    for c in vec:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = [int(c * denom) for c in vec]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    if g:
        ints = [c // g for c in ints]
    for c in ints:
        if c:
            if c < 0:
                ints = [-x for x in ints]
            break
    return tuple(ints)


def find_relations(m: LieModel, rep: Rep, degree: int,
                   modulo_exact: bool = False) -> list[Relation]:
    """Integer relations among the weighted-degree-``degree`` Chern monomials
    of the module, as a canonical basis.

    With ``modulo_exact`` false (the default) a relation must evaluate to the
    exact zero form.  With it true, relations are taken in the trigraded
    quotient cohomology at grade (degree, 0, degree): the evaluated
    combination only has to be the induced differential of a g0-invariant
    cochain with minus count at least ``degree``.  Either way every returned
    relation is independently re-verified.
    """
    if degree > rep.dim:
        raise ValueError("degree exceeds module dimension")
    cforms = chern_forms(m, rep, degree)
    parts = partitions_of(degree)
    columns = _thread_map(lambda p: evaluate_partition(cforms, p), parts)
    exact_cols: list[Form] = []
    if modulo_exact:
        sources = invariant_basis(m, 2 * degree - 1, degree - 1, degree)
        exact_cols = _thread_map(
            lambda b: plus_component(m, ce_differential(m, b), degree), sources
        )
        exact_cols = [c for c in exact_cols if not c.is_zero]
    support = sorted({mask for col in columns + exact_cols for mask in col.terms})
    index = {mask: i for i, mask in enumerate(support)}
    width = len(parts) + len(exact_cols)
    mat = [[Fraction(0)] * width for _ in range(len(support))]
    for j, col in enumerate(columns):
        for mask, coeff in col.terms.items():
            exps = coeff.exponents()
            if exps != [degree]:
                raise AssertionError("Chern monomial with unexpected tau exponent")
            mat[index[mask]][j] = coeff.coeff(degree)
    for j, col in enumerate(exact_cols):
        for mask, coeff in col.terms.items():
            mat[index[mask]][len(parts) + j] = coeff.coeff(0)
    if support:
        vecs = [v[: len(parts)] for v in nullspace(QMatrix(mat))]
        vecs = [v for v in row_space_rref(vecs)]
    else:
        vecs = [tuple(Fraction(int(i == j)) for j in range(len(parts)))
                for i in range(len(parts))]
    out = []
    for vec in vecs:
        if not any(vec):
            continue
        coeffs = _normalize(list(vec))
        relation = Relation(degree, tuple(parts), coeffs)
        residual = Form.zero()
        for p, c in relation.nonzero():
            residual = residual + evaluate_partition(cforms, p).scale(c)
        if modulo_exact:
            if not residual.is_zero:
                check = find_primitive(m, residual, Grade(degree, 0, degree),
                                       invariant_only=True, min_minus=degree)
                if not check.exact:
                    raise AssertionError("class relation failed exactness re-check")
        elif not residual.is_zero:
            raise AssertionError("relation failed independent re-evaluation")
        out.append(relation)
    return out


def conformal_coefficients(n: int) -> list[int]:
    """Coefficients a_1..a_n of sum_{q=0}^{m} (1+h)^{n-2q} h^{2q}, n = 2m or 2m+1."""
    if n < 1:
        raise ValueError("n >= 1")
    poly = [0] * (n + 1)
    binom = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        binom[i][0] = 1
        for j in range(1, i + 1):
            binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j]
    for q in range(n // 2 + 1):
        for t in range(n - 2 * q + 1):
            if 2 * q + t <= n:
                poly[2 * q + t] += binom[n - 2 * q][t]
    return poly[1:]


def is_closed(m: LieModel, xi: Form, grade: Grade) -> tuple[bool, Form]:
    residual = quotient_d(m, xi, grade)
    return residual.is_zero, residual


def invariant_cocycles(m: LieModel, grade: Grade, min_minus: int | None = None) -> list[Form]:
    """Basis of the g0-invariant forms at the given grade that are closed in
    the quotient differential (min_minus defaults to the grade's p)."""
    min_minus = grade.p if min_minus is None else min_minus
    basis = invariant_basis(m, grade.degree(), grade.r, min_minus)
    if not basis:
        return []
    cols = [quotient_d(m, b, grade) for b in basis]
    support = sorted({mask for col in cols for mask in col.terms})
    if not support:
        return basis
    index = {mask: i for i, mask in enumerate(support)}
    mat = [[Fraction(0)] * len(basis) for _ in range(len(support))]
    for j, col in enumerate(cols):
        for mask, coeff in col.terms.items():
            mat[index[mask]][j] = coeff.coeff(0)
    out = []
    for combo in nullspace(QMatrix(mat)):
        f = Form.zero()
        for c, b in zip(combo, basis):
            if c:
                f = f + b.scale(c)
        out.append(f)
    return out


@dataclass
class PrimitiveResult:
    status: str  # "exact" | "not_exact"
    psi: Form | None
    grade: Grade
    searched_dimension: int
    certificate: dict

    @property
    def exact(self) -> bool:
        return self.status == "exact"


def find_primitive(m: LieModel, xi: Form, grade: Grade, invariant_only: bool = True,
                   min_minus: int = 0) -> PrimitiveResult:
    """Solve quotient_d(psi) = xi over cochains of plus count r-1.

    The search space is restricted to the g0-invariant subspace by default;
    the induced differential commutes with the reductive g0-action, so an
    invariant primitive exists whenever any primitive does, provided xi is
    itself invariant.
    """
    if grade.r < 1:
        raise ValueError("primitive search needs plus count >= 1")
    if not is_at_grade(m, xi, grade):
        raise ValueError(f"target not at grade {grade.as_tuple()}")
    deg = grade.degree() - 1
    if invariant_only:
        basis = invariant_basis(m, deg, grade.r - 1, min_minus)
    else:
        basis = [Form.monomial(mask) for mask in monomial_masks(m, deg, grade.r - 1, min_minus)]
    columns = _thread_map(
        lambda b: plus_component(m, ce_differential(m, b), grade.r), basis
    )
    support = sorted({mask for col in columns for mask in col.terms} | set(xi.terms))
    index = {mask: i for i, mask in enumerate(support)}
    mat_rows = [[Fraction(0)] * len(basis) for _ in range(len(support))]
    for j, col in enumerate(columns):
        for mask, coeff in col.terms.items():
            exps = coeff.exponents()
            if exps and exps != [0]:
                raise AssertionError("basis differentials must be tau-free")
            mat_rows[index[mask]][j] = coeff.coeff(0)
    mat = QMatrix(mat_rows)
    psi = Form.zero()
    for exp, piece in sorted(xi.tau_split().items()):
        # tau_split already strips the exponent from the coefficients
        rhs = [Fraction(0)] * len(support)
        for mask, coeff in piece.terms.items():
            rhs[index[mask]] = coeff.coeff(0)
        x = solve(mat, rhs)
        if x is None:
            aug = QMatrix([row + [rhs[i]] for i, row in enumerate(mat_rows)])
            return PrimitiveResult(
                "not_exact", None, grade, len(basis),
                {"matrix_rank": rank(mat), "augmented_rank": rank(aug),
                 "columns": len(basis), "tau_exponent": exp},
            )
        for c, b in zip(x, basis):
            if c:
                psi = psi + b.scale(TauScalar.of(c, exp))
    check = plus_component(m, ce_differential(m, psi), grade.r)
    if check != xi:
        raise AssertionError("primitive failed re-verification")
    return PrimitiveResult("exact", psi, grade, len(basis),
                           {"matrix_rank": rank(mat), "columns": len(basis)})


def exactness_audit(m: LieModel, rep: Rep, k_max: int | None = None) -> dict:
    """For a module that restricts a representation of the whole algebra,
    test each Chern form for exactness at grade (k, 0, k) in the quotient
    differential, with the full (min_minus = 0) search space."""
    if not rep.g_module:
        raise ValueError("exactness audit applies to g-module restrictions only")
    k_max = k_max or rep.dim
    cforms = chern_forms(m, rep, min(k_max, rep.dim))
    rows = []
    for k, ck in enumerate(cforms, start=1):
        if ck.is_zero:
            rows.append({"k": k, "chern_form_zero": True, "exact": True, "primitive": None})
            continue
        grade = Grade(k, 0, k)
        res = find_primitive(m, ck, grade, invariant_only=True, min_minus=0)
        rows.append({
            "k": k,
            "chern_form_zero": False,
            "exact": res.exact,
            "primitive": res.psi,
            "certificate": res.certificate,
        })
    return {"rep": rep.label, "degrees": rows}
