"""Sparse exterior algebra over the dual generators of a model.

Monomials are bitmasks over the global generator order, so structural
equality, wedge signs and trigrade counts are all bit arithmetic.  A Form
maps monomial masks to TauScalar coefficients and never stores zeros.

The trigrade (p, q, r) of a monomial counts its g-*, g0*, g+* factors.  The
differential induced on the quotient of the plus-count filtration keeps, of
the full Chevalley-Eilenberg differential, exactly the terms that raise the
plus count by one; see ``quotient_d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .linalg import QMatrix, nullspace, row_space_rref
from .model import LieModel, Part
from .scalars import TauScalar


def cross_inversions(a_mask: int, b_mask: int) -> int:
    """Number of pairs (x in a, y in b) with x > y."""
    inv = 0
    m = b_mask
    while m:
        low = m & -m
        y = low.bit_length() - 1
        inv += (a_mask >> (y + 1)).bit_count()
        m ^= low
    return inv


def mask_bits(mask: int) -> list[int]:
    bits = []
    while mask:
        low = mask & -mask
        bits.append(low.bit_length() - 1)
        mask ^= low
    return bits


class Form:
    """Exterior form with TauScalar coefficients, canonical and immutable by use."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, TauScalar] | None = None):
        clean: dict[int, TauScalar] = {}
        if terms:
            for mask, coeff in terms.items():
                if not coeff.is_zero:
                    clean[mask] = coeff
        self.terms = clean

    @classmethod
    def zero(cls) -> "Form":
        return cls()

    @classmethod
    def unit(cls) -> "Form":
        return cls({0: TauScalar.one()})

    @classmethod
    def monomial(cls, mask: int, coeff=1, tau: int = 0) -> "Form":
        return cls({mask: TauScalar.of(Fraction(coeff), tau)})

    @classmethod
    def dual(cls, gid: int) -> "Form":
        """The dual 1-form of a single generator."""
        return cls.monomial(1 << gid)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Form") -> "Form":
        out = dict(self.terms)
        for mask, c in other.terms.items():
            s = out.get(mask)
            s = c if s is None else s + c
            if s.is_zero:
                out.pop(mask, None)
            else:
                out[mask] = s
        res = Form.__new__(Form)
        res.terms = out
        return res

    def __neg__(self) -> "Form":
        res = Form.__new__(Form)
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, c) -> "Form":
        if isinstance(c, (int, Fraction)):
            c = TauScalar.of(c)
        out = {}
        for mask, coeff in self.terms.items():
            s = coeff * c
            if not s.is_zero:
                out[mask] = s
        res = Form.__new__(Form)
        res.terms = out
        return res

    def tau_shift(self, k: int) -> "Form":
        res = Form.__new__(Form)
        res.terms = {m: c.shift(k) for m, c in self.terms.items()}
        return res

    def wedge(self, other: "Form") -> "Form":
        out: dict[int, TauScalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                if m1 & m2:
                    continue
                mask = m1 | m2
                c = c1 * c2
                if cross_inversions(m1, m2) & 1:
                    c = -c
                s = out.get(mask)
                s = c if s is None else s + c
                if s.is_zero:
                    out.pop(mask, None)
                else:
                    out[mask] = s
        res = Form.__new__(Form)
        res.terms = out
        return res

    def wedge_power(self, k: int) -> "Form":
        out = Form.unit()
        for _ in range(k):
            out = out.wedge(self)
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Form) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted((m, c) for m, c in self.terms.items())))

    def support(self) -> set[int]:
        return set(self.terms)

    def degrees(self) -> set[int]:
        return {m.bit_count() for m in self.terms}

    def tau_split(self) -> dict[int, "Form"]:
        """Decompose into tau-homogeneous pieces keyed by tau exponent."""
        out: dict[int, dict[int, TauScalar]] = {}
        for mask, c in self.terms.items():
            for e, q in c.terms.items():
                out.setdefault(e, {})[mask] = TauScalar.of(q)
        return {e: Form(t) for e, t in out.items()}

    def to_json(self, model: LieModel) -> list:
        rows = []
        for mask in sorted(self.terms, key=lambda m: (m.bit_count(), mask_key(m))):
            names = [model.names[g] for g in mask_bits(mask)]
            for e, q in sorted(self.terms[mask].terms.items()):
                rows.append([names, e, str(q)])
        return rows

    def pretty(self, model: LieModel) -> str:
        if not self.terms:
            return "0"
        bits = []
        for mask in sorted(self.terms, key=lambda m: (m.bit_count(), mask_key(m))):
            names = "∧".join(model.names[g] for g in mask_bits(mask)) or "1"
            bits.append(f"({self.terms[mask]!r})·{names}")
        return " + ".join(bits)

    def __repr__(self) -> str:
        return f"Form<{len(self.terms)} terms>"


def mask_key(mask: int) -> tuple[int, ...]:
    return tuple(mask_bits(mask))


@dataclass(frozen=True)
class Grade:
    p: int
    q: int
    r: int

    def degree(self) -> int:
        return self.p + self.q + self.r

    def raised(self) -> "Grade":
        return Grade(self.p, self.q, self.r + 1)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)


def plus_count(m: LieModel, mask: int) -> int:
    return (mask & m.plus_mask).bit_count()


def minus_count(m: LieModel, mask: int) -> int:
    return (mask & m.minus_mask).bit_count()


def zero_count(m: LieModel, mask: int) -> int:
    return (mask & m.zero_mask).bit_count()


def is_at_grade(m: LieModel, form: Form, grade: Grade) -> bool:
    """A form sits at (p,q,r) iff every monomial has plus count exactly r,
    minus count at least p, and total degree p+q+r."""
    deg = grade.degree()
    for mask in form.terms:
        if mask.bit_count() != deg:
            return False
        if plus_count(m, mask) != grade.r:
            return False
        if minus_count(m, mask) < grade.p:
            return False
    return True


class GradeError(ValueError):
    pass


def wedge(a: Form, b: Form) -> Form:
    return a.wedge(b)


def ce_differential(m: LieModel, form: Form) -> Form:
    """Chevalley-Eilenberg differential, extended to monomials as an odd derivation.

    On dual generators d xi^a = -1/2 sum c^a_bc xi^b xi^c, which over ordered
    pairs b < c is -sum c^a_bc xi^b ^ xi^c.
    """
    table = m.dual_d()
    out: dict[int, TauScalar] = {}
    for mask, coeff in form.terms.items():
        bits = mask_bits(mask)
        for t, a in enumerate(bits):
            rest = mask ^ (1 << a)
            below = rest & ((1 << a) - 1)
            above = rest >> (a + 1) << (a + 1)
            base_sign = -1 if t & 1 else 1
            for pair_mask, c in table[a]:
                if pair_mask & rest:
                    continue
                sign = base_sign
                if (cross_inversions(below, pair_mask) + cross_inversions(pair_mask, above)) & 1:
                    sign = -sign
                new_mask = rest | pair_mask
                term = coeff * (c if sign > 0 else -c)
                s = out.get(new_mask)
                s = term if s is None else s + term
                if s.is_zero:
                    out.pop(new_mask, None)
                else:
                    out[new_mask] = s
    return Form(out)


def plus_component(m: LieModel, form: Form, r: int) -> Form:
    return Form({mask: c for mask, c in form.terms.items() if plus_count(m, mask) == r})


def quotient_d(m: LieModel, form: Form, grade: Grade) -> Form:
    """Differential induced on the quotient of the plus-count filtration.

    The representative of a class at grade (p,q,r) is its plus-count-r
    component; the induced differential keeps the plus-count r+1 part of the
    full Chevalley-Eilenberg differential.  The declared grade is part of the
    meaning: the same form may represent classes at several grades (the minus
    count only bounds p from above), and the grade names which quotient the
    class lives in even though the computation depends only on r.
    """
    if not is_at_grade(m, form, grade):
        raise GradeError(f"form is not at grade {grade.as_tuple()}")
    return plus_component(m, ce_differential(m, form), grade.r + 1)


# -- coadjoint action --------------------------------------------------------


class CoadjointOperator:
    """Degree-0 derivation of the exterior algebra induced by a generator u:
    on dual generators (u . xi)(y) = -xi([u, y])."""

    __slots__ = ("model", "u", "table")

    def __init__(self, model: LieModel, u: int):
        self.model = model
        self.u = u
        self.table = model.coadjoint_dual_table(u)

    def is_diagonal(self) -> bool:
        return all(set(row) <= {a} for a, row in enumerate(self.table))

    def weight(self, a: int) -> Fraction:
        return self.table[a].get(a, Fraction(0))

    def on_mask(self, mask: int) -> dict[int, Fraction]:
        """Image of a unit monomial, as mask -> rational coefficient."""
        out: dict[int, Fraction] = {}
        for a in mask_bits(mask):
            rest = mask ^ (1 << a)
            below = rest & ((1 << a) - 1)
            above = rest >> (a + 1) << (a + 1)
            for y, c in self.table[a].items():
                if y == a:
                    out[mask] = out.get(mask, Fraction(0)) + c
                    continue
                ybit = 1 << y
                if rest & ybit:
                    continue
                sign = 1
                if (cross_inversions(below, ybit) + cross_inversions(ybit, above)) & 1:
                    sign = -1
                new_mask = rest | ybit
                out[new_mask] = out.get(new_mask, Fraction(0)) + (c if sign > 0 else -c)
        return {k: v for k, v in out.items() if v}

    def __call__(self, form: Form) -> Form:
        out: dict[int, TauScalar] = {}
        for mask, coeff in form.terms.items():
            for new_mask, c in self.on_mask(mask).items():
                term = coeff * c
                s = out.get(new_mask)
                s = term if s is None else s + term
                if s.is_zero:
                    out.pop(new_mask, None)
                else:
                    out[new_mask] = s
        return Form(out)


def coadjoint_action(m: LieModel, u: int) -> CoadjointOperator:
    return CoadjointOperator(m, u)


# -- invariant subspaces -------------------------------------------------------


def monomial_masks(m: LieModel, degree: int, plus: int, min_minus: int = 0) -> list[int]:
    """All monomial masks of the stated degree with plus count exactly ``plus``
    and minus count at least ``min_minus``, in canonical order."""
    if plus > m.dims[2] or plus < 0 or degree < plus:
        return []
    lower = degree - plus
    minus_zero = list(m.part_range(Part.MINUS)) + list(m.part_range(Part.ZERO))
    plus_gens = list(m.part_range(Part.PLUS))
    masks = []
    for pc in combinations(plus_gens, plus):
        pmask = 0
        for g in pc:
            pmask |= 1 << g
        for rest in combinations(minus_zero, lower):
            mask = pmask
            ok_minus = 0
            for g in rest:
                mask |= 1 << g
                if g < m.dims[0]:
                    ok_minus += 1
            if ok_minus >= min_minus:
                masks.append(mask)
    masks.sort(key=mask_key)
    return masks


def _joint_kernel(m: LieModel, masks: list[int],
                  operators: list[CoadjointOperator]) -> list[dict[int, Fraction]]:
    """Vectors (as mask->coeff dicts) annihilated by every operator."""
    basis: list[dict[int, Fraction]] = [{mask: Fraction(1)} for mask in masks]
    ops = sorted(operators, key=lambda op: not op.is_diagonal())
    for op in ops:
        if not basis:
            return []
        if op.is_diagonal() and all(len(v) == 1 for v in basis):
            kept = []
            for v in basis:
                (mask, _), = v.items()
                w = sum((op.weight(a) for a in mask_bits(mask)), Fraction(0))
                if not w:
                    kept.append(v)
            basis = kept
            continue
        images = []
        support: dict[int, int] = {}
        for v in basis:
            img: dict[int, Fraction] = {}
            for mask, c in v.items():
                for new_mask, c2 in op.on_mask(mask).items():
                    img[new_mask] = img.get(new_mask, Fraction(0)) + c * c2
            img = {k: c for k, c in img.items() if c}
            images.append(img)
            for k in img:
                support.setdefault(k, len(support))
        rows = len(support)
        if rows == 0:
            continue
        cols = []
        for img in images:
            col = [Fraction(0)] * rows
            for k, c in img.items():
                col[support[k]] = c
            cols.append(col)
        mat = QMatrix.from_columns(cols)
        combos = nullspace(mat)
        new_basis = []
        for combo in combos:
            v: dict[int, Fraction] = {}
            for coeff, vec in zip(combo, basis):
                if not coeff:
                    continue
                for mask, c in vec.items():
                    v[mask] = v.get(mask, Fraction(0)) + coeff * c
            v = {k: c for k, c in v.items() if c}
            if v:
                new_basis.append(v)
        basis = new_basis
    return basis


def invariant_basis(m: LieModel, degree: int, plus: int, min_minus: int = 0) -> list[Form]:
    """Basis of the constant cochains with the stated monomial constraints that
    are annihilated by the coadjoint action of every g0 generator.

    The result is canonical: coefficient rows are brought to reduced row
    echelon form over the monomial list.
    """
    masks = monomial_masks(m, degree, plus, min_minus)
    if not masks:
        return []
    ops = [CoadjointOperator(m, u) for u in m.part_range(Part.ZERO)]
    vecs = _joint_kernel(m, masks, ops)
    if not vecs:
        return []
    index = {mask: i for i, mask in enumerate(masks)}
    rows = []
    for v in vecs:
        row = [Fraction(0)] * len(masks)
        for mask, c in v.items():
            row[index[mask]] = c
        rows.append(row)
    canon = row_space_rref(rows)
    out = []
    for row in canon:
        out.append(Form({masks[i]: TauScalar.of(c) for i, c in enumerate(row) if c}))
    return out
