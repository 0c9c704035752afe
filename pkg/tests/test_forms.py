import random
from fractions import Fraction as F

import pytest

from cartan_invariants import (Grade, GradeError, Part, ce_differential,
                               coadjoint_action, foliated_projective,
                               invariant_basis, is_at_grade, monomial_masks,
                               plus_component, projective, quotient_d, wedge)
from cartan_invariants.forms import Form, cross_inversions, mask_bits
from cartan_invariants.linalg import QMatrix, nullspace, row_space_rref
from cartan_invariants.scalars import TauScalar

ALL_MODELS = None


def _random_form(m, rng, degree):
    masks = []
    pool = list(range(m.total))
    for _ in range(rng.randint(1, 4)):
        picks = rng.sample(pool, degree)
        mask = 0
        for g in picks:
            mask |= 1 << g
        masks.append(mask)
    acc = Form.zero()
    for mask in masks:
        acc = acc + Form.monomial(mask, rng.randint(-4, 4))
    return acc


def test_wedge_square_of_one_form_vanishes():
    xi = Form.dual(0) + Form.dual(2).scale(3)
    assert xi.wedge(xi).is_zero


def test_odd_forms_anticommute():
    a, b = Form.dual(0), Form.dual(2)
    assert a.wedge(b) == b.wedge(a).scale(-1)


def test_even_forms_commute():
    a = Form.dual(0).wedge(Form.dual(1))
    b = Form.dual(2).wedge(Form.dual(3))
    assert a.wedge(b) == b.wedge(a)


def test_wedge_associative_random():
    rng = random.Random(11)
    m = projective(2)
    for _ in range(30):
        a = _random_form(m, rng, rng.randint(1, 2))
        b = _random_form(m, rng, rng.randint(1, 2))
        c = _random_form(m, rng, rng.randint(1, 2))
        assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))


def test_cross_inversions_matches_bruteforce():
    rng = random.Random(3)
    for _ in range(200):
        a = rng.getrandbits(10)
        b = rng.getrandbits(10) & ~a
        brute = sum(1 for x in mask_bits(a) for y in mask_bits(b) if x > y)
        assert cross_inversions(a, b) == brute


def test_ce_differential_sl2_examples(sl2):
    omega, eta, chi = (Form.dual(i) for i in range(3))
    assert ce_differential(sl2, eta) == chi.wedge(omega).scale(-1)
    assert ce_differential(sl2, omega) == eta.wedge(omega).scale(2)


def test_leibniz_rule_random():
    rng = random.Random(17)
    m = projective(2)
    for _ in range(25):
        da = rng.randint(1, 2)
        a = _random_form(m, rng, da)
        b = _random_form(m, rng, rng.randint(1, 2))
        lhs = ce_differential(m, a.wedge(b))
        rhs = ce_differential(m, a).wedge(b) + (
            a.wedge(ce_differential(m, b)).scale((-1) ** da)
        )
        assert lhs == rhs


def test_d_squared_zero_generators_all_models():
    import cartan_invariants as ci
    models = [ci.projective(2), ci.grassmannian(2, 2), ci.conformal(3),
              ci.foliated_projective(2, 2), ci.split_projective(1, 1),
              ci.lagrangian_grassmannian(2), ci.g2_flag()]
    for m in models:
        for g in range(m.total):
            assert ce_differential(m, ce_differential(m, Form.dual(g))).is_zero


def test_quotient_d_sl2_examples(sl2):
    omega, eta, chi = (Form.dual(i) for i in range(3))
    # d(eta) = -chi^omega has plus count 1: survives at grade (0,1,0)
    assert quotient_d(sl2, eta, Grade(0, 1, 0)) == chi.wedge(omega).scale(-1)
    # d(omega) = 2 eta^omega has plus count 0: dies at grade (1,0,0)
    assert quotient_d(sl2, omega, Grade(1, 0, 0)).is_zero


def test_quotient_d_grade_checked(sl2):
    chi = Form.dual(2)  # plus count 1, so not at any grade with r = 0
    with pytest.raises(GradeError):
        quotient_d(sl2, chi, Grade(1, 0, 0))
    omega = Form.dual(0)  # minus count 1 < p = 1+... degree mismatch too
    with pytest.raises(GradeError):
        quotient_d(sl2, omega, Grade(1, 1, 0))
    assert not is_at_grade(sl2, chi, Grade(0, 1, 0))
    # the minus count is a lower bound: omega sits at (1,0,0) and (0,1,0)
    assert is_at_grade(sl2, omega, Grade(1, 0, 0))
    assert is_at_grade(sl2, omega, Grade(0, 1, 0))


def test_quotient_d_top_plus_count_vanishes():
    m = projective(2)
    for mask in monomial_masks(m, 3, m.dims[2], 0):
        xi = Form.monomial(mask)
        p = 3 - m.dims[2] - (mask & m.zero_mask).bit_count()
        grade = Grade((mask & m.minus_mask).bit_count(), 3 - m.dims[2] -
                      (mask & m.minus_mask).bit_count(), m.dims[2])
        # simpler: declare the monomial's own counts
        grade = Grade((mask & m.minus_mask).bit_count(),
                      (mask & m.zero_mask).bit_count(), m.dims[2])
        assert quotient_d(m, xi, grade).is_zero


def test_quotient_d_squared_zero_random_grades():
    import cartan_invariants as ci
    rng = random.Random(23)
    for m in (ci.projective(2), ci.foliated_projective(1, 1), ci.g2_flag()):
        for _ in range(40):
            deg = rng.randint(1, min(5, m.total - 1))
            r = rng.randint(0, min(deg, m.dims[2]))
            masks = monomial_masks(m, deg, r, 0)
            if not masks:
                continue
            picks = rng.sample(masks, min(len(masks), 3))
            xi = Form.zero()
            for mask in picks:
                xi = xi + Form.monomial(mask, rng.randint(-3, 3))
            if xi.is_zero:
                continue
            p = min((mask & m.minus_mask).bit_count() for mask in xi.terms)
            grade = Grade(p, deg - p - r, r)
            once = quotient_d(m, xi, grade)
            if once.is_zero:
                continue
            assert quotient_d(m, once, grade.raised()).is_zero


def test_quotient_d_equivariant():
    m = projective(2)
    rng = random.Random(7)
    ops = [coadjoint_action(m, u) for u in m.part_range(Part.ZERO)]
    for _ in range(20):
        masks = monomial_masks(m, 2, 1, 0)
        xi = Form.monomial(rng.choice(masks), rng.randint(1, 3))
        grade = Grade(min((mask & m.minus_mask).bit_count() for mask in xi.terms),
                      0, 1)
        grade = Grade(grade.p, 2 - grade.p - 1, 1)
        for op in ops:
            assert op(quotient_d(m, xi, grade)) == quotient_d(m, op(xi), grade)


def test_invariant_basis_projective1():
    m = projective(1)
    (b,) = invariant_basis(m, 2, 1, 1)
    assert b == Form.dual(0).wedge(Form.dual(2))  # w1 ^ u1
    (b,) = invariant_basis(m, 1, 0, 0)
    assert b == Form.dual(1)
    (b,) = invariant_basis(m, 0, 0, 0)
    assert b == Form.unit()


def test_closedness_criterion_at_plus_zero_matches_gplus_invariance():
    # at plus count 0, quotient-closed iff annihilated by every g+ coadjoint
    import cartan_invariants as ci
    for m in (ci.projective(2), ci.foliated_projective(1, 1)):
        for degree, p in [(1, 1), (2, 1), (2, 2)]:
            masks = monomial_masks(m, degree, 0, p)
            if not masks:
                continue
            dcols = [plus_component(m, ce_differential(m, Form.monomial(mask)), 1)
                     for mask in masks]
            ops = [coadjoint_action(m, u) for u in m.part_range(Part.PLUS)]
            ocols = [[op(Form.monomial(mask)) for op in ops] for mask in masks]

            def kernel(column_forms):
                support = sorted({mk for forms in column_forms for f in forms
                                  for mk in f.terms})
                if not support:
                    return row_space_rref(
                        [tuple(F(int(i == j)) for j in range(len(masks)))
                         for i in range(len(masks))])
                index = {mk: i for i, mk in enumerate(support)}
                rows = [[F(0)] * len(masks)
                        for _ in range(len(support) * len(column_forms[0]))]
                for j, forms in enumerate(column_forms):
                    for t, f in enumerate(forms):
                        for mk, cc in f.terms.items():
                            rows[t * len(support) + index[mk]][j] = cc.coeff(0)
                return row_space_rref(nullspace(QMatrix(rows)))

            assert kernel([[c] for c in dcols]) == kernel(ocols)


def test_matrix_cochain_quotient_is_componentwise():
    # the covariant term rho(omega0) ^ xi cannot raise the plus count, so the
    # induced differential acts on matrix cochains entry by entry
    from cartan_invariants.charforms import atiyah_form, omega0_matrix
    m = projective(2)
    rep = m.reps["tangent"]
    a = atiyah_form(m, rep)
    mm = omega0_matrix(m, rep)
    cov = mm.matwedge(a)
    for row in cov.grid:
        for entry in row:
            assert plus_component(m, entry, 2).is_zero
    cov0 = mm.matwedge(mm)
    for row in cov0.grid:
        for entry in row:
            assert plus_component(m, entry, 1).is_zero


def test_form_json_sorted_and_tau_split():
    m = projective(1)
    f = Form.dual(0).wedge(Form.dual(2)).scale(TauScalar.of(F(3, 2), 2))
    f = f + Form.dual(1).scale(TauScalar.of(F(-1), 0))
    rows = f.to_json(m)
    assert rows == [[["z1"], 0, "-1"], [["w1", "u1"], 2, "3/2"]]
    split = f.tau_split()
    assert sorted(split) == [0, 2]
    rebuilt = Form.zero()
    for e, piece in split.items():
        rebuilt = rebuilt + piece.tau_shift(e)
    assert rebuilt == f
