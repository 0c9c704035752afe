import math
from fractions import Fraction as F

import pytest

import cartan_invariants as ci
from cartan_invariants import Part
from cartan_invariants.charforms import _polarized
from cartan_invariants.forms import (Form, Grade, ce_differential, is_at_grade,
                                     minus_count, plus_count)
from cartan_invariants.invariants import InvPoly


def test_atiyah_projective_line():
    m = ci.projective(1)
    a = ci.atiyah_form(m, m.reps["tangent"])
    chi, omega = Form.dual(2), Form.dual(0)
    assert a.grid == [[chi.wedge(omega).scale(2)]]


def test_atiyah_projective_pattern():
    # a^i_j = delta^i_j sum_k chi_k ^ w^k + chi_j ^ w^i
    for n in (2, 3):
        m = ci.projective(n)
        a = ci.atiyah_form(m, m.reps["tangent"])
        trace_form = Form.zero()
        for k in range(n):
            trace_form = trace_form + Form.dual(m.gid(Part.PLUS, k)).wedge(
                Form.dual(m.gid(Part.MINUS, k)))
        for i in range(n):
            for j in range(n):
                expected = Form.dual(m.gid(Part.PLUS, j)).wedge(
                    Form.dual(m.gid(Part.MINUS, i)))
                if i == j:
                    expected = expected + trace_form
                assert a.grid[i][j] == expected


def test_atiyah_entries_have_trigrade_101():
    for m in (ci.projective(2), ci.grassmannian(2, 2), ci.conformal(3),
              ci.g2_flag()):
        rep = next(iter(m.reps.values()))
        a = ci.atiyah_form(m, rep)
        for row in a.grid:
            for entry in row:
                for mask in entry.terms:
                    assert mask.bit_count() == 2
                    assert plus_count(m, mask) == 1
                    assert minus_count(m, mask) == 1


def test_tangent_atiyah_tensor_symmetric():
    for m in (ci.projective(2), ci.conformal(3)):
        tensor = ci.tangent_atiyah_form(m)
        for x, block in tensor.items():
            for y in block:
                for z in block[y]:
                    assert block[y][z] == block[z][y]


def test_tangent_atiyah_tensor_projective_already_symmetric():
    m = ci.projective(2)
    rep = m.reps["tangent"]
    tensor = ci.tangent_atiyah_form(m, rep)
    for a in range(2):
        x = m.gid(Part.PLUS, a)
        for b in range(2):
            y = m.gid(Part.MINUS, b)
            coeffs = m.zero_coefficients(m.bracket_basis(x, y))
            amat = [[-v for v in row] for row in rep.act(coeffs).data]
            for c in range(2):
                z = m.gid(Part.MINUS, c)
                assert tensor[x][y][z] == [amat[i][c] for i in range(2)]


def test_tangent_atiyah_tensor_split_zero():
    m = ci.split_projective(1, 1)
    tensor = ci.tangent_atiyah_form(m)
    assert all(not any(v) for block in tensor.values()
               for row in block.values() for v in row.values())


def test_chern_projective_line():
    m = ci.projective(1)
    c1 = ci.chern_forms(m, m.reps["tangent"], 1)[0]
    chi, omega = Form.dual(2), Form.dual(0)
    assert c1 == chi.wedge(omega).scale(2).tau_shift(1)


def test_chern_projective_relation_small():
    m = ci.projective(2)
    c1, c2 = ci.chern_forms(m, m.reps["tangent"], 2)
    assert (c2.scale(9) - c1.wedge(c1).scale(3)).is_zero


def test_chern_grade():
    m = ci.projective(3)
    cs = ci.chern_forms(m, m.reps["tangent"], 3)
    for k, c in enumerate(cs, start=1):
        assert is_at_grade(m, c, Grade(k, 0, k))
        for coeff in c.terms.values():
            assert coeff.exponents() == [k]


def test_chern_k_max_capped():
    m = ci.projective(2)
    with pytest.raises(ValueError):
        ci.chern_forms(m, m.reps["O(1)"], 2)


def test_chern_character_examples():
    m = ci.projective(3)
    rep = m.reps["tangent"]
    ch = ci.chern_character(m, rep, 3)
    c1 = ci.chern_forms(m, rep, 1)[0]
    assert ch[0] == c1  # ch_1 = c_1
    n = 3
    for j in (2, 3):
        lhs = ch[j - 1].scale(math.factorial(j) * (n + 1) ** (j - 1))
        assert (lhs - ch[0].wedge_power(j)).is_zero
    chm = ci.chern_character(m, m.reps["module"], 1)[0]
    assert chm.is_zero  # traceless module


def test_chern_character_traceless_grassmannian():
    m = ci.grassmannian(2, 2)
    assert ci.chern_character(m, m.reps["module"], 1)[0].is_zero


def test_newton_reconstruction_matches_faddeev_leverrier():
    for m, label in [(ci.projective(2), "tangent"), (ci.grassmannian(2, 2), "U"),
                     (ci.g2_flag(), "graded-tangent")]:
        rep = m.reps[label]
        kmax = min(4, rep.dim)
        direct = ci.chern_forms(m, rep, kmax)
        ch = ci.chern_character(m, rep, kmax)
        ps = [ch[j - 1].scale(math.factorial(j)) for j in range(1, kmax + 1)]
        es = [Form.unit()]
        for k in range(1, kmax + 1):
            acc = Form.zero()
            for i in range(1, k + 1):
                term = es[k - i].wedge(ps[i - 1])
                acc = acc + (term if i % 2 == 1 else term.scale(-1))
            es.append(acc.scale(F(1, k)))
        assert all((a - b).is_zero for a, b in zip(direct, es[1:]))


def test_todd_forms():
    m = ci.projective(1)
    td1 = ci.todd_forms(m, m.reps["tangent"], 1)[0]
    chi, omega = Form.dual(2), Form.dual(0)
    assert td1 == chi.wedge(omega).tau_shift(1)
    m2 = ci.projective(2)
    td2 = ci.todd_forms(m2, m2.reps["tangent"], 2)[1]
    c1 = ci.chern_forms(m2, m2.reps["tangent"], 1)[0]
    assert td2 == c1.wedge(c1).scale(F(1, 9))  # (c1^2+c2)/12 with 3c2 = c1^2
    ms = ci.split_projective(1, 1)
    assert all(t.is_zero for t in ci.todd_forms(ms, ms.reps["tangent"], 4))
    with pytest.raises(ValueError):
        ci.todd_forms(m, m.reps["tangent"], 5)


def test_invariant_poly_eval_examples():
    m = ci.projective(2)
    rep = m.reps["tangent"]
    a = ci.atiyah_form(m, rep)
    tr = InvPoly.trace_power(1)
    assert ci.invariant_poly_eval(tr, [a]) == a.trace()
    sq = tr * tr
    assert ci.invariant_poly_eval(sq, [a, a]) == a.trace().wedge(a.trace())
    p2 = InvPoly.trace_power(2)
    assert ci.invariant_poly_eval(p2, [a, a]) == a.matwedge(a).trace()


def test_invariant_poly_eval_symmetric_in_even_args():
    m = ci.projective(2)
    a = ci.atiyah_form(m, m.reps["tangent"])
    b = a.matwedge(a)
    f = InvPoly.chern(2)
    assert ci.invariant_poly_eval(f, [a, b]) == ci.invariant_poly_eval(f, [b, a])


def test_invariant_poly_eval_arity_checked():
    m = ci.projective(2)
    a = ci.atiyah_form(m, m.reps["tangent"])
    with pytest.raises(ValueError):
        ci.invariant_poly_eval(InvPoly.chern(2), [a])


def test_odd_repeated_argument_antisymmetry():
    # polarizing tr(X^2) at two copies of an odd matrix must cancel
    m = ci.projective(2)
    u = ci.omega0_matrix(m, m.reps["tangent"])
    out = _polarized(InvPoly.trace_power(2), [u, u], [1, 1])
    assert out.is_zero


def test_cs_coefficients():
    assert ci.cs_coefficients(2) == [F(1, 2), F(-1, 6)]
    assert ci.cs_coefficients(3) == [F(1, 6), F(-1, 12), F(1, 60)]
    assert ci.cs_coefficients(3, halved=True) == [F(1, 6), F(-1, 24), F(1, 240)]


def test_cs_form_projective_line():
    m = ci.projective(1)
    rep = m.reps["tangent"]
    cs = ci.chern_simons_form(m, rep, InvPoly.chern(1))
    # tau tr(M) with rho(z1) = 2 on g-
    assert cs == Form.dual(1).scale(2).tau_shift(1)
    c1 = ci.chern_forms(m, rep, 1)[0]
    assert ce_differential(m, cs) == c1


def test_transgression_identities():
    for n in (1, 2):
        m = ci.projective(n)
        rep = m.reps["tangent"]
        for f in (InvPoly.chern(1), InvPoly.chern_character(2)):
            checks = ci.transgression_checks(m, rep, f)
            assert all(checks.values()), (n, f, checks)


def test_cs_class_t_c1_is_trace_of_connection():
    for m in (ci.projective(2), ci.conformal(3)):
        rep = m.reps["tangent"]
        t, grade = ci.cs_class(m, rep, InvPoly.chern(1))
        assert grade == Grade(0, 1, 0)
        assert t == ci.omega0_matrix(m, rep).trace().tau_shift(1)


def test_cs_class_power_rule():
    # T_{ch1^j} = T_c1 ^ c1^(j-1)
    m = ci.projective(2)
    rep = m.reps["tangent"]
    t_c1, _ = ci.cs_class(m, rep, InvPoly.chern(1))
    c1 = ci.chern_forms(m, rep, 1)[0]
    for j in (2, 3):
        t_j, grade = ci.cs_class(m, rep, InvPoly.chern_character(1) ** j)
        assert grade == Grade(j - 1, 1, j - 1)
        assert (t_j - t_c1.wedge(c1.wedge_power(j - 1))).is_zero


def test_cs_class_is_at_grade():
    m = ci.projective(3)
    rep = m.reps["tangent"]
    for f in (InvPoly.chern_character(2), InvPoly.chern_character(3)):
        t, grade = ci.cs_class(m, rep, f)
        assert is_at_grade(m, t, grade)


def test_multiplicativity_grassmannian():
    m = ci.grassmannian(2, 2)
    report = ci.verify_multiplicativity(m, m.reps["U"], m.reps["module"],
                                        m.reps["Q"], 4)
    assert report["ok"]


def test_multiplicativity_euler_sequence():
    m = ci.projective(2)
    report = ci.verify_multiplicativity(m, m.reps["trivial"], m.reps["euler"],
                                        m.reps["tangent"], 3)
    assert report["ok"]


def test_multiplicativity_trivial_sum():
    from cartan_invariants.linalg import QMatrix
    from cartan_invariants.model import Rep
    m = ci.projective(1)
    triv1 = Rep("t1", [QMatrix([[0]])])
    triv2 = Rep("t2", [QMatrix([[0, 0], [0, 0]])])
    report = ci.verify_multiplicativity(m, triv1, triv2, triv1, 2)
    assert report["ok"]


def test_multiplicativity_rejects_bad_blocks():
    m = ci.grassmannian(2, 2)
    with pytest.raises(ValueError):
        ci.verify_multiplicativity(m, m.reps["Q"], m.reps["module"], m.reps["U"], 2)


def test_o_d_linearity_and_euler_relation():
    m = ci.projective(2, o_weights=(1, 2, 5))
    c1 = {d: ci.chern_forms(m, m.reps[f"O({d})"], 1)[0] for d in (1, 2, 5)}
    for d in (2, 5):
        assert (c1[d] - c1[1].scale(d)).is_zero
    ct = ci.chern_forms(m, m.reps["tangent"], 1)[0]
    assert (c1[1].scale(3) - ct).is_zero  # (n+1) c1(O(1)) = c1(T)


def test_o_d_ghost_flags():
    m = ci.projective(2, o_weights=(1, 3))
    assert m.reps["O(1)"].ghost
    assert not m.reps["O(3)"].ghost  # n+1 = 3 divides 3
