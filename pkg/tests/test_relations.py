import math
from fractions import Fraction as F

import pytest

import cartan_invariants as ci
from cartan_invariants.forms import Form, Grade
from cartan_invariants.invariants import InvPoly, parse_poly
from cartan_invariants.relations import partition_label, partitions_of


def test_partitions_order():
    assert partitions_of(2) == [(2,), (1, 1)]
    assert partitions_of(5)[0] == (5,)
    assert partitions_of(5)[-1] == (1, 1, 1, 1, 1)
    assert partition_label((3, 1, 1)) == "c3*c1^2"
    assert partition_label((2,)) == "c2"


def test_conformal_coefficients():
    assert ci.conformal_coefficients(2) == [2, 2]
    assert ci.conformal_coefficients(3) == [3, 4, 2]
    assert ci.conformal_coefficients(4) == [4, 7, 6, 3]
    with pytest.raises(ValueError):
        ci.conformal_coefficients(0)


def test_find_relations_projective2():
    m = ci.projective(2)
    rels = ci.find_relations(m, m.reps["tangent"], 2)
    assert len(rels) == 1
    assert rels[0].to_json() == {"monomials": ["c2", "c1^2"],
                                 "coefficients": ["3", "-1"]}  # 9c2 = 3c1^2 reduced


def test_find_relations_g2_class_level():
    m = ci.g2_flag()
    rels = ci.find_relations(m, m.reps["graded-tangent"], 2, modulo_exact=True)
    assert [r.to_json() for r in rels] == [
        {"monomials": ["c2", "c1^2"], "coefficients": ["25", "-11"]}
    ]
    # at strict form level the degree-2 classes are independent
    assert ci.find_relations(m, m.reps["graded-tangent"], 2) == []


def test_find_relations_conformal4():
    # 16 c2 = 7 c1^2, with 7 = a_2 from the generating function at n = 4
    m = ci.conformal(4)
    rels = ci.find_relations(m, m.reps["tangent"], 2)
    assert [r.to_json() for r in rels] == [
        {"monomials": ["c2", "c1^2"], "coefficients": ["16", "-7"]}
    ]


def test_relation_normalization_canonical():
    m = ci.projective(3)
    for k in (2, 3):
        for r in ci.find_relations(m, m.reps["tangent"], k):
            nz = [c for c in r.coefficients if c]
            assert nz[0] > 0
            assert math.gcd(*[abs(c) for c in nz]) == 1


def test_is_closed_chern_forms():
    for m, label in [(ci.projective(2), "tangent"), (ci.g2_flag(), "graded-tangent")]:
        rep = m.reps[label]
        for k, ck in enumerate(ci.chern_forms(m, rep, min(3, rep.dim)), start=1):
            if ck.is_zero:
                continue
            ok, residual = ci.is_closed(m, ck, Grade(k, 0, k))
            assert ok and residual.is_zero


def test_is_closed_top_plus_count():
    m = ci.projective(1)
    chi_omega = Form.dual(2).wedge(Form.dual(0)).scale(1)
    ok, _ = ci.is_closed(m, chi_omega, Grade(1, 0, 1))
    assert ok


def test_find_primitive_zero_target():
    m = ci.projective(1)
    res = ci.find_primitive(m, Form.zero(), Grade(1, 0, 1))
    assert res.exact and res.psi.is_zero


def test_find_primitive_projective1_c1():
    m = ci.projective(1)
    c1 = ci.chern_forms(m, m.reps["tangent"], 1)[0]
    # inside the honest quotient (minus count >= 1) the search space is
    # span{w*}, whose differential dies: c1 is not exact there
    res = ci.find_primitive(m, c1, Grade(1, 0, 1), invariant_only=False, min_minus=1)
    assert not res.exact
    assert res.certificate["matrix_rank"] == 0
    assert res.certificate["augmented_rank"] == 1
    # with the pseudoconnection direction admitted, the transgression class
    # t_{c1} = tau tr(omega0) is a primitive
    res0 = ci.find_primitive(m, c1, Grade(1, 0, 1), min_minus=0)
    assert res0.exact
    t_c1, _ = ci.cs_class(m, m.reps["tangent"], InvPoly.chern(1))
    assert res0.psi == t_c1


def test_find_primitive_requires_positive_plus():
    m = ci.projective(1)
    with pytest.raises(ValueError):
        ci.find_primitive(m, Form.dual(1), Grade(0, 1, 0))


def test_find_primitive_grade_checked():
    m = ci.projective(1)
    with pytest.raises(ValueError):
        ci.find_primitive(m, Form.dual(1), Grade(1, 0, 1))


def test_g2_primitive_for_top_chern_simons_class():
    m = ci.g2_flag()
    rep = m.reps["graded-tangent"]
    target, grade = ci.cs_class(m, rep, parse_poly("5^5*c5-3*c1^5"))
    assert grade == Grade(4, 1, 4)
    assert len(target.terms) == 12
    ok, _ = ci.is_closed(m, target, grade)
    assert ok
    res = ci.find_primitive(m, target, grade)
    assert res.exact
    from cartan_invariants.forms import ce_differential, plus_component
    assert plus_component(m, ce_differential(m, res.psi), grade.r) == target


def test_g2_lower_relations_exact_in_trigraded_quotient():
    m = ci.g2_flag()
    rep = m.reps["graded-tangent"]
    cs = ci.chern_forms(m, rep, 4)
    c1 = cs[0]
    for k, (lhs, rhs) in {2: (25, 11), 3: (125, 13), 4: (625, 9)}.items():
        diff = cs[k - 1].scale(lhs) - c1.wedge_power(k).scale(rhs)
        assert not diff.is_zero
        res = ci.find_primitive(m, diff, Grade(k, 0, k), min_minus=k)
        assert res.exact
        # but the single Chern form is not exact there: the relation is real
        single = ci.find_primitive(m, cs[k - 1], Grade(k, 0, k), min_minus=k)
        assert not single.exact


def test_exactness_audit_projective_module():
    m = ci.projective(2)
    report = ci.exactness_audit(m, m.reps["module"])
    assert [row["k"] for row in report["degrees"]] == [1, 2, 3]
    for row in report["degrees"]:
        assert row["exact"] in (True, False)
        if row["exact"] and not row["chern_form_zero"]:
            assert row["primitive"] is not None


def test_exactness_audit_traceless_c1_vacuous():
    m = ci.grassmannian(2, 2)
    report = ci.exactness_audit(m, m.reps["module"], k_max=1)
    row = report["degrees"][0]
    assert row["chern_form_zero"] and row["exact"]


def test_exactness_audit_requires_flag():
    m = ci.projective(2)
    with pytest.raises(ValueError):
        ci.exactness_audit(m, m.reps["tangent"])


def test_exactness_audit_split_trivially_exact():
    m = ci.split_projective(2, 2)
    from cartan_invariants.model import Rep
    rep = Rep("tangent-flagged", m.reps["tangent"].matrices, g_module=True)
    report = ci.exactness_audit(m, rep, k_max=3)
    assert all(row["exact"] for row in report["degrees"])


def test_foliated_relations():
    p, q = 2, 2
    m = ci.foliated_projective(p, q)
    tf = m.reps["TF"]
    cs = ci.chern_forms(m, tf, p)
    c1 = cs[0]
    # det-derived relation p^k c_k(TF) = binom(p,k) c1(TF)^k
    for k in range(1, p + 1):
        assert (cs[k - 1].scale(p ** k)
                - c1.wedge_power(k).scale(math.comb(p, k))).is_zero
    assert c1.wedge_power(q + 1).is_zero
    c1n = ci.chern_forms(m, m.reps["normal"], 1)[0]
    assert c1n.wedge_power(q + 1).is_zero
    # Baum-Bott: invariants of degree > q vanish on the normal module
    for k in (q + 1, q + 2):
        for part in partitions_of(k):
            f = InvPoly.one()
            for piece in part:
                f = f * InvPoly.trace_power(piece)
            assert ci.chern_form_of(m, m.reps["normal"], f).is_zero
    # Chern-Simons classes of degree >= q+2 vanish
    for k in (q + 2, q + 3):
        for part in partitions_of(k):
            f = InvPoly.one()
            for piece in part:
                f = f * InvPoly.trace_power(piece)
            t, _ = ci.cs_class(m, m.reps["normal"], f)
            assert t.is_zero


def test_invariant_cocycles_chern_closed():
    m = ci.projective(2)
    c2 = ci.chern_forms(m, m.reps["tangent"], 2)[1]
    cocycles = ci.invariant_cocycles(m, Grade(2, 0, 2))
    assert len(cocycles) == 1
    # c2 is proportional to the unique invariant cocycle at that grade
    (base,) = cocycles
    ratio = None
    for mask, coeff in c2.terms.items():
        assert mask in base.terms
        r = coeff.coeff(2) / base.terms[mask].coeff(0)
        ratio = ratio or r
        assert r == ratio


def test_parse_poly_grammar():
    p = parse_poly("5^5*c5-3*c1^5")
    assert p.degree == 5
    assert parse_poly("ch3").degree == 3
    assert parse_poly("c1^2") == InvPoly.chern(1) ** 2
    assert parse_poly("(c1+c1)^2") == (InvPoly.chern(1).scale(2)) ** 2
    with pytest.raises(ci.PolyParseError):
        parse_poly("c1 + c2")  # inhomogeneous
    with pytest.raises(ci.PolyParseError):
        parse_poly("x1")
    with pytest.raises(ci.PolyParseError):
        parse_poly("c1 *")
    with pytest.raises(ci.PolyParseError):
        parse_poly("7")  # degree zero


def test_thread_env_does_not_change_results(monkeypatch):
    m = ci.projective(3)
    rep = m.reps["tangent"]
    base = [r.to_json() for r in ci.find_relations(m, rep, 3)]
    monkeypatch.setenv("CARTAN_INVARIANTS_THREADS", "4")
    threaded = [r.to_json() for r in ci.find_relations(m, rep, 3)]
    assert base == threaded
