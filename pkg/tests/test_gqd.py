from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from quaddec.algebra import ONE, X, ZERO, Poly
from quaddec.families import build
from quaddec.gqd import (
    ExtendedCoeffs,
    PreconditionError,
    QuadMap,
    anbn_precondition,
    anbn_recurrence,
    classify,
    classify_secondary,
    corollary_check,
    decompose_direct,
    extended_coeffs,
    gqd_direct,
    gqd_orthogonal,
    gqd_structured,
    lambda_theta,
    prop4_check,
    secondary_pattern,
)
from quaddec.mps import (
    RecurrenceCoeffs,
    StructureCoeffs,
    generate_orthogonal,
    generate_structured,
    is_orthogonal,
    structure_coeffs_of,
)

from .conftest import rationals, recurrences

F = Fraction
Y = X  # polynomials in the omega variable
HERMITE = build("hermite").rc
ORIGIN = QuadMap(0, 0, 0)

maps = st.builds(QuadMap, rationals, rationals, rationals)


def rc_of(lists):
    return RecurrenceCoeffs.from_lists(*lists)


class TestQuadMap:
    def test_omega(self):
        m = QuadMap(1, F(-1, 2), 2)
        assert m.omega == X ** 2 + X - F(1, 2)
        assert m.omega_a == F(11, 2)
        assert m.to_json() == {"p": "1", "q": "-1/2", "a": "2"}


class TestDirect:
    def test_x_squared(self):
        assert decompose_direct(X ** 2, ORIGIN) == (Y, ZERO)

    def test_hermite_w3(self):
        assert decompose_direct(X ** 3 - F(3, 2) * X, ORIGIN) == (ZERO, Y - F(3, 2))

    def test_mixed(self):
        assert decompose_direct(X ** 2 + X + 1, ORIGIN) == (Y + 1, ONE)

    def test_hermite_components(self):
        res = gqd_direct(generate_orthogonal(HERMITE, 9), ORIGIN)
        assert res.P[1] == Y - F(1, 2) and res.R[1] == Y - F(3, 2)
        assert res.a(0) == ZERO and res.b(0) == ZERO
        assert res.depth == 4

    def test_symmetric_is_omega_symmetric(self):
        res = gqd_direct(generate_orthogonal(build("legendre").rc, 13), ORIGIN)
        assert all(w.is_zero() for w in res.a_seq + res.b_seq)

    def test_initial_terms(self):
        rc = build("laguerre", {"alpha": F(1, 3)}).rc
        m = QuadMap(2, 1, F(5, 2))
        res = gqd_direct(generate_orthogonal(rc, 1), m)
        assert res.P[0] == ONE and res.R[0] == ONE
        assert res.b(0) == Poly.constant(m.a - rc.beta(0))

    def test_depth_too_large(self):
        with pytest.raises(ValueError):
            gqd_direct(generate_orthogonal(HERMITE, 4), ORIGIN, 2)

    def test_json(self):
        res = gqd_direct(generate_orthogonal(HERMITE, 3), ORIGIN)
        data = res.to_json()
        assert data["P"] == [["1"], ["-1/2", "1"]] and data["a"] == [[], []] and data["depth"] == 1


class TestStructured:
    def test_orthogonal_input(self):
        m = QuadMap(1, 2, 3)
        res = gqd_structured(StructureCoeffs.from_recurrence(HERMITE), m, 5)
        assert res.same_components(gqd_orthogonal(HERMITE, m, 5))

    def test_chebyshev3_b0(self):
        sc = StructureCoeffs(lambda n: F(1, 2) if n == 0 else 0, lambda n, nu: F(1, 4) if nu == n else 0)
        assert gqd_structured(sc, ORIGIN, 3).b(0) == Poly.constant(F(-1, 2))

    def test_depth_zero(self):
        res = gqd_structured(StructureCoeffs.from_recurrence(HERMITE), QuadMap(0, 0, 2), 0)
        assert res.P.polys == (ONE,) and res.R.polys == (ONE,)
        assert res.a_seq == [ZERO] and res.b_seq == [Poly.constant(2)]

    @given(st.data(), maps)
    def test_matches_direct_on_random_structure(self, data, m):
        d = 5
        betas = data.draw(st.lists(rationals, min_size=2 * d + 2, max_size=2 * d + 2))
        chis = [data.draw(st.lists(rationals, min_size=n + 1, max_size=n + 1)) for n in range(2 * d + 1)]
        sc = StructureCoeffs.from_tables(betas, chis)
        res = gqd_structured(sc, m, d)
        assert res.same_components(gqd_direct(generate_structured(sc, 2 * d + 1), m, d))


class TestOrthogonalEngine:
    def test_gen_hermite_p0(self):
        m = QuadMap(0, F(2, 3), F(-3, 2))
        res = gqd_orthogonal(build("gen_hermite", {"mu": F(1, 2)}).rc, m, 6)
        assert all(w.is_zero() for w in res.a_seq)
        assert all(res.b(n) == res.R[n].scale(m.a) for n in range(7))

    def test_constant_family(self):
        beta, gamma = F(2, 3), F(5, 4)
        m = QuadMap(-2 * beta, F(1, 7), F(3, 2))
        res = gqd_orthogonal(build("constant", {"beta": beta, "gamma": gamma}).rc, m, 6)
        assert all(w.is_zero() for w in res.a_seq)
        assert all(res.b(n) == res.R[n].scale(m.a - beta) for n in range(7))

    def test_charlier_nonorthogonal(self):
        res = gqd_orthogonal(build("charlier", {"alpha": 1}).rc, ORIGIN, 4)
        assert set(classify(res).statuses().values()) == {"nonorthogonal"}

    def test_regularity(self):
        rc = RecurrenceCoeffs(lambda n: 0, lambda n: 0 if n == 5 else 1)
        with pytest.raises(ValueError):
            gqd_orthogonal(rc, ORIGIN, 3)

    @given(recurrences(depth=18), maps)
    def test_engine_equivalence(self, lists, m):
        rc = rc_of(lists)
        d = 8
        res = gqd_orthogonal(rc, m, d)
        assert res.same_components(gqd_direct(generate_orthogonal(rc, 2 * d + 1), m, d))
        assert res.same_components(gqd_structured(StructureCoeffs.from_recurrence(rc), m, d))

    @given(recurrences(depth=14), maps)
    def test_reconstruction_and_degrees(self, lists, m):
        rc = rc_of(lists)
        res = gqd_orthogonal(rc, m, 6)
        assert res.reconstruct() == list(generate_orthogonal(rc, 13))
        for n in range(7):
            assert res.b(n).is_zero() or res.b(n).degree <= n
            assert res.P[n].degree == n and res.R[n].degree == n
        for n in range(6):
            assert res.a(n).is_zero() or res.a(n).degree <= n

    @given(st.lists(rationals.filter(bool), min_size=14, max_size=14))
    def test_omega_symmetry(self, gammas):
        rc = RecurrenceCoeffs.from_lists([0] * 14, gammas)
        res = gqd_orthogonal(rc, ORIGIN, 6)
        assert all(w.is_zero() for w in res.a_seq + res.b_seq)


class TestExtended:
    def test_gamma_products(self):
        ec = extended_coeffs(build("laguerre", {"alpha": F(1, 2)}).rc, QuadMap(1, 2, 3))
        g = ec.rc.gamma
        for n in range(5):
            assert ec.gamma_P(n + 1) == g(2 * n + 1) * g(2 * n + 2)
            assert ec.gamma_R(n + 1) == g(2 * n + 2) * g(2 * n + 3)

    def test_hermite(self):
        p = F(3, 5)
        ec = extended_coeffs(HERMITE, QuadMap(p, 1, 2))
        for n in range(6):
            assert ec.varrho_P(n + 1) == p
            assert ec.rho_P(n + 1) == (n + 1) * p
            assert ec.gamma_P(n + 1) == F(1, 2) * (n + 1) * (2 * n + 1)

    def test_charlier_varrho(self):
        alpha, p = F(2, 3), F(-1, 4)
        ec = extended_coeffs(build("charlier", {"alpha": alpha}).rc, QuadMap(p, 1, 1))
        assert [ec.varrho_P(n + 1) for n in range(4)] == [4 * n + p + 2 * alpha + 5 for n in range(4)]

    def test_constant_beta0(self):
        b, g = F(1, 2), F(3)
        m = QuadMap(F(1, 3), F(-2), F(5, 7))
        ec = extended_coeffs(build("constant", {"beta": b, "gamma": g}).rc, m)
        assert ec.beta_P(0) == m.q + g - b * b + m.a * (m.p + 2 * b)

    def test_json_shape(self):
        data = extended_coeffs(HERMITE, ORIGIN).to_json(3)
        assert set(data) == set(ExtendedCoeffs.NAMES)
        assert data["beta_P"] == ["1/2", "5/2", "9/2"] and data["gamma_P"] == ["1/2", "3", "15/2"]

    @given(recurrences(depth=14), maps)
    def test_extended_recurrence_fidelity(self, lists, m):
        rc = rc_of(lists)
        ec = ExtendedCoeffs(rc, m)
        res = gqd_direct(generate_orthogonal(rc, 11), m)
        for n in range(res.depth - 1):
            k = n + 1
            expected = ((X - ec.beta_P(k)) * res.P[n + 1] - res.P[n].scale(ec.gamma_P(k))
                        - res.b(n + 1).scale(ec.varrho_P(k)) - res.b(n).scale(ec.rho_P(k)))
            assert res.P[n + 2] == expected
            expected = ((X - ec.beta_R(k)) * res.R[n + 1] - res.R[n].scale(ec.gamma_R(k))
                        - res.a(n + 1).scale(ec.varrho_R(k)) - res.a(n).scale(ec.rho_R(k)))
            assert res.R[n + 2] == expected


class TestLambdaTheta:
    def test_hermite_origin(self):
        t = lambda_theta(gqd_orthogonal(HERMITE, ORIGIN, 4))
        assert all(v == 0 for row in t.lam + t.theta for v in row)

    def test_gen_hermite_row(self):
        rc = build("gen_hermite", {"mu": F(1, 2)}).rc
        res = gqd_orthogonal(rc, QuadMap(0, 0, 1), 3)
        t = lambda_theta(res)
        # b_1 = R_1 = x - 5/2 + ... expanded in {P_0, P_1}
        b1 = res.b(1)
        assert b1 == res.P[1].scale(t.theta_at(1, 1)) + res.P[0].scale(t.theta_at(1, 0))
        assert t.theta_at(1, 1) == 1 and t.theta_at(1, 0) == res.P[1].coeff(0) * -1 + b1.coeff(0)

    def test_theta00(self):
        rc = build("laguerre", {"alpha": 2}).rc
        m = QuadMap(1, 1, F(1, 2))
        assert lambda_theta(gqd_orthogonal(rc, m, 2)).theta_at(0, 0) == m.a - rc.beta(0)

    def test_index_guard(self):
        with pytest.raises(IndexError):
            lambda_theta(gqd_orthogonal(HERMITE, ORIGIN, 2)).theta_at(1, 2)

    @given(recurrences(depth=12), maps)
    def test_tables_reconstruct(self, lists, m):
        res = gqd_orthogonal(rc_of(lists), m, 5)
        t = lambda_theta(res)
        for n, an in enumerate(res.secondary_a()):
            assert sum((res.R[v].scale(t.lam_at(n, v)) for v in range(n + 1)), ZERO) == an
        for n, bn in enumerate(res.b_seq):
            assert sum((res.P[v].scale(t.theta_at(n, v)) for v in range(n + 1)), ZERO) == bn


def _prop4_vs_chi(rc, m, d=8):
    res = gqd_orthogonal(rc, m, d)
    t = lambda_theta(res)
    vP, vR = is_orthogonal(res.P), is_orthogonal(res.R)
    pP, pR = prop4_check(rc, t, m, vP.depth)
    return (pP, vP), (pR, vR)


class TestOrthogonalityCriterion:
    def test_hermite_p0(self):
        for prop, chi in _prop4_vs_chi(HERMITE, QuadMap(0, F(1, 3), F(2, 5))):
            assert prop.orthogonal and chi.orthogonal and prop.gammas == chi.gamma

    def test_hermite_q0(self):
        for prop, chi in _prop4_vs_chi(HERMITE, QuadMap(F(3, 2), 0, F(-2, 3))):
            assert not prop.orthogonal and not chi.orthogonal

    def test_legendre_pq0(self):
        for prop, chi in _prop4_vs_chi(build("legendre").rc, QuadMap(0, 0, F(7, 3))):
            assert prop.orthogonal and chi.orthogonal

    @given(recurrences(depth=20), maps)
    def test_agrees_with_chi_pattern(self, lists, m):
        for prop, chi in _prop4_vs_chi(rc_of(lists), m):
            assert prop.orthogonal == chi.orthogonal
            if chi.orthogonal:
                assert prop.gammas == chi.gamma
            else:
                assert prop.witness == chi.witness

    @given(st.lists(rationals.filter(bool), min_size=20, max_size=20), st.builds(QuadMap, st.just(0), rationals, rationals))
    def test_agrees_on_symmetric_inputs(self, gammas, m):
        rc = RecurrenceCoeffs.from_lists([0] * 20, gammas)
        for prop, chi in _prop4_vs_chi(rc, m):
            assert prop.orthogonal and chi.orthogonal and prop.gammas == chi.gamma

    def test_printed_criterion_misses_a_factor(self):
        # chi^P_{1,0} = 0 here, so P_0..P_3 are orthogonal with gamma^P_1 = 10;
        # dropping gamma_{2n+2} from the theta^n coefficient gives 6.
        rc = RecurrenceCoeffs.from_lists([1, 2, -1, F(1, 2), -1, 0, 1, 2], [1, 2, 5, F(1, 3), 2, 1, 1, 1])
        m = QuadMap(1, 2, 3)
        res = gqd_orthogonal(rc, m, 3)
        chi = is_orthogonal(res.P)
        t = lambda_theta(res)
        fixed = prop4_check(rc, t, m, chi.depth)[0]
        printed = prop4_check(rc, t, m, chi.depth, as_printed=True)[0]
        assert chi.gamma == (10, F(5, 3)) and fixed.gammas == chi.gamma
        assert printed.gammas[0] == 6


class TestCorollary:
    def test_hermite_p_nonzero(self):
        assert corollary_check(extended_coeffs(HERMITE, QuadMap(1, 0, 0)), 8) is None

    def test_hermite_p0(self):
        rcP, rcR = corollary_check(extended_coeffs(HERMITE, QuadMap(0, 0, 0)), 8)
        assert [rcP.beta(n) for n in range(3)] == [F(1, 2), F(5, 2), F(9, 2)]
        assert rcR.gamma(1) == F(3, 2)

    @given(st.lists(rationals.filter(bool), min_size=20, max_size=20), rationals, rationals)
    def test_success_implies_orthogonal(self, gammas, q, a):
        rc = RecurrenceCoeffs.from_lists([0] * 20, gammas)
        m = QuadMap(0, q, a)
        found = corollary_check(extended_coeffs(rc, m), 8)
        assert found is not None
        res = gqd_orthogonal(rc, m, 8)
        vP, vR = is_orthogonal(res.P), is_orthogonal(res.R)
        assert vP and vR
        assert list(vP.gamma) == [found[0].gamma(n) for n in range(1, len(vP.gamma) + 1)]
        assert list(vR.beta) == [found[1].beta(n) for n in range(len(vR.beta))]


class TestAnBn:
    def test_hermite_agrees(self):
        m = QuadMap(1, 0, 1)
        a_list, b_list = anbn_recurrence(HERMITE, m, 5)
        res = gqd_orthogonal(HERMITE, m, 5)
        assert a_list == res.secondary_a() and b_list == res.b_seq

    def test_precondition_violation(self):
        rc = build("laguerre", {"alpha": F(1, 2)}).rc
        m = QuadMap(1, 0, rc.beta(2))
        assert anbn_precondition(rc, m, 0) == 0
        with pytest.raises(PreconditionError) as info:
            anbn_recurrence(rc, m, 3)
        assert info.value.index == 0

    def test_hermite_origin_fails(self):
        with pytest.raises(PreconditionError):
            anbn_recurrence(HERMITE, ORIGIN, 2)

    @given(recurrences(depth=16), maps)
    def test_agrees_where_defined(self, lists, m):
        rc = rc_of(lists)
        d = 6
        assume(all(anbn_precondition(rc, m, n) != 0 for n in range(d + 1)))
        a_list, b_list = anbn_recurrence(rc, m, d)
        res = gqd_orthogonal(rc, m, d)
        assert a_list == res.secondary_a() and b_list == res.b_seq


class TestPatterns:
    def test_hermite_b_is_aR(self):
        pat = secondary_pattern(gqd_orthogonal(HERMITE, QuadMap(0, 0, 2), 6))
        assert pat.a_zero and pat.b_over_R == 2 and not pat.generic

    def test_gegenbauer_vanishing(self):
        rc = build("gegenbauer", {"alpha": F(3, 2)}).rc
        pat = secondary_pattern(gqd_orthogonal(rc, QuadMap(0, F(1, 5), 0), 6))
        assert pat.a_zero and pat.b_zero

    def test_charlier_generic(self):
        rc = build("charlier", {"alpha": 2}).rc
        assert secondary_pattern(gqd_orthogonal(rc, QuadMap(1, 1, 1), 6)).generic

    def test_classify_secondary(self):
        assert classify_secondary([ZERO, ZERO, ZERO]).status == "vanishing"
        v = classify_secondary([ONE, ONE, X ** 2])
        assert v.status == "nonorthogonal" and v.witness == ("degree", 1)
        assert classify_secondary([ONE.scale(2), X * 2, X ** 2 * 2 - 2]).status == "orthogonal"
        assert classify_secondary([ONE, X]).status == "undetermined"

    def test_classification_json(self):
        data = classify(gqd_orthogonal(HERMITE, QuadMap(0, 0, 2), 4)).to_json()
        assert data["a"]["status"] == "vanishing" and data["b"]["status"] == "orthogonal"
        assert data["pattern"]["b_over_R"] == "2"
