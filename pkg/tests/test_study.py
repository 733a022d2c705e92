import json
from fractions import Fraction

import pytest

from quaddec.families import SPECIAL_CASE, CaseNotTabulated, Sampler, build
from quaddec.gqd import QuadMap
from quaddec.study import (
    binomial_moments,
    detect_relations,
    moment_report,
    resolve_cases,
    study_case,
    verify,
    verify_family,
)

F = Fraction


class TestStudyCase:
    def test_gegenbauer_p0(self):
        m = QuadMap(0, F(2, 3), F(-5, 4))
        rep = study_case(build("gegenbauer", {"alpha": F(1, 2)}), m, 8, "p=0")
        assert rep.matches_printed
        assert rep.classification.pattern.b_over_R == m.a
        data = rep.to_json()
        assert data["verdicts"]["a"]["status"] == "vanishing" and "matches_corrected" not in data

    def test_charlier_all_nonorthogonal(self):
        s = Sampler(5)
        for case in resolve_cases("charlier", "all"):
            rep = study_case(build("charlier", {"alpha": 2}), s.qmap(case), 6, case)
            assert rep.matches_printed and rep.rcP is None and rep.claims == []

    def test_hermite_p0_erratum(self):
        rep = study_case(build("hermite"), QuadMap(0, F(1, 3), 2), 8, "p=0")
        assert rep.matches_printed is False and rep.matches_corrected is True
        assert "erratum" in rep.to_json()

    def test_chebyshev2_special(self):
        rep = study_case(build("chebyshev2"), QuadMap(0, F(-1, 2), F(3, 7)), 9, SPECIAL_CASE)
        assert rep.matches_printed and rep.claims_hold
        assert rep.detected["P_corecursive_of_R"]["mu"] == "-1/4"
        shift = rep.detected["R_shift_of_W"]
        assert (shift["A"], shift["B"]) == ("2", "0")

    def test_chebyshev1_special_claims_split(self):
        rep = study_case(build("chebyshev1"), QuadMap(0, F(-1, 2), F(3, 7)), 9, SPECIAL_CASE)
        failed = [c for c in rep.claims if not c.holds]
        assert failed and all(c.erratum for c in failed)
        assert rep.detected["P_shift_of_W"]["A"] == "2"

    def test_custom_case_has_no_expectation(self):
        rep = study_case(build("hermite"), QuadMap(1, 1, 1), 4)
        assert rep.expected is None and "expected" not in rep.to_json()

    def test_json_serializable(self):
        rep = study_case(build("chebyshev3"), QuadMap(0, 1, 2), 6, "p=0")
        text = json.dumps(rep.to_json(), sort_keys=True)
        assert json.dumps(json.loads(text), sort_keys=True) == text


class TestResolveCases:
    def test_selectors(self):
        assert resolve_cases("chebyshev4", ["special"]) == [SPECIAL_CASE]
        assert resolve_cases("hermite", "p=0; q=0") == ["p=0", "q=0"]
        assert len(resolve_cases("hermite", None)) == 7

    def test_unknown(self):
        with pytest.raises(CaseNotTabulated):
            resolve_cases("laguerre", ["special"])


class TestRelations:
    def test_detect_for_constant(self):
        beta, gamma = F(1, 2), F(4, 9)
        spec = build("constant", {"beta": beta, "gamma": gamma})
        rep = study_case(spec, QuadMap(-2 * beta, F(1, 3), 1), 8)
        rel = detect_relations(spec.rc, rep.rcP, rep.rcR, 8)
        assert rel["P_corecursive_of_R"]["mu"] == "-4/9"
        assert rel["R_shift_of_W"] is not None


class TestVerify:
    def test_hermite_green_outside_p0(self):
        cases = [c for c in resolve_cases("hermite", "all") if c != "p=0"]
        cells = verify_family("hermite", 2, 6, Sampler(9), cases)
        assert cells and all(c.ok for c in cells)

    def test_report(self):
        rep = verify(["laguerre", "charlier"], samples=2, nmax=5, seed=11)
        data = rep.to_json()
        assert data["seed"] == 11 and not rep.passed and rep.passed_modulo_errata
        assert data["summary"]["laguerre"]["classification"]["failed"] == 0
        assert all(f["family"] == "charlier" and f["documented"] for f in data["failures"])

    def test_reproducible(self):
        a = verify(["gen_hermite"], samples=2, nmax=5, seed=4).to_json()
        b = verify(["gen_hermite"], samples=2, nmax=5, seed=4).to_json()
        assert a == b


class TestMoments:
    def test_w0_starts_at_one(self):
        rep = moment_report(build("laguerre", {"alpha": 2}).rc, QuadMap(1, 2, 3), 3)
        assert rep.w0[0] == 1 and rep.u0[0] == 1 and rep.v0[0] == 1
        assert rep.binomial_holds is None

    def test_semiclassical_v1(self):
        rep = moment_report(build("jacobi_symmetric_semiclassical", {"alpha": 1, "beta": 1}).rc, QuadMap(0, 0, 0), 3)
        # (beta + 2)/(alpha + beta + 3)
        assert rep.v0[1] == F(3, 5)
        assert rep.binomial_holds

    def test_binomial_moments(self):
        w0 = [1, 0, F(1, 2), 0, F(3, 4)]
        assert binomial_moments(w0, F(2), 2) == 4 + 2 * 2 * F(1, 2) + F(3, 4)
