import pytest

from grforge import modules, suites


class TestThm417:
    def test_z5_passes_end_to_end(self, z5):
        res = suites.thm_417_suite(z5)
        assert res.hypotheses_ok
        assert all(res.conclusions.values())
        assert not res.falsification

    def test_z5s_hypotheses_fail_cleanly(self, z5s):
        res = suites.thm_417_suite(z5s)
        assert res.hypotheses["base_is_split_qha"] is False
        assert not res.falsification
        assert res.conclusions == {}

    def test_qschur_nontrivial(self, qschur33):
        res = suites.thm_417_suite(qschur33)
        assert res.hypotheses_ok, res.hypotheses
        assert all(res.conclusions.values()), res.conclusions
        assert not res.falsification


class TestCor416:
    def test_p1_truncations(self, z5, sp_z5):
        res = suites.cor_416_check(z5, sp_z5["1"]["P"], ("1",))
        assert res.hypotheses_ok
        assert res.conclusions["gradewise_ranks_equal"]
        assert res.conclusions["explicit_iso"]
        assert res.conclusions["section_multisets_agree"]
        assert res.notes["ranks"]["gr_of_truncation"] == (1, 0, 0)

    def test_gamma_equals_lambda(self, z5, sp_z5):
        res = suites.cor_416_check(z5, sp_z5["1"]["P"], ("1", "2"))
        assert res.conclusions["gradewise_ranks_equal"]
        assert res.conclusions["explicit_iso"]

    def test_delta2_truncates_to_zero(self, z5, sp_z5):
        res = suites.cor_416_check(z5, sp_z5["2"]["Delta"], ("1",))
        assert res.conclusions["gradewise_ranks_equal"]

    def test_regular_module(self, z5):
        res = suites.cor_416_check(z5, modules.regular_module(z5), ("1",))
        assert res.hypotheses_ok and res.conclusions["gradewise_ranks_equal"]
        assert res.conclusions["section_multisets_agree"]

    def test_non_ideal_reported(self, z5, sp_z5):
        res = suites.cor_416_check(z5, sp_z5["1"]["P"], ("2",))
        assert res.hypotheses["gamma_is_ideal"] is False


class TestFieldCase:
    @pytest.mark.parametrize("level", ["k", "K"])
    def test_z5_every_proper_ideal(self, z5, level):
        b = z5.base_change(level)
        sp = modules.standard_and_projectives(b)
        extra = [(f"Delta({l})", sp[l]["Delta"]) for l in ("1", "2")]
        extra.append(("P(1)", sp["1"]["P"]))
        for gamma in [("1",), ("1", "2")]:
            res = suites.field_case_suite(b, gamma, extra_modules=extra)
            assert res.hypotheses_ok
            assert all(res.conclusions.values()), (level, gamma, res.conclusions)
            assert not res.falsification

    def test_qschur_base_changes(self, qschur33):
        for level in ("k", "K"):
            b = qschur33.base_change(level)
            sp = modules.standard_and_projectives(b)
            extra = [(f"Delta({l})", sp[l]["Delta"])
                     for l in b.weights.Lambda]
            res = suites.field_case_suite(b, ("2,1",), extra_modules=extra)
            assert res.hypotheses_ok, res.hypotheses
            assert all(res.conclusions.values()), (level, res.conclusions)


class TestThm55Composite:
    def test_truncated_algebra_gr_certifies(self, z5):
        # when the tightness-transfer hypotheses hold for all weights of an
        # ideal, gr of the truncated algebra is again certified QHA with the
        # expected standard modules
        from grforge import certify, graded, tightness

        rows = [z5.basis_vec(i) for i in range(5)]
        datum = tightness.GradedSubalgebraDatum(rows, (0, 0, 1, 1, 2))
        for gamma in [("1",), ("1", "2")]:
            for lam in gamma:
                res = tightness.thm_53_pipeline(
                    z5, datum, lam, delta_gradings={"1": [0], "2": [0, 1]})
                assert res.hypotheses_ok and res.ok
            trunc = suites._truncated_algebra(z5, gamma)
            gr_t = graded.gr_algebra(trunc)
            cert = certify.certify_qha(gr_t.algebra)
            assert cert.ok, gamma
            spt = modules.standard_and_projectives(trunc)
            for lam in gamma:
                std = modules.standard_module(gr_t.algebra, lam)
                gr_d = graded.gr_module(gr_t, spt[lam]["Delta"])
                assert suites._module_iso_exists(std, gr_d.module,
                                                 integral=True), (gamma, lam)
