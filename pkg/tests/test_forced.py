import random
from fractions import Fraction as F

import pytest

from grforge import forced, graded, modules
from grforge.lattices import Lattice


class TestNPrime:
    def test_p1_at_weight_1(self, sp_z5):
        lat, _ = forced.n_prime_lattice(sp_z5["1"]["P"], "1")
        assert lat.rank == 2  # span{alpha, gamma}

    def test_delta2_at_weight_1_is_everything(self, sp_z5):
        lat, _ = forced.n_prime_lattice(sp_z5["2"]["Delta"], "1")
        assert lat.rank == 2

    def test_maximal_weight_gives_zero(self, sp_z5):
        lat, _ = forced.n_prime_lattice(sp_z5["2"]["Delta"], "2")
        assert lat.rank == 0


class TestPrimitivity:
    def test_generator_of_delta2(self, sp_z5):
        d2 = sp_z5["2"]["Delta"]
        v = list(d2.weight_space_rows("2")[0])
        rep = forced.primitivity_test(d2, v, "2")
        assert rep.primitive and rep.strongly_primitive and rep.grade == 0
        assert rep.maximality_ok

    def test_scaled_generator_fails_both(self, sp_z5):
        d2 = sp_z5["2"]["Delta"]
        v = [3 * x for x in d2.weight_space_rows("2")[0]]
        rep = forced.primitivity_test(d2, v, "2")
        assert not rep.primitive and not rep.strongly_primitive

    def test_gamma_not_primitive(self, sp_z5):
        p1 = sp_z5["1"]["P"]
        chain = graded.module_rad_chain(p1)
        gamma = [r for r in p1.weight_space_rows("1")
                 if chain[2].contains_vector(list(r))][0]
        rep = forced.primitivity_test(p1, list(gamma), "1")
        assert not rep.primitive and not rep.strongly_primitive

    def test_non_weight_vector_rejected(self, sp_z5):
        p1 = sp_z5["1"]["P"]
        v = [F(1)] * p1.rank
        with pytest.raises(forced.ForcedError):
            forced.primitivity_test(p1, v, "1")

    def test_random_implication_holds(self, z5, sp_z5):
        rng = random.Random(99)
        mods = [sp_z5[l][k] for l in ("1", "2") for k in ("P", "Delta")]
        fld = z5.fld
        for _ in range(120):
            mod = mods[rng.randrange(len(mods))]
            lam = ("1", "2")[rng.randrange(2)]
            rows = mod.weight_space_rows(lam)
            if not rows:
                continue
            v = [fld.zero] * mod.rank
            for r in rows:
                c = rng.randint(-3, 3)
                if rng.random() < 0.3:
                    c *= 3
                for t in range(mod.rank):
                    if r[t]:
                        v[t] = v[t] + fld.of(c) * r[t]
            rep = forced.primitivity_test(mod, v, lam)
            if rep.strongly_primitive:
                assert rep.primitive
            if rep.primitive:
                assert rep.maximality_ok


class TestGrB:
    def test_delta2_full(self, gr_z5, sp_z5):
        gd = graded.gr_module(gr_z5, sp_z5["2"]["Delta"])
        grb = forced.gr_b(gd)
        assert forced.gr_b_equals_gr(grb, gd)

    def test_projective_full(self, gr_z5, sp_z5):
        # gr^b P = gr P for projectives
        for lam in ("1", "2"):
            gp = graded.gr_module(gr_z5, sp_z5[lam]["P"])
            grb = forced.gr_b(gp)
            assert forced.gr_b_equals_gr(grb, gp)

    def test_zero_module(self, gr_z5, sp_z5):
        d = sp_z5["1"]["Delta"]
        zero = d.restrict_to(Lattice.zero(d.algebra.ring, d.rank))
        gz = graded.gr_module(gr_z5, zero)
        grb = forced.gr_b(gz)
        assert grb.lattice.rank == 0


class TestLemma49:
    def test_z5_both_weights(self, z5, gr_z5, sp_z5):
        from grforge.suites import graded_head_context

        _, gradk, gsimples = graded_head_context(gr_z5)
        for lam in ("1", "2"):
            simple, equal = forced.lemma_4_9_check(
                gr_z5, lam, sp_z5, gsimples, gradk)
            assert simple and equal

    def test_qschur_biconditional(self, qschur33):
        from grforge.suites import graded_head_context

        gr = graded.gr_algebra(qschur33)
        sp = modules.standard_and_projectives(qschur33)
        _, gradk, gsimples = graded_head_context(gr)
        for lam in qschur33.weights.Lambda:
            simple, equal = forced.lemma_4_9_check(gr, lam, sp, gsimples, gradk)
            assert simple == equal  # the biconditional itself


class TestGradedDeltaFiltration:
    def test_p1(self, z5, gr_z5, sp_z5):
        stages = forced.gr_delta_filtration(sp_z5["1"]["P"], gr_z5, sp_z5)
        assert [(s.label, s.copies, s.shift, s.kind) for s in stages] == [
            ("2", 1, 1, "standard"), ("1", 1, 0, "standard")]

    def test_delta2_single_section(self, z5, gr_z5, sp_z5):
        stages = forced.gr_delta_filtration(sp_z5["2"]["Delta"], gr_z5, sp_z5)
        assert [(s.label, s.copies, s.shift) for s in stages] == [("2", 1, 0)]

    def test_regular_module(self, z5, gr_z5, sp_z5):
        stages = forced.gr_delta_filtration(
            modules.regular_module(z5), gr_z5, sp_z5)
        assert forced.graded_section_multiset(stages) == {"2": 2, "1": 1}
        shifts = sorted((str(s.label), s.shift) for s in stages)
        assert shifts == [("1", 0), ("2", 0), ("2", 1)]

    def test_multiset_matches_ungraded(self, z5, gr_z5, sp_z5):
        for lam in ("1", "2"):
            m = sp_z5[lam]["P"]
            g = forced.gr_delta_filtration(m, gr_z5, sp_z5)
            u = modules.delta_filtration(m)
            assert forced.graded_section_multiset(g) == \
                modules.section_multiset(u)

    def test_order_override(self, z5, gr_z5, sp_z5):
        from grforge.modules import direct_sum_module

        m = direct_sum_module(sp_z5["2"]["Delta"], 1)
        stages = forced.gr_delta_filtration(m, gr_z5, sp_z5,
                                            order_override=["2"])
        assert len(stages) == 1


class TestPrimitiveEqualsStronglyPrimitiveOnGr:
    def test_homogeneous_primitives_coincide_on_nice_fixtures(
            self, z5, gr_z5, sp_z5):
        # when every relevant gr Delta has a simple head, the primitive
        # homogeneous elements of gr N are exactly the strongly primitive ones
        rng = random.Random(31)
        galg = gr_z5.algebra
        for lam_mod in ("1", "2"):
            gn = graded.gr_module(gr_z5, sp_z5[lam_mod]["P"])
            gmod = gn.module
            for _ in range(40):
                lam = ("1", "2")[rng.randrange(2)]
                rows = gmod.weight_space_rows(lam)
                if not rows:
                    continue
                # homogeneous: restrict to one grade
                grade = rng.choice(sorted({gn.grades[i]
                                           for r in rows
                                           for i, x in enumerate(r) if x}))
                v = [gmod.fld.zero] * gmod.rank
                for r in rows:
                    if any(x and gn.grades[i] != grade
                           for i, x in enumerate(r)):
                        continue
                    c = rng.randint(-2, 2)
                    if rng.random() < 0.3:
                        c *= 3
                    if c:
                        for t in range(gmod.rank):
                            if r[t]:
                                v[t] = v[t] + gmod.fld.of(c) * r[t]
                if not any(v):
                    continue
                rep = forced.primitivity_test(gmod, v, lam)
                assert rep.primitive == rep.strongly_primitive, (lam, v)


class TestGrBRecordsActingAlgebra:
    def test_provenance(self, gr_z5, sp_z5):
        gd = graded.gr_module(gr_z5, sp_z5["2"]["Delta"])
        grb = forced.gr_b(gd, name="grA-of-z5")
        assert grb.acting == "grA-of-z5"
