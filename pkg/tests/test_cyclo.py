from fractions import Fraction

import pytest

from grforge import cyclo
from grforge.scalars import CYCLOTOMIC, Cyc, RingSpec


class TestUnitIdentity:
    def test_p5_d3(self):
        u, is_u, res = cyclo.unit_u_alpha(5, 3)
        z = Cyc.zeta_pow(5, 1)
        assert u == Cyc.zeta_pow(5, 2) + z + 1
        assert is_u and res == 3

    def test_p3_d2(self):
        u, is_u, res = cyclo.unit_u_alpha(3, 2)
        assert u == Cyc.zeta_pow(3, 1) + 1
        assert is_u and res == 2

    def test_d1_trivial(self):
        for p in (3, 5, 7):
            u, is_u, res = cyclo.unit_u_alpha(p, 1)
            assert u == Cyc.of(p, 1) and is_u and res == 1

    def test_p_divides_d_rejected(self):
        with pytest.raises(cyclo.CycloError):
            cyclo.unit_u_alpha(3, 3)

    def test_p_equals_unit_times_pi_power(self):
        for p in (3, 5, 7):
            ring = RingSpec(CYCLOTOMIC, p)
            x = ring.of(p)
            pi = ring.uniformizer
            for _ in range(p - 1):
                x = x / pi
            assert ring.is_unit(x)


class TestRootData:
    def test_positive_root_counts(self):
        assert len(cyclo.RootDatum.of_type("A1").positive) == 1
        assert len(cyclo.RootDatum.of_type("A2").positive) == 3
        assert len(cyclo.RootDatum.of_type("B2").positive) == 4
        assert len(cyclo.RootDatum.of_type("G2").positive) == 6

    def test_d_alpha_values(self):
        b2 = cyclo.RootDatum.of_type("B2")
        assert sorted(b2.d_alpha(b) for b in b2.positive) == [1, 1, 2, 2]
        g2 = cyclo.RootDatum.of_type("G2")
        assert sorted(g2.d_alpha(b) for b in g2.positive) == [1, 1, 1, 3, 3, 3]

    def test_unsupported_type(self):
        with pytest.raises(cyclo.CycloError):
            cyclo.RootDatum.of_type("E8")


class TestKBeta:
    def test_simple_definition_inverted(self):
        ring = RingSpec(CYCLOTOMIC, 5)
        rd = cyclo.RootDatum.of_type("A1")
        k = cyclo.k_simple(ring, rd, 0, 6)
        h = cyclo.Series.gen(ring, 1, 6, 0)
        zd = Cyc.zeta_pow(5, 1)
        assert k == cyclo.Series.const(ring, 1, 6, 1) + h * (zd - 1)

    def test_a2_composite_integral(self):
        ring = RingSpec(CYCLOTOMIC, 5)
        rd = cyclo.RootDatum.of_type("A2")
        hb, ok = cyclo.h_prime(ring, rd, (1, 1), 8)
        assert ok

    def test_g2_long_root_integral(self):
        ring = RingSpec(CYCLOTOMIC, 5)
        rd = cyclo.RootDatum.of_type("G2")
        for beta in rd.positive:
            hb, ok = cyclo.h_prime(ring, rd, beta, 6)
            assert ok, beta

    def test_negative_root_rejected(self):
        ring = RingSpec(CYCLOTOMIC, 3)
        rd = cyclo.RootDatum.of_type("A2")
        with pytest.raises(cyclo.CycloError):
            cyclo.k_beta(ring, rd, (-1, 0), 6)


class TestItemSuite:
    def test_p5_rank1(self):
        rd = cyclo.RootDatum.of_type("A1")
        v = cyclo.appendix_identity_suite(rd, 5, 8)
        assert all(v.values())

    def test_p3_b2(self):
        rd = cyclo.RootDatum.of_type("B2")
        v = cyclo.appendix_identity_suite(rd, 3, 8)
        assert all(v.values())

    def test_g2_p3_excluded(self):
        rd = cyclo.RootDatum.of_type("G2")
        with pytest.raises(cyclo.CycloError):
            cyclo.appendix_identity_suite(rd, 3, 8)

    def test_item6_scalar_example(self):
        # p = 3, r = 3: v((zeta-1)^3) = 3 > v(3) = 2, so the coefficient
        # (zeta^d - 1)^r / r stays integral
        ring = RingSpec(CYCLOTOMIC, 3)
        pi = ring.uniformizer
        x = pi * pi * pi * Fraction(1, 3)
        assert ring.valuation(x) == 1

    def test_low_order_trivial(self):
        rd = cyclo.RootDatum.of_type("A1")
        v = cyclo.appendix_identity_suite(rd, 5, 2)
        assert all(v.values())

    def test_order_one_rejected(self):
        rd = cyclo.RootDatum.of_type("A1")
        with pytest.raises(cyclo.CycloError):
            cyclo.appendix_identity_suite(rd, 5, 1)


class TestComult:
    def test_p3_d1(self):
        rd = cyclo.RootDatum.of_type("A1")
        assert cyclo.comult_check(rd, 0, 3, 8)

    def test_p5_d2(self):
        rd = cyclo.RootDatum.of_type("B2")
        # alpha_1 is the long root (d = 2)
        assert rd.d_simple[0] == 2
        assert cyclo.comult_check(rd, 0, 5, 8)

    def test_degenerate_truncation(self):
        rd = cyclo.RootDatum.of_type("A1")
        assert cyclo.comult_check(rd, 0, 3, 2)


class TestSeriesArithmetic:
    def test_inverse_roundtrip(self):
        ring = RingSpec(CYCLOTOMIC, 5)
        rd = cyclo.RootDatum.of_type("A1")
        k = cyclo.k_simple(ring, rd, 0, 7)
        one = cyclo.Series.const(ring, 1, 7, 1)
        assert k * k.inverse() == one

    def test_no_constant_term_inverse_fails(self):
        ring = RingSpec(CYCLOTOMIC, 3)
        h = cyclo.Series.gen(ring, 1, 5, 0)
        with pytest.raises(ZeroDivisionError):
            h.inverse()
