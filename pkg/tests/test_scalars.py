import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from grforge.scalars import (
    CYCLOTOMIC,
    RATIONAL,
    Cyc,
    PModularScalar,
    RingSpec,
    ScalarError,
    is_unit,
    residue,
    valuation,
)

R3 = RingSpec(RATIONAL, 3)
C3 = RingSpec(CYCLOTOMIC, 3)
C5 = RingSpec(CYCLOTOMIC, 5)
C7 = RingSpec(CYCLOTOMIC, 7)


def zeta(ring, e=1):
    return Cyc.zeta_pow(ring.p, e)


# -- norm oracle for the cyclotomic valuation --------------------------------

def norm_valuation(ring, x):
    """v via the field norm: v(x) = v_p(N(x)) on the totally ramified prime."""
    if isinstance(x, (int, Fraction)):
        x = Cyc.of(ring.p, Fraction(x))
    if not x:
        return math.inf
    # N(x) = product of Galois conjugates zeta -> zeta^i, i = 1..p-1
    prod = Cyc.of(ring.p, 1)
    for i in range(1, ring.p):
        conj = Cyc.of(ring.p, x.c[0])
        for e, a in enumerate(x.c[1:], start=1):
            if a:
                conj = conj + Cyc.zeta_pow(ring.p, e * i) * a
        prod = prod * conj
    assert all(c == 0 for c in prod.c[1:]), "norm should be rational"
    n = prod.c[0]
    v = 0
    num, den = n.numerator, n.denominator
    while num % ring.p == 0:
        v += 1
        num //= ring.p
    while den % ring.p == 0:
        v -= 1
        den //= ring.p
    return v


class TestValuation:
    def test_rational_examples(self):
        assert R3.valuation(6) == 1
        assert R3.valuation(Fraction(2, 5)) == 0
        assert R3.valuation(Fraction(1, 3)) == -1
        assert R3.valuation(0) == math.inf

    def test_uniformizer_cyclotomic(self):
        assert C5.valuation(zeta(C5) - 1) == 1

    def test_p_is_unit_times_pi_to_p_minus_1(self):
        # p = unit * (zeta-1)^(p-1)
        for ring in (C3, C5, C7):
            assert ring.valuation(ring.p) == ring.p - 1
            u = ring.of(ring.p)
            pi = ring.uniformizer
            for _ in range(ring.p - 1):
                u = u / pi
            assert ring.valuation(u) == 0

    def test_cyclotomic_example_p3(self):
        assert C3.valuation(3) == 2
        assert norm_valuation(C3, 3) == 2

    def test_norm_oracle_agreement(self):
        samples = [
            zeta(C5) - 1,
            zeta(C5) + 1,
            Cyc(5, [1, 2, 3, 4]),
            Cyc(5, [5, 0, 0, 0]),
            Cyc(5, [Fraction(1, 2), 0, 1, 0]),
            (zeta(C5) - 1) * (zeta(C5) - 1),
            Cyc(5, [0, 0, 0, Fraction(3, 7)]),
        ]
        for x in samples:
            assert C5.valuation(x) == norm_valuation(C5, x)

    def test_level_k_rejected(self):
        x = PModularScalar(R3, "k", R3.residue(2))
        with pytest.raises(ScalarError):
            valuation(x)


class TestResidue:
    def test_zeta_maps_to_one(self):
        assert C5.residue(zeta(C5)) == 1

    def test_three_maps_to_zero(self):
        assert R3.residue(3) == 0
        assert C3.residue(3) == 0

    def test_quantum_unit_residue(self):
        # u = zeta^2 + zeta + 1 has residue 3 in F_5
        u = zeta(C5, 2) + zeta(C5) + 1
        assert C5.residue(u) == 3

    def test_residue_with_p_in_denominator_coeff(self):
        # x = (zeta-1)^4 / 5 is in O for p = 5 and has residue != 0
        x = C5.of(1)
        for _ in range(4):
            x = x * (zeta(C5) - 1)
        x = x / 5
        assert C5.valuation(x) == 0
        r = C5.residue(x)
        assert r != 0

    def test_surface_op(self):
        s = PModularScalar(C5, "O", zeta(C5))
        assert residue(s).value == 1


class TestIsUnit:
    def test_examples(self):
        assert R3.is_unit(2) is True
        assert C3.is_unit(zeta(C3) - 1) is False
        assert C5.is_unit(zeta(C5) + 1) is True

    def test_surface_op(self):
        assert is_unit(PModularScalar(R3, "O", Fraction(2))) is True
        assert is_unit(PModularScalar(C3, "O", zeta(C3) - 1)) is False


# -- algebraic properties -----------------------------------------------------

small_fracs = st.fractions(min_value=-50, max_value=50, max_denominator=40)


def cyc_elems(p):
    return st.lists(small_fracs, min_size=p - 1, max_size=p - 1).map(
        lambda cs: Cyc(p, cs)
    )


@settings(max_examples=60, deadline=None)
@given(x=small_fracs, y=small_fracs)
def test_valuation_multiplicative_rational(x, y):
    if x and y:
        assert R3.valuation(x * y) == R3.valuation(x) + R3.valuation(y)


@settings(max_examples=40, deadline=None)
@given(x=cyc_elems(5), y=cyc_elems(5))
def test_valuation_multiplicative_cyclotomic(x, y):
    if x and y:
        assert C5.valuation(x * y) == C5.valuation(x) + C5.valuation(y)


@settings(max_examples=40, deadline=None)
@given(x=cyc_elems(5), y=cyc_elems(5))
def test_residue_is_ring_hom(x, y):
    if C5.valuation(x) >= 0 and C5.valuation(y) >= 0:
        assert C5.residue(x * y) == C5.residue(x) * C5.residue(y)
        assert C5.residue(x + y) == C5.residue(x) + C5.residue(y)


@settings(max_examples=40, deadline=None)
@given(x=cyc_elems(3))
def test_field_inverse(x):
    if x:
        assert x * x.inverse() == Cyc.of(3, 1)


def test_canonical_mod():
    # digits lie in {0..p-1} along powers of pi
    x = C3.of(7) + zeta(C3) * 5
    c2 = C3.canonical_mod(x, 2)
    assert C3.valuation(x - c2) >= 2
    c1 = C3.canonical_mod(x, 1)
    assert c1 in (C3.of(0), C3.of(1), C3.of(2))


def test_scalar_serialization_roundtrip():
    for ring, val in [
        (R3, Fraction(-7, 4)),
        (C5, Cyc(5, [1, Fraction(2, 3), 0, -4])),
    ]:
        s = ring.format_scalar(val)
        assert ring.parse_scalar(s) == val
