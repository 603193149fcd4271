from fractions import Fraction as F

import pytest

from grforge import linalg, radicals
from grforge.algebra import StructureAlgebra
from grforge.scalars import RATIONAL, RingSpec

R3 = RingSpec(RATIONAL, 3)


def upper_triangular_2x2():
    # basis E11, E12, E22
    sc = {
        (0, 0): {0: F(1)}, (0, 1): {1: F(1)},
        (1, 2): {1: F(1)},
        (2, 2): {2: F(1)},
    }
    return StructureAlgebra(R3, "O", 3, ["E11", "E12", "E22"],
                            (F(1), F(0), F(1)), sc)


def full_2x2():
    sc = {}
    def ui(i, j):
        return {(0, 0): 0, (0, 1): 1, (1, 0): 2, (1, 1): 3}[(i, j)]
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    if j == k:
                        sc[(ui(i, j), ui(k, l))] = {ui(i, l): F(1)}
    return StructureAlgebra(R3, "O", 4, None, (F(1), F(0), F(0), F(1)), sc)


class TestRadicalCharZero:
    def test_upper_triangular(self):
        a = upper_triangular_2x2().base_change("K")
        rad = radicals.radical_field(a)
        assert len(rad) == 1
        assert rad[0][1] != 0 and rad[0][0] == 0 and rad[0][2] == 0

    def test_z5_radical(self, z5_K):
        rad = radicals.radical_field(z5_K)
        assert len(rad) == 3
        # spanned by alpha, beta, gamma: no idempotent coordinates
        for r in rad:
            assert r[0] == 0 and r[1] == 0

    def test_semisimple_matrix_algebra(self):
        a = full_2x2().base_change("K")
        assert radicals.radical_field(a) == []


class TestRadicalCharP:
    def test_z5_mod_p(self, z5_k):
        rad = radicals.radical_field(z5_k)
        assert len(rad) == 3

    def test_group_algebra_of_cyclic_p(self):
        # k[C_3] = k[u]/(u^3 - 1): regular trace form vanishes identically,
        # so the Friedl-Ronyai stages beyond the trace form are exercised
        sc = {}
        for i in range(3):
            for j in range(3):
                sc[(i, j)] = {(i + j) % 3: F(1)}
        a = StructureAlgebra(R3, "O", 3, ["1", "g", "g2"],
                             (F(1), F(0), F(0)), sc).base_change("k")
        rad = radicals.radical_field(a)
        assert len(rad) == 2  # augmentation ideal of a totally ramified algebra

    def test_mixed_semisimple_char_p(self):
        a = full_2x2().base_change("k")
        assert radicals.radical_field(a) == []


class TestSplitting:
    def test_z5_blocks_via_weight_simples(self, z5_K):
        from grforge.modules import weight_simples

        rad = radicals.radical_field(z5_K)
        simples = weight_simples(z5_K, rad)
        quot, lifts, _ = z5_K.quotient_by_ideal(rad)
        qmods = radicals.quotient_modules(z5_K, lifts, simples)
        blocks = radicals.split_semisimple(quot, qmods)
        assert sorted(b.simple_dim for b in blocks) == [1, 1]
        for blk in blocks:
            radicals.block_matrix_units(quot, blk)
            assert set(blk.matrix_units) == {(0, 0)}


class TestWedderburn:
    def test_z5_complement(self, z5_K):
        from grforge.modules import weight_simples

        mods = weight_simples(z5_K)
        s = radicals.wedderburn_complement(z5_K, mods)
        ech, piv = linalg.rref([list(r) for r in s], z5_K.fld)
        assert len(ech) == 2
        # contains both idempotents
        for lbl in ("1", "2"):
            rem = linalg.in_row_space(
                list(z5_K.weights.idempotents[lbl]), ech, piv)
            assert not any(rem)

    def test_nilpotent_extension_of_scalars(self):
        # Q[x]/x^2: complement is the scalars
        sc = {(0, 0): {0: F(1)}, (0, 1): {1: F(1)}, (1, 0): {1: F(1)}}
        a = StructureAlgebra(R3, "O", 2, ["1", "x"], (F(1), F(0)), sc)
        ak = a.base_change("K")
        rad = radicals.radical_field(ak)
        # trivial module: scalars acting through the augmentation
        triv = [[[ak.fld.one]], [[ak.fld.zero]]]
        s = radicals.wedderburn_complement(ak, [("triv", triv)], rad=rad)
        assert len(s) == 1
        assert list(s[0]) == [ak.fld.one, ak.fld.zero]

    def test_semisimple_complement_is_everything(self):
        a = full_2x2().base_change("K")
        s = radicals.wedderburn_complement(a, [])
        assert len(s) == 4

    def test_contain_option(self, z5_K):
        from grforge.modules import weight_simples

        mods = weight_simples(z5_K)
        rad = radicals.radical_field(z5_K)
        # a conjugated copy of the idempotent span: e1' = e1 + gamma-ish
        # (1 + n) e1 (1 - n) with n = gamma nilpotent central in e1 A e1:
        # gamma central => conjugation trivial; use n = beta instead
        fld = z5_K.fld
        n = [fld.zero] * 5
        n[3] = fld.one  # beta
        one = list(z5_K.unit)
        u = [a + b for a, b in zip(one, n)]
        uinv = [a - b for a, b in zip(one, n)]
        e1 = list(z5_K.weights.idempotents["1"])
        e2 = list(z5_K.weights.idempotents["2"])
        s0 = [z5_K.mul(u, z5_K.mul(e, uinv)) for e in (e1, e2)]
        s = radicals.wedderburn_complement(z5_K, mods, contain=s0, rad=rad)
        ech, piv = linalg.rref([list(r) for r in s], fld)
        for v in s0:
            assert not any(linalg.in_row_space(v, ech, piv))


class TestNilpotency:
    def test_degree(self, z5_K):
        rad = radicals.radical_field(z5_K)
        assert radicals.nilpotency_degree(z5_K, rad) == 3

    def test_subspace_power(self, z5_K):
        rad = radicals.radical_field(z5_K)
        sq = radicals.subspace_power(z5_K, rad, 2)
        assert len(sq) == 1  # span{gamma}
        cb = radicals.subspace_power(z5_K, rad, 3)
        assert cb == []


class TestSubalgebraRadicalCheck:
    def test_full_radical_subalgebra(self, z5_K):
        fld = z5_K.fld
        one = list(z5_K.unit)
        rows = [one]
        for i in (2, 3, 4):  # alpha, beta, gamma
            v = [fld.zero] * 5
            v[i] = fld.one
            rows.append(v)
        rep = radicals.subalgebra_radical_check(z5_K, rows)
        assert rep["ok"] and rep["dim_rad_a"] == 3

    def test_scalars_only(self, z5_K):
        rep = radicals.subalgebra_radical_check(z5_K, [list(z5_K.unit)])
        assert rep["ok"] and rep["dim_rad_a"] == 0

    def test_one_and_gamma(self, z5_K):
        fld = z5_K.fld
        gamma = [fld.zero] * 5
        gamma[4] = fld.one
        rep = radicals.subalgebra_radical_check(
            z5_K, [list(z5_K.unit), gamma])
        assert rep["ok"]
        assert rep["dim_rad_a"] == 1 and rep["dim_a_cap_rad_A"] == 1

    def test_intermediate_b(self, z5_K):
        fld = z5_K.fld
        gamma = [fld.zero] * 5
        gamma[4] = fld.one
        b_rows = [list(z5_K.unit)]
        for i in (2, 3, 4):
            v = [fld.zero] * 5
            v[i] = fld.one
            b_rows.append(v)
        rep = radicals.subalgebra_radical_check(
            z5_K, [list(z5_K.unit), gamma], b_rows)
        assert rep["ok"]

    def test_unclosed_span_rejected(self, z5_K):
        fld = z5_K.fld
        alpha = [fld.zero] * 5
        alpha[2] = fld.one
        beta = [fld.zero] * 5
        beta[3] = fld.one
        with pytest.raises(Exception):
            radicals.subalgebra_radical_check(
                z5_K, [list(z5_K.unit), alpha, beta])
