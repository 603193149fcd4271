import itertools
import random
from fractions import Fraction

import pytest

from grforge.lattices import (
    Lattice,
    LatticeError,
    is_pure,
    lattice_intersection,
    pure_closure,
    quotient_free_basis,
    saturate_rows,
)
from grforge.scalars import CYCLOTOMIC, RATIONAL, Cyc, RingSpec

R3 = RingSpec(RATIONAL, 3)
R5 = RingSpec(RATIONAL, 5)
C3 = RingSpec(CYCLOTOMIC, 3)


def lat(ring, ambient, rows):
    return Lattice.from_rows(ring, ambient, [[ring.of(x) for x in r] for r in rows])


# -- brute-force intersection oracle (rank <= 3, small integer entries) -------
#
# Two independent checks, neither using the kernel/saturation code path:
#   * a coefficient-box enumeration: every O-combination of l1 generators that
#     happens to lie in l2 must lie in the computed intersection;
#   * for full-rank pairs, the exact index identity
#       v(det got) = v(det l1) + v(det l2) - v(det (l1+l2))
#     with inline Fraction determinants; together with got <= l1, got <= l2
#     (inline Cramer membership) this forces got = l1 ∩ l2.


def brute_members(ring, l1, l2, bound):
    out = []
    coeffs = range(-bound, bound + 1)
    for cs in itertools.product(coeffs, repeat=l1.rank):
        v = [ring.zero()] * l1.ambient
        for c, row in zip(cs, l1.rows):
            if c:
                for j in range(l1.ambient):
                    v[j] = v[j] + ring.of(c) * row[j]
        if any(v) and inline_member(ring, l2, v):
            out.append(v)
    return out


def inline_det(rows):
    n = len(rows)
    if n == 1:
        return Fraction(rows[0][0])
    if n == 2:
        return Fraction(rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0])
    total = Fraction(0)
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * Fraction(rows[0][j]) * inline_det(minor)
    return total


def inline_member(ring, l, v):
    """v in l, decided by Cramer solves against the generator matrix."""
    # solve c * G = v over Q by augmenting and eliminating
    g = [list(map(Fraction, row)) for row in l.rows]
    vv = list(map(Fraction, v))
    cs = []
    for row in g:
        # generators are in echelon form; eliminate greedily
        piv = next((j for j, x in enumerate(row) if x), None)
        if piv is None:
            continue
        c = vv[piv] / row[piv]
        cs.append(c)
        for j in range(len(vv)):
            vv[j] -= c * row[j]
    if any(vv):
        return False
    return all(c.denominator % ring.p != 0 for c in cs)


def det_val(ring, l):
    d = inline_det([list(map(Fraction, row)) for row in l.rows])
    assert d != 0
    v = 0
    num, den = abs(d.numerator), d.denominator
    while num % ring.p == 0:
        v += 1
        num //= ring.p
    assert den % ring.p != 0
    return v


class TestIntersection:
    def test_spec_example(self):
        l1 = lat(R3, 2, [[3, 0], [0, 1]])
        l2 = lat(R3, 2, [[1, 1]])
        expect = lat(R3, 2, [[3, 3]])
        assert lattice_intersection(l1, l2) == expect

    def test_idempotent(self):
        l = lat(R3, 3, [[1, 2, 0], [0, 3, 3]])
        assert lattice_intersection(l, l) == l

    def test_with_ambient(self):
        l = lat(R3, 2, [[2, 1], [0, 9]])
        assert lattice_intersection(l, Lattice.full(R3, 2)) == l

    def test_brute_force_oracle(self):
        rng = random.Random(20240811)
        for p, ring in [(3, R3), (5, R5)]:
            for trial in range(30):
                amb = rng.randint(1, 3)
                full_rank = trial % 3 != 0
                r1 = amb if full_rank else rng.randint(0, amb)
                r2 = amb if full_rank else rng.randint(0, amb)
                rows1 = [[rng.randint(-p * p, p * p) for _ in range(amb)] for _ in range(r1)]
                rows2 = [[rng.randint(-p * p, p * p) for _ in range(amb)] for _ in range(r2)]
                l1 = lat(ring, amb, rows1)
                l2 = lat(ring, amb, rows2)
                got = lattice_intersection(l1, l2)
                # soundness: every generator of got lies in both inputs
                for row in got.rows:
                    assert inline_member(ring, l1, row)
                    assert inline_member(ring, l2, row)
                # completeness on a coefficient box
                for v in brute_members(ring, l1, l2, bound=4):
                    assert got.contains_vector(v), (rows1, rows2, v)
                # exact index identity in the full-rank case
                if l1.rank == amb and l2.rank == amb:
                    assert got.rank == amb
                    t = l1.add(l2)
                    assert det_val(ring, got) == (
                        det_val(ring, l1) + det_val(ring, l2) - det_val(ring, t)
                    ), (rows1, rows2)


class TestPureClosure:
    def test_saturation_of_scaled_vector(self):
        n = lat(R3, 2, [[3, 3]])
        assert pure_closure(n, Lattice.full(R3, 2)) == lat(R3, 2, [[1, 1]])

    def test_fixed_point(self):
        n = lat(R3, 2, [[1, 2]])
        assert pure_closure(n, Lattice.full(R3, 2)) == n

    def test_idempotent(self):
        m = lat(R3, 3, [[1, 0, 0], [0, 3, 0], [0, 0, 9]])
        n = lat(R3, 3, [[3, 3, 0], [0, 9, 9]])
        once = pure_closure(n, m)
        assert pure_closure(once, m) == once
        assert once.rank == n.rank

    def test_inside_proper_sublattice(self):
        # closure depends on M, not just on the ambient lattice
        m = lat(R3, 2, [[3, 0], [0, 1]])
        n = lat(R3, 2, [[9, 0]])
        assert pure_closure(n, m) == lat(R3, 2, [[3, 0]])

    def test_not_contained_raises(self):
        m = lat(R3, 2, [[3, 0], [0, 1]])
        n = lat(R3, 2, [[1, 0]])
        with pytest.raises(LatticeError):
            pure_closure(n, m)


class TestIsPure:
    def test_scaled_vector_not_pure(self):
        assert is_pure(lat(R3, 2, [[3, 0]]), Lattice.full(R3, 2)) is False

    def test_primitive_vector_pure(self):
        assert is_pure(lat(R3, 2, [[1, 2]]), Lattice.full(R3, 2)) is True

    def test_zero_pure(self):
        assert is_pure(Lattice.zero(R3, 2), Lattice.full(R3, 2)) is True

    def test_pure_with_positive_pivot_valuation(self):
        # (3, 1) is primitive even though its first entry has valuation 1
        assert is_pure(lat(R3, 2, [[3, 1]]), Lattice.full(R3, 2)) is True


class TestQuotient:
    def test_free_quotient(self):
        free, tors = quotient_free_basis(Lattice.full(R3, 2), lat(R3, 2, [[1, 0]]))
        assert tors == []
        assert len(free) == 1

    def test_pure_torsion(self):
        free, tors = quotient_free_basis(Lattice.full(R3, 1), lat(R3, 1, [[3]]))
        assert free == []
        assert tors == [1]

    def test_smith_oracle_example(self):
        free, tors = quotient_free_basis(Lattice.full(R3, 2), lat(R3, 2, [[3, 3]]))
        assert len(free) == 1
        assert tors == [1]

    def test_mixed(self):
        m = Lattice.full(R3, 3)
        n = lat(R3, 3, [[1, 0, 0], [0, 9, 0]])
        free, tors = quotient_free_basis(m, n)
        assert len(free) == 1
        assert tors == [2]


class TestCanonicalForm:
    def test_equality_is_canonical(self):
        a = lat(R3, 2, [[1, 1], [0, 3]])
        b = lat(R3, 2, [[1, 4], [2, 5]])
        # same lattice, different generators
        assert a.contains_lattice(b) and b.contains_lattice(a)
        assert a == b

    def test_cyclotomic_lattice(self):
        z = Cyc.zeta_pow(3, 1)
        pi = z - 1
        l1 = Lattice.from_rows(C3, 2, [[pi, C3.of(0)], [C3.of(0), C3.of(1)]])
        l2 = Lattice.from_rows(C3, 2, [[pi, pi], [C3.of(0), C3.of(1)]])
        assert l1 == l2  # pi*e1 + pi*e2 reduces mod the second generator
        got = lattice_intersection(l1, lat(C3, 2, [[1, 1]]))
        assert got == Lattice.from_rows(C3, 2, [[pi, pi]])

    def test_rank_zero_everywhere(self):
        z = Lattice.zero(R3, 4)
        assert z.rank == 0
        assert z.add(z) == z
        assert lattice_intersection(z, Lattice.full(R3, 4)) == z
        assert saturate_rows(R3, 4, []) == z


class TestRandomPurityAgreement:
    def test_thousand_pairs(self):
        # Lemma 2.3(a) vs (b) agreement is asserted inside is_pure itself
        rng = random.Random(7)
        for ring in (R3, R5, C3):
            for _ in range(120):
                amb = rng.randint(1, 6)
                m = Lattice.full(ring, amb)
                rows = [
                    [ring.of(rng.randint(-9, 9)) for _ in range(amb)]
                    for _ in range(rng.randint(0, amb))
                ]
                scale = ring.uniformizer if rng.random() < 0.5 else ring.one()
                n = Lattice.from_rows(ring, amb, [[scale * x for x in r] for r in rows])
                is_pure(n, m)


def test_pure_closure_monotone():
    rng = random.Random(5)
    for _ in range(40):
        amb = rng.randint(1, 4)
        m = Lattice.full(R3, amb)
        rows2 = [[R3.of(rng.randint(-6, 6)) for _ in range(amb)]
                 for _ in range(rng.randint(1, amb))]
        n2 = Lattice.from_rows(R3, amb, rows2)
        rows1 = []
        for _ in range(rng.randint(0, n2.rank)):
            v = [R3.zero()] * amb
            for r in n2.rows:
                c = rng.randint(-2, 2) * (3 if rng.random() < 0.5 else 1)
                for t in range(amb):
                    v[t] = v[t] + R3.of(c) * r[t]
            rows1.append(v)
        n1 = Lattice.from_rows(R3, amb, rows1)
        c1 = pure_closure(n1, m)
        c2 = pure_closure(n2, m)
        assert c2.contains_lattice(c1)
