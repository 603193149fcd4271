"""Lattices over the discrete valuation ring O.

A lattice is a finitely generated O-submodule of O^n, stored by a canonical
Hermite-style echelon generator matrix.  Over a DVR every nonzero entry is a
unit times pi^a, so an entry of minimal valuation in a column divides the
others; pivots are normalized to pi^a and entries above a pivot are reduced
to canonical residues mod pi^a.  Two lattices are equal iff their canonical
matrices are equal.

All entries live in K (Fraction or Cyc); membership in O means valuation >= 0.
"""

from __future__ import annotations

from .scalars import RingSpec


class LatticeError(ValueError):
    pass


def _first_nonzero(row):
    for j, x in enumerate(row):
        if x:
            return j
    return None


def _pi_power(ring, e: int):
    pi = ring.uniformizer
    out = ring.one()
    if e >= 0:
        for _ in range(e):
            out = out * pi
    else:
        inv = ring.one() / pi
        for _ in range(-e):
            out = out * inv
    return out


class Lattice:
    """An O-sublattice of O^ambient in canonical echelon form."""

    __slots__ = ("ring", "ambient", "rows", "pivots", "pivot_vals", "_hash")

    def __init__(self, ring: RingSpec, ambient: int, rows, pivots, pivot_vals):
        self.ring = ring
        self.ambient = ambient
        self.rows = rows              # tuple of row tuples, canonical
        self.pivots = pivots          # pivot column per row, strictly increasing
        self.pivot_vals = pivot_vals  # valuation of each pivot entry
        self._hash = None

    # -- construction ---------------------------------------------------------
    @staticmethod
    def from_rows(ring: RingSpec, ambient: int, rows) -> "Lattice":
        """Canonicalize arbitrary generators (rows over O)."""
        piv_row = {}   # col -> normalized row with pivot pi^val at col
        piv_val = {}   # col -> pivot valuation
        queue = [list(r) for r in rows if any(r)]
        for r in queue:
            if len(r) != ambient:
                raise LatticeError("generator length != ambient rank")
    # worklist echelon: an incoming row either reduces or replaces a pivot
        while queue:
            r = queue.pop()
            col = 0
            while col < ambient:
                x = r[col]
                if not x:
                    col += 1
                    continue
                v = ring.valuation(x)
                if v < 0:
                    raise LatticeError("generator entry outside O")
                if col not in piv_row:
                    _normalize_pivot(ring, r, col, v)
                    piv_row[col] = r
                    piv_val[col] = v
                    break
                prow, pv = piv_row[col], piv_val[col]
                if v >= pv:
                    q = x / prow[col]
                    for j in range(col, ambient):
                        if prow[j]:
                            r[j] = r[j] - q * prow[j]
                else:
                    _normalize_pivot(ring, r, col, v)
                    piv_row[col] = r
                    piv_val[col] = v
                    queue.append(prow)
                    break
        cols = sorted(piv_row)
        ech = [(c, piv_val[c], piv_row[c]) for c in cols]
        _back_reduce(ring, ech)
        rows_t = tuple(tuple(r) for (_, _, r) in ech)
        return Lattice(ring, ambient, rows_t, tuple(cols),
                       tuple(piv_val[c] for c in cols))

    @staticmethod
    def zero(ring: RingSpec, ambient: int) -> "Lattice":
        return Lattice(ring, ambient, (), (), ())

    @staticmethod
    def full(ring: RingSpec, ambient: int) -> "Lattice":
        one = ring.one()
        zero = ring.zero()
        rows = tuple(
            tuple(one if i == j else zero for j in range(ambient))
            for i in range(ambient)
        )
        return Lattice(ring, ambient, rows, tuple(range(ambient)), (0,) * ambient)

    # -- basic protocol ---------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, Lattice)
            and self.ring == other.ring
            and self.ambient == other.ambient
            and self.rows == other.rows
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.ambient, self.rows))
        return self._hash

    def __repr__(self):
        return f"Lattice(rank {self.rank} in O^{self.ambient})"

    # -- membership -------------------------------------------------------------
    def reduce(self, vec):
        """Remainder of vec after O-reduction against the basis."""
        v = list(vec)
        ring = self.ring
        for (row, col, pval) in zip(self.rows, self.pivots, self.pivot_vals):
            x = v[col]
            if not x:
                continue
            if ring.valuation(x) < pval:
                continue
            q = x / row[col]
            for j in range(col, self.ambient):
                if row[j]:
                    v[j] = v[j] - q * row[j]
        return v

    def contains_vector(self, vec) -> bool:
        return not any(self.reduce(vec))

    def coords(self, vec):
        """O-coordinates of vec in the canonical basis, or None."""
        v = list(vec)
        ring = self.ring
        cs = []
        for (row, col, pval) in zip(self.rows, self.pivots, self.pivot_vals):
            x = v[col]
            if not x:
                cs.append(ring.zero())
                continue
            if ring.valuation(x) < pval:
                return None
            q = x / row[col]
            cs.append(q)
            for j in range(col, self.ambient):
                if row[j]:
                    v[j] = v[j] - q * row[j]
        if any(v):
            return None
        return cs

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains_vector(r) for r in other.rows)

    # -- lattice arithmetic -------------------------------------------------------
    def add(self, other: "Lattice") -> "Lattice":
        self._check_compatible(other)
        return Lattice.from_rows(self.ring, self.ambient,
                                 list(self.rows) + list(other.rows))

    def scale(self, c) -> "Lattice":
        rows = [[c * x for x in r] for r in self.rows]
        return Lattice.from_rows(self.ring, self.ambient, rows)

    def intersection(self, other: "Lattice") -> "Lattice":
        """{v : v in self and v in other}, canonical."""
        self._check_compatible(other)
        if self.rank == 0 or other.rank == 0:
            return Lattice.zero(self.ring, self.ambient)
        from . import linalg

        field = self.ring.field_K
        stacked = [list(r) for r in self.rows] + [list(r) for r in other.rows]
        ker = linalg.kernel_left(stacked, field)
        if not ker:
            return Lattice.zero(self.ring, self.ambient)
        # O-kernel = saturation of the cleared K-kernel inside O^(r1+r2)
        kerlat = saturate_rows(self.ring, len(stacked), ker)
        gens = []
        r1 = self.rank
        for z in kerlat.rows:
            v = [self.ring.zero()] * self.ambient
            for i in range(r1):
                if z[i]:
                    for j in range(self.ambient):
                        if self.rows[i][j]:
                            v[j] = v[j] + z[i] * self.rows[i][j]
            gens.append(v)
        return Lattice.from_rows(self.ring, self.ambient, gens)

    def saturation(self) -> "Lattice":
        """O^ambient intersect (K . self): the pure closure in the full lattice."""
        return saturate_rows(self.ring, self.ambient, [list(r) for r in self.rows])

    def _check_compatible(self, other):
        if self.ring != other.ring or self.ambient != other.ambient:
            raise LatticeError("ambient mismatch")


# ---------------------------------------------------------------------------
# echelon helpers
# ---------------------------------------------------------------------------

def _normalize_pivot(ring, row, col, val):
    """Scale the row by a unit so the pivot becomes exactly pi^val."""
    target = _pi_power(ring, val)
    u = row[col] / target
    uinv = ring.one() / u
    for j in range(col, len(row)):
        if row[j]:
            row[j] = uinv * row[j]
    row[col] = target


def _back_reduce(ring, ech):
    """Reduce entries above each pivot to canonical residues mod pi^val.

    Pivots are processed left to right: subtracting a multiple of a later
    pivot row never disturbs earlier pivot columns (those entries are zero).
    """
    for i in range(len(ech)):
        col, pval, row = ech[i]
        for i2 in range(i):
            _, _, above = ech[i2]
            x = above[col]
            if not x:
                continue
            canon = ring.canonical_mod(x, pval)
            q = (x - canon) / row[col]
            if q:
                for j in range(col, len(row)):
                    if row[j]:
                        above[j] = above[j] - q * row[j]


# ---------------------------------------------------------------------------
# saturation and Smith form
# ---------------------------------------------------------------------------

def saturate_rows(ring: RingSpec, ambient: int, rows) -> Lattice:
    """Smallest pure sublattice of O^ambient containing O^ambient ∩ K·span.

    Accepts rows over K (denominators allowed); the result depends only on
    the K-span of the input.
    """
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return Lattice.zero(ring, ambient)
    cleared = []
    for r in rows:
        mv = min(ring.valuation(x) for x in r if x)
        if mv != 0:
            f = _pi_power(ring, -mv)
            r = [f * x for x in r]
        cleared.append(r)
    vals, track = smith_track(ring, ambient, cleared)
    return Lattice.from_rows(ring, ambient, track[: len(vals)])


def smith_track(ring: RingSpec, ambient: int, rows):
    """Smith normal form over the DVR O with a tracked change of basis.

    Returns (divisor_vals, track_rows): track_rows is an O-basis of O^ambient
    such that the input row span equals span{ pi^divisor_vals[i] * track_rows[i] }
    for i < len(divisor_vals).  In particular the first len(divisor_vals) rows
    span the saturation of the input.
    """
    m = [list(r) for r in rows if any(r)]
    track = [[ring.one() if i == j else ring.zero() for j in range(ambient)]
             for i in range(ambient)]
    if not m:
        return [], track
    nr, nc = len(m), ambient
    perm = list(range(nc))  # column j of m corresponds to track row perm[j]
    vals = []
    top = 0
    while top < nr and top < nc:
        best = None
        for i in range(top, nr):
            for j in range(top, nc):
                if m[i][j]:
                    v = ring.valuation(m[i][j])
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == (vals[-1] if vals else 0):
                            break
            else:
                continue
            break
        if best is None:
            break
        v, bi, bj = best
        if v < 0:
            raise LatticeError("entry outside O in Smith reduction")
        m[top], m[bi] = m[bi], m[top]
        if bj != top:
            for r in m:
                r[top], r[bj] = r[bj], r[top]
            perm[top], perm[bj] = perm[bj], perm[top]
        _normalize_pivot(ring, m[top], top, v)
        for i in range(top + 1, nr):
            if m[i][top]:
                q = m[i][top] / m[top][top]
                for j in range(top, nc):
                    if m[top][j]:
                        m[i][j] = m[i][j] - q * m[top][j]
        for j in range(top + 1, nc):
            if m[top][j]:
                q = m[top][j] / m[top][top]
                # column op col_j -= q col_top; compensate track: row_top += q row_j
                m[top][j] = ring.zero()
                tr_top, tr_j = track[perm[top]], track[perm[j]]
                for t in range(nc):
                    if tr_j[t]:
                        tr_top[t] = tr_top[t] + q * tr_j[t]
        vals.append(v)
        top += 1
    ordered = [track[perm[i]] for i in range(nc)]
    return vals, ordered


# ---------------------------------------------------------------------------
# the spec-level operations
# ---------------------------------------------------------------------------

def lattice_intersection(l1: Lattice, l2: Lattice) -> Lattice:
    return l1.intersection(l2)


def pure_closure(n: Lattice, m: Lattice) -> Lattice:
    """M intersect K.N: the smallest pure sublattice of M containing N."""
    _require_sub(n, m)
    if n.rank == 0:
        return Lattice.zero(n.ring, n.ambient)
    coords = _coords_matrix(n, m)
    sat = saturate_rows(n.ring, m.rank, coords)
    gens = [_from_coords(c, m) for c in sat.rows]
    return Lattice.from_rows(n.ring, n.ambient, gens)


def is_pure(n: Lattice, m: Lattice) -> bool:
    """Purity of N in M, cross-checked by base-change injectivity.

    Route (a): pure_closure(N, M) == N.
    Route (b): N_k -> M_k stays injective, i.e. the coordinate matrix of N in
    a basis of M has full rank modulo pi.
    """
    _require_sub(n, m)
    a = pure_closure(n, m) == n
    if n.rank == 0:
        return True
    from . import linalg

    coords = _coords_matrix(n, m)
    fk = n.ring.field_k
    red = [[n.ring.residue(x) for x in row] for row in coords]
    b = linalg.rank(red, fk) == n.rank
    assert a == b, "purity cross-check disagreement (Lemma 2.3 routes)"
    return a


def quotient_free_basis(m: Lattice, n: Lattice):
    """Free-part basis lifts and torsion elementary divisors of M/N.

    Returns (free_lifts, torsion_vals): M/N is a direct sum of a free module
    with basis the images of free_lifts and of cyclic summands O/pi^a for each
    a in torsion_vals (all a >= 1).  torsion_vals is empty iff N is pure in M.
    """
    _require_sub(n, m)
    if m.rank == 0:
        return [], []
    ring = m.ring
    coords = _coords_matrix(n, m)
    vals, track = smith_track(ring, m.rank, coords)
    torsion = sorted(v for v in vals if v > 0)
    free_lifts = [_from_coords(c, m) for c in track[len(vals):]]
    return free_lifts, torsion


def _coords_matrix(n: Lattice, m: Lattice):
    out = []
    for r in n.rows:
        c = m.coords(r)
        if c is None:
            raise LatticeError("N is not contained in M")
        out.append(c)
    return out


def _from_coords(coords, m: Lattice):
    ring = m.ring
    v = [ring.zero()] * m.ambient
    for c, row in zip(coords, m.rows):
        if c:
            for j in range(m.ambient):
                if row[j]:
                    v[j] = v[j] + c * row[j]
    return v


def _require_sub(n: Lattice, m: Lattice):
    n._check_compatible(m)
    for r in n.rows:
        if not m.contains_vector(r):
            raise LatticeError("N is not contained in M")
