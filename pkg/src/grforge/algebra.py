"""Structure-constant algebras over O with base change to K and k.

An algebra is a free module of finite rank with a bilinear multiplication
given by sparse structure constants c[i,j] (a vector for each basis pair) and
a two-sided unit.  The same class serves the integral level O and the two
field levels K and k; `level` records which one, and scalars are Fraction/Cyc
at levels O and K, prime-field elements at level k.

An optional WeightDatum attaches orthogonal idempotents e_nu summing to 1,
a distinguished subset Lambda of the labels, and a partial order on Lambda.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .lattices import Lattice
from .scalars import RingSpec


class AlgebraError(ValueError):
    pass


class ValidationError(AlgebraError):
    """Raised by load-time checks; carries every violated axiom."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


# how many basis triples the sampled associativity check draws
_FULL_ASSOC_LIMIT = 14
_SAMPLED_TRIPLES = 4000


@dataclass(frozen=True)
class WeightDatum:
    """Orthogonal idempotents indexed by X, a weight subset Lambda, a poset."""

    X: tuple
    Lambda: tuple
    less: frozenset          # pairs (a, b) with a < b, transitively closed
    idempotents: dict        # label -> coordinate tuple

    @staticmethod
    def build(X, Lambda, relations, idempotents):
        X = tuple(X)
        Lambda = tuple(Lambda)
        less = set()
        rels = {(a, b) for (a, b) in relations}
        changed = True
        while changed:
            changed = False
            for (a, b) in list(rels):
                for (c, d) in list(rels):
                    if b == c and (a, d) not in rels:
                        rels.add((a, d))
                        changed = True
        for (a, b) in rels:
            if a == b:
                raise AlgebraError(f"poset has a cycle through {a!r}")
            if a not in Lambda or b not in Lambda:
                raise AlgebraError("poset relation outside Lambda")
        less = frozenset(rels)
        idempotents = {lbl: tuple(v) for lbl, v in idempotents.items()}
        if set(idempotents) != set(X):
            raise AlgebraError("idempotents must be indexed exactly by X")
        if not set(Lambda) <= set(X):
            raise AlgebraError("Lambda must be a subset of X")
        return WeightDatum(X, Lambda, less, idempotents)

    def lt(self, a, b) -> bool:
        return (a, b) in self.less

    def leq(self, a, b) -> bool:
        return a == b or (a, b) in self.less

    def maximal(self, subset) -> list:
        subset = list(subset)
        return [a for a in subset if not any(self.lt(a, b) for b in subset)]

    def is_ideal(self, subset) -> bool:
        """Poset ideal of Lambda: downward closed."""
        s = set(subset)
        if not s <= set(self.Lambda):
            return False
        return all(a in s for a in self.Lambda for b in s if self.lt(a, b))

    def ideal_below(self, lam) -> tuple:
        return tuple(m for m in self.Lambda if self.leq(m, lam))

    def restrict(self, labels) -> "WeightDatum":
        labels = tuple(labels)
        return WeightDatum(
            labels,
            tuple(l for l in self.Lambda if l in labels),
            frozenset((a, b) for (a, b) in self.less if a in labels and b in labels),
            {l: self.idempotents[l] for l in labels},
        )


class StructureAlgebra:
    """Finite free algebra by structure constants, at level O, K, or k."""

    def __init__(self, ring: RingSpec, level: str, rank: int, labels, unit, sc,
                 weights: WeightDatum | None = None, generators: dict | None = None):
        if level not in ("O", "K", "k"):
            raise AlgebraError(f"bad level {level!r}")
        self.ring = ring
        self.level = level
        self.rank = rank
        self.labels = tuple(labels) if labels else tuple(f"b{i}" for i in range(rank))
        self.unit = tuple(unit)
        self.sc = sc  # dict (i, j) -> dict t -> scalar
        self.weights = weights
        self.generators = generators  # optional: label -> coordinate tuple
        self._left_mats = None
        self._right_mats = None

    # -- scalars ---------------------------------------------------------------
    @property
    def fld(self):
        return self.ring.field_k if self.level == "k" else self.ring.field_K

    def zero_vec(self):
        return [self.fld.zero] * self.rank

    def basis_vec(self, i):
        v = self.zero_vec()
        v[i] = self.fld.one
        return v

    # -- multiplication ----------------------------------------------------------
    def mul(self, x, y):
        out = self.zero_vec()
        sc = self.sc
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                row = sc.get((i, j))
                if row:
                    c = xi * yj
                    for t, v in row.items():
                        out[t] = out[t] + c * v
        return out

    def left_mult_matrix(self, i):
        """Matrix of left multiplication by b_i on column coordinates."""
        if self._left_mats is None:
            self._left_mats = [None] * self.rank
        if self._left_mats[i] is None:
            z = self.fld.zero
            m = [[z] * self.rank for _ in range(self.rank)]
            for j in range(self.rank):
                row = self.sc.get((i, j))
                if row:
                    for t, v in row.items():
                        m[t][j] = v
            self._left_mats[i] = m
        return self._left_mats[i]

    def right_mult_matrix(self, j):
        if self._right_mats is None:
            self._right_mats = [None] * self.rank
        if self._right_mats[j] is None:
            z = self.fld.zero
            m = [[z] * self.rank for _ in range(self.rank)]
            for i in range(self.rank):
                row = self.sc.get((i, j))
                if row:
                    for t, v in row.items():
                        m[t][i] = v
            self._right_mats[j] = m
        return self._right_mats[j]

    def left_mult_of(self, x):
        """Matrix of left multiplication by the element with coordinates x."""
        z = self.fld.zero
        m = [[z] * self.rank for _ in range(self.rank)]
        for i, xi in enumerate(x):
            if xi:
                mi = self.left_mult_matrix(i)
                for r in range(self.rank):
                    mir = mi[r]
                    mr = m[r]
                    for c in range(self.rank):
                        if mir[c]:
                            mr[c] = mr[c] + xi * mir[c]
    # left_mult_of(x) @ y == mul(x, y)
        return m

    # -- validation ---------------------------------------------------------------
    def validate(self, mode: str = "auto"):
        """Check the algebra axioms; raises ValidationError listing failures.

        mode: 'full' (all basis triples), 'generators' (exact proof through a
        generating set), 'sampled' (deterministic sample; recorded as partial),
        or 'auto' (full for small ranks, generators when available, else
        sampled).  Returns a dict report.
        """
        problems = []
        report = {"associativity": None}
        n = self.rank
        if len(self.unit) != n:
            problems.append("unit vector has wrong length")
        if self.level == "O":
            for (i, j), row in self.sc.items():
                for t, v in row.items():
                    if self.ring.valuation(v) < 0:
                        problems.append(
                            f"structure constant c[{i},{j},{t}] outside O")
        # unit axiom
        for j in range(n):
            bj = self.basis_vec(j)
            if self.mul(list(self.unit), bj) != bj:
                problems.append(f"unit fails on the left at basis {j}")
            if self.mul(bj, list(self.unit)) != bj:
                problems.append(f"unit fails on the right at basis {j}")
        if mode == "auto":
            if n <= _FULL_ASSOC_LIMIT:
                mode = "full"
            elif self.generators:
                mode = "generators"
            else:
                mode = "sampled"
        if mode == "full":
            problems += self._assoc_full()
            report["associativity"] = "full"
        elif mode == "generators":
            errs = self._assoc_generators()
            if errs is None:
                # generating set failed to span; fall back to the full check
                problems += self._assoc_full()
                report["associativity"] = "full(fallback)"
            else:
                problems += errs
                report["associativity"] = "generators"
        elif mode == "sampled":
            problems += self._assoc_sampled()
            report["associativity"] = f"sampled({_SAMPLED_TRIPLES})"
        else:
            raise AlgebraError(f"unknown validation mode {mode!r}")
        if self.weights is not None:
            problems += self._check_weights()
        if problems:
            raise ValidationError(problems)
        return report

    def _assoc_full(self):
        problems = []
        n = self.rank
        for i in range(n):
            for j in range(n):
                xij = self._sc_vec(i, j)
                for key in range(n):
                    lhs = self.mul(xij, self.basis_vec(key))
                    rhs = self.mul(self.basis_vec(i), self._sc_vec(j, key))
                    if lhs != rhs:
                        problems.append(
                            f"associativity fails at (b{i} b{j}) b{key} != b{i} (b{j} b{key})")
                        if len(problems) > 8:
                            return problems
        return problems

    def _assoc_generators(self):
        """Exact associativity proof through a generating set.

        If L_g L_x = L_(g*x) for every generator g and basis x, the set of w
        with L_w L_x = L_(w*x) for all x is a unital subalgebra; if the
        generators span the whole algebra the identity holds everywhere, which
        is associativity.  Returns None if spanning fails.
        """
        gens = [list(v) for v in self.generators.values()]
        if not self._spans_with_unit(gens):
            return None
        problems = []
        for name, g in self.generators.items():
            lg = self.left_mult_of(list(g))
            for j in range(self.rank):
                prod = self.mul(list(g), self.basis_vec(j))
                lhs = linalg.mat_mul(lg, self.left_mult_matrix(j), self.fld)
                rhs = self.left_mult_of(prod)
                if lhs != rhs:
                    problems.append(
                        f"associativity fails through generator {name!r} at basis {j}")
                    if len(problems) > 8:
                        return problems
        return problems

    def _spans_with_unit(self, gens):
        """Do unit and generators generate the algebra (as O-lattice / space)?"""
        if self.level == "k":
            fld = self.fld
            span, piv = linalg.rref([list(self.unit)] + gens, fld)
            while True:
                grew = False
                for g in gens:
                    for b in list(span):
                        w = self.mul(g, b)
                        rem = linalg.in_row_space(w, span, piv)
                        if any(rem):
                            span, piv = linalg.rref(span + [w], fld)
                            grew = True
                if not grew:
                    break
            return len(span) == self.rank
        lat = Lattice.from_rows(self.ring, self.rank, [list(self.unit)] + gens)
        while True:
            new_rows = []
            for g in gens:
                for b in lat.rows:
                    w = self.mul(g, list(b))
                    if not lat.contains_vector(w):
                        new_rows.append(w)
            if not new_rows:
                break
            lat = lat.add(Lattice.from_rows(self.ring, self.rank, new_rows))
        return lat == Lattice.full(self.ring, self.rank)

    def _assoc_sampled(self):
        problems = []
        n = self.rank
        state = 0x9E3779B97F4A7C15
        seen = 0
        while seen < min(_SAMPLED_TRIPLES, n * n * n):
            state = (state * 6364136223846793005 + 1442695040888963407) % (1 << 64)
            i = (state >> 13) % n
            j = (state >> 29) % n
            key = (state >> 45) % n
            seen += 1
            lhs = self.mul(self._sc_vec(i, j), self.basis_vec(key))
            rhs = self.mul(self.basis_vec(i), self._sc_vec(j, key))
            if lhs != rhs:
                problems.append(
                    f"associativity fails at sampled triple ({i},{j},{key})")
                if len(problems) > 8:
                    return problems
        return problems

    def _sc_vec(self, i, j):
        out = self.zero_vec()
        row = self.sc.get((i, j))
        if row:
            for t, v in row.items():
                out[t] = v
        return out

    def _check_weights(self):
        problems = []
        w = self.weights
        total = self.zero_vec()
        idems = {lbl: list(v) for lbl, v in w.idempotents.items()}
        for lbl, e in idems.items():
            if len(e) != self.rank:
                problems.append(f"idempotent {lbl!r} has wrong length")
                return problems
            if self.mul(e, e) != e:
                problems.append(f"e[{lbl!r}] is not idempotent")
            total = [a + b for a, b in zip(total, e)]
        labels = sorted(idems, key=str)
        for a in range(len(labels)):
            for b in range(a + 1, len(labels)):
                ea, eb = idems[labels[a]], idems[labels[b]]
                if any(self.mul(ea, eb)) or any(self.mul(eb, ea)):
                    problems.append(
                        f"idempotents {labels[a]!r}, {labels[b]!r} not orthogonal")
        if tuple(total) != self.unit:
            problems.append("idempotents do not sum to the unit")
        return problems

    # -- base change -----------------------------------------------------------------
    def base_change(self, level: str) -> "StructureAlgebra":
        """Reinterpret over K, or reduce modulo pi to k."""
        if self.level != "O":
            raise AlgebraError("base change starts from the integral level")
        if level == "K":
            return StructureAlgebra(self.ring, "K", self.rank, self.labels,
                                    self.unit, self.sc, self.weights, self.generators)
        if level != "k":
            raise AlgebraError(f"cannot base change to {level!r}")
        red = self.ring.residue
        sc = {}
        for (i, j), row in self.sc.items():
            nr = {t: red(v) for t, v in row.items()}
            nr = {t: v for t, v in nr.items() if v}
            if nr:
                sc[(i, j)] = nr
        unit = tuple(red(v) for v in self.unit)
        weights = None
        if self.weights is not None:
            weights = WeightDatum(
                self.weights.X, self.weights.Lambda, self.weights.less,
                {lbl: tuple(red(x) for x in v)
                 for lbl, v in self.weights.idempotents.items()})
        gens = None
        if self.generators:
            gens = {lbl: tuple(red(x) for x in v) for lbl, v in self.generators.items()}
        return StructureAlgebra(self.ring, "k", self.rank, self.labels, unit, sc,
                                weights, gens)

    # -- subquotients -----------------------------------------------------------------
    def subalgebra_on(self, rows, labels=None, require_unit=True):
        """The algebra structure on an O-lattice / subspace closed under product.

        `rows` are coordinate vectors forming a basis (lattice canonical rows at
        level O, any independent rows at field level).  Raises if the span is
        not closed under multiplication or misses the unit when required.
        """
        basis = [list(r) for r in rows]
        coords = self._coord_solver(basis)
        unit_c = coords(list(self.unit)) if require_unit else None
        if require_unit and unit_c is None:
            raise AlgebraError("subalgebra does not contain the unit")
        sc = {}
        n = len(basis)
        for i in range(n):
            for j in range(n):
                prod = self.mul(basis[i], basis[j])
                c = coords(prod)
                if c is None:
                    raise AlgebraError(
                        f"span not closed under multiplication at ({i},{j})")
                row = {t: v for t, v in enumerate(c) if v}
                if row:
                    sc[(i, j)] = row
        if not require_unit:
            unit_c = [self.fld.zero] * n
        return StructureAlgebra(self.ring, self.level, n,
                                labels or [f"s{i}" for i in range(n)],
                                unit_c, sc, None, None), basis

    def _coord_solver(self, basis):
        if self.level == "O":
            lat = Lattice.from_rows(self.ring, self.rank, basis)
            mat = [lat.coords(b) for b in basis]
            inv = linalg.invert(mat, self.fld)

            def coords(v):
                c = lat.coords(v)
                if c is None:
                    return None
                return linalg.mat_vec(linalg.transpose(inv), c, self.fld)
        else:
            ech, piv = linalg.rref(basis, self.fld)
            red = [linalg.coords_in_row_space(b, ech, piv) for b in basis]
            inv = linalg.invert(red, self.fld)

            def coords(v):
                c = linalg.coords_in_row_space(v, ech, piv)
                if c is None:
                    return None
                return linalg.mat_vec(linalg.transpose(inv), c, self.fld)
        return coords

    def quotient_by_ideal(self, ideal):
        """Quotient algebra by a two-sided ideal.

        `ideal` is a Lattice at level O (must be pure, else the quotient is
        not O-free) or a list of row vectors at field level.  Returns
        (quotient_algebra, lift_rows, project): lift_rows are coordinate
        vectors of chosen basis lifts; project sends an element vector to its
        quotient coordinates.
        """
        from .lattices import quotient_free_basis

        fld = self.fld
        if self.level == "O":
            full = Lattice.full(self.ring, self.rank)
            free, torsion = quotient_free_basis(full, ideal)
            if torsion:
                raise AlgebraError("ideal is not pure; quotient is not O-free")
            lifts = [list(r) for r in free]
            irows = [list(r) for r in ideal.rows]
        else:
            raw = [list(r) for r in ideal]
            irows, piv = linalg.rref(raw, fld) if raw else ([], [])
            pivset = set(piv)
            lifts = [self.basis_vec(j) for j in range(self.rank) if j not in pivset]
        stack = irows + lifts
        inv_t = linalg.invert(linalg.transpose(stack), fld)
        if inv_t is None:
            raise AlgebraError("ideal basis plus lifts do not span")
        nideal = len(irows)

        def project(v):
            c = linalg.mat_vec(inv_t, list(v), fld)
            return c[nideal:]

        m = len(lifts)
        sc = {}
        for i in range(m):
            for j in range(m):
                prod = self.mul(lifts[i], lifts[j])
                c = project(prod)
                row = {t: v for t, v in enumerate(c) if v}
                if row:
                    sc[(i, j)] = row
        unit_c = project(list(self.unit))
        quot = StructureAlgebra(self.ring, self.level, m,
                                [f"q{i}" for i in range(m)], unit_c, sc)
        return quot, lifts, project
