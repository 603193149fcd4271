"""Module lattices and field-level modules over a structure-constant algebra.

A ModuleRep of rank m stores one m x m action matrix per algebra basis
element, acting on column coordinates; module elements are coordinate rows in
O^m (level O) or F^m (levels K, k).  Submodules at level O are Lattices in
the module's own coordinates (the module lattice itself is O^m); at field
level they are row-space bases.
"""

from __future__ import annotations

from . import linalg, radicals
from .algebra import AlgebraError, StructureAlgebra, WeightDatum
from .lattices import Lattice, pure_closure, quotient_free_basis


class ModuleError(AlgebraError):
    pass


class ModuleRep:
    def __init__(self, algebra: StructureAlgebra, rank: int, acts, name=""):
        self.algebra = algebra
        self.rank = rank
        self.acts = acts  # list over algebra basis of rank x rank matrices
        self.name = name

    @property
    def level(self):
        return self.algebra.level

    @property
    def fld(self):
        return self.algebra.fld

    def __repr__(self):
        return f"ModuleRep({self.name or 'module'}, rank {self.rank})"

    # -- actions ----------------------------------------------------------------
    def act_basis(self, i, v):
        return linalg.mat_vec(self.acts[i], list(v), self.fld)

    def act(self, x, v):
        """Action of the algebra element with coordinates x."""
        fld = self.fld
        out = [fld.zero] * self.rank
        for i, c in enumerate(x):
            if c:
                av = self.act_basis(i, v)
                for t in range(self.rank):
                    if av[t]:
                        out[t] = out[t] + c * av[t]
        return out

    def act_matrix(self, x):
        return radicals.module_action_of(self.algebra, self.acts, list(x))

    def zero_vec(self):
        return [self.fld.zero] * self.rank

    def basis_vec(self, i):
        v = self.zero_vec()
        v[i] = self.fld.one
        return v

    def full_lattice(self):
        return Lattice.full(self.algebra.ring, self.rank)

    # -- validation ----------------------------------------------------------------
    def validate(self, sample_limit: int = 12):
        alg = self.algebra
        fld = self.fld
        if len(self.acts) != alg.rank:
            raise ModuleError("need one action matrix per algebra basis element")
        uid = self.act_matrix(list(alg.unit))
        ident = linalg.identity(fld, self.rank)
        if uid != ident:
            raise ModuleError("unit does not act as identity")
        if alg.level == "O":
            for m in self.acts:
                for row in m:
                    for x in row:
                        if x and alg.ring.valuation(x) < 0:
                            raise ModuleError("action entry outside O")
        n = alg.rank
        pairs = ((i, j) for i in range(n) for j in range(n)) if n <= sample_limit \
            else _sample_pairs(n)
        for (i, j) in pairs:
            lhs = linalg.mat_mul(self.acts[i], self.acts[j], fld)
            rhs = self.act_matrix(alg._sc_vec(i, j))
            if lhs != rhs:
                raise ModuleError(f"action violates structure constants at ({i},{j})")
        return True

    # -- base change ----------------------------------------------------------------
    def base_change(self, level: str) -> "ModuleRep":
        if self.level != "O":
            raise ModuleError("base change starts from the integral level")
        balg = self.algebra.base_change(level)
        if level == "K":
            return ModuleRep(balg, self.rank, self.acts, self.name + "_K")
        red = self.algebra.ring.residue
        acts = [[[red(x) for x in row] for row in m] for m in self.acts]
        return ModuleRep(balg, self.rank, acts, self.name + "_k")

    # -- weight spaces ----------------------------------------------------------------
    def weight_space_rows(self, nu):
        """Basis rows of e_nu M (a pure sublattice at level O)."""
        w = self.algebra.weights
        if w is None:
            raise ModuleError("no weight datum")
        e = list(w.idempotents[nu])
        imgs = [self.act(e, self.basis_vec(i)) for i in range(self.rank)]
        if self.level == "O":
            return list(Lattice.from_rows(self.algebra.ring, self.rank, imgs).rows)
        ech, _ = linalg.rref(imgs, self.fld)
        return ech

    # -- submodules -------------------------------------------------------------------
    def submodule_generated(self, vectors):
        """Smallest action-stable span containing the vectors.

        Returns a Lattice (level O) or a list of basis rows (field level).
        """
        vecs = [list(v) for v in vectors if any(v)]
        if self.level == "O":
            ring = self.algebra.ring
            lat = Lattice.from_rows(ring, self.rank, vecs)
            while True:
                new = []
                for i in range(self.algebra.rank):
                    for r in lat.rows:
                        w = self.act_basis(i, r)
                        if not lat.contains_vector(w):
                            new.append(w)
                if not new:
                    return lat
                lat = lat.add(Lattice.from_rows(ring, self.rank, new))
        ech, piv = linalg.rref(vecs, self.fld)
        while True:
            new = []
            for i in range(self.algebra.rank):
                for r in ech:
                    w = self.act_basis(i, list(r))
                    if any(linalg.in_row_space(w, ech, piv)):
                        new.append(w)
            if not new:
                return ech
            ech, piv = linalg.rref(ech + new, self.fld)

    def restrict_to(self, sub) -> "ModuleRep":
        """Module structure on an action-stable sublattice / subspace."""
        rows = list(sub.rows) if isinstance(sub, Lattice) else [list(r) for r in sub]
        if not rows:
            return ModuleRep(self.algebra, 0,
                             [[] for _ in range(self.algebra.rank)], self.name + "|0")
        coords = self._coords_fn(rows)
        acts = []
        for i in range(self.algebra.rank):
            cols = []
            for r in rows:
                img = self.act_basis(i, list(r))
                c = coords(img)
                if c is None:
                    raise ModuleError("span is not action-stable")
                cols.append(c)
            acts.append(linalg.transpose(cols))
        return ModuleRep(self.algebra, len(rows), acts, self.name + "|sub")

    def quotient_by(self, sub):
        """Quotient module; at level O `sub` must be pure (O-free quotient).

        Returns (module, project, lift_rows).
        """
        fld = self.fld
        if self.level == "O":
            full = self.full_lattice()
            free, torsion = quotient_free_basis(full, sub)
            if torsion:
                raise ModuleError("quotient has torsion; sublattice not pure")
            lifts = [list(r) for r in free]
            irows = [list(r) for r in sub.rows]
        else:
            raw = [list(r) for r in sub]
            irows, piv = linalg.rref(raw, fld) if raw else ([], [])
            pivset = set(piv)
            lifts = [self.basis_vec(j) for j in range(self.rank) if j not in pivset]
        stack = irows + lifts
        if not stack:
            proj = ModuleRep(self.algebra, 0, [[] for _ in range(self.algebra.rank)])
            return proj, (lambda v: []), []
        inv_t = linalg.invert(linalg.transpose(stack), fld)
        if inv_t is None:
            raise ModuleError("sub basis plus lifts do not span")
        ns = len(irows)

        def project(v):
            return linalg.mat_vec(inv_t, list(v), fld)[ns:]

        acts = []
        for i in range(self.algebra.rank):
            cols = [project(self.act_basis(i, lift)) for lift in lifts]
            acts.append(linalg.transpose(cols))
        out = ModuleRep(self.algebra, len(lifts), acts, self.name + "/sub")
        return out, project, lifts

    def _coords_fn(self, rows):
        fld = self.fld
        if self.level == "O":
            lat = Lattice.from_rows(self.algebra.ring, self.rank, rows)
            mat = [lat.coords(list(b)) for b in rows]
            inv = linalg.invert(mat, fld)

            def coords(v):
                c = lat.coords(list(v))
                if c is None:
                    return None
                out = [fld.zero] * len(rows)
                for idx in range(len(rows)):
                    s = fld.zero
                    for jdx in range(len(rows)):
                        if c[jdx] and inv[jdx][idx]:
                            s = s + c[jdx] * inv[jdx][idx]
                    out[idx] = s
                return out
        else:
            ech, piv = linalg.rref([list(r) for r in rows], fld)
            red = [linalg.coords_in_row_space(list(b), ech, piv) for b in rows]
            inv = linalg.invert(red, fld)

            def coords(v):
                c = linalg.coords_in_row_space(list(v), ech, piv)
                if c is None:
                    return None
                out = [fld.zero] * len(rows)
                for idx in range(len(rows)):
                    s = fld.zero
                    for jdx in range(len(rows)):
                        if c[jdx] and inv[jdx][idx]:
                            s = s + c[jdx] * inv[jdx][idx]
                    out[idx] = s
                return out
        return coords


def _sample_pairs(n, count=400):
    state = 0xA5A5A5A5
    seen = set()
    while len(seen) < min(count, n * n):
        state = (state * 1103515245 + 12345) % (1 << 31)
        seen.add(((state >> 7) % n, (state >> 17) % n))
    return sorted(seen)


# ---------------------------------------------------------------------------
# regular module, PIMs, standard modules
# ---------------------------------------------------------------------------

def regular_module(alg: StructureAlgebra) -> ModuleRep:
    acts = [alg.left_mult_matrix(i) for i in range(alg.rank)]
    return ModuleRep(alg, alg.rank, acts, "regular")


def weight_projective(alg: StructureAlgebra, lam) -> ModuleRep:
    """The module A e_lam (a PIM when the datum is basic, else a multiple)."""
    w = alg.weights
    if w is None:
        raise ModuleError("no weight datum")
    reg = regular_module(alg)
    e = list(w.idempotents[lam])
    cols = [reg.act(alg.basis_vec(i), e) for i in range(alg.rank)]
    sub = reg.submodule_generated(cols)
    mod = reg.restrict_to(sub)
    mod.name = f"P({lam})"
    return mod


def truncate_to_ideal(mod: ModuleRep, gamma):
    """N_Gamma = N / sum of A e_nu N over nu in Lambda minus Gamma.

    Returns (quotient_module, torsion_vals, project).  At level O the quotient
    is taken by the pure closure and the elementary divisors of the discarded
    torsion are reported.
    """
    w = mod.algebra.weights
    if w is None:
        raise ModuleError("no weight datum")
    gamma = tuple(gamma)
    if not w.is_ideal(gamma):
        raise ModuleError(f"{gamma!r} is not a poset ideal of Lambda")
    kill = [nu for nu in w.Lambda if nu not in gamma]
    gens = []
    for nu in kill:
        gens.extend(list(r) for r in mod.weight_space_rows(nu))
    if mod.level == "O":
        ring = mod.algebra.ring
        sub = mod.submodule_generated(gens) if gens else Lattice.zero(ring, mod.rank)
        closed = pure_closure(sub, mod.full_lattice())
        _, torsion = quotient_free_basis(closed, sub) if sub.rank else ([], [])
        quot, project, _ = mod.quotient_by(closed)
        quot.name = f"{mod.name}|{gamma}"
        return quot, torsion, project
    sub = mod.submodule_generated(gens) if gens else []
    quot, project, _ = mod.quotient_by(sub)
    quot.name = f"{mod.name}|{gamma}"
    return quot, [], project


def standard_module(alg: StructureAlgebra, lam) -> ModuleRep:
    """Delta(lam): the weight projective truncated below lam."""
    w = alg.weights
    pe = weight_projective(alg, lam)
    delta, torsion, _ = truncate_to_ideal(pe, w.ideal_below(lam))
    if torsion:
        raise ModuleError(f"standard module at {lam!r} is not O-free: {torsion}")
    delta.name = f"Delta({lam})"
    return delta


def standard_and_projectives(alg: StructureAlgebra):
    """All A e_lam and Delta(lam), with basicness and head reports.

    Returns dict lam -> {"P": module, "Delta": module, "P_is_pim": bool}.
    P_is_pim records whether A e_lam has a simple head (so equals the PIM).
    """
    w = alg.weights
    if w is None:
        raise ModuleError("no weight datum")
    out = {}
    for lam in w.Lambda:
        p = weight_projective(alg, lam)
        d = standard_module(alg, lam)
        out[lam] = {"P": p, "Delta": d}
    # head simplicity is judged over k for level-O algebras
    if alg.level == "O":
        algk = alg.base_change("k")
        simples = weight_simples(algk)
        radk = radicals.radical_field(algk)
        for lam in w.Lambda:
            pk = out[lam]["P"].base_change("k")
            h = head_info(pk, radk, simples)
            out[lam]["P_is_pim"] = h["is_simple"]
            dk = out[lam]["Delta"].base_change("k")
            hd = head_info(dk, radk, simples)
            if not (hd["is_simple"] and hd["label"] == lam):
                raise ModuleError(
                    f"standard module at {lam!r} has head {hd}, expected L({lam})")
            # Lemma 4.6 behavior: Delta is generated by its lam-weight space
            dd = out[lam]["Delta"]
            gen = dd.submodule_generated(
                [list(r) for r in dd.weight_space_rows(lam)])
            if gen != dd.full_lattice():
                raise ModuleError(f"Delta({lam}) not generated by its weight space")
    return out


# ---------------------------------------------------------------------------
# field-level: simples, heads, composition multiplicities
# ---------------------------------------------------------------------------

def weight_simples(alg: StructureAlgebra, rad=None):
    """Candidate simple modules L(lam) = head of Delta(lam) at field level.

    Returns list of (label, module) sorted by label; each head is verified to
    have one-dimensional endomorphism ring (absolute irreducibility).
    """
    if alg.level == "O":
        raise ModuleError("weight_simples expects a field-level algebra")
    w = alg.weights
    if w is None:
        raise ModuleError("no weight datum")
    if rad is None:
        rad = radicals.radical_field(alg)
    out = []
    for lam in w.Lambda:
        delta = standard_module(alg, lam)
        head, _, _ = head_module(delta, rad)
        if not _endo_dim_is_one(head):
            raise radicals.NonSplitError(
                f"head of Delta({lam!r}) is not absolutely irreducible")
        head.name = f"L({lam})"
        out.append((lam, head))
    return out


def head_module(mod: ModuleRep, rad_rows):
    """M / (rad A) M at field level: (module, project, sub_rows)."""
    if mod.level == "O":
        raise ModuleError("head is a field-level notion here")
    gens = []
    for r in rad_rows:
        for i in range(mod.rank):
            gens.append(mod.act(list(r), mod.basis_vec(i)))
    sub, _ = linalg.rref(gens, mod.fld)
    quot, project, _ = mod.quotient_by(sub)
    quot.name = f"head({mod.name})"
    return quot, project, sub


def _endo_dim_is_one(mod: ModuleRep):
    if mod.rank == 0:
        return False
    fld = mod.fld
    rows = []
    for i in range(mod.algebra.rank):
        a = mod.acts[i]
        # h a - a h = 0, unknown h flattened row-major
        n = mod.rank
        for r in range(n):
            for c in range(n):
                row = [fld.zero] * (n * n)
                for t in range(n):
                    if a[t][c]:
                        row[r * n + t] = row[r * n + t] + a[t][c]
                    if a[r][t]:
                        row[t * n + c] = row[t * n + c] - a[r][t]
                rows.append(row)
    ker = linalg.kernel_right(rows, fld)
    return len(ker) == 1


def head_info(mod: ModuleRep, rad_rows, simples):
    """Head decomposition by weight labels.

    Returns {"is_simple": bool, "label": lam or None,
             "weight_dims": {nu: dim e_nu head}}.
    """
    head, _, _ = head_module(mod, rad_rows)
    w = mod.algebra.weights
    dims = {}
    if w is not None:
        for nu in w.X:
            dims[nu] = len(head.weight_space_rows(nu))
    if head.rank == 0:
        return {"is_simple": False, "label": None, "weight_dims": dims, "dim": 0}
    simple = _endo_dim_is_one(head)
    label = None
    if simple and w is not None:
        for lam, lmod in simples:
            if lmod.rank != head.rank:
                continue
            ldims = {nu: len(lmod.weight_space_rows(nu)) for nu in w.X}
            if ldims == dims:
                label = lam
                break
    return {"is_simple": simple, "label": label, "weight_dims": dims,
            "dim": head.rank}


def simple_weight_table(alg_field, simples):
    """dims[lam][mu] = dim L(lam)_mu for lam, mu in Lambda."""
    w = alg_field.weights
    table = {}
    for lam, lmod in simples:
        table[lam] = {mu: len(lmod.weight_space_rows(mu)) for mu in w.Lambda}
    return table


def composition_multiplicities(mod: ModuleRep, simples=None, table=None):
    """Solve the triangular weight-dimension system for [M : L(lam)].

    Requires a Lambda-standard algebra (unitriangular weight table); raises
    on inconsistency or non-integral solutions.
    """
    alg = mod.algebra
    w = alg.weights
    if w is None:
        raise ModuleError("no weight datum")
    if simples is None:
        simples = weight_simples(alg)
    if table is None:
        table = simple_weight_table(alg, simples)
    dims = {mu: len(mod.weight_space_rows(mu)) for mu in w.Lambda}
    # iterate weights from maximal downwards
    remaining = dict(dims)
    mult = {}
    order = []
    todo = list(w.Lambda)
    while todo:
        for lam in w.maximal(todo):
            order.append(lam)
            todo.remove(lam)
    for lam in order:
        if table[lam][lam] != 1:
            raise ModuleError("weight table is not unitriangular: not Lambda-standard")
        m = remaining[lam]
        if m < 0:
            raise ModuleError("negative multiplicity: inconsistent system")
        mult[lam] = m
        for mu in w.Lambda:
            remaining[mu] -= m * table[lam][mu]
    if any(remaining.values()):
        raise ModuleError(f"inconsistent weight dimensions: {remaining}")
    return mult


def composition_series_bruteforce(mod: ModuleRep, rad_rows, blocks):
    """Radical-layer composition counting via central idempotents.

    blocks: list of (label, central_idempotent_lift, simple_dim).  Counts the
    multiplicity of each label across the radical series of mod; independent
    of the triangular weight solve.
    """
    counts = {lbl: 0 for (lbl, _, _) in blocks}
    cur = mod
    guard = 0
    while cur.rank and guard <= mod.rank + 1:
        guard += 1
        head, _, _ = head_module(cur, rad_rows)
        for (lbl, z, d) in blocks:
            zmat = head.act_matrix(list(z))
            tr_rank = linalg.rank(zmat, head.fld)
            assert tr_rank % d == 0
            counts[lbl] += tr_rank // d
        # descend to rad * cur
        gens = []
        for r in rad_rows:
            for i in range(cur.rank):
                gens.append(cur.act(list(r), cur.basis_vec(i)))
        sub, _ = linalg.rref(gens, cur.fld)
        if len(sub) == cur.rank:
            raise ModuleError("radical series does not descend")
        cur = cur.restrict_to(sub)
    return counts


# ---------------------------------------------------------------------------
# hom spaces and Delta-filtrations
# ---------------------------------------------------------------------------

def hom_with_generator_images(src: ModuleRep, dst: ModuleRep, gens, images):
    """The module homomorphism src -> dst sending each generator to its image.

    `gens` must generate src, so the hom (h, as a dst.rank x src.rank matrix
    on column coordinates) is unique if it exists; returns None when no such
    homomorphism exists.  Equivariance is re-verified exactly.
    """
    fld = src.fld
    n_a = src.algebra.rank
    rows = []
    rhs = []
    ns, nd = src.rank, dst.rank
    # unknown h (nd x ns), flattened row-major: h[r][c] at index r*ns + c
    for i in range(n_a):
        a_s = src.acts[i]
        a_d = dst.acts[i]
        for r in range(nd):
            for c in range(ns):
                row = [fld.zero] * (nd * ns)
                # (h . a_s)[r][c] = sum_t h[r][t] a_s[t][c]
                for t in range(ns):
                    if a_s[t][c]:
                        row[r * ns + t] = row[r * ns + t] + a_s[t][c]
                # (a_d . h)[r][c] = sum_t a_d[r][t] h[t][c]
                for t in range(nd):
                    if a_d[r][t]:
                        row[t * ns + c] = row[t * ns + c] - a_d[r][t]
                rows.append(row)
                rhs.append(fld.zero)
    for g, img in zip(gens, images):
        for r in range(nd):
            row = [fld.zero] * (nd * ns)
            for c in range(ns):
                if g[c]:
                    row[r * ns + c] = g[c]
            rows.append(row)
            rhs.append(img[r])
    sol = linalg.solve_right(rows, rhs, fld)
    if sol is None:
        return None
    h = [[sol[r * ns + c] for c in range(ns)] for r in range(nd)]
    for i in range(n_a):
        lhs = linalg.mat_mul(h, src.acts[i], fld)
        rhs_m = linalg.mat_mul(dst.acts[i], h, fld)
        assert lhs == rhs_m, "hom solve returned a non-equivariant map"
    return h


def direct_sum_module(mod: ModuleRep, copies: int) -> ModuleRep:
    fld = mod.fld
    m = mod.rank * copies
    acts = []
    for i in range(mod.algebra.rank):
        a = mod.acts[i]
        big = [[fld.zero] * m for _ in range(m)]
        for c in range(copies):
            off = c * mod.rank
            for r in range(mod.rank):
                for s in range(mod.rank):
                    if a[r][s]:
                        big[off + r][off + s] = a[r][s]
        acts.append(big)
    return ModuleRep(mod.algebra, m, acts, f"{mod.name}^{copies}")


class FiltrationStage:
    """One peeling step of a Delta-filtration."""

    def __init__(self, label, copies, witness, sub_rows_original):
        self.label = label
        self.copies = copies
        self.witness = witness              # matrix Delta^copies -> current stage
        self.sub_rows_original = sub_rows_original  # chain lattice in original coords

    def __repr__(self):
        return f"Stage({self.label!r} x {self.copies})"


class FiltrationFailure(Exception):
    def __init__(self, label, reason, detail=None):
        self.label = label
        self.reason = reason
        self.detail = detail
        super().__init__(f"delta filtration fails at {label!r}: {reason}")


def delta_filtration(mod: ModuleRep, standards=None):
    """Greedy bottom-up Delta-filtration with exact isomorphism witnesses.

    Peels A . (lam-weight space) for lam maximal (lexicographically least on
    ties) among weights with nonzero weight space, verifies the peeled piece
    is Delta(lam)^d and pure, and recurses on the quotient.  Returns the list
    of FiltrationStage bottom-to-top; raises FiltrationFailure with a witness
    when the module has no such filtration.
    """
    alg = mod.algebra
    w = alg.weights
    if w is None:
        raise ModuleError("no weight datum")
    if standards is None:
        standards = {lam: standard_module(alg, lam) for lam in w.Lambda}
    stages = []
    cur = mod
    # lifts of current-quotient basis vectors, in original coordinates
    to_original = [mod.basis_vec(i) for i in range(mod.rank)]
    peeled_original = []  # accumulated generators of the peeled chain
    guard = 0
    while cur.rank and guard <= mod.rank + 1:
        guard += 1
        cand = [lam for lam in w.Lambda if len(cur.weight_space_rows(lam))]
        if not cand:
            raise FiltrationFailure(None, "nonzero module with no Lambda-weights")
        lam = sorted(w.maximal(cand), key=str)[0]
        wrows = [list(r) for r in cur.weight_space_rows(lam)]
        d = len(wrows)
        delta = standards[lam]
        if len(delta.weight_space_rows(lam)) != 1:
            raise FiltrationFailure(lam, "standard module weight space not rank 1")
        vlam = list(delta.weight_space_rows(lam)[0])
        big = direct_sum_module(delta, d)
        gens = []
        images = []
        for j in range(d):
            g = [delta.fld.zero] * big.rank
            for t in range(delta.rank):
                g[j * delta.rank + t] = vlam[t]
            gens.append(g)
            images.append(wrows[j])
        h = hom_with_generator_images(big, cur, gens, images)
        if h is None:
            raise FiltrationFailure(lam, "no homomorphism extends the weight basis")
        if mod.level == "O":
            for row in h:
                for x in row:
                    if x and alg.ring.valuation(x) < 0:
                        raise FiltrationFailure(
                            lam, "witness map does not preserve the lattice")
        img_rows = [
            [h[r][c] for r in range(cur.rank)] for c in range(big.rank)
        ]
        if linalg.rank(img_rows, cur.fld) != big.rank:
            raise FiltrationFailure(lam, "peeled map is not injective")
        sub = cur.submodule_generated(wrows)
        if mod.level == "O":
            img_lat = Lattice.from_rows(alg.ring, cur.rank, img_rows)
            if img_lat != sub:
                raise FiltrationFailure(
                    lam, "peeled submodule is not a standard power",
                    {"expected_rank": big.rank, "got_rank": sub.rank})
            from .lattices import is_pure

            if not is_pure(sub, cur.full_lattice()):
                raise FiltrationFailure(lam, "peeled submodule is not pure")
            quot, project, lifts = cur.quotient_by(sub)
            sub_rows = list(sub.rows)
        else:
            ech, _ = linalg.rref(img_rows, cur.fld)
            sub_ech, _ = linalg.rref([list(r) for r in sub], cur.fld) \
                if not isinstance(sub, Lattice) else (None, None)
            if [list(r) for r in ech] != [list(r) for r in sub_ech]:
                raise FiltrationFailure(lam, "peeled submodule is not a standard power")
            quot, project, lifts = cur.quotient_by(sub)
            sub_rows = sub
        # record the stage in original coordinates
        orig_rows = []
        for r in sub_rows:
            v = [mod.fld.zero] * mod.rank
            for c, lift in zip(r, to_original):
                if c:
                    for t in range(mod.rank):
                        if lift[t]:
                            v[t] = v[t] + c * lift[t]
            orig_rows.append(v)
        peeled_original.extend(orig_rows)
        stages.append(FiltrationStage(lam, d, h, list(peeled_original)))
        to_original = [
            _combine(lift, to_original, mod) for lift in lifts
        ]
        cur = quot
    if cur.rank:
        raise FiltrationFailure(None, "peeling did not terminate")
    return stages


def _combine(coeffs, rows, mod):
    v = [mod.fld.zero] * mod.rank
    for c, row in zip(coeffs, rows):
        if c:
            for t in range(mod.rank):
                if row[t]:
                    v[t] = v[t] + c * row[t]
    return v


def section_multiset(stages):
    out = {}
    for st in stages:
        out[st.label] = out.get(st.label, 0) + st.copies
    return out


# ---------------------------------------------------------------------------
# Morita reduction (Prop 4.1 construction)
# ---------------------------------------------------------------------------

def morita_reduce(alg: StructureAlgebra):
    """B' = (+) e_lam B e_mu over lam, mu in Lambda, with induced weights."""
    w = alg.weights
    if w is None:
        raise ModuleError("no weight datum")
    for lam in w.Lambda:
        if not any(w.idempotents[lam]):
            raise ModuleError(f"idempotent e[{lam!r}] is zero")
    rows = []
    for lam in w.Lambda:
        el = list(w.idempotents[lam])
        for mu in w.Lambda:
            em = list(w.idempotents[mu])
            for i in range(alg.rank):
                rows.append(alg.mul(el, alg.mul(alg.basis_vec(i), em)))
    if alg.level == "O":
        lat = Lattice.from_rows(alg.ring, alg.rank, rows)
        basis = [list(r) for r in lat.rows]
    else:
        basis, _ = linalg.rref(rows, alg.fld)
    sub, sub_basis = alg.subalgebra_on(basis, require_unit=False)
    coords = alg._coord_solver(sub_basis)
    idems = {}
    for lam in w.Lambda:
        c = coords(list(w.idempotents[lam]))
        if c is None:
            raise ModuleError("weight idempotent escaped the Morita cut")
        idems[lam] = tuple(c)
    unit = [alg.fld.zero] * sub.rank
    for lam in w.Lambda:
        unit = [a + b for a, b in zip(unit, idems[lam])]
    sub.unit = tuple(unit)
    sub.weights = WeightDatum(tuple(w.Lambda), tuple(w.Lambda),
                              frozenset((a, b) for (a, b) in w.less
                                        if a in w.Lambda and b in w.Lambda),
                              idems)
    return sub


# ---------------------------------------------------------------------------
# Lambda-standardness (weight-algebra axioms at both primes)
# ---------------------------------------------------------------------------

def is_lambda_standard(alg: StructureAlgebra):
    """Check the Lambda-standard weight-algebra axioms at both primes.

    For a level-O algebra the primes are (0) = K and (pi) = k; a field-level
    algebra is checked at its own prime.  Reports every failure with a
    witness; `ok` is True iff no failure was found.
    """
    w = alg.weights
    if w is None:
        raise ModuleError("missing weight datum")
    if alg.level == "O":
        prime_algs = [("0", alg.base_change("K")), ("m", alg.base_change("k"))]
    else:
        prime_algs = [("0" if alg.fld.char == 0 else "m", alg)]
    failures = []
    for prime, af in prime_algs:
        try:
            rad = radicals.radical_field(af)
            simples = weight_simples(af, rad)
        except (radicals.NonSplitError, ModuleError) as exc:
            failures.append({"prime": prime, "kind": "simples", "witness": str(exc)})
            continue
        quot, lifts, _ = af.quotient_by_ideal(rad)
        n_irr = len(radicals.center_rows(quot))
        if n_irr != len(w.Lambda):
            failures.append({
                "prime": prime, "kind": "uniformity",
                "witness": f"{n_irr} simples for {len(w.Lambda)} weights"})
        seen = set()
        for lam, lmod in simples:
            dims = {mu: len(lmod.weight_space_rows(mu)) for mu in w.Lambda}
            key = tuple(sorted(dims.items(), key=lambda kv: str(kv[0])))
            if key in seen:
                failures.append({"prime": prime, "kind": "uniformity",
                                 "witness": f"duplicate simple at {lam!r}"})
            seen.add(key)
            if dims[lam] != 1:
                failures.append({
                    "prime": prime, "kind": "weight-dim",
                    "witness": f"dim L({lam})_{lam} = {dims[lam]} != 1"})
            if dims[lam] == 0:
                failures.append({
                    "prime": prime, "kind": "weight-algebra",
                    "witness": f"e[{lam!r}] kills L({lam})"})
            for mu in w.Lambda:
                if dims[mu] and not w.leq(mu, lam):
                    failures.append({
                        "prime": prime, "kind": "triangularity",
                        "witness": f"L({lam})_{mu} != 0 but {mu!r} is not <= {lam!r}"})
    return {"ok": not failures, "failures": failures}
