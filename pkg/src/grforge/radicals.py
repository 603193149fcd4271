"""Radicals, semisimple splitting, and Wedderburn complements at field level.

Radical algorithms:

* char 0: the radical is the kernel of the trace form tr(L_x L_y) (Dickson).
* char p (prime field): iterated characteristic-polynomial forms
  B_i(x, y) = c_(p^i)(L_(xy)) on the shrinking candidate space; every stage
  kernel contains the radical (L_(xy) is nilpotent for x radical), so the
  first stage whose kernel verifies as a nilpotent ideal IS the radical.

Splitting a split semisimple quotient uses module characters: given enough
simple modules to separate the blocks, central primitive idempotents come out
of a linear solve (characters of a commutative split semisimple algebra are
linearly independent), and matrix units are pulled back through the exact
block action on a simple module.  No idempotent lifting over O and no
polynomial factorization over number fields is ever attempted.
"""

from __future__ import annotations

from . import linalg
from .algebra import AlgebraError, StructureAlgebra


class NonSplitError(AlgebraError):
    """The algebra (or a quotient) is not split over its field, or the
    implemented splitting routes cannot certify it."""


# ---------------------------------------------------------------------------
# subspace helpers (field level)
# ---------------------------------------------------------------------------

def span_basis(alg, rows):
    ech, piv = linalg.rref([list(r) for r in rows], alg.fld)
    return ech, piv


def subspace_contains(ech, piv, v):
    return not any(linalg.in_row_space(list(v), ech, piv))


def is_ideal(alg, rows) -> bool:
    ech, piv = span_basis(alg, rows)
    for v in ech:
        for i in range(alg.rank):
            b = alg.basis_vec(i)
            if not subspace_contains(ech, piv, alg.mul(b, list(v))):
                return False
            if not subspace_contains(ech, piv, alg.mul(list(v), b)):
                return False
    return True


def is_nilpotent_subspace(alg, rows) -> bool:
    """Does the span generate a nilpotent multiplicative system?"""
    ech, piv = span_basis(alg, rows)
    cur = ech
    for _ in range(alg.rank + 1):
        if not cur:
            return True
        nxt = []
        for v in cur:
            for w in ech:
                nxt.append(alg.mul(list(v), list(w)))
        cur, _ = linalg.rref(nxt, alg.fld)
    return False


def subspace_power(alg, rows, n):
    """Span of n-fold products (n >= 1) of the given spanning set."""
    ech, piv = span_basis(alg, rows)
    cur = ech
    for _ in range(n - 1):
        nxt = []
        for v in cur:
            for w in ech:
                nxt.append(alg.mul(list(v), list(w)))
        cur, _ = linalg.rref(nxt, alg.fld)
        if not cur:
            break
    return cur


# ---------------------------------------------------------------------------
# the radical
# ---------------------------------------------------------------------------

def trace_gram(alg):
    n = alg.rank
    fld = alg.fld
    mats = [alg.left_mult_matrix(i) for i in range(n)]
    sparse = []
    for m in mats:
        entries = {}
        for r in range(n):
            row = m[r]
            for c in range(n):
                if row[c]:
                    entries[(r, c)] = row[c]
        sparse.append(entries)
    g = [[fld.zero] * n for _ in range(n)]
    for i in range(n):
        si = sparse[i]
        for j in range(i, n):
            sj = sparse[j]
            small, big = (si, sj) if len(si) <= len(sj) else (sj, si)
            s = fld.zero
            for (r, c), v in small.items():
                w = big.get((c, r))
                if w:
                    s = s + v * w
            g[i][j] = s
            g[j][i] = s
    return g


def radical_field(alg: StructureAlgebra, verify: bool = True):
    """Basis rows of the Jacobson radical of a field-level algebra."""
    if alg.level == "O":
        raise AlgebraError("radical_field expects a K- or k-level algebra")
    fld = alg.fld
    gram = trace_gram(alg)
    kernel = linalg.kernel_left(gram, fld)
    kernel, _ = linalg.rref(kernel, fld)
    if fld.char == 0:
        rad = kernel
    else:
        rad = _radical_char_p(alg, kernel)
    if verify:
        if not is_ideal(alg, rad):
            raise AlgebraError("radical candidate is not an ideal")
        if not is_nilpotent_subspace(alg, rad):
            raise AlgebraError("radical candidate is not nilpotent")
        if fld.char == 0:
            # Dickson: quotient trace form must be nondegenerate
            quot, _, _ = alg.quotient_by_ideal(rad)
            if quot.rank and linalg.det(trace_gram(quot), fld) == fld.zero:
                raise AlgebraError("trace form degenerate on the quotient")
    return rad


def _radical_char_p(alg, candidate):
    """Friedl-Ronyai stages over the prime field F_p."""
    fld = alg.fld
    p = fld.char
    n = alg.rank
    if _ideal_and_nilpotent(alg, candidate):
        return candidate
    stage = 1
    power = p
    while power <= n:
        candidate = _fr_stage(alg, candidate, power)
        if _ideal_and_nilpotent(alg, candidate):
            return candidate
        stage += 1
        power *= p
    # last stage (p^l <= n < p^(l+1) needs forms up to i = l)
    candidate = _fr_stage(alg, candidate, power)
    if _ideal_and_nilpotent(alg, candidate):
        return candidate
    raise AlgebraError("char-p radical iteration failed to stabilize")


def _ideal_and_nilpotent(alg, rows):
    # every stage kernel contains the radical, so this certifies equality
    return is_ideal(alg, rows) and is_nilpotent_subspace(alg, rows)


def _fr_stage(alg, basis_rows, power):
    """Kernel of (x, y) -> charpoly coefficient c_power of L_(x y) on the span."""
    fld = alg.fld
    basis_rows, _ = linalg.rref(basis_rows, fld)
    d = len(basis_rows)
    if d == 0:
        return []
    mats = [alg.left_mult_of(list(v)) for v in basis_rows]
    form = [[fld.zero] * d for _ in range(d)]
    for s in range(d):
        for t in range(d):
            prod = linalg.mat_mul(mats[s], mats[t], fld)
            coeffs = linalg.charpoly(prod, fld)
            form[s][t] = coeffs[power]
    ker = linalg.kernel_left(form, fld)
    out = []
    for c in ker:
        v = [fld.zero] * alg.rank
        for ci, row in zip(c, basis_rows):
            if ci:
                for j in range(alg.rank):
                    if row[j]:
                        v[j] = v[j] + ci * row[j]
        out.append(v)
    out, _ = linalg.rref(out, fld)
    return out


def radical_power_rows(alg, rad_rows, n):
    """Basis of rad^n as a subspace (n >= 0; n = 0 gives the full space)."""
    if n == 0:
        return [alg.basis_vec(i) for i in range(alg.rank)]
    return subspace_power(alg, rad_rows, n)


def nilpotency_degree(alg, rad_rows) -> int:
    """Least L with rad^L = 0."""
    cur, _ = linalg.rref(rad_rows, alg.fld)
    deg = 1
    base = cur
    while cur:
        nxt = []
        for v in cur:
            for w in base:
                nxt.append(alg.mul(list(v), list(w)))
        cur, _ = linalg.rref(nxt, alg.fld)
        deg += 1
    return deg


# ---------------------------------------------------------------------------
# the center
# ---------------------------------------------------------------------------

def center_rows(alg):
    fld = alg.fld
    stacked = []
    for i in range(alg.rank):
        li = alg.left_mult_matrix(i)
        ri = alg.right_mult_matrix(i)
        for r in range(alg.rank):
            stacked.append([li[r][c] - ri[r][c] for c in range(alg.rank)])
    ker = linalg.kernel_right(stacked, fld)
    ker, _ = linalg.rref(ker, fld)
    return ker


# ---------------------------------------------------------------------------
# splitting a (semisimple) algebra through module characters
# ---------------------------------------------------------------------------

class Block:
    """One matrix block of a split semisimple algebra."""

    def __init__(self, label, central_idempotent, simple_dim, module_acts):
        self.label = label
        self.central_idempotent = central_idempotent  # algebra coordinates
        self.simple_dim = simple_dim
        self.module_acts = module_acts  # action matrices of the simple module
        self.matrix_units = None        # dict (i, j) -> algebra coordinates

    def __repr__(self):
        return f"Block({self.label!r}, dim {self.simple_dim})"


def module_action_of(alg, acts, vec):
    """Action matrix of the element with coordinates vec."""
    fld = alg.fld
    dim = len(acts[0]) if acts else 0
    out = [[fld.zero] * dim for _ in range(dim)]
    for i, c in enumerate(vec):
        if c:
            mi = acts[i]
            for r in range(dim):
                row = mi[r]
                orow = out[r]
                for col in range(dim):
                    if row[col]:
                        orow[col] = orow[col] + c * row[col]
    return out


def split_semisimple(alg, modules, require_cover=True):
    """Split a semisimple field algebra into matrix blocks.

    `modules` is a list of (label, acts) with acts the action matrices of a
    module that is expected to be simple; they must jointly separate (cover)
    all blocks.  Returns a list of Block with verified central idempotents.
    """
    fld = alg.fld
    z = center_rows(alg)
    m = len(z)
    chars = []
    for label, acts in modules:
        acts = getattr(acts, "acts", acts)  # ModuleRep or raw matrices
        dim = len(acts[0]) if acts else 0
        if dim == 0:
            continue
        vec = []
        ok = True
        for zb in z:
            a = module_action_of(alg, acts, zb)
            scal = a[0][0]
            expect = [[scal if r == c else fld.zero for c in range(dim)]
                      for r in range(dim)]
            if a != expect:
                ok = False
                break
            vec.append(scal)
        if not ok:
            # not simple (or center acting non-scalar): unusable for splitting
            continue
        if tuple(vec) not in {tuple(c) for (c, _, _) in chars}:
            chars.append((vec, label, acts))
    if len(chars) != m and require_cover:
        raise NonSplitError(
            f"modules separate {len(chars)} of {m} central characters")
    blocks = []
    mat = [list(c) for (c, _, _) in chars]
    inv = linalg.invert(mat, fld)
    if inv is None:
        raise NonSplitError("central characters are linearly dependent")
    for idx, (vec, label, acts) in enumerate(chars):
        # chi_b(e) = sum_s coef_s chi_b(z_s): solve mat . coef = delta_idx
        target = [fld.one if t == idx else fld.zero for t in range(m)]
        coef = linalg.mat_vec(inv, target, fld)
        e = [fld.zero] * alg.rank
        for c, zb in zip(coef, z):
            if c:
                for j in range(alg.rank):
                    if zb[j]:
                        e[j] = e[j] + c * zb[j]
        if alg.mul(e, e) != e:
            raise NonSplitError("central idempotent solve failed")
        dim = len(acts[0])
        blocks.append(Block(label, e, dim, acts))
    # orthogonality + completeness
    for a in range(len(blocks)):
        for b in range(a + 1, len(blocks)):
            prod = alg.mul(list(blocks[a].central_idempotent),
                           list(blocks[b].central_idempotent))
            if any(prod):
                raise NonSplitError("central idempotents not orthogonal")
    total = [fld.zero] * alg.rank
    for b in blocks:
        total = [x + y for x, y in zip(total, b.central_idempotent)]
    if len(chars) == m and list(alg.unit) != total:
        raise NonSplitError("central idempotents do not sum to 1")
    # dimension audit: sum of (dim simple)^2 must be the algebra dimension
    if len(chars) == m and sum(b.simple_dim ** 2 for b in blocks) != alg.rank:
        raise NonSplitError("block dimensions do not add up: not split")
    return blocks


def block_matrix_units(alg, block: Block):
    """Matrix units of one block, pulled back through the simple module.

    The block e_b * alg acts faithfully on its simple module; units are the
    preimages of the elementary matrices in a fixed module basis.
    """
    fld = alg.fld
    d = block.simple_dim
    # subspace e A e
    e = list(block.central_idempotent)
    rows = []
    for i in range(alg.rank):
        v = alg.mul(e, alg.mul(alg.basis_vec(i), e))
        rows.append(v)
    sub, piv = linalg.rref(rows, fld)
    if len(sub) != d * d:
        raise NonSplitError(
            f"block {block.label!r} has dimension {len(sub)}, not {d * d}")
    # action matrices of the block basis, flattened; solve for each E_ij
    flat = []
    for v in sub:
        a = module_action_of(alg, block.module_acts, list(v))
        flat.append([x for row in a for x in row])
    flat_t = linalg.transpose(flat)
    units = {}
    for i in range(d):
        for j in range(d):
            target = [fld.zero] * (d * d)
            target[i * d + j] = fld.one
            sol = linalg.solve_right(flat_t, target, fld)
            if sol is None:
                raise NonSplitError("module action is not surjective on the block")
            vec = [fld.zero] * alg.rank
            for c, row in zip(sol, sub):
                if c:
                    for t in range(alg.rank):
                        if row[t]:
                            vec[t] = vec[t] + c * row[t]
            units[(i, j)] = vec
    _verify_matrix_units(alg, units, d, e)
    block.matrix_units = units
    return units


def _verify_matrix_units(alg, units, d, central):
    fld = alg.fld
    for (i, j) in units:
        for (k, l) in units:
            prod = alg.mul(list(units[(i, j)]), list(units[(k, l)]))
            expect = list(units[(i, l)]) if j == k else [fld.zero] * alg.rank
            if prod != expect:
                raise NonSplitError("matrix unit relations fail")
    total = [fld.zero] * alg.rank
    for i in range(d):
        total = [x + y for x, y in zip(total, units[(i, i)])]
    if total != list(central):
        raise NonSplitError("diagonal units do not sum to the block identity")


# ---------------------------------------------------------------------------
# Wedderburn complements (field level)
# ---------------------------------------------------------------------------

def _newton_idempotent(alg, x):
    """Iterate x <- 3x^2 - 2x^3 until exactly idempotent (defect nilpotent)."""
    for _ in range(alg.rank + 2):
        sq = alg.mul(x, x)
        if sq == x:
            return x
        cube = alg.mul(sq, x)
        x = [a * 3 - b * 2 for a, b in zip(sq, cube)]
    raise AlgebraError("idempotent iteration did not converge")


def _corner_inverse(alg, e, x):
    """Inverse of x inside the corner algebra e A e (unit e); x = e - j, j nilpotent."""
    j = [a - b for a, b in zip(e, x)]
    out = list(e)
    term = list(e)
    for _ in range(alg.rank + 1):
        term = alg.mul(term, j)
        if not any(term):
            break
        out = [a + b for a, b in zip(out, term)]
    assert alg.mul(out, x) == list(e), "corner inverse failed"
    return out


def lift_matrix_units(alg, quot, lifts, project, blocks):
    """Lift the matrix units of the semisimple quotient to the algebra.

    `quot, lifts, project` come from alg.quotient_by_ideal(rad); each Block in
    `blocks` must already carry quotient-level matrix_units.  Returns a dict
    (block_index, i, j) -> algebra coordinate vector of exactly orthogonal
    lifted units spanning a Wedderburn complement.
    """
    fld = alg.fld

    def lift_vec(qv):
        v = [fld.zero] * alg.rank
        for c, row in zip(qv, lifts):
            if c:
                for t in range(alg.rank):
                    if row[t]:
                        v[t] = v[t] + c * row[t]
        return v

    # 1. lift all diagonal units to orthogonal idempotents, sequentially
    diag = {}
    done = [fld.zero] * alg.rank  # sum of lifted idempotents so far
    for bi, blk in enumerate(blocks):
        for i in range(blk.simple_dim):
            y = lift_vec(blk.matrix_units[(i, i)])
            comp = [a - b for a, b in zip(alg.unit, done)]
            y = alg.mul(comp, alg.mul(y, comp))
            e = _newton_idempotent(alg, y)
            diag[(bi, i)] = e
            done = [a + b for a, b in zip(done, e)]
    assert done == list(alg.unit), "lifted idempotents do not sum to 1"

    # 2. lift off-diagonal units within each block and correct exactly
    units = {}
    for bi, blk in enumerate(blocks):
        d = blk.simple_dim
        e1 = diag[(bi, 0)]
        units[(bi, 0, 0)] = e1
        for i in range(1, d):
            ei = diag[(bi, i)]
            u = alg.mul(e1, alg.mul(lift_vec(blk.matrix_units[(0, i)]), ei))
            v = alg.mul(ei, alg.mul(lift_vec(blk.matrix_units[(i, 0)]), e1))
            uv = alg.mul(u, v)  # = e1 - j with j nilpotent in e1 A e1
            w = alg.mul(v, _corner_inverse(alg, e1, uv))
            assert alg.mul(u, w) == e1
            fi = alg.mul(w, u)
            assert fi == ei, "corner idempotent drifted during lifting"
            units[(bi, 0, i)] = u
            units[(bi, i, 0)] = w
            units[(bi, i, i)] = ei
        for i in range(1, d):
            for j in range(1, d):
                if i != j:
                    units[(bi, i, j)] = alg.mul(units[(bi, i, 0)], units[(bi, 0, j)])
    # full verification
    for (bi, i, j) in units:
        for (bj, k, l) in units:
            prod = alg.mul(list(units[(bi, i, j)]), list(units[(bj, k, l)]))
            if bi == bj and j == k:
                expect = list(units[(bi, i, l)])
            else:
                expect = [fld.zero] * alg.rank
            assert prod == expect, "lifted matrix unit relations fail"
    return units


def wedderburn_complement(alg, modules, contain=None, rad=None):
    """A semisimple subalgebra S with alg = S (+) rad as vector spaces.

    `modules` feeds the splitting of alg/rad (see split_semisimple).  With
    `contain` (rows spanning a semisimple unital subalgebra), the returned
    complement contains it, by Malcev conjugation.
    """
    fld = alg.fld
    if rad is None:
        rad = radical_field(alg)
    if not rad:
        return [alg.basis_vec(i) for i in range(alg.rank)]
    quot, lifts, project = alg.quotient_by_ideal(rad)
    qmods = quotient_modules(alg, lifts, modules)
    blocks = split_semisimple(quot, qmods)
    for blk in blocks:
        block_matrix_units(quot, blk)
    units = lift_matrix_units(alg, quot, lifts, project, blocks)
    s_rows, _ = linalg.rref([list(v) for v in units.values()], fld)
    if contain is not None:
        s_rows = _malcev_enlarge(alg, s_rows, contain, rad)
    _verify_complement(alg, s_rows, rad)
    if contain is not None:
        ech, piv = linalg.rref([list(r) for r in s_rows], fld)
        for s0 in contain:
            assert subspace_contains(ech, piv, list(s0)), \
                "complement does not contain the requested subalgebra"
    return s_rows


def _verify_complement(alg, s_rows, rad):
    fld = alg.fld
    ech, piv = linalg.rref([list(r) for r in s_rows], fld)
    assert len(ech) + len(rad) == alg.rank, "complement has wrong dimension"
    both, _ = linalg.rref([list(r) for r in s_rows] + [list(r) for r in rad], fld)
    assert len(both) == alg.rank, "complement meets the radical"
    for a in ech:
        for b in ech:
            assert subspace_contains(ech, piv, alg.mul(list(a), list(b))), \
                "complement is not closed under multiplication"
    assert subspace_contains(ech, piv, list(alg.unit))


def quotient_modules(alg, lifts, modules):
    """Turn modules over alg (killed by rad) into modules over alg/rad.

    The quotient basis element [lift_t] acts the way lifts[t] does.
    """
    out = []
    for label, acts in modules:
        acts = getattr(acts, "acts", acts)
        qacts = [module_action_of(alg, acts, list(lift)) for lift in lifts]
        out.append((label, qacts))
    return out


def _malcev_enlarge(alg, s_rows, contain, rad):
    """Conjugate the complement S so that it contains the subalgebra S0.

    Stagewise Malcev correction: with the defect of S0 against S inside J^m,
    solve h sigma(s) - sigma(s) h = delta(s) mod J^(2m) for h in J^m and
    replace S by (1-h)^(-1) S (1-h); the defect moves into J^(2m).
    """
    fld = alg.fld
    s0_rows, _ = linalg.rref([list(r) for r in contain], fld)
    max_rounds = alg.rank.bit_length() + 3
    for _ in range(max_rounds):
        s_ech, _ = linalg.rref([list(r) for r in s_rows], fld)
        full = [list(r) for r in s_ech] + [list(r) for r in rad]
        inv_t = linalg.invert(linalg.transpose(full), fld)
        assert inv_t is not None

        def decompose(v):
            c = linalg.mat_vec(inv_t, list(v), fld)
            sig = [fld.zero] * alg.rank
            for coef, row in zip(c[: len(s_ech)], s_ech):
                if coef:
                    for t in range(alg.rank):
                        if row[t]:
                            sig[t] = sig[t] + coef * row[t]
            delta = [a - b for a, b in zip(v, sig)]
            return sig, delta

        pairs = [decompose(list(s)) for s in s0_rows]
        deltas = [d for (_, d) in pairs]
        if not any(any(d) for d in deltas):
            return s_ech
        # defect depth: largest m with all deltas in J^m
        m = 1
        while True:
            nxt = subspace_power(alg, rad, m + 1)
            ech_n, piv_n = linalg.rref([list(r) for r in nxt], fld)
            if nxt and all(subspace_contains(ech_n, piv_n, d) for d in deltas):
                m += 1
            else:
                break
        basis_m, _ = linalg.rref(
            [list(r) for r in subspace_power(alg, rad, m)], fld)
        ech_1, piv_1 = linalg.rref([list(r) for r in rad], fld)
        assert all(subspace_contains(ech_1, piv_1, d) for d in deltas), \
            "Malcev defect lies outside the radical"
        j2m = subspace_power(alg, rad, 2 * m)
        q_ech, q_piv = linalg.rref([list(r) for r in j2m], fld)

        def mod_j2m(v):
            return linalg.in_row_space(list(v), q_ech, q_piv)

        # unknown h over basis_m; equations h sig - sig h = delta mod J^(2m)
        big = []
        big_rhs = []
        for sig, delta in pairs:
            cols = []
            for hb in basis_m:
                comm = [a - b for a, b in zip(alg.mul(list(hb), sig),
                                              alg.mul(sig, list(hb)))]
                cols.append(mod_j2m(comm))
            r = mod_j2m(delta)
            for t in range(alg.rank):
                big.append([cols[hi][t] for hi in range(len(basis_m))])
                big_rhs.append(r[t])
        sol = linalg.solve_right(big, big_rhs, fld)
        if sol is None:
            raise AlgebraError("Malcev correction unsolvable (is S0 semisimple?)")
        h = [fld.zero] * alg.rank
        for c, hb in zip(sol, basis_m):
            if c:
                for t in range(alg.rank):
                    if hb[t]:
                        h[t] = h[t] + c * hb[t]
        one_minus = [a - b for a, b in zip(alg.unit, h)]
        inv = _unit_inverse(alg, one_minus)
        s_rows = [alg.mul(inv, alg.mul(list(s), one_minus)) for s in s_ech]
    raise AlgebraError("Malcev iteration did not converge")


def _unit_inverse(alg, x):
    """Inverse of a unit of the form 1 - h with h nilpotent."""
    h = [a - b for a, b in zip(alg.unit, x)]
    out = list(alg.unit)
    term = list(alg.unit)
    for _ in range(alg.rank + 1):
        term = alg.mul(term, h)
        if not any(term):
            break
        out = [a + b for a, b in zip(out, term)]
    assert alg.mul(out, x) == list(alg.unit)
    return out


# ---------------------------------------------------------------------------
# nested subalgebra radicals (char 0)
# ---------------------------------------------------------------------------

def subalgebra_radical_check(alg, a_rows, b_rows=None):
    """Verify the nested-radical identities for a <= b <= A over K.

    Checks b ∩ rad A = rad b and a ∩ rad A = a ∩ rad b = rad a, and returns
    the dimensions of every side.  Raises if a span is not closed under
    multiplication, misses the identity, or a is not contained in b.
    """
    if alg.fld.char != 0:
        raise AlgebraError("the nested-radical check runs over K")
    fld = alg.fld
    if b_rows is None:
        b_rows = [alg.basis_vec(i) for i in range(alg.rank)]

    def sub_and_rad(rows, name):
        sub, basis = alg.subalgebra_on([list(r) for r in rows], labels=None)
        rad = radical_field(sub)
        amb = []
        for c in rad:
            v = [fld.zero] * alg.rank
            for x, row in zip(c, basis):
                if x:
                    for t in range(alg.rank):
                        if row[t]:
                            v[t] = v[t] + x * row[t]
            amb.append(v)
        amb, _ = linalg.rref(amb, fld)
        return amb

    ech_b, piv_b = linalg.rref([list(r) for r in b_rows], fld)
    for r in a_rows:
        if any(linalg.in_row_space(list(r), ech_b, piv_b)):
            raise AlgebraError("a is not contained in b")
    rad_A = radical_field(alg) if alg.rank else []
    rad_b = sub_and_rad(b_rows, "b")
    rad_a = sub_and_rad(a_rows, "a")

    def intersect(rows1, rows2):
        # subspace intersection via the kernel of the stacked matrix
        r1 = [list(r) for r in rows1]
        r2 = [list(r) for r in rows2]
        if not r1 or not r2:
            return []
        ker = linalg.kernel_left(r1 + r2, fld)
        out = []
        for z in ker:
            v = [fld.zero] * alg.rank
            for c, row in zip(z[: len(r1)], r1):
                if c:
                    for t in range(alg.rank):
                        if row[t]:
                            v[t] = v[t] + c * row[t]
            out.append(v)
        out, _ = linalg.rref(out, fld)
        return out

    b_cap_radA = intersect(b_rows, rad_A)
    a_cap_radA = intersect(a_rows, rad_A)
    a_cap_radb = intersect(a_rows, rad_b)
    report = {
        "dim_rad_A": len(rad_A),
        "dim_rad_b": len(rad_b),
        "dim_rad_a": len(rad_a),
        "dim_b_cap_rad_A": len(b_cap_radA),
        "dim_a_cap_rad_A": len(a_cap_radA),
        "dim_a_cap_rad_b": len(a_cap_radb),
        "b_identity": [list(r) for r in b_cap_radA] == [list(r) for r in rad_b],
        "a_identity": (
            [list(r) for r in a_cap_radA] == [list(r) for r in rad_a]
            and [list(r) for r in a_cap_radb] == [list(r) for r in rad_a]),
    }
    report["ok"] = report["b_identity"] and report["a_identity"]
    return report
