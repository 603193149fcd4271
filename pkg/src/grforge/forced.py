"""Primitive elements, gr^b, and graded Delta-filtrations.

The higher-weight submodule N'_K(lam) is the A_K-submodule of N_K generated
by all mu-weight vectors with mu > lam.  Primitivity of a lam-weight vector v
is purity of Ov modulo N ∩ N'_K(lam); strong primitivity is the graded
analogue at the filtration depth of v.  gr^b N is the gr A-submodule of gr N
generated by all strongly primitive symbols, computed stratum by stratum: the
stratum (lam, i) contributes the full symbol image of (r~ad^i N)_lam whenever
the lam-weight part of grade i survives modulo N'_K(lam), and nothing
otherwise (sums/differences of strongly primitive elements at an active
stratum reach every symbol there).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .algebra import AlgebraError
from .graded import GradedAlgebra, GradedModule, gr_module, module_rad_chain
from .lattices import Lattice, is_pure, lattice_intersection, saturate_rows
from .modules import (
    FiltrationFailure,
    ModuleRep,
    direct_sum_module,
    hom_with_generator_images,
)


class ForcedError(AlgebraError):
    pass


# ---------------------------------------------------------------------------
# N'_K(lam) and primitivity
# ---------------------------------------------------------------------------

def n_prime_lattice(mod: ModuleRep, lam):
    """The pure lattice N ∩ N'_K(lam) (level O) and its K-span rows."""
    w = mod.algebra.weights
    if w is None or lam not in w.Lambda:
        raise ForcedError(f"{lam!r} is not a weight in Lambda")
    modK = mod.base_change("K") if mod.level == "O" else mod
    gens = []
    for mu in w.Lambda:
        if w.lt(lam, mu):
            gens.extend(list(r) for r in modK.weight_space_rows(mu))
    rows = modK.submodule_generated(gens) if gens else []
    if mod.level != "O":
        return rows, rows
    ring = mod.algebra.ring
    lat = saturate_rows(ring, mod.rank, [list(r) for r in rows]) if rows \
        else Lattice.zero(ring, mod.rank)
    return lat, rows


@dataclass
class PrimitivityReport:
    vector: tuple
    weight: object
    primitive: bool
    strongly_primitive: bool
    grade: int | None
    maximality_ok: bool | None = None
    detail: dict = field(default_factory=dict)


def primitivity_test(mod: ModuleRep, v, lam) -> PrimitivityReport:
    """Exact primitivity and strong primitivity of a lam-weight vector."""
    if mod.level != "O":
        raise ForcedError("primitivity is an integral-level notion")
    alg = mod.algebra
    w = alg.weights
    e = list(w.idempotents[lam])
    v = list(v)
    if mod.act(e, v) != v:
        raise ForcedError("vector is not a lam-weight vector")
    nprime, nprime_rows = n_prime_lattice(mod, lam)
    full = mod.full_lattice()
    detail = {}
    if not any(v):
        return PrimitivityReport(tuple(v), lam, False, False, None, None, detail)
    in_nprime = nprime.contains_vector(v)
    if in_nprime:
        primitive = False
    else:
        with_v = nprime.add(Lattice.from_rows(alg.ring, mod.rank, [v]))
        primitive = is_pure(with_v, full)
    # strong primitivity at the unique filtration depth of v
    chain = module_rad_chain(mod)
    depth = 0
    while depth + 1 < len(chain) and chain[depth + 1].contains_vector(v):
        depth += 1
    grade = depth
    f_rows = [list(r) for r in chain[min(grade + 1, len(chain) - 1)].rows]
    f_rows += [list(r) for r in nprime_rows]
    f_lat = saturate_rows(alg.ring, mod.rank, f_rows) if f_rows \
        else Lattice.zero(alg.ring, mod.rank)
    if f_lat.contains_vector(v):
        strongly = False
    else:
        with_v = f_lat.add(Lattice.from_rows(alg.ring, mod.rank, [v]))
        strongly = is_pure(with_v, full)
    if strongly and not primitive:
        raise ForcedError("strong primitivity without primitivity (Prop 4.4(c))")
    maximality = None
    if primitive:
        # footnote-7 necessary condition: lam is maximal among mu with
        # (N_K / N'_K(lam))_mu != 0
        modK = mod.base_change("K")
        quot, _, _ = modK.quotient_by([list(r) for r in nprime_rows])
        maximality = len(quot.weight_space_rows(lam)) > 0
        for mu in w.Lambda:
            if w.lt(lam, mu) and len(quot.weight_space_rows(mu)):
                maximality = False
                detail["violating_weight"] = mu
    return PrimitivityReport(tuple(v), lam, primitive, strongly,
                             grade if (primitive or strongly) else grade,
                             maximality, detail)


# ---------------------------------------------------------------------------
# gr^b
# ---------------------------------------------------------------------------

@dataclass
class GrB:
    lattice: Lattice          # graded coordinates of gr N
    strata: list              # contributing (lam, grade) pairs
    acting: str               # which gr-algebra acted (footnote-9 bookkeeping)


def gr_b(grmod: GradedModule, name="grA") -> GrB:
    """The gr A-submodule of gr N generated by strongly primitive symbols."""
    mod = grmod.base_module
    if mod.level != "O":
        raise ForcedError("gr_b is an integral-level computation")
    alg = mod.algebra
    w = alg.weights
    ring = alg.ring
    chain = grmod.chain
    gens = []
    strata = []
    for lam in w.Lambda:
        nprime, nprime_rows = n_prime_lattice(mod, lam)
        # quotient of N by the pure lattice N ∩ N'_K(lam), with its filtration
        quot, project, _ = mod.quotient_by(nprime)
        qchain = module_rad_chain(quot)
        e = list(w.idempotents[lam])
        for i in range(len(chain) - 1):
            qi = qchain[i] if i < len(qchain) else qchain[-1]
            qi1 = qchain[i + 1] if i + 1 < len(qchain) else qchain[-1]
            wi = _weight_sublattice(quot, e, qi)
            wi1 = _weight_sublattice(quot, e, qi1)
            if wi.rank == wi1.rank:
                continue  # inactive stratum
            strata.append((lam, i))
            wlat = _weight_sublattice(mod, e, chain[i])
            for r in wlat.rows:
                sym = grmod.full_coords(list(r))
                row = [sym[t] if grmod.grades[t] == i else mod.fld.zero
                       for t in range(grmod.module.rank)]
                if any(row):
                    gens.append(row)
    if not gens:
        return GrB(Lattice.zero(ring, grmod.module.rank), strata, name)
    lat = grmod.module.submodule_generated(gens)
    return GrB(lat, strata, name)


def _weight_sublattice(mod: ModuleRep, e, lat: Lattice) -> Lattice:
    """e . L for an idempotent e and an action-stable lattice L."""
    rows = [mod.act(e, list(r)) for r in lat.rows]
    return Lattice.from_rows(mod.algebra.ring, mod.rank, rows)


def gr_b_equals_gr(grb: GrB, grmod: GradedModule) -> bool:
    return grb.lattice == Lattice.full(grmod.base_module.algebra.ring,
                                       grmod.module.rank)


def lemma_4_9_check(gralg: GradedAlgebra, lam, standards, simples_k, radk):
    """Both sides of: gr Delta(lam) has simple head iff gr^b = gr.

    Returns (simple_head, grb_equals_gr) after asserting the biconditional.
    Callers are expected to have verified Hypothesis 4.7(1) (TQHA) already.
    """
    from .modules import head_info

    delta = standards[lam]["Delta"] if isinstance(standards[lam], dict) \
        else standards[lam]
    gd = gr_module(gralg, delta)
    gdk = gd.module.base_change("k")
    info = head_info(gdk, radk, simples_k)
    simple_head = info["is_simple"]
    grb = gr_b(gd)
    equals = gr_b_equals_gr(grb, gd)
    if simple_head != equals:
        raise ForcedError(
            f"Lemma 4.9 biconditional fails at {lam!r}: "
            f"simple_head={simple_head}, grb=gr:{equals}")
    return simple_head, equals


# ---------------------------------------------------------------------------
# graded Delta-filtration (the Lemma 4.12 peeling)
# ---------------------------------------------------------------------------

@dataclass
class GradedStage:
    label: object
    copies: int
    shift: int
    kind: str                 # "standard" or "prestandard"
    checks: dict


def gr_delta_filtration(mod: ModuleRep, gralg: GradedAlgebra, standards,
                        order_override=None):
    """Peel gr^b N along the proof of the main filtration lemma.

    Per stage: lam maximal with nonzero weight space (override list wins),
    m1 the depth of the weight space, R = A . (depth-m1 weight stratum).
    Verifies R ≅ Delta(lam)^d (exact witness), purity, the depth-shift
    identity  R ∩ r~ad^(m1+s) N = r~ad^s R,  and whether the graded section
    gr^b N ∩ gr# R equals all of gr# R (standard) or is a verified
    prestandard sandwich.  Recurses on N/R.
    """
    alg = mod.algebra
    w = alg.weights
    stages = []
    cur = mod
    guard = 0
    order = list(order_override) if order_override else None
    while cur.rank and guard <= mod.rank + 1:
        guard += 1
        cand = [lam for lam in w.Lambda if len(cur.weight_space_rows(lam))]
        if not cand:
            raise FiltrationFailure(None, "nonzero module with no Lambda-weights")
        if order:
            lam = order.pop(0)
            if lam not in cand:
                raise FiltrationFailure(lam, "override weight has zero weight space")
        else:
            lam = sorted(w.maximal(cand), key=str)[0]
        checks = {}
        chain = module_rad_chain(cur)
        e = list(w.idempotents[lam])
        wlat = _weight_sublattice(cur, e, chain[0])
        m1 = 0
        while m1 + 1 < len(chain) and \
                chain[m1 + 1].contains_lattice(wlat):
            m1 += 1
        from .lattices import quotient_free_basis

        deeper = lattice_intersection(wlat, chain[min(m1 + 1, len(chain) - 1)])
        stratum_lifts, tors = quotient_free_basis(wlat, deeper)
        checks["stratum_pure"] = not tors
        d = len(stratum_lifts)
        delta = standards[lam]["Delta"] if isinstance(standards[lam], dict) \
            else standards[lam]
        vlam = list(delta.weight_space_rows(lam)[0])
        big = direct_sum_module(delta, d)
        gens, images = [], []
        for j, srow in enumerate(stratum_lifts):
            g = [delta.fld.zero] * big.rank
            for t in range(delta.rank):
                g[j * delta.rank + t] = vlam[t]
            gens.append(g)
            images.append(list(srow))
        h = hom_with_generator_images(big, cur, gens, images)
        if h is None:
            raise FiltrationFailure(lam, "no homomorphism extends the stratum basis")
        img_rows = [[h[r][c] for r in range(cur.rank)] for c in range(big.rank)]
        checks["witness_injective"] = linalg.rank(img_rows, cur.fld) == big.rank
        if alg.level == "O":
            for row in h:
                for x in row:
                    if x and alg.ring.valuation(x) < 0:
                        raise FiltrationFailure(lam, "witness leaves the lattice")
        r_lat = cur.submodule_generated([list(r) for r in stratum_lifts])
        checks["R_is_delta_power"] = (
            Lattice.from_rows(alg.ring, cur.rank, img_rows) == r_lat)
        checks["R_pure"] = is_pure(r_lat, cur.full_lattice())
        if not (checks["witness_injective"] and checks["R_is_delta_power"]
                and checks["R_pure"] and checks["stratum_pure"]):
            raise FiltrationFailure(lam, "graded peeling hypothesis fails", checks)
        # depth-shift identity: R ∩ r~ad^(m1+s) N = r~ad^s R for all s
        rmod = cur.restrict_to(r_lat)
        rchain = module_rad_chain(rmod)
        shift_ok = True
        for s in range(len(rchain)):
            lhs = lattice_intersection(r_lat,
                                       chain[min(m1 + s, len(chain) - 1)])
            rows = []
            rl = rchain[min(s, len(rchain) - 1)]
            for rr in rl.rows:
                v = [cur.fld.zero] * cur.rank
                for c, base in zip(rr, r_lat.rows):
                    if c:
                        for t in range(cur.rank):
                            if base[t]:
                                v[t] = v[t] + c * base[t]
                rows.append(v)
            rhs = Lattice.from_rows(alg.ring, cur.rank, rows)
            if lhs != rhs:
                shift_ok = False
                break
        checks["depth_shift_identity"] = shift_ok
        if not shift_ok:
            raise FiltrationFailure(lam, "depth-shift identity fails", checks)
        # graded section: gr^b N ∩ gr# R inside gr N
        grN = gr_module(gralg, cur)
        grb = gr_b(grN)
        gsharp_rows = []
        for n in range(len(chain) - 1):
            inter = lattice_intersection(r_lat, chain[n])
            for rr in inter.rows:
                sym = grN.full_coords(list(rr))
                row = [sym[t] if grN.grades[t] == n else cur.fld.zero
                       for t in range(grN.module.rank)]
                if any(row):
                    gsharp_rows.append(row)
        gsharp = Lattice.from_rows(alg.ring, grN.module.rank, gsharp_rows)
        section = lattice_intersection(grb.lattice, gsharp)
        standard = section == gsharp
        kind = "standard" if standard else "prestandard"
        if not standard:
            # sandwich: image of gr^b Delta(lam)^d inside the section
            gd = gr_module(gralg, delta)
            grb_delta = gr_b(gd)
            emb_rows = []
            for j in range(d):
                for rr in grb_delta.lattice.rows:
                    v = [delta.fld.zero] * big.rank
                    # lift graded row to Delta coordinates copy j
                    lift = _graded_row_to_module(gd, list(rr))
                    for t in range(delta.rank):
                        v[j * delta.rank + t] = lift[t]
                    img = linalg.mat_vec(h, v, cur.fld)
                    sym = grN.full_coords(img)
                    dpt = grN.depth(img)
                    row = [sym[t] if grN.grades[t] == dpt else cur.fld.zero
                           for t in range(grN.module.rank)]
                    emb_rows.append(row)
            emb = Lattice.from_rows(alg.ring, grN.module.rank, emb_rows)
            checks["sandwich_lower"] = section.contains_lattice(emb)
            checks["sandwich_upper"] = gsharp.contains_lattice(section)
            if not (checks["sandwich_lower"] and checks["sandwich_upper"]):
                raise FiltrationFailure(lam, "prestandard sandwich fails", checks)
        stages.append(GradedStage(lam, d, m1, kind, checks))
        quot, _, _ = cur.quotient_by(r_lat)
        cur = quot
    if cur.rank:
        raise FiltrationFailure(None, "graded peeling did not terminate")
    # ordering property: lower weights occur above higher weights
    for a in range(len(stages)):
        for b in range(a + 1, len(stages)):
            if w.lt(stages[a].label, stages[b].label):
                raise FiltrationFailure(
                    stages[b].label, "ordering property violated "
                    f"({stages[a].label!r} below {stages[b].label!r})")
    return stages


def _graded_row_to_module(gd: GradedModule, row):
    """Map a graded-coordinate row back to base-module coordinates via lifts."""
    fld = gd.base_module.fld
    v = [fld.zero] * gd.base_module.rank
    for i, c in enumerate(row):
        if c:
            lift = gd.lifts[i]
            for t in range(gd.base_module.rank):
                if lift[t]:
                    v[t] = v[t] + c * lift[t]
    return v


def graded_section_multiset(stages):
    out = {}
    for st in stages:
        out[st.label] = out.get(st.label, 0) + st.copies
    return out
