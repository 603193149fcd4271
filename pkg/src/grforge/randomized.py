"""Seeded randomized property campaigns (primitivity, tightness equivalences).

These drive the bulk invariants: strong primitivity implies primitivity with
the maximality side condition on every positive verdict, and the three
tightness characterizations agree on random subalgebra lattices.  All draws
are deterministic given the seed (GRFORGE_SEED for the CLI).
"""

from __future__ import annotations

import random

from . import forced, tightness
from .lattices import Lattice, pure_closure
from .modules import ModuleRep, regular_module


def primitivity_campaign(alg, mods, trials: int, seed: int):
    """Random weight vectors across modules; asserts the implication
    strongly_primitive => primitive and checks footnote-style maximality on
    every positive primitive verdict.  Returns counters."""
    rng = random.Random(seed)
    w = alg.weights
    stats = {"trials": 0, "primitive": 0, "strongly_primitive": 0,
             "implication_violations": 0, "maximality_violations": 0}
    mods = [m for m in mods if m.rank]
    fld = alg.fld
    while stats["trials"] < trials:
        mod = mods[rng.randrange(len(mods))]
        lam = w.Lambda[rng.randrange(len(w.Lambda))]
        rows = mod.weight_space_rows(lam)
        if not rows:
            continue
        v = [fld.zero] * mod.rank
        for r in rows:
            c = rng.randint(-2, 2)
            if rng.random() < 0.25:
                c *= alg.ring.p
            if c:
                for t in range(mod.rank):
                    if r[t]:
                        v[t] = v[t] + fld.of(c) * r[t]
        stats["trials"] += 1
        rep = forced.primitivity_test(mod, v, lam)
        if rep.primitive:
            stats["primitive"] += 1
            if rep.maximality_ok is False:
                stats["maximality_violations"] += 1
        if rep.strongly_primitive:
            stats["strongly_primitive"] += 1
            if not rep.primitive:
                stats["implication_violations"] += 1
    return stats


def prop52_campaign(alg, datum, trials: int, seed: int,
                    max_copies: int = 2):
    """Random subalgebra lattices; the three tightness statements must agree.

    Draws random pure submodules of free modules over the graded subalgebra
    and compares the verdicts of prop_52_verdicts.  Returns counters and the
    number of tight/non-tight draws (both classes should occur).
    """
    rng = random.Random(seed)
    sub_rows = [list(r) for r in datum.rows]
    sub, _ = alg.subalgebra_on(sub_rows)
    stats = {"trials": 0, "agreements": 0, "disagreements": 0,
             "tight": 0, "not_tight": 0}
    reg = regular_module(sub)
    while stats["trials"] < trials:
        copies = rng.randint(1, max_copies)
        big = _direct_sum(reg, copies)
        ngens = rng.randint(1, copies + 1)
        gens = []
        for _ in range(ngens):
            v = [sub.fld.zero] * big.rank
            for t in range(big.rank):
                c = rng.randint(-1, 1)
                if c and rng.random() < 0.4:
                    if rng.random() < 0.3:
                        c *= alg.ring.p
                    v[t] = v[t] + sub.fld.of(c)
            if any(v):
                gens.append(v)
        if not gens:
            continue
        lat = big.submodule_generated(gens)
        if lat.rank == 0:
            continue
        lat = pure_closure(lat, big.full_lattice())
        mod_sub = big.restrict_to(lat)
        verdicts = tightness.prop_52_verdicts(alg, datum, mod_sub,
                                              over_sub=True)
        stats["trials"] += 1
        agree = (verdicts["tight"] == verdicts["sum_formula"]
                 == verdicts["generated_in_degree_0"])
        stats["agreements" if agree else "disagreements"] += 1
        stats["tight" if verdicts["tight"] else "not_tight"] += 1
    return stats


def _direct_sum(mod: ModuleRep, copies: int) -> ModuleRep:
    from .modules import direct_sum_module

    return direct_sum_module(mod, copies)


def lattice_purity_campaign(ring, trials: int, seed: int, max_rank: int = 6):
    """Random sublattice pairs; is_pure cross-checks its two routes inside."""
    from .lattices import is_pure

    rng = random.Random(seed)
    done = 0
    pure_count = 0
    while done < trials:
        amb = rng.randint(1, max_rank)
        m = Lattice.full(ring, amb)
        nrows = [[ring.of(rng.randint(-9, 9)) for _ in range(amb)]
                 for _ in range(rng.randint(0, amb))]
        if rng.random() < 0.5:
            pi = ring.uniformizer
            nrows = [[pi * x for x in r] for r in nrows]
        n = Lattice.from_rows(ring, amb, nrows)
        if is_pure(n, m):
            pure_count += 1
        done += 1
    return {"trials": done, "pure": pure_count}
