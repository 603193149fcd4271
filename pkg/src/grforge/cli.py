"""Command-line workbench.

Subcommands: gen, certify, gr, verify, filtration.  Exit codes: 0 all checks
pass, 1 a verified hypothesis or conclusion check failed, 2 malformed input
or internal error.  GRFORGE_SEED fixes the seeds of randomized suites.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import __version__, certify, cyclo, files, fixtures, forced, modules
from . import randomized, suites, tightness
from .algebra import AlgebraError, ValidationError
from .scalars import ScalarError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_MALFORMED = 2


def _seed(default=20240810):
    env = os.environ.get("GRFORGE_SEED")
    return int(env) if env else default


def _stem(path):
    name = Path(path).name
    for suffix in (".alg.json", ".json"):
        if name.endswith(suffix):
            return name[: -len(suffix)]
    return name


def _load_algebra(path):
    with open(path) as fh:
        doc = json.load(fh)
    alg = files.doc_to_algebra(doc)
    alg.source_doc = doc
    return alg


def _emit_report(args, suite, fixture_id, verdicts, witnesses, t0, input_hash=""):
    doc = files.suite_report(suite, fixture_id, verdicts, witnesses,
                             wall_clock=round(time.time() - t0, 3),
                             input_hash=input_hash)
    if getattr(args, "report", None):
        Path(args.report).write_text(json.dumps(doc, indent=2, sort_keys=True))
        print(f"report written to {args.report}")
    return doc


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

def cmd_gen(args):
    name = args.fixture
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    if name == "z5":
        alg = fixtures.build_z5(args.p)
        meta = {
            "fixture": f"z5@{args.p}",
            "graded_subalgebra": {
                "basis": list(range(5)),
                "grades": [0, 0, 1, 1, 2],
            },
            "delta_gradings": {"1": [0], "2": [0, 1]},
        }
    elif name == "z5s":
        alg = fixtures.build_z5s(args.p)
        meta = {"fixture": f"z5s@{args.p}"}
    elif name == "qschur":
        if args.p not in (3, 5) or not (1 <= args.d <= 6):
            print("qschur supports p in {3,5}, 1 <= d <= 6", file=sys.stderr)
            return EXIT_MALFORMED
        alg = fixtures.build_qschur(args.d, args.p)
        meta = {"fixture": f"qschur-n2-d{args.d}@{args.p}",
                "p_regular": alg.p_regular}
    elif name == "usl2":
        if args.p not in (3, 5):
            print("usl2 supports p in {3,5}", file=sys.stderr)
            return EXIT_MALFORMED
        alg = fixtures.build_usl2(args.p)
        info = alg.blocks_info
        meta = {"fixture": f"usl2@{args.p}",
                "blocked": info.get("blocked", False),
                "blocks": [
                    {"weights": b["weights"], "regular": b["regular"],
                     "idempotent_integral": b["idempotent_integral"]}
                    for b in info.get("blocks", [])]}
        if not info.get("blocked", False):
            meta["block_flag"] = info.get("reason", "idempotents not integral")
    elif name == "inflate":
        base = _load_algebra(args.input)
        mult = {}
        for part in (args.mult or "").split(","):
            if part:
                k, v = part.split(":")
                mult[k] = int(v)
        alg = fixtures.inflate(base, mult)
        meta = {"fixture": f"inflate({_stem(args.input)})"}
    elif name == "perturb":
        base = _load_algebra(args.input)
        got = fixtures.perturb(base, seed=_seed(args.seed), count=args.count)
        if got is None:
            print("no valid mutation found", file=sys.stderr)
            return EXIT_CHECK_FAILED
        alg, scaling = got
        meta = {"fixture": f"perturb({_stem(args.input)})",
                "scaling": {str(k): v for k, v in scaling.items() if v}}
    else:
        print(f"unknown fixture {name!r}", file=sys.stderr)
        return EXIT_MALFORMED
    doc = files.algebra_to_doc(alg, metadata=meta)
    path = out / f"{meta['fixture'].replace('(', '_').replace(')', '')}.alg.json"
    path.write_text(json.dumps(doc, indent=2, sort_keys=True))
    print(f"wrote {path} (rank {alg.rank})")
    if args.with_modules and alg.weights is not None:
        sp = modules.standard_and_projectives(alg)
        for lam in alg.weights.Lambda:
            for kind in ("P", "Delta"):
                mdoc = files.module_to_doc(sp[lam][kind], doc,
                                           name=f"{kind}({lam})")
                mp = out / f"{meta['fixture']}__{kind}_{lam}.mod.json"
                mp.write_text(json.dumps(mdoc, indent=2, sort_keys=True))
                print(f"wrote {mp}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------

def cmd_certify(args):
    t0 = time.time()
    alg = _load_algebra(args.algebra)
    if alg.weights is None:
        print("algebra has no weight datum; cannot certify", file=sys.stderr)
        return EXIT_MALFORMED
    order = args.order.split(",") if args.order else None
    cert = certify.certify_qha(alg, order=order)
    checker = certify.verify_chain(alg, cert)
    print(cert.summary())
    print(f"chain {'CERTIFIED' if cert.ok else 'FAILED'}; "
          f"independent checker {'agrees' if checker else 'DISAGREES'}")
    witnesses = {
        "steps": [{
            "labels": [str(x) for x in s.labels],
            "ok": s.ok,
            "verdicts": files._plain(s.verdicts),
            "ideal_rank": s.ideal_rank,
            "corner_blocks": list(s.corner.block_sizes) if s.corner else None,
        } for s in cert.steps],
    }
    _emit_report(args, "certify", Path(args.algebra).stem,
                 {"certified": cert.ok, "checker_agrees": checker},
                 witnesses, t0, alg.source_hash)
    return EXIT_OK if (cert.ok and checker) else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# gr
# ---------------------------------------------------------------------------

def cmd_gr(args):
    from .graded import gr_algebra

    alg = _load_algebra(args.algebra)
    gr = gr_algebra(alg)
    meta = {"fixture": f"gr({Path(args.algebra).stem})",
            "grades": list(gr.grades),
            "grade_ranks": list(gr.grade_ranks())}
    doc = files.algebra_to_doc(gr.algebra, metadata=meta)
    Path(args.output).write_text(json.dumps(doc, indent=2, sort_keys=True))
    print(f"wrote {args.output}; grade ranks {gr.grade_ranks()}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _datum_from(args, alg):
    meta = getattr(alg, "metadata", {}) or {}
    if args.datum:
        with open(args.datum) as fh:
            dd = json.load(fh)
    elif "graded_subalgebra" in meta:
        dd = meta["graded_subalgebra"]
    else:
        raise AlgebraError("no graded subalgebra datum (flag --datum or "
                           "metadata.graded_subalgebra)")
    if all(isinstance(b, int) for b in dd["basis"]):
        rows = [alg.basis_vec(i) for i in dd["basis"]]
    else:
        rows = [[alg.ring.parse_scalar(x) for x in r] for r in dd["basis"]]
    wedd = None
    if dd.get("wedderburn"):
        wedd = [[alg.ring.parse_scalar(x) for x in r] for r in dd["wedderburn"]]
    return tightness.GradedSubalgebraDatum(rows, tuple(dd["grades"]), wedd)


def _delta_gradings_from(args, alg):
    meta = getattr(alg, "metadata", {}) or {}
    return meta.get("delta_gradings")


def cmd_verify(args):
    t0 = time.time()
    suite = args.suite
    if suite == "appendix2":
        datum = cyclo.RootDatum.of_type(args.type)
        verdicts = cyclo.appendix_identity_suite(datum, args.p, args.order)
        comult = {f"comult_a{i+1}": cyclo.comult_check(datum, i, args.p, args.order)
                  for i in range(datum.rank)}
        allv = {f"{tag}/{item}": v for (tag, item), v in verdicts.items()}
        allv.update(comult)
        for k in sorted(allv):
            print(f"  {k}: {'pass' if allv[k] else 'FAIL'}")
        doc = _emit_report(args, "appendix2", f"{args.type}@p{args.p}",
                           allv, None, t0)
        return EXIT_OK if files.report_passed(doc) else EXIT_CHECK_FAILED
    alg = _load_algebra(args.algebra)
    fixture_id = Path(args.algebra).stem
    if suite == "thm417":
        res = suites.thm_417_suite(alg)
        verdicts = {"hypotheses": res.hypotheses, "conclusions": res.conclusions,
                    "falsification": not res.falsification}
        _print_suite(res)
        doc = _emit_report(args, suite, fixture_id, verdicts, res.notes, t0,
                           alg.source_hash)
        return EXIT_OK if not res.falsification and res.hypotheses_ok \
            else (EXIT_CHECK_FAILED if res.falsification else EXIT_OK)
    if suite == "cor416":
        mod = _pick_module(args, alg)
        gamma = args.gamma.split(",") if args.gamma else list(alg.weights.Lambda)
        res = suites.cor_416_check(alg, mod, gamma)
        _print_suite(res)
        doc = _emit_report(args, suite, fixture_id,
                           {"hypotheses": res.hypotheses,
                            "conclusions": res.conclusions}, res.notes, t0,
                           alg.source_hash)
        return EXIT_CHECK_FAILED if res.falsification else EXIT_OK
    if suite == "conds51":
        datum = _datum_from(args, alg)
        conds, notes = tightness.conditions_51_check(
            alg, datum, _delta_gradings_from(args, alg))
        for k in sorted(conds):
            print(f"  {k}: {conds[k]}")
        doc = _emit_report(args, suite, fixture_id, conds, notes, t0,
                           alg.source_hash)
        return EXIT_OK if files.report_passed(doc) else EXIT_CHECK_FAILED
    if suite == "thm53":
        datum = _datum_from(args, alg)
        lams = args.lam.split(",") if args.lam else list(alg.weights.Lambda)
        bad = False
        fals = False
        all_verdicts = {}
        for lam in lams:
            res = tightness.thm_53_pipeline(
                alg, datum, lam, delta_gradings=_delta_gradings_from(args, alg))
            print(f"weight {lam}:")
            _print_suite(res)
            all_verdicts[lam] = {"hypotheses": res.hypotheses,
                                 "conclusions": res.conclusions}
            fals = fals or res.falsification
            bad = bad or res.falsification
        _emit_report(args, suite, fixture_id, all_verdicts, None, t0,
                     alg.source_hash)
        return EXIT_CHECK_FAILED if bad else EXIT_OK
    if suite == "appendix1":
        level = args.level
        af = alg.base_change(level)
        gamma = args.gamma.split(",") if args.gamma else list(alg.weights.Lambda)
        sp = modules.standard_and_projectives(af)
        extra = [(f"Delta({l})", sp[l]["Delta"]) for l in af.weights.Lambda]
        res = suites.field_case_suite(af, gamma, extra_modules=extra)
        _print_suite(res)
        _emit_report(args, suite, f"{fixture_id}@{level}",
                     {"hypotheses": res.hypotheses,
                      "conclusions": res.conclusions}, res.notes, t0,
                     alg.source_hash)
        return EXIT_CHECK_FAILED if res.falsification else EXIT_OK
    if suite == "prop52":
        datum = _datum_from(args, alg)
        stats = randomized.prop52_campaign(alg, datum, args.trials,
                                           _seed(args.seed))
        print(f"  {stats}")
        _emit_report(args, suite, fixture_id,
                     {"agreements": stats["agreements"],
                      "no_disagreements": stats["disagreements"] == 0},
                     stats, t0, alg.source_hash)
        return EXIT_OK if stats["disagreements"] == 0 else EXIT_CHECK_FAILED
    if suite == "primitivity":
        sp = modules.standard_and_projectives(alg)
        mods = []
        for lam in alg.weights.Lambda:
            mods.extend([sp[lam]["P"], sp[lam]["Delta"]])
        stats = randomized.primitivity_campaign(alg, mods, args.trials,
                                                _seed(args.seed))
        print(f"  {stats}")
        ok = (stats["implication_violations"] == 0
              and stats["maximality_violations"] == 0)
        _emit_report(args, suite, fixture_id,
                     {"implication_holds": stats["implication_violations"] == 0,
                      "maximality_holds": stats["maximality_violations"] == 0},
                     stats, t0, alg.source_hash)
        return EXIT_OK if ok else EXIT_CHECK_FAILED
    print(f"unknown suite {suite!r}", file=sys.stderr)
    return EXIT_MALFORMED


def _pick_module(args, alg):
    if args.module:
        with open(args.module) as fh:
            mdoc = json.load(fh)
        return files.doc_to_module(mdoc, alg)
    spec = args.builtin or "regular"
    if spec == "regular":
        return modules.regular_module(alg)
    kind, _, lam = spec.partition("(")
    lam = lam.rstrip(")")
    sp = modules.standard_and_projectives(alg)
    return sp[lam]["P" if kind == "P" else "Delta"]


def _print_suite(res):
    for k, v in res.hypotheses.items():
        print(f"  [hyp] {k}: {'pass' if v else 'FAIL'}")
    for k, v in res.conclusions.items():
        print(f"  [cncl] {k}: {'pass' if v else 'FAIL'}")
    if res.falsification:
        print("  ** FALSIFICATION EVENT: hypotheses hold, conclusion fails **")


# ---------------------------------------------------------------------------
# filtration
# ---------------------------------------------------------------------------

def cmd_filtration(args):
    t0 = time.time()
    alg = _load_algebra(args.algebra)
    if args.module:
        with open(args.module) as fh:
            mod = files.doc_to_module(json.load(fh), alg)
    else:
        mod = modules.regular_module(alg)
    try:
        stages = modules.delta_filtration(mod)
    except modules.FiltrationFailure as exc:
        print(f"no Delta-filtration: {exc}")
        _emit_report(args, "filtration", Path(args.algebra).stem,
                     {"filtered": False}, {"reason": str(exc)}, t0,
                     alg.source_hash)
        return EXIT_CHECK_FAILED
    print("sections bottom-to-top:",
          [(str(s.label), s.copies) for s in stages])
    if args.graded:
        from .graded import gr_algebra

        gr = gr_algebra(alg)
        sp = modules.standard_and_projectives(alg)
        gstages = forced.gr_delta_filtration(mod, gr, sp)
        print("graded sections:",
              [(str(s.label), s.copies, s.shift, s.kind) for s in gstages])
    ring = alg.ring
    witnesses = {
        "sections": {str(k): v for k, v in
                     modules.section_multiset(stages).items()},
        "stages": [{
            "label": str(s.label),
            "copies": s.copies,
            "witness_matrix": [[ring.format_scalar(x) for x in row]
                               for row in s.witness],
            "chain_sublattice": [[ring.format_scalar(x) for x in row]
                                 for row in s.sub_rows_original],
        } for s in stages],
    }
    _emit_report(args, "filtration", Path(args.algebra).stem,
                 {"filtered": True}, witnesses, t0, alg.source_hash)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry
# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(
        prog="grforge",
        description="exact-arithmetic workbench for forced gradings of "
                    "integral quasi-hereditary algebras")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate fixture documents")
    g.add_argument("fixture",
                   choices=["z5", "z5s", "qschur", "usl2", "inflate", "perturb"])
    g.add_argument("--p", type=int, default=3)
    g.add_argument("--d", type=int, default=2)
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--input", help="source algebra for inflate/perturb")
    g.add_argument("--mult", help="inflate multiplicities, e.g. '2:2'")
    g.add_argument("--with-modules", action="store_true")
    g.add_argument("-o", "--output", default=".")
    g.set_defaults(fn=cmd_gen)

    c = sub.add_parser("certify", help="heredity chain certification")
    c.add_argument("algebra")
    c.add_argument("--order", help="comma-separated strip order")
    c.add_argument("--report")
    c.set_defaults(fn=cmd_certify)

    r = sub.add_parser("gr", help="write the forced graded algebra")
    r.add_argument("algebra")
    r.add_argument("-o", "--output", required=True)
    r.set_defaults(fn=cmd_gr)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=["thm417", "cor416", "conds51", "thm53",
                                     "appendix1", "appendix2", "prop52",
                                     "primitivity"])
    v.add_argument("algebra", nargs="?")
    v.add_argument("--module")
    v.add_argument("--builtin", help="regular | P(lam) | Delta(lam)")
    v.add_argument("--gamma", help="comma-separated poset ideal")
    v.add_argument("--lam", help="comma-separated weights")
    v.add_argument("--datum", help="graded subalgebra datum JSON")
    v.add_argument("--level", choices=["K", "k"], default="k")
    v.add_argument("--p", type=int, default=5)
    v.add_argument("--type", default="A1")
    v.add_argument("--order", type=int, default=8)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--report")
    v.set_defaults(fn=cmd_verify)

    f = sub.add_parser("filtration", help="Delta-filtration of a module")
    f.add_argument("algebra")
    f.add_argument("module", nargs="?")
    f.add_argument("--graded", action="store_true")
    f.add_argument("--report")
    f.set_defaults(fn=cmd_filtration)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (files.DocumentError, ValidationError, ScalarError,
            json.JSONDecodeError, FileNotFoundError, cyclo.CycloError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
