"""JSON document formats: ring specs, algebras, modules, reports.

One schema family; scalars are exact strings ("num/den") or length-(p-1)
arrays of them for the cyclotomic flavor.  Module documents reference their
algebra by content hash so certificates cannot be replayed across mutated
fixtures.  Serialization is canonical (sorted keys, no whitespace drift), so
gen -> serialize -> load -> serialize is byte-identical.
"""

from __future__ import annotations

import hashlib
import json
from importlib import resources

import jsonschema

from . import __version__
from .algebra import StructureAlgebra, ValidationError, WeightDatum
from .modules import ModuleRep
from .scalars import RingSpec

SCHEMA_VERSION = "grforge/v1"


class DocumentError(ValueError):
    pass


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def content_hash(doc) -> str:
    return hashlib.sha256(canonical_json(doc).encode()).hexdigest()


def _schema(name):
    with resources.files("grforge.schemas").joinpath(name).open() as fh:
        return json.load(fh)


def validate_schema(doc, name):
    try:
        jsonschema.validate(doc, _schema(name))
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise DocumentError(f"schema violation at /{path}: {exc.message}") from exc


# ---------------------------------------------------------------------------
# algebra documents
# ---------------------------------------------------------------------------

def algebra_to_doc(alg: StructureAlgebra, metadata: dict | None = None) -> dict:
    if alg.level != "O":
        raise DocumentError("only integral algebras are serialized")
    ring = alg.ring
    sc = []
    for (i, j) in sorted(alg.sc):
        for t in sorted(alg.sc[(i, j)]):
            sc.append([i, j, t, ring.format_scalar(alg.sc[(i, j)][t])])
    doc = {
        "schema": f"{SCHEMA_VERSION}/algebra",
        "ring": {"flavor": ring.flavor, "p": ring.p},
        "rank": alg.rank,
        "basis_labels": list(alg.labels),
        "unit": [ring.format_scalar(x) for x in alg.unit],
        "structure_constants": sc,
    }
    if alg.weights is not None:
        w = alg.weights
        doc["weights"] = {
            "X": [str(x) for x in w.X],
            "Lambda": [str(x) for x in w.Lambda],
            "poset": sorted([str(a), str(b)] for (a, b) in w.less),
            "idempotents": {str(lbl): [ring.format_scalar(x) for x in v]
                            for lbl, v in w.idempotents.items()},
        }
    if alg.generators:
        doc["generators"] = {str(lbl): [ring.format_scalar(x) for x in v]
                             for lbl, v in alg.generators.items()}
    if metadata:
        doc["metadata"] = metadata
    return doc


def doc_to_algebra(doc, validate: str = "auto") -> StructureAlgebra:
    validate_schema(doc, "algebra.json")
    ring = RingSpec(doc["ring"]["flavor"], doc["ring"]["p"])
    rank = doc["rank"]
    parse = ring.parse_scalar
    sc = {}
    for entry in doc["structure_constants"]:
        i, j, t, val = entry
        if not (0 <= i < rank and 0 <= j < rank and 0 <= t < rank):
            raise DocumentError(f"structure constant index out of range: {entry}")
        v = parse(val)
        if v:
            sc.setdefault((i, j), {})[t] = v
    unit = tuple(parse(x) for x in doc["unit"])
    weights = None
    if "weights" in doc:
        wd = doc["weights"]
        weights = WeightDatum.build(
            wd["X"], wd["Lambda"],
            [(a, b) for a, b in wd["poset"]],
            {lbl: tuple(parse(x) for x in v)
             for lbl, v in wd["idempotents"].items()})
    gens = None
    if "generators" in doc:
        gens = {lbl: tuple(parse(x) for x in v)
                for lbl, v in doc["generators"].items()}
    alg = StructureAlgebra(ring, "O", rank, doc.get("basis_labels"),
                           unit, sc, weights, gens)
    alg.validation_report = alg.validate(mode=validate)
    alg.metadata = doc.get("metadata", {})
    alg.source_hash = content_hash(doc)
    return alg


# ---------------------------------------------------------------------------
# module documents
# ---------------------------------------------------------------------------

def module_to_doc(mod: ModuleRep, algebra_doc: dict, name: str = "") -> dict:
    ring = mod.algebra.ring
    action = []
    for m in mod.acts:
        action.append([[ring.format_scalar(x) for x in row] for row in m])
    return {
        "schema": f"{SCHEMA_VERSION}/module",
        "algebra_hash": content_hash(algebra_doc),
        "rank": mod.rank,
        "name": name or mod.name,
        "action": action,
    }


def doc_to_module(doc, alg: StructureAlgebra) -> ModuleRep:
    validate_schema(doc, "module.json")
    if getattr(alg, "source_hash", None) != doc["algebra_hash"]:
        raise DocumentError(
            "module references a different algebra (content hash mismatch)")
    parse = alg.ring.parse_scalar
    acts = []
    for m in doc["action"]:
        acts.append([[parse(x) for x in row] for row in m])
    mod = ModuleRep(alg, doc["rank"], acts, doc.get("name", "module"))
    mod.validate()
    return mod


# ---------------------------------------------------------------------------
# suite reports
# ---------------------------------------------------------------------------

def suite_report(suite_name: str, fixture_id: str, verdicts: dict,
                 witnesses=None, wall_clock: float | None = None,
                 input_hash: str = "") -> dict:
    """Machine report; the volatile timing lives in its own sub-object so the
    deterministic portion is byte-stable across runs."""
    doc = {
        "schema": f"{SCHEMA_VERSION}/report",
        "suite": suite_name,
        "fixture": fixture_id,
        "verdicts": {str(k): _plain(v) for k, v in verdicts.items()},
        "witnesses": _plain(witnesses) if witnesses is not None else None,
        "tool_version": __version__,
        "input_hash": input_hash,
        "timing": {"wall_clock_s": wall_clock},
    }
    validate_schema(doc, "report.json")
    return doc


def report_passed(doc) -> bool:
    def ok(v):
        if isinstance(v, dict):
            return all(ok(x) for x in v.values())
        if isinstance(v, (list, tuple)):
            return all(ok(x) for x in v)
        if v is None:
            return True
        return bool(v)

    return ok(doc["verdicts"])


def stable_portion(report_doc) -> dict:
    out = {k: v for k, v in report_doc.items() if k != "timing"}
    return out


def _plain(v):
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (bool, int, float, str)) or v is None:
        return v
    return str(v)
