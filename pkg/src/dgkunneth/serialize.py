"""Canonical JSON interchange for algebras, modules, corpora and reports.

All field elements serialize as strings: "num/den" in lowest terms with a
positive denominator over the rationals, the canonical representative in
[0, p) over a prime field.  Matrices are nested row-major arrays of element
strings; shapes are implied by the surrounding dimension data, and all-zero
matrices are omitted.  `dumps_canonical` fixes key order and whitespace so
equal objects serialize to identical bytes.
"""
from __future__ import annotations

import json

from .dgalgebra import DGAlgebra, StructureError
from .dgmodule import DGModule
from .field import RATIONALS, Field
from .genlab import CorpusProfile, Instance
from .linalg import Matrix

INSTANCE_FORMAT = "dgkunneth-instance/1"
CORPUS_FORMAT = "dgkunneth-corpus/1"
REPORT_FORMAT = "dgkunneth-report/1"


def dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def field_to_json(f: Field) -> dict:
    if f.kind == RATIONALS:
        return {"kind": "rationals"}
    return {"kind": "prime", "p": f.p}


def field_from_json(d: dict) -> Field:
    kind = d.get("kind")
    if kind == "rationals":
        return Field.rationals()
    if kind == "prime":
        return Field.prime(int(d["p"]))
    raise StructureError(f"unknown field kind {kind!r}")


def matrix_to_json(m: Matrix):
    f = m.field
    return [[f.to_str(x) for x in row] for row in m.data]


def matrix_from_json(field: Field, rows: int, cols: int, data) -> Matrix:
    if len(data) != rows or any(len(r) != cols for r in data):
        raise StructureError(f"matrix shape mismatch: want {rows}x{cols}")
    return Matrix(field, rows, cols, [[field.parse(x) for x in row] for row in data])


def vector_to_json(field: Field, vec):
    return [field.to_str(x) for x in vec]


def algebra_to_json(a: DGAlgebra) -> dict:
    out = {
        "min_degree": a.min_degree,
        "dims": {str(i): a.dim(i) for i in a.degrees()},
        "unit": vector_to_json(a.field, a.unit),
        "diff": {},
        "mult": {},
    }
    for i in a.degrees():
        d = a.diff_map(i)
        if d.rows and d.cols and not d.is_zero():
            out["diff"][str(i)] = matrix_to_json(d)
        for j in a.degrees():
            mm = a.mult_map(i, j)
            if mm.rows and mm.cols and not mm.is_zero():
                out["mult"][f"{i},{j}"] = matrix_to_json(mm)
    return out


def algebra_from_json(field: Field, d: dict) -> DGAlgebra:
    min_degree = int(d["min_degree"])
    dims = {int(k): int(v) for k, v in d["dims"].items()}
    diff = {}
    for k, rows in d.get("diff", {}).items():
        i = int(k)
        diff[i] = matrix_from_json(field, dims.get(i + 1, 0), dims.get(i, 0), rows)
    mult = {}
    for k, rows in d.get("mult", {}).items():
        i, j = (int(x) for x in k.split(","))
        mult[(i, j)] = matrix_from_json(field, dims.get(i + j, 0),
                                        dims.get(i, 0) * dims.get(j, 0), rows)
    unit = [field.parse(x) for x in d["unit"]]
    return DGAlgebra(field, min_degree, dims, mult, diff, unit)


def module_to_json(m: DGModule) -> dict:
    out = {
        "side": m.side,
        "window": [m.window[0], m.window[1]],
        "dims": {str(i): m.dim(i) for i in m.degrees()},
        "diff": {},
        "action": {},
    }
    for i in m.degrees():
        d = m.diff_map(i)
        if d.rows and d.cols and not d.is_zero():
            out["diff"][str(i)] = matrix_to_json(d)
        for j in m.algebra.degrees():
            act = m.action_map(i, j)
            if act.rows and act.cols and not act.is_zero():
                out["action"][f"{i},{j}"] = matrix_to_json(act)
    return out


def module_from_json(algebra: DGAlgebra, d: dict) -> DGModule:
    field = algebra.field
    lo, hi = (int(x) for x in d["window"])
    dims = {int(k): int(v) for k, v in d["dims"].items()}
    diff = {}
    for k, rows in d.get("diff", {}).items():
        i = int(k)
        diff[i] = matrix_from_json(field, dims.get(i + 1, 0), dims.get(i, 0), rows)
    action = {}
    for k, rows in d.get("action", {}).items():
        i, j = (int(x) for x in k.split(","))
        action[(i, j)] = matrix_from_json(
            field, dims.get(i + j, 0), dims.get(i, 0) * algebra.dim(j), rows)
    return DGModule(d["side"], algebra, (lo, hi), dims, diff, action)


def instance_to_json(inst: Instance) -> dict:
    return {
        "name": inst.name,
        "family": inst.family,
        "field": field_to_json(inst.algebra.field),
        "algebra": algebra_to_json(inst.algebra),
        "m": module_to_json(inst.m),
        "n": module_to_json(inst.n),
    }


def instance_from_json(d: dict) -> Instance:
    field = field_from_json(d["field"])
    algebra = algebra_from_json(field, d["algebra"])
    m = module_from_json(algebra, d["m"])
    n = module_from_json(algebra, d["n"])
    return Instance(d.get("name", "instance"), d.get("family", "unknown"), algebra, m, n)


def profile_to_json(p: CorpusProfile) -> dict:
    return {
        "field": field_to_json(p.field),
        "max_per_degree_dim": p.max_per_degree_dim,
        "degree_span": p.degree_span,
        "instance_count": p.instance_count,
        "seed": p.seed,
        "family_mix": dict(sorted(p.family_mix.items())),
    }


def profile_from_json(d: dict) -> CorpusProfile:
    kwargs = dict(
        field=field_from_json(d["field"]),
        max_per_degree_dim=int(d.get("max_per_degree_dim", 4)),
        degree_span=int(d.get("degree_span", 4)),
        instance_count=int(d.get("instance_count", 200)),
        seed=int(d.get("seed", 20240601)),
    )
    if d.get("family_mix"):
        kwargs["family_mix"] = {k: float(v) for k, v in d["family_mix"].items()}
    return CorpusProfile(**kwargs)


def corpus_to_json(profile: CorpusProfile, instances) -> dict:
    return {
        "format": CORPUS_FORMAT,
        "profile": profile_to_json(profile),
        "instances": [instance_to_json(i) for i in instances],
    }


def corpus_from_json(d: dict):
    if d.get("format") != CORPUS_FORMAT:
        raise StructureError("not a corpus file")
    profile = profile_from_json(d["profile"])
    return profile, [instance_from_json(x) for x in d["instances"]]


# ---------------------------------------------------------------------------
# Single-module instance files (inputs of the validate/kunneth commands)


def module_file_to_json(algebra: DGAlgebra, module: DGModule, name: str = "module") -> dict:
    return {
        "format": INSTANCE_FORMAT,
        "name": name,
        "field": field_to_json(algebra.field),
        "algebra": algebra_to_json(algebra),
        "module": module_to_json(module),
    }


def module_file_from_json(d: dict):
    if d.get("format") != INSTANCE_FORMAT:
        raise StructureError("not an instance file")
    field = field_from_json(d["field"])
    algebra = algebra_from_json(field, d["algebra"])
    module = module_from_json(algebra, d["module"]) if "module" in d else None
    return d.get("name", "module"), algebra, module


# ---------------------------------------------------------------------------
# Audit exports: quotient presentations and staged resolutions


def tensor_complex_to_json(tc, degrees=None) -> dict:
    """Per-degree quotient presentation of M (x)_A N for external audit.

    Carries ambient block layout, relation rows, projection and section, so
    a third party can re-check projection o section = id and that the
    relations are annihilated.
    """
    if degrees is None:
        degrees = range(tc.lo, tc.hi + 1)
    out = {"lo": tc.lo, "hi": tc.hi, "degrees": {}}
    for t in degrees:
        sp = tc.space(t)
        out["degrees"][str(t)] = {
            "ambient_dim": sp.ambient_dim,
            "blocks": [[p, q, off, dmp, dnq] for p, q, off, dmp, dnq in tc.blocks(t)],
            "quotient_dim": sp.quotient_dim,
            "relations": matrix_to_json(sp.relations),
            "projection": matrix_to_json(sp.projection),
            "section": matrix_to_json(sp.section),
            "diff": matrix_to_json(tc.diff(t)),
        }
    return out


def resolution_to_json(res) -> dict:
    """A semi-free resolution with stage tags, for re-verifying semi-freeness:
    each generator's differential may only involve generators of earlier
    stages (their degrees are strictly higher)."""
    f = res.p.field
    gens = []
    for g, e in enumerate(res.gen_degrees):
        gens.append({
            "degree": e,
            "stage": res.gen_stages[g],
            "diff": vector_to_json(f, res.gen_diffs[g]),
            "image": vector_to_json(f, res.gen_images[g]),
        })
    return {
        "depth": res.depth,
        "generators": gens,
        "p": module_to_json(res.p),
        "rho": {str(i): matrix_to_json(res.rho.map_at(i))
                for i in res.p.degrees() if res.p.dim(i)},
    }
