"""Command-line surface: validate instances, run the verification suites, emit reports.

Exit codes: 0 all checks pass, 1 at least one verification failure,
2 structural or parse error.  Reports are canonical JSON (sorted keys);
identical inputs and seeds give byte-identical reports apart from the
`timing` subtree.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time

from .checks import failed, passed
from .dgalgebra import StructureError, validate_algebra
from .dgmodule import LEFT, RIGHT, validate_module
from .field import Field
from .genlab import CorpusProfile, GenerationError, generate_corpus
from .kunneth import check_exact_sequences, check_representative_independence, theta
from .resolve import (
    ResourceCapError,
    check_depth_stabilization,
    check_resolution_independence,
    theta_der,
)
from .serialize import (
    corpus_to_json,
    dumps_canonical,
    matrix_to_json,
    module_file_from_json,
    profile_from_json,
    resolution_to_json,
    tensor_complex_to_json,
)
from .suite import Report, run_suite
from .tensor import tensor_cohomology

DEFAULT_FIELD_ENV = "DGKUNNETH_FIELD"


def parse_field_spec(spec: str) -> Field:
    s = spec.strip().lower()
    if s in ("q", "rationals"):
        return Field.rationals()
    for prefix in ("fp", "f", "prime:"):
        if s.startswith(prefix) and s[len(prefix):].isdigit():
            return Field.prime(int(s[len(prefix):]))
    if s.isdigit():
        return Field.prime(int(s))
    raise StructureError(f"cannot parse field spec {spec!r} (use Q or F<p>)")


def default_field(args) -> Field:
    if getattr(args, "field", None):
        return parse_field_spec(args.field)
    env = os.environ.get(DEFAULT_FIELD_ENV)
    if env:
        return parse_field_spec(env)
    return Field.prime(101)


def load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def write_atomic(path: str, text: str):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(report: Report, out: str | None) -> int:
    for c in report.checks:
        if not c.ok:
            print(f"FAIL {c.name} {c.details.get('instance', '')}".rstrip())
    n_fail = sum(1 for c in report.checks if not c.ok)
    print(f"{report.command}: {len(report.checks)} checks, {n_fail} failures -> "
          f"{'PASS' if report.ok else 'FAIL'}")
    if out:
        write_atomic(out, dumps_canonical(report.as_json()))
    return report.exit_code


def load_instance_pair(m_path: str, n_path: str):
    m_name, m_alg, m_mod = module_file_from_json(load_json(m_path))
    n_name, n_alg, n_mod = module_file_from_json(load_json(n_path))
    if m_mod is None or n_mod is None:
        raise StructureError("both files must carry a module")
    if m_alg.field != n_alg.field or m_alg != n_alg:
        raise StructureError("the two modules live over different algebras")
    if m_mod.side != RIGHT:
        raise StructureError(f"{m_path}: left factor must be a right module")
    if n_mod.side != LEFT:
        raise StructureError(f"{n_path}: right factor must be a left module")
    return (m_name, n_name), m_mod, n_mod


def cmd_validate(args) -> int:
    report = Report("validate", instance_refs=[args.path])
    t0 = time.perf_counter()
    name, algebra, module = module_file_from_json(load_json(args.path))
    violations = validate_algebra(algebra)
    if violations:
        report.checks.append(failed("algebra_axioms",
                                    counterexample={"violations": [str(v) for v in violations]}))
    else:
        report.checks.append(passed("algebra_axioms"))
    if module is not None:
        violations = validate_module(module)
        if violations:
            report.checks.append(failed("module_axioms",
                                        counterexample={"violations": [str(v) for v in violations]}))
        else:
            report.checks.append(passed("module_axioms"))
    report.timing["validate"] = round(time.perf_counter() - t0, 3)
    return emit(report, args.out)


def _input_checks(m, n) -> list:
    """Axiom gate for the single-pair commands; invalid inputs fail the
    report instead of crashing the verification layer."""
    out = []
    for label, thing, validate in (("algebra", m.algebra, validate_algebra),
                                   ("m", m, validate_module),
                                   ("n", n, validate_module)):
        violations = validate(thing)
        if violations:
            out.append(failed(f"input_{label}_axioms",
                              counterexample={"violations": [str(v) for v in violations]}))
        else:
            out.append(passed(f"input_{label}_axioms"))
    return out


def cmd_kunneth(args) -> int:
    refs, m, n = load_instance_pair(args.m_path, args.n_path)
    report = Report("kunneth", instance_refs=list(refs))
    t0 = time.perf_counter()
    report.checks.extend(_input_checks(m, n))
    if report.ok:
        try:
            w = theta(m, n)
            report.checks.extend(w.evidence)
            report.checks.append(check_representative_independence(w, samples=20))
            report.checks.extend(check_exact_sequences(m, n))
            report.extra["theta"] = matrix_to_json(w.theta)
            report.extra["source_dim"] = w.source.dim
            report.extra["target_dim"] = w.target.dim
            report.extra["tensor_presentation"] = \
                tensor_complex_to_json(w.tc, degrees=(-1, 0))
        except Exception as exc:   # noqa: BLE001 - bundled, never swallowed
            report.checks.append(failed("kunneth_battery",
                                        counterexample={"exception": type(exc).__name__,
                                                        "message": str(exc)}))
    report.timing["kunneth"] = round(time.perf_counter() - t0, 3)
    return emit(report, args.out)


def cmd_derived_kunneth(args) -> int:
    refs, m, n = load_instance_pair(args.m_path, args.n_path)
    report = Report("derived-kunneth", instance_refs=list(refs))
    t0 = time.perf_counter()
    report.checks.extend(_input_checks(m, n))
    if report.ok:
        try:
            w = theta_der(m, n, depth=args.depth)
            report.checks.extend(w.evidence)
            report.checks.append(check_depth_stabilization(m, n))
            report.checks.append(check_resolution_independence(m, n))
            report.extra["theta_der"] = matrix_to_json(w.theta_der)
            report.extra["source_dim"] = w.source.dim
            report.extra["target_dim"] = w.target.dim
            report.extra["resolution"] = resolution_to_json(w.setup.resolution)
            # one degree below the top: the formula makes no claim there
            report.extra["tor1_negative_control_dim"] = \
                tensor_cohomology(w.setup.tc, -1).dim
        except Exception as exc:   # noqa: BLE001
            report.checks.append(failed("derived_kunneth_battery",
                                        counterexample={"exception": type(exc).__name__,
                                                        "message": str(exc)}))
    report.timing["derived_kunneth"] = round(time.perf_counter() - t0, 3)
    return emit(report, args.out)


def build_profile(args) -> CorpusProfile:
    if getattr(args, "profile", None):
        prof = profile_from_json(load_json(args.profile))
        if getattr(args, "seed", None) is not None:
            prof = CorpusProfile(field=prof.field,
                                 max_per_degree_dim=prof.max_per_degree_dim,
                                 degree_span=prof.degree_span,
                                 instance_count=prof.instance_count,
                                 seed=args.seed,
                                 family_mix=prof.family_mix)
        return prof
    kwargs = {"field": default_field(args)}
    if getattr(args, "seed", None) is not None:
        kwargs["seed"] = args.seed
    return CorpusProfile(**kwargs)


def cmd_suite(args) -> int:
    profile = build_profile(args)
    report = run_suite(profile, jobs=args.jobs)
    return emit(report, args.out)


def cmd_gen(args) -> int:
    profile = build_profile(args)
    corpus = generate_corpus(profile)
    write_atomic(args.out, dumps_canonical(corpus_to_json(profile, corpus)))
    print(f"gen: wrote {len(corpus)} instances to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dgkunneth",
        description="Exact verification of top-degree tensor cohomology isomorphisms")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="validate an instance file")
    v.add_argument("path")
    v.add_argument("--out", help="write the JSON report here")
    v.set_defaults(fn=cmd_validate)

    k = sub.add_parser("kunneth", help="build and verify theta for two instance files")
    k.add_argument("m_path")
    k.add_argument("n_path")
    k.add_argument("--out")
    k.set_defaults(fn=cmd_kunneth)

    d = sub.add_parser("derived-kunneth",
                       help="build and verify theta_der for two instance files")
    d.add_argument("m_path")
    d.add_argument("n_path")
    d.add_argument("--depth", type=int, default=None)
    d.add_argument("--out")
    d.set_defaults(fn=cmd_derived_kunneth)

    s = sub.add_parser("suite", help="generate a corpus and run all verification suites")
    s.add_argument("--profile", help="profile JSON file (defaults to the published profile)")
    s.add_argument("--field", help="field spec: Q or F<p> (default F101 or $DGKUNNETH_FIELD)")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_suite)

    g = sub.add_parser("gen", help="emit a corpus file for a profile")
    g.add_argument("--profile")
    g.add_argument("--field")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--out", required=True)
    g.set_defaults(fn=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (StructureError, GenerationError, ResourceCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (json.JSONDecodeError, OSError, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
