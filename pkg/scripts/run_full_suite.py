#!/usr/bin/env python3
"""Run the published verification suites over both coefficient fields.

Writes one JSON report per field into reports/ and prints a summary.
"""
import argparse
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from dgkunneth.field import Field
from dgkunneth.genlab import CorpusProfile
from dgkunneth.serialize import dumps_canonical
from dgkunneth.suite import run_suite


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", default="reports")
    ap.add_argument("--instances", type=int, default=200)
    ap.add_argument("--seed", type=int, default=20240601)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    overall = 0
    for label, field in (("F101", Field.prime(101)), ("Q", Field.rationals())):
        profile = CorpusProfile(field=field, instance_count=args.instances,
                                seed=args.seed)
        t0 = time.perf_counter()
        report = run_suite(profile, jobs=args.jobs)
        elapsed = time.perf_counter() - t0
        path = out_dir / f"suite_{label}.json"
        path.write_text(dumps_canonical(report.as_json()))
        failed = sum(1 for c in report.checks if not c.ok)
        print(f"{label}: {len(report.checks)} checks, {failed} failures, "
              f"{elapsed:.1f}s -> {path}")
        overall |= report.exit_code
    return overall


if __name__ == "__main__":
    sys.exit(main())
