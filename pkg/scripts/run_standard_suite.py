#!/usr/bin/env python3
"""Run the full verification battery on the standard function family.

Writes reports.csv / reports.json to the chosen output directory and prints
one status line per case. Exit code 0 iff every case passes.
"""
import argparse
import json
import sys
import tempfile
from pathlib import Path

from fracineq.cli import execute, load_config, selftest_config, write_reports


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("reports"))
    ap.add_argument("--N", type=int, default=64, help="grid points per axis (power of two)")
    ap.add_argument("--seed", type=int, default=1202, help="seed for the random family members")
    ap.add_argument("--no-refine", action="store_true", help="skip the grid-refinement stability check")
    args = ap.parse_args()

    raw = selftest_config(str(args.out))
    raw["domain"]["N"] = args.N
    raw["family"]["seed"] = args.seed
    raw["refinement"] = not args.no_refine
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        json.dump(raw, fh)
        cfg_path = fh.name
    config = load_config(cfg_path)
    Path(cfg_path).unlink()

    reports, ok = execute(config)
    written = write_reports(reports, config["out_dir"], config["format"])
    for r in reports:
        status = "PASS" if r.passed else ("INCONCLUSIVE" if r.inconclusive else "FAIL")
        print(f"{status:12s} {r.case_id}  c_fit={r.c_fit:.6g}  ratio={r.refinement_ratio}")
    for path in written:
        print(f"wrote {path}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
