"""Configuration-driven command line front end.

Subcommands:
  run CONFIG        execute the verification cases declared in a JSON config
  explain RELATION  print the derived exponents for a parameter set
  list-generators   show the generator vocabulary accepted in configs
  selftest          run the built-in standard battery and report pass/fail

Reports are written as CSV and JSON with 17 significant digits; two runs
with the same config produce byte-identical files.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable

from . import exponents, harness
from .fields import (
    DomainSpec,
    FourierMode,
    Gaussian,
    RandomBandLimited,
    SmoothBump,
    SumOf,
)
from .harness import ExponentSpec, FunctionFamily, InequalityReport
from .maximal import SmoothProfile
from .norms import YoungFunction

OUTPUT_DIR_ENV = "FRACINEQ_OUTPUT_DIR"
JOBS_ENV = "FRACINEQ_JOBS"

CSV_COLUMNS = [
    "case_id",
    "theorem",
    "n",
    "s",
    "s1",
    "beta",
    "theta",
    "p_desc",
    "frak_p",
    "lhs_max",
    "rhs_at_max",
    "c_fit",
    "refinement_ratio",
    "skipped",
    "pass",
]


class ConfigError(ValueError):
    pass


def _require_keys(obj: dict, allowed: set, required: set, where: str):
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)} in {where}")
    missing = required - set(obj)
    if missing:
        raise ConfigError(f"missing keys {sorted(missing)} in {where}")


GENERATOR_KINDS = {
    "fourier_mode": "k (integer or pair)",
    "gaussian": "sigma, center (optional)",
    "smooth_bump": "radius, center (optional)",
    "random_band_limited": "seed, max_band",
    "sum": "parts (list of generator specs)",
}


def parse_generator(obj: dict):
    _require_keys(obj, {"kind", "k", "sigma", "radius", "center", "seed", "max_band", "parts"}, {"kind"}, "generator")
    kind = obj["kind"]
    if kind == "fourier_mode":
        k = obj["k"]
        return FourierMode(tuple(k) if isinstance(k, list) else k)
    if kind == "gaussian":
        c = obj.get("center")
        return Gaussian(sigma=float(obj["sigma"]), center=tuple(c) if isinstance(c, list) else c)
    if kind == "smooth_bump":
        c = obj.get("center")
        return SmoothBump(radius=float(obj["radius"]), center=tuple(c) if isinstance(c, list) else c)
    if kind == "random_band_limited":
        return RandomBandLimited(seed=int(obj["seed"]), max_band=int(obj["max_band"]))
    if kind == "sum":
        return SumOf(tuple(parse_generator(p) for p in obj["parts"]))
    raise ConfigError(f"unknown generator kind {kind!r}")


def _parse_exponent(obj, where: str) -> ExponentSpec:
    if isinstance(obj, (int, float)):
        return ExponentSpec(base=float(obj))
    if isinstance(obj, dict):
        _require_keys(obj, {"base", "amplitude", "mode"}, {"base"}, where)
        return ExponentSpec(
            base=float(obj["base"]),
            amplitude=float(obj.get("amplitude", 0.0)),
            mode=int(obj.get("mode", 1)),
        )
    raise ConfigError(f"{where}: exponent must be a number or an object")


def _parse_young(obj: dict) -> YoungFunction:
    _require_keys(obj, {"kind", "p", "p_low", "p_high", "t", "a"}, {"kind"}, "young function")
    kind = obj["kind"]
    if kind == "power":
        return YoungFunction.power(float(obj["p"]))
    if kind == "two_power":
        return YoungFunction.two_power(float(obj["p_low"]), float(obj["p_high"]))
    if kind == "exp":
        return YoungFunction.exp_type()
    if kind == "table":
        return YoungFunction.from_table(obj["t"], obj["a"])
    raise ConfigError(f"unknown young function kind {kind!r}")


def build_case(obj: dict, refine: bool, n: int) -> tuple:
    """Validate one case at load time; returns (case_id_hint, runner)."""
    common = {"theorem", "allow_inconclusive"}
    theorem = obj.get("theorem")
    if theorem is None:
        raise ConfigError("case missing 'theorem'")

    def runner_for(fn: Callable, **kwargs) -> Callable[[FunctionFamily], InequalityReport]:
        return lambda family: fn(family, refine=refine, **kwargs)

    if theorem == "modified_hedberg":
        _require_keys(obj, common | {"s", "s1", "beta"}, {"s", "s1", "beta"}, "case")
        exponents.hedberg_theta(obj["s"], obj["s1"], obj["beta"])
        if not 0 < obj["s1"] < obj["s"] <= n:
            raise ConfigError("modified_hedberg needs 0 < s1 < s <= n")
        return theorem, runner_for(
            harness.verify_modified_hedberg, s=obj["s"], s1=obj["s1"], beta=obj["beta"]
        )
    if theorem == "classical_hedberg":
        _require_keys(obj, common | {"s", "p"}, {"s", "p"}, "case")
        exponents.sobolev_conjugate(n, obj["s"], obj["p"])
        return theorem, runner_for(harness.verify_classical_hedberg, s=obj["s"], p=obj["p"])
    if theorem == "hls":
        _require_keys(obj, common | {"s", "p"}, {"s", "p"}, "case")
        p_spec = _parse_exponent(obj["p"], "hls.p")
        exponents.q_pointwise(float(p_spec.p_plus), obj["s"], n)
        return theorem, runner_for(harness.verify_hls, s=obj["s"], p_spec=p_spec)
    if theorem == "theorem2":
        _require_keys(obj, common | {"s", "s1", "beta", "p"}, {"s", "s1", "beta", "p"}, "case")
        exponents.hedberg_theta(obj["s"], obj["s1"], obj["beta"])
        return theorem, runner_for(
            harness.verify_theorem2,
            s=obj["s"],
            s1=obj["s1"],
            beta=obj["beta"],
            p_spec=_parse_exponent(obj["p"], "theorem2.p"),
        )
    if theorem in ("theorem3", "theorem4"):
        _require_keys(obj, common | {"s", "p", "frak_p"}, {"s", "p", "frak_p"}, "case")
        exponents.mixed_theta(n, obj["s"], obj["frak_p"])
        fn = harness.verify_theorem3 if theorem == "theorem3" else harness.verify_theorem4
        return theorem, runner_for(
            fn, s=obj["s"], p_spec=_parse_exponent(obj["p"], f"{theorem}.p"), frak_p=obj["frak_p"]
        )
    if theorem == "theorem5":
        _require_keys(obj, common | {"s", "s1", "beta", "young"}, {"s", "s1", "beta", "young"}, "case")
        exponents.hedberg_theta(obj["s"], obj["s1"], obj["beta"])
        return theorem, runner_for(
            harness.verify_theorem5,
            s=obj["s"],
            s1=obj["s1"],
            beta=obj["beta"],
            A=_parse_young(obj["young"]),
        )
    if theorem == "phi_maximal_domination":
        _require_keys(obj, common | {"profile"}, set(), "case")
        prof = obj.get("profile", "heat")
        if prof not in ("heat", "band"):
            raise ConfigError(f"unknown profile {prof!r}")
        return theorem, runner_for(
            harness.verify_phi_maximal_domination, profile=SmoothProfile(prof)
        )
    if theorem == "maximal_boundedness":
        _require_keys(obj, common | {"p"}, {"p"}, "case")
        return theorem, runner_for(harness.verify_maximal_boundedness, p=obj["p"])
    if theorem == "young_oneil":
        _require_keys(obj, common | {"s", "p"}, {"s", "p"}, "case")
        exponents.young_oneil_q(exponents.lorentz_exponent(n, obj["s"]), obj["p"])
        return theorem, runner_for(harness.verify_young_oneil, s=obj["s"], p=obj["p"])
    if theorem == "besov_equivalence":
        _require_keys(obj, common | {"beta", "s"}, {"beta", "s"}, "case")
        return theorem, runner_for(harness.verify_besov_equivalence, beta=obj["beta"], s=obj["s"])
    raise ConfigError(f"unknown theorem tag {theorem!r}")


def load_config(path) -> dict:
    with open(path) as fh:
        raw = json.load(fh)
    _require_keys(
        raw,
        {"domain", "family", "cases", "output", "refinement", "jobs"},
        {"domain", "cases"},
        "config",
    )
    dom_obj = raw["domain"]
    _require_keys(dom_obj, {"n", "L", "N"}, {"n", "L", "N"}, "domain")
    domain = DomainSpec(int(dom_obj["n"]), float(dom_obj["L"]), int(dom_obj["N"]))

    fam_obj = raw.get("family", {"kind": "standard"})
    _require_keys(fam_obj, {"kind", "seed", "generators"}, set(), "family")
    if fam_obj.get("kind", "standard") == "standard" and "generators" not in fam_obj:
        family = harness.standard_family(domain, seed=int(fam_obj.get("seed", 1202)))
    else:
        gens = tuple(parse_generator(g) for g in fam_obj.get("generators", []))
        family = FunctionFamily(domain, gens)

    out_obj = raw.get("output", {})
    _require_keys(out_obj, {"format", "dir"}, set(), "output")
    out_format = out_obj.get("format", "csv")
    if out_format not in ("csv", "json", "both"):
        raise ConfigError(f"unknown output format {out_format!r}")
    out_dir = os.environ.get(OUTPUT_DIR_ENV) or out_obj.get("dir", "reports")

    refine = bool(raw.get("refinement", True))
    jobs = int(os.environ.get(JOBS_ENV) or raw.get("jobs", 1))
    if jobs < 1:
        raise ConfigError("jobs must be >= 1")

    cases = []
    for i, case_obj in enumerate(raw["cases"]):
        try:
            theorem, runner = build_case(case_obj, refine, domain.n)
        except (exponents.GateError, ConfigError, ValueError) as exc:
            raise ConfigError(f"case {i}: {exc}") from exc
        cases.append(
            {
                "runner": runner,
                "theorem": theorem,
                "allow_inconclusive": bool(case_obj.get("allow_inconclusive", False)),
            }
        )
    return {
        "family": family,
        "cases": cases,
        "format": out_format,
        "out_dir": Path(out_dir),
        "jobs": jobs,
    }


def _format_cell(value) -> str:
    if value is None or value == "":
        return ""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def write_reports(reports, out_dir: Path, out_format: str) -> list:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    rows = [r.to_row() for r in reports]
    if out_format in ("csv", "both"):
        path = out_dir / "reports.csv"
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for row in rows:
                writer.writerow([_format_cell(row[c]) for c in CSV_COLUMNS])
        written.append(path)
    if out_format in ("json", "both"):
        path = out_dir / "reports.json"
        payload = [
            {c: (_format_cell(row[c]) if isinstance(row[c], float) else row[c]) for c in CSV_COLUMNS}
            for row in rows
        ]
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
        written.append(path)
    return written


def execute(config: dict) -> tuple:
    family = config["family"]
    cases = config["cases"]

    def run_one(case):
        try:
            return case["runner"](family)
        except Exception as exc:  # mid-run numeric failure: mark, keep going
            return InequalityReport(
                case_id=f"failed_{case['theorem']}",
                theorem=case["theorem"],
                params={},
                lhs_max=float("nan"),
                rhs_at_max=float("nan"),
                c_fit=float("nan"),
                refinement_ratio=None,
                skipped=0,
                passed=False,
                inconclusive=True,
                extras={"error": str(exc)},
            )

    if config["jobs"] > 1 and len(cases) > 1:
        with ThreadPoolExecutor(max_workers=config["jobs"]) as pool:
            reports = list(pool.map(run_one, cases))
    else:
        reports = [run_one(c) for c in cases]

    ok = all(
        r.passed or (r.inconclusive and c["allow_inconclusive"])
        for r, c in zip(reports, cases)
    )
    return reports, ok


def selftest_config(out_dir: str = "reports") -> dict:
    """Built-in deterministic battery over the standard 1-D family."""
    raw = {
        "domain": {"n": 1, "L": 16.0, "N": 64},
        "family": {"kind": "standard", "seed": 1202},
        "cases": [
            {"theorem": "modified_hedberg", "s": 0.8, "s1": 0.3, "beta": 1.0},
            {"theorem": "classical_hedberg", "s": 0.25, "p": 2.0},
            {"theorem": "hls", "s": 0.25, "p": 2.0},
            {"theorem": "hls", "s": 0.25, "p": {"base": 2.0, "amplitude": 0.25, "mode": 1}},
            {"theorem": "theorem2", "s": 0.4, "s1": 0.0, "beta": 1.0, "p": {"base": 2.0, "amplitude": 0.25, "mode": 1}},
            {"theorem": "theorem3", "s": 0.25, "p": {"base": 2.0, "amplitude": 0.25, "mode": 1}, "frak_p": 2.0},
            {"theorem": "theorem4", "s": 0.25, "p": {"base": 2.0, "amplitude": 0.25, "mode": 1}, "frak_p": 2.0},
            {"theorem": "theorem5", "s": 0.4, "s1": 0.0, "beta": 1.0, "young": {"kind": "two_power", "p_low": 2.0, "p_high": 3.0}},
            {"theorem": "phi_maximal_domination", "profile": "heat"},
            {"theorem": "maximal_boundedness", "p": 2.0},
            {"theorem": "young_oneil", "s": 0.5, "p": 1.5},
            {"theorem": "besov_equivalence", "beta": 1.0, "s": 0.5},
        ],
        "output": {"format": "both", "dir": out_dir},
        "refinement": True,
        "jobs": 1,
    }
    return raw


RELATIONS = ("sobolev", "hedberg", "lorentz", "young_oneil", "mixed", "pointwise")


def explain(relation: str, args) -> str:
    lines = []
    if relation == "sobolev":
        q = exponents.sobolev_conjugate(args.n, args.s, args.p)
        lines.append(f"q = n p / (n - s p) = {float(q):.12g}    [sobolev_conjugate]")
    elif relation == "hedberg":
        theta = exponents.hedberg_theta(args.s, args.s1, args.beta)
        lines.append(f"theta = (s - s1)/(beta + s) = {float(theta):.12g}    [hedberg_theta]")
    elif relation == "lorentz":
        r = exponents.lorentz_exponent(args.n, args.s)
        lines.append(f"r = n / (n - s) = {float(r):.12g}    [lorentz_exponent]")
    elif relation == "young_oneil":
        r = exponents.lorentz_exponent(args.n, args.s)
        q = exponents.young_oneil_q(r, args.p)
        lines.append(f"r = n / (n - s) = {float(r):.12g}    [lorentz_exponent]")
        lines.append(f"q from 1 + 1/q = 1/r + 1/p: q = {float(q):.12g}    [young_oneil_q]")
    elif relation == "mixed":
        theta = exponents.mixed_theta(args.n, args.s, args.frak_p)
        lines.append(f"theta = s frak_p / n = {float(theta):.12g}    [mixed_theta]")
        for tag, p in (("sigma_minus", args.p_minus), ("sigma_plus", args.p_plus)):
            sig = exponents.sigma_exponent(args.n, args.s, args.frak_p, p)
            lines.append(f"{tag} = n p / (n - s frak_p) = {float(sig):.12g}    [sigma_exponent]")
    elif relation == "pointwise":
        for tag, p in (("q_minus", args.p_minus), ("q_plus", args.p_plus)):
            q = exponents.q_pointwise(p, args.s, args.n)
            lines.append(f"{tag} from 1/q = 1/p - s/n: {float(q):.12g}    [q_pointwise]")
    else:
        raise ConfigError(f"unknown relation {relation!r}; choose from {RELATIONS}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="fracineq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a JSON config")
    p_run.add_argument("config", type=Path)

    p_exp = sub.add_parser("explain", help="print derived exponents")
    p_exp.add_argument("relation", choices=RELATIONS)
    p_exp.add_argument("--n", type=int, default=1)
    p_exp.add_argument("--s", type=float, default=0.5)
    p_exp.add_argument("--s1", type=float, default=0.0)
    p_exp.add_argument("--beta", type=float, default=1.0)
    p_exp.add_argument("--p", type=float, default=2.0)
    p_exp.add_argument("--p-minus", dest="p_minus", type=float, default=1.5)
    p_exp.add_argument("--p-plus", dest="p_plus", type=float, default=3.0)
    p_exp.add_argument("--frak-p", dest="frak_p", type=float, default=2.0)

    sub.add_parser("list-generators", help="show generator vocabulary")

    p_self = sub.add_parser("selftest", help="run the built-in battery")
    p_self.add_argument("--out", type=Path, default=Path("reports"))

    args = parser.parse_args(argv)

    if args.command == "run":
        try:
            config = load_config(args.config)
        except (ConfigError, ValueError, OSError) as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return 2
        reports, ok = execute(config)
        written = write_reports(reports, config["out_dir"], config["format"])
        for r in reports:
            status = "PASS" if r.passed else ("INCONCLUSIVE" if r.inconclusive else "FAIL")
            print(f"{status:12s} {r.case_id}  c_fit={r.c_fit:.6g}  ratio={r.refinement_ratio}")
        for path in written:
            print(f"wrote {path}")
        return 0 if ok else 1

    if args.command == "explain":
        try:
            print(explain(args.relation, args))
        except (exponents.GateError, ConfigError) as exc:
            print(str(exc), file=sys.stderr)
            return 2
        return 0

    if args.command == "list-generators":
        for kind, params in GENERATOR_KINDS.items():
            print(f"{kind:22s} {params}")
        return 0

    if args.command == "selftest":
        import tempfile

        raw = selftest_config(str(args.out))
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
            json.dump(raw, fh)
            cfg_path = fh.name
        try:
            config = load_config(cfg_path)
        finally:
            os.unlink(cfg_path)
        reports, ok = execute(config)
        written = write_reports(reports, config["out_dir"], config["format"])
        for r in reports:
            status = "PASS" if r.passed else ("INCONCLUSIVE" if r.inconclusive else "FAIL")
            print(f"{status:12s} {r.case_id}  c_fit={r.c_fit:.6g}  ratio={r.refinement_ratio}")
        for path in written:
            print(f"wrote {path}")
        return 0 if ok else 1

    return 2  # pragma: no cover


if __name__ == "__main__":
    raise SystemExit(main())
