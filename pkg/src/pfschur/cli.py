"""Batch front-end: JSON config in, JSON/CSV report out.

Exit codes: 0 success, 1 config error, 2 numerical non-convergence,
3 acceptance-threshold breach in `compare`.
"""

import argparse
import csv
import hashlib
import io
import json
import sys
import time

from . import kernels, measures, verify
from .macdonald import ContourConditionError
from .quadrature import QuadratureError

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICS = 2
EXIT_THRESHOLD = 3


class ConfigError(ValueError):
    pass


def _load_config(path, overrides):
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"malformed JSON in {path} at line {exc.lineno} column {exc.colno}: "
            f"{exc.msg}") from exc

    problems = []
    spec = points = None
    try:
        spec = measures.ProcessSpec.from_json(raw.get("process", {}))
    except (KeyError, TypeError, ValueError) as exc:
        problems.append(f"process: {exc}")
    try:
        points = measures.PointSet(raw.get("points", []))
        if spec is not None:
            points.by_level(spec.m)
    except (TypeError, ValueError) as exc:
        problems.append(f"points: {exc}")

    L = int(overrides.truncation if overrides.truncation is not None
            else raw.get("truncation_weight", 30))
    if L < 0:
        problems.append("truncation_weight: must be nonnegative")

    qcfg = raw.get("quadrature", {})
    tol = float(overrides.tol if overrides.tol is not None
                else qcfg.get("tol", 1e-8))
    start_nodes = int(qcfg.get("start_nodes", 64))

    kcfg_raw = dict(raw.get("kernel", {}))
    sign = kcfg_raw.get("sign_convention", kernels.SIGN_PAPER)
    if overrides.sign_convention:
        sign = {"paper": kernels.SIGN_PAPER, "br": kernels.SIGN_BR}[
            overrides.sign_convention]
    cfg = kernels.KernelConfig(
        quad_tol=float(kcfg_raw.get("quad_tol", tol)),
        start_nodes=start_nodes,
        max_nodes=int(kcfg_raw.get("max_nodes", kernels.KernelConfig.max_nodes)),
        sign_convention=sign,
        h_assignment=kcfg_raw.get("h_assignment", "slot"),
        k12_regime=kcfg_raw.get("k12_regime", "strict"),
        radii=kcfg_raw.get("radii", {}))
    try:
        cfg.validate()
        if spec is not None:
            kernels._resolved_radii(spec, cfg)
    except ValueError as exc:
        problems.append(f"kernel: {exc}")

    seed = int(overrides.seed if overrides.seed is not None
               else raw.get("seed", 0))

    if problems:
        raise ConfigError("; ".join(problems))
    digest = hashlib.sha256(
        json.dumps(raw, sort_keys=True, separators=(",", ":")).encode()).hexdigest()
    return {"raw": raw, "spec": spec, "points": points, "L": L, "tol": tol,
            "kernel_cfg": cfg, "seed": seed, "digest": digest}


def _emit(report, out_path, fmt):
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["T", "method", "value", "imag_defect", "diagnostics"])
        for row in report.get("results", []):
            writer.writerow([json.dumps(row.get("T")), row.get("method"),
                             row.get("value"), row.get("imag_defect"),
                             json.dumps({k: v for k, v in row.items()
                                         if k not in ("T", "method", "value",
                                                      "imag_defect")},
                                        default=str)])
        text = buf.getvalue()
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _battery_report(rows_by_name, digest):
    results = []
    ok = True
    for section, rows in rows_by_name.items():
        if section == "elapsed_s":
            continue
        for row in rows:
            diagnostics = {k: v for k, v in row.items() if k != "value"}
            results.append({"T": None, "method": section, "value": row["value"],
                            "imag_defect": None, "diagnostics": diagnostics,
                            "name": row["name"], "pass": row["pass"]})
            ok = ok and row["pass"]
    return {"config_digest": digest, "results": results, "all_pass": ok}


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="pfschur",
        description="Verification lab for Pfaffian Schur correlation formulas")
    parser.add_argument("command", choices=[
        "verify-symfunc", "verify-macdonald", "verify-partition-function",
        "verify-pfaffian", "correlate", "compare", "sweep-radii"])
    parser.add_argument("--config", required=True, help="JSON config path")
    parser.add_argument("--method", default="oracle",
                        choices=["oracle", "kernel", "q-extraction"])
    parser.add_argument("--out", default=None, help="report path (stdout if omitted)")
    parser.add_argument("--format", default="json", choices=["json", "csv"])
    parser.add_argument("--sweep-radii", action="store_true",
                        help="append a radius sweep to a compare run")
    parser.add_argument("--sign-convention", default=None, choices=["paper", "br"])
    parser.add_argument("--tol", type=float, default=None)
    parser.add_argument("--truncation", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    args = parser.parse_args(argv)

    try:
        cfgd = _load_config(args.config, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    spec, points, cfg = cfgd["spec"], cfgd["points"], cfgd["kernel_cfg"]
    t_start = time.time()
    try:
        if args.command == "verify-symfunc":
            report = _battery_report({"symfunc": verify.battery_symfunc(cfgd["seed"]),
                                      "quadrature": verify.battery_quadrature()},
                                     cfgd["digest"])
        elif args.command == "verify-macdonald":
            report = _battery_report(
                {"eigenrelation": verify.battery_eigenrelation(cfgd["seed"]),
                 "contour_action": verify.battery_contour_action(cfgd["seed"]),
                 "iterated_actions": verify.battery_iterated_actions(cfgd["seed"])},
                cfgd["digest"])
        elif args.command == "verify-partition-function":
            report = _battery_report(
                {"partition_function": verify.battery_partition_function(
                    L=cfgd["L"])}, cfgd["digest"])
        elif args.command == "verify-pfaffian":
            report = _battery_report(
                {"pfaffian": verify.battery_pfaffian(cfgd["seed"])}, cfgd["digest"])
        elif args.command == "correlate":
            results = []
            T = points
            if args.method == "oracle":
                value = measures.correlation_oracle(spec, T, L=cfgd["L"])
                results.append({"T": T.to_json(), "method": "oracle",
                                "value": value, "imag_defect": 0.0,
                                "diagnostics": {"L": cfgd["L"]}})
            elif args.method == "kernel":
                value, info = kernels.correlation_via_kernel(spec, T, cfg,
                                                             full_output=True)
                results.append({"T": T.to_json(), "method": "kernel",
                                "value": value,
                                "imag_defect": info["imag_defect"],
                                "diagnostics": {"defect": info["defect"],
                                                "nodes": info.get("nodes", {})}})
            else:
                if spec.m != 1:
                    raise ConfigError("q-extraction requires a single-level process")
                ts = [t for _, t in T.points]
                value, info = kernels.correlation_via_q_extraction(
                    spec.rho_plus[0], spec.rho_minus[0], ts, cfg, full_output=True)
                results.append({"T": T.to_json(), "method": "q-extraction",
                                "value": value,
                                "imag_defect": info["imag_defect"],
                                "diagnostics": {"rq": info["rq"]}
                                if "rq" in info else {}})
            report = {"config_digest": cfgd["digest"], "results": results}
        elif args.command == "compare":
            cmp_out = verify.compare_methods(spec, points, cfg, L=cfgd["L"])
            results = [{"T": points.to_json(),
                        "imag_defect": r.get("imag_defect"),
                        "diagnostics": {k: v for k, v in r.items()
                                        if k not in ("method", "value",
                                                     "imag_defect")},
                        **r} for r in cmp_out["results"]]
            report = {"config_digest": cfgd["digest"], "results": results,
                      "truncation_diagnostic": cmp_out["truncation_diagnostic"],
                      "sign_adjudication": cmp_out.get("sign_adjudication")}
            if args.sweep_radii:
                report["radius_sweep"] = kernels.radius_sweep(
                    spec, points, cfg, oracle_kwargs={"L": cfgd["L"]})
            kern = next(r for r in report["results"] if r["method"] == "kernel")
            tol = max(1e-3, 10 * report["truncation_diagnostic"])
            report["threshold"] = tol
            if kern["delta_vs_oracle"] >= tol:
                report["verdict"] = "FAIL"
                report["timing"] = {"elapsed_s": time.time() - t_start}
                _emit(report, args.out, args.format)
                return EXIT_THRESHOLD
            report["verdict"] = "PASS"
        else:  # sweep-radii
            report = {"config_digest": cfgd["digest"],
                      "results": [],
                      "radius_sweep": kernels.radius_sweep(
                          spec, points, cfg, oracle_kwargs={"L": cfgd["L"]})}
    except (QuadratureError, ContourConditionError,
            kernels.KernelAssemblyError) as exc:
        print(f"numerical non-convergence: {exc}", file=sys.stderr)
        return EXIT_NUMERICS
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    report["timing"] = {"elapsed_s": time.time() - t_start}
    _emit(report, args.out, args.format)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
