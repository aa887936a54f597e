"""Command-line interface: fit, risk, risk-surface, validate.

Exit codes: 0 ok, 2 input error, 3 fit failure, 4 inadmissible query,
5 validation failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import modelfile
from .errors import (
    Divergent,
    FitFailed,
    InadmissibleQuery,
    InvariantViolation,
    NonConvergent,
    ParameterOutOfRange,
    SupJcirError,
    ZeroVariance,
)
from .estimation import DEFAULT_MAX_LAG, TimeSeries, empirical_acf, empirical_moments, fit_acf, fit_moments
from .mixing import GammaMixing
from .orlicz import (
    Bound,
    OrliczFunction,
    RiskQuery,
    admissibility_check,
    normalized_disutility,
    stationary_log_disutility,
    safe_exp,
)
from .process import model_acf, stationary_moments

EXIT_OK, EXIT_INPUT, EXIT_FIT, EXIT_INADMISSIBLE, EXIT_VALIDATION = 0, 2, 3, 4, 5


class InputError(Exception):
    """Bad command input; maps to exit code 2."""


# -- formatting -------------------------------------------------------------------

def fmt(x):
    """12 significant digits; None -> null; non-finite as strings."""
    if x is None:
        return "null"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        return f'"{x}"'
    return format(x, ".12g")


def to_json(obj, indent=0):
    """Deterministic JSON with 12-significant-digit floats."""
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{inner}"{k}": {to_json(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(to_json(v) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + to_json(v, indent + 1) for v in obj) + "\n" + pad + "]"
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    return fmt(obj)


def _emit(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# -- input --------------------------------------------------------------------------

def read_series(path) -> TimeSeries:
    """CSV with header ``day,value``; ``#`` lines are comments."""
    if not os.path.isfile(path):
        raise InputError(f"input file not found: {path}")
    days, values = [], []
    header_seen = False
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
                continue
            cells = [c.strip() for c in row]
            if not header_seen:
                if [c.lower() for c in cells] != ["day", "value"]:
                    raise InputError(f"row {lineno}: expected header 'day,value', got {','.join(cells)!r}")
                header_seen = True
                continue
            if len(cells) != 2:
                raise InputError(f"row {lineno}: expected 2 columns, got {len(cells)}")
            parsed = []
            for col, name in enumerate(("day", "value"), 1):
                try:
                    v = float(cells[col - 1])
                except ValueError:
                    raise InputError(
                        f"row {lineno}, column {col} ({name}): not a number: {cells[col - 1]!r}"
                    ) from None
                if not math.isfinite(v):
                    raise InputError(f"row {lineno}, column {col} ({name}): not finite")
                parsed.append(v)
            days.append(parsed[0])
            values.append(parsed[1])
    if not header_seen:
        raise InputError("missing 'day,value' header")
    try:
        return TimeSeries(np.array(days), np.array(values), name=os.path.basename(path))
    except InvariantViolation as exc:
        raise InputError(f"{exc.invariant}: {exc}") from None


def _fingerprint(path):
    with open(path, "rb") as fh:
        return "sha256:" + hashlib.sha256(fh.read()).hexdigest()


def load_model(path):
    if not os.path.isfile(path):
        raise InputError(f"model file not found: {path}")
    try:
        return modelfile.read(path)
    except InvariantViolation as exc:
        raise InputError(f"invalid model ({exc.invariant}): {exc}") from None
    except modelfile.ModelFileError as exc:
        raise InputError(f"malformed model file: {exc}") from None


def parse_grid(text):
    """``start:step:count`` -> list of floats."""
    parts = text.split(":")
    if len(parts) != 3:
        raise InputError(f"grid spec must be start:step:count, got {text!r}")
    try:
        start, step, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise InputError(f"bad grid spec {text!r}") from None
    if count < 1 or start < 0 or step < 0:
        raise InputError(f"grid needs count >= 1 and nonnegative start/step, got {text!r}")
    return [start + step * k for k in range(count)]


def _phi(text):
    try:
        return OrliczFunction.parse(text)
    except (ValueError, InvariantViolation) as exc:
        raise InputError(str(exc)) from None


def _query(args, ldiff, ljump):
    try:
        return RiskQuery(args.p, _phi(args.phi), args.q, ldiff, ljump, Bound(args.bound))
    except InvariantViolation as exc:
        raise InputError(f"invalid query ({exc.invariant}): {exc}") from None


# -- commands -----------------------------------------------------------------------

def cmd_fit(args):
    series = read_series(args.input)
    if not 0 < args.y <= 1:
        raise InputError(f"--y must lie in (0, 1], got {args.y}")
    stage = "empirical-acf"
    try:
        acf = empirical_acf(series, args.max_lag)
        stage = "fit-acf"
        theta, omega, resid = fit_acf(acf)
        stage = "empirical-moments"
        emp = empirical_moments(series)
        stage = "fit-moments"
        fit = fit_moments(emp, theta, omega, args.y, include_skew=not args.no_skew)
    except (FitFailed, ZeroVariance, ValueError, SupJcirError) as exc:
        sys.stderr.write(f"fit failed at stage {stage}: {exc}\n")
        return EXIT_FIT
    prov = {
        "y": float(args.y),
        "error_metric": float(fit.error_metric),
        "include_skew": bool(fit.include_skew),
        "acf_residual": float(resid),
        "data": _fingerprint(args.input),
    }
    text = modelfile.dumps(modelfile.ModelFile(fit.model, prov))
    modelfile.write(args.out, modelfile.loads(text))
    # report quantities are recomputed from the written file
    model = modelfile.read(args.out).model
    th = stationary_moments(model)
    j = model.jumps
    report = {
        "model_file": args.out,
        "parameters": {
            "a": model.a,
            "sigma": model.sigma,
            "mu": getattr(j, "mu", 0.0),
            "beta": getattr(j, "beta", None),
            "theta": model.mixing.theta,
            "omega": model.mixing.omega,
            "R": model.R,
            "y": args.y,
        },
        "moments": {
            "empirical": {"mean": emp.mean, "variance": emp.variance, "skewness": emp.skewness},
            "model": {"mean": th.mean, "variance": th.variance, "skewness": th.skewness},
            "relative_error": {
                "mean": (th.mean - emp.mean) / emp.mean,
                "variance": (th.variance - emp.variance) / emp.variance,
                "skewness": (th.skewness - emp.skewness) / emp.skewness if emp.skewness else None,
            },
        },
        "error_metric": fit.error_metric,
        "include_skew": fit.include_skew,
        "acf_residual": resid,
        "acf": [{"lag": h, "empirical": v, "model": model_acf(model, h)} for h, v in acf],
    }
    _emit(to_json(report) + "\n", args.report)
    return EXIT_OK


def _risk_report(model, query):
    r = normalized_disutility(model, query)
    return {
        "bound": query.bound.value,
        "p": query.p,
        "phi": str(query.phi),
        "q": query.q,
        "lambda_diff": query.lambda_diff,
        "lambda_jump": query.lambda_jump,
        "log_disutility": r.log_disutility,
        "disutility": r.disutility,
        "baseline_log_disutility": r.baseline_log_disutility,
        "baseline": r.baseline,
        "U": r.normalized_U,
        "xi": r.xi,
        "acf_theta_eff": r.acf_theta_eff,
        "acf_omega": r.acf_omega,
        "acf_rates": list(r.distorted_rates) if r.distorted_rates is not None else None,
        "A": r.normalized_A,
        "V": r.normalized_V,
        "entropy_diff": r.entropy_diff,
        "entropy_jump": r.entropy_jump,
        "notes": list(r.notes),
    }


def _inadmissible(reason, message):
    sys.stderr.write(f"inadmissible query: {reason}: {message}\n")
    return EXIT_INADMISSIBLE


def cmd_risk(args):
    model = load_model(args.model).model
    query = _query(args, args.ldiff, args.ljump)
    verdict = admissibility_check(model, query)
    if not verdict:
        return _inadmissible(verdict.reason.value, verdict.message)
    try:
        report = _risk_report(model, query)
    except Divergent as exc:
        return _inadmissible("Divergent", str(exc))
    _emit(to_json(report) + "\n", args.out)
    return EXIT_OK


def _surface_cell(payload):
    model, query, base = payload
    verdict = admissibility_check(model, query)
    if not verdict:
        return None, None, "divergent"
    try:
        tau = stationary_log_disutility(model, query, check=False)
    except (Divergent, NonConvergent, ParameterOutOfRange):
        return None, None, "divergent"
    return tau, safe_exp(tau - base), "ok"


def workers_from_env(requested=None):
    cap = os.environ.get("ORLICZ_WORKERS")
    n = requested if requested else (os.cpu_count() or 1)
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise InputError(f"ORLICZ_WORKERS must be an integer, got {cap!r}") from None
    return max(1, n)


def risk_surface(model, template, ldiffs, ljumps, workers=1):
    """Rows (lambda_diff, lambda_jump, U, log_disutility, status), row-major."""
    base = stationary_log_disutility(model, template, baseline=True, check=False)
    cells = [(model, template.with_lambdas(ld, lj), base) for ld in ldiffs for lj in ljumps]
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_surface_cell, cells, chunksize=max(1, len(cells) // (4 * workers))))
    else:
        results = [_surface_cell(c) for c in cells]
    return [(c[1].lambda_diff, c[1].lambda_jump, U, tau, status) for c, (tau, U, status) in zip(cells, results)]


def cmd_risk_surface(args):
    model = load_model(args.model).model
    ldiffs, ljumps = parse_grid(args.ldiff_grid), parse_grid(args.ljump_grid)
    template = _query(args, ldiffs[0], ljumps[0])
    verdict = admissibility_check(model, template)
    if not verdict:
        return _inadmissible(verdict.reason.value, verdict.message)
    rows = risk_surface(model, template, ldiffs, ljumps, workers_from_env(args.workers))
    lines = ["lambda_diff,lambda_jump,U,log_disutility,status"]
    for ld, lj, U, tau, status in rows:
        if status == "ok":
            u_text = fmt(U) if math.isfinite(U) else "inf"
            lines.append(f"{fmt(ld)},{fmt(lj)},{u_text},{fmt(tau)},ok")
        else:
            lines.append(f"{fmt(ld)},{fmt(lj)},,,{status}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_validate(args):
    from . import validation

    models = None
    if args.model:
        models = {os.path.basename(args.model): load_model(args.model).model}
    checks = validation.run_all(models, tol=args.tol)
    for c in checks:
        print(c.line())
    failed = [c.name for c in checks if not c.passed]
    if failed:
        sys.stderr.write(f"validation failed: {', '.join(failed)}\n")
        return EXIT_VALIDATION
    print(f"all {len(checks)} checks passed")
    return EXIT_OK


# -- entry point ----------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="supjcir", description="supJCIR models and robust Orlicz risk bounds")
    sub = ap.add_subparsers(dest="command", required=True)

    f = sub.add_parser("fit", help="fit a Gamma-mixed model to a day,value CSV")
    f.add_argument("--input", required=True)
    f.add_argument("--y", type=float, required=True, help="diffusive share of the mean, in (0, 1]")
    f.add_argument("--no-skew", action="store_true", help="drop the skewness term from the moment metric")
    f.add_argument("--max-lag", type=int, default=DEFAULT_MAX_LAG, help="ACF lags in sampling steps")
    f.add_argument("--out", required=True, help="model file to write")
    f.add_argument("--report", default=None, help="fit report path (default: stdout)")
    f.set_defaults(func=cmd_fit)

    def risk_args(p):
        p.add_argument("--model", required=True)
        p.add_argument("--p", type=float, required=True)
        p.add_argument("--phi", default="identity", help="identity | pow:m | powinv:m | exp:m")
        p.add_argument("--q", type=float, required=True)
        p.add_argument("--bound", choices=("upper", "lower"), required=True)

    r = sub.add_parser("risk", help="stationary risk report for one query")
    risk_args(r)
    r.add_argument("--ldiff", type=float, default=0.0)
    r.add_argument("--ljump", type=float, default=0.0)
    r.add_argument("--out", default=None)
    r.set_defaults(func=cmd_risk)

    s = sub.add_parser("risk-surface", help="normalized disutility over a lambda grid")
    risk_args(s)
    s.add_argument("--ldiff-grid", required=True, help="start:step:count")
    s.add_argument("--ljump-grid", required=True, help="start:step:count")
    s.add_argument("--workers", type=int, default=None)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_risk_surface)

    v = sub.add_parser("validate", help="run the analytic cross-checks")
    v.add_argument("--model", default=None)
    v.add_argument("--tol", type=float, default=None, help="override every tolerance")
    v.set_defaults(func=cmd_validate)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except InadmissibleQuery as exc:
        return _inadmissible(exc.reason.value, str(exc))


if __name__ == "__main__":
    sys.exit(main())
