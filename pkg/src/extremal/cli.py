"""Command-line front-end: evaluation, coefficient dumps, bounds, verification.

Output discipline: every command builds its complete output text first and
writes it in one step (stdout or --out), so a usage or parse error never
leaves a partial file behind.  CSV cells use shortest round-trip decimal
formatting; JSON is serialized with sorted keys so reruns with identical
flags and seed are byte-identical.

Exit codes: 0 pass, 1 check failure, 2 usage error, 3 numeric
non-convergence.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import forms, kernels, measures, periodic, polybound, superposed, verify
from .errors import AdmissibilityError, ConvergenceError, DivergenceError, DomainError

EVAL_KINDS = ("L", "M", "Lhat", "Mhat", "p", "q", "G", "H", "U")
COEFF_KINDS = ("l", "m", "g", "h", "uN")
BOUND_KINDS = ("hls", "form", "et")


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(c) for c in row])
    return buf.getvalue()


def _json_text(obj):
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def _parse_grid(spec):
    parts = spec.split(":")
    if len(parts) != 3:
        raise DomainError(f"grid must be 'a:b:n', got {spec!r}")
    try:
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise DomainError(f"grid must be 'a:b:n' with numeric parts, got {spec!r}")
    if n < 1:
        raise DomainError(f"grid point count must be >= 1, got {n}")
    return np.linspace(a, b, n)


def _parse_measure(spec):
    if spec is None:
        raise DomainError("this kind requires --measure")
    if spec == "haar":
        return measures.HaarLog()
    if spec.startswith("power:"):
        try:
            sigma = float(spec[len("power:"):])
        except ValueError:
            raise DomainError(f"bad power-law measure spec {spec!r}")
        return measures.PowerLaw(sigma)
    if spec.startswith("atomic:"):
        return measures.atomic_from_csv(spec[len("atomic:"):])
    if spec.startswith("weight:"):
        return measures.weight_from_csv(spec[len("weight:"):])
    raise DomainError(
        f"unknown measure {spec!r}; use haar, power:sigma, "
        "atomic:file.csv or weight:file.csv")


def _need_lambda(args):
    if args.lam is None:
        raise DomainError(f"kind {args.kind!r} requires --lambda")
    return args.lam


def _coeffs_from_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["re", "im"]:
            raise DomainError(f"{path}: expected header 're,im'")
        vals = []
        for ln, line in enumerate(reader, start=2):
            if not line:
                continue
            if len(line) != 2:
                raise DomainError(f"{path}:{ln}: malformed row {line!r}")
            try:
                vals.append(complex(float(line[0]), float(line[1])))
            except ValueError:
                raise DomainError(f"{path}:{ln}: non-numeric row {line!r}")
    if not vals:
        raise DomainError(f"{path}: no data rows")
    return np.asarray(vals)


# -- eval ------------------------------------------------------------------


def _eval_columns(args):
    """Return (values, target or None) on the grid for the requested kind."""
    xs = _parse_grid(args.grid)
    kind = args.kind
    tol = args.tol if args.tol is not None else 1e-9
    target = None
    if kind == "L":
        lam = _need_lambda(args)
        vals = kernels.minorant_values(lam, xs)
        target = np.exp(-lam * np.abs(xs))
    elif kind == "M":
        lam = _need_lambda(args)
        vals = kernels.majorant_values(lam, xs)
        target = np.exp(-lam * np.abs(xs))
    elif kind == "Lhat":
        vals = kernels.eval_Lhat(_need_lambda(args), xs)
    elif kind == "Mhat":
        vals = kernels.eval_Mhat(_need_lambda(args), xs)
    elif kind == "p":
        vals = periodic.eval_p(_need_lambda(args), xs)
    elif kind == "q":
        mu = _parse_measure(args.measure)
        vals = np.array([
            math.inf if measures.is_plus_inf(v) else float(v)
            for v in (periodic.q_mu(mu, float(x), tol=tol) for x in xs)])
    elif kind in ("G", "H"):
        mu = _parse_measure(args.measure)
        cls = superposed.Minorant if kind == "G" else superposed.Majorant
        obj = cls(mu, args.delta)
        vals = obj.value(xs)
        if args.with_target:
            target = np.array([
                math.inf if measures.is_plus_inf(t) else float(t)
                for t in (obj.target(float(x)) for x in xs)])
    else:  # U
        vals = superposed.eval_U(xs)
        with np.errstate(divide="ignore"):
            target = np.log(np.abs(xs))
    return xs, np.asarray(vals, dtype=float), target


def cmd_eval(args, argv):
    xs, vals, target = _eval_columns(args)
    signed = -1.0 if args.kind in ("L", "G") else 1.0
    if args.with_target:
        if target is None:
            raise DomainError(
                f"--with-target is not defined for kind {args.kind!r}")
        defect = signed * (vals - target)
    if args.format == "csv":
        if args.with_target:
            rows = zip(xs.tolist(), vals.tolist(), target.tolist(),
                       defect.tolist())
            return _csv_text(("x", "value", "target", "defect"), rows), 0
        return _csv_text(("x", "value"), zip(xs.tolist(), vals.tolist())), 0
    rows = []
    for i in range(xs.size):
        row = {"x": float(xs[i]), "value": float(vals[i])}
        if args.with_target:
            row["target"] = float(target[i])
            row["defect"] = float(defect[i])
        rows.append(row)
    params = {"kind": args.kind, "grid": args.grid, "delta": args.delta}
    if args.lam is not None:
        params["lambda"] = args.lam
    if args.measure is not None:
        params["measure"] = args.measure
    report = {
        "command": "extremal " + " ".join(argv),
        "seed": args.seed,
        "results": {"params": params, "rows": rows},
        "checks": [],
    }
    return _json_text(report), 0


# -- coeffs ----------------------------------------------------------------


def cmd_coeffs(args, argv):
    if args.N is None:
        raise DomainError("coeffs requires --N")
    tol = args.tol if args.tol is not None else 1e-10
    kind = args.kind
    if kind == "l":
        poly = periodic.trig_minorant_l(_need_lambda(args), args.N)
    elif kind == "m":
        poly = periodic.trig_majorant_m(_need_lambda(args), args.N)
    elif kind == "g":
        poly = periodic.trig_minorant_g(_parse_measure(args.measure), args.N,
                                        tol=tol)
    elif kind == "h":
        poly = periodic.trig_majorant_h(_parse_measure(args.measure), args.N,
                                        tol=tol)
    else:
        poly = periodic.log_sin_majorant(args.N, tol=tol)
    if args.format == "csv":
        return poly.to_csv_text(), 0
    return json.dumps(poly.to_json_obj(), indent=1) + "\n", 0


# -- bounds ----------------------------------------------------------------


def _kv_rows(payload):
    rows = []
    for key in sorted(payload):
        val = payload[key]
        if isinstance(val, (list, tuple)):
            for i, vi in enumerate(val):
                rows.append((f"{key}[{i}]", vi))
        else:
            rows.append((key, val))
    return rows


def _bounds_report(args, argv, results, checks):
    code = 0 if all(c["pass"] for c in checks) else 1
    if args.format == "csv":
        return _csv_text(("key", "value"), _kv_rows(results)), code
    report = {
        "command": "extremal " + " ".join(argv),
        "seed": args.seed,
        "results": results,
        "checks": checks,
    }
    return _json_text(report), code


def cmd_bounds(args, argv):
    tol = args.tol if args.tol is not None else 1e-10
    if args.kind == "hls":
        if args.sigma is None:
            raise DomainError("bounds --kind hls requires --sigma")
        h = forms.hls_constants(args.sigma, args.delta)
        results = {
            "kind": "hls",
            "sigma": args.sigma,
            "delta": args.delta,
            "lower": h.lower,
            "upper": h.upper,
            "continuity_extension": h.continuity_extension,
        }
        return _bounds_report(args, argv, results, [])
    if args.kind == "form":
        if args.points is None:
            raise DomainError("bounds --kind form requires --points")
        mu = _parse_measure(args.measure)
        xi, a = forms.points_from_csv(args.points)
        if args.coeffs is not None:
            a = _coeffs_from_csv(args.coeffs)
            if a.size != xi.size:
                raise DomainError(
                    f"{args.coeffs}: {a.size} coefficients for {xi.size} points")
        ps = forms.PointSet(tuple(xi.tolist()), args.delta)
        rep = forms.form_report(mu, args.delta, ps, a, tol=tol)
        energy = float(np.sum(np.abs(a) ** 2))
        results = {"kind": "form", "measure": args.measure,
                   "delta": args.delta, "n_points": int(xi.size)}
        results.update(rep)
        checks = [{
            "name": "form-lower-bound",
            "pass": bool(rep["slack"] >= -1e-9 * energy),
            "observed": rep["slack"],
            "expected": ">= -1e-9 * energy",
            "tol": 1e-9,
        }]
        return _bounds_report(args, argv, results, checks)
    if args.roots is None:
        raise DomainError("bounds --kind et requires --roots")
    if args.N is None:
        raise DomainError("bounds --kind et requires --N")
    roots = polybound.roots_from_csv(args.roots)
    rep = polybound.bound_report(roots, args.N)
    results = {"kind": "et"}
    results.update(rep)
    checks = [{
        "name": "et-soundness",
        "pass": bool(rep["slack"] >= -1e-9),
        "observed": rep["slack"],
        "expected": "bound >= sup_estimate",
        "tol": 1e-9,
    }]
    return _bounds_report(args, argv, results, checks)


# -- verify ----------------------------------------------------------------


def cmd_verify(args, argv):
    report = verify.run_suite(args.suite, seed=args.seed,
                              command="extremal " + " ".join(argv))
    code = 0 if all(c["pass"] for c in report["checks"]) else 1
    if args.format == "csv":
        rows = [(c["name"], c["pass"], c["observed"], c["expected"], c["tol"])
                for c in report["checks"]]
        return _csv_text(("name", "pass", "observed", "expected", "tol"),
                         rows), code
    return _json_text(report), code


# -- wiring ----------------------------------------------------------------


def _add_common(p, default_format):
    p.add_argument("--out", help="write output to this path instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default=default_format)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--delta", type=float, default=1.0)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="extremal",
        description="Extremal band-limited majorants/minorants: evaluation, "
                    "coefficients, sharp constants, verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a kernel/transform/periodization")
    p.add_argument("--kind", required=True, choices=EVAL_KINDS)
    p.add_argument("--grid", required=True, help="a:b:n inclusive grid")
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--measure", default=None,
                   help="haar | power:sigma | atomic:f.csv | weight:f.csv")
    p.add_argument("--with-target", action="store_true")
    _add_common(p, "csv")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("coeffs", help="dump trigonometric polynomial coefficients")
    p.add_argument("--kind", required=True, choices=COEFF_KINDS)
    p.add_argument("--N", type=int, default=None)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--measure", default=None)
    _add_common(p, "csv")
    p.set_defaults(fn=cmd_coeffs)

    p = sub.add_parser("bounds", help="compute sharp constants and verdicts")
    p.add_argument("--kind", required=True, choices=BOUND_KINDS)
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--measure", default=None)
    p.add_argument("--points", default=None, help="CSV with header xi,re,im")
    p.add_argument("--coeffs", default=None,
                   help="optional CSV re,im overriding coefficient columns")
    p.add_argument("--roots", default=None, help="CSV with header re,im")
    p.add_argument("--N", type=int, default=None)
    _add_common(p, "json")
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(verify.SUITES))
    _add_common(p, "json")
    p.set_defaults(fn=cmd_verify)

    return parser


def _fuse_grid(argv):
    """Turn '--grid a:b:n' into '--grid=a:b:n' so a negative a parses."""
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--grid" and i + 1 < len(argv):
            out.append("--grid=" + argv[i + 1])
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None):
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(_fuse_grid(argv))
    try:
        text, code = args.fn(args, argv)
    except (DomainError, AdmissibilityError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, DivergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
