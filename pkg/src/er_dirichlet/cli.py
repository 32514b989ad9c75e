"""Command-line front end: ``er-dirichlet {verify,sweep,surface,series,probe}``.

Exit codes: 0 every check passed, 1 a check failed, 2 domain or usage
error (a JSON error object is printed), 3 file could not be written.
"""

import argparse
import csv
import io
import itertools
import json
import math
import os
import re
import sys
from pathlib import Path

import numpy as np

from . import functional_equation as fe
from . import identities as ids
from . import surfaces as surf
from .errors import DomainError, NonFiniteError
from .series import Family, eval_series, probe_oscillation, probe_sigma_limit

EXIT_PASS, EXIT_FAIL, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3


class UsageError(DomainError):
    code = "usage"


# ---------------------------------------------------------------------------
# parsing helpers


def parse_complex(text):
    """``RE+IMi`` literals such as ``-2.5+1.3i``, ``0.5i`` or ``-1``."""
    t = text.strip().replace(" ", "")
    if t.endswith("i"):
        t = t[:-1] + "j"
    try:
        z = complex(t)
    except ValueError:
        raise UsageError(f"not a complex literal: {text!r}", text) from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise UsageError(f"complex literal must be finite: {text!r}", text)
    return z


def parse_real(text):
    try:
        v = float(text)
    except ValueError:
        raise UsageError(f"not a number: {text!r}", text) from None
    if not math.isfinite(v):
        raise UsageError(f"number must be finite: {text!r}", text)
    return v


_RANGE = re.compile(r"^([^:]+):([^:]+)(?::(\d+))?$")


def parse_axis(text, complex_values=False):
    """``lo:hi:n`` (inclusive linspace), ``lo:hi`` (for random sweeps) or a comma list.

    Returns ``("grid", values)`` or ``("range", (lo, hi))``.
    """
    m = _RANGE.match(text.strip())
    if m and not complex_values:
        lo, hi = parse_real(m.group(1)), parse_real(m.group(2))
        if m.group(3) is None:
            return "range", (lo, hi)
        n = int(m.group(3))
        if n < 1:
            raise UsageError("grid needs at least one point", text)
        return "grid", np.linspace(lo, hi, n).tolist()
    conv = parse_complex if complex_values else parse_real
    return "grid", [conv(p) for p in text.split(",") if p]


def _jsonable(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, float) and not math.isfinite(v):
        return "inf" if v > 0 else ("-inf" if v < 0 else "nan")
    if isinstance(v, (np.floating, np.integer)):
        return _jsonable(v.item())
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    return str(v)


def dumps(obj):
    return json.dumps(_jsonable(obj), indent=2, allow_nan=False) + "\n"


def error_object(exc):
    return {"code": getattr(exc, "code", "domain_error"), "message": str(exc),
            "offending_input": _jsonable(getattr(exc, "offending_input", None))}


def worker_count():
    raw = os.environ.get("ER_DIRICHLET_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise UsageError("ER_DIRICHLET_THREADS must be an integer >= 1", raw)
    return n


# ---------------------------------------------------------------------------
# checks by name

CHECK_PARAMS = {
    "prop1": ("x", "y"),
    "prop2": ("zeta",),
    "prop3": ("x", "y", "theta"),
    "prop4": ("t",),
    "prop5": ("zeta",),
    "prop6": ("t",),
    "log": ("x", "y"),
    "product": ("X", "A"),
    "entry11": ("X", "A"),
    "telescope": ("X",),
    "funceq": ("s", "a"),
}
COMPLEX_PARAMS = {"zeta", "s"}


def run_check(name, p, terms, tol):
    """Dispatch one named check; returns a report object with ``to_dict`` and ``passed``."""
    if name == "prop1":
        return ids.check_prop1(p["x"], p["y"], terms, tol)
    if name == "prop2":
        return surf.check_prop2(p["zeta"], terms, tol)
    if name == "prop3":
        return ids.check_prop3_twisted(p["x"], p["y"], p["theta"], terms, tol)
    if name == "prop4":
        return ids.check_prop4_helicoid(p["t"], tol)
    if name == "prop5":
        return surf.check_prop5(p["zeta"], tol)
    if name == "prop6":
        return ids.check_prop6(p["t"], terms, tol)
    if name == "log":
        return ids.check_log_identity(p["x"], p["y"], terms, tol)
    if name == "product":
        return ids.er_product_check(p["X"], p["A"], terms, tol)
    if name == "entry11":
        return ids.check_entry11(p["X"], p["A"], terms, tol)
    if name == "telescope":
        return ids.check_arctan_telescope(p["X"], terms, tol)
    if name == "funceq":
        return fe.prop7_compare(p["s"], p["a"], tol)
    raise UsageError(f"unknown check {name!r}", name)


def _sweep_job(job):
    name, p, terms, tol = job
    try:
        rep = run_check(name, p, terms, tol)
    except (DomainError, NonFiniteError) as exc:
        return False, error_object(exc)
    return rep.passed, rep.to_dict()


# ---------------------------------------------------------------------------
# output


def _flatten(d):
    row = {}
    for k, v in d.items():
        if k in ("notes", "details", "per_term_table"):
            continue
        if k == "inputs":
            for ik, iv in v.items():
                if isinstance(iv, dict):
                    row[f"{ik}_re"], row[f"{ik}_im"] = iv["re"], iv["im"]
                else:
                    row[ik] = iv
        elif isinstance(v, dict) and set(v) == {"re", "im"}:
            row[f"{k}_re"], row[f"{k}_im"] = v["re"], v["im"]
        else:
            row[k] = v
    return row


def to_csv(rows):
    buf = io.StringIO()
    flat = [_flatten(_jsonable(r)) for r in rows]
    if flat:
        w = csv.DictWriter(buf, fieldnames=list(flat[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(flat)
    return buf.getvalue()


def emit(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# subcommands


def _point_params(args, name):
    p = {}
    for key in CHECK_PARAMS[name]:
        raw = getattr(args, key, None)
        if raw is None:
            raise UsageError(f"verify {name} needs --{key}", key)
        p[key] = parse_complex(raw) if key in COMPLEX_PARAMS else parse_real(raw)
    return p


def cmd_verify(args):
    p = _point_params(args, args.name)
    tol = args.tol if args.tol is not None else (1e-7 if args.name == "funceq" else 1e-6)
    rep = run_check(args.name, p, args.terms, tol)
    emit(dumps(rep.to_dict()), args.output)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _sweep_axes(args):
    name = args.name
    keys = list(CHECK_PARAMS[name])
    polar = name in ("prop2", "prop5") and args.zeta is None
    if polar:
        keys = ["r", "phi"]
    axes = []
    for key in keys:
        raw = getattr(args, key, None)
        if raw is None:
            raise UsageError(f"sweep {name} needs --{key}", key)
        axes.append((key, parse_axis(raw, complex_values=key in COMPLEX_PARAMS)))
    return axes, polar


def _sweep_points(args):
    axes, polar = _sweep_axes(args)
    if args.random is not None:
        if args.random < 1:
            raise UsageError("--random needs a positive count", args.random)
        rng = np.random.default_rng(args.seed)
        cols = []
        for key, (kind, val) in axes:
            if kind == "range":
                cols.append(rng.uniform(val[0], val[1], args.random).tolist())
            else:
                cols.append([val[i] for i in rng.integers(0, len(val), args.random)])
        combos = list(zip(*cols))
    else:
        for key, (kind, _) in axes:
            if kind == "range":
                raise UsageError(f"--{key} needs lo:hi:n or a list unless --random is given", key)
        combos = list(itertools.product(*[val for _, (_, val) in axes]))
    points = []
    for combo in combos:
        p = dict(zip([k for k, _ in axes], combo))
        if polar:
            r, phi = p.pop("r"), p.pop("phi")
            p["zeta"] = complex(r * math.cos(phi), r * math.sin(phi))
        points.append(p)
    return points


def cmd_sweep(args):
    tol = args.tol if args.tol is not None else (1e-7 if args.name == "funceq" else 1e-6)
    jobs = [(args.name, p, args.terms, tol) for p in _sweep_points(args)]
    workers = worker_count()
    if workers > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_sweep_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_sweep_job(j) for j in jobs]
    rows, invalid, all_pass = [], [], True
    for (name, p, _, _), (ok, payload) in zip(jobs, results):
        if "code" in payload and "check_name" not in payload:
            invalid.append({"inputs": p, "error": payload})
            continue
        rows.append(payload)
        all_pass &= ok
    if invalid and (not args.skip_invalid or not rows):
        first = invalid[0]
        err = dict(first["error"])
        if not rows:
            err["message"] = "every grid point is invalid: " + err["message"]
        err["offending_input"] = _jsonable(first["inputs"])
        sys.stdout.write(dumps(err))
        return EXIT_DOMAIN
    if invalid:
        print(f"skipped {len(invalid)} invalid grid point(s)", file=sys.stderr)
    text = to_csv(rows) if args.format == "csv" else dumps(rows)
    emit(text, args.output)
    return EXIT_PASS if all_pass else EXIT_FAIL


def write_obj(mesh):
    lines = [f"v {x!r} {y!r} {z!r}" for x, y, z in mesh.vertices.tolist()]
    lines += ["f " + " ".join(str(i + 1) for i in face) for face in mesh.faces.tolist()]
    return "\n".join(lines) + "\n"


def write_mesh_csv(mesh):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["u", "v", "x", "y", "z", "residual", "valid"])
    for (u, v), (x, y, z), r, ok in zip(mesh.param_coords.tolist(), mesh.vertices.tolist(),
                                        mesh.residuals.tolist(), mesh.valid.tolist()):
        w.writerow([repr(u), repr(v), repr(x), repr(y), repr(z), repr(r), int(ok)])
    return buf.getvalue()


def _region(args, surface):
    (u0, u1), (v0, v1) = surf.default_region(surface)
    if args.r is not None:
        if surface is not surf.Surface.SCHERK_WE:
            raise UsageError("--r applies to scherk-we only", args.r)
        u0, u1, v0, v1 = -args.r, args.r, -args.r, args.r
    for key, axis in (("u", 0), ("v", 1)):
        raw = getattr(args, key)
        if raw is not None:
            kind, val = parse_axis(raw)
            if kind != "range":
                raise UsageError(f"--{key} takes lo:hi", raw)
            if axis == 0:
                u0, u1 = val
            else:
                v0, v1 = val
    return (u0, u1), (v0, v1)


def cmd_surface(args):
    surface = surf.Surface(args.surface)
    params = surf.ThetaFamilyParams(args.theta)
    mesh = surf.sample_mesh(surface, params, _region(args, surface), args.nu, args.nv,
                            args.residual, K=args.terms, tol=args.tol or 1e-6,
                            workers=worker_count())
    valid_res = mesh.residuals[mesh.valid]
    summary = {
        "surface": surface.value,
        "residual": args.residual,
        "vertices": int(len(mesh.vertices)),
        "faces": int(len(mesh.faces)),
        "valid_vertices": int(mesh.valid.sum()),
        "max_residual": float(valid_res.max()) if valid_res.size else 0.0,
        "output": args.output,
    }
    if args.format == "obj":
        body = write_obj(mesh)
    elif args.format == "csv":
        body = write_mesh_csv(mesh)
    else:
        body = None
    if body is None:
        summary["mesh"] = {"vertices": mesh.vertices.tolist(), "faces": mesh.faces.tolist(),
                           "residuals": mesh.residuals.tolist(),
                           "valid": mesh.valid.tolist()}
        emit(dumps(summary), args.output)
        return EXIT_PASS
    emit(body, args.output)
    if args.format == "obj" and args.output is not None and args.residual != "none":
        sidecar = str(Path(args.output).with_suffix(".csv"))
        emit(write_mesh_csv(mesh), sidecar)
        summary["sidecar"] = sidecar
    out = sys.stdout if args.output is not None else sys.stderr
    out.write(dumps(summary))
    return EXIT_PASS


def cmd_series(args):
    s = parse_complex(args.s)
    res = eval_series(Family(args.family), s, parse_real(args.param))
    out = {"family": args.family, "s": s, "param": parse_real(args.param),
           "value_re": res.value.real, "value_im": res.value.imag,
           "terms_used": res.terms_used, "tail_bound": res.tail_bound}
    emit(dumps(out), args.output)
    return EXIT_PASS


def cmd_probe(args):
    a = parse_real(args.a)
    sigmas = parse_axis(args.sigma)[1]
    samples, ok = [], True
    if args.kind == "sigma-limit":
        for sg in sigmas:
            res, bound = probe_sigma_limit(a, sg)
            dev = abs(res.value - a)
            passed = dev <= bound
            ok &= passed
            samples.append({"sigma": sg, "value_re": res.value.real, "value_im": res.value.imag,
                            "deviation": dev, "bound": bound, "pass": passed})
    else:
        if args.t is None:
            raise UsageError("probe oscillation needs --t", "t")
        ts = parse_axis(args.t)[1]
        for sg in sigmas:
            for t, v in zip(ts, probe_oscillation(a, sg, ts)):
                samples.append({"sigma": sg, "t": t, "value_re": v.real, "value_im": v.imag,
                                "abs": abs(v)})
    emit(dumps(samples), args.output)
    return EXIT_PASS if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parser


def _add_param_flags(p):
    for key in ("x", "y", "theta", "t", "X", "A", "zeta", "s", "a"):
        kind = "complex RE+IMi" if key in COMPLEX_PARAMS else "real"
        p.add_argument(f"--{key}", help=f"{kind} value")


def build_parser():
    parser = argparse.ArgumentParser(prog="er-dirichlet",
                                     description="Numerical checks of Euler-Ramanujan "
                                                 "Dirichlet-series identities.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--terms", type=int, default=10_000, help="number of product/sum terms K")
    common.add_argument("--tol", type=float, default=None, help="absolute tolerance")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    v = sub.add_parser("verify", parents=[common], help="run one check")
    v.add_argument("name", choices=sorted(CHECK_PARAMS))
    _add_param_flags(v)
    v.set_defaults(func=cmd_verify)

    sw = sub.add_parser("sweep", parents=[common], help="run a check over a grid",
                        description="Axes take lo:hi:n, a comma list, or lo:hi with --random. "
                                    "prop2/prop5 sweep zeta = r e^(i phi) via --r and --phi "
                                    "unless --zeta lists values.")
    sw.add_argument("name", choices=sorted(CHECK_PARAMS))
    _add_param_flags(sw)
    sw.add_argument("--r")
    sw.add_argument("--phi")
    sw.add_argument("--skip-invalid", action="store_true")
    sw.add_argument("--random", type=int, help="draw this many uniform points instead of a grid")
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--format", choices=("json", "csv"), default="json")
    sw.set_defaults(func=cmd_sweep)

    su = sub.add_parser("surface", help="sample a surface mesh")
    su.add_argument("surface", choices=[k.value for k in surf.Surface])
    su.add_argument("--theta", type=float, default=math.pi / 2)
    su.add_argument("--r", type=float, help="half-width of the square zeta region (scherk-we)")
    su.add_argument("--u", help="first parameter range lo:hi")
    su.add_argument("--v", help="second parameter range lo:hi")
    su.add_argument("--nu", type=int, default=32)
    su.add_argument("--nv", type=int, default=32)
    su.add_argument("--residual", choices=[k.value for k in surf.Residual], default="none")
    su.add_argument("--terms", type=int, default=100_000)
    su.add_argument("--tol", type=float, default=None)
    su.add_argument("--format", choices=("obj", "csv", "json"), default="obj")
    su.add_argument("-o", "--output")
    su.set_defaults(func=cmd_surface)

    se = sub.add_parser("series", help="evaluate one series")
    se.add_argument("--family", choices=[f.value for f in Family], required=True)
    se.add_argument("--s", required=True)
    se.add_argument("--param", required=True)
    se.add_argument("-o", "--output")
    se.set_defaults(func=cmd_series)

    pr = sub.add_parser("probe", help="behaviour of L(s, a) for large |s|")
    pr.add_argument("kind", choices=("sigma-limit", "oscillation"))
    pr.add_argument("--a", required=True)
    pr.add_argument("--sigma", required=True)
    pr.add_argument("--t")
    pr.add_argument("-o", "--output")
    pr.set_defaults(func=cmd_probe)
    return parser


_NEG_VALUE = re.compile(r"^-[\d.]")


def _join_negative_values(argv):
    # argparse reads "-1:1:11" or "-2.5+1.3i" as an option; glue such values to their flag
    out = []
    for tok in argv:
        if (out and _NEG_VALUE.match(tok) and out[-1].startswith("--")
                and "=" not in out[-1]):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None):
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "terms", 1) < 1:
            raise UsageError("--terms must be >= 1", args.terms)
        if getattr(args, "tol", None) is not None and not args.tol > 0:
            raise UsageError("--tol must be > 0", args.tol)
        return args.func(args)
    except (DomainError, NonFiniteError) as exc:
        sys.stdout.write(dumps(error_object(exc)))
        return EXIT_DOMAIN
    except OSError as exc:
        sys.stdout.write(dumps({"code": "io_error", "message": str(exc),
                                "offending_input": getattr(exc, "filename", None)}))
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
