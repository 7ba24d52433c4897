"""Command-line front end: parse matrices, dispatch, emit reports.

Exit codes: 0 when the computation ran and the checked property holds,
1 when it ran and the property fails (the report carries the witness),
2 for unusable input or bad usage.  Reports are JSON by default; the text
format is a rounded human-readable view, never the machine interface.
"""

import argparse
import csv
import hashlib
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .applications import (
    find_midpoints,
    generate,
    metric_transform,
    packing_bound,
    packing_radius,
    villani_gap,
)
from .certifier import (
    certify_kappa,
    max_kappa,
    min_quadruple_size,
    threads_from_env,
)
from .comparison import WeightedStar, lss_form, quadruple_defect, sturm_slack
from .errors import (
    BetweennessError,
    CurvkitError,
    GramIndefiniteError,
    MetricValidationError,
    NoLowerBoundError,
    NotEqualityCaseError,
    UndefinedAngleError,
)
from .metric_core import perimeter_and_size, trace_geodesic, validate_metric
from .rigidity import comparison_gap, embed_star, realize_flat_quadruple

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------- input


def _read_bytes(path):
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _is_number(token):
    try:
        float(token)
        return True
    except ValueError:
        return False


def _parse_matrix_text(text):
    """CSV matrix with optional leading label row/column; returns (labels, rows)."""
    rows = [r for r in csv.reader(io.StringIO(text)) if any(c.strip() for c in r)]
    if not rows:
        raise ValueError("empty input")
    labels = None
    if not all(_is_number(c) for c in rows[0] if c.strip()):
        header = [c.strip() for c in rows[0]]
        labels = header[1:] if header and header[0] == "" else header
        rows = rows[1:]
    body = []
    row_labels = []
    for r in rows:
        cells = [c.strip() for c in r if c.strip() != ""]
        if cells and not _is_number(cells[0]):
            row_labels.append(cells[0])
            cells = cells[1:]
        body.append([float(c) for c in cells])
    if labels is None and row_labels:
        labels = row_labels
    return labels, body


def _load_space(path, tol_rel):
    data = _read_bytes(path)
    digest = hashlib.sha256(data).hexdigest()
    text = data.decode("utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = json.loads(text)
        labels = doc.get("labels")
        matrix = doc["d"]
    else:
        labels, matrix = _parse_matrix_text(text)
    lens = {len(r) for r in matrix}
    if len(lens) != 1 or len(matrix) != next(iter(lens)):
        raise ValueError(
            f"matrix is not square: {len(matrix)} rows, column counts {sorted(lens)}"
        )
    space = validate_metric(matrix, labels=labels, tol_rel=tol_rel)
    return space, digest


def _load_star(path, space):
    data = _read_bytes(path)
    doc = json.loads(data.decode("utf-8"))
    p = space.index_of(doc["p"])
    points = tuple(space.index_of(i) for i in doc["points"])
    weights = np.asarray(doc["lambda"], dtype=float)
    return WeightedStar(space=space, p=p, points=points, weights=weights)


def _indices(space, tokens):
    return [space.index_of(int(t) if _is_number(t) else t) for t in tokens]


# ---------------------------------------------------------------- output


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        if math.isnan(f):
            return "nan"
        if math.isinf(f):
            return "inf" if f > 0 else "-inf"
        return f
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _flatten(prefix, obj, out, digits=6):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out, digits)
    elif isinstance(obj, list):
        out.append((prefix, " ".join(_scalar_text(v, digits) for v in _iter_flat(obj))))
    else:
        out.append((prefix, _scalar_text(obj, digits)))


def _iter_flat(obj):
    for v in obj:
        if isinstance(v, list):
            yield from _iter_flat(v)
        else:
            yield v


def _scalar_text(v, digits=6):
    if isinstance(v, float):
        return f"{v:.{digits}g}"
    return str(v)


def _emit(report, fmt, stream=None):
    stream = stream or sys.stdout
    report = _clean(report)
    if fmt == "json":
        json.dump(report, stream, indent=2, sort_keys=True)
        stream.write("\n")
    elif fmt == "csv":
        rows = []
        _flatten("", report, rows, digits=17)
        writer = csv.writer(stream)
        for k, v in rows:
            writer.writerow([k, v])
    else:
        rows = []
        _flatten("", report, rows)
        for k, v in rows:
            stream.write(f"{k}: {v}\n")


def _matrix_out(space, fmt, path):
    if fmt == "json":
        payload = {"labels": list(space.labels), "d": [list(map(float, r)) for r in space.d]}
        text = json.dumps(payload)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow([""] + list(space.labels))
        for lab, row in zip(space.labels, space.d):
            writer.writerow([lab] + [f"{v:.17g}" for v in row])
        text = buf.getvalue()
    if path and path != "-":
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _envelope(command, digest, parameters, tolerances, status, result):
    return {
        "tool": "curvkit",
        "version": __version__,
        "command": command,
        "input_digest": digest,
        "parameters": parameters,
        "tolerances": tolerances,
        "status": status,
        "result": result,
    }


def _witness_labels(space, witness):
    if witness is None:
        return None
    return [space.labels[i] for i in witness]


# ---------------------------------------------------------------- commands


def _cmd_certify(args):
    space, digest = _load_space(args.input, args.tol_metric)
    rep = certify_kappa(space, args.kappa, tol_defect=args.tol, threads=args.threads)
    result = {
        "kappa": rep.kappa,
        "passed": rep.passed,
        "worst_defect": rep.worst_defect if rep.quadruples_checked else None,
        "witness": list(rep.witness) if rep.witness else None,
        "witness_labels": _witness_labels(space, rep.witness),
        "quadruples_checked": rep.quadruples_checked,
        "undefined_skipped": rep.undefined_skipped,
        "vacuous": rep.vacuous,
    }
    report = _envelope(
        "certify", digest, {"kappa": args.kappa, "n": space.n},
        {"tol_defect": args.tol, "tol_metric": args.tol_metric},
        "pass" if rep.passed else "fail", result,
    )
    _emit(report, args.format)
    return 0 if rep.passed else 1


def _cmd_maxk(args):
    space, digest = _load_space(args.input, args.tol_metric)
    params = {"precision": args.precision, "n": space.n}
    tols = {"tol_defect": args.tol, "tol_metric": args.tol_metric}
    try:
        value = max_kappa(
            space, precision=args.precision, kappa_lo=args.kappa_lo,
            kappa_hi=args.kappa_hi, tol_defect=args.tol, threads=args.threads,
        )
    except NoLowerBoundError as exc:
        result = {
            "kappa_max": None,
            "reason": "no lower bound found in range",
            "kappa_lo": exc.kappa_lo,
            "witness": list(exc.report.witness) if exc.report.witness else None,
            "worst_defect": exc.report.worst_defect,
        }
        _emit(_envelope("maxk", digest, params, tols, "fail", result), args.format)
        return 1
    result = {"kappa_max": value}
    if math.isinf(value):
        result["vacuity_threshold"] = (TWO_PI / min_quadruple_size(space)) ** 2
    _emit(_envelope("maxk", digest, params, tols, "pass", result), args.format)
    return 0


def _cmd_quad(args):
    space, digest = _load_space(args.input, args.tol_metric)
    x, y, z, w = _indices(space, args.indices)
    peris, size = perimeter_and_size(space, (x, y, z, w))
    params = {"kappa": args.kappa, "indices": [x, y, z, w]}
    tols = {"tol_defect": args.tol, "tol_metric": args.tol_metric}
    try:
        defect = quadruple_defect(args.kappa, space, x, y, z, w)
    except UndefinedAngleError as exc:
        result = {"defect": None, "undefined": True, "reason": str(exc),
                  "perimeters": list(peris), "size": size}
        _emit(_envelope("quad", digest, params, tols, "pass", result), args.format)
        return 0
    ok = defect >= -args.tol
    within = args.kappa <= 0 or size < TWO_PI / math.sqrt(args.kappa)
    result = {"defect": defect, "undefined": False, "perimeters": list(peris),
              "size": size, "within_size_bound": within}
    _emit(_envelope("quad", digest, params, tols, "pass" if ok else "fail", result),
          args.format)
    return 0 if ok else 1


def _cmd_lss(args):
    space, digest = _load_space(args.input, args.tol_metric)
    star = _load_star(args.weights, space)
    value = lss_form(args.kappa, star)
    result = {
        "lss_form": value,
        "vacuous": math.isinf(value),
        "p": star.p,
        "points": list(star.points),
        "weights": list(star.weights),
    }
    if args.kappa <= 0.0:
        result["sturm_slack"] = sturm_slack(args.kappa, star)
    ok = math.isinf(value) or value >= -args.tol
    report = _envelope(
        "lss", digest, {"kappa": args.kappa},
        {"tol": args.tol, "tol_metric": args.tol_metric},
        "pass" if ok else "fail", result,
    )
    _emit(report, args.format)
    return 0 if ok else 1


def _cmd_embed(args):
    space, digest = _load_space(args.input, args.tol_metric)
    star = _load_star(args.weights, space)
    params = {"kappa": args.kappa, "p": star.p, "points": list(star.points)}
    tols = {"tol_metric": args.tol_metric}
    if args.tol_zero is not None:
        tols["tol_zero"] = args.tol_zero
    try:
        emb = embed_star(args.kappa, star, tol_zero=args.tol_zero)
    except (NotEqualityCaseError, GramIndefiniteError) as exc:
        result = {"embedded": False, "reason": str(exc)}
        if isinstance(exc, GramIndefiniteError):
            result["eigenvalue"] = exc.eigenvalue
            if exc.eigenvector is not None:
                result["eigenvector"] = list(exc.eigenvector)
        _emit(_envelope("embed", digest, params, tols, "fail", result), args.format)
        return 1
    result = {
        "embedded": True,
        "form_value": emb.form_value,
        "tol_zero": emb.tol_zero,
        "model_dim": emb.config.dim,
        "coordinates": emb.config.points,
        "residuals": emb.residuals,
        "max_residual": emb.max_residual,
    }
    _emit(_envelope("embed", digest, params, tols, "pass", result), args.format)
    return 0


def _cmd_flat(args):
    space, digest = _load_space(args.input, args.tol_metric)
    x, y, z, w = _indices(space, args.indices)
    params = {"kappa": args.kappa, "indices": [x, y, z, w]}
    tols = {"tol": args.tol, "tol_residual": args.tol_residual,
            "tol_metric": args.tol_metric}
    try:
        flat = realize_flat_quadruple(args.kappa, space, x, y, z, w, tol=args.tol)
    except (NotEqualityCaseError, BetweennessError, UndefinedAngleError) as exc:
        result = {"realized": False, "reason": str(exc)}
        _emit(_envelope("flat", digest, params, tols, "fail", result), args.format)
        return 1
    ok = flat.max_residual <= args.tol_residual
    result = {
        "realized": True,
        "defect": flat.defect,
        "coordinates": flat.config.points,
        "residuals": flat.residuals,
        "max_residual": flat.max_residual,
        "inside": flat.inside,
        "consistent": ok,
    }
    _emit(_envelope("flat", digest, params, tols, "pass" if ok else "fail", result),
          args.format)
    return 0 if ok else 1


def _cmd_gap(args):
    space, digest = _load_space(args.input, args.tol_metric)
    x, y, z, w = _indices(space, args.indices)
    gap = comparison_gap(args.kappa, space, x, y, z, w, tol_between=args.tol_between)
    ok = gap >= -args.tol
    result = {"gap": gap, "indices": [x, y, z, w]}
    report = _envelope(
        "gap", digest, {"kappa": args.kappa},
        {"tol": args.tol, "tol_between": args.tol_between, "tol_metric": args.tol_metric},
        "pass" if ok else "fail", result,
    )
    _emit(report, args.format)
    return 0 if ok else 1


def _cmd_pack(args):
    space, digest = _load_space(args.input, args.tol_metric)
    res = packing_radius(space, args.q, mode=args.mode)
    bound = packing_bound(args.q)
    ok = res.radius <= bound + args.tol
    result = {
        "q": res.q,
        "radius": res.radius,
        "packer": list(res.packer),
        "packer_labels": [space.labels[i] for i in res.packer],
        "is_certified_max": res.is_certified_max,
        "bound": bound,
        "attains_bound": abs(res.radius - bound) <= args.tol,
    }
    report = _envelope(
        "pack", digest, {"q": args.q, "mode": args.mode},
        {"tol": args.tol, "tol_metric": args.tol_metric},
        "pass" if ok else "fail", result,
    )
    _emit(report, args.format)
    return 0 if ok else 1


def _cmd_villani(args):
    space, digest = _load_space(args.input, args.tol_metric)
    gamma = trace_geodesic(space, _indices(space, args.gamma.split(",")))
    eta = trace_geodesic(space, _indices(space, args.eta.split(",")))
    gap = villani_gap(space, gamma, eta, args.t, snap_tol=args.snap_tol)
    ok = gap >= -args.tol
    snap = args.snap_tol if args.snap_tol is not None else 1e-9 * max(space.diameter(), 1.0)
    a = gamma.sample_at(args.t, snap)
    b = eta.sample_at(gamma.fraction(a), snap)
    gt, et = gamma.indices[a], eta.indices[b]
    mids = find_midpoints(space, gt, et, max(args.tol, 1e-9) * max(space.diameter(), 1.0))
    result = {
        "gap": gap,
        "t": gamma.fraction(a),
        "interpolated": [int(gt), int(et)],
        "midpoints": mids,
        "midpoint_available": bool(mids),
    }
    report = _envelope(
        "villani", digest, {"t": args.t},
        {"tol": args.tol, "tol_metric": args.tol_metric},
        "pass" if ok else "fail", result,
    )
    _emit(report, args.format)
    return 0 if ok else 1


def _cmd_transform(args):
    space, _ = _load_space(args.input, args.tol_metric)
    out = metric_transform(space, args.kappa, args.alpha)
    _matrix_out(out, args.format, args.output)
    return 0


def _cmd_gen(args):
    params = {}
    for key in ("n", "dim", "q", "k"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    if args.kappa is not None:
        params["kappa"] = args.kappa
    if args.legs:
        params["legs"] = tuple(float(x) for x in args.legs.split(","))
    gen = generate(args.kind, seed=args.seed, **params)
    _matrix_out(gen.space, args.format, args.output)
    return 0


# ---------------------------------------------------------------- parser


def _add_common(p, with_input=True):
    if with_input:
        p.add_argument("input", help="distance matrix (CSV or JSON), '-' for stdin")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--tol-metric", type=float, default=1e-9,
                   help="relative validation tolerance for the input matrix")
    p.add_argument("--threads", type=int, default=None,
                   help="worker cap for the sweep (default: CURVKIT_THREADS or 1)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="curvkit",
        description="Curvature lower-bound toolkit for finite metric spaces",
    )
    parser.add_argument("--version", action="version", version=f"curvkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="exhaustive quadruple-condition sweep")
    _add_common(p)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-9, help="defect tolerance (radians)")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("maxk", help="bisection for the maximal certified bound")
    _add_common(p)
    p.add_argument("--precision", type=float, default=1e-6)
    p.add_argument("--kappa-lo", type=float, default=None)
    p.add_argument("--kappa-hi", type=float, default=None)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_maxk)

    p = sub.add_parser("quad", help="defect of a single quadruple")
    _add_common(p)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--indices", nargs=4, required=True, metavar=("X", "Y", "Z", "W"))
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_quad)

    p = sub.add_parser("lss", help="weighted quadratic form of a star")
    _add_common(p)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--weights", required=True, help="JSON star file")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_lss)

    p = sub.add_parser("embed", help="rigid model embedding of a zero-form star")
    _add_common(p)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--weights", required=True, help="JSON star file")
    p.add_argument("--tol-zero", type=float, default=None)
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("flat", help="realize a zero-defect quadruple")
    _add_common(p)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--indices", nargs=4, required=True, metavar=("X", "Y", "Z", "W"))
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--tol-residual", type=float, default=1e-6)
    p.set_defaults(func=_cmd_flat)

    p = sub.add_parser("gap", help="segment comparison gap d(x,w) - model value")
    _add_common(p)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--indices", nargs=4, required=True, metavar=("X", "Y", "Z", "W"))
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--tol-between", type=float, default=1e-9)
    p.set_defaults(func=_cmd_gap)

    p = sub.add_parser("pack", help="packing radius and bound comparison")
    _add_common(p)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--mode", choices=("auto", "exhaustive", "heuristic"), default="auto")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_pack)

    p = sub.add_parser("villani", help="quadrilateral interpolation inequality")
    _add_common(p)
    p.add_argument("--gamma", required=True, help="comma-separated sample indices")
    p.add_argument("--eta", required=True, help="comma-separated sample indices")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--snap-tol", type=float, default=None)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_villani)

    p = sub.add_parser("transform", help="snowflake-type transform of a matrix")
    _add_common(p)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("gen", help="generate a synthetic space")
    _add_common(p, with_input=False)
    p.add_argument("--kind", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--kappa", type=float, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--legs", default=None, help="comma-separated leg lengths")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if getattr(args, "threads", None) is None:
        args.threads = threads_from_env(1)
    try:
        return args.func(args)
    except (MetricValidationError, ValueError, KeyError, IndexError, OSError,
            json.JSONDecodeError) as exc:
        print(f"curvkit: error: {exc}", file=sys.stderr)
        return 2
    except CurvkitError as exc:
        print(f"curvkit: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
