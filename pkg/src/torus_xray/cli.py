"""Command-line front end.

Every command prints a one-line JSON summary on stdout.  On failure a JSON
error object goes to stderr and the exit status is 1; output files are only
ever replaced atomically.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import billiard, formats, spectral, tensor, xray
from .exceptions import TorusXrayError
from .lattice import DirectionTuple

THREADS_ENV = "TORUS_XRAY_THREADS"


def _threads() -> int | None:
    raw = os.environ.get(THREADS_ENV, "0")
    try:
        val = int(raw)
    except ValueError:
        raise TorusXrayError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    return None if val <= 0 else val


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise TorusXrayError(f"--{name} is required for '{args.command}'")


def _tuples(args, n: int, d: int, K: int) -> list[DirectionTuple]:
    if args.tuples:
        tuples = formats.tuples_from_json(formats.read_json(args.tuples))
        if any(A.n != n or A.d != d for A in tuples):
            raise TorusXrayError(f"tuple file does not match n={n}, d={d}")
        return tuples
    return xray.default_tuples(n, d, K)


def _write_json(path, obj):
    if path:
        formats.atomic_write(path, formats.dumps(obj))


def cmd_phantom(args):
    _require(args, "n", "K")
    seed = args.seed or 0
    if args.m is None:
        f = spectral.make_phantom(args.n, args.K, args.kind, seed)
        if args.even:
            f = billiard.even_projection(f)
        _write_json(args.out, formats.trig_to_json(f))
        return {"modes": len(f), "l2_norm": spectral.sobolev_norm(f, 0.0)}
    if args.kind == "gradient":
        if args.m < 1:
            raise TorusXrayError("--kind gradient needs --m >= 1")
        h = tensor.random_tensor_field(args.n, args.m - 1, args.K, seed, zero_mean=True)
        f = tensor.gradient(h)
    else:
        f = tensor.random_tensor_field(args.n, args.m, args.K, seed)
    _write_json(args.out, formats.tensor_to_json(f))
    return {"components": len(f.components), "l2_norm": tensor.tensor_sobolev_norm(f, 0.0)}


def cmd_forward(args):
    _require(args, "in_path")
    f = formats.trig_from_json(formats.read_json(args.in_path))
    d = args.d or 1
    tuples = _tuples(args, f.n, d, f.K)
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        images = list(pool.map(lambda A: xray.forward_spectral(f, A), tuples))
    data = xray.RadonData(f.n, d, f.K, dict(zip(tuples, images)))
    _write_json(args.out, formats.radon_to_json(data))
    return {"tuples": len(tuples), "stability_norm_s0": xray.stability_norm(data, 0.0)}


def cmd_invert(args):
    _require(args, "in_path")
    data = formats.radon_from_json(formats.read_json(args.in_path))
    K = data.K if args.K is None else args.K
    f = xray.invert(data, K)
    _write_json(args.out, formats.trig_to_json(f))
    out = {"modes": len(f), "l2_norm": spectral.sobolev_norm(f, 0.0)}
    if args.ref:
        ref = formats.trig_from_json(formats.read_json(args.ref))
        out["max_coeff_error"] = f.max_abs_diff(ref)
    return out


def cmd_validate(args):
    _require(args, "in_path")
    data = formats.radon_from_json(formats.read_json(args.in_path))
    report = xray.validate_range(data, xray.DEFAULT_TOL if args.tol is None else args.tol)
    _write_json(args.out, report.to_json())
    return {"consistent": report.consistent, "conflicts": len(report.conflicts)}


def cmd_stability(args):
    _require(args, "in_path")
    data = formats.radon_from_json(formats.read_json(args.in_path))
    s = 0.0 if args.s is None else args.s
    norm = xray.stability_norm(data, s)
    _write_json(args.out, {"s": s, "stability_norm": norm})
    return {"s": s, "stability_norm": norm}


def cmd_tensor_forward(args):
    _require(args, "in_path")
    f = formats.tensor_from_json(formats.read_json(args.in_path))
    if args.tuples:
        dirs = [A.vectors[0] for A in _tuples(args, f.n, 1, f.K)]
    else:
        dirs = tensor.directions_up_to(f.n, args.max_norm)
    entries = [(v, tensor.tensor_xray_forward(f, v)) for v in dirs]
    _write_json(args.out, {"n": f.n, "m": f.m, "K": f.K,
                           "entries": [{"v": list(v), "f": formats.trig_to_json(p)}
                                       for v, p in entries]})
    worst = max((float(np.abs(p.values).max()) for _, p in entries if len(p)), default=0.0)
    return {"directions": len(dirs), "max_abs_coeff": worst}


def cmd_tensor_decompose(args):
    _require(args, "in_path")
    f = formats.tensor_from_json(formats.read_json(args.in_path))
    tol = tensor.DEFAULT_TOL if args.tol is None else args.tol
    h = tensor.solenoidal_decompose(f, tol)
    _write_json(args.out, formats.tensor_to_json(h))
    residual = tensor.gradient(h).max_abs_diff(f)
    return {"residual": residual, "h_components": len(h.components)}


def _box(args, n):
    if args.box:
        box = formats.box_from_json(formats.read_json(args.box))
        if box.n != n:
            raise TorusXrayError(f"box has dimension {box.n}, data has {n}")
        return box
    return billiard.Box((0.5,) * n)


def cmd_broken_forward(args):
    _require(args, "in_path")
    f = formats.trig_from_json(formats.read_json(args.in_path))
    even = billiard.even_projection(f)
    defect = f.max_abs_diff(even)
    if defect > 1e-12 * max(1.0, float(np.abs(f.values).max(initial=0.0))):
        raise TorusXrayError(
            f"input is not an even lift of a box function (defect {defect:.3e}); "
            "generate one with 'phantom --even'")
    f = even
    dirs = [A.vectors[0] for A in _tuples(args, f.n, 1, f.K)]
    N = args.N or 2 * f.K + 2
    vmax = max(max(abs(c) for c in v) for v in dirs)
    M = args.M or f.n * f.K * vmax + 1
    rows = billiard.broken_ray_samples(f, dirs, N, M)
    box = _box(args, f.n)
    phys = []
    for i, w, val in rows:
        x, v = billiard.denormalize(box, np.array(i) / N, w)
        phys.append((x, v, val))
    if args.out:
        formats.atomic_write(args.out, formats.broken_rows_to_csv(phys, f.n))
    return {"rows": len(rows), "N": N, "M": M, "evenness_defect": defect}


def cmd_broken_invert(args):
    _require(args, "in_path", "K", "N")
    with open(args.in_path, encoding="utf-8") as fh:
        n, raw = formats.broken_rows_from_csv(fh.read())
    box = _box(args, n)
    rows = []
    for x, v, val in raw:
        xn, vn = billiard.normalize(box, x, v)
        rows.append((tuple(int(c) for c in np.rint(xn * args.N)),
                     tuple(int(c) for c in np.rint(vn)), val))
    dirs = [A.vectors[0] for A in _tuples(args, n, 1, args.K)]
    data = billiard.radon_data_from_samples(rows, dirs, args.N, args.K)
    f = billiard.broken_ray_invert(data, args.K)
    _write_json(args.out, formats.trig_to_json(f))
    out = {"modes": len(f)}
    if args.ref:
        ref = formats.trig_from_json(formats.read_json(args.ref))
        N = args.N
        err = np.abs(billiard.restrict_to_box(f, N).samples
                     - billiard.restrict_to_box(ref, N).samples).max()
        out["max_box_error"] = float(err)
    return out


def cmd_fejer(args):
    _require(args, "in_path", "N")
    f = formats.trig_from_json(formats.read_json(args.in_path))
    g = spectral.fejer_reconstruct(f, args.N)
    res = args.M or max(64, 2 * args.N - 1)
    grid = spectral.to_grid(g, res)
    if args.out:
        formats.atomic_write(args.out, formats.grid_to_csv(grid))
    err = np.abs(grid.samples - spectral.to_grid(f, max(res, 2 * f.K + 1)).samples).max() \
        if res >= 2 * f.K + 1 else None
    return {"grid": res, "sup_error_on_grid": None if err is None else float(err)}


COMMANDS = {
    "phantom": cmd_phantom,
    "forward": cmd_forward,
    "invert": cmd_invert,
    "validate": cmd_validate,
    "stability": cmd_stability,
    "tensor-forward": cmd_tensor_forward,
    "tensor-decompose": cmd_tensor_decompose,
    "broken-forward": cmd_broken_forward,
    "broken-invert": cmd_broken_invert,
    "fejer": cmd_fejer,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torus-xray",
        description="Radon and X-ray transforms on the flat torus.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--n", type=int)
    parser.add_argument("--d", type=int)
    parser.add_argument("--m", type=int)
    parser.add_argument("--K", type=int)
    parser.add_argument("--N", type=int)
    parser.add_argument("--M", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--s", type=float)
    parser.add_argument("--tol", type=float)
    parser.add_argument("--kind", default="random-complex",
                        choices=list(spectral.PHANTOM_KINDS) + ["gradient"])
    parser.add_argument("--even", action="store_true",
                        help="project a scalar phantom onto even functions (box lifts)")
    parser.add_argument("--max-norm", type=int, default=2)
    parser.add_argument("--in", dest="in_path")
    parser.add_argument("--out")
    parser.add_argument("--tuples")
    parser.add_argument("--box")
    parser.add_argument("--ref")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = {k: v for k, v in sorted(vars(args).items())}
    try:
        result = COMMANDS[args.command](args)
    except (TorusXrayError, OSError, KeyError, json.JSONDecodeError) as err:
        print(json.dumps({"error": type(err).__name__, "message": str(err),
                          "config": config}, sort_keys=True), file=sys.stderr)
        return 1
    print(json.dumps({"config": config, **result}, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
