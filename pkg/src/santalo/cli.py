"""Command-line interface: ``santalo <command> [options]``, JSON on stdout.

Exit codes: 0 success, 2 invalid input, 3 numerical failure,
4 unsupported structure (non-simple fiber), 64 usage error.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .chamber import cell_of, enumerate_cells, same_cell
from .continuation import (
    TrackerOptions,
    default_seed,
    ml_degree,
    numerical_patch_degree,
    santalo_point_homotopy,
    track_santalo_path,
)
from .dual_volume import (
    adjoint_x,
    adjoint_y,
    dual_volume_fn,
    dual_volume_y,
    santalo_region_membership,
)
from .errors import InvalidInputError, SantaloError
from .exact import ExactMatrix, parse_vector
from .newton import santalo_point
from .polytope import FiberProblem, HRep, hrep_to_fiber

SCHEMA_VERSION = 1
EXIT_USAGE = 64

COMMANDS = ("adjoint", "volume", "chamber", "santalo", "track", "mldeg", "patchdeg", "region")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _read_matrix(path: str) -> ExactMatrix:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInputError(f"cannot read matrix file {path}: {exc.strerror}") from None
    return ExactMatrix.from_text(text)


def _seed(value: str | None) -> int:
    if value is None:
        return default_seed()
    try:
        seed = int(value)
    except ValueError:
        raise InvalidInputError(f"--seed must be a decimal integer, got {value!r}") from None
    if not 0 <= seed < 2 ** 64:
        raise InvalidInputError("--seed must fit in 64 unsigned bits")
    return seed


def _fiber(args) -> FiberProblem:
    if args.W:
        if not args.c:
            raise InvalidInputError("--W needs --c")
        return hrep_to_fiber(_hrep(args)).fiber
    if not (args.A and args.b):
        raise InvalidInputError(f"`{args.command}` needs --A and --b (or --W and --c)")
    A = _read_matrix(args.A)
    B = _read_matrix(args.B) if args.B else None
    return FiberProblem(A, parse_vector(args.b), B)


def _hrep(args) -> HRep:
    if args.W:
        if not args.c:
            raise InvalidInputError("--W needs --c")
        return HRep(_read_matrix(args.W), parse_vector(args.c))
    from .polytope import project_Q
    return project_Q(_fiber(args))


def _tracker(args) -> TrackerOptions:
    return TrackerOptions(seed=_seed(args.seed))


def cmd_adjoint(args) -> dict:
    if args.W:
        return {"coordinates": "y", "adjoint": adjoint_y(_hrep(args)).to_json_obj()}
    fp = _fiber(args)
    return {"coordinates": "x", "adjoint": adjoint_x(fp.A, fp.b).to_json_obj()}


def cmd_volume(args) -> dict:
    if args.W:
        h = _hrep(args)
        out = {"coordinates": "y", "adjoint": adjoint_y(h).to_json_obj(), "m": h.m}
        if args.y:
            out["volume"] = str(dual_volume_y(h, parse_vector(args.y)))
        return out
    fp = _fiber(args)
    dv = dual_volume_fn(fp.A, fp.b)
    out = {"coordinates": "x", **dv.to_json_obj()}
    if args.x:
        out["value"] = str(dv(parse_vector(args.x)))
    return out


def cmd_chamber(args) -> dict:
    if not args.A:
        raise InvalidInputError("`chamber` needs --A")
    A = _read_matrix(args.A)
    if args.b:
        b = parse_vector(args.b)
        out = {"cell": cell_of(A, b).describe()}
        if args.b1:
            out["same_cell"] = same_cell(A, b, parse_vector(args.b1))
        return out
    cells = enumerate_cells(A)
    profile: dict[int, int] = {}
    for c in cells:
        profile[c.n_facets] = profile.get(c.n_facets, 0) + 1
    return {"count": len(cells),
            "facet_count_profile": {str(k): v for k, v in sorted(profile.items(), reverse=True)},
            "cells": [c.describe() for c in cells]}


def cmd_santalo(args) -> dict:
    fp = _fiber(args)
    if args.method == "homotopy":
        res = santalo_point_homotopy(fp, _tracker(args), target_count=args.target_count)
    else:
        res = santalo_point(fp, tol=args.tol)
    return {**res.to_json_obj(), "method": args.method}


def cmd_track(args) -> dict:
    fp = _fiber(args)
    if not args.b1:
        raise InvalidInputError("`track` needs --b1")
    b1 = parse_vector(args.b1)
    start = santalo_point(fp, tol=args.tol)
    samples: list | None = [] if args.plot_data else None
    x1 = track_santalo_path(fp, start.cell, fp.b, start.x_star, b1, _tracker(args), samples)
    B = fp.B.to_numpy()
    origin = np.array([float(v) for v in fp.origin]) if fp.origin else np.zeros(fp.n)
    out = {"b0": [str(v) for v in fp.b], "b1": [str(v) for v in b1],
           "x_start": start.x_star.tolist(), "x_end": x1.tolist(),
           "y_end": (B.T @ (x1 - origin)).tolist()}
    if samples is not None:
        _write_csv(args.plot_data, ["t"] + [f"x{i + 1}" for i in range(fp.n)],
                   [[t, *x] for t, x in samples])
        out["plot_data"] = args.plot_data
    return out


def cmd_mldeg(args) -> dict:
    fp = _fiber(args)
    opts = _tracker(args)
    return {"ml_degree": ml_degree(fp, opts, target_count=args.target_count), "seed": opts.seed}


def cmd_patchdeg(args) -> dict:
    fp = _fiber(args)
    opts = _tracker(args)
    cell = cell_of(fp.A, fp.b)
    return {"patch_degree": numerical_patch_degree(cell, opts, target_count=args.target_count),
            "seed": opts.seed, "n_facets": cell.n_facets}


def cmd_region(args) -> dict:
    if args.y is None or args.a is None:
        raise InvalidInputError("`region` needs --y and --a")
    h = _hrep(args)
    y = [float(v) for v in parse_vector(args.y)]
    from .newton import santalo_point_hrep
    star = santalo_point_hrep(h, tol=args.tol)
    inside = santalo_region_membership(h, y, args.a, star.y_star)
    out = {"inside": inside, "y_star": star.y_star.tolist(),
           "excess": float(dual_volume_y(h, y)) - float(dual_volume_y(h, list(star.y_star)))}
    if args.plot_data and h.m == 2:
        out["plot_data"] = args.plot_data
        _write_region_grid(args.plot_data, h, star.y_star)
    return out


def _write_region_grid(path: str, h: HRep, y_star, size: int = 60):
    verts = np.array([[float(v) for v in y] for y, _ in h.vertices])
    lo, hi = verts.min(axis=0), verts.max(axis=0)
    base = float(dual_volume_y(h, list(y_star)))
    rows = []
    for u in np.linspace(lo[0], hi[0], size):
        for v in np.linspace(lo[1], hi[1], size):
            if min(h.forms([u, v])) > 1e-9:
                rows.append([u, v, float(dual_volume_y(h, [u, v])) - base])
    _write_csv(path, ["y1", "y2", "excess"], rows)


def _write_csv(path: str, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


HANDLERS = {
    "adjoint": cmd_adjoint, "volume": cmd_volume, "chamber": cmd_chamber,
    "santalo": cmd_santalo, "track": cmd_track, "mldeg": cmd_mldeg,
    "patchdeg": cmd_patchdeg, "region": cmd_region,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="santalo", description="Santaló points and dual volumes of polytope fibers.")
    p.add_argument("--version", action="version", version=f"santalo {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--A", help="matrix file (rows of rationals)")
    p.add_argument("--b", help="right-hand side, comma-separated rationals")
    p.add_argument("--b1", help="second right-hand side (track, chamber)")
    p.add_argument("--B", help="kernel matrix file (defaults to a computed basis)")
    p.add_argument("--W", help="H-representation normals file")
    p.add_argument("--c", help="H-representation offsets, comma-separated rationals")
    p.add_argument("--x", help="evaluation point in x-coordinates (volume)")
    p.add_argument("--y", help="evaluation point in y-coordinates (volume, region)")
    p.add_argument("--a", type=float, help="excess threshold (region)")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--seed", help="64-bit seed (default: $SANTALO_SEED or 0)")
    p.add_argument("--target-count", type=int)
    p.add_argument("--method", choices=("newton", "homotopy"), default="newton")
    p.add_argument("--plot-data", help="write plot-ready CSV to this path")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.tol > 0:
        parser.error("--tol must be positive")
    if args.target_count is not None and args.target_count < 1:
        parser.error("--target-count must be positive")
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        _seed(args.seed)
        result = HANDLERS[args.command](args)
    except SantaloError as exc:
        print(f"santalo {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code
    doc = json.dumps({"schema_version": SCHEMA_VERSION, "command": args.command, **result},
                     indent=2, ensure_ascii=False)
    if args.out:
        Path(args.out).write_text(doc + "\n", encoding="utf-8")
    else:
        print(doc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
