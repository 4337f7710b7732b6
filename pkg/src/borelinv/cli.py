"""Command-line entry point: basis, hilbert, orbits, verify, identities."""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .basis import CompositionInvalid, InvalidIndex, enumerate_basis, index_degree, latex_table
from .gf import FieldError
from .groups import DEFAULT_MAX_CELLS, GroupSpec, SizeBound, invariant_dims, orbit_count
from .harness import (BOREL_GRID, CONJECTURE_GRID, IDENTITY_CHECKS, as_field, run_grid,
                      summarize, verify_borel, verify_gl, verify_identities, verify_parabolic)
from .invariants import SpecInvalid
from .report import OracleCache, render
from .series import c_alpha_m, c_nm_gl, flag_count, hilbert_of_dims

EXIT_USAGE = 2
EXIT_FAILED = 3


class UsageError(Exception):
    pass


def _composition(text):
    try:
        parts = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad composition {text!r}")
    if not parts or any(a <= 0 for a in parts):
        raise argparse.ArgumentTypeError(f"bad composition {text!r}")
    return parts


def _nonneg(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _common(p, n_required=True):
    p.add_argument("--field", default="2", help='prime power, e.g. 2, 3 or "2^2"')
    p.add_argument("--m", type=_nonneg, default=1, help="truncation exponent")
    p.add_argument("--n", type=_nonneg, default=None if not n_required else 2,
                   help="number of variables")
    p.add_argument("--format", choices=("text", "json", "csv", "latex"), default="text")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="borelinv",
                                 description="Borel and parabolic invariants of truncated "
                                             "polynomial rings over finite fields.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="enumerate the Borel basis indices")
    _common(p)

    p = sub.add_parser("hilbert", help="conjectural and oracle Hilbert series")
    _common(p)
    p.add_argument("--group", choices=("borel", "gl", "parabolic"), default="borel")
    p.add_argument("--alpha", type=_composition)
    p.add_argument("--oracle", action="store_true", help="also compute the oracle series")
    p.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)
    p.add_argument("--cache-dir")

    p = sub.add_parser("orbits", help="orbit count of the Borel group against flag count")
    _common(p)
    p.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)

    p = sub.add_parser("verify", help="verify a basis against the oracle")
    _common(p)
    p.add_argument("--group", choices=("borel", "gl", "parabolic"), default="borel")
    p.add_argument("--alpha", type=_composition)
    p.add_argument("--grid", choices=("borel", "conjecture"),
                   help="run a whole grid instead of one point")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)
    p.add_argument("--cache-dir")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--figure-dir", help="write PNG figures of the series here")

    p = sub.add_parser("identities", help="run the identity suite")
    p.add_argument("--field", default="2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=4, help="max variables in composite checks")
    p.add_argument("--only", action="append", choices=IDENTITY_CHECKS)
    p.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)
    p.add_argument("--cache-dir")
    p.add_argument("--format", choices=("text", "json", "csv", "latex"), default="text")
    p.add_argument("--figure-dir")
    return ap


def _cache(args):
    return OracleCache(args.cache_dir) if getattr(args, "cache_dir", None) else None


def _alpha(args):
    if args.group == "borel":
        if args.alpha and args.alpha != (1,) * sum(args.alpha):
            raise UsageError("--alpha is only meaningful for --group parabolic")
        return (1,) * args.n
    if args.group == "gl":
        return (args.n,)
    if args.alpha is None:
        raise UsageError("--group parabolic needs --alpha")
    if args.n is not None and sum(args.alpha) != args.n:
        raise UsageError(f"--alpha {args.alpha} does not sum to --n {args.n}")
    return args.alpha


def cmd_basis(args, out):
    F = as_field(args.field)
    idxs = enumerate_basis(F.q, args.m, args.n)
    if args.format == "json":
        out.write(json.dumps({"q": F.q, "m": args.m, "n": args.n, "size": len(idxs),
                              "indices": [i.to_json() for i in idxs]}, indent=2) + "\n")
    elif args.format == "latex":
        out.write(latex_table(F.q, args.m, args.n) + "\n")
    elif args.format == "csv":
        out.write("index,degree\n")
        for i in idxs:
            out.write(f"\"{i}\",{index_degree(i, F.q)}\n")
    else:
        for i in idxs:
            out.write(f"{i}  degree {index_degree(i, F.q)}\n")
        out.write(f"{len(idxs)} elements\n")
    return 0


def cmd_hilbert(args, out):
    F = as_field(args.field)
    alpha = _alpha(args)
    n = sum(alpha)
    expected = c_nm_gl(F.q, args.m, n) if args.group == "gl" else c_alpha_m(F.q, args.m, alpha)
    data = {"q": F.q, "m": args.m, "n": n, "group": args.group, "alpha": list(alpha),
            "expected": expected.to_text()}
    status = 0
    if args.oracle:
        spec = GroupSpec(args.group if args.group != "borel" else "borel", n, F, alpha)
        dims = invariant_dims(spec, args.m, args.max_cells, _cache(args))
        oracle = hilbert_of_dims(dims)
        data["oracle"] = oracle.to_text()
        data["match"] = oracle == expected
        status = 0 if oracle == expected else EXIT_FAILED
    if args.format == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    elif args.format == "csv":
        out.write(",".join(data) + "\n" + ",".join(f"\"{v}\"" for v in data.values()) + "\n")
    else:
        for k, v in data.items():
            out.write(f"{k}: {v}\n")
    return status


def cmd_orbits(args, out):
    F = as_field(args.field)
    spec = GroupSpec("borel", args.n, F)
    orb = orbit_count(spec, args.m, args.max_cells)
    flags = flag_count(F.q, args.m, args.n)
    size = len(enumerate_basis(F.q, args.m, args.n, check=False))
    data = {"q": F.q, "m": args.m, "n": args.n, "orbits": orb, "flags": flags, "basis": size}
    if args.format == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(" ".join(f"{k}={v}" for k, v in data.items()) + "\n")
    return 0 if orb == flags == size else EXIT_FAILED


def _grid_points(args):
    if args.grid == "borel":
        return "borel", list(BOREL_GRID)
    pts = []
    for q, m, n in CONJECTURE_GRID:
        pts.append(("gl", (q, m, n)))
    from .groups import all_compositions
    for q, m, n in CONJECTURE_GRID:
        for a in all_compositions(n):
            pts.append(("parabolic", (q, m, a)))
    return "conjecture", pts


def cmd_verify(args, out):
    cache = _cache(args)
    if args.grid:
        kind, pts = _grid_points(args)
        if kind == "borel":
            reports = run_grid(pts, "borel", args.workers, args.max_cells, args.cache_dir)
        else:
            reports = []
            for k in ("gl", "parabolic"):
                reports += run_grid([p for kk, p in pts if kk == k], k, args.workers,
                                    args.max_cells, args.cache_dir)
    else:
        if args.n is None:
            raise UsageError("--n is required")
        F = as_field(args.field)
        alpha = _alpha(args)
        if args.group == "borel":
            reports = [verify_borel(F, args.m, args.n, args.max_cells, cache)]
        elif args.group == "gl":
            reports = [verify_gl(F, args.m, args.n, args.max_cells, cache)]
        else:
            reports = [verify_parabolic(F, args.m, alpha, args.max_cells, cache)]
    out.write(render(reports, args.format) + "\n")
    if args.grid and args.format == "text":
        out.write(json.dumps(summarize(reports)) + "\n")
    _figures(args, reports)
    return 0 if all(r.passed for r in reports) else EXIT_FAILED


def cmd_identities(args, out):
    rep = verify_identities(args.field, budget=args.budget, seed=args.seed,
                            max_cells=args.max_cells, cache=_cache(args),
                            only=set(args.only) if args.only else None)
    out.write(render([rep], args.format) + "\n")
    _figures(args, [rep])
    return 0 if rep.passed else EXIT_FAILED


def _figures(args, reports):
    if getattr(args, "figure_dir", None):
        from .plotting import write_figures
        for p in write_figures(reports, args.figure_dir):
            print(f"wrote {p}", file=sys.stderr)


COMMANDS = {"basis": cmd_basis, "hilbert": cmd_hilbert, "orbits": cmd_orbits,
            "verify": cmd_verify, "identities": cmd_identities}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, FieldError, SpecInvalid, InvalidIndex, CompositionInvalid,
            ValueError) as exc:
        print(f"borelinv {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeBound as exc:
        print(f"borelinv {args.command}: size bound exceeded: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
