"""``k3stab`` command line.

Exit codes: 0 success, 1 a verification property failed, 2 bad flags or a
point outside the chart, 3 masses violating the (q-)triangle inequalities or
a numeric inverse that did not converge.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import __version__
from .boundary import SquareCoord, phase_cloud, phase_cloud_csv, pi_param
from .chart import StabilityPoint, as_chart, canonicalize, central_charge, phase_of_stable, stable_atoms
from .errors import DomainError, NoConvergence, NotStable, TriangleViolation
from .mass import DEFAULT_WINDOW, InvertCell, invert_cell, invert_residual, mass_abc, mass_vector, triangle_check
from .tiling import RenderMode, RenderSpec, render, render_phase_cloud
from .verify import SUITES, run

EXIT_OK, EXIT_PROPERTY, EXIT_USAGE, EXIT_MATH = 0, 1, 2, 3

# flags whose values routinely start with "-" (negative coordinates)
_VALUE_FLAGS = {"--z", "--window", "--u", "--ray", "--twist", "--a", "--b", "--c", "--q"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _join_values(argv: list[str]) -> list[str]:
    """Turn ``--z -2,0`` into ``--z=-2,0`` so argparse does not read a flag."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def parse_complex(s: str) -> complex:
    parts = s.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected 're,im', got {s!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        raise UsageError(f"expected 're,im', got {s!r}") from None


def parse_window(s: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in s.split(":"))
    except ValueError:
        raise UsageError(f"expected 'lo:hi', got {s!r}") from None
    if hi < lo:
        raise UsageError(f"empty window {s!r}")
    return lo, hi


def parse_ray(s: str) -> tuple[float, float]:
    try:
        v, w = (float(x) for x in s.split(":"))
    except ValueError:
        raise UsageError(f"expected 'v:w', got {s!r}") from None
    return v, w


def _cx(z: complex) -> list[float]:
    return [z.real, z.imag]


def _q(value: float) -> float:
    if not value > 0 or not math.isfinite(value):
        raise UsageError("--q must be a positive real")
    return value


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_chart(args) -> int:
    z = parse_complex(args.z)
    p = as_chart(z)
    canon = canonicalize(args.twist, z)
    atoms = []
    for atom in stable_atoms(p):
        atoms.append(
            {
                "atom": str(atom),
                "central_charge": _cx(central_charge(p, atom.mukai_class())),
                "phase": phase_of_stable(p, atom),
            }
        )
    q = _q(args.q)
    a, b, c = mass_abc(canon.chart, q)
    _emit(
        {
            "z": _cx(p.z),
            "twist": args.twist,
            "region": p.region.value,
            "canonical": {"twist": canon.twist, "z": _cx(canon.chart.z), "region": canon.chart.region.value},
            "stable_atoms": atoms,
            "q": q,
            "abc": [a, b, c],
            "triangle": triangle_check(a, b, c, q).value,
        }
    )
    return EXIT_OK


def cmd_mass(args) -> int:
    p = StabilityPoint(args.twist, as_chart(parse_complex(args.z)))
    f = mass_vector(p, _q(args.q), parse_window(args.window))
    _emit(f.to_json())
    return EXIT_OK


def cmd_invert(args) -> int:
    q = _q(args.q)
    p = invert_cell(args.a, args.b, args.c, InvertCell(args.cell), q)
    _emit(
        {
            "cell": args.cell,
            "q": q,
            "z": _cx(p.z),
            "region": p.region.value,
            "residual": invert_residual(args.a, args.b, args.c, p, q),
        }
    )
    return EXIT_OK


def cmd_tiling(args) -> int:
    mode = RenderMode.DISK if args.mode == "disk" else RenderMode.HALFPLANE
    try:
        spec = RenderSpec(mode, _q(args.q), args.depth, args.size, args.chords)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(args.out, render(spec))
    return EXIT_OK


def _parse_u(s: str) -> float:
    try:
        u = float(s)
    except ValueError:
        raise UsageError(f"bad --u {s!r}") from None
    if math.isnan(u):
        raise UsageError("--u must not be nan")
    return u


def cmd_boundary(args) -> int:
    v, w = parse_ray(args.ray)
    s = SquareCoord(_parse_u(args.u), v, w, _q(args.q))
    _emit(pi_param(s, parse_window(args.window)).to_json())
    return EXIT_OK


def cmd_phases(args) -> int:
    if args.rmax < 0 or args.nmax < 0:
        raise UsageError("--rmax and --nmax must be non-negative")
    p = as_chart(parse_complex(args.z))
    rows = phase_cloud(p, args.rmax, args.nmax)
    _write(args.out, phase_cloud_csv(rows))
    if args.svg:
        _write(args.svg, render_phase_cloud(p, args.rmax, args.nmax))
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = args.seed
    if seed is None:
        env = os.environ.get("K3STAB_SEED", "0")
        try:
            seed = int(env)
        except ValueError:
            raise UsageError(f"K3STAB_SEED={env!r} is not an integer") from None
    report = run(args.suite, args.samples, seed)
    _emit(report)
    return EXIT_OK if report["pass"] else EXIT_PROPERTY


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="k3stab", description="Stability conditions, masses and boundary points for a K3 surface with trivial Picard group.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("chart", help="region, stable atoms and masses at a chart point")
    p.add_argument("--z", required=True, help="chart parameter 're,im'")
    p.add_argument("--twist", type=int, default=0)
    p.add_argument("--q", type=float, default=1.0)
    p.set_defaults(func=cmd_chart)

    p = sub.add_parser("mass", help="(q-)mass function on a window of twisted skyscrapers")
    p.add_argument("--z", required=True)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--twist", type=int, default=0)
    p.add_argument("--window", default=f"{DEFAULT_WINDOW[0]}:{DEFAULT_WINDOW[1]}")
    p.set_defaults(func=cmd_mass)

    p = sub.add_parser("invert", help="chart parameter from mass coordinates")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--cell", choices=[c.value for c in InvertCell], required=True)
    p.add_argument("--q", type=float, default=1.0)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("tiling", help="SVG of the triangle tiling")
    p.add_argument("--mode", choices=["disk", "halfplane"], required=True)
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--size", type=int, default=600)
    p.add_argument("--chords", action="store_true", help="straight chords instead of geodesic arcs")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_tiling)

    p = sub.add_parser("boundary", help="point of the closure from strip coordinates")
    p.add_argument("--u", required=True, help="abscissa, may be inf or -inf")
    p.add_argument("--ray", required=True, help="'v:w' with v, w >= 0")
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--window", default=f"{DEFAULT_WINDOW[0]}:{DEFAULT_WINDOW[1]}")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("phases", help="CSV of phases of semistable classes")
    p.add_argument("--z", required=True)
    p.add_argument("--rmax", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--svg", help="also draw the phase cloud to this SVG file")
    p.set_defaults(func=cmd_phases)

    p = sub.add_parser("verify", help="run the randomised invariant suites")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_join_values(argv))
        return args.func(args)
    except UsageError as exc:
        print(f"k3stab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TriangleViolation, NoConvergence) as exc:
        # TriangleViolation is a ValueError, so it has to be caught first
        print(f"k3stab: error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except (DomainError, NotStable, ValueError) as exc:
        print(f"k3stab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"k3stab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
