"""Command-line front end.

Subcommands: bounds, figures, embed, spoil, atlas, theta, kissing, shell,
density, verify.  Exit codes: 0 success, 1 domain error, 2 usage error.
Human-facing numbers are printed with 12 significant digits; code files
use 17 for round-trip safety.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import atlas as atlas_mod
from . import binary, bounds, emit, packings, spherical
from .errors import SphCodesError

BUDGET_ENV = "SPHCODES_BUDGET"


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _default_budget(fallback: int) -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else fallback


def _load_packing_arg(args) -> packings.PeriodicPacking:
    if args.lattice_file:
        return packings.load_packing(Path(args.lattice_file).read_text())
    lat = packings.lattice_by_name(args.lattice, getattr(args, "dim", None))
    return packings.touching_packing(lat)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_bounds(args) -> int:
    rows = ["phi,cos_phi,R,curve"]
    if args.phi is not None:
        phis = [args.phi]
    else:
        lo, hi, num = args.grid
        phis = list(np.linspace(lo, hi, int(num)))
    for phi in phis:
        if args.curve == "kl":
            r = bounds.kl_bound(phi)
            name = "kl"
        else:
            _card, r = bounds.rankin_curve(args.n, phi)
            name = f"rankin n={args.n}"
        rows.append(f"{_fmt(phi)},{_fmt(math.cos(phi))},{_fmt(r)},{name}")
    _write(args.out, "\n".join(rows) + "\n")
    return 0


def cmd_figures(args) -> int:
    m_values = None
    if args.m:
        if ".." in args.m:
            lo, hi = args.m.split("..")
            m_values = list(range(int(lo), int(hi) + 1))
        else:
            m_values = [int(t) for t in args.m.split(",")]
    n_values = None
    if args.n_range:
        lo, hi = args.n_range.split("..")
        n_values = list(range(int(lo), int(hi) + 1))
    curves = bounds.figure_curves(
        args.which, n_values=n_values, n=args.n, m_values=m_values,
        samples=args.samples,
    )
    if args.format == "svg":
        _write(args.out, emit.curves_to_svg(curves))
    else:
        _write(args.out, emit.curves_to_csv(curves))
    return 0


def cmd_embed(args) -> int:
    code = binary.load_binary_code(Path(args.input).read_text())
    sph = binary.embed_binary(code)
    _write(args.out, spherical.dump_spherical_code(sph))
    pt = binary.code_parameters(code)
    print(f"# [n,k,d] = [{pt.n},{_fmt(pt.k)},{pt.d}] "
          f"R={_fmt(pt.rate)} delta={_fmt(pt.delta)} "
          f"cos_phi={_fmt(sph.cos_min_angle)}", file=sys.stderr)
    return 0


def cmd_spoil(args) -> int:
    code = spherical.load_spherical_code(
        Path(args.input).read_text(), normalize=args.normalize
    )
    if args.op == "1":
        out = spherical.spoil1_lambda(code, args.lam)
    elif args.op == "2":
        if args.line:
            direction = np.asarray([float(t) for t in args.line.split(",")])
            line = spherical.LineThroughOrigin(
                direction / np.linalg.norm(direction))
        else:
            line, _sign, _c = spherical.find_balanced_line(code, seed=args.seed)
        out, xi = spherical.spoil2(code, line)
        print(f"# xi={_fmt(xi)} u={_fmt(spherical.xi_to_u(xi))}",
              file=sys.stderr)
    elif args.op == "3":
        if args.line:
            direction = np.asarray([float(t) for t in args.line.split(",")])
            line = spherical.LineThroughOrigin(
                direction / np.linalg.norm(direction))
            sign = -1 if args.sign == "-" else +1
        else:
            line, sign, _c = spherical.find_balanced_line(code, seed=args.seed)
        out = spherical.spoil3(code, line, sign)
    elif args.op == "up":
        out = spherical.composite_spoil_up(code)
    elif args.op == "down":
        out = spherical.composite_spoil_down(code, args.phi_c, seed=args.seed)
    else:
        raise SphCodesError(f"unknown op {args.op}")
    _write(args.out, spherical.dump_spherical_code(out))
    print(f"# result n={out.dimension} card={out.card} "
          f"cos_phi={_fmt(out.cos_min_angle)}", file=sys.stderr)
    return 0


def cmd_atlas(args) -> int:
    cutoff = bounds.CutoffRegion(args.phi_c)
    budget = args.budget if args.budget else _default_budget(10_000)
    built = atlas_mod.atlas_build(None, cutoff, budget, seed=args.seed)
    _write(args.out, atlas_mod.dump_atlas(built))
    return 0


def cmd_theta(args) -> int:
    packing = _load_packing_arg(args)
    if len(packing.translates) > 1:
        coeffs = packings.theta_periodic(packing, args.m_max)
    else:
        coeffs = packings.theta_lattice(packing.lattice, args.m_max)
    rows = ["m,count"]
    for m, cnt in coeffs.entries:
        rows.append(f"{_fmt(m)},{cnt}")
    _write(args.out, "\n".join(rows) + "\n")
    return 0


def cmd_kissing(args) -> int:
    packing = _load_packing_arg(args)
    code = packings.kissing_configuration(packing, args.center)
    print(f"card {code.card}")
    print(f"min_angle {_fmt(code.min_angle)}")
    print(f"density {_fmt(packings.code_density(code))}")
    if args.out:
        _write(args.out, spherical.dump_spherical_code(code))
    return 0


def cmd_shell(args) -> int:
    packing = _load_packing_arg(args)
    x0 = np.zeros(packing.lattice.dimension)
    if args.x0:
        x0 = np.asarray([float(t) for t in args.x0.split(",")])
    code, cert = packings.shell_code(packing, x0, args.u)
    print(f"card {cert['card']}")
    print(f"guaranteed_min_angle {_fmt(cert['guaranteed_min_angle'])}")
    print(f"recomputed_min_angle {_fmt(cert['recomputed_min_angle'])}")
    if args.out:
        _write(args.out, spherical.dump_spherical_code(code))
    return 0


def cmd_density(args) -> int:
    if args.code:
        code = spherical.load_spherical_code(Path(args.code).read_text(),
                                             normalize=args.normalize)
        print(f"code_density {_fmt(packings.code_density(code))}")
        return 0
    if args.lattice_file or args.lattice:
        packing = _load_packing_arg(args)
        print(f"packing_density {_fmt(packings.packing_density(packing))}")
        return 0
    est, label = packings.estimate_max_points(args.n, args.phi)
    print(f"max_points_estimate {_fmt(est)} ({label})")
    print(f"max_code_density "
          f"{_fmt(packings.max_code_density(args.n, args.phi, est))}")
    if args.phi >= math.pi / 3:
        def upper(nn, pp):
            return packings.estimate_max_points(nn, pp)[0]
        b31, b32 = packings.density_bounds(args.n, args.phi, upper)
        print(f"packing_bound_embed {_fmt(b31)}")
        print(f"packing_bound_proj {_fmt(b32)}")
    return 0


def cmd_verify(args) -> int:
    from . import verify
    suites = {
        "spoiling": verify.verify_spoiling,
        "bounds": verify.verify_bounds,
        "packings": verify.verify_packings,
    }
    names = [args.suite] if args.suite != "all" else list(suites)
    failed = 0
    for name in names:
        for label, ok in suites[name](seed=args.seed):
            print(f"[{'PASS' if ok else 'FAIL'}] {name}: {label}")
            failed += 0 if ok else 1
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sphcodes")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="evaluate bound curves")
    b.add_argument("--curve", choices=["kl", "rankin"], default="kl")
    b.add_argument("--phi", type=float)
    b.add_argument("--grid", type=float, nargs=3, metavar=("LO", "HI", "NUM"),
                   default=(0.1, math.pi / 2, 64))
    b.add_argument("--n", type=int, default=2)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bounds)

    f = sub.add_parser("figures", help="reproduce the figure curve families")
    f.add_argument("--which", choices=["fig1", "fig2", "fig3"], required=True)
    f.add_argument("--n", type=int, default=2)
    f.add_argument("--n-range", help="for fig1, e.g. 1..10")
    f.add_argument("--m", help="for fig3, e.g. 1..5 or 1,2,3")
    f.add_argument("--samples", type=int, default=512)
    f.add_argument("--format", choices=["csv", "svg"], default="csv")
    f.add_argument("--out")
    f.set_defaults(func=cmd_figures)

    e = sub.add_parser("embed", help="embed a binary code into the sphere")
    e.add_argument("input")
    e.add_argument("--out")
    e.set_defaults(func=cmd_embed)

    s = sub.add_parser("spoil", help="apply a spoiling operation")
    s.add_argument("input")
    s.add_argument("--op", choices=["1", "2", "3", "up", "down"], required=True)
    s.add_argument("--lam", type=float, default=0.9)
    s.add_argument("--line", help="comma-separated direction")
    s.add_argument("--sign", choices=["+", "-"], default="+")
    s.add_argument("--phi-c", type=float, default=0.3)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--normalize", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_spoil)

    a = sub.add_parser("atlas", help="build the empirical atlas")
    a.add_argument("--phi-c", type=float, default=0.4)
    a.add_argument("--budget", type=int)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--out")
    a.set_defaults(func=cmd_atlas)

    t = sub.add_parser("theta", help="theta coefficients of a lattice/packing")
    t.add_argument("--lattice", default="Z")
    t.add_argument("--lattice-file")
    t.add_argument("--dim", type=int, default=2)
    t.add_argument("--m-max", type=float, default=8.0)
    t.add_argument("--out")
    t.set_defaults(func=cmd_theta)

    k = sub.add_parser("kissing", help="kissing configuration of a packing")
    k.add_argument("--lattice", default="Z")
    k.add_argument("--lattice-file")
    k.add_argument("--dim", type=int, default=2)
    k.add_argument("--center", type=int, default=0)
    k.add_argument("--out")
    k.set_defaults(func=cmd_kissing)

    sh = sub.add_parser("shell", help="shell code of a packing")
    sh.add_argument("--lattice", default="Z")
    sh.add_argument("--lattice-file")
    sh.add_argument("--dim", type=int, default=2)
    sh.add_argument("--u", type=float, required=True)
    sh.add_argument("--x0", help="comma-separated base point")
    sh.add_argument("--out")
    sh.set_defaults(func=cmd_shell)

    d = sub.add_parser("density", help="densities and packing bounds")
    d.add_argument("--code")
    d.add_argument("--lattice")
    d.add_argument("--lattice-file")
    d.add_argument("--dim", type=int, default=2)
    d.add_argument("--n", type=int, default=2)
    d.add_argument("--phi", type=float, default=math.pi / 3)
    d.add_argument("--normalize", action="store_true")
    d.set_defaults(func=cmd_density)

    v = sub.add_parser("verify", help="run the property suites")
    v.add_argument("--suite", choices=["spoiling", "bounds", "packings", "all"],
                   default="all")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (SphCodesError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
