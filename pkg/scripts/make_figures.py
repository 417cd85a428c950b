#!/usr/bin/env python3
"""Emit the three bound-curve figure families as CSV and SVG files."""

import argparse
from pathlib import Path

from sphcodes import bounds, emit


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="figures")
    parser.add_argument("--samples", type=int, default=512)
    args = parser.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    families = {
        "fig1": bounds.figure_curves("fig1", n_values=range(1, 11),
                                     samples=args.samples),
        "fig2": bounds.figure_curves("fig2", samples=args.samples),
        "fig3": bounds.figure_curves("fig3", n=2, m_values=[1, 2, 3, 4, 5],
                                     samples=args.samples),
    }
    for name, curves in families.items():
        (outdir / f"{name}.csv").write_text(emit.curves_to_csv(curves))
        (outdir / f"{name}.svg").write_text(emit.curves_to_svg(curves))
        print(f"wrote {outdir / name}.csv and .svg ({len(curves)} curves)")


if __name__ == "__main__":
    main()
