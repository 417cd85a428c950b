#!/usr/bin/env python3
"""Build the empirical atlas and print a short envelope summary."""

import argparse
import math

from sphcodes import atlas as atlas_mod
from sphcodes import bounds


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--phi-c", type=float, default=0.4)
    parser.add_argument("--budget", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="atlas.txt")
    args = parser.parse_args()

    cutoff = bounds.CutoffRegion(args.phi_c)
    atlas = atlas_mod.atlas_build(None, cutoff, args.budget, seed=args.seed)
    with open(args.out, "w") as fh:
        fh.write(atlas_mod.dump_atlas(atlas))

    print(f"observed points:   {len(atlas.observed)}")
    print(f"dominated anchors: {len(atlas.dominated_anchors)}")
    for phi in (args.phi_c, 0.8, 1.2, math.pi / 2):
        if phi < args.phi_c:
            continue
        h = bounds.kl_bound(phi)
        print(f"phi={phi:.4f}  envelope={atlas.alpha(phi):.6f}  H={h:.6f}")
    print(f"snapshot written to {args.out}")


if __name__ == "__main__":
    main()
