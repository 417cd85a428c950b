"""Empirical atlas: observed code points and an inner envelope estimate.

Seeds are spoiled repeatedly; every resulting code point is recorded,
and anchors falling inside the cutoff window (and under the small-angle
bound curve) mark their lower controlling region as dominated.  The
envelope of the dominated set is an explicitly labeled inner
approximation of the region of densely surrounded parameters; it is
clipped by H(phi) and post-processed to be non-increasing in phi.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import binary, spherical
from .bounds import ControllingRegions, CutoffRegion, kl_bound, simplex_code
from .errors import DegenerateCode, LambdaOutOfRange, PointOnAxis, SearchBudgetExhausted
from .spherical import SphericalCode, SphericalCodePoint

# growth caps: spoiled codes beyond these sizes are recorded but not re-spoiled
MAX_DIMENSION = 24
MAX_CARD = 512


@dataclass
class Atlas:
    """Observed code points, dominated anchors, and the envelope estimate."""

    cutoff: CutoffRegion
    observed: list[SphericalCodePoint] = field(default_factory=list)
    dominated_anchors: list[SphericalCodePoint] = field(default_factory=list)
    phi_grid: np.ndarray = field(default_factory=lambda: np.array([]))
    envelope: np.ndarray = field(default_factory=lambda: np.array([]))

    def alpha(self, phi: float) -> float:
        """Envelope estimate at an angle, by nearest grid cell."""
        if self.phi_grid.size == 0:
            raise ValueError("atlas has no envelope yet")
        idx = int(np.argmin(np.abs(self.phi_grid - phi)))
        return float(self.envelope[idx])


def sylvester_hadamard_code(order: int) -> binary.BinaryCode:
    """Rows of the 2^order Sylvester Hadamard matrix as a binary code."""
    h = np.array([[0]])
    for _ in range(order):
        h = np.block([[h, h], [h, 1 - h]])
    return binary.BinaryCode("".join(str(int(b)) for b in row) for row in h)


def default_seeds() -> list[SphericalCode]:
    """Cheap and diverse seed codes: embedded binary families and simplices."""
    seeds: list[SphericalCode] = []
    for n in range(2, 9):
        rep = binary.BinaryCode(["0" * n, "1" * n])
        seeds.append(binary.embed_binary(rep))
    for n in (4, 6, 8):
        parity = binary.BinaryCode(
            w for w in _all_words(n) if w.count("1") % 2 == 0
        )
        seeds.append(binary.embed_binary(parity))
    seeds.append(binary.embed_binary(sylvester_hadamard_code(3)))
    for n in range(2, 7):
        seeds.append(simplex_code(n))
    return seeds


def _all_words(n: int):
    for v in range(2 ** n):
        yield format(v, f"0{n}b")


def _spoil_once(code: SphericalCode, rng: np.random.Generator) -> SphericalCode | None:
    """Apply one randomly chosen spoiling operation; None on failure."""
    ops = ["up", "lambda", "hemisphere", "project"]
    op = ops[int(rng.integers(len(ops)))]
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            if op == "up":
                return spherical.composite_spoil_up(code)
            if op == "lambda":
                lam = float(rng.uniform(0.5, 1.0))
                return spherical.spoil1_lambda(code, lam)
            if op == "hemisphere":
                if code.card < 3:
                    return None
                line, sign, _ = spherical.find_balanced_line(
                    code, seed=int(rng.integers(2 ** 31))
                )
                return spherical.spoil3(code, line, sign)
            if op == "project":
                if code.dimension < 3:
                    return None
                v = rng.standard_normal(code.dimension)
                line = spherical.LineThroughOrigin(v / np.linalg.norm(v))
                out, _ = spherical.spoil2(code, line)
                return out if out.card >= 2 else None
    except (DegenerateCode, PointOnAxis, LambdaOutOfRange, SearchBudgetExhausted,
            ValueError):
        return None
    return None


def atlas_build(
    seeds: list[SphericalCode] | None,
    cutoff: CutoffRegion,
    budget: int = 10_000,
    *,
    seed: int = 0,
    grid_cells: int = 1024,
) -> Atlas:
    """Spoil the seeds within an operation budget and build the envelope.

    Every generated code point is recorded.  Anchors used for domination
    must lie in the cutoff window and under H(phi); the per-cell envelope
    is the max over anchors of the lower-region roof, clipped by H and
    made non-increasing in phi.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    if seeds is None:
        seeds = default_seeds()
    seeds = [s for s in seeds if s.card >= 2]
    if not seeds:
        raise ValueError("all seeds are degenerate")
    rng = np.random.default_rng(seed)

    atlas = Atlas(cutoff=cutoff)
    worklist: list[SphericalCode] = []
    for i, s in enumerate(seeds):
        atlas.observed.append(s.code_point(provenance=f"seed[{i}]"))
        worklist.append(s)

    ops_done = 0
    idx = 0
    while ops_done < budget and worklist:
        code = worklist[idx % len(worklist)]
        idx += 1
        if code.dimension > MAX_DIMENSION or code.card > MAX_CARD:
            continue
        out = _spoil_once(code, rng)
        ops_done += 1
        if out is None or out.card < 2:
            continue
        atlas.observed.append(out.code_point(provenance=f"op[{ops_done}]"))
        worklist.append(out)
        if len(worklist) > 4 * len(seeds):
            worklist.pop(0)

    # dominated anchors: inside the window and under the small-angle bound
    for pt in atlas.observed:
        if cutoff.contains(pt.cos_phi, pt.rate) and pt.phi > 0 \
                and pt.rate <= kl_bound(max(pt.phi, cutoff.phi_c)) + 1e-9:
            atlas.dominated_anchors.append(pt)

    phi_grid = np.linspace(cutoff.phi_c, math.pi / 2, grid_cells)
    envelope = np.zeros(grid_cells)
    regions = [
        ControllingRegions((p.cos_phi, p.rate), cutoff)
        for p in atlas.dominated_anchors
    ]
    for j, phi in enumerate(phi_grid):
        x = math.cos(phi)
        best = 0.0
        for reg in regions:
            best = max(best, reg.lower_boundary(x))
        envelope[j] = min(best, kl_bound(phi))
    # enforce non-increasing in phi (running max from large phi to small)
    for j in range(grid_cells - 2, -1, -1):
        envelope[j] = max(envelope[j], envelope[j + 1])
        envelope[j] = min(envelope[j], kl_bound(float(phi_grid[j])))
    atlas.phi_grid = phi_grid
    atlas.envelope = envelope
    return atlas


def multiplicity_report(
    atlas: Atlas, point: tuple[float, float], tolerance: float = 1e-3
) -> dict:
    """Observed codes within tolerance of (cos phi, R): count and (n, card) list.

    Purely descriptive; says nothing about true membership in the densely
    surrounded region.
    """
    if not atlas.observed:
        raise ValueError("atlas is empty")
    x, y = point
    hits = [
        p for p in atlas.observed
        if abs(p.cos_phi - x) <= tolerance and abs(p.rate - y) <= tolerance
    ]
    shapes = sorted({(p.dimension, p.card) for p in hits})
    return {
        "count": len(hits),
        "shapes": shapes,
        "dimension_grows": len({n for n, _ in shapes}) > 1,
        "card_grows": len({c for _, c in shapes}) > 1,
    }


# ---------------------------------------------------------------------------
# Snapshot file: text, deterministic
# ---------------------------------------------------------------------------

def dump_atlas(atlas: Atlas) -> str:
    lines = [
        "# atlas snapshot",
        f"phi_c {atlas.cutoff.phi_c:.17g}",
        f"a_c {atlas.cutoff.a_c}",
        f"points {len(atlas.observed)}",
    ]
    for p in atlas.observed:
        lines.append(
            f"{p.rate:.17g} {p.cos_phi:.17g} {p.dimension} {p.card} {p.provenance}"
        )
    lines.append(f"envelope {atlas.phi_grid.size}")
    for phi, r in zip(atlas.phi_grid, atlas.envelope):
        lines.append(f"{phi:.17g} {r:.17g}")
    return "\n".join(lines) + "\n"
