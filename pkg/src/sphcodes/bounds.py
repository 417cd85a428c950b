"""Bound curves and controlling regions in the (cos phi, R) plane.

Closed-form curves: the asymptotic linear-programming bound H(phi) for
small angles, the exact large-angle cardinality bounds, and the figure
curve families built from them.  Regions: the cutoff window Z_c and the
four controlling regions anchored at a code point inside it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import geometry
from .spherical import SphericalCode


def kl_bound(phi: float) -> float:
    """Asymptotic upper bound H(phi) on the rate for 0 < phi <= pi/2.

    H = a log2 a - b log2 b with a = (1+s)/(2s), b = (1-s)/(2s), s = sin phi,
    using the convention 0 * log 0 = 0 (forced at phi = pi/2).
    """
    if not (0.0 < phi <= math.pi / 2):
        raise ValueError(f"phi must be in (0, pi/2], got {phi}")
    s = math.sin(phi)
    a = (1.0 + s) / (2.0 * s)
    b = (1.0 - s) / (2.0 * s)
    val = a * math.log2(a)
    if b > 0.0:
        val -= b * math.log2(b)
    return val


def rankin_curve(n: int, phi: float) -> tuple[float, float]:
    """Large-angle cardinality bound and the induced rate bound.

    For pi/2 < phi <= pi: the maximal cardinality is bounded by
    (cos phi - 1)/cos phi when cos phi <= -1/n and by n + 1 when
    -1/n <= cos phi < 0.  Returns ``(card_bound, rate_bound)``; the
    cardinality bound need not be an integer.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not (math.pi / 2 < phi <= math.pi):
        raise ValueError(f"phi must be in (pi/2, pi], got {phi}")
    c = math.cos(phi)
    ratio = (c - 1.0) / c
    card_bound = ratio if c <= -1.0 / n else n + 1.0
    rate_bound = math.log2(min(n + 1.0, ratio)) / n
    return card_bound, rate_bound


def circle_max_points(phi: float) -> int:
    """Exact maximal cardinality on the circle: floor(2 pi / phi).

    A small tolerance keeps angles that divide the circle exactly (such as
    phi = 2 pi / 3 computed via arccos) from losing a point to rounding.
    """
    if phi <= 0.0:
        raise ValueError("phi must be positive")
    return int(math.floor(2.0 * math.pi / phi + 1e-9))


def simplex_code(n: int) -> SphericalCode:
    """Regular simplex: n + 1 points on S^{n-1} with pairwise dots -1/n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ones = np.full(n + 1, 1.0 / math.sqrt(n + 1))
    basis = geometry.orthonormal_complement(ones)  # (n+1, n)
    scale = math.sqrt((n + 1) / n)
    verts = scale * (np.eye(n + 1) - 1.0 / (n + 1))
    return SphericalCode(verts @ basis, normalize=True, check_distinct=False)


# ---------------------------------------------------------------------------
# Figure curve families
# ---------------------------------------------------------------------------

@dataclass
class BoundCurve:
    """A named curve sampled on an ascending phi grid.

    ``evaluate`` is the closed-form evaluator; ``phi_range`` its validity.
    """

    name: str
    phi: np.ndarray
    rate: np.ndarray
    evaluate: Callable[[float], float]
    phi_range: tuple[float, float]

    def __post_init__(self):
        if np.any(np.diff(self.phi) <= 0):
            raise ValueError("samples must be strictly increasing in phi")
        inside = (self.phi >= self.phi_range[0]) & (self.phi <= self.phi_range[1])
        vals = self.rate[inside]
        if vals.size and (np.any(~np.isfinite(vals)) or np.any(vals < 0)):
            raise ValueError("rate values must be finite and >= 0 in range")

    @property
    def cos_phi(self) -> np.ndarray:
        return np.cos(self.phi)


def _large_angle_grid(samples: int) -> np.ndarray:
    """cos phi grid on [-1, 0), open at 0 where the angle leaves (pi/2, pi]."""
    return np.linspace(-1.0, 0.0, samples + 1)[:-1]


def large_angle_rate_curve(n: int, samples: int = 512, scale: float = 1.0,
                           name: str | None = None) -> BoundCurve:
    """R = scale/n * log2(min(n+1, (cos phi - 1)/cos phi)) on the large-angle grid."""

    def evaluate(phi: float) -> float:
        return scale * rankin_curve(n, phi)[1]

    cos_grid = _large_angle_grid(samples)
    phi_grid = np.arccos(cos_grid)[::-1]  # ascending phi
    rate = np.array([evaluate(p) for p in phi_grid])
    return BoundCurve(
        name=name or f"large-angle n={n}",
        phi=phi_grid,
        rate=rate,
        evaluate=evaluate,
        phi_range=(math.pi / 2, math.pi),
    )


def figure_curves(which: str, *, n_values=None, n: int = 2, m_values=None,
                  samples: int = 512) -> list[BoundCurve]:
    """The three plotted curve families.

    fig1: large-angle rate curves for each n in ``n_values``.
    fig2: the small-angle bound H(phi).
    fig3: the fig1 curve for dimension ``n`` rescaled by n/(n+m) for each m,
          the image of repeated section embeddings.
    """
    if which == "fig1":
        ns = list(n_values) if n_values is not None else list(range(1, 11))
        if not ns:
            raise ValueError("empty n range")
        return [large_angle_rate_curve(nn, samples) for nn in ns]
    if which == "fig2":
        phi_grid = np.linspace(0.0, math.pi / 2, samples + 1)[1:]
        rate = np.array([kl_bound(p) for p in phi_grid])
        return [BoundCurve("H", phi_grid, rate, kl_bound, (0.0, math.pi / 2))]
    if which == "fig3":
        ms = list(m_values) if m_values is not None else [1, 2, 3, 4, 5]
        if not ms:
            raise ValueError("empty m range")
        return [
            large_angle_rate_curve(n, samples, scale=n / (n + m),
                                   name=f"scaled n={n} m={m}")
            for m in ms
        ]
    raise ValueError(f"unknown figure {which!r}")


# ---------------------------------------------------------------------------
# Cutoff window and controlling regions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CutoffRegion:
    """Window phi in [phi_c, pi/2], 0 <= R <= H(phi_c)."""

    phi_c: float

    def __post_init__(self):
        if not (0.0 < self.phi_c < math.pi / 2):
            raise ValueError(f"phi_c must be in (0, pi/2), got {self.phi_c}")

    @property
    def rate_cap(self) -> float:
        return kl_bound(self.phi_c)

    @property
    def a_c(self) -> int:
        return int(math.floor(self.rate_cap))

    @property
    def cos_phi_c(self) -> float:
        return math.cos(self.phi_c)

    def contains(self, cos_phi: float, rate: float, eps: float = 1e-12) -> bool:
        return (-eps <= cos_phi <= self.cos_phi_c + eps
                and -eps <= rate <= self.rate_cap + eps)


class ControllingRegions:
    """The four polygonal regions anchored at a point of the cutoff window.

    The plane has coordinates (x, y) = (cos phi, R).  Boundary lines:
    line1 through (cos phi = -1, R = 0) and the anchor; line2 through the
    cutoff corner (cos phi_c, a_c) and the anchor.  The four regions are
    the sign quadrants of (y - line1(x), y - line2(x)) clipped to the
    window, so they partition it up to shared boundaries.
    """

    def __init__(self, anchor: tuple[float, float], cutoff: CutoffRegion):
        x, y = float(anchor[0]), float(anchor[1])
        if not cutoff.contains(x, y):
            raise ValueError(f"anchor ({x:.4g}, {y:.4g}) outside the cutoff window")
        self.anchor = (x, y)
        self.cutoff = cutoff

    def line1(self, x: float) -> float:
        ax, ay = self.anchor
        return ay * (x + 1.0) / (ax + 1.0)

    def line2(self, x: float) -> float:
        ax, ay = self.anchor
        cx, cy = self.cutoff.cos_phi_c, float(self.cutoff.a_c)
        if abs(cx - ax) < 1e-15:
            # anchor on the cutoff edge: treat line2 as vertical
            return math.inf if x < ax else -math.inf
        return ay + (cy - ay) * (x - ax) / (cx - ax)

    def membership(self, q: tuple[float, float], eps: float = 1e-12) -> str:
        """Classify a window point as 'U', 'D', 'L', 'R' or 'boundary'.

        D = below both lines (the spoiling-descendant region), U = above
        both, L = below line1 and above line2, R = the opposite pair.
        """
        x, y = float(q[0]), float(q[1])
        d1 = y - self.line1(x)
        d2 = y - self.line2(x)
        if abs(d1) <= eps or abs(d2) <= eps:
            return "boundary"
        if d1 < 0 and d2 < 0:
            return "D"
        if d1 > 0 and d2 > 0:
            return "U"
        if d1 < 0:
            return "L"
        return "R"

    def lower_boundary(self, x: float) -> float:
        """Upper edge of region D at abscissa x, clipped to [0, rate_cap]."""
        val = min(self.line1(x), self.line2(x))
        return min(max(val, 0.0), self.cutoff.rate_cap)

    def polygon(self, tag: str, samples: int = 64) -> list[tuple[float, float]]:
        """Vertex chain describing one region, for serialization and plots."""
        cx, cap = self.cutoff.cos_phi_c, self.cutoff.rate_cap
        xs = np.linspace(0.0, cx, samples)
        if tag == "D":
            top = [(float(x), self.lower_boundary(float(x))) for x in xs]
            return top + [(cx, 0.0), (0.0, 0.0)]
        if tag == "U":
            bot = [(float(x), min(max(max(self.line1(float(x)), self.line2(float(x))), 0.0), cap))
                   for x in xs]
            return bot + [(cx, cap), (0.0, cap)]
        if tag == "L":
            lo = [(float(x), min(max(self.line2(float(x)), 0.0), cap)) for x in xs]
            hi = [(float(x), min(max(self.line1(float(x)), 0.0), cap)) for x in xs[::-1]]
            return lo + hi
        if tag == "R":
            lo = [(float(x), min(max(self.line1(float(x)), 0.0), cap)) for x in xs]
            hi = [(float(x), min(max(self.line2(float(x)), 0.0), cap)) for x in xs[::-1]]
            return lo + hi
        raise ValueError(f"unknown region tag {tag!r}")


def controlling_regions(anchor: tuple[float, float],
                        cutoff: CutoffRegion) -> ControllingRegions:
    return ControllingRegions(anchor, cutoff)


def controlling_quadrangle(p1: tuple[float, float], p2: tuple[float, float],
                           cutoff: CutoffRegion):
    """Membership test for R-region(P1) intersected with L-region(P2)."""
    r1 = ControllingRegions(p1, cutoff)
    r2 = ControllingRegions(p2, cutoff)

    def member(q: tuple[float, float]) -> bool:
        return r1.membership(q) in ("R", "boundary") and \
            r2.membership(q) in ("L", "boundary")

    return member
