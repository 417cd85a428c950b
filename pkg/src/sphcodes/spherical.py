"""Spherical codes and the three continuous spoiling operations.

A spherical code is a finite set of unit vectors in R^n.  The spoiling
operations trade dimension, cardinality and minimum angle against each
other in controlled ways; the composite pipelines chain them to hit a
requested parameter template.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import geometry
from .errors import (
    CollapseError,
    DegenerateCode,
    DimensionMismatch,
    InputFormatError,
    LambdaOutOfRange,
    PointOnAxis,
    SearchBudgetExhausted,
)
from .geometry import EPS_ANGLE, EPS_UNIT, Hyperplane, LineThroughOrigin


@dataclass(frozen=True)
class SphericalCodePoint:
    """Parameter pair (R, cos phi) of a spherical code, with provenance."""

    rate: float
    cos_phi: float
    dimension: int
    card: int
    provenance: str = ""

    @property
    def phi(self) -> float:
        return float(np.arccos(geometry.clamp_cos(self.cos_phi)))


class SphericalCode:
    """Immutable set of unit vectors on S^{n-1} with a cached minimum angle."""

    def __init__(self, points, *, normalize: bool = False, check_distinct: bool = True):
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError("points must be a (card, n) array with card, n >= 1")
        norms = np.linalg.norm(pts, axis=1)
        if normalize:
            if np.any(norms <= EPS_UNIT):
                raise ValueError("cannot normalize a zero point")
            pts = pts / norms[:, None]
        elif np.any(np.abs(norms - 1.0) > 1e-9):
            worst = float(np.max(np.abs(norms - 1.0)))
            raise ValueError(f"points are not unit vectors (max norm error {worst:.3e})")
        if check_distinct and pts.shape[0] >= 2:
            g = geometry.pairwise_cos(pts)
            np.fill_diagonal(g, -1.0)
            if np.any(np.arccos(np.clip(g, -1, 1)) < EPS_ANGLE):
                raise ValueError("points are not pairwise distinct beyond EPS_ANGLE")
        self._points = pts
        self._points.setflags(write=False)

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def dimension(self) -> int:
        return self._points.shape[1]

    @property
    def card(self) -> int:
        return self._points.shape[0]

    @cached_property
    def _min_angle(self) -> tuple[float, tuple[int, int]]:
        return geometry.min_angle(self._points)

    @property
    def min_angle(self) -> float:
        return self._min_angle[0]

    @property
    def min_angle_pair(self) -> tuple[int, int]:
        return self._min_angle[1]

    @property
    def cos_min_angle(self) -> float:
        return float(np.cos(self._min_angle[0]))

    @property
    def rate(self) -> float:
        return float(np.log2(self.card)) / self.dimension

    def code_point(self, provenance: str = "") -> SphericalCodePoint:
        return SphericalCodePoint(
            rate=self.rate,
            cos_phi=self.cos_min_angle,
            dimension=self.dimension,
            card=self.card,
            provenance=provenance,
        )

    def __repr__(self):
        return f"SphericalCode(n={self.dimension}, card={self.card})"


def merge_close_points(pts: np.ndarray, eps: float = EPS_ANGLE) -> np.ndarray:
    """Drop points whose angle to an earlier point is below ``eps``."""
    keep: list[int] = []
    for i in range(pts.shape[0]):
        dup = False
        for j in keep:
            if geometry.angle_between(pts[i], pts[j]) < eps:
                dup = True
                break
        if not dup:
            keep.append(i)
    return pts[keep]


# ---------------------------------------------------------------------------
# The three spoiling operations
# ---------------------------------------------------------------------------

def spoil1(code: SphericalCode, hyperplane: Hyperplane) -> SphericalCode:
    """Embed the code into the hyperplane section of the next-dimension sphere.

    Cardinality is preserved, dimension grows by one, and every pairwise
    cosine maps to rho^2 * cos + (1 - rho^2) where rho is the section radius.
    """
    if hyperplane.dimension != code.dimension + 1:
        raise DimensionMismatch(
            f"hyperplane lives in R^{hyperplane.dimension}, "
            f"need R^{code.dimension + 1}"
        )
    rho = hyperplane.section_radius
    basis = geometry.orthonormal_complement(hyperplane.normal)
    new_pts = rho * (code.points @ basis.T) + hyperplane.offset * hyperplane.normal
    return SphericalCode(new_pts, normalize=True, check_distinct=False)


def spoil1_lambda(code: SphericalCode, lam: float) -> SphericalCode:
    """Section embedding with rho^2 = lam, so cos phi -> lam*cos phi + 1 - lam.

    lam = 1 is the equatorial embedding; lam = 0 would collapse the whole
    code to a pole and is rejected.
    """
    if not (0.0 <= lam <= 1.0):
        raise ValueError(f"lambda must be in [0, 1], got {lam}")
    if lam == 0.0:
        raise CollapseError("lambda = 0 maps every point to a single pole")
    normal = np.zeros(code.dimension + 1)
    normal[-1] = 1.0
    h = float(np.sqrt(1.0 - lam))
    return spoil1(code, Hyperplane(normal, h))


def spoil2(code: SphericalCode, line: LineThroughOrigin) -> tuple[SphericalCode, float]:
    """Project off a line through the origin and renormalize.

    Returns ``(new_code, xi)`` where xi = dist(X, line) is the smallest
    projection norm over the code.  Points projecting onto coinciding rays
    are merged with a warning.
    """
    if line.dimension != code.dimension:
        raise DimensionMismatch("line dimension does not match the code")
    if code.dimension < 2:
        raise DegenerateCode("cannot project a code on S^0")
    images = []
    xi = 1.0
    for x in code.points:
        img, comp = geometry.project_and_normalize(x, line)
        images.append(img)
        xi = min(xi, float(np.sqrt(max(0.0, 1.0 - comp * comp))))
    pts = np.asarray(images)
    merged = merge_close_points(pts)
    if merged.shape[0] < pts.shape[0]:
        warnings.warn(
            f"spoil2 merged {pts.shape[0] - merged.shape[0]} coinciding projections",
            stacklevel=2,
        )
    if merged.shape[0] < 2:
        raise DegenerateCode("all projections coincide")
    return SphericalCode(merged, normalize=True, check_distinct=False), xi


def xi_to_u(xi: float) -> float:
    """u = (1 - xi^2) / xi^2 for the projection distance xi."""
    if xi <= 0.0:
        raise ValueError("xi must be positive")
    return (1.0 - xi * xi) / (xi * xi)


def spoil3(code: SphericalCode, line: LineThroughOrigin, sign: int) -> SphericalCode:
    """Restrict the code to one hemisphere of the oriented line.

    ``sign=+1`` keeps points with <x, direction> >= 0, ``sign=-1`` keeps
    the strictly negative ones.  The minimum angle never decreases.
    """
    if line.dimension != code.dimension:
        raise DimensionMismatch("line dimension does not match the code")
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    dots = code.points @ line.direction
    mask = dots >= 0.0 if sign > 0 else dots < 0.0
    if not np.any(mask):
        raise DegenerateCode("selected hemisphere contains no point")
    return SphericalCode(code.points[mask], check_distinct=False)


def hemisphere_counts(code: SphericalCode, line: LineThroughOrigin) -> tuple[int, int]:
    dots = code.points @ line.direction
    plus = int(np.count_nonzero(dots >= 0.0))
    return plus, code.card - plus


def find_balanced_line(
    code: SphericalCode, seed: int = 0
) -> tuple[LineThroughOrigin, int, int]:
    """Find a line whose better hemisphere holds c points, card/2 <= c < card.

    Candidates are tried deterministically: every code point as direction,
    then normalized midpoints of point pairs, then seeded pseudorandom
    directions, with a budget of 10 * card * n trials.  Candidates leaving
    a point within EPS_UNIT of the separating hyperplane are skipped while
    alternatives remain.

    Returns ``(line, sign, count)``.
    """
    if code.card < 2:
        raise DegenerateCode("balanced split needs at least two points")
    n, card = code.dimension, code.card
    budget = 10 * card * n
    rng = np.random.default_rng(seed)

    def candidates():
        for p in code.points:
            yield p
        for i in range(card):
            for j in range(i + 1, card):
                mid = code.points[i] + code.points[j]
                nrm = np.linalg.norm(mid)
                if nrm > EPS_UNIT:
                    yield mid / nrm
        while True:
            v = rng.standard_normal(n)
            yield v / np.linalg.norm(v)

    fallback = None
    for trial, direction in enumerate(candidates()):
        if trial >= budget:
            break
        line = LineThroughOrigin(direction)
        dots = code.points @ line.direction
        plus, minus = hemisphere_counts(code, line)
        for sign, count in ((+1, plus), (-1, minus)):
            if card / 2 <= count < card:
                result = (line, sign, count)
                if np.min(np.abs(dots)) > EPS_UNIT:
                    return result
                if fallback is None:
                    fallback = result
    if fallback is not None:
        return fallback
    raise SearchBudgetExhausted(f"no balanced line found in {budget} trials")


# ---------------------------------------------------------------------------
# Composite pipelines
# ---------------------------------------------------------------------------

def _solve_lambda(target_cos: float, current_cos: float) -> float:
    """Solve lam * current + 1 - lam = target for lam, requiring lam in [0, 1]."""
    if current_cos >= 1.0 - 1e-15:
        raise LambdaOutOfRange("intermediate code has cos phi = 1")
    lam = (1.0 - target_cos) / (1.0 - current_cos)
    if not (0.0 <= lam <= 1.0):
        raise LambdaOutOfRange(
            f"required lambda {lam:.6g} outside [0, 1] "
            f"(target cos {target_cos:.6g} < intermediate cos {current_cos:.6g})"
        )
    return lam


def _generic_projection_line(
    code: SphericalCode, rng: np.random.Generator, trials: int = 64
) -> list[LineThroughOrigin]:
    """Candidate lines for spoil2 inside composite pipelines.

    Bisectors of point pairs push the minimum-angle cosine down (the two
    points project to nearly antipodal rays); random directions keep it
    roughly unchanged.  All candidates avoiding points on the axis are
    returned, ordered bisectors first.
    """
    cands: list[LineThroughOrigin] = []
    i, j = code.min_angle_pair
    pairs = [(i, j)]
    for a in range(code.card):
        for b in range(a + 1, code.card):
            if (a, b) != (i, j):
                pairs.append((a, b))
    for a, b in pairs[: trials // 2]:
        mid = code.points[a] + code.points[b]
        nrm = np.linalg.norm(mid)
        if nrm > EPS_UNIT:
            cands.append(LineThroughOrigin(mid / nrm))
    for _ in range(trials - len(cands)):
        v = rng.standard_normal(code.dimension)
        cands.append(LineThroughOrigin(v / np.linalg.norm(v)))
    ok = []
    for line in cands:
        resid = 1.0 - (code.points @ line.direction) ** 2
        if np.min(resid) > EPS_UNIT:
            ok.append(line)
    return ok


def _balanced_candidates(
    code: SphericalCode, seed: int = 0, limit: int = 16
) -> list[tuple[LineThroughOrigin, int, int]]:
    """Valid balanced splits, deduplicated and sorted by hemisphere count.

    Same candidate order as find_balanced_line, but all admissible
    (line, sign, count) triples are collected so pipelines can back off to
    a different split when a later stage fails.
    """
    if code.card < 2:
        raise DegenerateCode("balanced split needs at least two points")
    n, card = code.dimension, code.card
    budget = 10 * card * n
    rng = np.random.default_rng(seed)

    def candidates():
        for p in code.points:
            yield p
        for i in range(card):
            for j in range(i + 1, card):
                mid = code.points[i] + code.points[j]
                nrm = np.linalg.norm(mid)
                if nrm > EPS_UNIT:
                    yield mid / nrm
        while True:
            v = rng.standard_normal(n)
            yield v / np.linalg.norm(v)

    found: list[tuple[LineThroughOrigin, int, int]] = []
    seen: set[frozenset] = set()
    for trial, direction in enumerate(candidates()):
        if trial >= budget or len(found) >= limit:
            break
        line = LineThroughOrigin(direction)
        dots = code.points @ line.direction
        if np.min(np.abs(dots)) <= EPS_UNIT:
            continue
        plus = int(np.count_nonzero(dots >= 0.0))
        for sign, count in ((+1, plus), (-1, card - plus)):
            if not (card / 2 <= count < card):
                continue
            mask = frozenset(
                np.flatnonzero(dots >= 0.0 if sign > 0 else dots < 0.0)
            )
            if mask in seen:
                continue
            seen.add(mask)
            found.append((line, sign, count))
    if not found:
        line, sign, count = find_balanced_line(code, seed)
        found.append((line, sign, count))
    found.sort(key=lambda t: t[2])
    return found


def _spoil2_below(
    code: SphericalCode, ceiling: float, rng: np.random.Generator
) -> SphericalCode:
    """Apply spoil2 with a line keeping the result's cos phi <= ceiling.

    Tries candidate lines and returns the first admissible result that also
    preserves cardinality; raises LambdaOutOfRange if none is found.
    """
    best = None
    for line in _generic_projection_line(code, rng):
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                out, _ = spoil2(code, line)
        except (DegenerateCode, PointOnAxis):
            continue
        if out.card != code.card:
            continue
        c = out.cos_min_angle
        if c <= ceiling and (best is None or c < best.cos_min_angle):
            best = out
            if c < ceiling - 0.05:
                break
    if best is None:
        raise LambdaOutOfRange(
            f"no projection line keeps cos phi below {ceiling:.6g}"
        )
    return best


def _restrict_project_embed(
    current: SphericalCode, steps_left: int, target: float, seed: int
) -> SphericalCode:
    """Hemisphere restrictions, two projections, one section embedding.

    Backtracks over admissible balanced splits at every restriction stage,
    since a poor split can leave too many points for the low-dimensional
    projections downstream.
    """
    if steps_left == 0:
        rng = np.random.default_rng(seed)
        out = _spoil2_below(current, target, rng)
        out = _spoil2_below(out, target, rng)
        lam_solved = _solve_lambda(target, out.cos_min_angle)
        return spoil1_lambda(out, lam_solved)
    last_error: Exception | None = None
    for line, sign, _count in _balanced_candidates(current, seed):
        try:
            return _restrict_project_embed(
                spoil3(current, line, sign), steps_left - 1, target, seed
            )
        except (LambdaOutOfRange, DegenerateCode, SearchBudgetExhausted) as exc:
            last_error = exc
    raise LambdaOutOfRange(
        f"no hemisphere choice admits the downstream projections "
        f"(last failure: {last_error})"
    )


def numerical_spoil(
    code: SphericalCode,
    template: str,
    *,
    lam: float | None = None,
    line: LineThroughOrigin | None = None,
    subcode_steps: int = 1,
    seed: int = 0,
) -> SphericalCode:
    """Realize one of the three numerical-spoiling parameter templates.

    template ``"dim_up"``:   [n+1, k, lam*cos + 1 - lam]   (requires ``lam``)
    template ``"dim_down"``: [n-1, k, (1+u)*cos +/- u]      (optional ``line``)
    template ``"subcode"``:  [n-1, k-a, cos]                (``subcode_steps`` = a)

    The subcode pipeline runs a hemisphere restrictions, two projections,
    then one section embedding with the lambda solving back to the original
    cos phi.  The guarantees assume the small-angle range; outside it only a
    warning is issued since the geometry stays well defined.
    """
    if code.min_angle > np.pi / 2 + EPS_ANGLE:
        warnings.warn("code is outside the small-angle range; templates are "
                      "not guaranteed", stacklevel=2)
    rng = np.random.default_rng(seed)
    if template == "dim_up":
        if lam is None:
            raise ValueError("dim_up requires lam")
        return spoil1_lambda(code, lam)
    if template == "dim_down":
        if line is None:
            line = _generic_projection_line(code, rng)[0]
        out, _ = spoil2(code, line)
        return out
    if template == "subcode":
        a = subcode_steps
        k = float(np.log2(code.card))
        if not (0 < a < k):
            raise ValueError(f"subcode steps must satisfy 0 < a < k = {k:.4g}")
        return _restrict_project_embed(code, a, code.cos_min_angle, seed)
    raise ValueError(f"unknown template {template!r}")


def composite_spoil_up(code: SphericalCode) -> SphericalCode:
    """One-step pipeline to parameters [n+1, k, n/(n+1) cos + 1/(n+1)]."""
    n = code.dimension
    return spoil1_lambda(code, n / (n + 1))


def composite_spoil_down(
    code: SphericalCode, phi_c: float, *, subcode_steps: int | None = None, seed: int = 0
) -> SphericalCode:
    """Pipeline to parameters [n-1, k-a_c, n/(n-1) cos - cos(phi_c)/(n-1)].

    ``a_c`` defaults to floor(H(phi_c)) computed by the bounds module; the
    code must have phi > phi_c, k >= a_c, and enough room for the final
    lambda solve to land in [0, 1] (checked at runtime).
    """
    from .bounds import kl_bound  # local import: avoids a module cycle

    n = code.dimension
    a_c = subcode_steps if subcode_steps is not None else int(np.floor(kl_bound(phi_c)))
    if code.min_angle <= phi_c:
        raise ValueError(
            f"violated precondition phi > phi_c: {code.min_angle:.6g} <= {phi_c:.6g}"
        )
    k = float(np.log2(code.card))
    if k < a_c:
        raise ValueError(f"violated precondition k >= a_c: {k:.4g} < {a_c}")
    target = n / (n - 1) * code.cos_min_angle - float(np.cos(phi_c)) / (n - 1)
    return _restrict_project_embed(code, a_c, target, seed)


# ---------------------------------------------------------------------------
# File format: "dim <n>" then one point per line, '#' comments
# ---------------------------------------------------------------------------

def dump_spherical_code(code: SphericalCode) -> str:
    lines = [f"dim {code.dimension}"]
    for p in code.points:
        lines.append(" ".join(f"{c:.17g}" for c in p))
    return "\n".join(lines) + "\n"


def load_spherical_code(text: str, *, normalize: bool = False) -> SphericalCode:
    dim = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if dim is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "dim":
                raise InputFormatError("expected 'dim <n>' header", lineno)
            try:
                dim = int(parts[1])
            except ValueError:
                raise InputFormatError(f"bad dimension {parts[1]!r}", lineno) from None
            if dim < 1:
                raise InputFormatError("dimension must be >= 1", lineno)
            continue
        try:
            coords = [float(t) for t in line.split()]
        except ValueError:
            raise InputFormatError("malformed coordinate", lineno) from None
        if len(coords) != dim:
            raise InputFormatError(
                f"expected {dim} coordinates, got {len(coords)}", lineno
            )
        nrm = float(np.linalg.norm(coords))
        if not normalize and abs(nrm - 1.0) > 1e-9:
            raise InputFormatError(
                f"point norm {nrm!r} not within 1e-9 of 1 (use normalize)", lineno
            )
        rows.append(coords)
    if dim is None or not rows:
        raise InputFormatError("no points found")
    return SphericalCode(np.asarray(rows), normalize=normalize)
