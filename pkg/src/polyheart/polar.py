"""Polar bodies about an interior center, and the Santalo point.

The polar of a polygon about an interior point p collects every y with
(x - p) . (y - p) <= 1 over x in the body.  Only the vertices matter, so
the polar of an n-gon is again an n-gon (edges and vertices swap roles)
and the construction is exact.  Its area blows up like 1/dist(p, boundary)
as p approaches the boundary, which is what makes the area inequalities
here informative: a small polar area certifies that the center sits well
inside the body.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CenterTooCloseToBoundary
from .geometry import ConvexPolygon, boundary_distance, halfplane_intersection, point_in

_SANTALO_ITERATIONS = 120


@dataclass(frozen=True)
class PolarBody:
    base: ConvexPolygon
    center: np.ndarray
    body: ConvexPolygon

    @property
    def area(self) -> float:
        return self.body.area


def gauge(poly: ConvexPolygon, center, x) -> float:
    """Minkowski gauge of the body about an interior center.

    0 at the center, 1 on the boundary, linear along rays.
    """
    p = np.asarray(center, dtype=float)
    z = np.asarray(x, dtype=float) - p
    gaps = poly.edge_offsets - poly.edge_normals @ p
    if np.any(gaps <= poly.eps):
        raise CenterTooCloseToBoundary("gauge center sits on or outside an edge line")
    return float(max(0.0, (poly.edge_normals @ z / gaps).max()))


def polar_polygon(poly: ConvexPolygon, center) -> PolarBody:
    """Polar body about an interior center, positioned around that center.

    Each base vertex v contributes the half-plane (v - center) . (y - center) <= 1;
    their intersection is the exact polar for a polygon.
    """
    p = np.asarray(center, dtype=float)
    d = boundary_distance(poly, p)
    if not point_in(poly, p) or d <= 10.0 * poly.eps:
        raise CenterTooCloseToBoundary(
            f"polar center must sit strictly inside (boundary distance {d:.3e})"
        )
    diff = poly.vertices - p
    norms = np.linalg.norm(diff, axis=1)
    rows = np.column_stack([diff / norms[:, None], 1.0 / norms])
    reach = 1.0 / d
    region = halfplane_intersection(
        rows, (-reach, reach, -reach, reach), 1e-12 * reach, slack=0.0
    )
    if region.kind != "polygon":
        raise CenterTooCloseToBoundary("polar collapsed; center too extreme for this body")
    return PolarBody(poly, p, ConvexPolygon(region.points + p))


def santalo_point(poly: ConvexPolygon, tol: float = 1e-7) -> np.ndarray:
    """Interior point minimizing the polar area, by axis pattern search.

    The objective is smooth with an interior minimum; steps that leave the
    body (or get too close to its boundary) are rejected, the step halves
    when no axis move improves, and the search stops at step < tol * diam.
    """
    p = poly.centroid.copy()
    best = polar_polygon(poly, p).area
    step = poly.diameter / 8.0
    floor = tol * poly.diameter
    axes = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    for _ in range(_SANTALO_ITERATIONS):
        moved = False
        for ax in axes:
            cand = p + step * ax
            try:
                val = polar_polygon(poly, cand).area
            except CenterTooCloseToBoundary:
                continue
            if val < best * (1.0 - 1e-14):
                p, best, moved = cand, val, True
        if not moved:
            step *= 0.5
            if step < floor:
                break
    return p


@dataclass(frozen=True)
class AreaCheck:
    lhs: float
    rhs: float
    ok: bool


def polar_area_lower_check(poly: ConvexPolygon, center) -> AreaCheck:
    """Polar area against its reciprocal-distance lower envelope.

    In the plane the polar area is at least 1/(R * d) with R the farthest
    boundary distance from the center and d the nearest; the bound blows
    up as the center drifts toward the boundary, exactly like the area.
    """
    p = np.asarray(center, dtype=float)
    lhs = polar_polygon(poly, p).area
    far = float(np.linalg.norm(poly.vertices - p, axis=1).max())
    near = boundary_distance(poly, p)
    rhs = 1.0 / (far * near)
    return AreaCheck(lhs, rhs, lhs >= rhs * (1.0 - 1e-9))


def polar_area_eigen_check(poly: ConvexPolygon, hot_spot_limit, lam1: float, slack: float = 0.02) -> AreaCheck:
    """Polar area at the hot-spot limit against (lam1/2)^2 * area.

    Both inputs normally come from discretized computations, hence the
    default 2 percent slack on the comparison.
    """
    lhs = polar_polygon(poly, hot_spot_limit).area
    rhs = (lam1 / 2.0) ** 2 * poly.area
    return AreaCheck(lhs, rhs, lhs <= rhs * (1.0 + slack))
