"""Exact-ish planar geometry for convex polygons.

Conventions used throughout the package:

* polygons are counterclockwise vertex arrays of shape (n, 2), float64;
* directions are unit vectors, validated to |norm - 1| <= 1e-12;
* a half-plane (normal n, offset c) denotes the set {x : n . x <= c};
* every tolerance is a single knob: ``eps = EPS_REL * diameter`` unless a
  caller passes its own absolute value.

Degenerate results are first-class: clipping and half-plane intersection
return a :class:`Region` tagged polygon / segment / point / empty instead of
silently dropping lower-dimensional sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.optimize import linprog

from .errors import InvalidPolygon

EPS_REL = 1e-9

# Extent thresholds (in units of eps) separating point / segment / polygon
# when classifying a clipped region.  Kept well above the per-plane clip
# slack so fattened degenerate sets classify correctly.
_POINT_FACTOR = 50.0
_WIDTH_FACTOR = 50.0


def unit(theta: float) -> np.ndarray:
    """Unit vector at angle ``theta`` (radians, measured from +x axis)."""
    return np.array([np.cos(theta), np.sin(theta)])


def perp(omega: np.ndarray) -> np.ndarray:
    """Rotate a vector by +90 degrees: (x, y) -> (-y, x)."""
    return np.array([-omega[1], omega[0]])


def check_direction(omega) -> np.ndarray:
    """Validate a unit direction and return it as a float64 array."""
    w = np.asarray(omega, dtype=float)
    if w.shape != (2,) or not np.all(np.isfinite(w)):
        raise ValueError(f"direction must be a finite 2-vector, got {omega!r}")
    if abs(np.hypot(w[0], w[1]) - 1.0) > 1e-12:
        raise ValueError(f"direction must be unit length, got norm {np.hypot(w[0], w[1])!r}")
    return w


@dataclass(frozen=True)
class HalfPlane:
    """The set {x : normal . x <= offset}, with unit normal."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        object.__setattr__(self, "normal", check_direction(self.normal))
        object.__setattr__(self, "offset", float(self.offset))

    def signed_distance(self, x) -> float:
        """Positive outside the half-plane, negative inside."""
        return float(np.dot(self.normal, np.asarray(x, dtype=float)) - self.offset)


def _polygon_area(points: np.ndarray) -> float:
    x, y = points[:, 0], points[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def _polygon_centroid(points: np.ndarray) -> np.ndarray:
    x, y = points[:, 0], points[:, 1]
    cross = x * np.roll(y, -1) - np.roll(x, -1) * y
    a = 0.5 * cross.sum()
    if abs(a) < 1e-300:
        return points.mean(axis=0)
    cx = ((x + np.roll(x, -1)) * cross).sum() / (6.0 * a)
    cy = ((y + np.roll(y, -1)) * cross).sum() / (6.0 * a)
    return np.array([cx, cy])


def _max_pairwise_distance(points: np.ndarray) -> float:
    n = len(points)
    if n < 2:
        return 0.0
    best = 0.0
    block = max(1, 2_000_000 // n)
    for k in range(0, n, block):
        chunk = points[k:k + block]
        d2 = np.sum((chunk[:, None, :] - points[None, :, :]) ** 2, axis=-1)
        best = max(best, float(d2.max()))
    return float(np.sqrt(best))


def _farthest_pair(points: np.ndarray) -> tuple[int, int]:
    d2 = np.sum((points[:, None, :] - points[None, :, :]) ** 2, axis=-1)
    i, j = np.unravel_index(int(np.argmax(d2)), d2.shape)
    return int(i), int(j)


@dataclass(frozen=True)
class Region:
    """Result of clipping: a polygon, segment, point, or the empty set.

    ``points`` holds the defining vertices: the CCW boundary for a polygon,
    two endpoints for a segment, one point, or an empty (0, 2) array.
    """

    kind: str  # 'polygon' | 'segment' | 'point' | 'empty'
    points: np.ndarray

    @property
    def is_empty(self) -> bool:
        return self.kind == "empty"

    @property
    def area(self) -> float:
        if self.kind != "polygon":
            return 0.0
        return _polygon_area(self.points)

    def representative(self) -> np.ndarray:
        """Centroid for polygons, midpoint for segments, the point itself."""
        if self.kind == "empty":
            raise ValueError("empty region has no representative point")
        if self.kind == "polygon":
            return _polygon_centroid(self.points)
        return self.points.mean(axis=0)

    def extent(self) -> float:
        if self.kind == "empty":
            return 0.0
        return _max_pairwise_distance(self.points)

    def support(self, omega) -> float:
        if self.kind == "empty":
            return -np.inf
        return float((self.points @ np.asarray(omega, dtype=float)).max())


EMPTY_REGION = Region("empty", np.zeros((0, 2)))


class ConvexPolygon:
    """Immutable CCW convex polygon with cached metric quantities."""

    def __init__(self, vertices, eps_rel: float = EPS_REL):
        v = np.array(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise InvalidPolygon(f"need at least 3 planar vertices, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise InvalidPolygon("vertices must be finite")
        scale = max(_max_pairwise_distance(v), 1e-300)
        edges = np.roll(v, -1, axis=0) - v
        lengths = np.hypot(edges[:, 0], edges[:, 1])
        if np.any(lengths <= eps_rel * scale):
            raise InvalidPolygon("duplicate or near-duplicate consecutive vertices")
        cross = edges[:, 0] * np.roll(edges[:, 1], -1) - edges[:, 1] * np.roll(edges[:, 0], -1)
        if _polygon_area(v) <= 0.0:
            raise InvalidPolygon("vertices must be in counterclockwise order with positive area")
        if np.any(cross < -eps_rel * scale * scale):
            raise InvalidPolygon("polygon is not convex")
        v.setflags(write=False)
        self.vertices = v
        self.eps_rel = eps_rel

    def __repr__(self):
        return f"ConvexPolygon(n={len(self.vertices)}, area={self.area:.6g})"

    def __len__(self):
        return len(self.vertices)

    @cached_property
    def area(self) -> float:
        return _polygon_area(self.vertices)

    @cached_property
    def perimeter(self) -> float:
        e = np.roll(self.vertices, -1, axis=0) - self.vertices
        return float(np.hypot(e[:, 0], e[:, 1]).sum())

    @cached_property
    def centroid(self) -> np.ndarray:
        c = _polygon_centroid(self.vertices)
        c.setflags(write=False)
        return c

    @cached_property
    def diameter(self) -> float:
        return _max_pairwise_distance(self.vertices)

    @cached_property
    def eps(self) -> float:
        return self.eps_rel * self.diameter

    @cached_property
    def edge_normals(self) -> np.ndarray:
        """Outward unit normals, one row per edge i: (v_i, v_{i+1})."""
        e = np.roll(self.vertices, -1, axis=0) - self.vertices
        lengths = np.hypot(e[:, 0], e[:, 1])
        n = np.column_stack([e[:, 1], -e[:, 0]]) / lengths[:, None]
        n.setflags(write=False)
        return n

    @cached_property
    def edge_offsets(self) -> np.ndarray:
        c = np.sum(self.edge_normals * self.vertices, axis=1)
        c.setflags(write=False)
        return c

    @cached_property
    def edge_lengths(self) -> np.ndarray:
        e = np.roll(self.vertices, -1, axis=0) - self.vertices
        lengths = np.hypot(e[:, 0], e[:, 1])
        lengths.setflags(write=False)
        return lengths

    @cached_property
    def bbox(self) -> tuple[float, float, float, float]:
        v = self.vertices
        return (float(v[:, 0].min()), float(v[:, 0].max()),
                float(v[:, 1].min()), float(v[:, 1].max()))


@dataclass(frozen=True)
class PolygonMetrics:
    area: float
    perimeter: float
    centroid: np.ndarray
    diameter: float


def metrics(poly: ConvexPolygon) -> PolygonMetrics:
    """Shoelace area, perimeter, area centroid, max vertex-pair diameter."""
    return PolygonMetrics(poly.area, poly.perimeter, poly.centroid.copy(), poly.diameter)


def support(poly: ConvexPolygon, omega) -> float:
    """Support value h(omega) = max over the body of x . omega."""
    w = check_direction(omega)
    return float((poly.vertices @ w).max())


def width(poly: ConvexPolygon, omega) -> float:
    """Width along omega: h(omega) + h(-omega)."""
    w = check_direction(omega)
    vals = poly.vertices @ w
    return float(vals.max() - vals.min())


def point_in(poly: ConvexPolygon, x, eps: float | None = None) -> bool:
    """Membership test with tolerance (boundary points count as inside)."""
    if eps is None:
        eps = poly.eps
    x = np.asarray(x, dtype=float)
    return bool(np.all(poly.edge_normals @ x <= poly.edge_offsets + eps))


def contains(inner, outer: ConvexPolygon, eps: float | None = None) -> bool:
    """True when every vertex of ``inner`` lies in ``outer`` (within eps)."""
    if eps is None:
        eps = outer.eps
    if isinstance(inner, Region):
        if inner.is_empty:
            return True
        pts = inner.points
    elif isinstance(inner, ConvexPolygon):
        pts = inner.vertices
    else:
        pts = np.atleast_2d(np.asarray(inner, dtype=float))
    if len(pts) == 0:
        return True
    vals = pts @ outer.edge_normals.T - outer.edge_offsets[None, :]
    return bool(vals.max() <= eps)


def boundary_distance(poly: ConvexPolygon, x) -> float:
    """Distance from a point to the polygon boundary (unsigned)."""
    x = np.asarray(x, dtype=float)
    a = poly.vertices
    b = np.roll(poly.vertices, -1, axis=0)
    e = b - a
    ee = np.sum(e * e, axis=1)
    t = np.clip(np.sum((x - a) * e, axis=1) / ee, 0.0, 1.0)
    proj = a + t[:, None] * e
    return float(np.hypot(*(x - proj).T).min())


def _dedupe_ring(points: list[np.ndarray] | np.ndarray, tol: float) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if len(pts) == 0:
        return pts.reshape(0, 2)
    keep = [pts[0]]
    for p in pts[1:]:
        if np.hypot(*(p - keep[-1])) > tol:
            keep.append(p)
    while len(keep) > 1 and np.hypot(*(keep[0] - keep[-1])) <= tol:
        keep.pop()
    return np.array(keep)


def _clip_ring(points: np.ndarray, normal: np.ndarray, offset: float, tol: float) -> np.ndarray:
    """Sutherland-Hodgman cut of a CCW ring by {n . x <= c}."""
    if len(points) == 0:
        return points
    d = points @ normal - offset
    out: list[np.ndarray] = []
    n = len(points)
    for i in range(n):
        j = (i + 1) % n
        pi, pj = points[i], points[j]
        di, dj = d[i], d[j]
        if di <= tol:
            out.append(pi)
            if dj > tol and di < -tol:
                out.append(pi + (di / (di - dj)) * (pj - pi))
        elif dj < -tol:
            out.append(pi + (di / (di - dj)) * (pj - pi))
    return np.array(out) if out else np.zeros((0, 2))


def _classify(points: np.ndarray, eps: float) -> Region:
    pts = _dedupe_ring(points, eps)
    if len(pts) == 0:
        return EMPTY_REGION
    if len(pts) == 1:
        return Region("point", pts.copy())
    i, j = _farthest_pair(pts)
    extent = float(np.hypot(*(pts[j] - pts[i])))
    if extent <= _POINT_FACTOR * eps:
        # bbox midpoint: insensitive to vertex multiplicity along the ring
        mid = 0.5 * (pts.min(axis=0) + pts.max(axis=0))
        return Region("point", mid[None, :])
    u = (pts[j] - pts[i]) / extent
    center = pts.mean(axis=0)
    t = (pts - center) @ u
    w = np.abs((pts - center) @ perp(u))
    if w.max() <= _WIDTH_FACTOR * eps:
        lo, hi = center + t.min() * u, center + t.max() * u
        return Region("segment", np.array([lo, hi]))
    if len(pts) < 3:
        lo, hi = center + t.min() * u, center + t.max() * u
        return Region("segment", np.array([lo, hi]))
    if _polygon_area(pts) < 0:
        pts = pts[::-1]
    return Region("polygon", pts)


def clip(poly: ConvexPolygon, plane: HalfPlane) -> Region:
    """Intersect the polygon with the half-plane, degenerate-safe."""
    ring = _clip_ring(poly.vertices, plane.normal, plane.offset, 0.0)
    return _classify(ring, poly.eps)


def reflect_points(points: np.ndarray, plane: HalfPlane) -> np.ndarray:
    """Mirror points across the line {n . x = c}."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    d = pts @ plane.normal - plane.offset
    return pts - 2.0 * d[:, None] * plane.normal[None, :]


def reflect(poly: ConvexPolygon, plane: HalfPlane) -> ConvexPolygon:
    """Mirror image of the polygon (vertex order reversed to stay CCW)."""
    return ConvexPolygon(reflect_points(poly.vertices, plane)[::-1], eps_rel=poly.eps_rel)


def halfplane_intersection(planes, bbox, eps: float, slack: float | None = None) -> Region:
    """Intersect finitely many half-planes inside a seed bounding box.

    ``planes`` is an iterable of HalfPlane or an (m, 3) array of rows
    (nx, ny, c).  ``bbox`` = (xmin, xmax, ymin, ymax) must contain the
    result.  Each cut keeps a slack (default ``eps``) so that segment- and
    point-shaped intersections survive to be classified rather than
    vanishing to rounding; pass ``slack=0.0`` when the result is known to
    be full-dimensional and exact corners matter.
    """
    if isinstance(planes, np.ndarray):
        rows = planes
    else:
        rows = np.array([[p.normal[0], p.normal[1], p.offset] for p in planes])
    if slack is None:
        slack = eps
    xmin, xmax, ymin, ymax = bbox
    ring = np.array([[xmin, ymin], [xmax, ymin], [xmax, ymax], [xmin, ymax]], dtype=float)
    for nx, ny, c in rows:
        ring = _clip_ring(ring, np.array([nx, ny]), c + slack, 0.0)
        if len(ring) == 0:
            return EMPTY_REGION
        if len(ring) > 8:
            ring = _dedupe_ring(ring, 0.25 * eps)
    return _classify(ring, eps)


def region_point_distance(region: Region, x) -> float:
    """Distance from a point to a region (0 inside a polygon)."""
    x = np.asarray(x, dtype=float)
    if region.is_empty:
        return np.inf
    if region.kind == "point":
        return float(np.hypot(*(x - region.points[0])))
    if region.kind == "segment":
        a, b = region.points
        e = b - a
        ee = float(e @ e)
        t = 0.0 if ee == 0.0 else float(np.clip((x - a) @ e / ee, 0.0, 1.0))
        return float(np.hypot(*(x - (a + t * e))))
    pts = region.points
    normals = np.column_stack([
        (np.roll(pts, -1, axis=0) - pts)[:, 1],
        -(np.roll(pts, -1, axis=0) - pts)[:, 0],
    ])
    normals /= np.hypot(normals[:, 0], normals[:, 1])[:, None]
    offs = np.sum(normals * pts, axis=1)
    if np.all(normals @ x <= offs):
        return 0.0
    a = pts
    b = np.roll(pts, -1, axis=0)
    e = b - a
    ee = np.sum(e * e, axis=1)
    t = np.clip(np.sum((x - a) * e, axis=1) / ee, 0.0, 1.0)
    proj = a + t[:, None] * e
    return float(np.hypot(*(x - proj).T).min())


def line_interval(poly: ConvexPolygon, point, direction, eps: float | None = None):
    """Parameter range {t : point + t * direction in poly}, or None.

    ``direction`` need not be unit; t is in units of |direction|.  Lines
    grazing a vertex return a collapsed interval (t0, t0).
    """
    if eps is None:
        eps = poly.eps
    p = np.asarray(point, dtype=float)
    d = np.asarray(direction, dtype=float)
    a = poly.edge_normals @ d
    b = poly.edge_offsets - poly.edge_normals @ p
    lo, hi = -np.inf, np.inf
    par = np.abs(a) <= 1e-13
    if np.any(b[par] < -eps):
        return None
    pos = a > 1e-13
    neg = a < -1e-13
    if np.any(pos):
        hi = float((b[pos] / a[pos]).min())
    if np.any(neg):
        lo = float((b[neg] / a[neg]).max())
    if not np.isfinite(lo) or not np.isfinite(hi):
        return None  # unbounded direction cannot happen for a polygon
    if lo > hi:
        if lo - hi <= 1e-7 * max(poly.diameter, 1.0):
            mid = 0.5 * (lo + hi)
            return (mid, mid)
        return None
    return (lo, hi)


def shadow_interval(poly: ConvexPolygon, omega) -> tuple[float, float]:
    """Range of the projection of the body onto the axis perp(omega)."""
    w = check_direction(omega)
    s = poly.vertices @ perp(w)
    return float(s.min()), float(s.max())


def chord(poly: ConvexPolygon, s: float, omega):
    """Chord of the body along omega over shadow coordinate s.

    Returns (a, b) with a <= b, the entry/exit coordinates along omega,
    or None when the line misses the body.
    """
    w = check_direction(omega)
    return line_interval(poly, float(s) * perp(w), w)


@dataclass(frozen=True)
class ChebyshevResult:
    center: np.ndarray
    radius: float
    unique: bool


def chebyshev_center(poly: ConvexPolygon) -> ChebyshevResult:
    """Incenter: the deepest point(s) of the polygon.

    Solves max r s.t. n_e . x + r <= c_e as a linear program, then
    reconstructs the full optimal set by re-intersecting the inward-offset
    edges; a tie (e.g. oblong bodies) comes back as that segment's
    midpoint with unique=False.
    """
    n = poly.edge_normals
    c = poly.edge_offsets
    a_ub = np.column_stack([n, np.ones(len(c))])
    res = linprog(c=[0.0, 0.0, -1.0], A_ub=a_ub, b_ub=c,
                  bounds=[(None, None), (None, None), (0.0, None)], method="highs")
    if not res.success:
        raise InvalidPolygon(f"incenter LP failed: {res.message}")
    radius = float(res.x[2])
    planes = np.column_stack([n, c - radius])
    opt = halfplane_intersection(planes, poly.bbox, 2.0 * poly.eps)
    if opt.is_empty:  # cannot happen unless tolerances are inconsistent
        return ChebyshevResult(np.array(res.x[:2]), radius, True)
    unique = opt.extent() <= 1e3 * poly.eps
    return ChebyshevResult(opt.representative(), radius, unique)
