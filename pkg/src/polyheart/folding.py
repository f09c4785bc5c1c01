"""Maximal folding offsets and the heart of a convex polygon.

For a direction omega, the folding offset is the smallest level lambda such
that reflecting the part of the body above the line {x . omega = lambda}
across that line lands inside the body.  For polygons it equals the largest
chord midpoint over the projections of the vertices, which is what
:func:`folding_offset` computes; :func:`folding_offset_bisection` instead
bisects directly on the reflection-containment definition and serves as the
independent reference implementation.

Intersecting the half-planes {x . omega <= offset} over many directions
(plus the body's own edges) yields an outer approximation of the heart: the
region that provably confines the hot spot of the heat flow for all times.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InconsistentHeart, OutsideShadow, ToleranceTooSmall, WitnessInvalid
from .geometry import (
    ConvexPolygon,
    Region,
    boundary_distance,
    chord,
    check_direction,
    contains,
    halfplane_intersection,
    perp,
    region_point_distance,
    support,
)

_PARALLEL_TOL = 1e-13


@dataclass(frozen=True)
class FoldEntry:
    """Folding offset for one direction, with the witnessing projection."""

    omega: np.ndarray
    value: float
    witness_s: float
    witness_vertex: int


@dataclass(frozen=True)
class FoldingProfile:
    entries: tuple[FoldEntry, ...]

    @property
    def directions(self) -> np.ndarray:
        return np.array([e.omega for e in self.entries])

    @property
    def values(self) -> np.ndarray:
        return np.array([e.value for e in self.entries])

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class Heart:
    """Outer approximation of the heart plus the planes that cut it."""

    region: Region
    planes: np.ndarray  # rows (nx, ny, c), folding planes then body edges

    @property
    def kind(self) -> str:
        return self.region.kind

    @property
    def vertices(self) -> np.ndarray:
        return self.region.points


def chord_midpoint(poly: ConvexPolygon, omega, s: float) -> float:
    """Midpoint coordinate (along omega) of the chord over shadow point s."""
    iv = chord(poly, s, omega)
    if iv is None:
        raise OutsideShadow(f"shadow coordinate {s} misses the body")
    return 0.5 * (iv[0] + iv[1])


def vertex_chord_midpoints(poly: ConvexPolygon, omega) -> tuple[np.ndarray, np.ndarray]:
    """Chord midpoints over every vertex projection.

    Returns (s, f): projection coordinates of the vertices onto the axis
    perp(omega) and the chord-midpoint value above each.  Degenerate chords
    at shadow-extreme vertices contribute the vertex's own omega-coordinate.
    """
    w = check_direction(omega)
    u = perp(w)
    v = poly.vertices
    s = v @ u
    own = v @ w
    a = poly.edge_normals @ w                      # (m,)
    du = poly.edge_normals @ u
    pos = a > _PARALLEL_TOL
    neg = a < -_PARALLEL_TOL
    n = len(v)
    hi = np.full(n, np.inf)
    lo = np.full(n, -np.inf)
    # chunk the (edges x vertices) tableau so large polygons stay cheap
    block = max(1, 4_000_000 // max(len(a), 1))
    for k in range(0, n, block):
        sk = s[k:k + block]
        b = poly.edge_offsets[:, None] - np.outer(du, sk)  # (m, len(sk))
        if np.any(pos):
            hi[k:k + block] = (b[pos] / a[pos, None]).min(axis=0)
        if np.any(neg):
            lo[k:k + block] = (b[neg] / a[neg, None]).max(axis=0)
    f = 0.5 * (lo + hi)
    bad = ~np.isfinite(f) | (lo > hi)
    f[bad] = own[bad]
    return s, f


def folding_offset(poly: ConvexPolygon, omega) -> FoldEntry:
    """Maximal folding offset via the vertex-projection maximum.

    The chord-midpoint function is piecewise linear in the shadow coordinate
    with breakpoints exactly at vertex projections, so its maximum over the
    shadow is attained at one of them.  First maximal vertex index wins ties.
    """
    w = check_direction(omega)
    s, f = vertex_chord_midpoints(poly, w)
    j = int(np.argmax(f))
    return FoldEntry(w, float(f[j]), float(s[j]), j)


def folding_profile(poly: ConvexPolygon, directions) -> FoldingProfile:
    return FoldingProfile(tuple(folding_offset(poly, w) for w in directions))


def folding_offset_bisection(poly: ConvexPolygon, omega, tol: float) -> float:
    """Reference folding offset, straight from the definition.

    Bisects on lambda over [-h(-omega), h(omega)] with the predicate
    "the reflected upper cap fits inside the body".  Feasibility is
    monotone in lambda (smaller caps are easier to fold), which the
    endpoints assert.  The result is the smallest feasible lambda to
    within max(tol, 10 * eps).
    """
    w = check_direction(omega)
    if tol < poly.eps:
        raise ToleranceTooSmall(f"tol {tol} below geometric floor {poly.eps}")
    tol = max(tol, 10.0 * poly.eps)
    v = poly.vertices
    nrm = poly.edge_normals
    off = poly.edge_offsets
    # Containment slack sits just above fp noise.  A generous slack would
    # get amplified by 1/sin(contact angle) at grazing contacts and make
    # the oracle undershoot; this one keeps that error below tol.
    feas = 1e-13 * poly.diameter

    def feasible(lam: float) -> bool:
        ring = _upper_cap_ring(v, w, lam)
        if len(ring) == 0:
            return True
        refl = ring - 2.0 * ((ring @ w - lam))[:, None] * w[None, :]
        return bool((refl @ nrm.T - off[None, :]).max() <= feas)

    hi = support(poly, w)
    lo = -support(poly, -w)
    if not feasible(hi):
        raise InconsistentHeart("folding infeasible at the support level; tolerance inconsistency")
    if feasible(lo):
        return lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _upper_cap_ring(vertices: np.ndarray, w: np.ndarray, lam: float) -> np.ndarray:
    """Vertices of {x in poly : x . w >= lam}, degenerate slivers kept."""
    d = lam - vertices @ w  # <= 0 inside the cap
    out: list[np.ndarray] = []
    n = len(vertices)
    for i in range(n):
        j = (i + 1) % n
        di, dj = d[i], d[j]
        if di <= 0.0:
            out.append(vertices[i])
            if dj > 0.0 and di < 0.0:
                out.append(vertices[i] + (di / (di - dj)) * (vertices[j] - vertices[i]))
        elif dj < 0.0:
            out.append(vertices[i] + (di / (di - dj)) * (vertices[j] - vertices[i]))
    return np.array(out) if out else np.zeros((0, 2))


def heart_directions(poly: ConvexPolygon, n_dirs: int, extra_dirs=()) -> np.ndarray:
    """Sampled direction set: uniform angles, body edge normals, both
    coordinate axes, plus any extras; deduplicated."""
    ang = [2.0 * np.pi * k / n_dirs for k in range(n_dirs)]
    dirs = [np.array([np.cos(a), np.sin(a)]) for a in ang]
    dirs.extend(poly.edge_normals)
    dirs.extend(np.array(d, dtype=float) for d in
                ([1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]))
    dirs.extend(np.asarray(d, dtype=float) for d in extra_dirs)
    arr = np.array(dirs)
    arr /= np.hypot(arr[:, 0], arr[:, 1])[:, None]
    _, idx = np.unique(np.round(np.arctan2(arr[:, 1], arr[:, 0]), 10), return_index=True)
    return arr[np.sort(idx)]


def heart_region(poly: ConvexPolygon, n_dirs: int = 720, extra_dirs=()) -> tuple[Heart, FoldingProfile]:
    """Outer approximation of the heart over a sampled direction set.

    Raises InconsistentHeart when the construction contradicts itself
    (empty intersection, centroid excluded, or an offset exceeding the
    support value): those are hard failures, never warnings.
    """
    if n_dirs < 4:
        raise ValueError("need at least 4 directions")
    dirs = heart_directions(poly, n_dirs, extra_dirs)
    profile = folding_profile(poly, dirs)
    eps = poly.eps
    sup = (poly.vertices @ dirs.T).max(axis=0)
    vals = profile.values
    if np.any(vals > sup + 5.0 * eps):
        raise InconsistentHeart("folding offset exceeds support value")
    planes = np.vstack([
        np.column_stack([dirs, vals]),
        np.column_stack([poly.edge_normals, poly.edge_offsets]),
    ])
    region = halfplane_intersection(planes, poly.bbox, eps)
    if region.is_empty:
        raise InconsistentHeart("heart intersection came out empty")
    if region_point_distance(region, poly.centroid) > 100.0 * eps:
        raise InconsistentHeart("centroid escaped the heart; folding values inconsistent")
    if not contains(region, poly, 10.0 * eps):
        raise InconsistentHeart("heart left the body")
    if region.kind == "polygon":
        hsup = (region.points @ dirs.T).max(axis=0)
        if np.any(hsup > vals + 10.0 * eps):
            raise InconsistentHeart("heart support exceeds folding offsets")
    return Heart(region, planes), profile


@dataclass(frozen=True)
class WidthBound:
    bound: float
    heart_width: float | None


def heart_width_bound(poly: ConvexPolygon, omega, heart: Heart | None = None) -> WidthBound:
    """Two-sided folding bound on the heart's width along omega."""
    w = check_direction(omega)
    bound = folding_offset(poly, w).value + folding_offset(poly, -w).value
    hw = None
    if heart is not None and not heart.region.is_empty:
        vals = heart.vertices @ w
        hw = float(vals.max() - vals.min())
    return WidthBound(float(bound), hw)


def heart_ball_radius(poly: ConvexPolygon, profile: FoldingProfile,
                      heart: Heart | None = None) -> tuple[np.ndarray, float]:
    """Radius of a centroid-centered ball containing the heart.

    Discretizes max over unit theta of min over sampled omega with
    omega . theta > 0 of (offset(omega) - centroid . omega) / (omega . theta).
    Directions of the computed heart's vertices are added to the theta
    sample so the containment assertion holds by construction.
    """
    xbar = poly.centroid
    omegas = profile.directions
    vals = profile.values
    num = np.maximum(vals - omegas @ xbar, 0.0)
    thetas = [omegas]
    if heart is not None and not heart.region.is_empty:
        d = heart.vertices - xbar[None, :]
        norms = np.hypot(d[:, 0], d[:, 1])
        good = norms > 10.0 * poly.eps
        if np.any(good):
            thetas.append(d[good] / norms[good, None])
    thetas = np.vstack(thetas)
    dots = omegas @ thetas.T  # (k, t)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(dots > 1e-12, num[:, None] / dots, np.inf)
    per_theta = ratio.min(axis=0)
    radius = float(max(per_theta.max(), 0.0))
    if heart is not None and not heart.region.is_empty:
        dist = np.hypot(*(heart.vertices - xbar[None, :]).T)
        if dist.max() > radius + 10.0 * poly.eps:
            raise InconsistentHeart("heart vertex escaped its bounding ball")
    return xbar.copy(), radius


# --- necessary optimality condition at the witness ------------------------

def _wrap_angle(a: float) -> float:
    """Wrap to (-pi, pi]."""
    a = (a + np.pi) % (2.0 * np.pi) - np.pi
    return np.pi if a == -np.pi else a


@dataclass(frozen=True)
class _Arc:
    lo: float
    width: float  # in [0, 2*pi)


def _arc_from_angles(a0: float, a1: float) -> _Arc:
    """CCW arc from a0 to a1."""
    width = (a1 - a0) % (2.0 * np.pi)
    return _Arc(a0, width)


def _arc_contains(outer: _Arc, inner: _Arc, tol: float) -> bool:
    for shift in (-2.0 * np.pi, 0.0, 2.0 * np.pi):
        d = (inner.lo - outer.lo) + shift
        if -tol <= d and d + inner.width <= outer.width + tol:
            return True
    # also allow representations differing by full wrap of inner.lo
    d = _wrap_angle(inner.lo - outer.lo)
    return -tol <= d and d + inner.width <= outer.width + tol


def _arc_intersect_halfcircle(arc: _Arc, half_lo: float) -> _Arc | None:
    """Intersect with the closed half-circle of directions starting at
    angle half_lo and spanning pi."""
    for shift in (-2.0 * np.pi, 0.0, 2.0 * np.pi):
        d = (arc.lo - half_lo) + shift
        lo = max(d, 0.0)
        hi = min(d + arc.width, np.pi)
        if hi >= lo - 1e-15:
            return _Arc(half_lo + lo, hi - lo)
    return None


def _normal_cone(poly: ConvexPolygon, x: np.ndarray, tol: float) -> _Arc | None:
    """Angular span of outward normals at a boundary point, None off-boundary."""
    a = poly.vertices
    b = np.roll(poly.vertices, -1, axis=0)
    e = b - a
    ee = np.sum(e * e, axis=1)
    t = np.clip(np.sum((x - a) * e, axis=1) / ee, 0.0, 1.0)
    proj = a + t[:, None] * e
    d = np.hypot(*(x - proj).T)
    on = np.flatnonzero(d <= tol)
    if len(on) == 0:
        return None
    angles = np.arctan2(poly.edge_normals[on, 1], poly.edge_normals[on, 0])
    if len(on) == 1:
        return _Arc(float(angles[0]), 0.0)
    # edges listed CCW; the cone runs CCW from the first incident edge
    # normal to the last.  Identify extremes by cyclic adjacency.
    n = len(poly.vertices)
    on_set = set(int(i) for i in on)
    start = None
    for i in on_set:
        if (i - 1) % n not in on_set:
            start = i
            break
    if start is None:  # every edge incident: degenerate, full circle
        return _Arc(0.0, 2.0 * np.pi - 1e-12)
    end = start
    while (end + 1) % n in on_set:
        end = (end + 1) % n
    a0 = float(np.arctan2(poly.edge_normals[start, 1], poly.edge_normals[start, 0]))
    a1 = float(np.arctan2(poly.edge_normals[end, 1], poly.edge_normals[end, 0]))
    return _arc_from_angles(a0, a1)


def _reflect_arc(arc: _Arc, w: np.ndarray) -> _Arc:
    """Image of a direction arc under reflection across the line spanned
    by perp(w); orientation reverses."""
    beta = float(np.arctan2(w[0], -w[1]))  # angle of perp(w)
    return _Arc(2.0 * beta - (arc.lo + arc.width), arc.width)


def normal_cone_check(poly: ConvexPolygon, entry: FoldEntry,
                      angle_tol: float = 1e-9) -> bool:
    """Necessary optimality condition at a folding witness.

    Reflecting the normal cone at the lower chord contact across the
    folding line must land inside the normal cone at the upper contact;
    when the two contacts coincide the condition applies to the half-cones
    split by the sign of xi . omega.  Fails (returns False) for any witness
    whose reflected contact is off the boundary, e.g. a perturbed offset.
    """
    w = entry.omega
    lam = entry.value
    iv = chord(poly, entry.witness_s, w)
    if iv is None:
        raise WitnessInvalid(f"witness coordinate {entry.witness_s} misses the body")
    a, b = iv
    u = perp(w)
    x_top = entry.witness_s * u + b * w
    x_bot = entry.witness_s * u + (2.0 * lam - b) * w
    tol = 10.0 * poly.eps
    if float(np.hypot(*(x_top - x_bot))) <= tol:
        cone = _normal_cone(poly, x_top, tol)
        if cone is None:
            return False
        gamma = float(np.arctan2(w[1], w[0]))
        lower = _arc_intersect_halfcircle(cone, gamma + 0.5 * np.pi)
        upper = _arc_intersect_halfcircle(cone, gamma - 0.5 * np.pi)
        if lower is None or lower.width < -angle_tol:
            return True  # nothing to fold
        if upper is None:
            return False
        return _arc_contains(upper, _reflect_arc(lower, w), angle_tol)
    if boundary_distance(poly, x_bot) > tol:
        return False
    cone_top = _normal_cone(poly, x_top, tol)
    cone_bot = _normal_cone(poly, x_bot, tol)
    if cone_top is None or cone_bot is None:
        return False
    return _arc_contains(cone_top, _reflect_arc(cone_bot, w), angle_tol)
