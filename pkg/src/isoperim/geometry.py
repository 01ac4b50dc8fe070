"""Planar polygon model and elementary functionals.

Polygons are ordered vertex lists stored as (n, 2) float64 arrays. The
canonical orientation is counter-clockwise; the :class:`Polygon`
constructor normalizes orientation and validates the vertex list. All
functionals also accept raw array-likes so that non-canonical inputs
(clockwise or self-intersecting vertex lists) can still be measured.
"""

from __future__ import annotations

import math

import numpy as np

# Orientation predicates treat a normalized cross product (the sine of
# the angle between two segments) below this as zero.
ORIENT_EPS = 1e-12

_QUARTER_TURN = math.pi / 2


class PolygonError(ValueError):
    """Raised when a vertex list does not describe a valid polygon."""


class Polygon:
    """Immutable ordered vertex list with counter-clockwise orientation.

    Parameters
    ----------
    vertices : array-like of shape (n, 2)
        Vertex coordinates in order, n >= 3. Consecutive vertices must be
        distinct; collinear (straight) vertices are allowed.
    orient : bool
        When True (default), a clockwise input is reversed to
        counter-clockwise and ``reoriented`` records that a flip happened.
    """

    __slots__ = ("_vertices", "reoriented")

    def __init__(self, vertices, *, orient: bool = True):
        pts = np.array(vertices, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise PolygonError(f"expected (n, 2) vertex array, got shape {pts.shape}")
        if len(pts) < 3:
            raise PolygonError(f"polygon needs at least 3 vertices, got {len(pts)}")
        if not np.all(np.isfinite(pts)):
            raise PolygonError("vertex coordinates must be finite")
        if np.any(np.all(pts == np.roll(pts, -1, axis=0), axis=1)):
            raise PolygonError("consecutive vertices must be distinct")

        area = signed_area(pts)
        self.reoriented = False
        if area < 0 and orient:
            pts = pts[::-1].copy()
            self.reoriented = True
            area = -area
        if area == 0.0:
            raise PolygonError("polygon has zero signed area (all vertices collinear)")

        pts.flags.writeable = False
        self._vertices = pts

    @property
    def vertices(self) -> np.ndarray:
        """Read-only (n, 2) vertex array."""
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    def __len__(self) -> int:
        return len(self._vertices)

    def __repr__(self) -> str:
        return f"Polygon(n={self.n}, area={signed_area(self):.6g})"


def vertex_array(p) -> np.ndarray:
    """Coerce a Polygon or array-like into an (n, 2) float array."""
    if isinstance(p, Polygon):
        return p.vertices
    pts = np.asarray(p, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"expected (n, 2) vertex array, got shape {pts.shape}")
    return pts


def signed_area(p) -> float:
    """Shoelace signed area; positive for counter-clockwise simple polygons."""
    pts = vertex_array(p)
    x, y = pts[:, 0], pts[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    return 0.5 * float(np.sum(x * yn - xn * y))


def perimeter(p) -> float:
    """Sum of Euclidean edge lengths."""
    return float(np.sum(edge_lengths(p)))


def edge_vectors(p) -> np.ndarray:
    """Edge i as the vector from vertex i to vertex i+1 (indices mod n)."""
    pts = vertex_array(p)
    return np.roll(pts, -1, axis=0) - pts


def edge_lengths(p) -> np.ndarray:
    ev = edge_vectors(p)
    return np.hypot(ev[:, 0], ev[:, 1])


def interior_angles(p) -> np.ndarray:
    """Interior angle at every vertex, each in (0, 2*pi).

    Measured inside the polygon assuming counter-clockwise orientation:
    convex vertices give values below pi, reflex vertices above pi,
    straight (collinear) vertices exactly pi.
    """
    pts = vertex_array(p)
    e_in = pts - np.roll(pts, 1, axis=0)
    e_out = np.roll(pts, -1, axis=0) - pts
    len_in = np.hypot(e_in[:, 0], e_in[:, 1])
    len_out = np.hypot(e_out[:, 0], e_out[:, 1])
    if np.any(len_in == 0.0) or np.any(len_out == 0.0):
        raise ValueError("zero-length edge adjacent to a vertex")
    cross = e_in[:, 0] * e_out[:, 1] - e_in[:, 1] * e_out[:, 0]
    dot = e_in[:, 0] * e_out[:, 0] + e_in[:, 1] * e_out[:, 1]
    return math.pi - np.arctan2(cross, dot)


def interior_angle(p, i: int) -> float:
    """Interior angle at vertex i, in radians."""
    angles = interior_angles(p)
    return float(angles[i % len(angles)])


def _pair_indices(n: int):
    """Index arrays for all unordered non-adjacent edge pairs of an n-gon."""
    i, j = np.triu_indices(n, k=1)
    adjacent = (j == i + 1) | ((i == 0) & (j == n - 1))
    return i[~adjacent], j[~adjacent]


def is_simple(p) -> bool:
    """True iff no two non-adjacent edges intersect and adjacent edges
    meet only at their shared vertex.

    Pairwise O(n^2) segment tests with sign-of-orientation predicates;
    orientation values are normalized by the segment lengths and compared
    against ``ORIENT_EPS`` so that near-degenerate crossings count as
    touching.
    """
    pts = vertex_array(p)
    n = len(pts)
    ev = np.roll(pts, -1, axis=0) - pts
    lengths = np.hypot(ev[:, 0], ev[:, 1])
    if np.any(lengths == 0.0):
        return False

    # Adjacent edges: a fold-back (outgoing edge doubling back over the
    # incoming one) makes them overlap beyond the shared vertex.
    e_prev = np.roll(ev, 1, axis=0)
    cross = e_prev[:, 0] * ev[:, 1] - e_prev[:, 1] * ev[:, 0]
    dot = e_prev[:, 0] * ev[:, 0] + e_prev[:, 1] * ev[:, 1]
    scale = np.roll(lengths, 1) * lengths
    if np.any((np.abs(cross) <= ORIENT_EPS * scale) & (dot < 0.0)):
        return False

    ii, jj = _pair_indices(n)
    if len(ii) == 0:
        return True
    a, b = pts[ii], pts[(ii + 1) % n]
    c, d = pts[jj], pts[(jj + 1) % n]
    return not np.any(_segments_touch(a, b, c, d))


def _segments_touch(a, b, c, d) -> np.ndarray:
    """Vectorized: does segment a-b share any point with segment c-d?"""

    def orient(p, q, r):
        return (q[:, 0] - p[:, 0]) * (r[:, 1] - p[:, 1]) - (q[:, 1] - p[:, 1]) * (
            r[:, 0] - p[:, 0]
        )

    lab = np.hypot(b[:, 0] - a[:, 0], b[:, 1] - a[:, 1])
    lcd = np.hypot(d[:, 0] - c[:, 0], d[:, 1] - c[:, 1])
    eps = ORIENT_EPS * lab * lcd

    d1 = orient(c, d, a)
    d2 = orient(c, d, b)
    d3 = orient(a, b, c)
    d4 = orient(a, b, d)

    proper = (
        (((d1 > eps) & (d2 < -eps)) | ((d1 < -eps) & (d2 > eps)))
        & (((d3 > eps) & (d4 < -eps)) | ((d3 < -eps) & (d4 > eps)))
    )

    touching = (
        (_on_segment(c, d, a, d1, eps))
        | (_on_segment(c, d, b, d2, eps))
        | (_on_segment(a, b, c, d3, eps))
        | (_on_segment(a, b, d, d4, eps))
    )
    return proper | touching


def _on_segment(p, q, r, orient_val, eps) -> np.ndarray:
    """Vectorized: is r on segment p-q, given its orientation value?"""
    collinear = np.abs(orient_val) <= eps
    within = (
        (r[:, 0] >= np.minimum(p[:, 0], q[:, 0]) - eps)
        & (r[:, 0] <= np.maximum(p[:, 0], q[:, 0]) + eps)
        & (r[:, 1] >= np.minimum(p[:, 1], q[:, 1]) - eps)
        & (r[:, 1] <= np.maximum(p[:, 1], q[:, 1]) + eps)
    )
    return collinear & within


def _edge_turn_crosses(p) -> np.ndarray:
    """Cross product of consecutive edge vectors, normalized per pair."""
    ev = edge_vectors(p)
    nxt = np.roll(ev, -1, axis=0)
    cross = ev[:, 0] * nxt[:, 1] - ev[:, 1] * nxt[:, 0]
    scale = np.hypot(ev[:, 0], ev[:, 1]) * np.hypot(nxt[:, 0], nxt[:, 1])
    return cross, scale


def is_convex(p) -> bool:
    """True iff all turns agree in sign; collinear triples count as convex.

    Degenerate straight vertices are reported separately by
    :func:`has_collinear_triple`.
    """
    cross, scale = _edge_turn_crosses(p)
    eps = ORIENT_EPS * scale
    return bool(np.all(cross >= -eps) or np.all(cross <= eps))


def has_collinear_triple(p) -> bool:
    """True iff some three consecutive vertices are collinear."""
    cross, scale = _edge_turn_crosses(p)
    return bool(np.any(np.abs(cross) <= ORIENT_EPS * scale))


def convex_hull(points) -> Polygon:
    """Counter-clockwise convex hull via the monotone-chain sweep.

    Collinear boundary points are dropped, so the hull is strictly
    convex. Raises :class:`PolygonError` when all points are collinear.
    """
    pts = np.asarray(points, dtype=float)
    if isinstance(points, Polygon):
        pts = points.vertices
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError(f"expected (m, 2) point array, got shape {pts.shape}")
    if len(pts) < 3:
        raise PolygonError("convex hull needs at least 3 points")

    order = np.lexsort((pts[:, 1], pts[:, 0]))
    sorted_pts = pts[order]
    span = float(np.max(np.abs(sorted_pts))) + 1.0

    def chain(seq):
        out = []
        for pt in seq:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                cross = (a[0] - o[0]) * (pt[1] - o[1]) - (a[1] - o[1]) * (pt[0] - o[0])
                if cross <= ORIENT_EPS * span * span:
                    out.pop()
                else:
                    break
            out.append(pt)
        return out

    lower = chain(sorted_pts)
    upper = chain(sorted_pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise PolygonError("all points are collinear; hull is degenerate")
    return Polygon(np.array(hull), orient=False)


def rotate(v, theta: float) -> np.ndarray:
    """Rotate a vector (or stack of vectors) by theta, counter-clockwise.

    Quarter turns are special-cased so that rotate(v, -pi/2) is exactly
    (y, -x) and rotate(v, pi/2) exactly (-y, x).
    """
    vec = np.asarray(v, dtype=float)
    x, y = vec[..., 0], vec[..., 1]
    if theta == -_QUARTER_TURN:
        return np.stack((y, -x), axis=-1)
    if theta == _QUARTER_TURN:
        return np.stack((-y, x), axis=-1)
    c, s = math.cos(theta), math.sin(theta)
    return np.stack((c * x - s * y, s * x + c * y), axis=-1)


def regular_ngon(n: int, area: float = 1.0, center=(0.0, 0.0), phase: float = 0.0) -> Polygon:
    """Regular n-gon of the requested area, CCW, centered at ``center``.

    The circumradius solving area = (n/2) R^2 sin(2 pi / n) is
    R = sqrt(2 area / (n sin(2 pi / n))).
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if area <= 0:
        raise ValueError(f"need positive area, got {area}")
    radius = math.sqrt(2.0 * area / (n * math.sin(2.0 * math.pi / n)))
    k = np.arange(n)
    ang = phase + 2.0 * math.pi * k / n
    pts = np.column_stack((np.cos(ang), np.sin(ang))) * radius + np.asarray(center, dtype=float)
    return Polygon(pts, orient=False)


def centroid(p) -> np.ndarray:
    """Area centroid of a polygon with nonzero signed area."""
    pts = vertex_array(p)
    x, y = pts[:, 0], pts[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    cross = x * yn - xn * y
    area = 0.5 * float(np.sum(cross))
    if area == 0.0:
        raise ValueError("centroid undefined for zero-area polygon")
    cx = float(np.sum((x + xn) * cross)) / (6.0 * area)
    cy = float(np.sum((y + yn) * cross)) / (6.0 * area)
    return np.array([cx, cy])


def diameter(p) -> float:
    """Largest pairwise vertex distance."""
    pts = vertex_array(p)
    diff = pts[:, None, :] - pts[None, :, :]
    return float(np.max(np.hypot(diff[..., 0], diff[..., 1])))
