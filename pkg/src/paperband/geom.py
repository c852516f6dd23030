"""Planar geometry primitives: isometries, segment predicates, convex clipping.

All inputs are in strip units (band width 1).  Predicates use an absolute
tolerance EPS; the strip is width-normalized so absolute and relative agree
to within the aspect ratio (< 8 here).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EPS = 1e-9


@dataclass(frozen=True)
class PlanarIsometry:
    """Affine map x -> A @ x + t with A orthogonal (det +1 or -1)."""

    matrix: np.ndarray
    offset: np.ndarray

    @staticmethod
    def identity() -> "PlanarIsometry":
        return PlanarIsometry(np.eye(2), np.zeros(2))

    @staticmethod
    def reflection(point, angle_rad) -> "PlanarIsometry":
        """Reflection across the line through *point* at *angle_rad*."""
        c, s = np.cos(2.0 * angle_rad), np.sin(2.0 * angle_rad)
        m = np.array([[c, s], [s, -c]])
        p = np.asarray(point, dtype=float)
        return PlanarIsometry(m, p - m @ p)

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.matrix))

    def __call__(self, pts):
        pts = np.asarray(pts, dtype=float)
        return pts @ self.matrix.T + self.offset

    def compose(self, other: "PlanarIsometry") -> "PlanarIsometry":
        """self after other: (self.compose(other))(x) == self(other(x))."""
        return PlanarIsometry(self.matrix @ other.matrix,
                              self.matrix @ other.offset + self.offset)

    def is_close(self, other: "PlanarIsometry", tol=1e-9) -> bool:
        return (np.allclose(self.matrix, other.matrix, atol=tol)
                and np.allclose(self.offset, other.offset, atol=tol))


def seg_intersection(p1, p2, q1, q2, eps=EPS):
    """Classify the intersection of segments p1p2 and q1q2.

    Returns (kind, point) with kind one of:
      'none'     - disjoint
      'cross'    - transverse interior crossing, point set
      'touch'    - endpoint on the other segment (non-generic), point set
      'overlap'  - collinear with a shared sub-segment, point = midpoint
    """
    p1 = np.asarray(p1, float)
    p2 = np.asarray(p2, float)
    q1 = np.asarray(q1, float)
    q2 = np.asarray(q2, float)
    d1 = p2 - p1
    d2 = q2 - q1
    denom = d1[0] * d2[1] - d1[1] * d2[0]
    r = q1 - p1
    if abs(denom) > eps:
        t = (r[0] * d2[1] - r[1] * d2[0]) / denom
        u = (r[0] * d1[1] - r[1] * d1[0]) / denom
        if -eps <= t <= 1 + eps and -eps <= u <= 1 + eps:
            interior = eps < t < 1 - eps and eps < u < 1 - eps
            pt = p1 + t * d1
            return ("cross" if interior else "touch"), pt
        return "none", None
    # parallel
    cross_r = r[0] * d1[1] - r[1] * d1[0]
    if abs(cross_r) > eps * max(1.0, np.linalg.norm(d1)):
        return "none", None
    # collinear: project onto d1
    L2 = d1 @ d1
    if L2 < eps * eps:
        return "none", None
    t0 = (q1 - p1) @ d1 / L2
    t1 = (q2 - p1) @ d1 / L2
    lo, hi = min(t0, t1), max(t0, t1)
    lo, hi = max(lo, 0.0), min(hi, 1.0)
    if hi - lo > eps:
        mid = p1 + 0.5 * (lo + hi) * d1
        return "overlap", mid
    if hi - lo > -eps and 0.0 - eps <= lo <= 1.0 + eps:
        return "touch", p1 + max(lo, 0.0) * d1
    return "none", None


def clip_convex(poly, point, normal, keep_positive=True, eps=1e-12):
    """Clip convex polygon by the half-plane normal . (x - point) >= 0 (or <= 0)."""
    poly = np.asarray(poly, float)
    point = np.asarray(point, float)
    normal = np.asarray(normal, float)
    sgn = 1.0 if keep_positive else -1.0
    vals = sgn * ((poly - point) @ normal)
    out = []
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        va, vb = vals[i], vals[(i + 1) % n]
        if va >= -eps:
            out.append(a)
        if (va > eps and vb < -eps) or (va < -eps and vb > eps):
            t = va / (va - vb)
            out.append(a + t * (b - a))
    if len(out) < 3:
        return np.zeros((0, 2))
    return np.array(out)


def poly_area(poly) -> float:
    poly = np.asarray(poly, float)
    if len(poly) < 3:
        return 0.0
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def convex_overlap_area(poly_a, poly_b) -> float:
    """Area of the intersection of two convex polygons (CCW or CW)."""
    a = np.asarray(poly_a, float)
    b = np.asarray(poly_b, float)
    if len(a) < 3 or len(b) < 3:
        return 0.0
    if poly_area(a) < 0:
        a = a[::-1]
    if poly_area(b) < 0:
        b = b[::-1]
    # quick bbox reject
    if (a[:, 0].max() <= b[:, 0].min() or b[:, 0].max() <= a[:, 0].min()
            or a[:, 1].max() <= b[:, 1].min() or b[:, 1].max() <= a[:, 1].min()):
        return 0.0
    clipped = a
    n = len(b)
    for i in range(n):
        p, q = b[i], b[(i + 1) % n]
        edge = q - p
        normal = np.array([-edge[1], edge[0]])  # inward for CCW
        clipped = clip_convex(clipped, p, normal, keep_positive=True)
        if len(clipped) == 0:
            return 0.0
    return abs(poly_area(clipped))


def segment_in_polygon_length(p1, p2, poly, margin: float = 0.0) -> float:
    """Length of the part of segment p1p2 inside convex polygon *poly*.

    With margin > 0 the polygon is shrunk by that distance first, so a
    segment running exactly along an edge does not count as inside.
    """
    poly = np.asarray(poly, float)
    if len(poly) < 3:
        return 0.0
    if poly_area(poly) < 0:
        poly = poly[::-1]
    p1 = np.asarray(p1, float)
    p2 = np.asarray(p2, float)
    t_lo, t_hi = 0.0, 1.0
    d = p2 - p1
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        edge = b - a
        elen = np.linalg.norm(edge)
        if elen < 1e-15:
            continue
        normal = np.array([-edge[1], edge[0]]) / elen
        f0 = normal @ (p1 - a) - margin
        fd = normal @ d
        if abs(fd) < 1e-15:
            if f0 < 0:
                return 0.0
            continue
        t_cross = -f0 / fd
        if fd > 0:
            t_lo = max(t_lo, t_cross)
        else:
            t_hi = min(t_hi, t_cross)
        if t_lo >= t_hi:
            return 0.0
    return (t_hi - t_lo) * float(np.linalg.norm(d))


def segment_distance(p1, p2, q1, q2) -> float:
    """Minimum distance between two planar segments."""
    kind, _ = seg_intersection(p1, p2, q1, q2)
    if kind in ("cross", "touch", "overlap"):
        return 0.0

    def pt_seg(p, a, b):
        p, a, b = (np.asarray(v, float) for v in (p, a, b))
        d = b - a
        L2 = d @ d
        t = 0.0 if L2 == 0 else np.clip((p - a) @ d / L2, 0.0, 1.0)
        return float(np.linalg.norm(p - (a + t * d)))

    return min(pt_seg(p1, q1, q2), pt_seg(p2, q1, q2),
               pt_seg(q1, p1, p2), pt_seg(q2, p1, p2))
