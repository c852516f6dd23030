"""Flat-folding: face isometries, centerline/boundary images, crossings, layers.

Folding model: face 0 keeps the identity; each subsequent face composes one
more reflection (in source coordinates) across its bounding fold line.  The
layer order is found in two passes: a physical folding simulation that flips
the remaining tail at each crease and lets it settle against the first face
that blocks it (a face covering the crease line), then an integer re-ranking
by longest path over the resulting order constraints.  A cycle, an order tie
between overlapping faces, or a fold passing through an intermediate face is
reported as a LayeringContradiction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import geom
from .diagram import BandKind, FoldStyle, PrebendDiagram, validate_diagram
from .errors import InvalidDiagram, LayeringContradiction, UnlayeredInput

OVERLAP_TOL = 1e-9    # minimum interior overlap area that counts
COVER_TOL = 1e-6      # minimum in-polygon crease length that blocks
COVER_MARGIN = 1e-7   # crease on a face's boundary edge does not block it


@dataclass
class Face:
    index: int
    polygon: np.ndarray          # source coordinates, CCW
    isometry: geom.PlanarIsometry
    red_up: bool
    layer: int | None = None

    @property
    def image(self) -> np.ndarray:
        return self.isometry(self.polygon)


@dataclass
class FoldedState:
    diagram: PrebendDiagram
    faces: list
    centerline: np.ndarray        # mapped knots, one segment per face
    boundary_bottom: np.ndarray   # image of the y=0 edge
    boundary_top: np.ndarray      # image of the y=1 edge
    crease_segments: list         # folded fold-line segments, one per fold

    @property
    def layered(self) -> bool:
        return all(f.layer is not None for f in self.faces)

    def closure_kind(self, tol=1e-9):
        """BandKind realized by the end-to-end isometry, or None if open."""
        lam = self.diagram.length
        final = self.faces[-1].isometry
        glide = geom.PlanarIsometry(np.diag([1.0, -1.0]),
                                    np.array([-lam, 1.0]))
        shift = geom.PlanarIsometry(np.eye(2), np.array([-lam, 0.0]))
        if final.is_close(glide, tol):
            return BandKind.MOBIUS
        if final.is_close(shift, tol):
            return BandKind.ANNULUS
        return None


@dataclass
class CrossingReport:
    points: list
    diagnostics: list  # (kind, point) for touches / collinear overlaps

    def __bool__(self):
        return bool(self.points)


def _fold_normals(d: PrebendDiagram):
    """Unit normal of each fold line, pointing toward increasing s."""
    out = []
    for f in d.folds:
        th = f.theta_rad
        out.append(np.array([math.sin(th), -math.cos(th)]))
    return out


def fold_flat(d: PrebendDiagram) -> FoldedState:
    res = validate_diagram(d)
    if not res.ok:
        raise InvalidDiagram("; ".join(msg for _, msg in res.violations))
    lam = d.length
    folds = d.folds
    normals = _fold_normals(d)
    points = [np.array([f.s, 0.5]) for f in folds]

    # isometries: I_{k+1} = I_k o reflection(fold k)
    isoms = [geom.PlanarIsometry.identity()]
    for f in folds:
        refl = geom.PlanarIsometry.reflection((f.s, 0.5), f.theta_rad)
        isoms.append(isoms[-1].compose(refl))

    strip = np.array([[0.0, 0.0], [lam, 0.0], [lam, 1.0], [0.0, 1.0]])
    faces = []
    for k in range(len(folds) + 1):
        poly = strip
        if k > 0:
            poly = geom.clip_convex(poly, points[k - 1], normals[k - 1], True)
        if k < len(folds):
            poly = geom.clip_convex(poly, points[k], normals[k], False)
        faces.append(Face(k, poly, isoms[k], red_up=(k % 2 == 0)))

    def knots(y_of_fold, edge_y):
        xs = [0.0] + [y_of_fold(f) for f in folds] + [lam]
        pts = []
        for j, x in enumerate(xs):
            # knot j is shared by faces j-1 and j; either isometry works
            iso = isoms[min(j, len(folds))]
            pts.append(iso(np.array([x, edge_y])))
        return np.array(pts)

    centerline = knots(lambda f: f.s, 0.5)
    bottom = knots(lambda f: f.endpoints()[0][0], 0.0)
    top = knots(lambda f: f.endpoints()[1][0], 1.0)
    creases = []
    for k, f in enumerate(folds):
        (xb, _), (xt, _) = f.endpoints()
        creases.append(isoms[k](np.array([[xb, 0.0], [xt, 1.0]])))
    return FoldedState(d, faces, centerline, bottom, top, creases)


def detect_crossings(fs: FoldedState) -> CrossingReport:
    """Transverse self-intersections of the folded centerline.

    Touches and collinear overlaps are non-generic and reported separately,
    never as crossings.  A closed band's wrap-around segment pair counts as
    consecutive.
    """
    pts = fs.centerline
    closed = fs.closure_kind() is not None
    n = len(pts) - 1
    crossings = []
    diagnostics = []
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1:
                continue
            if closed and i == 0 and j == n - 1:
                continue
            kind, pt = geom.seg_intersection(pts[i], pts[i + 1],
                                             pts[j], pts[j + 1])
            if kind == "cross":
                crossings.append(pt)
            elif kind in ("touch", "overlap"):
                diagnostics.append((kind, pt))
    return CrossingReport(crossings, diagnostics)


def _overlap_matrix(images):
    """Boolean symmetric matrix of positive-area interior overlap."""
    n = len(images)
    boxes = np.zeros((n, 4))
    for i, im in enumerate(images):
        if len(im):
            boxes[i] = [im[:, 0].min(), im[:, 1].min(),
                        im[:, 0].max(), im[:, 1].max()]
    M = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            if (boxes[i, 2] <= boxes[j, 0] or boxes[j, 2] <= boxes[i, 0]
                    or boxes[i, 3] <= boxes[j, 1] or boxes[j, 3] <= boxes[i, 1]):
                continue
            if geom.convex_overlap_area(images[i], images[j]) > OVERLAP_TOL:
                M[i, j] = M[j, i] = True
    return M


def _covers(image, seg) -> bool:
    """True if the face image covers part of the crease segment's interior."""
    return geom.segment_in_polygon_length(
        seg[0], seg[1], image, margin=COVER_MARGIN) > COVER_TOL


def fold_sides(d: PrebendDiagram):
    """above[k]: face k+1 lies above face k across fold k."""
    out = []
    for k, f in enumerate(d.folds):
        red_up = (k % 2 == 0)
        out.append(red_up == (f.style is FoldStyle.SOLID))
    return out


def assign_layers(fs: FoldedState) -> FoldedState:
    faces = fs.faces
    n = len(faces)
    images = [f.image for f in faces]
    above = fold_sides(fs.diagram)
    M = _overlap_matrix(images)

    # pass 1: fold the tail at each crease; it settles against the nearest
    # face on the travel side that covers this or any later crease line (the
    # tail still has to fold there, so it cannot put such a face between)
    last_cover = [-1] * n
    for f in range(n):
        img = images[f]
        for k, seg in enumerate(fs.crease_segments):
            if _covers(img, seg):
                last_cover[f] = k
    overlaps_after = [[False] * (n + 1) for _ in range(n)]
    for f in range(n):
        row = overlaps_after[f]
        for t in range(n - 1, -1, -1):
            row[t] = row[t + 1] or M[f, t]

    rank = {0: Fraction(0)}
    for k in range(1, n):
        j = k - 1
        side_up = above[j]
        blockers = []
        passables = []
        for f in range(k):
            rf = rank[f]
            if side_up and rf <= rank[j]:
                continue
            if not side_up and rf >= rank[j]:
                continue
            if last_cover[f] >= j:
                blockers.append(rf)
            elif overlaps_after[f][k]:
                passables.append(rf)
        if side_up:
            limit = min(blockers) if blockers else None
            below = [r for r in passables if limit is None or r < limit]
            lo = max(below) if below else rank[j]
            rank[k] = lo + 1 if limit is None else (lo + limit) / 2
        else:
            limit = max(blockers) if blockers else None
            over = [r for r in passables if limit is None or r > limit]
            hi = min(over) if over else rank[j]
            rank[k] = hi - 1 if limit is None else (hi + limit) / 2

    # pass 2: integer ranks by longest path over order constraints
    node = list(range(n))
    closed = fs.closure_kind() is not None
    if closed and n > 1:
        if M[0, n - 1]:
            raise LayeringContradiction(
                "band ends overlap; cannot share the glue plane")
        node[n - 1] = 0  # weld: last face must lie in the first face's plane
    edges = set()
    for i in range(n):
        for j in range(i + 1, n):
            if not M[i, j]:
                continue
            if rank[i] == rank[j]:
                raise LayeringContradiction(
                    f"no order determined for overlapping faces {i} and {j}")
            lo, hi = (i, j) if rank[i] < rank[j] else (j, i)
            edges.add((node[lo], node[hi]))
    for k in range(n - 1):
        lo, hi = (k, k + 1) if above[k] else (k + 1, k)
        if (node[hi], node[lo]) in edges or node[lo] == node[hi]:
            raise LayeringContradiction(
                f"fold {k} demands an order conflicting with the overlap order")
        edges.add((node[lo], node[hi]))

    order = _longest_path_ranks(set(node), edges)
    layers = [order[node[k]] for k in range(n)]

    # piercing check: a fold may not pass through a face stacked between
    # the two faces it joins
    for k in range(n - 1):
        lo, hi = sorted((layers[k], layers[k + 1]))
        for f in range(n):
            if f in (k, k + 1):
                continue
            if lo < layers[f] < hi and _covers(images[f], fs.crease_segments[k]):
                raise LayeringContradiction(
                    f"fold {k} would pass through face {f}")

    # independent recheck of every local relation
    for k in range(n - 1):
        want = 1 if above[k] else -1
        got = np.sign(layers[k + 1] - layers[k])
        if got != want:
            raise LayeringContradiction(f"fold {k} side constraint violated")

    new_faces = [Face(f.index, f.polygon, f.isometry, f.red_up, layers[i])
                 for i, f in enumerate(faces)]
    return FoldedState(fs.diagram, new_faces, fs.centerline,
                       fs.boundary_bottom, fs.boundary_top, fs.crease_segments)


def _longest_path_ranks(nodes, edges):
    succ = {u: [] for u in nodes}
    indeg = {u: 0 for u in nodes}
    for u, v in edges:
        succ[u].append(v)
        indeg[v] += 1
    frontier = sorted(u for u in nodes if indeg[u] == 0)
    rank = {u: 0 for u in frontier}
    out = []
    while frontier:
        u = frontier.pop()
        out.append(u)
        for v in succ[u]:
            rank[v] = max(rank.get(v, 0), rank[u] + 1)
            indeg[v] -= 1
            if indeg[v] == 0:
                frontier.append(v)
    if len(out) != len(nodes):
        raise LayeringContradiction("cycle in the above/below relation")
    return rank


SVG_RED = "#d9544f"
SVG_BLUE = "#4f74d9"


def export_svg(fs: FoldedState, scale: float = 80.0) -> bytes:
    """Faces drawn bottom layer first, red side up in red, else blue."""
    if not fs.layered:
        raise UnlayeredInput("assign_layers must run before export_svg")
    allpts = np.vstack([f.image for f in fs.faces] + [fs.centerline])
    lo = allpts.min(axis=0) - 0.25
    hi = allpts.max(axis=0) + 0.25
    size = (hi - lo) * scale

    def sx(p):
        return (p[0] - lo[0]) * scale

    def sy(p):
        return (hi[1] - p[1]) * scale  # flip y for SVG

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size[0]:.2f}" '
        f'height="{size[1]:.2f}" viewBox="0 0 {size[0]:.2f} {size[1]:.2f}">',
    ]
    for face in sorted(fs.faces, key=lambda f: (f.layer, f.index)):
        color = SVG_RED if face.red_up else SVG_BLUE
        pts = " ".join(f"{sx(p):.3f},{sy(p):.3f}" for p in face.image)
        lines.append(f'<polygon points="{pts}" fill="{color}" '
                     f'stroke="#222222" stroke-width="0.8"/>')
    path = " ".join(("M" if i == 0 else "L") + f"{sx(p):.3f},{sy(p):.3f}"
                    for i, p in enumerate(fs.centerline))
    lines.append(f'<path d="{path}" fill="none" stroke="#111111" '
                 'stroke-width="1.6" stroke-dasharray="6,3"/>')
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")
