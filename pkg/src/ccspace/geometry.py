"""Compact subsets of R^d (d in {1, 2}) and their exact set arithmetic.

Two representations are kept side by side: ``FinitePointSet`` for arbitrary
compact sets sampled at desk scale, and ``ConvexPolytope`` (interval / convex
polygon) for convex points of the hyperspace.  Minkowski combinations are
exact in both representations, and the Hausdorff distance is computed exactly
for every pairing of the two, including point-set versus polytope.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

# Points closer than this (per coordinate) are considered duplicates.
DEDUP_RESOLUTION = 1e-12

# Site counts above this switch the covering-radius search from brute-force
# candidate enumeration to a Voronoi-diagram sweep.
_LEC_BRUTE_LIMIT = 80


class EnumerationCapError(RuntimeError):
    """Selection enumeration exceeded the cap with pruning disabled."""


def _dedup_sorted(points: list[tuple[float, ...]]) -> tuple[tuple[float, ...], ...]:
    points.sort()
    kept: list[tuple[float, ...]] = []
    for p in points:
        if kept and all(abs(a - b) <= DEDUP_RESOLUTION for a, b in zip(kept[-1], p)):
            continue
        kept.append(p)
    return tuple(kept)


@dataclass(frozen=True)
class FinitePointSet:
    """Nonempty finite set of points, lexicographically sorted, deduplicated."""

    points: tuple[tuple[float, ...], ...]

    @staticmethod
    def of(points: Iterable[Sequence[float]]) -> "FinitePointSet":
        pts = [tuple(float(c) for c in p) for p in points]
        if not pts:
            raise ValueError("point set must be nonempty")
        dims = {len(p) for p in pts}
        if len(dims) != 1:
            raise ValueError("points must share one dimension")
        for p in pts:
            if any(not math.isfinite(c) for c in p):
                raise ValueError("coordinates must be finite")
        return FinitePointSet(_dedup_sorted(pts))

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def __len__(self) -> int:
        return len(self.points)

    @cached_property
    def arr(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float)


@dataclass(frozen=True)
class ConvexPolytope:
    """Convex compact subset of R^1 (interval) or R^2 (polygon).

    Vertices are canonical: in d=1 the pair ``(lo,), (hi,)`` (one vertex when
    degenerate); in d=2 a counterclockwise strictly convex vertex list rotated
    to start at the lexicographic minimum.  Equality of canonical forms is
    exact tuple equality.
    """

    vertices: tuple[tuple[float, ...], ...]

    @staticmethod
    def interval(lo: float, hi: float) -> "ConvexPolytope":
        lo, hi = float(lo), float(hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError("interval endpoints must be finite")
        if lo > hi:
            raise ValueError(f"need lo <= hi, got [{lo}, {hi}]")
        if hi - lo <= DEDUP_RESOLUTION:
            return ConvexPolytope(((lo,),))
        return ConvexPolytope(((lo,), (hi,)))

    @staticmethod
    def from_points(points: Iterable[Sequence[float]]) -> "ConvexPolytope":
        return convex_hull(FinitePointSet.of(points))

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    @property
    def lo(self) -> float:
        if self.dim != 1:
            raise ValueError("lo is defined for intervals only")
        return self.vertices[0][0]

    @property
    def hi(self) -> float:
        if self.dim != 1:
            raise ValueError("hi is defined for intervals only")
        return self.vertices[-1][0]

    @cached_property
    def arr(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=float)


def _cross(o: Sequence[float], a: Sequence[float], b: Sequence[float]) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _monotone_chain(points: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    """Counterclockwise hull, strictly convex (collinear vertices dropped)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0.0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0.0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _canonical_polygon(verts: list[tuple[float, float]]) -> tuple[tuple[float, float], ...]:
    if len(verts) <= 2:
        return tuple(verts)
    start = min(range(len(verts)), key=lambda i: verts[i])
    return tuple(verts[start:] + verts[:start])


def convex_hull(a: FinitePointSet) -> ConvexPolytope:
    """Smallest convex set containing ``a``: [min, max] in d=1, planar hull in d=2."""
    if a.dim == 1:
        values = [p[0] for p in a.points]
        return ConvexPolytope.interval(min(values), max(values))
    if a.dim != 2:
        raise ValueError("convex hull supports d in {1, 2}")
    hull = _monotone_chain([(p[0], p[1]) for p in a.points])
    return ConvexPolytope(_canonical_polygon(hull))


def _scaled_sum_point(selection: Sequence[tuple[float, Sequence[float]]], dim: int) -> tuple[float, ...]:
    return tuple(math.fsum(w * p[c] for w, p in selection) for c in range(dim))


def minkowski_combine(
    weights: Sequence[float],
    sets: Sequence[FinitePointSet],
    cap: int = 100_000,
    prune_resolution: float = 0.0,
) -> FinitePointSet:
    """Selection-wise combination {sum_i w_i u_i : u_i in A_i} of point sets.

    Enumerates selections incrementally with deduplication.  If an
    intermediate set exceeds ``cap`` and ``prune_resolution`` is positive, the
    points are snapped to that grid, which adds at most
    ``prune_resolution * sqrt(d)`` of Hausdorff error per call; with pruning
    disabled the cap is a hard error.
    """
    if len(weights) != len(sets):
        raise ValueError("weights and sets must align")
    if not sets:
        raise ValueError("need at least one set")
    dim = sets[0].dim
    if any(s.dim != dim for s in sets):
        raise ValueError("sets must share one dimension")
    acc: list[tuple[float, ...]] = [(0.0,) * dim]
    for w, s in zip(weights, sets):
        nxt = [
            tuple(pc + w * qc for pc, qc in zip(p, q))
            for p in acc
            for q in s.points
        ]
        nxt = list(_dedup_sorted(nxt))
        if len(nxt) > cap:
            if prune_resolution > 0.0:
                snapped = [
                    tuple(round(c / prune_resolution) * prune_resolution for c in p)
                    for p in nxt
                ]
                nxt = list(_dedup_sorted(snapped))
            else:
                raise EnumerationCapError(
                    f"{len(nxt)} selection points exceed cap {cap} and pruning is disabled"
                )
        acc = nxt
    return FinitePointSet(_dedup_sorted(acc))


def _interval_combine(weights: Sequence[float], polys: Sequence[ConvexPolytope]) -> ConvexPolytope:
    lo = math.fsum(w * p.lo for w, p in zip(weights, polys))
    hi = math.fsum(w * p.hi for w, p in zip(weights, polys))
    return ConvexPolytope.interval(lo, hi)


def _bottom_rotate(verts: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    start = min(range(len(verts)), key=lambda i: (verts[i][1], verts[i][0]))
    return list(verts[start:]) + list(verts[:start])


def _edge_vectors(verts: Sequence[tuple[float, float]]) -> list[tuple[float, float, float]]:
    """(angle, dx, dy) of boundary edges in increasing angular order.

    A point contributes no edges; a segment contributes its two opposite
    traversal directions.  Starting at the bottom-most (then left-most)
    vertex of a CCW polygon puts the angles in increasing order on [0, 2pi).
    """
    if len(verts) == 1:
        return []
    ordered = _bottom_rotate(verts)
    if len(ordered) == 2:
        a, b = ordered
        pairs = [(b[0] - a[0], b[1] - a[1]), (a[0] - b[0], a[1] - b[1])]
    else:
        pairs = [
            (ordered[(i + 1) % len(ordered)][0] - ordered[i][0],
             ordered[(i + 1) % len(ordered)][1] - ordered[i][1])
            for i in range(len(ordered))
        ]
    out = []
    for dx, dy in pairs:
        ang = math.atan2(dy, dx) % (2.0 * math.pi)
        out.append((ang, dx, dy))
    return out


def _minkowski_sum_pair(p: ConvexPolytope, q: ConvexPolytope) -> ConvexPolytope:
    """Edge-merge Minkowski sum of two convex polygons (degenerate allowed)."""
    pv = _bottom_rotate(p.vertices)
    qv = _bottom_rotate(q.vertices)
    edges = sorted(_edge_vectors(p.vertices) + _edge_vectors(q.vertices))
    x = pv[0][0] + qv[0][0]
    y = pv[0][1] + qv[0][1]
    pts = [(x, y)]
    for _, dx, dy in edges[:-1] if edges else []:
        x += dx
        y += dy
        pts.append((x, y))
    # Final hull pass removes collinear chains from merged parallel edges.
    hull = _monotone_chain(pts)
    return ConvexPolytope(_canonical_polygon(hull))


def _scale_polytope(w: float, p: ConvexPolytope) -> ConvexPolytope:
    if p.dim == 1:
        return ConvexPolytope.interval(w * p.lo, w * p.hi)
    verts = [(w * v[0], w * v[1]) for v in p.vertices]
    return ConvexPolytope(_canonical_polygon(_monotone_chain(verts)))


def polytope_combine(weights: Sequence[float], polys: Sequence[ConvexPolytope]) -> ConvexPolytope:
    """Exact scaled Minkowski sum of convex polytopes."""
    if len(weights) != len(polys):
        raise ValueError("weights and polytopes must align")
    if not polys:
        raise ValueError("need at least one polytope")
    dim = polys[0].dim
    if any(p.dim != dim for p in polys):
        raise ValueError("polytopes must share one dimension")
    if dim == 1:
        return _interval_combine(weights, polys)
    acc = _scale_polytope(weights[0], polys[0])
    for w, p in zip(weights[1:], polys[1:]):
        acc = _minkowski_sum_pair(acc, _scale_polytope(w, p))
    return acc


def translate_polytope(p: ConvexPolytope, offset: Sequence[float]) -> ConvexPolytope:
    if p.dim == 1:
        return ConvexPolytope.interval(p.lo + offset[0], p.hi + offset[0])
    verts = [(v[0] + offset[0], v[1] + offset[1]) for v in p.vertices]
    return ConvexPolytope(_canonical_polygon(verts))


# ---------------------------------------------------------------------------
# distances


def _point_dist(a: Sequence[float], b: Sequence[float]) -> float:
    return math.hypot(*(x - y for x, y in zip(a, b)))


def _point_segment_distance(p: Sequence[float], a: Sequence[float], b: Sequence[float]) -> float:
    ax, ay = a
    bx, by = b
    px, py = p
    dx, dy = bx - ax, by - ay
    denom = dx * dx + dy * dy
    if denom == 0.0:
        return math.hypot(px - ax, py - ay)
    t = ((px - ax) * dx + (py - ay) * dy) / denom
    t = min(1.0, max(0.0, t))
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy))


def _polygon_contains(poly: ConvexPolytope, p: Sequence[float]) -> bool:
    verts = poly.vertices
    if len(verts) < 3:
        return False
    n = len(verts)
    for i in range(n):
        if _cross(verts[i], verts[(i + 1) % n], p) < 0.0:
            return False
    return True


def point_to_polytope(p: Sequence[float], poly: ConvexPolytope) -> float:
    if poly.dim == 1:
        x = p[0]
        return max(poly.lo - x, x - poly.hi, 0.0)
    verts = poly.vertices
    if len(verts) == 1:
        return _point_dist(p, verts[0])
    if len(verts) == 2:
        return _point_segment_distance(p, verts[0], verts[1])
    if _polygon_contains(poly, p):
        return 0.0
    n = len(verts)
    return min(
        _point_segment_distance(p, verts[i], verts[(i + 1) % n]) for i in range(n)
    )


def _hausdorff_sets(a: FinitePointSet, b: FinitePointSet) -> float:
    diff = a.arr[:, None, :] - b.arr[None, :, :]
    dmat = np.sqrt((diff * diff).sum(axis=2))
    return float(max(dmat.min(axis=1).max(), dmat.min(axis=0).max()))


def _hausdorff_polys(a: ConvexPolytope, b: ConvexPolytope) -> float:
    if a.dim == 1:
        return max(abs(a.lo - b.lo), abs(a.hi - b.hi))
    # distance to a convex set is convex, so directed sups sit at vertices
    d_ab = max(point_to_polytope(v, b) for v in a.vertices)
    d_ba = max(point_to_polytope(v, a) for v in b.vertices)
    return max(d_ab, d_ba)


def _interval_to_sites_1d(lo: float, hi: float, sites: Sequence[float]) -> float:
    xs = sorted(sites)
    best = max(min(abs(lo - s) for s in xs), min(abs(hi - s) for s in xs))
    for left, right in zip(xs, xs[1:]):
        mid = 0.5 * (left + right)
        if lo <= mid <= hi:
            best = max(best, min(mid - left, right - mid))
    return best


def _segment_boundary(poly: ConvexPolytope) -> list[tuple[tuple[float, float], tuple[float, float]]]:
    verts = poly.vertices
    if len(verts) == 1:
        return []
    if len(verts) == 2:
        return [(verts[0], verts[1])]
    n = len(verts)
    return [(verts[i], verts[(i + 1) % n]) for i in range(n)]


def _bisector_edge_hits(
    sites: np.ndarray, edges: Sequence[tuple[tuple[float, float], tuple[float, float]]]
) -> list[tuple[float, float]]:
    hits: list[tuple[float, float]] = []
    m = len(sites)
    for i in range(m):
        for j in range(i + 1, m):
            sx, sy = sites[i]
            tx, ty = sites[j]
            mx, my = 0.5 * (sx + tx), 0.5 * (sy + ty)
            dx, dy = tx - sx, ty - sy
            for a, b in edges:
                ex, ey = b[0] - a[0], b[1] - a[1]
                denom = ex * dx + ey * dy
                if denom == 0.0:
                    continue
                t = ((mx - a[0]) * dx + (my - a[1]) * dy) / denom
                if 0.0 <= t <= 1.0:
                    hits.append((a[0] + t * ex, a[1] + t * ey))
    return hits


def _circumcenters(sites: np.ndarray) -> np.ndarray:
    idx = np.array(list(itertools.combinations(range(len(sites)), 3)))
    if len(idx) == 0:
        return np.empty((0, 2))
    a, b, c = sites[idx[:, 0]], sites[idx[:, 1]], sites[idx[:, 2]]
    d = 2.0 * (a[:, 0] * (b[:, 1] - c[:, 1]) + b[:, 0] * (c[:, 1] - a[:, 1]) + c[:, 0] * (a[:, 1] - b[:, 1]))
    mask = np.abs(d) > 1e-14
    a, b, c, d = a[mask], b[mask], c[mask], d[mask]
    a2 = (a * a).sum(axis=1)
    b2 = (b * b).sum(axis=1)
    c2 = (c * c).sum(axis=1)
    ux = (a2 * (b[:, 1] - c[:, 1]) + b2 * (c[:, 1] - a[:, 1]) + c2 * (a[:, 1] - b[:, 1])) / d
    uy = (a2 * (c[:, 0] - b[:, 0]) + b2 * (a[:, 0] - c[:, 0]) + c2 * (b[:, 0] - a[:, 0])) / d
    return np.column_stack([ux, uy])


def _voronoi_candidates(
    sites: np.ndarray, edges: Sequence[tuple[tuple[float, float], tuple[float, float]]]
) -> list[tuple[float, float]]:
    from scipy.spatial import Voronoi

    vor = Voronoi(sites)
    cands = [tuple(v) for v in vor.vertices]
    center = sites.mean(axis=0)
    span = float(np.abs(sites).max()) + max(
        abs(c) for a, b in edges for pt in (a, b) for c in pt
    ) + 1.0
    reach = 8.0 * span + 8.0
    for (i, j), ridge in zip(vor.ridge_points, vor.ridge_vertices):
        if -1 in ridge:
            k = ridge[0] if ridge[1] == -1 else ridge[1]
            if k == -1:
                continue
            v = vor.vertices[k]
            tangent = sites[j] - sites[i]
            tangent = tangent / np.linalg.norm(tangent)
            normal = np.array([-tangent[1], tangent[0]])
            mid = 0.5 * (sites[i] + sites[j])
            if np.dot(mid - center, normal) < 0.0:
                normal = -normal
            seg = (tuple(v), tuple(v + reach * normal))
        else:
            seg = (tuple(vor.vertices[ridge[0]]), tuple(vor.vertices[ridge[1]]))
        for a, b in edges:
            hit = _segment_intersection(seg[0], seg[1], a, b)
            if hit is not None:
                cands.append(hit)
    return cands


def _segment_intersection(p1, p2, q1, q2):
    rx, ry = p2[0] - p1[0], p2[1] - p1[1]
    sx, sy = q2[0] - q1[0], q2[1] - q1[1]
    denom = rx * sy - ry * sx
    if denom == 0.0:
        return None
    qp_x, qp_y = q1[0] - p1[0], q1[1] - p1[1]
    t = (qp_x * sy - qp_y * sx) / denom
    u = (qp_x * ry - qp_y * rx) / denom
    if 0.0 <= t <= 1.0 and 0.0 <= u <= 1.0:
        return (p1[0] + t * rx, p1[1] + t * ry)
    return None


def _directed_polytope_to_sites(poly: ConvexPolytope, sites_set: FinitePointSet) -> float:
    """sup over the polytope of the distance to the nearest site (exact).

    The maximizer is a polytope vertex, a boundary point equidistant to two
    sites, or an interior point equidistant to three (a Voronoi vertex), so
    evaluating the nearest-site distance over exactly those candidates gives
    the true supremum.
    """
    if poly.dim == 1:
        return _interval_to_sites_1d(poly.lo, poly.hi, [p[0] for p in sites_set.points])
    sites = sites_set.arr
    edges = _segment_boundary(poly)
    cands: list[tuple[float, float]] = [tuple(v) for v in poly.vertices]
    if len(sites) >= 2 and len(poly.vertices) >= 2:
        if len(sites) <= _LEC_BRUTE_LIMIT:
            cands.extend(_bisector_edge_hits(sites, edges))
            centers = _circumcenters(sites)
            cands.extend(
                tuple(c) for c in centers if _polygon_contains(poly, c)
            )
        else:
            cands.extend(
                c for c in _voronoi_candidates(sites, edges)
                if _polygon_contains(poly, c) or point_to_polytope(c, poly) <= 1e-9
            )
    carr = np.asarray(cands, dtype=float)
    diff = carr[:, None, :] - sites[None, :, :]
    nearest = np.sqrt((diff * diff).sum(axis=2)).min(axis=1)
    return float(nearest.max())


def _hausdorff_mixed(sites: FinitePointSet, poly: ConvexPolytope) -> float:
    d_sp = max(point_to_polytope(p, poly) for p in sites.points)
    d_ps = _directed_polytope_to_sites(poly, sites)
    return max(d_sp, d_ps)


def hausdorff_distance(
    a: FinitePointSet | ConvexPolytope, b: FinitePointSet | ConvexPolytope
) -> float:
    """Exact Hausdorff distance between compact sets in either representation."""
    a_poly = isinstance(a, ConvexPolytope)
    b_poly = isinstance(b, ConvexPolytope)
    if a.dim != b.dim:
        raise ValueError("operands must share one dimension")
    if not a_poly and not b_poly:
        return _hausdorff_sets(a, b)
    if a_poly and b_poly:
        return _hausdorff_polys(a, b)
    if a_poly:
        return _hausdorff_mixed(b, a)
    return _hausdorff_mixed(a, b)
