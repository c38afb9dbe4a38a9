"""Support-function embedding of convex compacta.

The map sending a convex polytope to its support-function values is affine
over Minkowski combinations and sup-norm isometric for the Hausdorff metric,
so it is a computable witness of the abstract embedding of the convexifiable
domain into a Banach space.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from .axioms import AxiomReport, _fmt
from .core import trial_rng
from .geometry import ConvexPolytope, FinitePointSet, convex_hull, hausdorff_distance, polytope_combine

_UNIT_NORM_TOL = 1e-12
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SupportVector:
    """Support-function values of a convex polytope over a direction set."""

    directions: tuple[tuple[float, ...], ...]
    values: tuple[float, ...]


@dataclass(frozen=True)
class AffineFunctional:
    """x -> h_x(v) for a fixed unit direction v, affine over combinations."""

    direction: tuple[float, ...]

    def __post_init__(self):
        norm = math.hypot(*self.direction)
        if abs(norm - 1.0) > _UNIT_NORM_TOL:
            raise ValueError(f"direction must be unit-norm, got {norm!r}")

    def __call__(self, body: ConvexPolytope | FinitePointSet) -> float:
        return support_function(body, self.direction)


def support_function(body: ConvexPolytope | FinitePointSet, v: Sequence[float]) -> float:
    """max over the body of <point, v>; exact for polytopes and point sets."""
    pts = body.vertices if isinstance(body, ConvexPolytope) else body.points
    return max(sum(c * d for c, d in zip(p, v)) for p in pts)


def axis_directions() -> tuple[tuple[float, ...], ...]:
    return ((1.0,), (-1.0,))


def angle_grid(k: int) -> tuple[tuple[float, float], ...]:
    return tuple(
        (math.cos(_TWO_PI * i / k), math.sin(_TWO_PI * i / k)) for i in range(k)
    )


def edge_normals(p: ConvexPolytope) -> tuple[tuple[float, float], ...]:
    """Outward unit normals of a polygon's edges (segments give both sides)."""
    verts = p.vertices
    if p.dim != 2 or len(verts) == 1:
        return ()
    if len(verts) == 2:
        (ax, ay), (bx, by) = verts
        ex, ey = bx - ax, by - ay
        norm = math.hypot(ex, ey)
        return ((ey / norm, -ex / norm), (-ey / norm, ex / norm))
    out = []
    n = len(verts)
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        ex, ey = bx - ax, by - ay
        norm = math.hypot(ex, ey)
        out.append((ey / norm, -ex / norm))
    return tuple(out)


def direction_set_for(*polys: ConvexPolytope, grid: int = 16) -> tuple[tuple[float, ...], ...]:
    if polys and polys[0].dim == 1:
        return axis_directions()
    dirs: list[tuple[float, float]] = list(angle_grid(grid))
    for p in polys:
        dirs.extend(edge_normals(p))
    seen = set()
    out = []
    for d in dirs:
        key = (round(d[0], 14), round(d[1], 14))
        if key not in seen:
            seen.add(key)
            out.append(d)
    return tuple(out)


def embed(p: ConvexPolytope, direction_set: Sequence[Sequence[float]]) -> SupportVector:
    """Componentwise support values; affine over polytope combinations."""
    dirs = []
    for v in direction_set:
        norm = math.hypot(*v)
        if abs(norm - 1.0) > _UNIT_NORM_TOL:
            raise ValueError(f"directions must be unit-norm, got {v!r}")
        dirs.append(tuple(float(c) for c in v))
    values = tuple(support_function(p, v) for v in dirs)
    return SupportVector(tuple(dirs), values)


def combine_support_vectors(weights: Sequence[float], svs: Sequence[SupportVector]) -> SupportVector:
    dirs = svs[0].directions
    for sv in svs:
        if sv.directions != dirs:
            raise ValueError("support vectors must share one direction set")
    values = tuple(
        math.fsum(w * sv.values[i] for w, sv in zip(weights, svs))
        for i in range(len(dirs))
    )
    return SupportVector(dirs, values)


def sup_norm_gap(a: SupportVector, b: SupportVector) -> float:
    if a.directions != b.directions:
        raise ValueError("support vectors must share one direction set")
    return max(abs(x - y) for x, y in zip(a.values, b.values))


def _support_argmax(p: ConvexPolytope, theta: float) -> tuple[float, float]:
    c, s = math.cos(theta), math.sin(theta)
    return max(p.vertices, key=lambda v: v[0] * c + v[1] * s)


def embedded_distance(p: ConvexPolytope, q: ConvexPolytope) -> float:
    """sup over unit directions of |h_p - h_q|, maximized exactly.

    In d=2 the sphere splits into arcs between consecutive edge normals of
    the two polygons; on each arc the difference is a single sinusoid
    c . (cos t, sin t) whose maximum modulus sits at an arc endpoint or at
    the stationary angle of c, all evaluated in closed form.
    """
    if p.dim != q.dim:
        raise ValueError("polytopes must share one dimension")
    if p.dim == 1:
        return max(abs(p.hi - q.hi), abs(p.lo - q.lo))
    angles = set()
    for poly in (p, q):
        for nx, ny in edge_normals(poly):
            angles.add(math.atan2(ny, nx) % _TWO_PI)
    if not angles:
        angles.add(0.0)
    ordered = sorted(angles)
    best = 0.0
    for i, start in enumerate(ordered):
        end = ordered[(i + 1) % len(ordered)]
        if i == len(ordered) - 1:
            end += _TWO_PI
        mid = 0.5 * (start + end)
        pv = _support_argmax(p, mid)
        qv = _support_argmax(q, mid)
        cx, cy = pv[0] - qv[0], pv[1] - qv[1]
        candidates = [start, end]
        stationary = math.atan2(cy, cx) % _TWO_PI
        for theta in (stationary, (stationary + math.pi) % _TWO_PI):
            for shifted in (theta, theta + _TWO_PI):
                if start <= shifted <= end:
                    candidates.append(shifted)
        for theta in candidates:
            value = abs(cx * math.cos(theta) + cy * math.sin(theta))
            if value > best:
                best = value
    return best


def affine_expectation_check(f: AffineFunctional, x) -> tuple[float, float]:
    """(f of the expectation, probability-weighted mean of f of the values).

    ``x`` is a simple random element with convex polytope values; the two
    numbers agree because the support functional is affine and continuous.
    """
    from .probability import expectation

    lhs = f(expectation(x))
    rhs = math.fsum(
        prob * f(x.values[atom])
        for atom, prob in zip(x.sample_space.atoms, x.sample_space.probs)
    )
    return lhs, rhs


def random_polygon(rng: random.Random, max_vertices: int = 8, span: float = 5.0) -> ConvexPolytope:
    n = rng.randint(3, max_vertices)
    pts = [(rng.uniform(-span, span), rng.uniform(-span, span)) for _ in range(n)]
    return convex_hull(FinitePointSet.of(pts))


def embedding_suite(
    trials: int = 1000,
    seed: int = 0,
    tol_isometry: float = 1e-9,
    tol_affinity: float = 1e-12,
) -> AxiomReport:
    """Isometry, affinity, and linear growth of the support embedding.

    Per trial, for a random convex polygon pair (P, Q): the sup-norm distance
    between their support functions must match the Hausdorff distance; the
    embedding of a random Minkowski combination must equal the weighted sum of
    embeddings componentwise; and each support value must be dominated by the
    Hausdorff distance to the origin.
    """
    report = AxiomReport(space="compact-sets(d=2)", seed=seed, tolerance=tol_isometry)
    origin = ConvexPolytope(((0.0, 0.0),))
    for t in range(trials):
        rng = trial_rng(seed, t)
        p = random_polygon(rng)
        q = random_polygon(rng)

        gap = abs(embedded_distance(p, q) - hausdorff_distance(p, q))
        report.check("isometry").record(gap, _fmt(p.vertices, q.vertices))

        lam = rng.uniform(0.05, 0.95)
        mixed = polytope_combine([lam, 1.0 - lam], [p, q])
        dirs = direction_set_for(p, q, mixed)
        gap = sup_norm_gap(
            embed(mixed, dirs),
            combine_support_vectors([lam, 1.0 - lam], [embed(p, dirs), embed(q, dirs)]),
        )
        affinity = report.check("affinity")
        affinity.tolerance = tol_affinity
        affinity.record(gap, _fmt(lam, p.vertices, q.vertices))

        reach = hausdorff_distance(p, origin)
        worst = max(abs(v) for v in embed(p, dirs).values) - reach
        report.check("linear_growth").record(worst, _fmt(p.vertices))
    return report
