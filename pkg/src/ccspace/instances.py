"""The four concrete space instances and their text serialization.

* ``euclidean_space``: R^d with the arithmetic weighted mean (unbiased).
* ``power_space``: R^d with sum_i w_i^r x_i for an exponent r > 1; its only
  convex point is the origin.
* ``compact_sets_space``: nonempty compact subsets of R^d (d in {1, 2}) with
  selection-wise combination and the Hausdorff metric; convexification is the
  closed convex hull.
* ``distribution_space``: finitely supported laws on R under scaled
  convolution with the Wasserstein-1 metric; convexification collapses a law
  to the Dirac mass at its mean.
"""

from __future__ import annotations

import math
import random
from typing import Sequence

from .core import SpaceContract, Terms
from .distributions import DiscreteDistribution, scaled_convolution_combine, wasserstein1
from .geometry import (
    ConvexPolytope,
    FinitePointSet,
    convex_hull,
    hausdorff_distance,
    minkowski_combine,
    polytope_combine,
)

SPACE_NAMES = ("euclidean", "power", "compact-sets", "distributions")

_VDC_BASES = (2, 3, 5)
_SAMPLE_RANGE = 5.0


def _van_der_corput(j: int, base: int) -> float:
    x = 0.0
    denom = 1.0
    while j > 0:
        j, digit = divmod(j, base)
        denom *= base
        x += digit / denom
    return x


def _dense_coords(j: int, dim: int) -> tuple[float, ...]:
    if j == 0:
        return (0.0,) * dim
    return tuple(16.0 * _van_der_corput(j, _VDC_BASES[c]) - 8.0 for c in range(dim))


def _euclid_distance(a: Sequence[float], b: Sequence[float]) -> float:
    return math.hypot(*(x - y for x, y in zip(a, b)))


def _vector_sampler(dim: int):
    def sample(rng: random.Random) -> tuple[float, ...]:
        return tuple(rng.uniform(-_SAMPLE_RANGE, _SAMPLE_RANGE) for _ in range(dim))

    return sample


def euclidean_space(dim: int = 2) -> SpaceContract:
    if dim not in (1, 2, 3):
        raise ValueError("euclidean dimension must be 1, 2, or 3")

    def combine_terms(terms: Terms) -> tuple[float, ...]:
        return tuple(math.fsum(w * p[c] for w, p in terms) for c in range(dim))

    return SpaceContract(
        name=f"euclidean(d={dim})",
        distance=_euclid_distance,
        combine_terms=combine_terms,
        convexify_exact=lambda x: x,
        dense_point=lambda j: _dense_coords(j, dim),
        sampler=_vector_sampler(dim),
        unbiased=True,
    )


def power_space(r: float = 2.0, dim: int = 1) -> SpaceContract:
    if not r > 1.0:
        raise ValueError("power exponent must exceed 1")
    if dim not in (1, 2, 3):
        raise ValueError("power dimension must be 1, 2, or 3")

    def combine_terms(terms: Terms) -> tuple[float, ...]:
        return tuple(math.fsum((w ** r) * p[c] for w, p in terms) for c in range(dim))

    return SpaceContract(
        name=f"power(r={r}, d={dim})",
        distance=_euclid_distance,
        combine_terms=combine_terms,
        convexify_exact=lambda x: (0.0,) * dim,
        dense_point=lambda j: _dense_coords(j, dim),
        sampler=_vector_sampler(dim),
        unbiased=False,
    )


def _set_sampler(dim: int, max_points: int):
    def sample(rng: random.Random) -> FinitePointSet:
        n = rng.randint(1, max_points)
        pts: list[tuple[float, ...]] = []
        while len(pts) < n:
            candidate = tuple(rng.uniform(-_SAMPLE_RANGE, _SAMPLE_RANGE) for _ in range(dim))
            # tie-free: coincident points would make metric-identity checks vacuous
            if all(_euclid_distance(candidate, p) > 1e-6 for p in pts):
                pts.append(candidate)
        return FinitePointSet.of(pts)

    return sample


def _dense_compact(j: int, dim: int) -> FinitePointSet:
    base = _dense_coords(j, dim)
    if j == 0 or j % 2 == 1:
        return FinitePointSet.of([base])
    offset = 1.0 / ((j % 7) + 2)
    other = tuple(c + offset for c in base)
    return FinitePointSet.of([base, other])


def compact_sets_space(
    dim: int = 1,
    cap: int = 100_000,
    prune_resolution: float = 0.0,
    max_sample_points: int = 3,
) -> SpaceContract:
    if dim not in (1, 2):
        raise ValueError("compact-sets dimension must be 1 or 2")

    def combine_terms(terms: Terms):
        weights = [w for w, _ in terms]
        values = [v for _, v in terms]
        if all(isinstance(v, FinitePointSet) for v in values):
            return minkowski_combine(weights, values, cap=cap, prune_resolution=prune_resolution)
        if all(isinstance(v, ConvexPolytope) for v in values):
            return polytope_combine(weights, values)
        raise TypeError(
            "cannot combine mixed point-set and polytope values; convexify first"
        )

    def convexify_exact(x):
        if isinstance(x, ConvexPolytope):
            return x
        return convex_hull(x)

    return SpaceContract(
        name=f"compact-sets(d={dim})",
        distance=hausdorff_distance,
        combine_terms=combine_terms,
        convexify_exact=convexify_exact,
        dense_point=lambda j: _dense_compact(j, dim),
        sampler=_set_sampler(dim, max_sample_points),
        unbiased=False,
        exact=prune_resolution == 0.0,
    )


def _dist_sampler(max_atoms: int):
    def sample(rng: random.Random) -> DiscreteDistribution:
        n = rng.randint(1, max_atoms)
        atoms: list[float] = []
        while len(atoms) < n:
            a = rng.uniform(-_SAMPLE_RANGE, _SAMPLE_RANGE)
            if all(abs(a - b) > 1e-6 for b in atoms):
                atoms.append(a)
        raw = [rng.uniform(0.1, 1.0) for _ in range(n)]
        total = sum(raw)
        probs = [w / total for w in raw]
        probs[-1] = 1.0 - math.fsum(probs[:-1])
        return DiscreteDistribution.of(atoms, probs)

    return sample


def _dense_distribution(j: int) -> DiscreteDistribution:
    if j == 0:
        return DiscreteDistribution.delta(0.0)
    x = 16.0 * _van_der_corput(j, 2) - 8.0
    if j % 2 == 1:
        return DiscreteDistribution.delta(x)
    return DiscreteDistribution.of([x, x + 1.0], [0.5, 0.5])


def distribution_space(atom_cap: int | None = 512) -> SpaceContract:
    def combine_terms(terms: Terms) -> DiscreteDistribution:
        weights = [w for w, _ in terms]
        values = [v for _, v in terms]
        return scaled_convolution_combine(weights, values, atom_cap=atom_cap)

    return SpaceContract(
        name="distributions",
        distance=wasserstein1,
        combine_terms=combine_terms,
        convexify_exact=lambda f: DiscreteDistribution.delta(f.mean()),
        dense_point=_dense_distribution,
        sampler=_dist_sampler(3),
        unbiased=False,
        exact=atom_cap is None,
    )


def get_space(name: str, dim: int = 1, r: float = 2.0, atom_cap: int | None = 512) -> SpaceContract:
    if name == "euclidean":
        return euclidean_space(dim)
    if name == "power":
        return power_space(r=r, dim=dim)
    if name == "compact-sets":
        return compact_sets_space(dim)
    if name == "distributions":
        return distribution_space(atom_cap)
    raise ValueError(f"unknown space {name!r}; expected one of {SPACE_NAMES}")


# ---------------------------------------------------------------------------
# text serialization (CLI fixture formats)


def format_vector(p: Sequence[float]) -> str:
    return ",".join(repr(float(c)) for c in p)


def parse_vector(text: str) -> tuple[float, ...]:
    return tuple(float(c) for c in text.split(","))


def format_point_set(s: FinitePointSet) -> str:
    return " ".join(format_vector(p) for p in s.points)


def parse_point_set(text: str) -> FinitePointSet:
    return FinitePointSet.of([parse_vector(tok) for tok in text.split()])


def format_polytope(p: ConvexPolytope) -> str:
    return "hull: " + " ".join(format_vector(v) for v in p.vertices)


def format_distribution(f: DiscreteDistribution) -> str:
    return " ".join(f"{repr(a)}:{repr(p)}" for a, p in zip(f.atoms, f.probs))


def parse_distribution(text: str) -> DiscreteDistribution:
    atoms = []
    probs = []
    for token in text.split():
        atom, _, prob = token.partition(":")
        atoms.append(float(atom))
        probs.append(float(prob))
    return DiscreteDistribution.of(atoms, probs)


def parse_point(space_name: str, text: str):
    """Parse one point of the named space from its text form.

    euclidean / power: a comma-separated coordinate tuple.  compact-sets: a
    whitespace-separated list of coordinate tuples, or ``hull:`` followed by
    one to make the convex polytope on those vertices.  distributions:
    whitespace-separated ``atom:prob`` pairs.
    """
    text = text.strip()
    if space_name in ("euclidean", "power"):
        return parse_vector(text)
    if space_name == "compact-sets":
        if text.startswith("hull:"):
            return convex_hull(parse_point_set(text[len("hull:"):]))
        return parse_point_set(text)
    if space_name == "distributions":
        return parse_distribution(text)
    raise ValueError(f"unknown space {space_name!r}")


def format_point(space_name: str, value) -> str:
    if space_name in ("euclidean", "power"):
        return format_vector(value)
    if space_name == "compact-sets":
        if isinstance(value, ConvexPolytope):
            return format_polytope(value)
        return format_point_set(value)
    if space_name == "distributions":
        return format_distribution(value)
    raise ValueError(f"unknown space {space_name!r}")
