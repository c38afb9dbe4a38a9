"""Core contract for metric spaces carrying an n-ary convex combination.

A space instance supplies a metric, an n-ary weighted combination, and
optionally an exact convexification operator, a deterministic dense point
enumeration, and a seeded point sampler.  Everything else in the package
(checkers, expectation, limit experiments) is generic over this contract.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Optional, Sequence

Point = Any
Terms = Sequence[tuple[float, Point]]

# Weight sums are validated to this absolute tolerance and never silently
# re-normalized; out-of-tolerance input is an error.
WEIGHT_SUM_TOL = 1e-12
# Default check tolerance for instances with exact arithmetic.
EXACT_TOL = 1e-9
# Default check tolerance for instances that prune or resample.
INEXACT_TOL = 1e-6


class CombinationError(ValueError):
    """Empty term list, negative weight, or weight sum off 1 beyond tolerance."""


class ConvexifyError(RuntimeError):
    """Equal-weight self-combinations failed to settle within the budget."""

    def __init__(self, message: str, last_gap: float):
        super().__init__(message)
        self.last_gap = last_gap


@dataclass(frozen=True)
class WeightedCombination:
    """Terms ``(weight, point)`` with positive weights summing to one.

    Zero-weight terms are dropped at construction time; negative weights and
    weight sums farther than ``WEIGHT_SUM_TOL`` from 1 are rejected.
    """

    terms: tuple[tuple[float, Point], ...]

    @staticmethod
    def of(pairs: Iterable[tuple[float, Point]]) -> "WeightedCombination":
        kept = []
        total = 0.0
        for weight, point in pairs:
            w = float(weight)
            if math.isnan(w) or w < 0.0:
                raise CombinationError(f"weight must be nonnegative, got {w!r}")
            total += w
            if w > 0.0:
                kept.append((w, point))
        if not kept:
            raise CombinationError("combination needs at least one positive-weight term")
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise CombinationError(f"weights sum to {total!r}, expected 1 within {WEIGHT_SUM_TOL}")
        return WeightedCombination(tuple(kept))

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class SpaceContract:
    """A metric space with an n-ary convex combination operation.

    ``combine_terms`` receives at least two terms with positive weights whose
    sum has already been validated; single-term combinations never reach it.
    ``convexify_exact`` maps a point to its convexification when the instance
    has a closed form; ``dense_point`` deterministically enumerates a dense
    sequence whose index-0 element must be a convex point; ``sampler`` draws a
    random point from a bounded region for property testing.  ``unbiased``
    marks instances whose convexification is the identity, and ``exact``
    distinguishes exact arithmetic from pruning/resampling instances (which
    get the looser default check tolerance).
    """

    name: str
    distance: Callable[[Point, Point], float]
    combine_terms: Callable[[Terms], Point]
    convexify_exact: Optional[Callable[[Point], Point]] = None
    dense_point: Optional[Callable[[int], Point]] = None
    sampler: Optional[Callable[[random.Random], Point]] = None
    unbiased: bool = False
    exact: bool = True

    @property
    def default_tolerance(self) -> float:
        return EXACT_TOL if self.exact else INEXACT_TOL

    def sample(self, rng: random.Random) -> Point:
        if self.sampler is None:
            raise ValueError(f"space {self.name!r} has no sampler")
        return self.sampler(rng)


def combine(space: SpaceContract, wc: WeightedCombination | Iterable[tuple[float, Point]]) -> Point:
    """Evaluate the space's combination after validating the weights.

    A single surviving term is returned as-is, so ``combine([(1, u)]) == u``
    holds exactly in every instance.
    """
    if not isinstance(wc, WeightedCombination):
        wc = WeightedCombination.of(wc)
    if len(wc.terms) == 1:
        return wc.terms[0][1]
    return space.combine_terms(wc.terms)


def midpoint(space: SpaceContract, x: Point, y: Point) -> Point:
    return combine(space, [(0.5, x), (0.5, y)])


def uniform_mix(space: SpaceContract, points: Sequence[Point]) -> Point:
    """Equal-weight combination [n^-1, points]."""
    n = len(points)
    if n == 0:
        raise CombinationError("uniform_mix needs at least one point")
    if n == 1:
        return points[0]
    w = 1.0 / n
    return space.combine_terms([(w, p) for p in points])


def convexify(space: SpaceContract, x: Point, tol: float = 1e-9, max_doublings: int = 20) -> Point:
    """Convexification of ``x``: the limit of equal-weight self-combinations.

    Uses the instance's exact operator when available; otherwise iterates
    n = 1, 2, 4, ..., 2**max_doublings and returns the first iterate whose
    distance to its successor drops below ``tol``.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if space.convexify_exact is not None:
        return space.convexify_exact(x)
    current = x
    for _ in range(max_doublings):
        # doubling reuses the previous iterate: [1/2n, x]^{2n} = m(y_n, y_n)
        successor = midpoint(space, current, current)
        gap = space.distance(current, successor)
        if gap < tol:
            return current
        current = successor
    raise ConvexifyError(
        f"no convergence within {max_doublings} doublings (last gap {gap!r})", gap
    )


def self_combination(space: SpaceContract, x: Point, n: int) -> Point:
    """[n^-1, x]^n computed directly."""
    return uniform_mix(space, [x] * n)


def trial_rng(seed: int, index: int) -> random.Random:
    """Independent per-trial stream so aggregation is order independent."""
    return random.Random((int(seed) * 1_000_003 + 1) ^ (index * 2_147_483_659))
