"""Finite signed distributions and the normal/anomalous classification of
their weighted averages.

A weighted average ``sum(s_n * P_n)`` with ``sum(P_n) == 1`` is *normal* when
it lies in the closed interval spanned by the values and *anomalous*
otherwise.  Nonnegative weights always give a normal average; an anomalous
one needs at least one negative weight.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidDistribution

__all__ = [
    "WEIGHT_SUM_TOL",
    "AverageKind",
    "AverageClassification",
    "SignedDistribution",
    "weighted_average",
    "classify_average",
    "two_point",
]

WEIGHT_SUM_TOL = 1e-12


class AverageKind(str, enum.Enum):
    NORMAL = "Normal"
    ANOMALOUS = "Anomalous"


@dataclass(frozen=True)
class AverageClassification:
    """Mean of a signed distribution together with its classification."""

    mean: float
    kind: AverageKind
    has_negative_weight: bool

    @property
    def is_normal(self) -> bool:
        return self.kind is AverageKind.NORMAL

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "kind": self.kind.value,
            "has_negative_weight": self.has_negative_weight,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AverageClassification":
        return cls(
            mean=float(data["mean"]),
            kind=AverageKind(data["kind"]),
            has_negative_weight=bool(data["has_negative_weight"]),
        )


@dataclass(frozen=True)
class SignedDistribution:
    """Values ``s_1 > s_2 > ... > s_N`` with real weights summing to one.

    Weights may be negative.  Duplicate values are rejected rather than
    merged, since merging would silently change ``N``.

    Parameters
    ----------
    values : sequence of float
        Strictly decreasing outcome values.
    weights : sequence of float
        One weight per value.  Their (exactly rounded) sum must equal 1
        within ``WEIGHT_SUM_TOL * max(1, max|w|)``; the scale factor allows
        for the rounding left behind by near-cancelling large weights.
    """

    values: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.values)
        weights = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "weights", weights)

        if not values:
            raise InvalidDistribution("distribution needs at least one entry")
        if len(values) != len(weights):
            raise InvalidDistribution(
                f"got {len(values)} values but {len(weights)} weights"
            )
        if not all(math.isfinite(x) for x in values + weights):
            raise InvalidDistribution("values and weights must be finite")
        for hi, lo in zip(values, values[1:]):
            if not hi > lo:
                raise InvalidDistribution(
                    f"values must be strictly decreasing, got {hi!r} before {lo!r}"
                )
        total = math.fsum(weights)
        scale = max(1.0, max(abs(w) for w in weights))
        if abs(total - 1.0) > WEIGHT_SUM_TOL * scale:
            raise InvalidDistribution(f"weights sum to {total!r}, not 1")

    @classmethod
    def from_pairs(
        cls, pairs: Iterable[tuple[float, float]]
    ) -> "SignedDistribution":
        """Build from ``(value, weight)`` pairs in any order."""
        ordered = sorted(pairs, key=lambda p: p[0], reverse=True)
        return cls(tuple(v for v, _ in ordered), tuple(w for _, w in ordered))

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def max_value(self) -> float:
        return self.values[0]

    @property
    def min_value(self) -> float:
        return self.values[-1]

    @property
    def min_weight(self) -> float:
        return min(self.weights)

    def scaled(self, factor: float) -> "SignedDistribution":
        """Return the distribution of ``factor * s`` for ``factor > 0``."""
        if not factor > 0:
            raise InvalidDistribution("scale factor must be positive")
        return SignedDistribution(
            tuple(factor * v for v in self.values), self.weights
        )


def weighted_average(dist: SignedDistribution) -> float:
    """Return ``sum(value_n * weight_n)``.

    The products are accumulated with :func:`math.fsum`, so the result is the
    correctly rounded sum.  Anomalous averages come from large weights that
    cancel almost exactly and naive summation would lose digits there.
    """
    return math.fsum(v * w for v, w in zip(dist.values, dist.weights))


def classify_average(dist: SignedDistribution) -> AverageClassification:
    """Classify the weighted average of ``dist`` as normal or anomalous.

    Means that sit exactly on ``max_value`` or ``min_value`` count as normal
    (closed interval).

    Examples
    --------
    >>> d = SignedDistribution((1.0, -1.0), (1001.0, -1000.0))
    >>> c = classify_average(d)
    >>> c.mean, c.kind.value
    (2001.0, 'Anomalous')
    """
    mean = weighted_average(dist)
    # Displacements from the end points: with sum(w) == 1 these equal
    # mean - min and max - mean, and stay >= 0 in floating point whenever
    # all weights are >= 0, even if sum(w) is off by a rounding error.
    pairs = list(zip(dist.values, dist.weights))
    above_min = math.fsum(w * (v - dist.min_value) for v, w in pairs)
    below_max = math.fsum(w * (dist.max_value - v) for v, w in pairs)
    normal = above_min >= 0 and below_max >= 0
    return AverageClassification(
        mean=mean,
        kind=AverageKind.NORMAL if normal else AverageKind.ANOMALOUS,
        has_negative_weight=dist.min_weight < 0,
    )


def two_point(
    upper: float, lower: float, weights: Sequence[float]
) -> SignedDistribution:
    """Shorthand for a two-valued distribution ``(upper, lower)``."""
    p1, p2 = weights
    return SignedDistribution((upper, lower), (p1, p2))
