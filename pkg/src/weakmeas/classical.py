"""Classical coin model with preparation, disturbance and post-selection.

With the initial state and the post-selection fixed, the model reduces to
two routes taken with strictly positive probabilities

    P_1 = (1 + lam - delta) / (2 (1 - delta)),
    P_2 = (1 - lam - delta) / (2 (1 - delta)),

for ``0 < lam < 1`` and ``0 < delta < 1 - lam``.  Recording ``+-1/lam``
instead of ``+-1`` gives the mean ``(P_1 - P_2) / lam = 1 / (1 - delta)``,
which grows without bound as ``delta -> 1`` and can look like an "anomalous"
coin value.  It is the ordinary average of a variable taking values
``+-1/lam``, and never leaves ``[-1/lam, 1/lam]``.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields

import numpy as np

from ._rng import shard_rngs
from .errors import InvalidParams
from .quasiprob import AverageClassification, SignedDistribution, classify_average

__all__ = [
    "ClassicalModelParams",
    "ProtocolRunReport",
    "fc_route_probabilities",
    "fc_rescaled_average",
    "fc_monte_carlo",
    "binomial_sigma",
    "normality_audit",
]

# Uniform draws per chunk; bounds memory for very long runs.
_CHUNK = 1 << 20


@dataclass(frozen=True)
class ClassicalModelParams:
    """Disturbance strength ``lam`` and post-selection parameter ``delta``."""

    lam: float
    delta: float

    def __post_init__(self) -> None:
        lam, delta = float(self.lam), float(self.delta)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "delta", delta)
        if not 0.0 < lam < 1.0:
            raise InvalidParams(f"need 0 < lam < 1, got lam={lam!r}")
        if not 0.0 < delta < 1.0 - lam:
            raise InvalidParams(
                f"need 0 < delta < 1 - lam = {1.0 - lam!r}, got delta={delta!r}"
            )

    @property
    def bound(self) -> float:
        """Largest magnitude the rescaled variable can take."""
        return 1.0 / self.lam


@dataclass(frozen=True)
class ProtocolRunReport:
    n_trials: int
    sample_mean_rescaled: float
    exact_mean_rescaled: float
    bound: float
    within_bound: bool
    seed: int

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "ProtocolRunReport":
        names = {f.name for f in fields(cls)}
        if set(data) != names:
            raise ValueError(f"expected keys {sorted(names)}, got {sorted(data)}")
        return cls(
            n_trials=int(data["n_trials"]),
            sample_mean_rescaled=float(data["sample_mean_rescaled"]),
            exact_mean_rescaled=float(data["exact_mean_rescaled"]),
            bound=float(data["bound"]),
            within_bound=bool(data["within_bound"]),
            seed=int(data["seed"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "ProtocolRunReport":
        return cls.from_dict(json.loads(text))


def fc_route_probabilities(params: ClassicalModelParams) -> tuple[float, float]:
    """Probabilities of the routes through ``s = +1`` and ``s = -1``."""
    lam, delta = params.lam, params.delta
    denom = 2.0 * (1.0 - delta)
    return (1.0 + lam - delta) / denom, (1.0 - lam - delta) / denom


def fc_rescaled_average(params: ClassicalModelParams) -> float:
    """Mean of ``s / lam``, equal to ``1 / (1 - delta)``.

    Route 1 carries ``+1/lam``.  The closed form is returned rather than
    ``(P_1 - P_2) / lam`` since the latter subtracts two nearly equal numbers
    when ``lam`` is small.
    """
    return 1.0 / (1.0 - params.delta)


def binomial_sigma(params: ClassicalModelParams, n: int, *, raw: bool = False) -> float:
    """Standard error of the ``n``-trial sample mean."""
    scale = 1.0 if raw else params.bound
    p1, p2 = fc_route_probabilities(params)
    mean = (p1 - p2) * scale
    return math.sqrt(max(scale**2 - mean**2, 0.0) / n)


def _count_heads(rng: np.random.Generator, n: int, p1: float) -> int:
    heads = 0
    remaining = n
    while remaining:
        m = min(remaining, _CHUNK)
        heads += int(np.count_nonzero(rng.random(m) < p1))
        remaining -= m
    return heads


def fc_monte_carlo(
    params: ClassicalModelParams,
    n: int,
    seed: int,
    *,
    raw: bool = False,
    shards: int = 1,
) -> ProtocolRunReport:
    """Simulate ``n`` coin trials and average the recorded numbers.

    Each trial takes route 1 when one uniform draw falls below ``P_1``.  The
    recorded value is ``+1/lam`` for route 1 and ``-1/lam`` for route 2;
    with ``raw=True`` it is ``+-1`` instead (then ``bound`` is 1 and the
    exact mean is ``P_1 - P_2``).

    Trials are split over ``shards`` independent streams spawned from
    ``seed``; shards run in threads and are merged in shard order, so the
    result depends on ``(seed, shards)`` but not on scheduling.
    """
    if n < 1:
        raise ValueError("need at least one trial")
    if shards < 1:
        raise ValueError("need at least one shard")
    p1, p2 = fc_route_probabilities(params)
    sizes = [n // shards + (i < n % shards) for i in range(shards)]
    rngs = shard_rngs(seed, shards)

    if shards == 1:
        counts = [_count_heads(rngs[0], sizes[0], p1)]
    else:
        with ThreadPoolExecutor(max_workers=shards) as pool:
            counts = list(pool.map(_count_heads, rngs, sizes, [p1] * shards))
    heads = sum(counts)

    if raw:
        scale = 1.0
        exact = p1 - p2
    else:
        scale = params.bound
        exact = fc_rescaled_average(params)
    # Integer head count keeps the sum exact: (heads - tails) * scale / n.
    sample_mean = (2 * heads - n) * scale / n
    return ProtocolRunReport(
        n_trials=n,
        sample_mean_rescaled=sample_mean,
        exact_mean_rescaled=exact,
        bound=scale,
        within_bound=abs(sample_mean) <= scale,
        seed=seed,
    )


def normality_audit(params: ClassicalModelParams) -> AverageClassification:
    """Classify the rescaled average over outcomes ``+-1/lam``.

    The route probabilities are positive, so the result is always normal.
    """
    bound = params.bound
    return classify_average(
        SignedDistribution((bound, -bound), fc_route_probabilities(params))
    )
