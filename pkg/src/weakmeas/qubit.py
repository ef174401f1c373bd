"""Pre- and post-selected two-level system.

The measured observable ``S`` has eigenvalues +1 (``|up>``) and -1
(``|down>``) in the computational basis, and there is no free evolution
between preparation and post-selection.  The transition ``psi -> phi`` then
splits into two virtual routes with amplitudes

    A_1 = <phi|up><up|psi>,    A_2 = <phi|down><down|psi>.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import InvalidState, SingularPostselection
from .quasiprob import (
    AverageClassification,
    SignedDistribution,
    classify_average,
)

__all__ = [
    "NORM_TOL",
    "SINGULAR_RTOL",
    "QubitState",
    "AmplitudePair",
    "WeakValueResult",
    "transition_amplitudes",
    "strong_average",
    "strong_probabilities",
    "weak_value",
    "classify_weak",
]

NORM_TOL = 1e-12
# |a1 + a2| below this fraction of max(|a1|, |a2|) counts as orthogonal selection.
SINGULAR_RTOL = 1e-10


@dataclass(frozen=True)
class QubitState:
    """Normalized state ``c_up |up> + c_down |down>``."""

    c_up: complex
    c_down: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "c_up", complex(self.c_up))
        object.__setattr__(self, "c_down", complex(self.c_down))
        norm2 = abs(self.c_up) ** 2 + abs(self.c_down) ** 2
        if not abs(norm2 - 1.0) <= NORM_TOL:
            raise InvalidState(f"state has squared norm {norm2!r}, expected 1")

    @classmethod
    def normalized(cls, c_up: complex, c_down: complex) -> "QubitState":
        """Rescale ``(c_up, c_down)`` to unit norm."""
        norm = math.hypot(abs(c_up), abs(c_down))
        if norm == 0 or not math.isfinite(norm):
            raise InvalidState("cannot normalize a zero or non-finite vector")
        return cls(complex(c_up) / norm, complex(c_down) / norm)


@dataclass(frozen=True)
class AmplitudePair:
    """Route amplitudes ``a1`` (through ``|up>``) and ``a2`` (through ``|down>``)."""

    a1: complex
    a2: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "a1", complex(self.a1))
        object.__setattr__(self, "a2", complex(self.a2))
        if not all(map(cmath.isfinite, (self.a1, self.a2))):
            raise ValueError("amplitudes must be finite")
        if self.a1 == 0 and self.a2 == 0:
            raise SingularPostselection(
                "both route amplitudes vanish: the transition is forbidden"
            )

    def scaled(self, c: complex) -> "AmplitudePair":
        return AmplitudePair(c * self.a1, c * self.a2)

    @property
    def total(self) -> complex:
        """Full transition amplitude ``<phi|psi> = a1 + a2``."""
        return self.a1 + self.a2


@dataclass(frozen=True)
class WeakValueResult:
    """Real weak value and its split into two route quasi-probabilities.

    ``weak_value == quasi_p1 - quasi_p2`` and ``quasi_p1 + quasi_p2 == 1``.
    ``complex_value`` keeps the full ratio ``(a1 - a2) / (a1 + a2)``; its
    imaginary part affects the pointer momentum, not the position reading.
    """

    weak_value: float
    quasi_p1: float
    quasi_p2: float
    complex_value: complex

    @property
    def imag(self) -> float:
        return self.complex_value.imag


def transition_amplitudes(pre: QubitState, post: QubitState) -> AmplitudePair:
    """Return the route amplitudes for ``pre -> post``.

    Raises
    ------
    SingularPostselection
        If both amplitudes are exactly zero.
    """
    a1 = post.c_up.conjugate() * pre.c_up
    a2 = post.c_down.conjugate() * pre.c_down
    return AmplitudePair(a1, a2)


def strong_probabilities(amps: AmplitudePair) -> tuple[float, float]:
    """Probabilities of the readings +1 and -1 with an accurate meter.

    Interference between the routes is destroyed, so each route contributes
    ``|a_i|**2``.
    """
    w1, w2 = abs(amps.a1) ** 2, abs(amps.a2) ** 2
    total = w1 + w2
    return w1 / total, w2 / total


def strong_average(amps: AmplitudePair) -> float:
    """Mean of ``S`` for an accurate measurement; always in ``[-1, 1]``."""
    w1, w2 = abs(amps.a1) ** 2, abs(amps.a2) ** 2
    return (w1 - w2) / (w1 + w2)


def weak_value(amps: AmplitudePair) -> WeakValueResult:
    """Real part of ``(a1 - a2) / (a1 + a2)`` and its quasi-probabilities.

    The quasi-probabilities are ``Re(a_i / (a1 + a2))``.  ``quasi_p2`` is
    formed as ``1 - quasi_p1`` (equal in exact arithmetic) so that the
    normalization holds to rounding, also when both are huge.

    Raises
    ------
    SingularPostselection
        If ``|a1 + a2| <= SINGULAR_RTOL * max(|a1|, |a2|)``.
    """
    total = amps.total
    scale = max(abs(amps.a1), abs(amps.a2))
    if abs(total) <= SINGULAR_RTOL * scale:
        raise SingularPostselection(
            f"|a1 + a2| = {abs(total):.3g} is negligible next to the route "
            f"amplitudes ({scale:.3g}); the weak value diverges"
        )
    ratio = amps.a1 / total
    p1 = ratio.real
    p2 = 1.0 - p1
    return WeakValueResult(
        weak_value=p1 - p2,
        quasi_p1=p1,
        quasi_p2=p2,
        complex_value=(amps.a1 - amps.a2) / total,
    )


def classify_weak(amps: AmplitudePair) -> AverageClassification:
    """Classify the weak value as an average of ``s = +-1`` over quasi-probabilities."""
    wv = weak_value(amps)
    dist = SignedDistribution((1.0, -1.0), (wv.quasi_p1, wv.quasi_p2))
    return classify_average(dist)
