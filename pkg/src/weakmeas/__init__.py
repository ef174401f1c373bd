"""Signed averages, weak values and pointer measurements on a pre- and
post-selected qubit, plus the classical coin protocol they are often
compared with."""

from .classical import (
    ClassicalModelParams,
    ProtocolRunReport,
    binomial_sigma,
    fc_monte_carlo,
    fc_rescaled_average,
    fc_route_probabilities,
    normality_audit,
)
from .errors import (
    GridTooCoarse,
    InvalidDistribution,
    InvalidParams,
    InvalidState,
    NullDensity,
    SingularPostselection,
    WeakMeasError,
)
from .pointer import (
    MixtureForm,
    MixtureSpec,
    PointerConfig,
    ReadingDensity,
    mean_reading,
    mixed_reading_density,
    pure_reading_density,
    sample_readings,
    strong_outcome_probabilities,
)
from .quasiprob import (
    AverageClassification,
    AverageKind,
    SignedDistribution,
    classify_average,
    weighted_average,
)
from .qubit import (
    AmplitudePair,
    QubitState,
    WeakValueResult,
    classify_weak,
    strong_average,
    strong_probabilities,
    transition_amplitudes,
    weak_value,
)

__version__ = "0.1.0"
