"""Von Neumann pointer with finite accuracy.

A pointer with initial wavefunction ``G(f - f')`` is coupled briefly to the
qubit so that route 1 shifts it by +1 and route 2 by -1.  After
post-selection the (unnormalized) distribution of the exact final reading is

    p(f) ~ |a1 G(f - f' - 1) + a2 G(f - f' + 1)|**2

with ``G(u) = (2 pi df**2)**(-1/4) exp(-u**2 / (4 df**2))``, so ``|G|**2`` is
a normal density of standard deviation ``df``.  A narrow pointer (``df << 1``)
separates the routes and its mean reading is the strong average; a wide one
(``df >> 1``) keeps them interfering and its mean tends to the weak value.
A classical spread of the initial setting is added by mixing over ``f'``.

Densities live on uniform grids and all integrals are trapezoidal.
"""

from __future__ import annotations

import csv
import enum
import io
import math
import os
from dataclasses import dataclass
from typing import TextIO

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from ._rng import make_rng
from .errors import GridTooCoarse, NullDensity
from .qubit import AmplitudePair, strong_probabilities

__all__ = [
    "GRID_MARGIN",
    "GRID_OVERSAMPLE",
    "MAX_GRID_POINTS",
    "MIX_NODES",
    "PointerConfig",
    "ReadingDensity",
    "MixtureForm",
    "MixtureSpec",
    "pointer_wavefunction",
    "pure_reading_density",
    "mean_reading",
    "strong_outcome_probabilities",
    "mixed_reading_density",
    "sample_readings",
]

# Grid must reach this many pointer widths beyond the +-1 shifted peaks.
GRID_MARGIN = 8.0
# Points per min(df, 1).
GRID_OVERSAMPLE = 8
MAX_GRID_POINTS = 2**24
MIX_NODES = 65
# Mixture nodes cover +-MIX_SPAN standard deviations of a Gaussian W.
MIX_SPAN = 6.0
NORMALIZATION_TOL = 1e-8


def _max_spacing(delta_f: float) -> float:
    return min(delta_f, 1.0) / GRID_OVERSAMPLE


@dataclass(frozen=True)
class PointerConfig:
    """Pointer width, initial offset and the uniform reading grid.

    Use :meth:`auto` unless a specific grid is needed; the constructor only
    validates.

    Raises
    ------
    GridTooCoarse
        If the grid misses the shifted peaks plus ``GRID_MARGIN * delta_f``
        on either side, if its spacing exceeds ``min(delta_f, 1) / 8``, or
        if it has more than ``MAX_GRID_POINTS`` points.
    """

    delta_f: float
    f_prime: float
    f_min: float
    f_max: float
    n_points: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.delta_f) and self.delta_f > 0):
            raise GridTooCoarse(f"pointer width must be positive, got {self.delta_f!r}")
        if not all(map(math.isfinite, (self.f_prime, self.f_min, self.f_max))):
            raise GridTooCoarse("grid bounds and offset must be finite")
        if self.n_points < 3:
            raise GridTooCoarse("grid needs at least 3 points")
        if self.n_points > MAX_GRID_POINTS:
            raise GridTooCoarse(
                f"{self.n_points} grid points exceeds the cap of {MAX_GRID_POINTS}"
            )
        if not self.f_min < self.f_max:
            raise GridTooCoarse("f_min must be below f_max")

        reach = 1.0 + GRID_MARGIN * self.delta_f
        slack = 1e-9 * max(1.0, abs(self.f_prime), reach)
        if self.f_min > self.f_prime - reach + slack or self.f_max < self.f_prime + reach - slack:
            raise GridTooCoarse(
                f"grid [{self.f_min}, {self.f_max}] does not cover "
                f"[{self.f_prime - reach}, {self.f_prime + reach}]"
            )
        if self.spacing > _max_spacing(self.delta_f) * (1 + 1e-9):
            raise GridTooCoarse(
                f"grid spacing {self.spacing:.3g} exceeds "
                f"{_max_spacing(self.delta_f):.3g}"
            )

    @classmethod
    def auto(cls, delta_f: float, f_prime: float = 0.0, extra: float = 0.0) -> "PointerConfig":
        """Smallest valid grid centred on ``f_prime``, widened by ``extra`` per side."""
        if not (math.isfinite(delta_f) and delta_f > 0):
            raise GridTooCoarse(f"pointer width must be positive, got {delta_f!r}")
        half = 1.0 + GRID_MARGIN * delta_f + extra
        n_points = _points_for(2 * half, _max_spacing(delta_f))
        return cls(delta_f, f_prime, f_prime - half, f_prime + half, n_points)

    @property
    def spacing(self) -> float:
        return (self.f_max - self.f_min) / (self.n_points - 1)

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(self.f_min, self.f_max, self.n_points)

    def refined(self, factor: int = 2) -> "PointerConfig":
        """Same bounds with the spacing divided by ``factor``."""
        return PointerConfig(
            self.delta_f, self.f_prime, self.f_min, self.f_max,
            factor * (self.n_points - 1) + 1,
        )


def _points_for(span: float, max_spacing: float) -> int:
    n = math.ceil(span / max_spacing) + 1
    if n > MAX_GRID_POINTS:
        raise GridTooCoarse(
            f"resolving the density needs {n} grid points (cap {MAX_GRID_POINTS})"
        )
    return max(n, 3)


@dataclass(frozen=True, eq=False)
class ReadingDensity:
    """Normalized, nonnegative density of pointer readings on a grid."""

    f: np.ndarray
    density: np.ndarray

    def __post_init__(self) -> None:
        f = np.array(self.f, dtype=float)
        p = np.array(self.density, dtype=float)
        if f.ndim != 1 or f.shape != p.shape or f.size < 3:
            raise ValueError("grid and density must be 1-D arrays of equal length >= 3")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise ValueError("density must be finite and nonnegative")
        total = trapezoid(p, f)
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"density integrates to {total!r}, not 1")
        f.flags.writeable = False
        p.flags.writeable = False
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "density", p)

    def integral(self) -> float:
        return float(trapezoid(self.density, self.f))

    def mean(self) -> float:
        return float(trapezoid(self.f * self.density, self.f))

    def variance(self) -> float:
        m = self.mean()
        return float(trapezoid((self.f - m) ** 2 * self.density, self.f))

    def cdf(self) -> np.ndarray:
        c = cumulative_trapezoid(self.density, self.f, initial=0.0)
        return c / c[-1]

    def to_csv(self, target: str | os.PathLike | TextIO) -> None:
        """Write ``f,p`` rows (header included, LF line endings)."""
        if isinstance(target, (str, os.PathLike)):
            with open(target, "w", newline="", encoding="utf-8") as fh:
                self._write_csv(fh)
        else:
            self._write_csv(target)

    def to_csv_string(self) -> str:
        buf = io.StringIO()
        self._write_csv(buf)
        return buf.getvalue()

    def _write_csv(self, fh: TextIO) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["f", "p"])
        for x, p in zip(self.f, self.density):
            writer.writerow([f"{x:.17g}", f"{p:.17g}"])


def pointer_wavefunction(u: np.ndarray, delta_f: float) -> np.ndarray:
    """Real Gaussian ``G(u)`` with ``int G**2 = 1`` and ``|G|**2`` of std ``delta_f``."""
    return (2 * np.pi * delta_f**2) ** -0.25 * np.exp(-(u**2) / (4 * delta_f**2))


def _unnormalized(f: np.ndarray, amps: AmplitudePair, delta_f: float, f0: float) -> np.ndarray:
    u = f - f0
    psi = amps.a1 * pointer_wavefunction(u - 1.0, delta_f)
    psi += amps.a2 * pointer_wavefunction(u + 1.0, delta_f)
    return psi.real**2 + psi.imag**2


def _normalize(f: np.ndarray, raw: np.ndarray) -> np.ndarray:
    norm = trapezoid(raw, f)
    if not (math.isfinite(norm) and norm > np.finfo(float).tiny):
        raise NullDensity(
            "reading density vanishes on the grid; amplitudes are too small"
        )
    return raw / norm


def pure_reading_density(amps: AmplitudePair, cfg: PointerConfig) -> ReadingDensity:
    """Reading density for a pointer prepared in the pure state ``G(f - f')``.

    Raises
    ------
    NullDensity
        If the unnormalized density underflows to zero everywhere.
    """
    f = cfg.grid
    return ReadingDensity(f, _normalize(f, _unnormalized(f, amps, cfg.delta_f, cfg.f_prime)))


def mean_reading(amps: AmplitudePair, cfg: PointerConfig) -> float:
    """First moment of :func:`pure_reading_density`."""
    return pure_reading_density(amps, cfg).mean()


def strong_outcome_probabilities(amps: AmplitudePair) -> tuple[float, float]:
    """Weights of the peaks at ``f' + 1`` and ``f' - 1`` when ``delta_f -> 0``."""
    return strong_probabilities(amps)


class MixtureForm(str, enum.Enum):
    GAUSSIAN = "gaussian"
    UNIFORM = "uniform"


@dataclass(frozen=True)
class MixtureSpec:
    """Symmetric distribution ``W`` of the initial pointer setting.

    ``width`` is the standard deviation of ``W`` for both forms; the uniform
    form is supported on ``[-sqrt(3) width, sqrt(3) width]``.  ``width == 0``
    is the unmixed (pure) pointer.
    """

    width: float
    form: MixtureForm = MixtureForm.GAUSSIAN

    def __post_init__(self) -> None:
        object.__setattr__(self, "form", MixtureForm(self.form))
        if not (math.isfinite(self.width) and self.width >= 0):
            raise ValueError(f"mixture width must be >= 0, got {self.width!r}")

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Symmetric quadrature offsets and weights summing to 1.

        Gauss-Legendre on ``[-6 width, 6 width]`` weighted by the Gaussian, or
        on the support of the uniform form.
        """
        x, w = np.polynomial.legendre.leggauss(MIX_NODES)
        if self.form is MixtureForm.GAUSSIAN:
            half = MIX_SPAN * self.width
            offsets = half * x
            weights = w * np.exp(-0.5 * (MIX_SPAN * x) ** 2)
        else:
            offsets = math.sqrt(3.0) * self.width * x
            weights = w.copy()
        return offsets, weights / weights.sum()

    @property
    def reach(self) -> float:
        """Largest offset carrying weight."""
        if self.form is MixtureForm.GAUSSIAN:
            return MIX_SPAN * self.width
        return math.sqrt(3.0) * self.width


def mixed_reading_density(
    amps: AmplitudePair, cfg: PointerConfig, mix: MixtureSpec
) -> ReadingDensity:
    """Reading density when the initial setting is ``f' + x`` with ``x ~ W``.

    Each node of the mixture quadrature contributes a pure density centred
    at ``cfg.f_prime + x_k``.  The grid keeps ``cfg``'s spacing and is widened
    by ``8 * mix.width`` on each side.  For ``mix.width == 0`` this is
    :func:`pure_reading_density`.
    """
    if mix.width == 0:
        return pure_reading_density(amps, cfg)

    extra = GRID_MARGIN * mix.width
    span = cfg.f_max - cfg.f_min + 2 * extra
    n = _points_for(span, cfg.spacing)
    f = np.linspace(cfg.f_min - extra, cfg.f_max + extra, n)

    offsets, weights = mix.nodes()
    total = np.zeros_like(f)
    for x, q in zip(offsets, weights):
        total += q * _normalize(f, _unnormalized(f, amps, cfg.delta_f, cfg.f_prime + x))
    return ReadingDensity(f, _normalize(f, total))


def sample_readings(
    amps: AmplitudePair,
    cfg: PointerConfig,
    mix: MixtureSpec | None = None,
    n: int = 1,
    seed: int = 0,
) -> np.ndarray:
    """Draw ``n`` independent pointer readings.

    Inverse-CDF sampling of the grid density, which is taken as piecewise
    linear between grid points; within a cell the quadratic CDF is inverted
    exactly.  Identical ``seed`` gives identical draws.
    """
    if n < 1:
        raise ValueError("need at least one sample")
    dens = pure_reading_density(amps, cfg) if mix is None else mixed_reading_density(amps, cfg, mix)
    f, p = dens.f, dens.density
    cdf = cumulative_trapezoid(p, f, initial=0.0)
    u = make_rng(seed).random(n) * cdf[-1]

    hi = np.clip(np.searchsorted(cdf, u, side="right"), 1, f.size - 1)
    lo = hi - 1
    h = f[hi] - f[lo]
    d0, d1 = p[lo], p[hi]
    r = u - cdf[lo]
    # Solve h*(d0 t + (d1 - d0) t**2 / 2) = r for t in [0, 1].
    a = 0.5 * (d1 - d0) * h
    b = d0 * h
    disc = np.sqrt(np.maximum(b * b + 4 * a * r, 0.0))
    denom = b + disc
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(denom > 0, 2 * r / denom, 0.5)
    return f[lo] + np.clip(t, 0.0, 1.0) * h
