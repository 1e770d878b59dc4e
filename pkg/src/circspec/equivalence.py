"""Spectral-difference curves and the conjugacy / equivalence verdicts.

The circular spectral difference (CSD) between two density histograms
is their pointwise difference on a shared grid.  Two ensembles are
treated as conjugate when the CSD dies out over the long positive tail
of the grid; two ensembles are equivalent when each is conjugate to the
order-matched circular ensemble and their CSD variances agree within a
threshold.  The threshold is an engineering knob, not a derived
constant, and is recorded in every verdict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectra import DensityHistogram, SpectralGrid

DEFAULT_TAIL_FRACTION = 0.5
DEFAULT_TAIL_TOL = 0.05
DEFAULT_DELTA_THRESHOLD = 0.05


class GridMismatchError(ValueError):
    """Two curves or histograms do not share the same grid."""


@dataclass
class CsdCurve:
    """Pointwise density difference between two spectra on one grid."""

    grid: SpectralGrid
    delta: np.ndarray
    labels: tuple[str, str] = ("", "")

    def __post_init__(self) -> None:
        self.delta = np.asarray(self.delta, dtype=np.float64)
        if self.delta.shape != (self.grid.bins,):
            raise ValueError(f"delta must have {self.grid.bins} values, got shape {self.delta.shape}")


@dataclass
class CsdReport:
    """A CSD curve with its cumulative sequence, variance, and tail verdict."""

    curve: CsdCurve
    cumulative: np.ndarray
    variance: float
    conjugate: bool
    tail_fraction: float = DEFAULT_TAIL_FRACTION
    tail_tol: float = DEFAULT_TAIL_TOL

    def __post_init__(self) -> None:
        self.cumulative = np.asarray(self.cumulative, dtype=np.float64)
        if self.cumulative.shape != self.curve.delta.shape:
            raise ValueError("cumulative sequence must match the curve length")
        if self.variance < 0:
            raise ValueError(f"variance must be nonnegative, got {self.variance}")


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Pairwise equivalence decision between two analyzed ensembles."""

    var_a: float
    var_b: float
    delta_threshold: float
    equivalent: bool
    conjugate_a: bool
    conjugate_b: bool


def csd(r1: DensityHistogram, r2: DensityHistogram) -> CsdCurve:
    """Pointwise difference ``r1 - r2``; both histograms must share a grid."""
    if r1.grid != r2.grid:
        raise GridMismatchError(f"histogram grids differ: {r1.grid} vs {r2.grid}")
    return CsdCurve(grid=r1.grid, delta=r1.density - r2.density, labels=(r1.source_label, r2.source_label))


def cumulative_csd(curve: CsdCurve) -> np.ndarray:
    """Prefix sums of ``delta * bin_width``.

    The final entry is the signed in-range mass difference between the
    two spectra, which vanishes whenever both histograms capture the
    same fraction of their pooled mass.
    """
    return np.cumsum(curve.delta * curve.grid.bin_width)


def csd_variance(curve: CsdCurve) -> float:
    """Population variance of the curve over the grid values."""
    return float(np.var(curve.delta))


def make_csd_report(
    r1: DensityHistogram,
    r2: DensityHistogram,
    tail_fraction: float = DEFAULT_TAIL_FRACTION,
    tail_tol: float = DEFAULT_TAIL_TOL,
) -> CsdReport:
    """Full CSD analysis of two histograms, including the tail verdict."""
    curve = csd(r1, r2)
    cumulative = cumulative_csd(curve)
    conjugate = _tail_vanishes(curve.delta, cumulative, tail_fraction, tail_tol)
    return CsdReport(
        curve=curve,
        cumulative=cumulative,
        variance=csd_variance(curve),
        conjugate=conjugate,
        tail_fraction=tail_fraction,
        tail_tol=tail_tol,
    )


def check_conjugacy(
    report: CsdReport,
    tail_fraction: float = DEFAULT_TAIL_FRACTION,
    tol: float = DEFAULT_TAIL_TOL,
) -> bool:
    """Does the CSD vanish over the tail window of the grid?

    The window is the final ``tail_fraction`` of the bins.  The verdict
    requires the cumulative CSD to move by at most ``tol`` across the
    window and every tail bin to stay within ``tol * 10`` in magnitude.
    """
    return _tail_vanishes(report.curve.delta, report.cumulative, tail_fraction, tol)


def _tail_vanishes(delta: np.ndarray, cumulative: np.ndarray, tail_fraction: float, tol: float) -> bool:
    if not 0.0 < tail_fraction <= 1.0:
        raise ValueError(f"tail_fraction must lie in (0, 1], got {tail_fraction}")
    bins = delta.shape[0]
    k0 = math.ceil((1.0 - tail_fraction) * bins)
    k0 = min(k0, bins - 1)
    tail_mass_moved = abs(float(cumulative[-1]) - float(cumulative[k0]))
    tail_peak = float(np.abs(delta[k0:]).max())
    return tail_mass_moved <= tol and tail_peak <= tol * 10.0


def check_equivalence(
    a: CsdReport, b: CsdReport, delta_threshold: float = DEFAULT_DELTA_THRESHOLD
) -> EquivalenceVerdict:
    """Pairwise equivalence of two ensembles via their CSD reports.

    Both reports must have been computed against conjugate circular
    ensembles on identical grids.  Equivalence requires both tail
    verdicts to hold and the CSD variances to agree within
    ``delta_threshold`` (absolute difference).
    """
    if a.curve.grid != b.curve.grid:
        raise GridMismatchError(f"report grids differ: {a.curve.grid} vs {b.curve.grid}")
    var_a = a.variance
    var_b = b.variance
    equivalent = a.conjugate and b.conjugate and abs(var_a - var_b) <= delta_threshold
    return EquivalenceVerdict(
        var_a=var_a,
        var_b=var_b,
        delta_threshold=delta_threshold,
        equivalent=equivalent,
        conjugate_a=a.conjugate,
        conjugate_b=b.conjugate,
    )
