"""Eigenvalue pooling and spectral density estimation.

Every ensemble member is diagonalized, the eigenvalues of all members
are pooled into one flat multiset, and the pooled values are binned on
a fixed grid over ``[0, eps_max)`` into a raw (unsmoothed) density
histogram.  Densities are normalized by the total pooled count, so mass
falling outside the grid shows up as ``in_range_fraction < 1`` instead
of silently rescaling the curve.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .ensembles import MixedMatrixEnsemble

SYMMETRY_TOL = 1e-12

#: Eigenvalue reduction modes accepted by :func:`pool_spectrum`.
POOL_MODES = ("symmetric", "general-modulus", "general-real")

#: Per-member eigenvalue scaling modes.  ``none`` is the faithful
#: default; the others exist because histogram normalization conventions
#: differ between published variance tables.
SCALING_MODES = ("none", "inv-n", "unit-radius")


class EigenSolverError(RuntimeError):
    """Eigendecomposition failed for one ensemble member."""

    def __init__(self, message: str, member_index: int):
        super().__init__(message)
        self.member_index = member_index


@dataclass(frozen=True)
class SpectralGrid:
    """Equal-width bins covering ``[0, eps_max)``."""

    eps_max: float = 6.0
    bins: int = 1000

    def __post_init__(self) -> None:
        if self.bins < 2:
            raise ValueError(f"grid needs at least 2 bins, got {self.bins}")
        if not self.eps_max > 0:
            raise ValueError(f"eps_max must be positive, got {self.eps_max}")

    @property
    def bin_width(self) -> float:
        return self.eps_max / self.bins

    def left_edges(self) -> np.ndarray:
        """Left bin edges, computed as ``k * eps_max / bins``."""
        return np.arange(self.bins) * self.eps_max / self.bins


@dataclass
class PooledSpectrum:
    """Flat multiset of pooled eigenvalues from one ensemble."""

    values: np.ndarray
    total_count: int
    source_label: str = ""

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 1:
            raise ValueError(f"pooled values must be 1-D, got shape {self.values.shape}")
        if self.values.size != self.total_count:
            raise ValueError(f"{self.values.size} pooled values but total_count={self.total_count}")
        if self.total_count == 0:
            raise ValueError("pooled spectrum must not be empty")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("pooled eigenvalues must all be finite")


@dataclass
class DensityHistogram:
    """Raw spectral density on a grid; no smoothing is ever applied."""

    grid: SpectralGrid
    density: np.ndarray
    in_range_fraction: float
    source_label: str = ""

    def __post_init__(self) -> None:
        self.density = np.asarray(self.density, dtype=np.float64)
        if self.density.shape != (self.grid.bins,):
            raise ValueError(f"density must have {self.grid.bins} bins, got shape {self.density.shape}")


def eig_symmetric(x: np.ndarray) -> np.ndarray:
    """Ascending real eigenvalues of a symmetric matrix.

    Backed by the dense symmetric solver (Householder reduction plus
    implicitly shifted QL/QR as implemented in LAPACK); non-convergence
    surfaces as ``numpy.linalg.LinAlgError``, never a partial result.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {x.shape}")
    scale = max(1.0, float(np.abs(x).max()))
    if float(np.abs(x - x.T).max()) > SYMMETRY_TOL * scale:
        raise ValueError("matrix is not symmetric within tolerance")
    return np.linalg.eigvalsh(x)


def eig_general(a: np.ndarray) -> np.ndarray:
    """Complex eigenvalues of a real square matrix.

    Backed by the dense general solver (Hessenberg reduction plus
    Francis shifted QR as implemented in LAPACK); for real input the
    complex eigenvalues come in exact conjugate pairs.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return np.asarray(np.linalg.eigvals(a), dtype=np.complex128)


def _scale_values(values: np.ndarray, order: int, scaling: str) -> np.ndarray:
    if scaling == "none":
        return values
    if scaling == "inv-n":
        return values / order
    if scaling == "unit-radius":
        radius = float(np.abs(values).max())
        return values / radius if radius > 0 else values
    raise ValueError(f"unknown scaling mode {scaling!r}; expected one of {SCALING_MODES}")


def _member_eigenvalues(member: np.ndarray, index: int, mode: str) -> np.ndarray:
    try:
        if mode == "symmetric":
            return eig_symmetric(member)
        if mode == "general-modulus":
            return np.abs(eig_general(member))
        if mode == "general-real":
            return eig_general(member).real
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(
            f"eigendecomposition failed for member {index} (order {member.shape[0]}): {exc}",
            member_index=index,
        ) from exc
    raise ValueError(f"unknown pool mode {mode!r}; expected one of {POOL_MODES}")


def pool_spectrum(
    ensemble: MixedMatrixEnsemble,
    mode: str = "symmetric",
    scaling: str = "none",
    workers: int = 1,
) -> PooledSpectrum:
    """Concatenate the eigenvalues of every ensemble member.

    ``symmetric`` mode uses the symmetric solver; the ``general-*``
    modes use the general solver and reduce each complex eigenvalue to
    its modulus or real part.  Optional per-member scaling divides a
    member's eigenvalues by its order (``inv-n``) or by its spectral
    radius (``unit-radius``).

    Member solves are independent; ``workers > 1`` fans them across a
    thread pool.  Results are concatenated in member order regardless of
    completion order, so the pooled spectrum does not depend on
    parallelism.
    """
    if mode not in POOL_MODES:
        raise ValueError(f"unknown pool mode {mode!r}; expected one of {POOL_MODES}")
    if scaling not in SCALING_MODES:
        raise ValueError(f"unknown scaling mode {scaling!r}; expected one of {SCALING_MODES}")

    def solve(index: int) -> np.ndarray:
        values = _member_eigenvalues(ensemble.members[index], index, mode)
        return _scale_values(values, ensemble.orders[index], scaling)

    indices = range(len(ensemble))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_member = list(pool.map(solve, indices))
    else:
        per_member = [solve(i) for i in indices]
    pooled = np.concatenate(per_member)
    return PooledSpectrum(values=pooled, total_count=ensemble.total_order, source_label=ensemble.source_label)


def spectral_density(spectrum: PooledSpectrum, grid: SpectralGrid) -> DensityHistogram:
    """Bin pooled eigenvalues into a density histogram on ``grid``.

    Bin ``k`` covers the half-open interval ``[k * w, (k + 1) * w)`` with
    ``w = grid.bin_width``; membership is decided by ``floor(value / w)``.
    Values below 0 or at/above ``eps_max`` are excluded from the bins
    but still counted in the normalization, which divides by the total
    pooled count times the bin width.
    """
    w = grid.bin_width
    ratios = np.floor(spectrum.values / w)
    in_range = (spectrum.values >= 0.0) & (ratios >= 0.0) & (ratios < grid.bins)
    counts = np.bincount(ratios[in_range].astype(np.int64), minlength=grid.bins)
    density = counts / (spectrum.total_count * w)
    fraction = float(counts.sum()) / spectrum.total_count
    return DensityHistogram(
        grid=grid, density=density, in_range_fraction=fraction, source_label=spectrum.source_label
    )
