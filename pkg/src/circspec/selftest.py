"""Built-in invariant suite behind the ``selftest`` CLI command.

Each check exercises one structural guarantee of the pipeline with
seeded inputs, so a run is deterministic and cheap enough to execute on
every install.  Tolerances live in :class:`SelftestLimits` so a harness
can tighten them deliberately to confirm that failures are reported.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circular_ensemble import build_conjugate_ensemble, modulus_matrix, sample_cue_unitary
from .layer_ensemble import build_layer_ensemble
from .rng import RngState, standard_normals
from .spectra import SpectralGrid, pool_spectrum, spectral_density
from .tensor_ingest import WeightTensor


@dataclass(frozen=True)
class SelftestLimits:
    """Tolerances applied by the invariant checks."""

    unitarity_tol: float = 1e-8
    eig_modulus_tol: float = 1e-6
    row_norm_tol: float = 1e-10
    psd_factor: float = 1e-8
    root_residual_tol: float = 1e-6
    trace_rel_tol: float = 1e-9
    frobenius_rel_tol: float = 1e-9
    mass_tol: float = 1e-12


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _char_poly_coefficients(a: np.ndarray) -> np.ndarray:
    """Coefficients of det(lambda*I - A) via the Faddeev-LeVerrier recursion."""
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=a.dtype)
    coeffs[0] = 1.0
    m = np.zeros_like(a)
    identity = np.eye(n, dtype=a.dtype)
    for k in range(1, n + 1):
        m = a @ m + coeffs[k - 1] * identity
        coeffs[k] = -np.trace(a @ m) / k
    return coeffs


def _max_root_residual(a: np.ndarray, eigenvalues: np.ndarray) -> float:
    """Estimated eigenvalue error |p(lam)| / |p'(lam)| from the characteristic polynomial."""
    coeffs = _char_poly_coefficients(a.astype(np.complex128))
    deriv = np.polyder(np.poly1d(coeffs))
    worst = 0.0
    for lam in eigenvalues:
        p = np.polyval(coeffs, lam)
        dp = np.polyval(deriv.coefficients, lam)
        if abs(dp) == 0.0:
            return float("inf")
        worst = max(worst, abs(p) / abs(dp))
    return worst


def _gaussian_layers(seed: int, orders: list[int], cols_factor: int = 3) -> list[WeightTensor]:
    layers = []
    for i, n in enumerate(orders):
        gen = RngState(seed, 1000 + i).generator()
        data = standard_normals(gen, n * n * cols_factor)
        layers.append(WeightTensor(name=f"layer{i}", shape=(n, n * cols_factor), data=data))
    return layers


def _check_unitarity(seed: int, limits: SelftestLimits) -> CheckResult:
    worst_dev = 0.0
    worst_mod = 0.0
    for n in (2, 8, 64, 256):
        u = sample_cue_unitary(n, RngState(seed, n))
        worst_dev = max(worst_dev, float(np.abs(u @ u.conj().T - np.eye(n)).max()))
        worst_mod = max(worst_mod, float(np.abs(np.abs(np.linalg.eigvals(u)) - 1.0).max()))
    passed = worst_dev <= limits.unitarity_tol and worst_mod <= limits.eig_modulus_tol
    return CheckResult("unitarity", passed, f"max |UU*-I|={worst_dev:.2e}, max ||lam|-1|={worst_mod:.2e}")


def _check_row_norms(seed: int, limits: SelftestLimits) -> CheckResult:
    worst = 0.0
    for n in (4, 32, 128):
        a = modulus_matrix(sample_cue_unitary(n, RngState(seed, 500 + n)))
        norms = np.linalg.norm(a, axis=1)
        worst = max(worst, float(np.abs(norms - 1.0).max()))
    return CheckResult("modulus-row-norms", worst <= limits.row_norm_tol, f"max |row norm - 1|={worst:.2e}")


def _check_psd(seed: int, limits: SelftestLimits) -> CheckResult:
    ensemble = build_layer_ensemble(_gaussian_layers(seed, [5, 17, 40]), "selftest")
    worst = float("inf")
    for member in ensemble.members:
        eigenvalues = np.linalg.eigvalsh(member)
        floor = -limits.psd_factor * float(np.abs(eigenvalues).max())
        worst = min(worst, float(eigenvalues.min() - floor))
    return CheckResult("gram-psd", worst >= 0.0, f"min eigenvalue margin={worst:.2e}")


def _check_symmetric_solver(seed: int, limits: SelftestLimits) -> CheckResult:
    gen = RngState(seed, 2000).generator()
    worst_residual = 0.0
    for n in (2, 3, 4, 5, 6):
        rect = standard_normals(gen, n * (n + 2)).reshape(n, n + 2)
        x = rect @ rect.T
        x = np.triu(x) + np.triu(x, 1).T
        worst_residual = max(worst_residual, _max_root_residual(x, np.linalg.eigvalsh(x)))
    rect = standard_normals(gen, 128 * 200).reshape(128, 200)
    x = rect @ rect.T
    x = np.triu(x) + np.triu(x, 1).T
    eigenvalues = np.linalg.eigvalsh(x)
    trace_err = abs(eigenvalues.sum() - np.trace(x)) / abs(np.trace(x))
    frob_err = abs((eigenvalues**2).sum() - (x**2).sum()) / (x**2).sum()
    passed = (
        worst_residual <= limits.root_residual_tol
        and trace_err <= limits.trace_rel_tol
        and frob_err <= limits.frobenius_rel_tol
    )
    detail = f"root residual={worst_residual:.2e}, trace rel={trace_err:.2e}, frob rel={frob_err:.2e}"
    return CheckResult("symmetric-solver", passed, detail)


def _check_general_solver(seed: int, limits: SelftestLimits) -> CheckResult:
    gen = RngState(seed, 3000).generator()
    worst_residual = 0.0
    for n in (2, 3, 4, 5, 6):
        a = standard_normals(gen, n * n).reshape(n, n)
        worst_residual = max(worst_residual, _max_root_residual(a, np.linalg.eigvals(a)))
    a = np.abs(standard_normals(gen, 64 * 64).reshape(64, 64))
    eigenvalues = np.linalg.eigvals(a)
    trace_err = abs(eigenvalues.sum() - np.trace(a)) / max(1.0, abs(np.trace(a)))
    spectrum = np.sort_complex(eigenvalues)
    conj_closure = float(np.abs(spectrum - np.sort_complex(eigenvalues.conj())).max())
    perron = eigenvalues[np.abs(eigenvalues).argmax()]
    perron_ok = abs(perron.imag) <= 1e-10 and perron.real > 0
    passed = (
        worst_residual <= limits.root_residual_tol
        and trace_err <= limits.trace_rel_tol
        and conj_closure <= 1e-8
        and perron_ok
    )
    detail = f"root residual={worst_residual:.2e}, trace rel={trace_err:.2e}, conj closure={conj_closure:.2e}"
    return CheckResult("general-solver", passed, detail)


def _check_determinism(seed: int, limits: SelftestLimits) -> CheckResult:
    orders = [4, 9, 16]
    first = build_conjugate_ensemble(orders, seed=seed, repetitions=2)
    second = build_conjugate_ensemble(orders, seed=seed, repetitions=2)
    members_equal = all(np.array_equal(a, b) for a, b in zip(first.members, second.members))
    serial = pool_spectrum(first, mode="general-modulus", workers=1)
    threaded = pool_spectrum(second, mode="general-modulus", workers=3)
    pooled_equal = np.array_equal(serial.values, threaded.values)
    return CheckResult(
        "determinism",
        members_equal and pooled_equal,
        f"members identical={members_equal}, pooled identical across workers={pooled_equal}",
    )


def _check_density_mass(seed: int, limits: SelftestLimits) -> CheckResult:
    ensemble = build_layer_ensemble(_gaussian_layers(seed + 1, [8, 24]), "selftest")
    spectrum = pool_spectrum(ensemble)
    grid = SpectralGrid()
    hist = spectral_density(spectrum, grid)
    mass_gap = abs(float(hist.density.sum() * grid.bin_width) - hist.in_range_fraction)
    nonnegative = bool((hist.density >= 0).all())
    return CheckResult(
        "density-mass",
        mass_gap <= limits.mass_tol and nonnegative,
        f"|sum(rho)*w - fraction|={mass_gap:.2e}, nonnegative={nonnegative}",
    )


_CHECKS = (
    _check_unitarity,
    _check_row_norms,
    _check_psd,
    _check_symmetric_solver,
    _check_general_solver,
    _check_determinism,
    _check_density_mass,
)


def run_selftest(seed: int = 0, limits: SelftestLimits = SelftestLimits()) -> tuple[list[CheckResult], bool]:
    """Run every invariant check; returns the results and overall verdict."""
    results = [check(seed, limits) for check in _CHECKS]
    return results, all(r.passed for r in results)


def format_results(results: list[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name.ljust(width)}  {r.detail}" for r in results]
    return "\n".join(lines)
