"""Order-matched circular-unitary ensemble sampling.

A unitary member is constructed from the eigenvectors of a Hermitian
matrix with Gaussian entries: row ``i`` of the unitary is the ``i``-th
eigenvector scaled by a fresh uniform phase.  Taking the entrywise
modulus then yields the real nonnegative matrix that joins the mixed
ensemble alongside the weight-derived Gram matrices.
"""

from __future__ import annotations

import numpy as np

from .ensembles import MixedMatrixEnsemble
from .rng import RngState, as_generator, standard_normals, uniform_angles

#: Input matrices may deviate from exact Hermitian symmetry by at most
#: this factor times their magnitude scale.
HERMITIAN_TOL = 1e-12

#: Eigenvalues closer than this factor times the spectral norm are
#: treated as one degenerate cluster and re-orthogonalized.
DEGENERACY_GAP = 1e-10


def sample_gue_hermitian(n: int, rng: RngState | np.random.Generator) -> np.ndarray:
    """Random Hermitian matrix with Gaussian entries.

    Componentwise ``H[i, j] = (a[i, j] + a[j, i]) / 2 + 1j * (b[i, j] - b[j, i]) / 2``
    with ``a`` and ``b`` independent standard-normal draws, so the
    diagonal is exactly real and ``H[i, j] == conj(H[j, i])`` exactly.
    """
    if n < 2:
        raise ValueError(f"matrix order must be at least 2, got {n}")
    gen = as_generator(rng)
    a = standard_normals(gen, n * n).reshape(n, n)
    b = standard_normals(gen, n * n).reshape(n, n)
    return 0.5 * (a + a.T) + 0.5j * (b - b.T)


def hermitian_eig(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (real, ascending) and orthonormal eigenvectors of ``h``.

    Eigenvectors are returned as columns under a fixed phase convention:
    each vector's largest-modulus component is made real positive, so
    repeated runs and different platforms agree on the vectors, not just
    the eigenvalues.  Near-degenerate clusters are re-orthogonalized
    before the phase fix.

    Raises ``ValueError`` if ``h`` is not Hermitian within tolerance and
    ``numpy.linalg.LinAlgError`` if the solver fails to converge.
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    scale = max(1.0, float(np.abs(h).max()))
    if float(np.abs(h - h.conj().T).max()) > HERMITIAN_TOL * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    eigenvalues, eigenvectors = np.linalg.eigh(h)
    eigenvectors = _reorthogonalize_clusters(eigenvalues, np.asarray(eigenvectors, dtype=np.complex128))
    return eigenvalues, _fix_phases(eigenvectors)


def _reorthogonalize_clusters(eigenvalues: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    spectral_norm = float(np.abs(eigenvalues).max()) if eigenvalues.size else 0.0
    gap = DEGENERACY_GAP * max(spectral_norm, 1.0)
    n = eigenvalues.size
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and eigenvalues[stop] - eigenvalues[stop - 1] < gap:
            stop += 1
        if stop - start > 1:
            q, _ = np.linalg.qr(vectors[:, start:stop])
            vectors[:, start:stop] = q
        start = stop
    return vectors


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    for j in range(vectors.shape[1]):
        k = int(np.abs(vectors[:, j]).argmax())
        pivot = vectors[k, j]
        vectors[:, j] *= pivot.conjugate() / abs(pivot)
    return vectors


def sample_cue_unitary(n: int, rng: RngState | np.random.Generator) -> np.ndarray:
    """Random unitary built from fresh Gaussian-Hermitian eigenvectors.

    Row ``i`` is the ``i``-th eigenvector scaled by ``exp(1j * gamma_i)``
    with ``gamma_i`` uniform on ``[0, 2*pi)``.  The result is unitary to
    roughly 1e-14 by construction.
    """
    gen = as_generator(rng)
    h = sample_gue_hermitian(n, gen)
    _, vectors = hermitian_eig(h)
    gamma = uniform_angles(gen, n)
    return np.exp(1j * gamma)[:, None] * vectors.T


def modulus_matrix(u: np.ndarray) -> np.ndarray:
    """Entrywise modulus, turning a complex matrix into a real nonnegative one."""
    return np.abs(np.asarray(u))


def build_conjugate_ensemble(
    orders: list[int] | tuple[int, ...], seed: int, repetitions: int = 1
) -> MixedMatrixEnsemble:
    """Sample one modulus-of-unitary member per order and repetition.

    Each member owns a stream id derived from its position, so members
    are independent and the ensemble is identical no matter the order
    (or parallelism) in which members are actually sampled.
    """
    orders = tuple(int(n) for n in orders)
    if not orders:
        raise ValueError("orders list must not be empty")
    if any(n < 2 for n in orders):
        raise ValueError(f"all orders must be at least 2, got {orders}")
    if repetitions < 1:
        raise ValueError(f"repetitions must be at least 1, got {repetitions}")
    members = []
    for index, n in enumerate(orders):
        for rep in range(repetitions):
            state = RngState(seed, index * repetitions + rep)
            members.append(modulus_matrix(sample_cue_unitary(n, state)))
    label = f"cue(seed={seed}, reps={repetitions})"
    return MixedMatrixEnsemble(members=members, source_label=label)
