"""Independent numerical oracles used by the test suite.

These deliberately avoid the library's own solver paths: the Gram
oracle is a plain triple loop, and eigenvalue cross-checks go through
Faddeev-LeVerrier characteristic-polynomial coefficients with roots
found by mpmath's polynomial solver (Durand-Kerner), not by any QR
iteration.
"""

from __future__ import annotations

import mpmath
import numpy as np


def gram_triple_loop(a: np.ndarray) -> np.ndarray:
    """X[i, j] = sum_k a[i, k] * a[j, k], written as explicit loops."""
    n, m = a.shape
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for k in range(m):
                acc += a[i, k] * a[j, k]
            out[i, j] = acc
    return out


def char_poly_coefficients(a: np.ndarray) -> np.ndarray:
    """Coefficients of det(lambda*I - A), highest power first (Faddeev-LeVerrier)."""
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[0] = 1.0
    m = np.zeros_like(a)
    identity = np.eye(n, dtype=np.complex128)
    for k in range(1, n + 1):
        m = a @ m + coeffs[k - 1] * identity
        coeffs[k] = -np.trace(a @ m) / k
    return coeffs


def char_poly_roots(a: np.ndarray) -> list[complex]:
    """Eigenvalues of A recovered as characteristic-polynomial roots."""
    coeffs = [complex(c) for c in char_poly_coefficients(a)]
    return [complex(r) for r in mpmath.polyroots(coeffs, maxsteps=200, extraprec=80)]


def max_match_distance(computed: np.ndarray, reference: list[complex]) -> float:
    """Greedy nearest matching between two eigenvalue multisets."""
    remaining = list(reference)
    worst = 0.0
    for value in np.asarray(computed, dtype=np.complex128):
        distances = [abs(value - r) for r in remaining]
        best = int(np.argmin(distances))
        worst = max(worst, distances[best])
        remaining.pop(best)
    return worst
