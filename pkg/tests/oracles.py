"""Independent brute-force references used by the tests."""

from itertools import product
from math import factorial, sqrt

import numpy as np


def brute_force_coherent(n, zeta):
    """Expand (sum_m zeta_m a_m^dagger)^N |vac> / sqrt(N!) term by term.

    Returns an (N+1, N+1) array indexed by (n1, n0); n-1 = N - n1 - n0.
    Each ordered word of creation operators adds its product of amplitudes
    to the Fock state it reaches, normalised by sqrt(n1! n0! n-1!).
    """
    acc = np.zeros((n + 1, n + 1), dtype=complex)
    if n > 8:
        raise ValueError("brute force is for small N only")
    for word in product(range(3), repeat=n):
        counts = [word.count(m) for m in range(3)]
        acc[counts[0], counts[1]] += np.prod([zeta[m] for m in word]) if word else 1.0
    out = np.zeros_like(acc)
    for n1 in range(n + 1):
        for n0 in range(n + 1 - n1):
            nm = n - n1 - n0
            out[n1, n0] = acc[n1, n0] * sqrt(factorial(n1) * factorial(n0) * factorial(nm)) / sqrt(factorial(n))
    return out


def dense_second_quantize(n, kernel):
    """Dense sum_mn K_mn a_m^dagger a_n built from explicit ladder matrices on a per-mode cutoff."""
    dim = n + 1
    a = np.diag(np.sqrt(np.arange(1, dim)), 1)
    eye = np.eye(dim)
    modes = [np.kron(np.kron(a, eye), eye), np.kron(np.kron(eye, a), eye), np.kron(np.kron(eye, eye), a)]
    return sum(kernel[m, k] * modes[m].conj().T @ modes[k] for m in range(3) for k in range(3))


def embed_index(n, n1, n0):
    nm = n - n1 - n0
    dim = n + 1
    return (n1 * dim + n0) * dim + nm
