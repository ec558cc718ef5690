"""Deterministic complex root finding for low-degree polynomials.

Roots come from companion-matrix eigenvalues (LAPACK), sorted by (real, imag)
so identical inputs give identical outputs.
"""

from __future__ import annotations

import numpy as np

from .errors import NonConvergentRoots


def poly_roots(coeffs) -> np.ndarray:
    """All complex roots of c[0] x^n + ... + c[n], leading coefficient nonzero."""
    c = np.asarray(coeffs, dtype=complex)
    if c.ndim != 1 or c.size < 2:
        raise ValueError("need a polynomial of degree >= 1")
    if c[0] == 0:
        raise NonConvergentRoots("leading coefficient vanishes")
    c = c / c[0]
    n = c.size - 1
    if n == 1:
        return np.array([-c[1]])
    if n == 2:
        b, a0 = c[1], c[2]
        disc = np.sqrt(complex(b * b - 4 * a0))
        r = np.array([(-b + disc) / 2, (-b - disc) / 2])
        return _sorted(r)
    comp = np.zeros((n, n), dtype=complex)
    comp[1:, :-1] = np.eye(n - 1)
    comp[0, :] = -c[1:]
    roots = np.linalg.eigvals(comp)
    if not np.all(np.isfinite(roots)):
        raise NonConvergentRoots("eigenvalue solver returned non-finite roots")
    return _sorted(roots)


def _sorted(roots: np.ndarray) -> np.ndarray:
    order = np.lexsort((roots.imag, roots.real))
    return roots[order]
