"""Dense complex linear algebra and Gaussian quadrature substrate.

Matrices are plain 2-d numpy arrays (row-major, complex or integer dtype);
every routine here is a pure function of its inputs and deterministic for
fixed inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.hermite import hermgauss


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got ndim={m.ndim}")
    return m


def matmul(a, b) -> np.ndarray:
    """Matrix product, rejecting shape mismatches explicitly."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def commutator(a, b) -> np.ndarray:
    """ab - ba for square matrices of equal size."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ValueError(f"commutator needs equal square shapes, got {a.shape}, {b.shape}")
    return a @ b - b @ a


def singular_values(a) -> np.ndarray:
    return np.linalg.svd(as_matrix(a), compute_uv=False)


def nullspace(a, tol: float) -> list[np.ndarray]:
    """Orthonormal basis of the numerical kernel {v : ||av|| <= tol ||a|| ||v||}.

    Singular values are thresholded at tol relative to the largest one.  When
    singular values cluster near the threshold (within a factor of 10), the
    rank cut is moved to the largest consecutive gap inside that band, which
    keeps the result stable under small perturbations.

    Returns a list of unit column vectors; empty if `a` is injective.
    """
    a = as_matrix(a)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if a.size == 0:
        return [np.zeros(a.shape[1], dtype=complex)] * 0
    _, s, vh = np.linalg.svd(a)
    ncols = a.shape[1]
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        rank = 0
    else:
        cut = tol * smax
        rank = int((s > cut).sum())
        in_band = (s >= cut / 10) & (s <= cut * 10)
        if in_band.any():
            idx = np.nonzero(in_band)[0]
            best_rank, best_gap = rank, 0.0
            for r in range(max(idx[0], 1), min(idx[-1] + 1, len(s) - 1) + 1):
                gap = s[r - 1] / s[r] if s[r] > 0 else np.inf
                if gap > best_gap:
                    best_gap, best_rank = gap, r
            rank = best_rank
    basis = vh[rank:].conj()
    return [basis[i].astype(complex) for i in range(ncols - rank)]


def eigenvalues(a) -> np.ndarray:
    """Eigenvalue multiset of a square matrix, in no particular order.

    Computed through the Hessenberg/QR (Schur-form) route of LAPACK rather
    than characteristic-polynomial roots; accurate to ~1e-10 relative for
    well-conditioned spectra at the dimensions used here.  Eigenvalues of
    non-normal matrices with Jordan structure are only accurate to
    eps^(1/m) for block size m, which callers must account for.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"eigenvalues need a square matrix, got {a.shape}")
    return np.linalg.eigvals(a.astype(complex))


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Hermite rule for the weight exp(-u^2/parameter).

    `weights` absorb the weight function: sum(w_i * p(u_i)) equals
    the integral of p(u) exp(-u^2/parameter) exactly for polynomials p of
    degree <= 2*len(nodes) - 1.
    """

    nodes: np.ndarray
    weights: np.ndarray
    parameter: float

    def __post_init__(self):
        if np.any(self.weights <= 0):
            raise ValueError("quadrature weights must be strictly positive")
        if np.any(np.diff(self.nodes) <= 0):
            raise ValueError("quadrature nodes must be strictly increasing")

    @property
    def total_weights(self) -> np.ndarray:
        """Weights for plain integrands: sum(tw_i * f(u_i)) ~ integral of f."""
        return self.weights * np.exp(self.nodes**2 / self.parameter)

    def integrate(self, values) -> complex:
        """Integrate a function given by its values at the nodes."""
        return np.asarray(values) @ self.total_weights


def gauss_hermite(parameter: float, node_count: int) -> QuadratureRule:
    """Gauss-Hermite rule against exp(-u^2/parameter), parameter > 0.

    Built by scaling the standard-weight rule with u -> sqrt(parameter) u
    and weights multiplied by sqrt(parameter).
    """
    if parameter <= 0:
        raise ValueError("quadrature parameter must be positive")
    if node_count < 1:
        raise ValueError("node_count must be >= 1")
    x, w = hermgauss(node_count)
    root = np.sqrt(parameter)
    return QuadratureRule(root * x, root * w, float(parameter))
