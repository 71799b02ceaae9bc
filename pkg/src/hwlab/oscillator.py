"""Single-oscillator realization on a truncated Hermite basis.

Basis functions psi_n(u) = (2^n n!)^{-1/2} (pi b)^{-1/4} exp(-u^2/2b)
H_n(u/sqrt(b)) with basis parameter b > 0.  The generator action with
central character c is

    Q -> i u (multiplication),   P -> c d/du,   Z -> i c,

which is tridiagonal in this basis.  Everything spectral happens on Hermite
coefficients; grids exist only for quadrature input and output.  Truncated
operator identities hold exactly away from the top index: single products
are reliable for indices <= N-2 and double products for indices <= N-3
(the "safe block" convention used by all tests).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import GeneratorRep
from .numkernel import QuadratureRule, gauss_hermite


@dataclass(frozen=True)
class HermiteBasisSpec:
    """Basis parameter (the central character, assumed positive), truncation
    size N >= 4 and quadrature node count m >= 2N."""

    lam: float
    truncation: int
    quad_nodes: int | None = None

    def __post_init__(self):
        if self.lam <= 0:
            raise ValueError("the basis parameter must be positive")
        if self.truncation < 4:
            raise ValueError("truncation must be >= 4")
        if self.quad_nodes is None:
            object.__setattr__(self, "quad_nodes", 2 * self.truncation)
        if self.quad_nodes < 2 * self.truncation:
            raise ValueError("need at least 2N quadrature nodes")


@dataclass
class WaveFunction:
    """Coefficient vector over the truncated Hermite basis."""

    spec: HermiteBasisSpec
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.shape != (self.spec.truncation,):
            raise ValueError("coefficient length must equal the truncation")

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def to_json_dict(self) -> dict:
        return {
            "lam": self.spec.lam,
            "truncation": self.spec.truncation,
            "coeffs": [[c.real, c.imag] for c in self.coeffs],
        }


def hermite_functions(beta: float, count: int, u) -> np.ndarray:
    """Values of the first `count` orthonormal basis functions at points u.

    Stable three-term recurrence on the normalized functions; row n holds
    psi_n evaluated on u.
    """
    u = np.asarray(u, dtype=float)
    out = np.zeros((count,) + u.shape)
    x = u / np.sqrt(beta)
    out[0] = (np.pi * beta) ** -0.25 * np.exp(-x * x / 2.0)
    if count > 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for n in range(1, count - 1):
        out[n + 1] = np.sqrt(2.0 / (n + 1)) * x * out[n] - np.sqrt(n / (n + 1.0)) * out[n - 1]
    return out


def hermite_eval(spec: HermiteBasisSpec, n: int, u):
    """psi_n at the points u, by recurrence (never factorial formulas)."""
    if not 0 <= n < spec.truncation:
        raise ValueError(f"index {n} outside truncation {spec.truncation}")
    vals = hermite_functions(spec.lam, n + 1, np.asarray(u, dtype=float))
    return vals[n]


def quadrature(spec: HermiteBasisSpec) -> QuadratureRule:
    """Rule exact for products of two basis functions (weight exp(-u^2/b))."""
    return gauss_hermite(spec.lam, spec.quad_nodes)


def analyze(spec: HermiteBasisSpec, values) -> np.ndarray:
    """Hermite coefficients of a function sampled on the quadrature nodes."""
    rule = quadrature(spec)
    basis = hermite_functions(spec.lam, spec.truncation, rule.nodes)
    return basis @ (rule.total_weights * np.asarray(values))


def synthesize(spec: HermiteBasisSpec, coeffs, u) -> np.ndarray:
    """Pointwise values of sum_n c_n psi_n at the points u."""
    basis = hermite_functions(spec.lam, spec.truncation, np.asarray(u, dtype=float))
    return np.tensordot(np.asarray(coeffs), basis, axes=(0, 0))


# ---------------------------------------------------------------------------
# truncated operator matrices


def lowering_matrix(n: int) -> np.ndarray:
    """sqrt(k+1) on the superdiagonal; independent of the basis parameter."""
    return np.diag(np.sqrt(np.arange(1.0, n)), 1)


def position_matrix(beta: float, n: int) -> np.ndarray:
    """Multiplication by u in a parameter-beta basis: sqrt(beta/2)(A + A^T)."""
    a = lowering_matrix(n)
    return np.sqrt(beta / 2.0) * (a + a.T)


def derivative_matrix(beta: float, n: int) -> np.ndarray:
    """d/du in a parameter-beta basis: (A - A^T)/sqrt(2 beta)."""
    a = lowering_matrix(n)
    return (a - a.T) / np.sqrt(2.0 * beta)


def rep_matrices(central: float, beta: float, n: int) -> dict[str, np.ndarray]:
    """Truncated Q, P, Z for central character `central` in a beta-basis.

    The basis parameter may differ from the central character (needed when
    the character is negative); with beta == central > 0 this reduces to the
    canonical tridiagonal matrices.
    """
    if central == 0:
        raise ValueError("the central character must be nonzero")
    return {
        "Q": 1j * position_matrix(beta, n),
        "P": central * derivative_matrix(beta, n),
        "Z": 1j * central * np.eye(n),
    }


def op_matrices(spec: HermiteBasisSpec) -> GeneratorRep:
    """NxN truncations of Q, P, Z at central character = basis parameter.

    Entries are exactly i sqrt(lam/2) sqrt(n+1) on both off-diagonals of Q,
    +-sqrt(lam/2) sqrt(n+1) on the off-diagonals of P (upper +, lower -),
    and Z = i lam I.
    """
    mats = rep_matrices(spec.lam, spec.lam, spec.truncation)
    return GeneratorRep(("Q", "P", "Z"), (mats["Q"], mats["P"], mats["Z"]), spec.truncation)


def ladder_matrices(spec: HermiteBasisSpec) -> tuple[np.ndarray, np.ndarray]:
    """(lowering, raising): lowering kills the ground state, raising is its
    transpose; both are assembled identically by (-iQ +- P)/sqrt(2 lam)."""
    a = lowering_matrix(spec.truncation)
    return a, a.T.copy()


def hamiltonian(spec: HermiteBasisSpec) -> np.ndarray:
    """(P^2 + Q^2)/2 from the truncated matrices.

    Diagonal with entries -lam (n + 1/2) for n <= N-2; the top entry is
    -lam (N-1)/2, a truncation artifact of the double product.
    """
    ops = op_matrices(spec)
    p, q = ops["P"], ops["Q"]
    return 0.5 * (p @ p + q @ q)


def dpi_action(spec: HermiteBasisSpec, label: str, values) -> np.ndarray:
    """Generator action on a function sampled on the quadrature nodes.

    Q is pointwise multiplication by iu; P is spectral differentiation
    (apply the truncated P matrix to the Hermite coefficients); Z is the
    scalar i lam.  The input is assumed to lie in the truncated basis span.
    """
    values = np.asarray(values, dtype=complex)
    rule = quadrature(spec)
    if values.shape != rule.nodes.shape:
        raise ValueError("values must be sampled on the quadrature nodes")
    if label == "Z":
        return 1j * spec.lam * values
    if label == "Q":
        return 1j * rule.nodes * values
    if label == "P":
        coeffs = analyze(spec, values)
        moved = op_matrices(spec)["P"] @ coeffs
        return synthesize(spec, moved, rule.nodes)
    raise ValueError(f"unknown generator label {label!r}")
