"""Tensor products of two oscillator realizations with central characters
lam and mu: the explicit unitary map onto (central character lam+mu) x
(trivial factor) when lam+mu != 0, the rotation that factorizes the
zero-sum case, and lowest-weight machinery in the product basis.

Discretization notes
--------------------
The transform substitutes the linear change of variables

    U' = (lam u + v) / (lam + mu),   V' = (mu u - v) / (lam + mu)

into the input pair and expands against an output product basis with
parameters |lam+mu| and nu.  Every matrix entry is an integral of
(polynomial) x exp(-quadratic form); the quadrature grid is a Gauss-Hermite
tensor grid rotated to the principal axes of that form, which makes the
entries exact up to roundoff as long as the node count satisfies
2m-1 >= 4(N-1).  For lam, mu > 0 the choice nu = lam mu (lam+mu) completes
the square exactly, so ground states map to ground states with coefficient
one; for mixed signs the transform genuinely mixes basis levels without
bound and the |.| of the same expression is used for the auxiliary
parameter.  Coefficients above the safe block (total level > N-4) then
carry inherent truncation tails, so residual and Gram statements are made
on the safe block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.hermite import hermgauss, hermval

from .core import Check, GeneratorRep, VerificationReport, exact_check, residual_check
from .oscillator import (
    HermiteBasisSpec,
    derivative_matrix,
    hamiltonian,
    hermite_functions,
    lowering_matrix,
    position_matrix,
    rep_matrices,
)

GRAM_FLAG_TOL = 1e-6


@dataclass(frozen=True)
class IntertwinerSpec:
    """Central characters, truncation, node count and the auxiliary output
    basis parameter (defaults to |lam mu (lam+mu)|)."""

    lam: float
    mu: float
    truncation: int = 12
    quad_nodes: int = 64
    output_aux_parameter: float | None = None

    def __post_init__(self):
        if self.lam == 0 or self.mu == 0:
            raise ValueError("central characters must be nonzero")
        if self.truncation < 4:
            raise ValueError("truncation must be >= 4")
        if self.quad_nodes < 2 * self.truncation:
            raise ValueError("need at least 2N quadrature nodes")
        if self.output_aux_parameter is None and self.lam + self.mu != 0:
            object.__setattr__(
                self,
                "output_aux_parameter",
                abs(self.lam * self.mu * (self.lam + self.mu)),
            )
        if self.output_aux_parameter is not None and self.output_aux_parameter <= 0:
            raise ValueError("the auxiliary basis parameter must be positive")

    @property
    def basis1(self) -> float:
        return abs(self.lam)

    @property
    def basis2(self) -> float:
        return abs(self.mu)

    @property
    def output_param(self) -> float:
        if self.lam + self.mu == 0:
            raise ValueError("zero-sum characters have no first-factor output basis")
        return abs(self.lam + self.mu)

    def input_specs(self) -> tuple[HermiteBasisSpec, HermiteBasisSpec]:
        n, m = self.truncation, self.quad_nodes
        return HermiteBasisSpec(self.basis1, n, m), HermiteBasisSpec(self.basis2, n, m)


@dataclass
class ProductWaveFunction:
    """Coefficient matrix over a product basis: entry (p, q) multiplies
    psi_p (first factor) x psi_q (second factor)."""

    spec1: HermiteBasisSpec
    spec2: HermiteBasisSpec
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        n1, n2 = self.spec1.truncation, self.spec2.truncation
        if self.coeffs.shape != (n1, n2):
            raise ValueError(f"coefficient shape {self.coeffs.shape}, expected ({n1},{n2})")

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def synthesize(self, u, v) -> np.ndarray:
        """Pointwise values on the grid u x v."""
        h1 = hermite_functions(self.spec1.lam, self.spec1.truncation, np.asarray(u, float))
        h2 = hermite_functions(self.spec2.lam, self.spec2.truncation, np.asarray(v, float))
        return np.einsum("pu,pq,qv->uv", h1, self.coeffs, h2)

    def to_json_dict(self) -> dict:
        return {
            "lam": self.spec1.lam,
            "mu": self.spec2.lam,
            "truncation": self.spec1.truncation,
            "coeffs_real": np.real(self.coeffs).tolist(),
            "coeffs_imag": np.imag(self.coeffs).tolist(),
        }


def basis_state(spec: IntertwinerSpec, p: int, q: int) -> ProductWaveFunction:
    s1, s2 = spec.input_specs()
    c = np.zeros((spec.truncation, spec.truncation), dtype=complex)
    c[p, q] = 1.0
    return ProductWaveFunction(s1, s2, c)


def _level_mask(n: int, max_level: int) -> np.ndarray:
    p = np.arange(n)
    return (p[:, None] + p[None, :] <= max_level).astype(float)


def _adapted_grid(form: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Tensor Gauss-Hermite grid for integrands poly * exp(-w^T form w).

    The grid lies along the principal axes of the (positive definite) form;
    returned weights integrate plain functions of (u, v).  Exact for
    polynomial factors of per-axis degree <= 2m-1.
    """
    d, rot = np.linalg.eigh(form)
    if np.any(d <= 0):
        raise ValueError("integrand quadratic form is not positive definite")
    x, w = hermgauss(m)
    tw = w * np.exp(x * x)
    xg, yg = np.meshgrid(x, x, indexing="ij")
    std = np.stack([xg.ravel(), yg.ravel()])
    nodes = rot @ (std / np.sqrt(d)[:, None])
    weights = np.outer(tw, tw).ravel() / np.sqrt(d.prod())
    return nodes[0], nodes[1], weights


def _substitution_coeffs(spec: IntertwinerSpec) -> tuple[np.ndarray, np.ndarray]:
    s = spec.lam + spec.mu
    return np.array([spec.lam / s, 1.0 / s]), np.array([spec.mu / s, -1.0 / s])


def _square_form(c: np.ndarray, scale: float) -> np.ndarray:
    """Matrix of scale * (c[0] u + c[1] v)^2 as a quadratic form in (u, v)."""
    return scale * np.outer(c, c)


@lru_cache(maxsize=32)
def _transform_data(spec: IntertwinerSpec):
    if spec.lam + spec.mu == 0:
        raise ValueError(
            "zero-sum central characters: use zero_case_operators, not the transform"
        )
    n, m = spec.truncation, spec.quad_nodes
    b1, b2 = spec.basis1, spec.basis2
    bout, nu = spec.output_param, spec.output_aux_parameter
    s = spec.lam + spec.mu
    cu, cv = _substitution_coeffs(spec)

    gram_form = _square_form(cu, 1.0 / b1) + _square_form(cv, 1.0 / b2)
    entry_form = gram_form / 2 + np.diag([1.0 / (2 * bout), 1.0 / (2 * nu)])
    pref = abs(s) ** -0.5

    # entries: <U(psi_p x psi_q), psi_a x psi_b>
    u, v, w = _adapted_grid(entry_form, m)
    up = cu[0] * u + cu[1] * v
    vp = cv[0] * u + cv[1] * v
    hp = hermite_functions(b1, n, up)
    hq = hermite_functions(b2, n, vp)
    ha = hermite_functions(bout, n, u)
    hb = hermite_functions(nu, n, v)
    inner = np.einsum("pk,qk,k->pqk", hp, hq, w) * pref
    umat = np.einsum("ak,bk,pqk->abpq", ha, hb, inner).reshape(n * n, n * n)

    # unitarity witness: quadrature Gram of the transformed functions
    ug, vg, wg = _adapted_grid(gram_form, m)
    hpg = hermite_functions(b1, n, cu[0] * ug + cu[1] * vg)
    hqg = hermite_functions(b2, n, cv[0] * ug + cv[1] * vg)
    idx = [(p, q) for p in range(n) for q in range(n) if p + q <= n - 4]
    vals = np.stack([pref * hpg[p] * hqg[q] for (p, q) in idx])
    gram = np.einsum("ak,bk,k->ab", vals, vals, wg)
    gram_dev = float(np.abs(gram - np.eye(len(idx))).max())
    return umat, gram, gram_dev


def transform_matrix(spec: IntertwinerSpec) -> np.ndarray:
    """The cached (N^2) x (N^2) coefficient matrix of the transform."""
    return _transform_data(spec)[0]


def unitarity_gram(spec: IntertwinerSpec) -> np.ndarray:
    """Quadrature Gram matrix of the transformed basis functions with total
    level <= N-4; deviates from the identity only by quadrature error."""
    return _transform_data(spec)[1]


def apply_U(spec: IntertwinerSpec, f: ProductWaveFunction) -> ProductWaveFunction:
    """Transform coefficients onto the output product basis.

    Raises when the characters sum to zero (wrong path) and when the
    quadrature unitarity witness deviates from the identity by more than
    1e-6 (underresolved rule).
    """
    umat, _, gram_dev = _transform_data(spec)
    if gram_dev > GRAM_FLAG_TOL:
        raise ValueError(
            f"quadrature under-resolution: Gram deviation {gram_dev:.2e} "
            f"at {spec.quad_nodes} nodes"
        )
    n = spec.truncation
    if f.coeffs.shape != (n, n):
        raise ValueError("input truncation does not match the transform")
    out = (umat @ f.coeffs.ravel()).reshape(n, n)
    s1 = HermiteBasisSpec(spec.output_param, n, spec.quad_nodes)
    s2 = HermiteBasisSpec(spec.output_aux_parameter, n, spec.quad_nodes)
    return ProductWaveFunction(s1, s2, out)


def product_action(spec: IntertwinerSpec, label: str, coeffs: np.ndarray) -> np.ndarray:
    """(X acting on factor 1) + (X acting on factor 2) on input coefficients."""
    n = spec.truncation
    m1 = rep_matrices(spec.lam, spec.basis1, n)[label]
    m2 = rep_matrices(spec.mu, spec.basis2, n)[label]
    return m1 @ coeffs + coeffs @ m2.T


def output_action(spec: IntertwinerSpec, label: str, coeffs: np.ndarray) -> np.ndarray:
    """X acting on the first output factor only (trivial second factor)."""
    n = spec.truncation
    mo = rep_matrices(spec.lam + spec.mu, spec.output_param, n)[label]
    return mo @ coeffs


def intertwining_residual(
    spec: IntertwinerSpec,
    label: str,
    testset,
    safe_level: int | None = None,
) -> float:
    """max over the test set of ||U X f - X' U f|| / ||f||, measured on the
    safe output block (total level <= N-4 unless overridden).

    Output components above the safe block carry truncation tails of the
    transform itself (for mixed-sign characters they are inherent, not a
    quadrature artifact), so they are excluded from the comparison.
    """
    n = spec.truncation
    mask = _level_mask(n, n - 4 if safe_level is None else safe_level)
    worst = 0.0
    for f in testset:
        lhs = apply_U(spec, _like(f, product_action(spec, label, f.coeffs)))
        rhs = output_action(spec, label, apply_U(spec, f).coeffs)
        worst = max(worst, float(np.linalg.norm((lhs.coeffs - rhs) * mask)) / f.norm())
    return worst


def _like(f: ProductWaveFunction, coeffs: np.ndarray) -> ProductWaveFunction:
    return ProductWaveFunction(f.spec1, f.spec2, coeffs)


# ---------------------------------------------------------------------------
# zero-sum central characters


def _component_slice_residual(big: np.ndarray, n: int, slot: int, keep: int) -> float:
    """Norm of the slot-`slot` component of an operator expected to act on
    the other slot only, read off the frozen-index slice."""
    t = big.reshape(n, n, n, n)
    if slot == 1:
        sl = t[:keep, 0, :keep, 0]
    else:
        sl = t[0, :keep, 0, :keep]
    return float(np.abs(sl).max())


def zero_case_operators(
    lam: float, truncation: int = 12, quad_nodes: int = 64
) -> tuple[GeneratorRep, GeneratorRep, VerificationReport]:
    """Factorize the (lam, -lam) product pair through the 45-degree rotation.

    The center acts as exactly zero on the product, so the pair factors
    through the abelian quotient; conjugating by the rotation
    (u, v) -> ((u+v)/sqrt2, (u-v)/sqrt2) sends the position generator to
    sqrt2 i u x (identity) and the derivative generator to
    (identity) x sqrt2 lam d/dv.  Returns the matrices of those two factor
    representations and the residual report.
    """
    if lam == 0:
        raise ValueError("the central character must be nonzero")
    n, m = truncation, quad_nodes
    if m < 2 * n:
        raise ValueError("need at least 2N quadrature nodes")
    beta = abs(lam)

    # rotation on the product basis; the substitution preserves u^2 + v^2,
    # so the matched grid integrates the entries exactly
    form = np.diag([1.0 / beta, 1.0 / beta])
    u, v, w = _adapted_grid(form, m)
    up, vp = (u + v) / np.sqrt(2.0), (u - v) / np.sqrt(2.0)
    h = hermite_functions(beta, n, u)
    hv = hermite_functions(beta, n, v)
    hp = hermite_functions(beta, n, up)
    hq = hermite_functions(beta, n, vp)
    inner = np.einsum("pk,qk,k->pqk", hp, hq, w)
    rot = np.einsum("ak,bk,pqk->abpq", h, hv, inner).reshape(n * n, n * n)

    ident = np.eye(n)
    qmat = 1j * position_matrix(beta, n)
    p_plus = lam * derivative_matrix(beta, n)
    q_prod = np.kron(qmat, ident) + np.kron(ident, qmat)
    p_prod = np.kron(p_plus, ident) + np.kron(ident, -p_plus)
    z_prod = np.kron(1j * lam * ident, ident) + np.kron(ident, -1j * lam * ident)

    sigma_q = np.sqrt(2.0) * 1j * position_matrix(beta, n)
    tau_p = np.sqrt(2.0) * lam * derivative_matrix(beta, n)
    zero = np.zeros((n, n), dtype=complex)
    sigma = GeneratorRep(("Q", "P", "Z"), (sigma_q, zero, zero), n)
    tau = GeneratorRep(("Q", "P", "Z"), (zero, tau_p, zero), n)

    report = VerificationReport(
        suite="zero-sum-factorization",
        config={"lam": lam, "truncation": n, "quad_nodes": m},
    )
    report.add(
        exact_check(
            "central-action-vanishes",
            "(i lam) + (i (-lam)) = 0 on every product state",
            bool(np.all(z_prod == 0)),
        )
    )

    mask = _level_mask(n, n - 3).ravel()
    proj = np.outer(mask, mask)

    rot_q = rot.T @ q_prod @ rot
    rot_p = rot.T @ p_prod @ rot
    rq_target = np.kron(sigma_q, ident)
    rp_target = np.kron(ident, tau_p)
    report.add(
        residual_check(
            "rotated-position-factorizes",
            "R^T (Q x 1 + 1 x Q) R = (sqrt2 i u) x 1",
            float(np.abs((rot_q - rq_target) * proj).max()),
            1e-8,
        )
    )
    report.add(
        residual_check(
            "rotated-derivative-factorizes",
            "R^T (P x 1 + 1 x P) R = 1 x (sqrt2 lam d/dv)",
            float(np.abs((rot_p - rp_target) * proj).max()),
            1e-8,
        )
    )
    keep = n - 3
    report.add(
        residual_check(
            "first-factor-kills-derivative",
            "sigma(P) = 0",
            _component_slice_residual(rot_p, n, 1, keep),
            1e-8,
        )
    )
    report.add(
        residual_check(
            "second-factor-kills-position",
            "tau(Q) = 0",
            _component_slice_residual(rot_q, n, 2, keep),
            1e-8,
        )
    )
    comm = rq_target @ rp_target - rp_target @ rq_target
    report.add(
        residual_check(
            "factor-images-commute",
            "[sigma(Q) x 1, 1 x tau(P)] = 0",
            float(np.abs(comm).max()),
            1e-10,
        )
    )
    return sigma, tau, report


# ---------------------------------------------------------------------------
# lowest-weight machinery


def lowest_weight(k: int, lam: float, mu: float, truncation: int) -> ProductWaveFunction:
    """The level-k state annihilated by the summed lowering operator.

    Coefficients come from expanding (xi1 - xi2)^k in the monomial model and
    mapping xi1^p xi2^q to sqrt(p! q!) psi_p psi_q: the entry at (p, k-p) is
    C(k, p) (-1)^(k-p) sqrt(p! (k-p)!).  Computed in exact integer form and
    converted to floating point at the end; not normalized.
    """
    if lam <= 0 or mu <= 0:
        raise ValueError("lowest-weight construction assumes positive characters")
    if not 0 <= k < truncation:
        raise ValueError(f"level k={k} must satisfy 0 <= k < truncation={truncation}")
    n = truncation
    c = np.zeros((n, n), dtype=complex)
    for p in range(k + 1):
        q = k - p
        c[p, q] = (-1) ** q * math.comb(k, p) * math.sqrt(math.factorial(p) * math.factorial(q))
    s1 = HermiteBasisSpec(lam, n)
    s2 = HermiteBasisSpec(mu, n)
    return ProductWaveFunction(s1, s2, c)


def annihilator_check(f: ProductWaveFunction) -> float:
    """||(a x 1 + 1 x a) f|| / ||f|| with the exact lowering matrices."""
    norm = f.norm()
    if norm == 0:
        raise ValueError("zero state")
    a = lowering_matrix(f.coeffs.shape[0])
    moved = a @ f.coeffs + f.coeffs @ a.T
    return float(np.linalg.norm(moved)) / norm


def ladder_up(f: ProductWaveFunction, steps: int) -> ProductWaveFunction:
    """Apply the summed raising operator `steps` times.

    Refuses when the top occupied index would cross the truncation.
    """
    occupied = np.argwhere(np.abs(f.coeffs) > 0)
    if occupied.size == 0:
        raise ValueError("zero state")
    n = f.coeffs.shape[0]
    if int(occupied.max()) + steps >= n:
        raise ValueError(
            f"truncation overflow: top occupied index {int(occupied.max())} "
            f"+ {steps} steps reaches {n}"
        )
    a = lowering_matrix(n)
    c = f.coeffs
    for _ in range(steps):
        c = a.T @ c + c @ a
    return ProductWaveFunction(f.spec1, f.spec2, c)


def closed_form_details(
    k: int, lam: float, mu: float, truncation: int, sample_points: int
) -> tuple[float, complex]:
    """Compare the synthesized lowest-weight state with its closed form.

    Closed form: exp(-u^2/2lam - v^2/2mu) H_k((sqrt(lam) v - sqrt(mu) u)
    / sqrt(2 lam mu)) up to one overall constant, which is fitted at the
    sample point where the closed form is largest.  Returns (max deviation
    relative to the sup of the state on the grid, fitted constant).
    """
    if sample_points < 2:
        raise ValueError("need at least a 2x2 sample grid")
    f = lowest_weight(k, lam, mu, truncation)
    u = np.linspace(-3 * np.sqrt(lam), 3 * np.sqrt(lam), sample_points)
    v = np.linspace(-3 * np.sqrt(mu), 3 * np.sqrt(mu), sample_points)
    vals = f.synthesize(u, v)
    uu, vv = np.meshgrid(u, v, indexing="ij")
    arg = (np.sqrt(lam) * vv - np.sqrt(mu) * uu) / np.sqrt(2 * lam * mu)
    coef = np.zeros(k + 1)
    coef[k] = 1.0
    closed = np.exp(-(uu**2) / (2 * lam) - vv**2 / (2 * mu)) * hermval(arg, coef)
    anchor = np.unravel_index(np.abs(closed).argmax(), closed.shape)
    scale = vals[anchor] / closed[anchor]
    denom = float(np.abs(vals).max())
    if denom == 0:
        raise ValueError("degenerate sample grid")
    deviation = float(np.abs(vals - scale * closed).max()) / denom
    return deviation, complex(scale)


def closed_form_check(
    k: int, lam: float, mu: float, truncation: int, sample_points: int
) -> float:
    return closed_form_details(k, lam, mu, truncation, sample_points)[0]


def oscillator_sum_residual(f: ProductWaveFunction) -> tuple[float, complex]:
    """Eigen-residual of f under the sum of the two factor Hamiltonians.

    Returns (||H f - c f|| / ||f||, c) with c the Rayleigh quotient.  The
    lowest-weight states are eigenstates exactly when the two characters
    agree (the isotropic case); otherwise the residual is order one.
    """
    h1 = hamiltonian(f.spec1)
    h2 = hamiltonian(f.spec2)
    g = h1 @ f.coeffs + f.coeffs @ h2.T
    c = np.vdot(f.coeffs, g) / np.vdot(f.coeffs, f.coeffs)
    return float(np.linalg.norm(g - c * f.coeffs)) / f.norm(), complex(c)


# ---------------------------------------------------------------------------
# several coordinates per factor


def apply_U_coordinatewise(spec: IntertwinerSpec, coeffs: np.ndarray) -> np.ndarray:
    """Transform an n-coordinate product state coordinate by coordinate.

    `coeffs` has 2n axes of length N: the first n index the first factor's
    coordinates, the last n the second factor's.  The change of variables
    acts diagonally across coordinates, so the full transform is the
    one-coordinate matrix applied to each (axis i, axis n+i) pair.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    nax = coeffs.ndim
    if nax % 2 != 0:
        raise ValueError("coefficient tensor needs an even number of axes")
    ncoord = nax // 2
    n = spec.truncation
    if coeffs.shape != (n,) * nax:
        raise ValueError(f"every axis must have length {n}")
    u4 = transform_matrix(spec).reshape(n, n, n, n)
    out = coeffs
    for i in range(ncoord):
        out = np.tensordot(u4, out, axes=([2, 3], [i, ncoord + i]))
        out = np.moveaxis(out, [0, 1], [i, ncoord + i])
    return out
