"""Indecomposability of a finite-dimensional module over a matrix Lie
algebra, decided through its commutant algebra.

The module splits iff its commutant contains an idempotent other than 0 and
the identity, i.e. iff the commutant is not local.  Locality is decided by
the Dickson criterion (radical of the trace form of the left-regular
representation), with a spectral sampling oracle as an independent
cross-check.  Decisions that fall within a factor of 10 of a numerical
threshold raise InconclusiveError instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import GeneratorRep, InconclusiveError
from .numkernel import eigenvalues, nullspace, singular_values

COMMUTANT_TOL = 1e-9
IDEMPOTENT_TOL = 1e-8
CLUSTER_RADIUS = 1e-6


@dataclass
class CommutantAlgebra:
    """Frobenius-orthonormal basis of {C : C M_i = M_i C for all generators}."""

    dimension_of_module: int
    basis: list[np.ndarray]
    radical_dimension: int

    def __post_init__(self):
        if not 0 <= self.radical_dimension < len(self.basis):
            raise ValueError("radical dimension out of range")
        ident = np.eye(self.dimension_of_module, dtype=complex)
        proj = sum(np.vdot(b, ident) * b for b in self.basis)
        if np.linalg.norm(proj - ident) > 1e-10 * np.sqrt(self.dimension_of_module):
            raise ValueError("identity is not in the span of the commutant basis")

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def element(self, coeffs) -> np.ndarray:
        return sum(c * b for c, b in zip(coeffs, self.basis))


@dataclass
class Verdict:
    """Indecomposability verdict with its certificate.

    For an indecomposable module the certificate is the statement that the
    semisimple quotient of the commutant is one-dimensional; for a
    decomposable one it is a validated nontrivial idempotent commuting with
    every generator.
    """

    indecomposable: bool
    commutant_dimension: int
    radical_dimension: int
    idempotent: np.ndarray | None
    justification: str

    def to_json_dict(self) -> dict:
        out = {
            "indecomposable": self.indecomposable,
            "commutant_dimension": self.commutant_dimension,
            "radical_dimension": self.radical_dimension,
            "justification": self.justification,
        }
        if self.idempotent is not None:
            out["idempotent"] = {
                "real": np.real(self.idempotent).tolist(),
                "imag": np.imag(self.idempotent).tolist(),
            }
        return out


def _band_check(sv: np.ndarray, tol: float, what: str) -> None:
    smax = sv[0] if sv.size else 0.0
    if smax == 0.0:
        return
    in_band = (sv > tol * smax / 10) & (sv < tol * smax * 10)
    if in_band.any():
        raise InconclusiveError(
            f"{what}: {int(in_band.sum())} singular value(s) within 10x of the "
            f"threshold {tol:g}; refusing to resolve the rank"
        )


def commutant(gens: GeneratorRep, tol: float = COMMUTANT_TOL) -> CommutantAlgebra:
    """Solve the stacked linear system C M_i - M_i C = 0 over all generators.

    Row-major vectorization turns each constraint into
    (I (x) M^T - M (x) I) vec(C) = 0; the commutant basis is the orthonormal
    nullspace of the stack.  With no generators the commutant is the full
    matrix algebra.
    """
    d = gens.dimension
    if len(gens) == 0:
        basis = []
        for k in range(d * d):
            m = np.zeros(d * d, dtype=complex)
            m[k] = 1.0
            basis.append(m.reshape(d, d))
        rad = _radical_of_basis(basis)
        return CommutantAlgebra(d, basis, rad)

    ident = np.eye(d)
    blocks = []
    for m in gens.matrices:
        m = np.asarray(m, dtype=complex)
        if m.shape != (d, d):
            raise ValueError(f"generator shape {m.shape} does not match dimension {d}")
        scale = max(np.linalg.norm(m), 1.0)
        blocks.append((np.kron(ident, m.T) - np.kron(m, ident)) / scale)
    stacked = np.vstack(blocks)
    _band_check(singular_values(stacked), tol, "commutant solve")
    vecs = nullspace(stacked, tol)
    basis = [v.reshape(d, d) for v in vecs]
    rad = _radical_of_basis(basis)
    return CommutantAlgebra(d, basis, rad)


def _radical_of_basis(basis: list[np.ndarray], closure_tol: float = 1e-8) -> int:
    """Dickson radical dimension from the left-regular representation.

    The basis must be Frobenius-orthonormal and multiplicatively closed
    (checked by projecting every product back onto the span); the radical is
    the kernel of the Gram matrix G[i,j] = trace(reg(B_i) reg(B_j)).
    """
    m = len(basis)
    struct = np.zeros((m, m, m), dtype=complex)
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            prod = bi @ bj
            coeffs = np.array([np.vdot(bk, prod) for bk in basis])
            resid = np.linalg.norm(prod - sum(c * bk for c, bk in zip(coeffs, basis)))
            if resid > closure_tol:
                raise ValueError(
                    f"commutant basis is not multiplicatively closed "
                    f"(residual {resid:.2e}); the commutant solve failed"
                )
            struct[i, j, :] = coeffs
    # reg(B_i)[k, j] = coefficient of B_k in B_i B_j
    reg = [struct[i].T for i in range(m)]
    gram = np.array([[np.trace(ri @ rj) for rj in reg] for ri in reg])
    _band_check(singular_values(gram), COMMUTANT_TOL, "trace-form radical")
    return len(nullspace(gram, COMMUTANT_TOL))


def radical_of(alg: CommutantAlgebra) -> int:
    """Dimension of the Jacobson radical of the commutant algebra."""
    return _radical_of_basis(alg.basis)


def _cluster(values: np.ndarray, radius: float) -> list[np.ndarray]:
    """Single-linkage clusters of complex values at the given radius."""
    order = np.lexsort((values.imag, values.real))
    vals = values[order]
    parent = list(range(len(vals)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if abs(vals[i] - vals[j]) <= radius:
                parent[find(i)] = find(j)
    groups: dict[int, list[complex]] = {}
    for i, v in enumerate(vals):
        groups.setdefault(find(i), []).append(v)
    return [np.array(g) for g in groups.values()]


def _refine_idempotent(e: np.ndarray, iters: int = 60) -> np.ndarray | None:
    """Newton-type iteration e <- 3e^2 - 2e^3 toward a spectral projector.

    Stays inside the algebra generated by the seed (it is a polynomial in
    it); diverging iterates signal a bad seed and return None.
    """
    for _ in range(iters):
        defect = np.linalg.norm(e @ e - e)
        if not np.isfinite(defect) or np.linalg.norm(e) > 1e8:
            return None
        if defect < 1e-13:
            return e
        e = 3 * (e @ e) - 2 * (e @ e @ e)
    return e if np.linalg.norm(e @ e - e) < 1e-10 else None


def extract_idempotent(a: np.ndarray, merge_radius: float | None = None) -> np.ndarray | None:
    """Nontrivial idempotent from the unital algebra generated by `a`, if any.

    Eigenvalues are clustered, the indicator of one cluster is interpolated
    (Lagrange on cluster means) and the result refined to an idempotent.
    Eigenvalues of matrices with nontrivial Jordan blocks are polluted at the
    eps^(1/m) scale, so the default merge radius is taken well above that;
    a wrong merge can only make this routine miss, never produce an invalid
    output, because the result is validated before being returned.
    """
    lam = eigenvalues(a)
    scale = max(1.0, float(np.abs(lam).max()))
    radius = merge_radius if merge_radius is not None else max(CLUSTER_RADIUS, 1e-3 * scale)
    clusters = _cluster(lam, radius)
    if len(clusters) < 2:
        return None
    d = a.shape[0]
    ident = np.eye(d, dtype=complex)
    means = [c.mean() for c in clusters]
    for target in range(len(clusters)):
        e = ident.copy()
        ok = True
        for other, mu in enumerate(means):
            if other == target:
                continue
            denom = means[target] - mu
            if abs(denom) < 10 * radius:
                ok = False
                break
            e = e @ (a - mu * ident) / denom
        if not ok:
            continue
        e = _refine_idempotent(e)
        if e is None:
            continue
        if np.linalg.norm(e) < 1e-6 or np.linalg.norm(e - ident) < 1e-6:
            continue
        return e
    return None


def _validated_idempotent(e: np.ndarray | None, gens: GeneratorRep) -> np.ndarray | None:
    if e is None:
        return None
    d = e.shape[0]
    ident = np.eye(d)
    if np.linalg.norm(e @ e - e) >= IDEMPOTENT_TOL:
        return None
    if np.linalg.norm(e) < 1e-6 or np.linalg.norm(e - ident) < 1e-6:
        return None
    for m in gens.matrices:
        m = np.asarray(m, dtype=complex)
        if np.linalg.norm(e @ m - m @ e) >= IDEMPOTENT_TOL * (1 + np.linalg.norm(m)):
            return None
    return e


def decide(gens: GeneratorRep) -> Verdict:
    """Indecomposability verdict for the module defined by the generators.

    The module is indecomposable iff the commutant modulo its radical is
    one-dimensional.  A decomposable module gets a certificate idempotent
    built as a spectral projection of a commutant element with separated
    eigenvalue clusters.
    """
    alg = commutant(gens)
    m, rad = alg.dimension, alg.radical_dimension
    if m - rad == 1:
        return Verdict(
            True,
            m,
            rad,
            None,
            f"semisimple quotient of the commutant is one-dimensional "
            f"({m} = 1 + {rad} radical)",
        )

    candidates = list(alg.basis)
    rng = np.random.default_rng(42)
    for _ in range(25):
        coeffs = rng.standard_normal(m)
        candidates.append(alg.element(coeffs))
    for a in candidates:
        e = _validated_idempotent(extract_idempotent(a), gens)
        if e is not None:
            return Verdict(
                False,
                m,
                rad,
                e,
                f"nontrivial idempotent of rank {int(round(np.trace(e).real))} "
                f"splits the module",
            )
    raise InconclusiveError(
        f"commutant is non-local (dimension {m}, radical {rad}) but no "
        f"validated idempotent was extracted"
    )


def _one_point_spectrum(a: np.ndarray, radius: float = CLUSTER_RADIUS) -> bool:
    """Whether all eigenvalues of `a` sit within `radius` of a single point.

    Eigenvalue spread of size-m Jordan structure is eps^(1/m), far above
    `radius`, so a wide spectrum is re-examined: if no validated nontrivial
    spectral projector can be built from `a`, its spectrum is a single
    (possibly Jordan-polluted) cluster.
    """
    lam = eigenvalues(a)
    center = lam.mean()
    if float(np.abs(lam - center).max()) <= radius:
        return True
    e = extract_idempotent(a)
    if e is None:
        return True
    return np.linalg.norm(e @ e - e) >= IDEMPOTENT_TOL


def cross_check_spectrum(alg: CommutantAlgebra, samples: int, seed: int) -> bool:
    """Sampling oracle for locality of the commutant algebra.

    A finite-dimensional algebra over the complex numbers is local iff every
    element has one-point spectrum (spectral projectors of any element stay
    inside the algebra).  Samples are seeded random real combinations of the
    basis; the verdict must agree with `decide` on every module.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        a = alg.element(rng.standard_normal(alg.dimension))
        if not _one_point_spectrum(a):
            return False
    return True
