"""Integer matrix models: Heisenberg-Weyl matrices, the exponential map,
the symplectic algebra in block form with Cartan and root vectors, and the
embedded Heisenberg-Weyl subalgebra.

All generator matrices here carry exact integer (or half-integer, for the
exponential) entries, so every structure check in this module is
tolerance-free.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Check, GeneratorRep, VerificationReport, exact_check
from .rootsys import Root, build_phi


# ---------------------------------------------------------------------------
# Heisenberg-Weyl matrices of size n+2


@dataclass(frozen=True)
class HWElement:
    """Element with top-row block x, last-column block y and corner t."""

    x: tuple[float, ...]
    y: tuple[float, ...]
    t: float

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ValueError("x and y must have the same length")
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        object.__setattr__(self, "y", tuple(float(v) for v in self.y))
        object.__setattr__(self, "t", float(self.t))

    @property
    def n(self) -> int:
        return len(self.x)

    def __neg__(self) -> "HWElement":
        return HWElement(tuple(-v for v in self.x), tuple(-v for v in self.y), -self.t)


def hw_matrix(el: HWElement) -> np.ndarray:
    """The (n+2)x(n+2) strictly upper-triangular matrix of an element."""
    n = el.n
    m = np.zeros((n + 2, n + 2))
    m[0, 1 : n + 1] = el.x
    m[1 : n + 1, n + 1] = el.y
    m[0, n + 1] = el.t
    return m


def hw_exp(el: HWElement) -> np.ndarray:
    """Matrix exponential of hw_matrix(el), in closed form.

    The matrix is nilpotent of degree 3, so the series terminates after the
    quadratic term and the corner entry of the exponential is t + x.y/2.
    """
    n = el.n
    m = np.eye(n + 2)
    m[0, 1 : n + 1] = el.x
    m[1 : n + 1, n + 1] = el.y
    m[0, n + 1] = el.t + 0.5 * float(np.dot(el.x, el.y))
    return m


def hw_basis(n: int) -> GeneratorRep:
    """Basis P_1..P_n, Q_1..Q_n, Z as integer matrices of size n+2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    labels, mats = [], []
    for k in range(1, n + 1):
        e = [0.0] * n
        e[k - 1] = 1.0
        labels.append(f"P{k}")
        mats.append(hw_matrix(HWElement(tuple(e), (0.0,) * n, 0.0)).astype(np.int64))
    for k in range(1, n + 1):
        e = [0.0] * n
        e[k - 1] = 1.0
        labels.append(f"Q{k}")
        mats.append(hw_matrix(HWElement((0.0,) * n, tuple(e), 0.0)).astype(np.int64))
    labels.append("Z")
    mats.append(hw_matrix(HWElement((0.0,) * n, (0.0,) * n, 1.0)).astype(np.int64))
    return GeneratorRep(tuple(labels), tuple(mats), n + 2)


def verify_hw_brackets(xs, ys, z, tol: float = 0.0, labels=("P", "Q", "Z")) -> VerificationReport:
    """Check the full Heisenberg-Weyl bracket table on given matrices.

    [x_k, y_l] = delta_kl z, all other brackets of the family vanish.
    With tol == 0 the comparison is exact (integer matrices); otherwise the
    largest absolute entry of each residual is compared against tol.
    """
    lx, ly, lz = labels
    n = len(xs)
    report = VerificationReport(suite="hw-brackets")

    def bracket(a, b):
        return a @ b - b @ a

    def add(name, anchor, residual_matrix):
        if tol == 0.0:
            report.add(exact_check(name, anchor, bool(np.all(residual_matrix == 0))))
        else:
            r = float(np.abs(residual_matrix).max())
            report.add(Check(name, anchor, r, tol, r < tol))

    z = np.asarray(z)
    for k in range(n):
        for l in range(n):
            target = z if k == l else np.zeros_like(z)
            add(
                f"[{lx}{k+1},{ly}{l+1}]",
                f"[{lx}_k,{ly}_l] = delta_kl {lz}",
                bracket(xs[k], ys[l]) - target,
            )
            add(f"[{lx}{k+1},{lx}{l+1}]", f"[{lx}_k,{lx}_l] = 0", bracket(xs[k], xs[l]))
            add(f"[{ly}{k+1},{ly}{l+1}]", f"[{ly}_k,{ly}_l] = 0", bracket(ys[k], ys[l]))
        add(f"[{lz},{lx}{k+1}]", f"[{lz},{lx}_k] = 0", bracket(z, xs[k]))
        add(f"[{lz},{ly}{k+1}]", f"[{lz},{ly}_k] = 0", bracket(z, ys[k]))
    return report


def commutation_table(n: int) -> VerificationReport:
    """Verify the bracket table exactly on the size-(n+2) matrix model."""
    basis = hw_basis(n)
    xs = [basis[f"P{k}"] for k in range(1, n + 1)]
    ys = [basis[f"Q{k}"] for k in range(1, n + 1)]
    report = verify_hw_brackets(xs, ys, basis["Z"], tol=0.0)
    report.suite = "hw-commutation-table"
    report.config = {"n": n}
    return report


# ---------------------------------------------------------------------------
# sp_{2n+2} in block form


def symplectic_form(n: int) -> np.ndarray:
    """The block form J = [[0, I], [-I, 0]] of size 2n+2, integer entries."""
    d = n + 1
    j = np.zeros((2 * d, 2 * d), dtype=np.int64)
    j[:d, d:] = np.eye(d, dtype=np.int64)
    j[d:, :d] = -np.eye(d, dtype=np.int64)
    return j


def is_symplectic(x: np.ndarray, n: int) -> bool:
    """Exact integer check of X^T J + J X = 0."""
    j = symplectic_form(n)
    return bool(np.all(x.T @ j + j @ x == 0))


def _unit(d: int, k: int, l: int) -> np.ndarray:
    m = np.zeros((d, d), dtype=np.int64)
    m[k, l] = 1
    return m


def root_vector(alpha: Root, n: int) -> np.ndarray:
    """The integer root-vector matrix of size 2n+2 for a root of rank n+1.

    Block placements (indices 1-based in the description, 0-based in code):
      e_k - e_l : E_kl in the A block, -E_lk in the -A^T block;
      e_k + e_l : E_kl + E_lk in the upper-right block (lower-left for the
                  negative root);
      +-2 e_k   : E_kk in the upper-right (resp. lower-left) block.
    """
    d = n + 1
    if alpha.rank != d:
        raise ValueError(f"root rank {alpha.rank} does not match n+1={d}")
    if alpha not in build_phi(n):
        raise ValueError(f"{alpha} is not a root of the rank-{d} system")
    c = alpha.coeffs
    out = np.zeros((2 * d, 2 * d), dtype=np.int64)
    nz = [(i, v) for i, v in enumerate(c) if v != 0]
    if len(nz) == 1:
        (k, v) = nz[0]
        if v == 2:
            out[k, d + k] = 1
        else:
            out[d + k, k] = 1
        return out
    (k, vk), (l, vl) = nz
    if vk == -vl:
        # e_k - e_l type (up to swapping k and l)
        if vk == -1:
            k, l = l, k
        out[k, l] = 1
        out[d + l, d + k] = -1
    elif vk == 1:
        out[k, d + l] = 1
        out[l, d + k] = 1
    else:
        out[d + k, l] = 1
        out[d + l, k] = 1
    return out


def cartan_basis(n: int) -> list[np.ndarray]:
    """Diagonal Cartan basis H_j = diag-block(E_jj, -E_jj), j = 1..n+1."""
    d = n + 1
    out = []
    for j in range(d):
        h = np.zeros((2 * d, 2 * d), dtype=np.int64)
        h[j, j] = 1
        h[d + j, d + j] = -1
        out.append(h)
    return out


def cartan_eigen_check(n: int) -> VerificationReport:
    """[H, X_a] = a(H) X_a for every Cartan basis element and every root."""
    report = VerificationReport(suite="cartan-eigen", config={"n": n})
    phi = build_phi(n)
    hs = cartan_basis(n)
    for alpha in phi:
        x = root_vector(alpha, n)
        for j, h in enumerate(hs):
            expect = alpha.coeffs[j] * x
            ok = bool(np.all(h @ x - x @ h == expect))
            report.add(
                exact_check(
                    f"[H{j+1}, X_{alpha.to_string()}]",
                    "[H, X_a] = a(H) X_a",
                    ok,
                )
            )
    return report


def hw_embedding(n: int) -> GeneratorRep:
    """The embedded Heisenberg-Weyl generators inside sp_{2n+2}.

    x_k is the root vector for e1 - e_{k+1}, y_k the one for e1 + e_{k+1},
    and z = 2 X_{2 e1} = [x_1, y_1].  The bracket table is re-verified
    exactly at construction.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    d = n + 1
    labels, mats = [], []
    for k in range(1, n + 1):
        coeffs = [0] * d
        coeffs[0], coeffs[k] = 1, -1
        labels.append(f"x{k}")
        mats.append(root_vector(Root(tuple(coeffs)), n))
    for k in range(1, n + 1):
        coeffs = [0] * d
        coeffs[0], coeffs[k] = 1, 1
        labels.append(f"y{k}")
        mats.append(root_vector(Root(tuple(coeffs)), n))
    coeffs = [0] * d
    coeffs[0] = 2
    labels.append("z")
    mats.append(2 * root_vector(Root(tuple(coeffs)), n))

    xs, ys, z = mats[:n], mats[n : 2 * n], mats[2 * n]
    table = verify_hw_brackets(xs, ys, z, tol=0.0, labels=("x", "y", "z"))
    if not table.passed:
        raise AssertionError(f"embedding bracket table failed: {table.failures()}")
    return GeneratorRep(tuple(labels), tuple(mats), 2 * d)


def embedding_report(n: int) -> VerificationReport:
    """Bracket table, symplectic membership and span dimension of the embedding."""
    rep = hw_embedding(n)
    xs = [rep[f"x{k}"] for k in range(1, n + 1)]
    ys = [rep[f"y{k}"] for k in range(1, n + 1)]
    report = verify_hw_brackets(xs, ys, rep["z"], tol=0.0, labels=("x", "y", "z"))
    report.suite = "hw-embedding"
    report.config = {"n": n}
    for label, m in zip(rep.labels, rep.matrices):
        report.add(exact_check(f"symplectic({label})", "X^T J + J X = 0", is_symplectic(m, n)))
    stack = np.stack([m.ravel() for m in rep.matrices]).astype(float)
    rank = int(np.linalg.matrix_rank(stack))
    report.add(exact_check("span-dimension", "dim span{x_k, y_k, z} = 2n+1", rank == 2 * n + 1))
    return report
