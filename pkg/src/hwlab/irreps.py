"""Concrete finite-dimensional modules of sp_{2n+2}: the defining module,
its symmetric powers, and the primitive (traceless) part of the second
exterior power, together with restriction to the embedded Heisenberg-Weyl
generators.

Each family is built from a linear lift M -> rho(M) applied to a fixed
generating set (Cartan basis, all root vectors, and the embedded x_k, y_k,
z), so bracket preservation can be tested directly against commutators of
the defining matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Callable

import numpy as np

from .core import GeneratorRep
from .numkernel import nullspace
from .rootsys import build_phi
from .sympembed import cartan_basis, hw_embedding, root_vector, symplectic_form

FAMILIES = ("defining", "sym_k", "primitive_wedge2")


@dataclass
class Representation:
    """A module given by the images of a fixed generating set.

    `act` is the linear lift taking any matrix of the base algebra to its
    action on this module; the stored generator images are its values on
    the generating set.
    """

    dimension: int
    generator_images: GeneratorRep
    family_tag: str
    n: int
    k: int | None = None
    act: Callable[[np.ndarray], np.ndarray] = field(repr=False, default=None)

    def to_json_dict(self) -> dict:
        out = self.generator_images.to_json_dict()
        out["family_tag"] = self.family_tag
        out["n"] = self.n
        if self.k is not None:
            out["k"] = self.k
        return out


def generating_set(n: int) -> GeneratorRep:
    """Cartan basis, every root vector, and the embedded x_k, y_k, z.

    The Cartan elements and root vectors together form a linear basis of
    sp_{2n+2}; the Heisenberg-Weyl labels are linear combinations kept for
    restriction.
    """
    labels, mats = [], []
    for j, h in enumerate(cartan_basis(n), start=1):
        labels.append(f"H{j}")
        mats.append(h)
    for alpha in build_phi(n):
        labels.append(alpha.to_string())
        mats.append(root_vector(alpha, n))
    emb = hw_embedding(n)
    for label in emb.labels:
        labels.append(label)
        mats.append(emb[label])
    return GeneratorRep(tuple(labels), tuple(mats), 2 * (n + 1))


def _images(n: int, act: Callable[[np.ndarray], np.ndarray], dim: int) -> GeneratorRep:
    base = generating_set(n)
    mats = tuple(act(m) for m in base.matrices)
    return GeneratorRep(base.labels, mats, dim)


def defining_rep(n: int) -> Representation:
    """The 2n+2 dimensional module where each generator acts as itself."""
    if n < 1:
        raise ValueError("n must be >= 1")
    d = 2 * (n + 1)

    def act(m: np.ndarray) -> np.ndarray:
        return np.asarray(m, dtype=complex)

    return Representation(d, _images(n, act, d), "defining", n, act=act)


def sym_power_rep(base: Representation, k: int) -> Representation:
    """Degree-k symmetric power of the defining module.

    Basis: multisets of size k over the 2n+2 coordinates, ordered
    lexicographically; a generator acts as a derivation (Leibniz rule over
    the k slots) on plain monomials, with no multinomial normalization.
    """
    if base.family_tag != "defining":
        raise ValueError("symmetric powers are built from the defining module")
    if k < 1:
        raise ValueError("k must be >= 1 (the trivial module is excluded)")
    d = base.dimension
    basis = list(combinations_with_replacement(range(d), k))
    index = {ms: i for i, ms in enumerate(basis)}
    dim = len(basis)

    def act(m: np.ndarray) -> np.ndarray:
        m = np.asarray(m, dtype=complex)
        out = np.zeros((dim, dim), dtype=complex)
        for j, ms in enumerate(basis):
            seen = set()
            for pos, e in enumerate(ms):
                if e in seen:
                    continue
                seen.add(e)
                mult = ms.count(e)
                rest = ms[:pos] + ms[pos + 1 :]
                for a in range(d):
                    if m[a, e] == 0:
                        continue
                    target = tuple(sorted(rest + (a,)))
                    out[index[target], j] += mult * m[a, e]
        return out

    return Representation(dim, _images(base.n, act, dim), "sym_k", base.n, k=k, act=act)


def primitive_wedge2_rep(base: Representation) -> Representation:
    """Kernel of the symplectic contraction inside the second exterior power.

    The contraction sends e_i ^ e_j to J[i, j]; its kernel has dimension
    C(2n+2, 2) - 1 and is generator-invariant because every symplectic
    matrix annihilates the form.  The kernel basis comes from the
    deterministic nullspace routine, so the matrices are basis-dependent
    but module-theoretic verdicts downstream are not.
    """
    if base.family_tag != "defining":
        raise ValueError("the primitive wedge square is built from the defining module")
    n, d = base.n, base.dimension
    pairs = list(combinations(range(d), 2))
    index = {p: i for i, p in enumerate(pairs)}
    big = len(pairs)

    j = symplectic_form(n)
    contraction = np.array([[float(j[a, b]) for (a, b) in pairs]])
    kernel = nullspace(contraction, tol=1e-12)
    kmat = np.stack(kernel, axis=1)  # big x (big-1)

    def wedge_act(m: np.ndarray) -> np.ndarray:
        m = np.asarray(m, dtype=complex)
        out = np.zeros((big, big), dtype=complex)
        for col, (a, b) in enumerate(pairs):
            for c in range(d):
                if m[c, a] != 0 and c != b:
                    i, s = (index[(c, b)], 1.0) if c < b else (index[(b, c)], -1.0)
                    out[i, col] += s * m[c, a]
                if m[c, b] != 0 and c != a:
                    i, s = (index[(a, c)], 1.0) if a < c else (index[(c, a)], -1.0)
                    out[i, col] += s * m[c, b]
        return out

    def act(m: np.ndarray) -> np.ndarray:
        return kmat.conj().T @ wedge_act(m) @ kmat

    dim = big - 1
    rep = Representation(dim, _images(n, act, dim), "primitive_wedge2", n, act=act)
    rep.wedge_act = wedge_act
    rep.kernel_basis = kmat
    return rep


def restrict(rep: Representation, labels) -> GeneratorRep:
    """The sub-family of generator images for the given labels."""
    return rep.generator_images.subfamily(tuple(labels))


def hw_labels(n: int) -> tuple[str, ...]:
    return tuple(
        [f"x{k}" for k in range(1, n + 1)] + [f"y{k}" for k in range(1, n + 1)] + ["z"]
    )


def restricted_hw_images(rep: Representation) -> GeneratorRep:
    """Images of the embedded Heisenberg-Weyl generators on this module."""
    return restrict(rep, hw_labels(rep.n))


def bracket_defect(rep: Representation, n: int | None = None) -> float:
    """Largest |[rho(a), rho(b)] - rho([a, b])| entry over basis generator pairs."""
    n = rep.n if n is None else n
    base = generating_set(n)
    basis_labels = [l for l in base.labels if l not in hw_labels(n)]
    worst = 0.0
    for la in basis_labels:
        a = base[la]
        ia = rep.generator_images[la]
        for lb in basis_labels:
            b = base[lb]
            ib = rep.generator_images[lb]
            defect = ia @ ib - ib @ ia - rep.act(a @ b - b @ a)
            worst = max(worst, float(np.abs(defect).max()))
    return worst
