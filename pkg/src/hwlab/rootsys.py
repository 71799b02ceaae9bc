"""The type-C root system over the epsilon basis, closed subsets and closures.

Roots of sp_{2n+2} live in rank n+1: the vectors +-(e_k - e_l), +-(e_k + e_l)
for k < l and +-2 e_k.  Everything here is exact integer arithmetic; subsets
are kept as sorted tuples so results are deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_ROOT_TERM = re.compile(r"([+-]?)(2?)e(\d+)")


def _valid_coeffs(coeffs: tuple[int, ...]) -> bool:
    nonzero = [c for c in coeffs if c != 0]
    if len(nonzero) == 1:
        return abs(nonzero[0]) == 2
    if len(nonzero) == 2:
        return abs(nonzero[0]) == 1 and abs(nonzero[1]) == 1
    return False


@dataclass(frozen=True, order=True)
class Root:
    """One root, stored as its integer coefficient vector over e_1..e_rank."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not _valid_coeffs(coeffs):
            raise ValueError(f"{coeffs} is not a type-C root vector")

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coeffs))

    def __add__(self, other: "Root") -> tuple[int, ...]:
        # sums may leave the root system, so return the raw vector
        return tuple(a + b for a, b in zip(self.coeffs, other.coeffs))

    def to_string(self) -> str:
        """Signed coefficient string, e.g. "+e1-e3", "2e2", "-2e1"."""
        parts = []
        for k, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            if abs(c) == 2:
                return f"2e{k}" if c > 0 else f"-2e{k}"
            parts.append(f"{'+' if c > 0 else '-'}e{k}")
        return "".join(parts)

    @classmethod
    def from_string(cls, text: str, rank: int) -> "Root":
        coeffs = [0] * rank
        pos = 0
        for m in _ROOT_TERM.finditer(text):
            if m.start() != pos:
                raise ValueError(f"cannot parse root string {text!r}")
            pos = m.end()
            sign = -1 if m.group(1) == "-" else 1
            mag = 2 if m.group(2) else 1
            k = int(m.group(3))
            if not 1 <= k <= rank:
                raise ValueError(f"index e{k} outside rank {rank}")
            coeffs[k - 1] = sign * mag
        if pos != len(text):
            raise ValueError(f"cannot parse root string {text!r}")
        return cls(tuple(coeffs))

    def __repr__(self) -> str:
        return f"Root({self.to_string()!r})"


def root(*coeffs: int) -> Root:
    return Root(tuple(coeffs))


class RootSubset:
    """A finite set of roots of common rank, stored sorted and deduplicated."""

    __slots__ = ("ambient_rank", "members", "_vecs")

    def __init__(self, ambient_rank: int, members=()):
        members = tuple(sorted(set(members)))
        for r in members:
            if r.rank != ambient_rank:
                raise ValueError(f"root {r} has rank {r.rank}, ambient rank is {ambient_rank}")
        self.ambient_rank = ambient_rank
        self.members = members
        self._vecs = frozenset(r.coeffs for r in members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, item) -> bool:
        if isinstance(item, Root):
            return item.coeffs in self._vecs
        return tuple(item) in self._vecs

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RootSubset)
            and self.ambient_rank == other.ambient_rank
            and self._vecs == other._vecs
        )

    def __hash__(self):
        return hash((self.ambient_rank, self._vecs))

    def __le__(self, other: "RootSubset") -> bool:
        return self._vecs <= other._vecs

    def union(self, other: "RootSubset") -> "RootSubset":
        return RootSubset(self.ambient_rank, self.members + other.members)

    def negation(self) -> "RootSubset":
        return RootSubset(self.ambient_rank, tuple(-r for r in self.members))

    def serialize(self) -> list[str]:
        """Sorted list of signed coefficient strings."""
        return [r.to_string() for r in self.members]

    def __repr__(self):
        return f"RootSubset(rank={self.ambient_rank}, {{{', '.join(self.serialize())}}})"


def build_phi(n: int) -> RootSubset:
    """All 2(n+1)^2 roots of the rank-(n+1) type-C system."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rank = n + 1
    out = []
    for k in range(rank):
        for sign in (2, -2):
            coeffs = [0] * rank
            coeffs[k] = sign
            out.append(Root(tuple(coeffs)))
        for l in range(k + 1, rank):
            for sk, sl in ((1, -1), (-1, 1), (1, 1), (-1, -1)):
                coeffs = [0] * rank
                coeffs[k], coeffs[l] = sk, sl
                out.append(Root(tuple(coeffs)))
    return RootSubset(rank, out)


def heisenberg_subset(n: int) -> RootSubset:
    """The closed subset {e1-e_k, e1+e_k : 2<=k<=n+1} + {2e1}.

    Its root spaces span the embedded Heisenberg-Weyl subalgebra; see
    sympembed.hw_embedding.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rank = n + 1
    members = []
    for k in range(1, rank):
        for sign in (-1, 1):
            coeffs = [0] * rank
            coeffs[0], coeffs[k] = 1, sign
            members.append(Root(tuple(coeffs)))
    coeffs = [0] * rank
    coeffs[0] = 2
    members.append(Root(tuple(coeffs)))
    return RootSubset(rank, members)


def _require_subset(s: RootSubset, phi: RootSubset) -> None:
    if not s <= phi:
        raise ValueError("subset contains roots outside the ambient system")


def is_closed(s: RootSubset, phi: RootSubset) -> bool:
    """True iff a,b in s and a+b a root imply a+b in s."""
    _require_subset(s, phi)
    for a in s:
        for b in s:
            tot = a + b
            if tot in phi and tot not in s:
                return False
    return True


def closure(s: RootSubset, phi: RootSubset) -> RootSubset:
    """Least closed subset of phi containing s, by worklist fixpoint."""
    _require_subset(s, phi)
    have = set(r.coeffs for r in s)
    work = list(have)
    while work:
        v = work.pop()
        rv = Root(v)
        for u in list(have):
            tot = rv + Root(u)
            if tot in phi and tot not in have:
                have.add(tot)
                work.append(tot)
    return RootSubset(phi.ambient_rank, [Root(v) for v in have])


def symmetric_special_split(t: RootSubset, phi: RootSubset) -> tuple[RootSubset, RootSubset]:
    """Split a closed set into members whose negatives are / are not present."""
    if not is_closed(t, phi):
        raise ValueError("split is only defined for closed subsets")
    sym = [r for r in t if -r in t]
    spe = [r for r in t if -r not in t]
    return RootSubset(t.ambient_rank, sym), RootSubset(t.ambient_rank, spe)


def wide_criterion(t: RootSubset, phi: RootSubset) -> bool:
    """True iff the closure of t and its negation fills the whole system.

    Equivalent to: every finite-dimensional irreducible module of the
    ambient algebra stays indecomposable when restricted to the regular
    subalgebra spanned by the root spaces of t.
    """
    if not is_closed(t, phi):
        raise ValueError("criterion is only defined for closed subsets")
    return closure(t.union(t.negation()), phi) == phi
