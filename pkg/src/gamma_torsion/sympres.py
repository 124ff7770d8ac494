"""Coinvariants of symmetric squares and tensor products computed from
module presentations.

For a module M = F/U with F a free module over the group ring and U a
saturated submodule, the symmetric square of F is a permutation module on
the symmetric basis {x (.) y} of pairs of free-basis elements, so its
coinvariants are free on the orbits of that basis.  The symmetric square
of M is then the orbit lattice modulo the classes of

    v(u_j)            (one per module generator u_j of U) and
    u_j (.) f         (f over the free basis of F),

which keeps every matrix at orbit size instead of lattice size.  The same
device presents M (x)_{Z[G]} M' for two presented modules.  All quotients
here are coinvariants of lattices, so their torsion exponent divides |G|
and the prime-local engine applies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InternalConsistencyError
from .groups import FiniteGroup
from .intlinalg import AbelianInvariants, as_int_matrix, rank_z
from .localsmith import cokernel_structure


@dataclass
class Presentation:
    """M = (Z[G])^free_rank / <rows of relations> (rows are module generators
    of the relation submodule, slot-major integer coordinates)."""

    group: FiniteGroup
    free_rank: int
    relations: np.ndarray  # (q, free_rank * |G|) int64

    def __post_init__(self):
        n = self.group.order
        self.relations = np.asarray(self.relations, dtype=np.int64)
        if self.relations.ndim != 2 or self.relations.shape[1] != self.free_rank * n:
            self.relations = self.relations.reshape(-1, self.free_rank * n)

    @property
    def num_relations(self) -> int:
        return self.relations.shape[0]

    def relation_translates(self) -> np.ndarray:
        """Columns g * u_j spanning the relation lattice over Z."""
        G = self.group
        n = G.order
        s = self.free_rank
        cay = np.asarray(G.cayley, dtype=np.intp)
        cols = []
        for u in self.relations:
            for g in range(n):
                v = np.zeros(s * n, dtype=np.int64)
                for j in range(s):
                    v[j * n + cay[g]] = u[j * n : (j + 1) * n]
                cols.append(v)
        if not cols:
            return np.zeros((s * n, 0), dtype=np.int64)
        return np.array(cols, dtype=np.int64).T

    def zrank(self) -> int:
        return self.free_rank * self.group.order - rank_z(self.relation_translates())

    def direct_sum(self, other: "Presentation") -> "Presentation":
        if other.group.cayley != self.group.cayley:
            raise ValueError("presentations over different groups")
        n = self.group.order
        s1, s2 = self.free_rank, other.free_rank
        rel = np.zeros(
            (self.num_relations + other.num_relations, (s1 + s2) * n), dtype=np.int64
        )
        rel[: self.num_relations, : s1 * n] = self.relations
        rel[self.num_relations :, s1 * n :] = other.relations
        return Presentation(self.group, s1 + s2, rel)

    def stabilize(self, k: int = 1) -> "Presentation":
        n = self.group.order
        rel = np.zeros(
            (self.num_relations, (self.free_rank + k) * n), dtype=np.int64
        )
        rel[:, : self.free_rank * n] = self.relations
        return Presentation(self.group, self.free_rank + k, rel)


def free_basis_permutations(G: FiniteGroup, slots: int) -> np.ndarray:
    """perms[g, x]: the image of free-basis element x under g (slot-major)."""
    n = G.order
    cay = np.asarray(G.cayley, dtype=np.intp)
    perms = np.empty((n, slots * n), dtype=np.intp)
    for j in range(slots):
        perms[:, j * n : (j + 1) * n] = j * n + cay
    return perms


@dataclass
class SymmetricOrbits:
    """Orbits of the group on the symmetric-pair basis of a free module."""

    count: int
    pair_orbit: np.ndarray  # (S, S) int32, symmetric, incl. diagonal
    sizes: np.ndarray = field(repr=False, default=None)


def symmetric_orbits(G: FiniteGroup, slots: int) -> SymmetricOrbits:
    """Orbit labels for pairs {x, y} (x = y allowed) of free-basis elements
    of (Z[G])^slots under the diagonal action."""
    perms = free_basis_permutations(G, slots)
    S = perms.shape[1]
    a = perms[:, :, None]
    b = perms[:, None, :]
    codes = np.minimum(a, b).astype(np.int64) * S + np.maximum(a, b)
    canon = codes.min(axis=0)
    _, inverse, counts = np.unique(canon, return_inverse=True, return_counts=True)
    pair_orbit = inverse.reshape(S, S).astype(np.int32)
    # orbit size = #distinct pairs in it; counts counts (x, y) ordered slots
    return SymmetricOrbits(count=int(pair_orbit.max()) + 1 if S else 0,
                           pair_orbit=pair_orbit,
                           sizes=counts)


def _orbit_class_of_square(orbits: SymmetricOrbits, u: np.ndarray) -> np.ndarray:
    """Orbit coordinates of the class of v(u) = u (x) u."""
    out = np.zeros(orbits.count, dtype=np.int64)
    nz = np.nonzero(u)[0]
    if len(nz) == 0:
        return out
    C = np.outer(u[nz], u[nz])
    ids = orbits.pair_orbit[np.ix_(nz, nz)]
    iu = np.triu_indices(len(nz))
    np.add.at(out, ids[iu], C[iu])
    return out


def _orbit_class_of_mixed(orbits: SymmetricOrbits, u: np.ndarray, y: int) -> np.ndarray:
    """Orbit coordinates of the class of u (.) e_y = u (x) e_y + e_y (x) u."""
    out = np.zeros(orbits.count, dtype=np.int64)
    np.add.at(out, orbits.pair_orbit[y], u)
    out[orbits.pair_orbit[y, y]] += u[y]
    return out


def gamma_relation_matrix(P: Presentation, orbits: SymmetricOrbits | None = None) -> np.ndarray:
    """Relation classes presenting the coinvariants of the symmetric square
    of F/U inside the orbit lattice of the symmetric square of F."""
    G = P.group
    S = P.free_rank * G.order
    if orbits is None:
        orbits = symmetric_orbits(G, P.free_rank)
    cols = []
    for u in P.relations:
        cols.append(_orbit_class_of_square(orbits, u))
        for y in range(S):
            cols.append(_orbit_class_of_mixed(orbits, u, y))
    if not cols:
        return np.zeros((orbits.count, 0), dtype=np.int64)
    return np.array(cols, dtype=np.int64).T


def symmetric_square_character(G: FiniteGroup, chi: np.ndarray) -> np.ndarray:
    """Per-element traces of the symmetric square from the module's traces:
    tr SymSq(M_g) = (tr(M_g)^2 + tr(M_{g^2})) / 2."""
    sq = np.array([G.mul(g, g) for g in G.elements()], dtype=np.intp)
    doubled = chi.astype(object) ** 2 + chi[sq]
    if any(int(x) % 2 for x in doubled):
        raise InternalConsistencyError("symmetric-square character is odd")
    return np.array([int(x) // 2 for x in doubled], dtype=np.int64)


def invariant_rank_from_character(G: FiniteGroup, chi: np.ndarray) -> int:
    total = int(np.asarray(chi, dtype=object).sum())
    if total % G.order:
        raise InternalConsistencyError("character sum not divisible by |G|")
    return total // G.order


def gamma_coinvariants(
    P: Presentation,
    module_character: np.ndarray | None = None,
    twin: bool = True,
) -> AbelianInvariants:
    """Full structure (free rank and torsion) of the coinvariants of the
    symmetric square of the presented module.

    ``module_character`` (traces of all element actions on the presented
    module) determines the rational rank of the relation-class lattice,
    which certifies the prime-local path on large inputs and double-checks
    the exact path on small ones.
    """
    orbits = symmetric_orbits(P.group, P.free_rank)
    R = gamma_relation_matrix(P, orbits)
    expected_rank = None
    if module_character is not None:
        t = invariant_rank_from_character(
            P.group, symmetric_square_character(P.group, module_character)
        )
        expected_rank = orbits.count - t
    return cokernel_structure(
        R,
        exponent_hint=P.group.order,
        expected_rank=expected_rank,
        twin=twin,
    )


def gamma_free_orbit_count(G: FiniteGroup, slots: int) -> int:
    return symmetric_orbits(G, slots).count


def tensor_relation_matrix(PA: Presentation, PB: Presentation) -> np.ndarray:
    """Relation classes presenting (A (x) B)_G = A (x)_{Z[G]} B on the free
    basis e_i (x) e_j g of F_A (x)_{Z[G]} F_B (coordinates (i, j, g))."""
    G = PA.group
    if PB.group.cayley != G.cayley:
        raise ValueError("presentations over different groups")
    n = G.order
    sA, sB = PA.free_rank, PB.free_rank
    cay = np.asarray(G.cayley, dtype=np.intp)
    inv = np.asarray(G.inverse, dtype=np.intp)
    rows = sA * sB * n
    cols: list[np.ndarray] = []
    ar = np.arange(n)
    # [u_k (x) e_j g] for each relation u_k of A: entry u_k[i, h] lands at
    # (i, j, h^-1 g)
    for u in PA.relations:
        nz = np.nonzero(u)[0]
        for j in range(sB):
            block = np.zeros((rows, n), dtype=np.int64)
            for x in nz:
                i, h = divmod(int(x), n)
                block[(i * sB + j) * n + cay[inv[h], ar], ar] += int(u[x])
            cols.append(block)
    # [e_i g (x) u_l]: entry u_l[j, h] lands at (i, j, g^-1 h)
    for u in PB.relations:
        nz = np.nonzero(u)[0]
        for i in range(sA):
            block = np.zeros((rows, n), dtype=np.int64)
            for x in nz:
                j, h = divmod(int(x), n)
                block[(i * sB + j) * n + cay[inv[ar], h], ar] += int(u[x])
            cols.append(block)
    if not cols:
        return np.zeros((rows, 0), dtype=np.int64)
    return np.concatenate(cols, axis=1)


def tensor_coinvariants(
    PA: Presentation,
    PB: Presentation,
    character_a: np.ndarray | None = None,
    character_b: np.ndarray | None = None,
    twin: bool = True,
) -> AbelianInvariants:
    """Structure of A (x)_{Z[G]} B for two presented modules (equivalently,
    the coinvariants of A (x)_Z B under the diagonal action)."""
    R = tensor_relation_matrix(PA, PB)
    expected_rank = None
    if character_a is not None and character_b is not None:
        t = invariant_rank_from_character(
            PA.group,
            np.asarray(character_a, dtype=np.int64)
            * np.asarray(character_b, dtype=np.int64),
        )
        expected_rank = PA.free_rank * PB.free_rank * PA.group.order - t
    return cokernel_structure(
        R,
        exponent_hint=PA.group.order,
        expected_rank=expected_rank,
        twin=twin,
    )


def verify_presentation_rank(P: Presentation, zrank: int) -> None:
    """Assert that the presented module has the expected lattice rank."""
    got = P.zrank()
    if got != zrank:
        raise InternalConsistencyError(
            f"presentation has rank {got}, expected {zrank}"
        )
