"""Partial free resolutions from group presentations via the free
differential calculus, the kernel and dual-cokernel modules they define,
and the explicit four-term complex for two-generator abelian groups.

Maps are matrices over the group ring acting on row vectors by right
multiplication, so a composite C2 -> C1 -> C0 is the product d2 @ d1 of a
(relators x generators) matrix with a (generators x 1) column.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import groupring as gr
from .errors import InternalConsistencyError, NotALatticeError, PresentationDeficiencyError
from .groups import FiniteGroup, two_generator_presentation
from .intlinalg import as_int_matrix, kernel_basis, rank_z
from .modules import FpModule, LatticeModule, lattice_from_presentation
from .sympres import Presentation


def _zero_ring_matrix(M, G: FiniteGroup) -> bool:
    return all(x.is_zero() for row in M for x in row)


def ring_matrix_product(A, B, G: FiniteGroup):
    """Product of matrices over the group ring (entries GroupRingElement)."""
    rows = len(A)
    inner = len(B)
    cols = len(B[0]) if inner else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = gr.zero(G)
            for k in range(inner):
                acc = acc + gr.multiply(A[i][k], B[k][j])
            row.append(acc)
        out.append(row)
    return out


@dataclass
class PartialResolution:
    """The start C2 -> C1 -> C0 of a free resolution attached to a
    presentation: d1 has entries g_i - 1, d2 the free derivatives of the
    relators."""

    group: FiniteGroup
    d1: list[list[gr.GroupRingElement]]  # generators x 1
    d2: list[list[gr.GroupRingElement]]  # relators x generators
    expanded_d1: np.ndarray  # (1*|G|) x (gens*|G|)
    expanded_d2: np.ndarray  # (gens*|G|) x (relators*|G|)

    @property
    def num_generators(self) -> int:
        return len(self.d1)

    @property
    def num_relators(self) -> int:
        return len(self.d2)


def presentation_complex(G: FiniteGroup) -> PartialResolution:
    """Build d1, d2 from the designated presentation and verify exactness
    at degree one (the relators must generate the relation module)."""
    gens = G.generators
    if not gens:
        d1: list[list[gr.GroupRingElement]] = []
        d2: list[list[gr.GroupRingElement]] = []
        return PartialResolution(
            G,
            d1,
            d2,
            np.zeros((G.order, 0), dtype=np.int64),
            np.zeros((0, 0), dtype=np.int64),
        )
    one = gr.one(G)
    d1 = [[gr.from_element(G, g) - one] for _, g in gens]
    d2 = [
        [gr.fox_derivative(w, pos, G) for pos in range(len(gens))]
        for w in G.relators
    ]
    comp = ring_matrix_product(d2, d1, G)
    if not _zero_ring_matrix(comp, G):
        raise InternalConsistencyError(
            f"{G.name}: free-derivative rows do not compose to zero"
        )
    for [x] in d1:
        if gr.augmentation(x) != 0:
            raise InternalConsistencyError(f"{G.name}: d1 does not augment to zero")
    e1 = gr.expand_right_action(d1, rows=len(gens), cols=1, G=G)
    e2 = gr.expand_right_action(d2, rows=len(d2), cols=len(gens), G=G)
    if np.any(as_int_matrix(e1) @ as_int_matrix(e2)):
        raise InternalConsistencyError(f"{G.name}: expanded composition nonzero")
    k1 = kernel_basis(e1)
    if k1.shape[1] != rank_z(e2):
        raise PresentationDeficiencyError(
            f"{G.name}: relators do not generate the relation module "
            f"(kernel rank {k1.shape[1]}, image rank {rank_z(e2)})"
        )
    return PartialResolution(G, d1, d2, e1, e2)


def ker_d2(R: PartialResolution) -> LatticeModule:
    """Kernel of the second boundary map as a lattice with the action
    solved in the kernel basis."""
    G = R.group
    n = G.order
    K = kernel_basis(R.expanded_d2)
    zrank = K.shape[1]
    from .intlinalg import LatticeSolver

    solver = LatticeSolver(K)
    cay = np.asarray(G.cayley, dtype=np.intp)
    actions = []
    slots = R.num_relators
    for _, g in G.generators:
        amb = np.zeros((slots * n, slots * n), dtype=np.int64)
        for j in range(slots):
            amb[j * n + cay[g], j * n + np.arange(n)] = 1
        X = solver.solve_many(as_int_matrix(amb @ K))
        if X is None:
            raise InternalConsistencyError(
                f"{G.name}: kernel lattice is not action-stable"
            )
        actions.append(X)
    return LatticeModule(
        G, zrank, actions, name=f"ker-d2({G.name})", provenance=("kernel", K)
    )


def dual_rows(R: PartialResolution) -> list[tuple[gr.GroupRingElement, ...]]:
    """Rows of the dualized second boundary map: the involute-transpose of
    d2, one row per group generator."""
    return [
        tuple(gr.involute(R.d2[r][i]) for r in range(R.num_relators))
        for i in range(R.num_generators)
    ]


def coker_d2_fp(R: PartialResolution) -> FpModule:
    """The cokernel of the dualized map, as a presentation on one free slot
    per relator."""
    return FpModule(R.group, R.num_relators, dual_rows(R))


def coker_d2_dual(R: PartialResolution) -> LatticeModule:
    """Cokernel of the dualized second boundary map as a lattice.

    Torsion here would contradict the structural torsion-freeness of this
    cokernel, so it is escalated to a fatal internal error.
    """
    try:
        return lattice_from_presentation(
            coker_d2_fp(R), name=f"coker-d2^({R.group.name})"
        )
    except NotALatticeError as exc:
        raise InternalConsistencyError(
            f"{R.group.name}: dual cokernel has torsion {exc.factors}; "
            "this indicates an expansion bug"
        ) from exc


@dataclass
class AbelianTwoGeneratorResolution:
    """The explicit four-term periodic-style complex for C_n x C_m."""

    group: FiniteGroup
    d1: list[list[gr.GroupRingElement]]  # 2 x 1
    d2: list[list[gr.GroupRingElement]]  # 3 x 2
    d3: list[list[gr.GroupRingElement]]  # 4 x 3
    d4: list[list[gr.GroupRingElement]]  # 5 x 4

    def kernel_presentation(self) -> FpModule:
        """ker d2 presented as the cokernel of d4 on the degree-three slots."""
        return FpModule(self.group, 4, [tuple(row) for row in self.d4])


def abelian_two_generator_resolution(n: int, m: int) -> AbelianTwoGeneratorResolution:
    """The standard resolution of the integers over Z[C_n x C_m] through
    degree four, with the hand-checkable entries N_a, b-1, 1-a, N_b."""
    G = two_generator_presentation(n, m)
    a = G.generators[0][1]
    b = G.generators[1][1]
    one = gr.one(G)
    ea = gr.from_element(G, a)
    eb = gr.from_element(G, b)
    Na = gr.partial_norm(G, a, n)
    Nb = gr.partial_norm(G, b, m)
    z = gr.zero(G)
    d1 = [[one - ea], [one - eb]]
    d2 = [
        [Na, z],
        [eb - one, one - ea],
        [z, Nb],
    ]
    d3 = [
        [one - ea, z, z],
        [one - eb, Na, z],
        [z, -1 * Nb, one - ea],
        [z, z, one - eb],
    ]
    d4 = [
        [Na, z, z, z],
        [eb - one, one - ea, z, z],
        [z, Nb, Na, z],
        [z, z, eb - one, one - ea],
        [z, z, z, Nb],
    ]
    res = AbelianTwoGeneratorResolution(G, d1, d2, d3, d4)
    for name, A, B in (("d2d1", d2, d1), ("d3d2", d3, d2), ("d4d3", d4, d3)):
        if not _zero_ring_matrix(ring_matrix_product(A, B, G), G):
            raise InternalConsistencyError(f"composition {name} is nonzero")
    return res


def ker_d2_presentation_generic(R: PartialResolution) -> FpModule:
    """A presentation of ker d2 computed from its lattice (generic route,
    valid for any catalog group)."""
    from .modules import lattice_to_presentation

    return lattice_to_presentation(ker_d2(R))


def side_presentations(G: FiniteGroup) -> tuple[FpModule, FpModule]:
    """Presentations of (ker d2, coker of the dual map) for a group."""
    R = presentation_complex(G)
    return ker_d2_presentation_generic(R), coker_d2_fp(R)
