"""The universal quadratic functor on lattice modules, modeled as the
sublattice of symmetric tensors in the tensor square.

For a lattice with basis b_1..b_r the canonical basis is

    v(b_i) = b_i (x) b_i            (i ascending), then
    e_ij   = b_i (x) b_j + b_j (x) b_i   (i < j, lexicographic),

and the induced action of a matrix M sends v-columns to the symmetric
expansion of (M b) (x) (M b); all coefficients are integers by the v/e
bookkeeping (squares on the diagonal, products off it).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GroupMismatchError, InternalConsistencyError
from .intlinalg import as_int_matrix, mat_mul
from .modules import LatticeModule, direct_sum, tensor


def canonical_pairs(r: int) -> tuple[np.ndarray, np.ndarray]:
    """Index arrays (I, J) of the canonical basis: diagonal first, then
    off-diagonal pairs in lexicographic order."""
    I = list(range(r)) + [i for i in range(r) for _ in range(i + 1, r)]
    J = list(range(r)) + [j for i in range(r) for j in range(i + 1, r)]
    return np.array(I, dtype=np.intp), np.array(J, dtype=np.intp)


def gamma_rank(r: int) -> int:
    return r * (r + 1) // 2


def gamma_matrix(M: np.ndarray) -> np.ndarray:
    """Action induced on the symmetric square by a matrix M (exact)."""
    M = as_int_matrix(M)
    r = M.shape[0]
    I, J = canonical_pairs(r)
    R = len(I)
    if M.dtype == np.int64 and M.size:
        # squares of int64 entries can overflow; route through object if big
        if int(np.max(np.abs(M))) ** 2 * 2 >= 2**62:
            M = M.astype(object)
    off = I != J
    rows_v = M[:, I] * M[:, J]
    rows_v[:, off] *= 2
    K, L = I[r:], J[r:]  # target pair labels follow the same order
    T1 = M[K][:, I] * M[L][:, J]
    T2 = M[K][:, J] * M[L][:, I]
    rows_e = T1 + np.where(off[None, :], T2, 0)
    out = np.concatenate([rows_v, rows_e], axis=0)
    return as_int_matrix(out)


def square_coords(r: int, x: np.ndarray) -> np.ndarray:
    """Coordinates of v(x) = x (x) x in the canonical basis."""
    x = np.asarray(x, dtype=object)
    I, J = canonical_pairs(r)
    return as_int_matrix((x[I] * x[J]).reshape(1, -1)).reshape(-1)


class GammaModule(LatticeModule):
    """Symmetric square of a base lattice module, in the canonical basis."""

    def __init__(self, base: LatticeModule):
        self.base = base
        r = base.zrank
        I, J = canonical_pairs(r)
        self.pair_index = (I, J)
        actions = [gamma_matrix(M) for M in base.actions]
        super().__init__(
            group=base.group,
            zrank=gamma_rank(r),
            actions=actions,
            name=f"Gamma({base.name})",
            provenance=("gamma", base),
        )
        for M in actions:
            if M.shape != (self.zrank, self.zrank):
                raise InternalConsistencyError("symmetric square has wrong size")

    def character(self) -> np.ndarray:
        """Per-element traces via the base module: the trace of the
        symmetric square of M_g is (tr(M_g)^2 + tr(M_{g^2})) / 2."""
        chi = self.base.character()
        G = self.group
        sq = np.array([G.mul(g, g) for g in G.elements()], dtype=np.intp)
        doubled = chi.astype(object) ** 2 + chi[sq]
        if any(int(x) % 2 for x in doubled):
            raise InternalConsistencyError("symmetric-square character is odd")
        return np.array([int(x) // 2 for x in doubled], dtype=np.int64)


def gamma(A: LatticeModule) -> GammaModule:
    """Symmetric square with the diagonal action, canonical basis."""
    return GammaModule(A)


def gamma_map_check(A: LatticeModule, a, b, c) -> bool:
    """Check the two defining identities of the quadratic functor on the
    images x -> x (x) x inside the symmetric square:

        v(-a) = v(a)
        v(a+b+c) - v(b+c) - v(c+a) - v(a+b) + v(a) + v(b) + v(c) = 0
    """
    r = A.zrank
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    c = np.asarray(c, dtype=object)
    if not np.array_equal(square_coords(r, -a), square_coords(r, a)):
        return False
    lhs = (
        square_coords(r, a + b + c).astype(object)
        - square_coords(r, b + c)
        - square_coords(r, c + a)
        - square_coords(r, a + b)
        + square_coords(r, a)
        + square_coords(r, b)
        + square_coords(r, c)
    )
    return not np.any(lhs)


@dataclass
class SumDecomposition:
    """Unimodular equivariant isomorphism from the symmetric square of a
    direct sum onto SymSq(A) + SymSq(B) + (A (x) B)."""

    source: GammaModule
    target: LatticeModule
    iso: np.ndarray

    def verify(self) -> bool:
        for Ms, Mt in zip(self.source.actions, self.target.actions):
            if not np.array_equal(mat_mul(self.iso, Ms), mat_mul(Mt, self.iso)):
                return False
        return True


def gamma_of_sum_decomposition(A: LatticeModule, B: LatticeModule) -> SumDecomposition:
    """The canonical splitting of the symmetric square of A + B.

    v- and e-columns inside pure-A (resp. pure-B) indices map to the
    corresponding basis of SymSq(A) (resp. SymSq(B)); a cross pair
    a_i (.) b_j maps to the elementary tensor a_i (x) b_j.
    """
    if A.group.cayley != B.group.cayley:
        raise GroupMismatchError("modules over different groups")
    s = direct_sum(A, B)
    src = gamma(s)
    gA = gamma(A)
    gB = gamma(B)
    tAB = tensor(A, B)
    target = direct_sum(direct_sum(gA, gB), tAB)
    ra, rb = A.zrank, B.zrank
    I, J = canonical_pairs(ra + rb)
    Ia, Ja = canonical_pairs(ra)
    Ib, Jb = canonical_pairs(rb)
    posA = {(int(i), int(j)): t for t, (i, j) in enumerate(zip(Ia, Ja))}
    posB = {(int(i), int(j)): t for t, (i, j) in enumerate(zip(Ib, Jb))}
    iso = np.zeros((target.zrank, src.zrank), dtype=np.int64)
    offB = gA.zrank
    offT = gA.zrank + gB.zrank
    for col, (i, j) in enumerate(zip(I, J)):
        i, j = int(i), int(j)
        if i < ra and j < ra:
            iso[posA[(i, j)], col] = 1
        elif i >= ra and j >= ra:
            iso[offB + posB[(i - ra, j - ra)], col] = 1
        else:
            iso[offT + i * rb + (j - ra), col] = 1
    dec = SumDecomposition(source=src, target=target, iso=as_int_matrix(iso))
    if not dec.verify():
        raise InternalConsistencyError("sum decomposition is not equivariant")
    return dec
