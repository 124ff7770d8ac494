"""Arithmetic in the integral group ring of a finite group.

Elements are dense integer coefficient vectors indexed by group element.
Also provides the free differential (Fox) calculus on relator words and the
regular-representation expansions that turn group-ring maps into integer
matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GroupMismatchError
from .groups import FiniteGroup, Word
from .intlinalg import as_int_matrix


@dataclass
class GroupRingElement:
    """An element of Z[G]: coeffs[g] is the coefficient of group element g."""

    group: FiniteGroup
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=np.int64)
        if self.coeffs.shape != (self.group.order,):
            raise ValueError("coefficient vector has wrong length")

    def _check(self, other: "GroupRingElement"):
        if other.group is not self.group and other.group.cayley != self.group.cayley:
            raise GroupMismatchError("elements live in different group rings")

    def __add__(self, other):
        self._check(other)
        return GroupRingElement(self.group, self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check(other)
        return GroupRingElement(self.group, self.coeffs - other.coeffs)

    def __neg__(self):
        return GroupRingElement(self.group, -self.coeffs)

    def __rmul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return GroupRingElement(self.group, n * self.coeffs)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.group, other * self.coeffs)
        return multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.group.cayley == other.group.cayley and np.array_equal(
            self.coeffs, other.coeffs
        )

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def __repr__(self):
        terms = []
        for g, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{int(c)}*[{g}]")
        return " + ".join(terms) if terms else "0"


def zero(G: FiniteGroup) -> GroupRingElement:
    return GroupRingElement(G, np.zeros(G.order, dtype=np.int64))


def one(G: FiniteGroup) -> GroupRingElement:
    return from_element(G, G.identity)


def from_element(G: FiniteGroup, g: int, coeff: int = 1) -> GroupRingElement:
    c = np.zeros(G.order, dtype=np.int64)
    c[g] = coeff
    return GroupRingElement(G, c)


def multiply(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    """Convolution product through the Cayley table."""
    x._check(y)
    G = x.group
    out = np.zeros(G.order, dtype=np.int64)
    cay = np.asarray(G.cayley, dtype=np.intp)
    for g in np.nonzero(x.coeffs)[0]:
        np.add.at(out, cay[g], int(x.coeffs[g]) * y.coeffs)
    return GroupRingElement(G, out)


def augmentation(x: GroupRingElement) -> int:
    return int(x.coeffs.sum())


def involute(x: GroupRingElement) -> GroupRingElement:
    """Coefficient of g moves to g^-1; an anti-automorphism of the ring."""
    out = np.zeros_like(x.coeffs)
    out[np.asarray(x.group.inverse)] = x.coeffs
    return GroupRingElement(x.group, out)


def norm_element(G: FiniteGroup) -> GroupRingElement:
    return GroupRingElement(G, np.ones(G.order, dtype=np.int64))


def subgroup_norm(G: FiniteGroup, elements) -> GroupRingElement:
    c = np.zeros(G.order, dtype=np.int64)
    for g in elements:
        c[g] += 1
    return GroupRingElement(G, c)


def partial_norm(G: FiniteGroup, g: int, k: int) -> GroupRingElement:
    """Sum of g^i for i < k; requires g^k = identity."""
    if k < 1 or G.power(g, k) != G.identity:
        raise ValueError(f"element {g} does not satisfy g^{k} = identity")
    c = np.zeros(G.order, dtype=np.int64)
    x = G.identity
    for _ in range(k):
        c[x] += 1
        x = G.mul(x, g)
    return GroupRingElement(G, c)


def weighted_elements(G: FiniteGroup, g: int, n: int) -> tuple[GroupRingElement, GroupRingElement]:
    """The pair x_g = sum_{i=1}^{n-1} (n-i) g^i and y_g = sum_{i=0}^{n-1} i g^i.

    Requires g to have order exactly n.  These satisfy
        n - N_g = x_g (g^-1 - 1)   and   n - N_g = -y_g (1 - g),
    which the tests assert.
    """
    if G.element_order(g) != n:
        raise ValueError(f"element {g} does not have order {n}")
    x = np.zeros(G.order, dtype=np.int64)
    y = np.zeros(G.order, dtype=np.int64)
    p = G.identity
    for i in range(n):
        if i >= 1:
            x[p] += n - i
        y[p] += i
        p = G.mul(p, g)
    return GroupRingElement(G, x), GroupRingElement(G, y)


# -- regular-representation expansions ---------------------------------


def left_matrix(x: GroupRingElement) -> np.ndarray:
    """Matrix of y -> x*y on the element basis (columns indexed by elements)."""
    G = x.group
    n = G.order
    L = np.zeros((n, n), dtype=np.int64)
    cay = np.asarray(G.cayley, dtype=np.intp)
    for g in np.nonzero(x.coeffs)[0]:
        # x_g * (g h) picks up the coefficient at column h, row g*h
        L[cay[g, :], np.arange(n)] += int(x.coeffs[g])
    return L


def right_matrix(x: GroupRingElement) -> np.ndarray:
    """Matrix of y -> y*x on the element basis."""
    G = x.group
    n = G.order
    R = np.zeros((n, n), dtype=np.int64)
    cay = np.asarray(G.cayley, dtype=np.intp)
    for g in np.nonzero(x.coeffs)[0]:
        R[cay[:, g], np.arange(n)] += int(x.coeffs[g])
    return R


def expand_matrix(M) -> np.ndarray:
    """Expand a matrix over the group ring to the integer block matrix whose
    (i, j) block is the left-multiplication matrix of M[i][j].

    A ring homomorphism: expand(M @ N) == expand(M) @ expand(N).
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if rows == 0 or cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    G = M[0][0].group
    n = G.order
    out = np.zeros((rows * n, cols * n), dtype=np.int64)
    for i in range(rows):
        for j in range(cols):
            out[i * n : (i + 1) * n, j * n : (j + 1) * n] = left_matrix(M[i][j])
    return out


def expand_right_action(M, rows: int, cols: int, G: FiniteGroup) -> np.ndarray:
    """Integer matrix of the right-multiplication map x -> x @ M on row
    vectors over the group ring, in slot-major coordinates.

    M is rows x cols over Z[G]; the result is (cols*|G|) x (rows*|G|) and
    acts on column coordinate vectors: slot j, element h of the source maps
    to the expansion of h * M[j][i] in target slot i.
    """
    n = G.order
    out = np.zeros((cols * n, rows * n), dtype=np.int64)
    for j in range(rows):
        for i in range(cols):
            out[i * n : (i + 1) * n, j * n : (j + 1) * n] = right_matrix(M[j][i])
    return out


def fox_derivative(w: Word, gen: int, G: FiniteGroup) -> GroupRingElement:
    """Free derivative of a relator word with respect to generator position
    ``gen``, evaluated in Z[G].

    Rules: d(uv) = du + u дv, d(g)/dg = 1, d(g^-1)/dg = -g^-1, d(h)/dg = 0.
    """
    out = np.zeros(G.order, dtype=np.int64)
    prefix = G.identity
    for pos, exp in w:
        g = G.generators[pos][1]
        if exp == 1:
            if pos == gen:
                out[prefix] += 1
            prefix = G.mul(prefix, g)
        else:
            prefix = G.mul(prefix, G.inv(g))
            if pos == gen:
                out[prefix] -= 1
    return GroupRingElement(G, out)


def word_element(G: FiniteGroup, w: Word) -> GroupRingElement:
    return from_element(G, G.evaluate_word(w))


def relation_lattice_columns(relations, rank: int, G: FiniteGroup) -> np.ndarray:
    """Integer columns spanning the Z[G]-submodule of (Z[G])^rank generated
    by the given relation vectors: all left translates g * r, slot-major.
    """
    n = G.order
    cay = np.asarray(G.cayley, dtype=np.intp)
    cols = []
    for r in relations:
        base = np.zeros(rank * n, dtype=np.int64)
        for j, entry in enumerate(r):
            base[j * n : (j + 1) * n] = entry.coeffs
        for g in range(n):
            v = np.zeros(rank * n, dtype=np.int64)
            for j in range(rank):
                v[j * n + cay[g]] = base[j * n : (j + 1) * n]
            cols.append(v)
    if not cols:
        return np.zeros((rank * n, 0), dtype=np.int64)
    return as_int_matrix(np.array(cols, dtype=np.int64).T)
