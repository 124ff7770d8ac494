"""Exact integer matrix algebra: Hermite and Smith normal forms with
unimodular transform certificates, kernels, lattice solves and cokernel
structure.

Matrices are dense 2-D numpy arrays.  Arithmetic starts in int64 and the
whole computation is promoted to Python-int (object dtype) the moment an
operation could overflow, so results are exact regardless of coefficient
growth.  Pivoting is deterministic: the nonzero entry of minimal absolute
value wins, ties broken by lowest row then lowest column.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

_INT64_SAFE = 2**61


def as_int_matrix(data, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Coerce nested lists / arrays to a 2-D integer matrix (int64 if it fits)."""
    if isinstance(data, np.ndarray) and data.ndim == 2:
        if data.dtype == np.int64:
            return data
        if data.dtype == object:
            if data.size == 0 or int(np.abs(data).max()) < _INT64_SAFE:
                return data.astype(np.int64)
            return data
        if np.issubdtype(data.dtype, np.integer):
            return data.astype(np.int64)
    A = np.array(data, dtype=object)
    if A.ndim != 2:
        if A.size == 0:
            A = A.reshape((rows or 0, cols or 0))
        else:
            raise ValueError("expected a 2-D matrix")
    if A.size == 0 or int(np.abs(A).max()) < _INT64_SAFE:
        return A.astype(np.int64)
    return A


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def mat_mul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Exact product; promotes to object dtype when int64 could overflow."""
    if A.dtype == object or B.dtype == object:
        return A.astype(object) @ B.astype(object)
    ma = int(np.max(np.abs(A))) if A.size else 0
    mb = int(np.max(np.abs(B))) if B.size else 0
    if ma * mb * max(1, A.shape[1]) >= _INT64_SAFE:
        return A.astype(object) @ B.astype(object)
    return A @ B


@dataclass
class AbelianInvariants:
    """Structure of a finitely generated abelian group.

    torsion is the invariant-factor chain d1 | d2 | ..., each entry >= 2.
    """

    free_rank: int
    torsion: list[int] = field(default_factory=list)

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise ValueError(f"torsion factors must be >= 2: {self.torsion}")

    @property
    def is_torsion_free(self) -> bool:
        return not self.torsion

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def torsion_only(self) -> "AbelianInvariants":
        return AbelianInvariants(0, list(self.torsion))

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def invariants_from_primary_parts(free_rank: int, primary: dict[int, list[int]]) -> AbelianInvariants:
    """Assemble invariant factors from prime-power valuations.

    ``primary[p]`` lists the exponents e >= 1 of the cyclic p-power summands.
    Largest valuations combine into the largest invariant factor.
    """
    depth = max((len(v) for v in primary.values()), default=0)
    factors = []
    for i in range(depth):
        d = 1
        for p, vals in primary.items():
            vals = sorted(vals, reverse=True)
            if i < len(vals):
                d *= p ** vals[i]
        factors.append(d)
    factors.reverse()
    return AbelianInvariants(free_rank, factors)


@dataclass
class SmithDecomposition:
    """U @ A @ V == D with U, V unimodular and D diagonal (divisibility chain).

    u_inv / v_inv are carried so callers get exact inverse transforms for
    free; they are None when the decomposition was computed without
    transforms.
    """

    D: np.ndarray
    rank: int
    invariant_factors: list[int]
    U: np.ndarray | None = None
    V: np.ndarray | None = None
    u_inv: np.ndarray | None = None
    v_inv: np.ndarray | None = None

    def diagonal(self) -> list[int]:
        r = min(self.D.shape)
        return [int(self.D[i, i]) for i in range(r)]

    def verify(self, A) -> bool:
        """Re-multiply the certificate exactly."""
        if self.U is None or self.V is None:
            raise ValueError("decomposition carries no transforms")
        A = as_int_matrix(A)
        if not np.array_equal(mat_mul(mat_mul(self.U, A), self.V), self.D):
            return False
        n, m = self.U.shape[0], self.V.shape[0]
        if self.u_inv is not None and not np.array_equal(
            mat_mul(self.U, self.u_inv), eye(n)
        ):
            return False
        if self.v_inv is not None and not np.array_equal(
            mat_mul(self.V, self.v_inv), eye(m)
        ):
            return False
        return True


class _Eliminator:
    """Row/column operation engine with mirrored transforms and overflow guard.

    All mutating primitives keep the invariants
        U @ A0 @ V == M,   U @ u_inv == I,   V @ v_inv == I
    and promote every array to object dtype before any op that could
    overflow int64.
    """

    def __init__(self, A, want_row: bool, want_col: bool):
        self.M = as_int_matrix(A).copy()
        n, m = self.M.shape
        self.U = eye(n) if want_row else None
        self.u_inv = eye(n) if want_row else None
        self.V = eye(m) if want_col else None
        self.v_inv = eye(m) if want_col else None
        self.object_mode = False
        if self.M.dtype == object:
            self._promote()

    def _promote(self):
        if not self.object_mode:
            self.M = self.M.astype(object)
            for name in ("U", "u_inv", "V", "v_inv"):
                arr = getattr(self, name)
                if arr is not None:
                    setattr(self, name, arr.astype(object))
            self.object_mode = True

    def _guard(self, *arrays_and_factors):
        """Promote if sum over pairs of max|arr| * factor could overflow."""
        if self.object_mode:
            return
        total = 0
        for arr, factor in arrays_and_factors:
            if arr is not None and arr.size:
                total += int(np.max(np.abs(arr))) * int(factor)
        if total >= _INT64_SAFE:
            self._promote()

    # -- primitives (row side) -----------------------------------------

    def swap_rows(self, i, j):
        if i == j:
            return
        self.M[[i, j]] = self.M[[j, i]]
        if self.U is not None:
            self.U[[i, j]] = self.U[[j, i]]
            self.u_inv[:, [i, j]] = self.u_inv[:, [j, i]]

    def negate_row(self, i):
        self.M[i] = -self.M[i]
        if self.U is not None:
            self.U[i] = -self.U[i]
            self.u_inv[:, i] = -self.u_inv[:, i]

    def rows_axpy(self, rows: np.ndarray, q: np.ndarray, src: int):
        """M[rows] -= q[:, None] * M[src]; src must not be in rows."""
        if len(rows) == 0:
            return
        qmax = int(np.max(np.abs(q))) if len(q) else 0
        self._guard((self.M, qmax + 1), (self.U, qmax + 1), (self.u_inv, qmax + 1))
        q = q.astype(self.M.dtype)
        self.M[rows] -= q[:, None] * self.M[src][None, :]
        if self.U is not None:
            self.U[rows] -= q[:, None] * self.U[src][None, :]
            self.u_inv[:, src] += self.u_inv[:, rows] @ q

    def row_combine(self, i, j, T, T_inv):
        """rows (i, j) <- T @ rows (i, j), with T 2x2 unimodular."""
        tmax = max(abs(int(x)) for x in np.array(T, dtype=object).flat)
        self._guard((self.M, 2 * tmax), (self.U, 2 * tmax), (self.u_inv, 2 * tmax))
        T = np.array(T, dtype=self.M.dtype)
        T_inv = np.array(T_inv, dtype=self.M.dtype)
        self.M[[i, j]] = T @ self.M[[i, j]]
        if self.U is not None:
            self.U[[i, j]] = T @ self.U[[i, j]]
            self.u_inv[:, [i, j]] = self.u_inv[:, [i, j]] @ T_inv

    # -- primitives (column side) ----------------------------------------

    def swap_cols(self, i, j):
        if i == j:
            return
        self.M[:, [i, j]] = self.M[:, [j, i]]
        if self.V is not None:
            self.V[:, [i, j]] = self.V[:, [j, i]]
            self.v_inv[[i, j]] = self.v_inv[[j, i]]

    def negate_col(self, i):
        self.M[:, i] = -self.M[:, i]
        if self.V is not None:
            self.V[:, i] = -self.V[:, i]
            self.v_inv[i] = -self.v_inv[i]

    def cols_axpy(self, cols: np.ndarray, q: np.ndarray, src: int):
        """M[:, cols] -= M[:, src] * q[None, :]; src must not be in cols."""
        if len(cols) == 0:
            return
        qmax = int(np.max(np.abs(q))) if len(q) else 0
        self._guard((self.M, qmax + 1), (self.V, qmax + 1), (self.v_inv, qmax + 1))
        q = q.astype(self.M.dtype)
        self.M[:, cols] -= self.M[:, src][:, None] * q[None, :]
        if self.V is not None:
            self.V[:, cols] -= self.V[:, src][:, None] * q[None, :]
            self.v_inv[src] += q @ self.v_inv[cols]

    def col_combine(self, i, j, T, T_inv):
        """cols (i, j) <- cols (i, j) @ T, with T 2x2 unimodular."""
        tmax = max(abs(int(x)) for x in np.array(T, dtype=object).flat)
        self._guard((self.M, 2 * tmax), (self.V, 2 * tmax), (self.v_inv, 2 * tmax))
        T = np.array(T, dtype=self.M.dtype)
        T_inv = np.array(T_inv, dtype=self.M.dtype)
        self.M[:, [i, j]] = self.M[:, [i, j]] @ T
        if self.V is not None:
            self.V[:, [i, j]] = self.V[:, [i, j]] @ T
            self.v_inv[[i, j]] = T_inv @ self.v_inv[[i, j]]


def _min_abs_pivot(sub: np.ndarray):
    """Position of the nonzero entry of minimal |value|; None if sub == 0.

    np.argmin scans in row-major order, which realizes the tie rule
    (lowest row, then lowest column).
    """
    if sub.size == 0:
        return None
    a = np.abs(sub)
    mx = a.max()
    if mx == 0:
        return None
    a = np.where(a == 0, mx + 1, a)
    flat = int(np.argmin(a))
    return divmod(flat, sub.shape[1])


def _sym_quotients(col: np.ndarray, d: int) -> np.ndarray:
    """Round-to-nearest quotients so remainders lie in (-d/2, d/2]; d > 0."""
    return np.floor_divide(col + d // 2, d)


def smith_normal_form(A, transforms: bool = True) -> SmithDecomposition:
    """Smith normal form with optional unimodular certificates.

    Deterministic for the fixed pivot rule.  Works for any shape including
    empty matrices.
    """
    E = _Eliminator(A, want_row=transforms, want_col=transforms)
    M = E.M
    n, m = M.shape
    t = 0
    while t < min(n, m):
        pos = _min_abs_pivot(E.M[t:, t:])
        if pos is None:
            break
        E.swap_rows(t, t + pos[0])
        E.swap_cols(t, t + pos[1])
        if E.M[t, t] < 0:
            E.negate_row(t)
        while True:
            d = int(E.M[t, t])
            col = E.M[t + 1 :, t]
            nz = np.nonzero(col)[0]
            if len(nz):
                q = _sym_quotients(col[nz], d)
                E.rows_axpy(nz + t + 1, q, t)
                if np.any(E.M[t + 1 :, t]):
                    # remainders smaller than the pivot: re-pivot
                    pos = _min_abs_pivot(E.M[t:, t:])
                    E.swap_rows(t, t + pos[0])
                    E.swap_cols(t, t + pos[1])
                    if E.M[t, t] < 0:
                        E.negate_row(t)
                    continue
            d = int(E.M[t, t])
            row = E.M[t, t + 1 :]
            nz = np.nonzero(row)[0]
            if len(nz):
                q = _sym_quotients(row[nz], d)
                E.cols_axpy(nz + t + 1, q, t)
                if np.any(E.M[t, t + 1 :]) or np.any(E.M[t + 1 :, t]):
                    pos = _min_abs_pivot(E.M[t:, t:])
                    E.swap_rows(t, t + pos[0])
                    E.swap_cols(t, t + pos[1])
                    if E.M[t, t] < 0:
                        E.negate_row(t)
                    continue
            # pivot clean; absorb a non-divisible entry if one remains
            d = int(E.M[t, t])
            rest = E.M[t + 1 :, t + 1 :]
            if rest.size and d > 1:
                bad = np.nonzero(np.mod(rest, d))
                if len(bad[0]):
                    E.rows_axpy(np.array([t]), np.array([-1]), t + 1 + int(bad[0][0]))
                    continue
            break
        t += 1
    rank = t
    # chain is guaranteed by the absorb step; normalize and double-check
    diag = [int(E.M[i, i]) for i in range(rank)]
    for a, b in zip(diag, diag[1:]):
        if b % a != 0:  # pragma: no cover - absorb step prevents this
            raise AssertionError("divisibility chain violated")
    return SmithDecomposition(
        D=E.M,
        rank=rank,
        invariant_factors=diag,
        U=E.U,
        V=E.V,
        u_inv=E.u_inv,
        v_inv=E.v_inv,
    )


def hermite_normal_form(A, transforms: bool = True):
    """Column-style Hermite normal form H = A @ V.

    Pivots walk down the rows; each pivot is positive, entries to its left
    in its row are reduced into [0, pivot).  Columns beyond the rank are
    zero, and with transforms they exhibit a saturated kernel basis.
    """
    E = _Eliminator(A, want_row=False, want_col=transforms)
    n, m = E.M.shape
    c = 0
    pivots: list[tuple[int, int]] = []
    for r in range(n):
        if c >= m:
            break
        while True:
            row = E.M[r, c:]
            nz = np.nonzero(row)[0]
            if len(nz) == 0:
                break
            j = int(nz[np.argmin(np.abs(row[nz]))]) + c
            E.swap_cols(c, j)
            if E.M[r, c] < 0:
                E.negate_col(c)
            d = int(E.M[r, c])
            others = np.nonzero(E.M[r, c + 1 :])[0]
            if len(others) == 0:
                break
            q = np.floor_divide(E.M[r, c + 1 :][others], d)
            E.cols_axpy(others + c + 1, q, c)
            if not np.any(E.M[r, c + 1 :]):
                break
        if c < m and E.M[r, c] != 0:
            d = int(E.M[r, c])
            q_all = np.floor_divide(E.M[r, :c], d)
            left = np.nonzero(q_all)[0]
            if len(left):
                E.cols_axpy(left, q_all[left], c)
            pivots.append((r, c))
            c += 1
    return E.M, E.V, pivots


def rank_z(A) -> int:
    return len(hermite_normal_form(A, transforms=False)[2])


def kernel_basis(A) -> np.ndarray:
    """Columns form a saturated basis of {x : A x = 0} over the integers."""
    A = as_int_matrix(A)
    H, V, pivots = hermite_normal_form(A, transforms=True)
    r = len(pivots)
    ker = V[:, r:]
    return ker.copy()


def cokernel_invariants(A) -> AbelianInvariants:
    """Structure of Z^rows / column-span(A)."""
    A = as_int_matrix(A)
    snf = smith_normal_form(A, transforms=False)
    torsion = [d for d in snf.invariant_factors if d > 1]
    return AbelianInvariants(A.shape[0] - snf.rank, torsion)


class LatticeSolver:
    """Factor a column lattice basis once, then solve B x = v repeatedly."""

    def __init__(self, B):
        self.B = as_int_matrix(B)
        self.H, self.V, self.pivots = hermite_normal_form(self.B, transforms=True)

    def _reduce(self, Vmat):
        Vmat = as_int_matrix(Vmat)
        if Vmat.shape[0] != self.B.shape[0]:
            raise ValueError("dimension mismatch")
        res = Vmat.astype(object).copy()
        bad = np.zeros(Vmat.shape[1], dtype=bool)
        Y = np.zeros((self.H.shape[1], Vmat.shape[1]), dtype=object)
        for pr, pc in self.pivots:
            d = int(self.H[pr, pc])
            num = res[pr]
            q = np.array([int(x) // d for x in num], dtype=object)
            bad |= np.array([int(x) % d != 0 for x in num], dtype=bool)
            Y[pc] = q
            res -= self.H[:, pc : pc + 1].astype(object) * q[None, :]
        if res.size:
            bad |= np.array(
                [any(int(x) != 0 for x in res[:, c]) for c in range(res.shape[1])],
                dtype=bool,
            )
        return Y, bad

    def solve_many(self, Vmat) -> np.ndarray | None:
        """Solve B X = Vmat columnwise; None when any column is outside the span."""
        Y, bad = self._reduce(Vmat)
        if bad.any():
            return None
        X = mat_mul(self.V.astype(object), Y)
        return as_int_matrix(X)

    def solvable_mask(self, Vmat) -> np.ndarray:
        """Boolean mask of which columns of Vmat lie in the column span."""
        _, bad = self._reduce(Vmat)
        return ~bad


def solve_in_lattice(B, v) -> np.ndarray | None:
    """Return x with B @ x == v when v lies in the column span; else None."""
    v = np.array(v, dtype=object).reshape(-1, 1)
    X = LatticeSolver(B).solve_many(v)
    return None if X is None else X[:, 0]


def is_unimodular(A) -> bool:
    A = as_int_matrix(A)
    if A.shape[0] != A.shape[1]:
        return False
    snf = smith_normal_form(A, transforms=False)
    return snf.rank == A.shape[0] and all(d == 1 for d in snf.invariant_factors)


def is_saturated(B) -> bool:
    """Do the columns of B span a direct summand of the ambient lattice?"""
    B = as_int_matrix(B)
    if B.shape[1] == 0:
        return True
    snf = smith_normal_form(B, transforms=False)
    return snf.rank == B.shape[1] and all(d == 1 for d in snf.invariant_factors)


def unimodular_from_ops(n: int, rng, ops: int = 8, bound: int = 2) -> np.ndarray:
    """Random unimodular matrix as a product of elementary operations."""
    U = eye(n).astype(object)
    for _ in range(ops):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        q = rng.randint(-bound, bound)
        U[i] += q * U[j]
    if rng.random() < 0.5 and n:
        i = rng.randrange(n)
        U[i] = -U[i]
    return as_int_matrix(U)
