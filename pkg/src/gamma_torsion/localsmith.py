"""Prime-local Smith valuations and a size-dispatching cokernel engine.

For the coinvariant-style quotients computed here, the torsion exponent
divides the group order (multiplication by the norm followed by projection
is multiplication by |G|), so the invariant factors can be recovered
prime-by-prime working modulo p^(v_p(order)+1).  Elimination over Z/p^k
with unit pivots is exact, runs in fixed-width integers and is cheap; the
rational rank supplied by the caller certifies that no factor escaped the
modulus.  Large cokernels are verified twice (matrix and transpose, which
walk different pivot sequences); small ones go to the exact engine.
"""

from __future__ import annotations

import numpy as np

from .errors import InternalConsistencyError
from .intlinalg import (
    AbelianInvariants,
    as_int_matrix,
    cokernel_invariants,
    invariants_from_primary_parts,
)

# naive exact elimination suffers coefficient explosion well before memory
# does, so the exact engine only handles small cokernels
EXACT_COKERNEL_LIMIT = 300


def prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def local_smith_valuations(A, p: int, k: int, max_pivots: int | None = None) -> list[int]:
    """p-adic valuations of the invariant factors of A that are < p^k.

    Works modulo q = p^k by full-pivot elimination, always choosing a unit
    (minimal-valuation) pivot; when no unit remains every entry is divisible
    by p and the whole trailing matrix is divided by p.  Factors with
    valuation >= k are invisible (they count as zero columns); the caller
    must know from context that none exist below the rank it expects.
    """
    q = p**k
    A = np.asarray(A)
    if A.dtype == object:
        M = np.mod(A, q).astype(np.int32)
    else:
        M = np.ascontiguousarray(A.astype(np.int64) % q).astype(np.int32)
    n, m = M.shape
    vals: list[int] = []
    t = 0
    for level in range(k):
        qlev = p ** (k - level)
        while t < min(n, m):
            sub = M[t:, t:]
            units = np.nonzero(sub % p)
            if len(units[0]) == 0:
                break
            i, j = t + int(units[0][0]), t + int(units[1][0])
            M[[t, i]] = M[[i, t]]
            M[:, [t, j]] = M[:, [j, t]]
            uinv = pow(int(M[t, t]) % qlev, -1, qlev)
            M[t, t:] = (M[t, t:].astype(np.int64) * uinv) % qlev
            col = M[t + 1 :, t].copy()
            trail = M[t + 1 :, t:]
            trail -= col[:, None] * M[t, t:][None, :]
            trail %= qlev
            M[t, t + 1 :] = 0  # column ops against a cleared column are free
            vals.append(level)
            t += 1
            if max_pivots is not None and len(vals) == max_pivots:
                return vals
        if t >= min(n, m):
            break
        M[t:, t:] //= p
    return vals


def plocal_cokernel(A, order: int, rank: int) -> AbelianInvariants:
    """Cokernel structure of A assuming torsion exponent divides ``order``
    and rank(A) == ``rank`` over the rationals.

    Raises InternalConsistencyError when the modular eliminations do not
    account for exactly ``rank`` pivots, which would mean the exponent
    assumption or the supplied rank is wrong.
    """
    A = np.asarray(A)
    n = A.shape[0]
    primary: dict[int, list[int]] = {}
    for p, a in prime_factors(order).items():
        vals = local_smith_valuations(A, p, a + 1, max_pivots=rank)
        if len(vals) != rank:
            raise InternalConsistencyError(
                f"mod-{p} elimination found {len(vals)} pivots, expected {rank}"
            )
        pos = sorted((v for v in vals if v > 0), reverse=True)
        if pos:
            primary[p] = pos
    return invariants_from_primary_parts(n - rank, primary)


def cokernel_structure(
    A,
    exponent_hint: int | None = None,
    expected_rank: int | None = None,
    twin: bool = False,
) -> AbelianInvariants:
    """Cokernel structure with automatic strategy choice.

    Small matrices (or calls without an exponent_hint / expected_rank) use
    the exact Smith engine.  Large ones use the prime-local engine, and with
    twin=True the transpose is eliminated independently and must agree.
    """
    A = as_int_matrix(A)
    n, m = A.shape
    if n == 0:
        return AbelianInvariants(0, [])
    if m == 0:
        return AbelianInvariants(n, [])
    small = max(n, m) <= EXACT_COKERNEL_LIMIT
    if small or exponent_hint is None or expected_rank is None:
        inv = cokernel_invariants(A)
        if expected_rank is not None and n - inv.free_rank != expected_rank:
            raise InternalConsistencyError(
                f"exact rank {n - inv.free_rank} != expected {expected_rank}"
            )
        return inv
    inv = plocal_cokernel(A, exponent_hint, expected_rank)
    if twin:
        other = plocal_cokernel(A.T, exponent_hint, expected_rank)
        if other.torsion != inv.torsion:
            raise InternalConsistencyError(
                f"transpose elimination disagrees: {inv.torsion} vs {other.torsion}"
            )
    return inv
