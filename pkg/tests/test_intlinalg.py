import random
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gamma_torsion.intlinalg import (
    AbelianInvariants,
    LatticeSolver,
    as_int_matrix,
    cokernel_invariants,
    hermite_normal_form,
    invariants_from_primary_parts,
    is_saturated,
    is_unimodular,
    kernel_basis,
    mat_mul,
    rank_z,
    smith_normal_form,
    solve_in_lattice,
    unimodular_from_ops,
)


def brute_invariant_factors(A):
    """Independent oracle: d_k = gcd(k-minors) / gcd((k-1)-minors).

    Only feasible for tiny matrices; used to pin expected values.
    """
    import itertools

    A = [[int(x) for x in row] for row in np.atleast_2d(np.array(A, dtype=object))]
    n, m = len(A), len(A[0]) if A else 0

    def minor_gcd(k):
        g = 0
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(m), k):
                sub = [[A[r][c] for c in cols] for r in rows]
                g = gcd(g, round(_det(sub)))
        return g

    def _det(M):
        k = len(M)
        if k == 1:
            return M[0][0]
        total = 0
        for j in range(k):
            sub = [row[:j] + row[j + 1 :] for row in M[1:]]
            total += (-1) ** j * M[0][j] * _det(sub)
        return total

    factors = []
    prev = 1
    for k in range(1, min(n, m) + 1):
        g = minor_gcd(k)
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors


def test_snf_empty():
    snf = smith_normal_form(np.zeros((0, 0), dtype=np.int64))
    assert snf.rank == 0
    assert snf.invariant_factors == []


def test_snf_identity():
    snf = smith_normal_form(np.diag([1, 1]).astype(np.int64))
    assert snf.rank == 2
    assert snf.invariant_factors == [1, 1]
    assert [d for d in snf.invariant_factors if d > 1] == []


def test_snf_derived_2x2():
    A = [[2, 4], [6, 8]]
    # oracle: d1 = gcd of entries = 2, d1*d2 = |det| = 8
    assert brute_invariant_factors(A) == [2, 4]
    snf = smith_normal_form(as_int_matrix(A))
    assert snf.rank == 2
    assert snf.invariant_factors == [2, 4]
    assert snf.verify(A)


def test_snf_certificates_and_unimodularity():
    rng = random.Random(7)
    for _ in range(30):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        A = np.array(
            [[rng.randint(-9, 9) for _ in range(m)] for _ in range(n)],
            dtype=np.int64,
        )
        snf = smith_normal_form(A)
        assert snf.verify(A)
        assert is_unimodular(snf.U)
        assert is_unimodular(snf.V)
        for a, b in zip(snf.invariant_factors, snf.invariant_factors[1:]):
            assert b % a == 0
        assert snf.invariant_factors == brute_invariant_factors(A)


def test_snf_huge_entries_promote_exactly():
    A = as_int_matrix([[2**70, 1], [0, 2**70]])
    snf = smith_normal_form(A)
    assert snf.verify(A)
    assert snf.invariant_factors == [1, 2**140]


def test_kernel_identity_empty():
    assert kernel_basis(np.eye(3, dtype=np.int64)).shape == (3, 0)


def test_kernel_one_relation():
    K = kernel_basis(as_int_matrix([[1, 1]]))
    assert K.shape == (2, 1)
    assert K[0, 0] + K[1, 0] == 0


def test_kernel_derived_2x():
    # solve 2x + 4y = 0 over Z: saturated basis is +-(2, -1)
    K = kernel_basis(as_int_matrix([[2, 4]]))
    assert K.shape == (2, 1)
    v = [int(K[0, 0]), int(K[1, 0])]
    assert 2 * v[0] + 4 * v[1] == 0
    assert sorted(map(abs, v)) == [1, 2]
    assert is_saturated(K)


def test_kernel_saturated_random():
    rng = random.Random(11)
    for _ in range(25):
        n, m = rng.randint(1, 6), rng.randint(1, 7)
        A = as_int_matrix([[rng.randint(-4, 4) for _ in range(m)] for _ in range(n)])
        K = kernel_basis(A)
        prod = mat_mul(A, K)
        assert not np.any(prod)
        assert is_saturated(K)
        assert rank_z(A) + K.shape[1] == m


def test_cokernel_trivial_examples():
    inv = cokernel_invariants(as_int_matrix(np.diag([2, 3])))
    assert inv == AbelianInvariants(0, [6])
    inv = cokernel_invariants(np.zeros((2, 0), dtype=np.int64))
    assert inv == AbelianInvariants(2, [])


def test_cokernel_derived_example():
    inv = cokernel_invariants(as_int_matrix([[2, 0], [0, 1], [0, 0]]))
    assert inv == AbelianInvariants(1, [2])


def test_cokernel_unimodular_invariance_seeded():
    rng = random.Random(2024)
    for _ in range(20):
        n, m = rng.randint(1, 12), rng.randint(1, 12)
        A = as_int_matrix(
            [[rng.randint(-5, 5) for _ in range(m)] for _ in range(n)]
        )
        P = unimodular_from_ops(n, rng)
        Q = unimodular_from_ops(m, rng)
        B = mat_mul(mat_mul(P, A), Q)
        assert cokernel_invariants(A) == cokernel_invariants(B)


def test_solve_in_lattice_identity():
    x = solve_in_lattice(np.eye(3, dtype=np.int64), [5, -2, 7])
    assert list(map(int, x)) == [5, -2, 7]


def test_solve_in_lattice_basic():
    B = as_int_matrix([[2], [-1]])
    x = solve_in_lattice(B, [4, -2])
    assert list(map(int, x)) == [2]
    assert solve_in_lattice(B, [1, 0]) is None


def test_solver_batch():
    rng = random.Random(3)
    B = as_int_matrix([[2, 1], [0, 3], [1, 1]])
    X = as_int_matrix([[rng.randint(-3, 3) for _ in range(4)] for _ in range(2)])
    V = mat_mul(B, X)
    solver = LatticeSolver(B)
    got = solver.solve_many(V)
    assert np.array_equal(got, X)
    assert solver.solve_many(as_int_matrix([[1], [0], [0]])) is None


def test_hermite_shape_and_transform():
    A = as_int_matrix([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    H, V, pivots = hermite_normal_form(A)
    assert np.array_equal(mat_mul(A, V), H)
    assert is_unimodular(V)
    rows = [r for r, _ in pivots]
    assert rows == sorted(rows)
    for r, c in pivots:
        assert H[r, c] > 0


@settings(max_examples=60, deadline=None)
@given(
    st.integers(1, 5),
    st.integers(1, 5),
    st.data(),
)
def test_snf_properties_hypothesis(n, m, data):
    entries = data.draw(
        st.lists(st.integers(-30, 30), min_size=n * m, max_size=n * m)
    )
    A = as_int_matrix(np.array(entries, dtype=object).reshape(n, m))
    snf = smith_normal_form(A)
    assert snf.verify(A)
    # rank + nullity
    assert snf.rank + kernel_basis(A).shape[1] == m
    for a, b in zip(snf.invariant_factors, snf.invariant_factors[1:]):
        assert b % a == 0


def test_invariants_from_primary_parts():
    inv = invariants_from_primary_parts(1, {2: [1, 2], 3: [1]})
    assert inv == AbelianInvariants(1, [2, 12])
    assert invariants_from_primary_parts(0, {}) == AbelianInvariants(0, [])


def test_abelian_invariants_validation():
    with pytest.raises(ValueError):
        AbelianInvariants(0, [4, 2])
    with pytest.raises(ValueError):
        AbelianInvariants(0, [1])
    assert str(AbelianInvariants(2, [2, 4])) == "Z^2 + Z/2 + Z/4"
    assert str(AbelianInvariants(0, [])) == "0"
