import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from abext.linalg import (
    DimensionError,
    IntMatrix,
    det,
    hnf,
    inverse_unimodular,
    is_unimodular,
    kernel_basis,
    kron,
    lattice_contains,
    snf,
    solve_integer,
    unvec,
    vec,
)


def matrices(max_dim=5, bound=20):
    return st.integers(0, max_dim).flatmap(
        lambda r: st.integers(0, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=r, max_size=r
            ).map(lambda rows: IntMatrix(rows, cols=c))
        )
    )


def leibniz_det(M):
    n = M.rows
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        total += (-1) ** inv * math.prod(M[i, perm[i]] for i in range(n))
    return total


def minors_gcd(M, k):
    g = 0
    for rows in itertools.combinations(range(M.rows), k):
        for cols in itertools.combinations(range(M.cols), k):
            g = math.gcd(g, det(M.select_rows(rows).select_columns(cols)))
    return g


# -- basic shapes ---------------------------------------------------------


def test_empty_shapes():
    assert IntMatrix([], cols=3).shape == (0, 3)
    assert IntMatrix.zeros(2, 0).shape == (2, 0)
    assert (IntMatrix.zeros(2, 0) @ IntMatrix([], cols=3)).is_zero()


def test_ragged_rejected():
    with pytest.raises(DimensionError):
        IntMatrix([[1, 2], [3]])


def test_vec_kron_identity():
    L = IntMatrix([[1, 2], [0, -1], [3, 1]])
    X = IntMatrix([[1, 0, 2], [4, -1, 1]])
    R = IntMatrix([[2, 1], [0, 1], [1, 5]])
    assert vec(L @ X @ R) == kron(L, R.T).apply(vec(X))
    assert unvec(vec(X), 2, 3) == X


# -- Hermite form -----------------------------------------------------------


def test_hnf_row_example():
    res = hnf(IntMatrix([[4, 6]]))
    assert res.H == IntMatrix([[2, 0]])
    assert IntMatrix([[4, 6]]) @ res.U == res.H


def check_hnf(M):
    res = hnf(M)
    H, U = res.H, res.U
    assert M @ U == H
    assert is_unimodular(U)
    pivots = []
    for j in range(H.cols):
        col = H.col(j)
        nz = [i for i, x in enumerate(col) if x]
        if not nz:
            assert j >= res.rank
            continue
        assert j < res.rank
        pivots.append(nz[0])
        assert col[nz[0]] > 0
    assert pivots == sorted(pivots) and len(set(pivots)) == len(pivots)
    for k, r in enumerate(pivots):
        for j in range(k):
            assert 0 <= H[r, j] < H[r, k]


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_hnf_properties(M):
    check_hnf(M)


@given(matrices(4, 9), st.data())
@settings(max_examples=60, deadline=None)
def test_hnf_depends_only_on_lattice(M, data):
    # append an integer combination of existing columns
    if M.cols == 0:
        return
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=M.cols, max_size=M.cols))
    extra = IntMatrix.from_columns([M.apply(coeffs)], M.rows)
    H1 = hnf(M).H
    H2 = hnf(M.hstack(extra)).H
    assert H2.select_columns(range(H1.cols)) == H1


# -- Smith form -------------------------------------------------------------


def test_snf_example():
    M = IntMatrix([[2, 4], [6, 8]])
    res = snf(M)
    assert res.diagonal == [2, 4]
    assert res.U @ M @ res.V == res.D


def check_snf(M):
    res = snf(M)
    D = res.D
    assert res.U @ M @ res.V == D
    assert is_unimodular(res.U) and is_unimodular(res.V)
    assert res.U @ res.U_inv == IntMatrix.identity(M.rows)
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j:
                assert D[i, j] == 0
    d = res.diagonal
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b == 0) or (a != 0 and b % a == 0)
    return d


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_snf_properties(M):
    check_snf(M)


@given(matrices(3, 12))
@settings(max_examples=60, deadline=None)
def test_snf_matches_determinantal_divisors(M):
    # d_1 ... d_k == gcd of k x k minors
    d = snf(M).diagonal
    prod = 1
    for k in range(1, min(M.shape) + 1):
        prod *= d[k - 1]
        assert prod == minors_gcd(M, k)


# -- determinants and inverses ----------------------------------------------


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
@settings(max_examples=100, deadline=None)
def test_det_matches_leibniz(rows):
    M = IntMatrix(rows)
    assert det(M) == leibniz_det(M)


def test_inverse_unimodular():
    U = IntMatrix([[2, 1], [1, 1]])
    assert U @ inverse_unimodular(U) == IntMatrix.identity(2)
    with pytest.raises(ValueError):
        inverse_unimodular(IntMatrix([[2, 0], [0, 1]]))


# -- solving ----------------------------------------------------------------


def test_bezout():
    x = solve_integer(IntMatrix([[2, 3]]), [1])
    assert 2 * x[0] + 3 * x[1] == 1
    assert solve_integer(IntMatrix([[2, 4]]), [1]) is None


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionError):
        solve_integer(IntMatrix([[1, 2]]), [1, 2])


def test_kernel_example():
    K = kernel_basis(IntMatrix([[1, 1]]))
    assert K.shape == (2, 1)
    assert set(K.col(0)) == {1, -1}


@given(matrices(4, 6), st.data())
@settings(max_examples=100, deadline=None)
def test_solve_recovers_lattice_points(M, data):
    x = data.draw(st.lists(st.integers(-4, 4), min_size=M.cols, max_size=M.cols))
    b = M.apply(x)
    y = solve_integer(M, b)
    assert y is not None and M.apply(y) == b


@given(matrices(3, 4))
@settings(max_examples=60, deadline=None)
def test_solve_agrees_with_brute_force(M):
    # small right-hand sides: membership against an exhaustive box search
    if M.cols > 3:
        return
    box = range(-6, 7)
    reachable = {tuple(M.apply(x)) for x in itertools.product(box, repeat=M.cols)}
    for b in itertools.product(range(-2, 3), repeat=M.rows):
        y = solve_integer(M, list(b))
        if y is not None:
            assert M.apply(y) == list(b)
        elif M.rows:
            assert b not in reachable


@given(matrices(5, 10))
@settings(max_examples=100, deadline=None)
def test_kernel_basis(M):
    K = kernel_basis(M)
    assert (M @ K).is_zero()
    assert K.cols == M.cols - hnf(M).rank
    # saturated: any integer kernel vector is in the span
    if M.cols:
        res = hnf(M)
        for j in range(res.rank, M.cols):
            assert lattice_contains(K, IntMatrix.from_columns([res.U.col(j)], M.cols))


def test_big_entries_exact():
    M = IntMatrix([[10**30 + 7, 3 * 10**29], [2, 1]])
    res = snf(M)
    assert res.U @ M @ res.V == res.D
    assert math.prod(res.diagonal) == abs(det(M))
