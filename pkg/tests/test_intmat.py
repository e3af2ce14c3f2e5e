import random

import pytest
from hypothesis import given, strategies as st

from galbrauer.intmat import (
    IntMatrix,
    block_diag,
    elementary_divisors,
    hnf,
    kernel_basis,
    rank,
    snf,
    snf_with_inverse,
    solve,
)
from oracles import det, smith_diagonal

small_ints = st.integers(-9, 9)


@st.composite
def matrices(draw, max_dim=6, lo=-9, hi=9):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=m, max_size=m))
    return IntMatrix(rows)


def is_snf_diagonal(D: IntMatrix) -> bool:
    m, n = D.shape
    if any(D[i, j] for i in range(m) for j in range(n) if i != j):
        return False
    d = [D[i, i] for i in range(min(m, n))]
    if any(x < 0 for x in d):
        return False
    nz = [x for x in d if x]
    if d[: len(nz)] != nz:
        return False
    return all(b % a == 0 for a, b in zip(nz, nz[1:]))


def test_snf_example():
    dec = snf(IntMatrix([[2, 4], [6, 8]]))
    assert dec.diagonal == [2, 4]
    assert dec.U @ IntMatrix([[2, 4], [6, 8]]) @ dec.V == dec.D


@pytest.mark.parametrize("shape", [(1, 1), (2, 3), (4, 2), (3, 3)])
def test_snf_zero_matrix(shape):
    dec = snf(IntMatrix.zeros(*shape))
    assert dec.D.is_zero()
    assert dec.U == IntMatrix.identity(shape[0])
    assert dec.V == IntMatrix.identity(shape[1])


@pytest.mark.parametrize("n", [1, 2, 5])
def test_snf_identity(n):
    assert snf(IntMatrix.identity(n)).D == IntMatrix.identity(n)


@given(matrices())
def test_snf_reconstruction_and_chain(A):
    dec = snf(A)
    assert dec.U @ A @ dec.V == dec.D
    assert is_snf_diagonal(dec.D)
    assert abs(dec.U.det()) == 1 and abs(dec.V.det()) == 1


@given(matrices(max_dim=4, lo=-5, hi=5))
def test_snf_matches_determinantal_divisors(A):
    assert [d for d in snf(A).diagonal if d] == smith_diagonal(A.to_list())


@given(matrices())
def test_snf_inverse_is_inverse(A):
    dec, Ui = snf_with_inverse(A)
    assert Ui @ dec.U == IntMatrix.identity(A.nrows)


@given(matrices())
def test_dense_and_sparse_invariants_agree(A):
    assert elementary_divisors(A) == [d for d in snf(A).diagonal if d]


def test_snf_large_coefficients():
    A = IntMatrix([[10**30 + 1, 7], [3 * 10**30, 5]])
    dec = snf(A)
    assert dec.U @ A @ dec.V == dec.D
    assert dec.diagonal[1] == abs(det(A.to_list()))


def test_kernel_examples():
    K = kernel_basis(IntMatrix([[2, -2]]))
    assert K.ncols == 1 and abs(K[0, 0]) == 1 and K[0, 0] == K[1, 0]
    assert kernel_basis(IntMatrix.identity(3)).ncols == 0
    assert kernel_basis(IntMatrix([[0]])).to_list() == [[1]]


@given(matrices())
def test_kernel_rank_nullity_and_saturation(A):
    K = kernel_basis(A)
    assert (A @ K).is_zero() if K.ncols else True
    assert rank(A) + K.ncols == A.ncols
    if K.ncols:
        # saturated: the kernel basis extends to a basis, so its invariant factors are all 1
        assert all(d == 1 for d in elementary_divisors(K))


def test_solve_examples():
    assert solve(IntMatrix([[2]]), [4]) == [2]
    assert solve(IntMatrix([[2]]), [3]) is None
    assert solve(IntMatrix([[1, 1], [0, 2]]), [3, 2]) == [2, 1]


@given(matrices(max_dim=5), st.data())
def test_solve_consistent_with_snf(A, data):
    b = data.draw(st.lists(small_ints, min_size=A.nrows, max_size=A.nrows))
    x = solve(A, b)
    dec = snf(A)
    c = dec.U.apply(b)
    d = dec.diagonal + [0] * (A.nrows - len(dec.diagonal))
    solvable = all((ci == 0) if di == 0 else ci % di == 0 for ci, di in zip(c, d))
    assert (x is not None) == solvable
    if x is not None:
        assert A.apply(x) == b


def test_solve_image_vectors():
    rng = random.Random(5)
    for _ in range(50):
        A = IntMatrix([[rng.randint(-4, 4) for _ in range(3)] for _ in range(4)])
        y = [rng.randint(-3, 3) for _ in range(3)]
        assert solve(A, A.apply(y)) is not None


def _column_span_contains(A: IntMatrix, B: IntMatrix) -> bool:
    return all(solve(A, B.col(j)) is not None for j in range(B.ncols))


def test_hnf_examples():
    A = IntMatrix([[2, 4], [6, 8]])
    H, U = hnf(A)
    assert A @ U == H and abs(U.det()) == 1
    assert _column_span_contains(A, H) and _column_span_contains(H, A)
    assert hnf(IntMatrix.identity(3))[0] == IntMatrix.identity(3)
    assert hnf(IntMatrix.zeros(2, 3))[0].is_zero()


@given(matrices())
def test_hnf_properties(A):
    H, U = hnf(A)
    assert A @ U == H
    assert abs(U.det()) == 1
    # pivots: first nonzero row index strictly increases across nonzero columns
    lead = []
    for j in range(H.ncols):
        col = H.col(j)
        nz = [i for i, v in enumerate(col) if v]
        if not nz:
            assert all(not any(H.col(k)) for k in range(j, H.ncols))
            break
        lead.append(nz[0])
        assert col[nz[0]] > 0
    assert lead == sorted(set(lead))


def test_block_diag_and_equality():
    A, B = IntMatrix([[1, 2]]), IntMatrix([[3], [4]])
    assert block_diag([A, B]).to_list() == [[1, 2, 0], [0, 0, 3], [0, 0, 4]]
    assert IntMatrix([[0, 0]]) == IntMatrix.zeros(1, 2)
    assert IntMatrix([[1]]) != IntMatrix([[1, 0]])
