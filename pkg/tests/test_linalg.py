import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superalg_centers import linalg
from superalg_centers.field import make_field


def random_matrix(ctx, rows, cols, seed):
    rng = np.random.default_rng(seed)
    return rng.integers(0, ctx.q, size=(rows, cols)).astype(np.int64)


def test_small_nullspace_over_gf3():
    ctx = make_field(3)
    K = linalg.nullspace(ctx, [[1, 1], [2, 2]])
    assert K.tolist() == [[1, 2]]


@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 10_000), st.sampled_from([(3, 1), (5, 1), (3, 2)]))
@settings(max_examples=60, deadline=None)
def test_rank_nullity(rows, cols, seed, pe):
    ctx = make_field(*pe)
    M = random_matrix(ctx, rows, cols, seed)
    K = linalg.nullspace(ctx, M)
    assert linalg.rank(ctx, M) + len(K) == cols
    for v in K:
        assert not linalg.matvec(ctx, M, v).any()


@pytest.mark.parametrize("pe", [(3, 1), (3, 3), (5, 2)])
def test_inverse_and_solve(pe):
    ctx = make_field(*pe)
    for seed in range(20):
        A = random_matrix(ctx, 4, 4, seed)
        if linalg.rank(ctx, A) < 4:
            with pytest.raises(ZeroDivisionError):
                linalg.inverse(ctx, A)
            continue
        Ai = linalg.inverse(ctx, A)
        assert np.array_equal(linalg.matmul(ctx, A, Ai), linalg.identity(4))
        b = random_matrix(ctx, 1, 4, seed + 100).ravel()
        x = linalg.solve(ctx, A, b)
        assert np.array_equal(linalg.matvec(ctx, A, x), b)


def test_solve_inconsistent():
    ctx = make_field(5)
    assert linalg.solve(ctx, [[1, 1], [2, 2]], [1, 3]) is None


def test_kron_mixed_product():
    ctx = make_field(3, 2)
    A, B, C, D = (random_matrix(ctx, 2, 2, s) for s in range(4))
    lhs = linalg.matmul(ctx, linalg.kron(ctx, A, B), linalg.kron(ctx, C, D))
    rhs = linalg.kron(ctx, linalg.matmul(ctx, A, C), linalg.matmul(ctx, B, D))
    assert np.array_equal(lhs, rhs)


def test_span_incremental_matches_rank():
    ctx = make_field(5)
    M = random_matrix(ctx, 8, 6, 3)
    M[5] = ctx.vadd(M[0], M[1])
    span = linalg.Span(ctx, 6)
    for row in M:
        span.add(row)
    assert len(span) == linalg.rank(ctx, M)
    assert span.contains(ctx.vsub(M[2], M[3]))
    assert span.coordinates(M[4]) is not None


def test_matpow_matches_repeated_product():
    ctx = make_field(3, 2)
    A = random_matrix(ctx, 3, 3, 9)
    P = linalg.identity(3)
    for _ in range(7):
        P = linalg.matmul(ctx, P, A)
    assert np.array_equal(linalg.matpow(ctx, A, 7), P)
