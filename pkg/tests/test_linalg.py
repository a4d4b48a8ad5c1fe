import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from syzkit import linalg


def test_rref_identity_f5():
    ident = linalg.identity(2, 5)
    r, pivots, rk = linalg.rref(ident, 5)
    assert np.array_equal(r, ident)
    assert pivots == [0, 1]
    assert rk == 2


def test_rref_zero_matrix():
    z = linalg.zeros(3, 4, 7)
    r, pivots, rk = linalg.rref(z, 7)
    assert np.array_equal(r, z)
    assert pivots == []
    assert rk == 0


def test_rref_rank_one_f5():
    # hand row reduction: R2 -= 2*R1
    m = linalg.as_matrix([[1, 2], [2, 4]], 5)
    r, pivots, rk = linalg.rref(m, 5)
    assert np.array_equal(r, linalg.as_matrix([[1, 2], [0, 0]], 5))
    assert pivots == [0]
    assert rk == 1


def test_kernel_identity_empty():
    k = linalg.kernel_basis(linalg.identity(3, 3), 3)
    assert k.shape == (3, 0)


def test_kernel_zero_map():
    k = linalg.kernel_basis(linalg.zeros(2, 3, 5), 5)
    assert np.array_equal(k, linalg.identity(3, 5))


def test_kernel_sum_f2():
    # solve x + y = 0 over F_2
    k = linalg.kernel_basis(linalg.as_matrix([[1, 1]], 2), 2)
    assert k.shape == (2, 1)
    assert np.array_equal(k[:, 0], np.array([1, 1]))


def test_solve_identity():
    b = np.array([2, 3, 1])
    v = linalg.solve(linalg.identity(3, 5), b, 5)
    assert np.array_equal(v, b)


def test_solve_zero_matrix_inconsistent():
    assert linalg.solve(linalg.zeros(2, 2, 3), np.array([1, 0]), 3) is None


def test_solve_scalar_f5():
    # 2 * 4 = 8 = 3 mod 5
    v = linalg.solve(linalg.as_matrix([[2]], 5), np.array([3]), 5)
    assert v is not None and v[0] == 4


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        linalg.solve(linalg.identity(2, 5), np.array([1, 2, 3]), 5)


def test_complement_full_space():
    c = linalg.coset_complement(linalg.identity(3, 2), 3, 2)
    assert c.shape == (3, 0)


def test_complement_of_zero():
    c = linalg.coset_complement(linalg.zeros(3, 0, 5), 3, 5)
    assert np.array_equal(c, linalg.identity(3, 5))


def test_complement_of_diagonal_line_f2():
    # rref pivot on coordinate 0, complement is e_1
    sub = linalg.as_matrix([[1], [1]], 2)
    c = linalg.coset_complement(sub, 2, 2)
    assert c.shape == (2, 1)
    assert np.array_equal(c[:, 0], np.array([0, 1]))


def test_quotient_projection_kills_span():
    span = linalg.as_matrix([[1, 0], [1, 1], [0, 1]], 3)
    idx, proj = linalg.quotient_projection(span, 3, 3)
    assert len(idx) == 1
    assert np.array_equal(linalg.matmul(proj, span, 3), linalg.zeros(1, 2, 3))
    # identity on the chosen basis coordinate
    e = linalg.zeros(3, 1, 3)
    e[idx[0], 0] = 1
    assert linalg.matvec(proj, e[:, 0], 3)[0] == 1


def test_extend_basis_picks_new_directions():
    span = linalg.as_matrix([[1], [0], [0]], 5)
    cand = linalg.as_matrix([[2, 0, 1], [0, 0, 1], [0, 0, 0]], 5)
    chosen = linalg.extend_basis(span, cand, 5)
    assert chosen == [2]


small_primes = st.sampled_from([2, 3, 5, 7])


@st.composite
def matrix_and_prime(draw):
    p = draw(small_primes)
    rows = draw(st.integers(0, 6))
    cols = draw(st.integers(0, 6))
    entries = draw(
        st.lists(st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols)
    )
    return np.array(entries, dtype=np.int64).reshape(rows, cols) % p, p


@settings(deadline=None, max_examples=60)
@given(matrix_and_prime())
def test_rref_idempotent(mp):
    m, p = mp
    r1, piv1, _ = linalg.rref(m, p)
    r2, piv2, _ = linalg.rref(r1, p)
    assert np.array_equal(r1, r2)
    assert piv1 == piv2


@settings(deadline=None, max_examples=60)
@given(matrix_and_prime())
def test_rank_nullity(mp):
    m, p = mp
    k = linalg.kernel_basis(m, p)
    assert linalg.rank(m, p) + k.shape[1] == m.shape[1]
    if m.shape[0] and k.shape[1]:
        assert not linalg.matmul(m, k, p).any()


@settings(deadline=None, max_examples=60)
@given(matrix_and_prime(), st.integers(0, 10**6))
def test_solve_exact_when_consistent(mp, seed):
    m, p = mp
    if m.shape[1] == 0:
        return
    rng = np.random.default_rng(seed)
    x = rng.integers(0, p, size=m.shape[1])
    b = (m.astype(np.int64) @ x) % p
    v = linalg.solve(m, b, p)
    assert v is not None
    assert np.array_equal((m.astype(np.int64) @ v) % p, b)


@settings(deadline=None, max_examples=40)
@given(matrix_and_prime())
def test_complement_dimension(mp):
    m, p = mp
    c = linalg.coset_complement(m, m.shape[0], p)
    assert c.shape[1] == m.shape[0] - linalg.rank(m, p)
