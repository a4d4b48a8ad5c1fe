from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from syzkit import polynomials as poly
from syzkit.errors import DegreeBoundError, HomogeneityError, SyzkitError
from syzkit.rings import (
    PolyRing,
    algebra_tensor,
    build_quotient,
    polynomial_extension,
    ring_from_strings,
)


def test_monomial_basis_degree_zero():
    s = PolyRing(2, ["x", "y"])
    assert s.monomial_basis(0) == [(0, 0)]


def test_monomial_basis_lex_order_two_vars():
    s = PolyRing(2, ["x", "y"])
    assert s.monomial_basis(2) == [(2, 0), (1, 1), (0, 2)]  # x^2, xy, y^2


def test_monomial_basis_counts():
    s = PolyRing(3, ["x", "y", "z"])
    assert len(s.monomial_basis(2)) == 6
    for d in range(5):
        assert len(s.monomial_basis(d)) == comb(3 + d - 1, d)


def test_monomial_basis_beyond_bound():
    s = PolyRing(2, ["x", "y"], degree_bound=3)
    with pytest.raises(DegreeBoundError):
        s.monomial_basis(4)


def test_ideal_component_examples():
    r = ring_from_strings(2, ["x", "y"], ["x^2", "y^2"])
    comp = r.ideal_component(2)
    assert comp.shape == (3, 2)
    assert np.linalg.matrix_rank(comp.astype(float)) == 2

    assert r.ideal_component(0).shape[1] == 0

    r2 = ring_from_strings(3, ["x", "y"], ["x*y"])
    comp3 = r2.ideal_component(3)  # span{x^2 y, x y^2}
    from syzkit.linalg import rank

    assert rank(comp3, 3) == 2


def test_hilbert_complete_intersection():
    r = ring_from_strings(2, ["x", "y"], ["x^2", "y^2"])
    assert r.hilbert_function(5) == [1, 2, 1, 0, 0, 0]
    assert r.is_artinian_within_bound()
    assert r.top_degree() == 2


def test_hilbert_hypersurface():
    r = ring_from_strings(3, ["x", "y"], ["x*y"])
    assert r.hilbert_function(5) == [1, 2, 2, 2, 2, 2]
    assert not r.is_artinian_within_bound()
    assert r.top_degree() is None


def test_trivial_quotient_matches_polynomial_ring():
    r = ring_from_strings(5, ["x", "y", "z"], [])
    for d in range(6):
        assert r.dim(d) == comb(3 + d - 1, d)


def test_degree_queries_above_bound_after_collapse():
    r = ring_from_strings(2, ["x", "y"], ["x^2", "y^2"], degree_bound=6)
    assert r.dim(3) == 0
    assert r.dim(100) == 0  # known zero once collapsed


def test_normal_form_examples():
    r = ring_from_strings(2, ["x", "y"], ["x^2", "y^2"])
    assert not r.normal_form(r.base.parse("x^2")).any()
    # basis monomial goes to a unit coordinate vector
    mons = r.basis_monomials(1)
    v = r.normal_form({mons[0]: 1})
    assert list(v) == [1, 0]
    # x^2 + x*y reduces to x*y
    v2 = r.normal_form(r.base.parse("x^2 + x*y"))
    assert r.format_vector(v2, 2) == "x*y"


def test_build_quotient_rejects_bad_generators():
    s = PolyRing(2, ["x", "y"])
    with pytest.raises(HomogeneityError):
        ring_from_strings(2, ["x", "y"], ["x^2 + y"])
    with pytest.raises(SyzkitError):
        build_quotient(s, [{(0, 0): 1}])


def test_algebra_tensor_hilbert_convolutions():
    r1 = ring_from_strings(2, ["x"], ["x^2"])
    r2 = ring_from_strings(2, ["y"], ["y^2"])
    t = algebra_tensor(r1, r2)
    assert t.hilbert_function(4) == [1, 2, 1, 0, 0]

    direct = ring_from_strings(2, ["x", "y"], ["x^2", "y^2"])
    assert t.hilbert_function(4) == direct.hilbert_function(4)

    r3 = ring_from_strings(2, ["y"], ["y^3"])
    t2 = algebra_tensor(r1, r3)
    assert t2.hilbert_function(4) == [1, 2, 2, 1, 0]


def test_algebra_tensor_with_field():
    r = ring_from_strings(2, ["x"], ["x^2"])
    k = ring_from_strings(2, [], [])
    t = algebra_tensor(r, k)
    assert t.hilbert_function(3) == r.hilbert_function(3)


def test_algebra_tensor_mismatch():
    with pytest.raises(SyzkitError):
        algebra_tensor(ring_from_strings(2, ["x"], []), ring_from_strings(3, ["y"], []))


def test_polynomial_extension_hilbert():
    r = ring_from_strings(2, ["x"], ["x^2"])
    e = polynomial_extension(r, 1)
    assert e.hilbert_function(4) == [1, 2, 2, 2, 2]

    s = ring_from_strings(2, ["x", "y"], [])
    e2 = polynomial_extension(s, 2)
    assert e2.vars == ("x", "y", "t1", "t2")
    assert e2.dim(2) == comb(4 + 2 - 1, 2)

    ci = ring_from_strings(2, ["x", "y"], ["x^2", "y^2"])
    e3 = polynomial_extension(ci, 1)
    assert e3.hilbert_function(3) == [1, 3, 4, 4]


def test_multiplication_commutative_associative_small():
    for params in [
        (2, ["x", "y"], ["x^2", "y^2"]),
        (3, ["x", "y"], ["x*y"]),
        (5, ["x", "y"], ["x^2 + y^2"]),
    ]:
        r = ring_from_strings(*params, degree_bound=6)
        dmax = 4
        for a in range(dmax):
            for b in range(dmax - a):
                for c in range(dmax - a - b):
                    for va in _basis_vectors(r, a):
                        for vb in _basis_vectors(r, b):
                            ab = r.multiply(va, a, vb, b)
                            ba = r.multiply(vb, b, va, a)
                            assert np.array_equal(ab, ba)
                            for vc in _basis_vectors(r, c):
                                left = r.multiply(ab, a + b, vc, c)
                                right = r.multiply(va, a, r.multiply(vb, b, vc, c), b + c)
                                assert np.array_equal(left, right)


def _basis_vectors(r, d):
    n = r.dim(d)
    out = []
    for i in range(n):
        v = np.zeros(n, dtype=np.int64)
        v[i] = 1
        out.append(v)
    return out


@settings(deadline=None, max_examples=25)
@given(st.integers(0, 10**6))
def test_normal_form_is_multiplicative(seed):
    rng = np.random.default_rng(seed)
    r = ring_from_strings(3, ["x", "y"], ["x*y"], degree_bound=8)
    a = int(rng.integers(0, 3))
    b = int(rng.integers(0, 3))
    fa = {m: int(rng.integers(0, 3)) for m in r.base.monomial_basis(a)}
    fb = {m: int(rng.integers(0, 3)) for m in r.base.monomial_basis(b)}
    fa = {m: c for m, c in fa.items() if c}
    fb = {m: c for m, c in fb.items() if c}
    lhs = r.normal_form(poly.poly_mul(fa, fb, 3), degree=a + b)
    rhs = r.multiply(
        r.normal_form(fa, degree=a), a, r.normal_form(fb, degree=b), b
    )
    assert np.array_equal(lhs, rhs)


def test_parse_format_roundtrip():
    s = PolyRing(5, ["x", "y"])
    for text in ["x^2 + 2*x*y", "3*y^3", "x + y", "0", "4*x^2*y"]:
        f = s.parse(text)
        again = s.parse(s.format(f))
        assert f == again


def test_parse_negative_coefficients():
    s = PolyRing(5, ["x", "y"])
    f = s.parse("x - y")
    assert f[(0, 1)] == 4
