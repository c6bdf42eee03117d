from hypothesis import given, strategies as st

from railstick.polynomials import LaurentPolynomial, torus_jones

polys = st.dictionaries(st.integers(-6, 6), st.integers(-9, 9), max_size=5).map(
    LaurentPolynomial.make)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


def test_torus_jones_trefoil():
    # positive trefoil: t + t^3 - t^4, stored in s = t^(1/2)
    assert torus_jones(2, 3).as_dict() == {2: 1, 6: 1, 8: -1}


def test_torus_jones_cinquefoil():
    # positive (2,5): t^2 + t^4 - t^5 + t^6 - t^7
    assert torus_jones(2, 5).as_dict() == {4: 1, 8: 1, 10: -1, 12: 1, 14: -1}
