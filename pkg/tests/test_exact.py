from fractions import Fraction as F

from hypothesis import given, strategies as st

from railstick import exact

rats = st.fractions(min_value=-8, max_value=8, max_denominator=16)
pt2 = st.tuples(rats, rats)
pt3 = st.tuples(rats, rats, rats)


def test_cross2_orientation():
    assert exact.cross2((F(1), F(0)), (F(0), F(1))) == 1
    assert exact.orient2((F(0), F(0)), (F(1), F(0)), (F(0), F(1))) > 0


def test_seg_intersect2_basic():
    hit = exact.seg_intersect2((F(0), F(0)), (F(2), F(2)),
                               (F(0), F(2)), (F(2), F(0)))
    assert hit is not None
    t, u = hit
    assert exact.lerp2((F(0), F(0)), (F(2), F(2)), t) == (F(1), F(1))
    assert exact.lerp2((F(0), F(2)), (F(2), F(0)), u) == (F(1), F(1))


def test_seg_intersect2_parallel_misses():
    assert exact.seg_intersect2((F(0), F(0)), (F(1), F(0)),
                                (F(0), F(1)), (F(1), F(1))) is None


@given(pt2, pt2, pt2, pt2)
def test_seg_intersect2_symmetric(a, b, c, d):
    h1 = exact.seg_intersect2(a, b, c, d)
    h2 = exact.seg_intersect2(c, d, a, b)
    assert (h1 is None) == (h2 is None)
    if h1 is not None:
        assert (h1[0], h1[1]) == (h2[1], h2[0])


@given(pt3, pt3)
def test_collinear3_lerp(a, b):
    # any point on the segment is collinear with its endpoints
    assert exact.collinear3(a, b, exact.lerp3(a, b, F(1, 3)))


def test_rational_sqrt_lower_bounds():
    for x in (F(2), F(5, 3), F(49), F(1, 4)):
        r = exact.rational_sqrt_lower(x)
        assert r * r <= x


@given(pt2, pt2)
def test_angle_less_antisymmetric(a, b):
    if a == (0, 0) or b == (0, 0):
        return
    same_dir = (exact.cross2(a, b) == 0 and exact.dot2(a, b) > 0)
    if not same_dir:
        assert exact.angle_less(a, b) != exact.angle_less(b, a)
