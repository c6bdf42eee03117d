"""Exact rational geometric predicates and constructions.

All predicates here are decision-exact: coordinates are Python ints or
``fractions.Fraction`` and every comparison is carried out in rational
arithmetic.  Points are plain tuples, ``(x, y)`` or ``(x, y, z)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence, Tuple

Vec2 = Tuple[Fraction, Fraction]
Vec3 = Tuple[Fraction, Fraction, Fraction]


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def v2(x, y) -> Vec2:
    return (frac(x), frac(y))


def v3(x, y, z) -> Vec3:
    return (frac(x), frac(y), frac(z))


def sub2(a: Vec2, b: Vec2) -> Vec2:
    return (a[0] - b[0], a[1] - b[1])


def sub3(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def add3(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def cross2(a: Vec2, b: Vec2):
    return a[0] * b[1] - a[1] * b[0]


def dot2(a: Vec2, b: Vec2):
    return a[0] * b[0] + a[1] * b[1]


def dot3(a: Vec3, b: Vec3):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross3(a: Vec3, b: Vec3) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def orient2(a: Vec2, b: Vec2, c: Vec2):
    """Twice the signed area of triangle abc; >0 iff ccw."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def collinear3(a: Vec3, b: Vec3, c: Vec3) -> bool:
    return cross3(sub3(b, a), sub3(c, a)) == (0, 0, 0)


def lerp2(a: Vec2, b: Vec2, t: Fraction) -> Vec2:
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def lerp3(a: Vec3, b: Vec3, t: Fraction) -> Vec3:
    return (
        a[0] + (b[0] - a[0]) * t,
        a[1] + (b[1] - a[1]) * t,
        a[2] + (b[2] - a[2]) * t,
    )


def on_segment2(p: Vec2, a: Vec2, b: Vec2) -> bool:
    """True iff p lies on the closed segment ab."""
    if orient2(a, b, p) != 0:
        return False
    return (
        min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    )


def seg_intersect2(
    a: Vec2, b: Vec2, c: Vec2, d: Vec2
) -> Optional[Tuple[Fraction, Fraction]]:
    """Parameters (s, t) of the intersection of lines ab and cd restricted
    to the closed segments, or None if the segments miss each other or are
    parallel (including collinear overlap, which callers must detect
    separately via :func:`segments_overlap2`)."""
    r = sub2(b, a)
    q = sub2(d, c)
    denom = cross2(r, q)
    if denom == 0:
        return None
    s = cross2(sub2(c, a), q) / denom
    t = cross2(sub2(c, a), r) / denom
    if 0 <= s <= 1 and 0 <= t <= 1:
        return (s, t)
    return None


def segments_overlap2(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool:
    """True iff segments ab and cd are collinear and share more than a point."""
    if orient2(a, b, c) != 0 or orient2(a, b, d) != 0:
        return False
    # project on the dominant axis of ab
    axis = 0 if abs(b[0] - a[0]) >= abs(b[1] - a[1]) else 1
    lo1, hi1 = sorted((a[axis], b[axis]))
    lo2, hi2 = sorted((c[axis], d[axis]))
    return max(lo1, lo2) < min(hi1, hi2)


def segments_intersect3(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> bool:
    """True iff closed 3D segments ab and cd share at least one point."""
    return seg_seg_dist2_3d(a, b, c, d) == 0


def point_seg_dist2_3d(p: Vec3, a: Vec3, b: Vec3):
    """Exact squared distance from p to closed segment ab."""
    ab = sub3(b, a)
    denom = dot3(ab, ab)
    if denom == 0:
        d = sub3(p, a)
        return dot3(d, d)
    t = Fraction(dot3(sub3(p, a), ab), 1) / denom
    if t < 0:
        t = Fraction(0)
    elif t > 1:
        t = Fraction(1)
    q = lerp3(a, b, t)
    d = sub3(p, q)
    return dot3(d, d)


def seg_seg_dist2_3d(a: Vec3, b: Vec3, c: Vec3, d: Vec3):
    """Exact squared distance between closed 3D segments ab and cd."""
    u = sub3(b, a)
    v = sub3(d, c)
    w = sub3(a, c)
    uu = dot3(u, u)
    vv = dot3(v, v)
    uv = dot3(u, v)
    denom = uu * vv - uv * uv
    best = None
    if denom != 0:
        # unclamped closest parameters
        uw = dot3(u, w)
        vw = dot3(v, w)
        s = Fraction(uv * vw - vv * uw, 1) / denom
        t = Fraction(uu * vw - uv * uw, 1) / denom
        if 0 <= s <= 1 and 0 <= t <= 1:
            diff = sub3(lerp3(a, b, s), lerp3(c, d, t))
            best = dot3(diff, diff)
    candidates = [
        point_seg_dist2_3d(a, c, d),
        point_seg_dist2_3d(b, c, d),
        point_seg_dist2_3d(c, a, b),
        point_seg_dist2_3d(d, a, b),
    ]
    for cand in candidates:
        if best is None or cand < best:
            best = cand
    return best


def rational_sqrt_lower(x: Fraction) -> Fraction:
    """A positive rational r with r*r <= x, within a factor 2 of sqrt(x)."""
    if x <= 0:
        raise ValueError("need a positive value")
    num, den = x.numerator, x.denominator
    # floor sqrt of num/den via integer sqrt of num*den scaled
    scale = 1 << 64
    r = Fraction(isqrt(num * den * scale * scale // 1), den * scale)
    while r * r > x:
        r /= 2
    if r == 0:  # pragma: no cover - x>0 guarantees a power of two fits
        r = Fraction(1, 2)
        while r * r > x:
            r /= 2
    return r


def angle_key(v: Vec2):
    """Sort key for exact ccw angular order of nonzero vectors, starting
    from the positive x-axis.  Usable only via cmp-style comparison:
    returns (halfplane, vector) where vectors in the same halfplane compare
    by cross product."""
    x, y = v
    if x == 0 and y == 0:
        raise ValueError("zero vector has no direction")
    half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
    return (half, v)


def angle_less(a: Vec2, b: Vec2) -> bool:
    """True iff direction a strictly precedes b going ccw from +x axis."""
    ha, _ = angle_key(a)
    hb, _ = angle_key(b)
    if ha != hb:
        return ha < hb
    c = cross2(a, b)
    if c == 0:
        return False  # same direction
    return c > 0


def sort_ccw(vectors: Sequence[Vec2]) -> list:
    """Indices of `vectors` sorted into ccw angular order from +x axis."""
    import functools

    def cmp(i: int, j: int) -> int:
        if i == j:
            return 0
        a, b = vectors[i], vectors[j]
        if angle_less(a, b):
            return -1
        if angle_less(b, a):
            return 1
        return 0

    return sorted(range(len(vectors)), key=functools.cmp_to_key(cmp))
