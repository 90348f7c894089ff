from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ortholab.errors import ValidationError
from ortholab.ortho import touching_hats
from ortholab.pl import (
    PLFunc,
    PPoly,
    hat,
    is_support_disjoint,
    pl_abs,
    pl_add,
    pl_is_disjoint,
    pl_join,
    pl_meet,
    pl_mul,
    pl_neg,
    pl_pos,
    pl_scale,
    pp_add,
    pp_eq,
    pp_eval,
    pp_mul,
    support,
)

from conftest import pl_funcs, rats, unit_points

H = Fraction(1, 2)
GRID = [Fraction(k, 99) for k in range(100)]
t = PLFunc.identity()
one_minus_t = PLFunc.from_points([(0, 1), (1, 0)])


def probe_points(*fs):
    pts = set(GRID)
    for f in fs:
        pts.update(f.breakpoints)
    return sorted(pts)


def test_canonical_form():
    f = PLFunc([0, Fraction(1, 3), 1], [0, Fraction(1, 3), 1])
    assert f.breakpoints == (0, 1)
    assert f == t
    with pytest.raises(ValidationError):
        PLFunc([0, H], [0, 1])
    with pytest.raises(ValidationError):
        PLFunc([0, H, H, 1], [0, 1, 1, 0])


def test_add_scale_examples():
    f = PLFunc.from_points([(0, 0), (H, 1), (1, 3)])
    assert pl_add(f, pl_scale(-1, f)).is_zero()
    assert pl_scale(0, f).is_zero()
    assert pl_add(t, one_minus_t) == PLFunc.constant(1)


def test_join_example():
    j = pl_join(t, one_minus_t)
    assert j.points() == [(0, 1), (H, H), (1, 1)]
    for s in GRID:
        assert j(s) == max(s, 1 - s)
    assert pl_join(t, t) == t


def test_abs_example():
    f = PLFunc.from_points([(0, -1), (1, 1)])
    assert pl_abs(f).points() == [(0, 1), (H, 0), (1, 1)]


def test_disjoint_examples():
    f, g = touching_hats()
    assert pl_is_disjoint(f, g)
    assert not is_support_disjoint(f, g)
    assert not pl_is_disjoint(t, one_minus_t)
    assert pl_is_disjoint(t, PLFunc.zero())
    assert pl_is_disjoint(PLFunc.zero(), PLFunc.zero())


def test_support_examples():
    f, _ = touching_hats()
    assert support(f) == [(0, H)]
    assert support(PLFunc.zero()) == []
    assert support(PLFunc.from_points([(0, -1), (1, 1)])) == [(0, 1)]
    two = pl_add(hat(Fraction(1, 8), Fraction(1, 8)), hat(Fraction(7, 8), Fraction(1, 8)))
    assert support(two) == [(0, Fraction(1, 4)), (Fraction(3, 4), 1)]


def test_pl_mul_examples():
    sq = pl_mul(t, t)
    assert sq.breakpoints == (0, 1) and sq.pieces == ((0, 0, 1),)
    f, g = touching_hats()
    assert pl_mul(f, g).is_zero()
    assert pp_eval(pl_mul(t, one_minus_t), H) == Fraction(1, 4)


def test_ppoly_continuity_checked():
    with pytest.raises(ValidationError):
        PPoly([0, H, 1], [[0], [1]])
    p = PPoly([0, H, 1], [[0, 1], [0, 1]])
    assert p.breakpoints == (0, 1)


@given(pl_funcs(), pl_funcs())
def test_lattice_ops_pointwise(f, g):
    j, m = pl_join(f, g), pl_meet(f, g)
    a = pl_abs(f)
    for s in probe_points(f, g, j, m):
        assert j(s) == max(f(s), g(s))
        assert m(s) == min(f(s), g(s))
        assert a(s) == abs(f(s))
    assert pl_add(pl_pos(f), pl_neg(f)) == a
    assert pl_add(pl_pos(f), pl_scale(-1, pl_neg(f))) == f
    assert pl_add(j, m) == pl_add(f, g)


@given(pl_funcs(), pl_funcs())
def test_disjointness_matches_definition(f, g):
    # definition: |f| ∧ |g| is the zero function
    assert pl_is_disjoint(f, g) == pl_meet(pl_abs(f), pl_abs(g)).is_zero()
    if is_support_disjoint(f, g):
        assert pl_is_disjoint(f, g)


@given(unit_points, st.fractions(min_value=Fraction(1, 24), max_value=Fraction(1, 2), max_denominator=24))
def test_hat_support_and_peak(c, r):
    f = hat(c, r)
    assert f(c) == 1 and f.is_positive()
    assert support(f) == [(max(c - r, 0), min(c + r, 1))]


@given(st.lists(pl_funcs(max_breaks=3), min_size=1, max_size=4), unit_points)
def test_product_is_pointwise(fs, s):
    h = pl_mul(*fs)
    expected = Fraction(1)
    for f in fs:
        expected *= f(s)
    assert pp_eval(h, s) == expected
    assert h.degree <= len(fs)


@given(pl_funcs(3), pl_funcs(3), pl_funcs(3))
def test_ppoly_ring_laws(f, g, k):
    a, b, c = pl_mul(f), pl_mul(g), pl_mul(k)
    assert pp_eq(pp_mul(a, pp_add(b, c)), pp_add(pp_mul(a, b), pp_mul(a, c)))
    assert pp_eq(pp_mul(a, b), pp_mul(b, a))
    assert pp_eq(pl_mul(f, g), pp_mul(a, b))


@given(pl_funcs(), rats)
def test_scale_pointwise(f, c):
    g = pl_scale(c, f)
    for s in f.breakpoints:
        assert g(s) == c * f(s)
