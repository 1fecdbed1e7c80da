import pytest
from hypothesis import given, settings, strategies as st

from blx.oracle import (
    InfiniteMultiplicityError,
    fiber_count_plane,
    local_intersection_multiplicity,
    projection_fiber_count,
    truncated_local_dimension,
    vanishes_on,
)
from blx.polycore import MPoly, parse_poly, substitute

from conftest import plane

PAIRS = [
    ("t1", "t2", 1),
    ("t2", "t2 - t1^2", 2),
    ("t2^2 - t1^3", "t1", 2),
    ("t2 - t1^2", "t1*t2", 3),
    ("t2^2 - t1^3", "t2", 3),
    ("t2 - t1^4", "t2", 4),
    ("(t2 - t1^2)*(t2 + t1^2)", "t2", 4),
    ("t2^2 - t1^3", "t1*t2", 5),
    ("t2^2 - t1^3", "t2^2 - 2*t1^3", 6),
    ("t1*t2", "t1 + t2", 2),
]


@pytest.mark.parametrize("f, g, m", PAIRS)
def test_textbook_pairs(f, g, m):
    f, g = parse_poly(f), parse_poly(g)
    assert local_intersection_multiplicity(f, g) == m
    assert local_intersection_multiplicity(g, f) == m
    assert truncated_local_dimension(f, g) == m


@given(st.sampled_from(PAIRS), st.integers(-5, 5), st.integers(-5, 5))
@settings(max_examples=30, deadline=None)
def test_translation_invariance(pair, a, b):
    f, g, m = pair
    shift = {"t1": MPoly.var("t1") - a, "t2": MPoly.var("t2") - b}
    f2 = substitute(parse_poly(f), shift)
    g2 = substitute(parse_poly(g), shift)
    assert local_intersection_multiplicity(f2, g2, (a, b)) == m


def test_not_through_point():
    assert local_intersection_multiplicity(parse_poly("t1 - 1"), parse_poly("t2")) == 0


def test_common_component():
    f = parse_poly("t1*(t2 - t1)")
    g = parse_poly("t1*(t2 + t1)")
    with pytest.raises(InfiniteMultiplicityError):
        local_intersection_multiplicity(f, g)
    with pytest.raises(InfiniteMultiplicityError):
        truncated_local_dimension(f, g, max_order=12)


@pytest.mark.parametrize("comps, expected", [
    (("t2*t3", "t1*t3", "t1*t2"), 1),
    (("t1^2", "t2^2", "t3^2"), 4),
    (("t1^3 + t2*t3^2", "t2^3 - t1*t3^2", "t3^3 + t1*t2*t3"), 9),
])
def test_fiber_counts(comps, expected):
    assert fiber_count_plane(plane(*comps)) == expected


def test_projection_of_quadric(quadric):
    assert vanishes_on(parse_poly("u1*u2 - u4^2"), quadric.comps)
    assert projection_fiber_count(quadric.comps) == 4
