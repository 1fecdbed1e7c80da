import pytest
from hypothesis import given, settings, strategies as st

from blx.baselocus import (
    CertificationError,
    InconsistentDataError,
    analyze_surface,
    build_K,
    build_W,
    certified_k_content,
    degree_formula_report,
    mult_base_locus,
    point_curve_multiplicity,
    tangent_cone,
    w_content,
)
from blx.oracle import base_point_multiplicity
from blx.polycore import degree_in_block, parse_poly
from blx.transform import (
    HypothesisError,
    ProjTransform,
    TransformError,
    normalize_hypotheses,
    sample_transform,
)

from conftest import surface

CUBIC = ("t1^3 - t1*t2*t3 - t3^3", "t2*t3^2 - t1^3 - 5*t3^3",
         "t1^3 - t2^2*t3 - t1^2*t3 + 4*t3^3", "t1^3 - t2*t3^2 - t3^3")


@pytest.fixture
def one_point_normal(one_point):
    return normalize_hypotheses(one_point).obj


def test_one_point_content(one_point_normal):
    rep = mult_base_locus(one_point_normal)
    assert rep.mult_total == 4
    assert rep.content == parse_poly("(t1 - t2)^4")
    assert rep.primpart_degree == 5
    assert rep.genericity.passed
    assert [(bp.point, bp.multiplicity, bp.curve_multiplicity) for bp in rep.rational_points] == [((-1, -1, 1), 4, 2)]
    assert rep.residual_degree == 0


def test_w_and_k_agree(one_point_normal):
    k = mult_base_locus(one_point_normal, path="K", validate=True)
    w = mult_base_locus(one_point_normal, path="W", validate=True)
    assert k.content == w.content


def test_points_in_input_coordinates(one_point):
    an = analyze_surface(one_point)
    assert [(bp.point, bp.multiplicity) for bp in an.points_original] == [((0, 0, 1), 4)]


def test_local_data(one_point):
    assert point_curve_multiplicity(one_point, (0, 0, 1)) == 2
    cone = tangent_cone(one_point, (0, 0, 1))
    assert cone == parse_poly("t1^2*x2 + t1*t2*x3 + t2^2*x1 + t2^2*x4")
    with pytest.raises(ValueError):
        point_curve_multiplicity(one_point, (1, 0, 0))


def test_oracle_agrees_at_base_point(one_point):
    assert base_point_multiplicity(one_point.comps, (0, 0, 1)).value == 4
    assert base_point_multiplicity(one_point.comps, (0, 0, 1), method="truncated").value == 4


@given(st.integers(0, 1000))
@settings(max_examples=8, deadline=None)
def test_w_content_invariant_under_left_transform(seed):
    P = normalize_hypotheses(surface("t2^2*t3 + t1^3", "t1^2*t3 + t2^3", "t1*t2*t3", "t2^2*t3")).obj
    L = sample_transform(3, seed)
    assert w_content(P, L)[0].content == parse_poly("(t1 - t2)^4")


def test_k_with_identity_is_caught_by_certificate(one_point_normal):
    # L = identity gives gcd(p3, p4) != 1 here; the certificate must refuse it
    with pytest.raises(CertificationError):
        certified_k_content(one_point_normal, ProjTransform.identity(3))


def test_k_rejects_non_star(one_point_normal):
    L = ProjTransform.from_rows([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1]])
    with pytest.raises(TransformError):
        build_K(one_point_normal, L)


def test_degree_split_is_recorded(one_point_normal):
    rep = mult_base_locus(one_point_normal, attribute=False)
    names = [c.name for c in rep.genericity.conditions]
    assert "content degree + primpart degree = deg(P)^2" in names
    assert "content agrees with an independent L'" in names


def test_requires_normalized_input(one_point):
    with pytest.raises(HypothesisError):
        mult_base_locus(one_point)


def test_no_base_points():
    P = surface("t1", "t2", "t3", "t1 + t2 + t3")
    rep = analyze_surface(P).report
    assert rep.mult_total == 0 and rep.rational_points == ()


def test_cubic_degree_formula():
    P = surface(*CUBIC)
    an = analyze_surface(P)
    assert an.report.mult_total == 3
    assert an.report.primpart_degree == 6
    rep = degree_formula_report(an.normalized, degmap=1, report=an.report)
    assert rep.surface_degree == 6 and rep.passed


def test_degree_formula_one_point(one_point_normal):
    rep = degree_formula_report(one_point_normal, degmap=1)
    assert rep.surface_degree == 5
    assert rep.passed
    assert rep.mult_total == rep.degree ** 2 - rep.surface_degree * rep.degmap


def test_degree_formula_inconsistent(one_point_normal):
    with pytest.raises(InconsistentDataError):
        degree_formula_report(one_point_normal, degmap=2)
    with pytest.raises(InconsistentDataError):
        degree_formula_report(one_point_normal, degmap=1, surface_degree=4)


def test_non_square_degree_forces_base_points(quadric):
    an = analyze_surface(quadric)
    rep = degree_formula_report(an.normalized, degmap=2, report=an.report)
    assert rep.surface_degree == 2 and rep.passed and rep.mult_total == 0


def test_w_polynomials_shape(one_point):
    W1, W2 = build_W(one_point)
    assert degree_in_block(W1, ("x1", "x2", "x3", "x4")) == 1
    assert degree_in_block(W2, ("y1", "y2", "y3", "y4")) == 1


def test_report_json_has_sources(one_point):
    js = analyze_surface(one_point).to_json()
    assert js["mult_total"] == 4
    for key in ("mult_total", "primpart_degree", "deg"):
        assert key in js["sources"]
