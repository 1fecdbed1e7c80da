import pytest

from blx.planemaps import (
    InverseError,
    NotDominantError,
    analyze_plane_map,
    build_J,
    check_J_irreducible,
    check_associated_surface,
    degmap_plane,
    formula_ratios,
    is_birational,
    mult_base_locus_plane,
    verify_inverse_parametrizes_J,
)
from blx.polycore import parse_poly
from blx.transform import normalize_hypotheses

from conftest import plane, polys


def test_cremona_report(cremona):
    an = analyze_plane_map(cremona)
    rep = an.report
    assert (rep.degree, rep.mult_total, rep.degmap, rep.birational) == (2, 3, 1, True)
    assert sorted(bp.point for bp in an.points_original) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert all(bp.multiplicity == 1 for bp in an.points_original)


def test_cremona_j_at_identity_is_reducible(cremona):
    J1, J2 = build_J(cremona)
    assert J1 == parse_poly("t2*(t3*x3 - t1*x1)")
    assert J2 == parse_poly("t1*(t3*x3 - t2*x2)")
    assert check_J_irreducible(cremona) == (False, False)


def test_cremona_j_irreducible_at_certified_L(cremona):
    S = normalize_hypotheses(cremona).obj
    rep = mult_base_locus_plane(S, attribute=False)
    assert check_J_irreducible(S, rep.certificate.L) == (True, True)


def test_cremona_inverse(cremona):
    # the Cremona map is its own inverse
    assert verify_inverse_parametrizes_J(cremona, None, polys("t2*t3", "t1*t3", "t1*t2"))
    with pytest.raises(InverseError):
        verify_inverse_parametrizes_J(cremona, None, polys("t1", "t2", "t3"))


def test_associated_surface(cremona):
    S = normalize_hypotheses(cremona).obj
    chk = check_associated_surface(S)
    assert chk.passed and chk.mult_surface == 3


def test_formula_ratios(cremona):
    S = normalize_hypotheses(cremona).obj
    assert set(formula_ratios(S, 1).values()) == {1}


def test_squaring_map():
    S = normalize_hypotheses(plane("t1^2", "t2^2", "t3^2")).obj
    assert degmap_plane(S) == 4
    assert not is_birational(S)


def test_v_and_j_agree(cremona):
    S = normalize_hypotheses(cremona).obj
    v = mult_base_locus_plane(S, path="V", validate=True, attribute=False)
    j = mult_base_locus_plane(S, path="J", validate=True, attribute=False)
    assert v.content == j.content


def test_not_dominant():
    with pytest.raises(NotDominantError):
        plane("t1^2", "t1*t2", "t2^2")
    with pytest.raises(NotDominantError):
        plane("t1", "0", "t3")


def test_linear_map_is_birational():
    an = analyze_plane_map(plane("t1 + t2", "t2 - t3", "t3 + 2*t1"))
    assert an.report.mult_total == 0 and an.report.birational


def test_json_fields(cremona):
    js = analyze_plane_map(cremona).to_json()
    assert {k: js[k] for k in ("deg", "mult", "degmap", "birational")} == {
        "deg": 2, "mult": 3, "degmap": 1, "birational": True}
    assert "degmap" in js["sources"]
