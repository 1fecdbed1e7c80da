import io
import json

import pytest

from blx.cli import InputError, parse_input, run


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_input_multiline_and_comments():
    data = parse_input("# header\nP = [t1^2,  # first\n  t2^2, t3^2, t1*t2]\nS = [t1, t2, t3]\n")
    assert len(data["P"]) == 4 and len(data["S"]) == 3


@pytest.mark.parametrize("text", ["Q = [t1]", "P = t1, t2", "P = [t1]\nP = [t2]", "# nothing"])
def test_parse_input_errors(text):
    with pytest.raises(InputError):
        parse_input(text)


def test_mult_json(fixtures_dir):
    code, out, err = invoke("mult", str(fixtures_dir / "one_point.poly"), "--seed", "0")
    assert code == 0 and err == ""
    js = json.loads(out)
    assert js["schema"] == "blx/1"
    assert js["mult_total"] == 4
    assert "mult_total" in js["sources"]


def test_mult_is_byte_stable(fixtures_dir):
    a = invoke("mult", str(fixtures_dir / "one_point.poly"))
    b = invoke("mult", str(fixtures_dir / "one_point.poly"))
    assert a == b


def test_mult_text_and_degmap(fixtures_dir):
    code, out, _ = invoke("mult", str(fixtures_dir / "one_point.poly"), "--degmap", "1", "--format", "text")
    assert code == 0
    assert "degree_formula.surface_degree: 5" in out.splitlines()


def test_mult_w_path(fixtures_dir):
    code, out, _ = invoke("mult", str(fixtures_dir / "one_point.poly"), "--path", "w", "--validate")
    assert code == 0 and json.loads(out)["path"] == "W"


def test_planemap(fixtures_dir):
    code, out, _ = invoke("planemap", str(fixtures_dir / "cremona.poly"))
    js = json.loads(out)
    assert code == 0
    assert {k: js[k] for k in ("deg", "mult", "degmap", "birational")} == {
        "deg": 2, "mult": 3, "degmap": 1, "birational": True}


def test_compose_quadric(fixtures_dir):
    code, out, _ = invoke("compose", str(fixtures_dir / "quadric.poly"), str(fixtures_dir / "cremona.poly"),
                          "--degmap-q", "2", "--surfdeg-q", "2")
    js = json.loads(out)
    assert code == 0
    assert js["mult_P"] == 12 and js["rhs"] == 12
    assert all(js["statements"].values())


def test_oracle_commands(fixtures_dir):
    code, out, _ = invoke("oracle", "hs", str(fixtures_dir / "one_point.poly"), "--point", "0,0,1")
    assert code == 0 and json.loads(out)["multiplicity"] == 4
    code, out, _ = invoke("oracle", "fiber", str(fixtures_dir / "squaring.poly"))
    assert code == 0 and json.loads(out)["fiber"] == 4


def test_exit_codes(tmp_path, fixtures_dir):
    assert invoke("mult", str(tmp_path / "missing.poly"))[0] == 1
    bad = tmp_path / "bad.poly"
    bad.write_text("P = [t1, t2, t3, t1^2]\n")
    code, out, err = invoke("mult", str(bad))
    assert code == 1 and out == "" and "input error" in err
    code, out, err = invoke("mult", str(fixtures_dir / "one_point.poly"), "--trials", "0")
    assert code == 2 and "certification" in err
    assert invoke("planemap", str(fixtures_dir / "cremona.poly"), "--path", "k")[0] == 1
    assert invoke("frobnicate")[0] == 1
