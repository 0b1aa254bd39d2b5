import json
from fractions import Fraction

import pytest

from algindep.cli import main
from algindep.serialize import (SpecError, dump_report, format_rational,
                                load_field_spec, load_poly, parse_rational,
                                poly_to_json)


FIELD_Q = {"min_poly": [-1, 1], "alphas": [["1"]]}
FIELD_SQRT2 = {"min_poly": [-2, 0, 1],
               "integral_basis": [["1", "0"], ["0", "1"]],
               "alphas": [["1", "0"], ["0", "1"]]}
FIELD_DEP = {"min_poly": [-2, 0, 1], "alphas": [["0", "1"], ["0", "2"]]}
POLY_LIN = {"nvars": 2, "degree": 1,
            "terms": [{"exp": [1, 0], "coeff": "-3"},
                      {"exp": [0, 1], "coeff": "1"}]}


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)
    return write, tmp_path


def test_rational_round_trip():
    for s in ["0", "-7", "3/4", "-22/7"]:
        assert format_rational(parse_rational(s)) == s
    with pytest.raises(SpecError):
        parse_rational("1/0")
    with pytest.raises(SpecError):
        parse_rational("abc")


def test_field_spec_round_trip():
    field, alphas = load_field_spec(FIELD_SQRT2)
    assert field.degree == 2
    assert len(alphas) == 2
    assert (alphas[1] * alphas[1]).as_fraction() == 2
    with pytest.raises(SpecError):
        load_field_spec({"min_poly": [-1, 0, 1]})
    with pytest.raises(SpecError):
        load_field_spec({"alphas": []})


def test_poly_round_trip():
    field, _ = load_field_spec(FIELD_Q)
    p = load_poly(POLY_LIN, field)
    assert p.degree == 1
    assert load_poly(poly_to_json(p), field).terms == p.terms
    with pytest.raises(SpecError):
        load_poly({"nvars": 2, "degree": 1,
                   "terms": [{"exp": [2, 0], "coeff": "1"}]})


def test_dump_report_sorted(tmp_path):
    out = tmp_path / "r.json"
    text = dump_report({"b": 1, "a": 2}, str(out))
    assert text.index('"a"') < text.index('"b"')
    assert out.read_text().strip() == text


def test_cmd_bound(files, capsys):
    write, _ = files
    rc = main(["bound", "--field", write("f.json", FIELD_Q),
               "--degree", "1", "--height", "3"])
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    assert report["params"]["S"] == 6
    assert report["params"]["N"] == 6
    assert report["log10_bound"].startswith("-4.7656")


def test_cmd_bound_dependent_alphas_exit_3(files, capsys):
    write, _ = files
    rc = main(["bound", "--field", write("f.json", FIELD_DEP), "--degree", "1"])
    assert rc == 3


def test_invalid_spec_exit_2(files, tmp_path):
    write, tdir = files
    bad = tdir / "bad.json"
    bad.write_text("{not json")
    assert main(["bound", "--field", str(bad), "--degree", "1"]) == 2
    assert main(["bound", "--field", write("f.json", {"min_poly": [-1, 0, 1]}),
                 "--degree", "1"]) == 2
    assert main(["bound", "--field", str(tdir / "missing.json"),
                 "--degree", "1"]) == 2


def test_cmd_verify_consistent(files, capsys):
    write, _ = files
    rc = main(["verify", "--field", write("f.json", FIELD_Q),
               "--poly", write("p.json", POLY_LIN)])
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    assert report["result"]["verdict"] == "consistent"


def test_cmd_verify_deterministic(files, capsys):
    write, tdir = files
    field = write("f.json", FIELD_Q)
    poly = write("p.json", POLY_LIN)
    out1, out2 = str(tdir / "a.json"), str(tdir / "b.json")
    assert main(["verify", "--field", field, "--poly", poly, "--out", out1]) == 0
    assert main(["verify", "--field", field, "--poly", poly, "--out", out2]) == 0
    capsys.readouterr()
    assert open(out1, "rb").read() == open(out2, "rb").read()


def test_cmd_construct_small(files, capsys):
    write, _ = files
    rc = main(["construct", "--field", write("f.json", FIELD_Q),
               "--S", "2", "--T", "2"])
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    assert report["zero_lemma"]["certified"]
    assert report["integrality"]["passed"]
    assert report["size_bounds"]["status"] == "out of hypothesis"


def test_cmd_audit(files, capsys):
    write, _ = files
    rc = main(["audit", "--field", write("f.json", FIELD_Q),
               "--degree", "1", "--height", "1"])
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    assert report["result"]["passed"]


def test_cmd_resultant(files, capsys):
    write, _ = files
    r1 = write("r1.json", {"nvars": 2, "degree": 1,
                           "terms": [{"exp": [1, 0], "coeff": "1"},
                                     {"exp": [0, 1], "coeff": "-2"}]})
    r2 = write("r2.json", {"nvars": 2, "degree": 1,
                           "terms": [{"exp": [1, 0], "coeff": "1"},
                                     {"exp": [0, 1], "coeff": "1"}]})
    assert main(["resultant", r1, r2]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["resultant"] == "3"
    assert report["certificate"]["retries"] == 0
