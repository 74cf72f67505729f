import json

import pytest

from c2lat.cli import EXIT_ERROR, EXIT_MATCH, EXIT_MISMATCH, main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_quadrangle_fast_path(capsys):
    code, out, _ = run(["verify-quadrangle", "--skip-aut"], capsys)
    assert code == EXIT_MATCH
    rep = json.loads(out)
    assert rep["quadrangle"]["order"] == [3, 5]
    assert "automorphism group" not in rep


def test_verify_quadrangle_with_cache(tmp_path, capsys):
    cache = tmp_path / "cache"
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["verify-quadrangle", "--cache", str(cache), "--out", str(a)], capsys)[0] == 0
    assert len(list(cache.iterdir())) == 1
    assert run(["verify-quadrangle", "--cache", str(cache), "--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["automorphism group"]["refinement order"] == 138240


def test_enumerate_cache_hit_identical(tmp_path, capsys):
    cache = str(tmp_path / "c")
    code1, out1, _ = run(["enumerate", "k44", "--exhaustive", "--cache", cache], capsys)
    code2, out2, _ = run(["enumerate", "k44", "--exhaustive", "--cache", cache], capsys)
    code3, out3, _ = run(["enumerate", "k44", "--exhaustive"], capsys)
    assert code1 == code2 == code3 == EXIT_MATCH
    assert out1 == out2 == out3
    assert json.loads(out1)["action_classes"] == 10


def test_enumerate_verify_mode(capsys):
    code, out, _ = run(["enumerate", "k66"], capsys)
    assert code == EXIT_MATCH
    assert json.loads(out)["verified actions"] == 14


def test_classify_worker_count_does_not_change_report(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(["classify", "446", "--skip-buildings", "--format", "csv", "--out", str(a)],
               capsys)[0] == EXIT_MATCH
    assert run(["classify", "446", "--skip-buildings", "--format", "csv", "--workers", "2",
                "--out", str(b)], capsys)[0] == EXIT_MATCH
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0].startswith("family_type,r,s,t")
    assert len(lines) == 1 + 133


def test_classify_reports_published_mismatch(capsys):
    code, out, err = run(["classify", "664", "--skip-buildings"], capsys)
    assert code == EXIT_MISMATCH
    rep = json.loads(out)
    assert rep["totals"]["tp_total"] == 2066
    assert any("mirror item 11" in m for m in rep["mismatches"])
    assert "MISMATCH" in err and "header" in err


def test_triangle_command(tmp_path, capsys):
    p = tmp_path / "t.json"
    p.write_text(json.dumps({"r": 1, "s": 1, "t": 12, "family_type": 1,
                             "gammas": ["id", "id", "id", "id", "id", "rho"]}))
    code, out, err = run(["triangle", str(p)], capsys)
    assert code == EXIT_MATCH
    assert "building: C2-tilde, links Q(3,5), Q(3,5), K4,4" in err
    rep = json.loads(out)
    assert rep["angle_sum_over_pi"] == "1"
    assert rep["presentation"]["generators"][0].endswith("_1")


@pytest.mark.parametrize("spec,needle", [
    ({"r": 1, "s": 1, "t": 12, "family_type": 1, "gammas": ["id"] * 5 + ["bad"]}, "gamma_32"),
    ({"r": 2, "s": 1, "t": 12, "family_type": 1, "gammas": ["id"] * 6}, "does not match"),
])
def test_triangle_errors(tmp_path, capsys, spec, needle):
    p = tmp_path / "t.json"
    p.write_text(json.dumps(spec))
    code, _, err = run(["triangle", str(p)], capsys)
    assert code == EXIT_ERROR and needle in err


def test_triangle_parse_error_has_line(tmp_path, capsys):
    p = tmp_path / "t.json"
    p.write_text('{"r": 1,\n "s": }')
    code, _, err = run(["triangle", str(p)], capsys)
    assert code == EXIT_ERROR and "t.json:2:" in err
    code, _, err = run(["triangle", str(tmp_path / "missing.json")], capsys)
    assert code == EXIT_ERROR


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classify", "447"])
    assert exc.value.code == EXIT_ERROR
    with pytest.raises(SystemExit) as exc:
        main(["classify", "446", "--workers", "0"])
    assert exc.value.code == EXIT_ERROR
