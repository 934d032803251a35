"""CLI surface tests: argument handling, exit codes, and JSON output."""
import json

from dlhecke import cli


def run(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_exponents_text(capsys):
    code, out, _ = run(capsys, "exponents", "--spec", "D4")
    assert code == 0
    assert "1" in out and "5" in out


def test_roots_json(capsys):
    code, out, _ = run(capsys, "--format", "json", "roots", "--spec", "A1!",
                       "--depth", "2")
    assert code == 0
    payload = json.loads(out)
    coords = {tuple(r["coords"]) for r in payload["roots"]}
    assert {(1, 0), (0, 1), (1, 1)} == coords
    assert payload["header"]["spec"] == "A1!"


def test_weyl_layers(capsys):
    code, out, _ = run(capsys, "--format", "json", "weyl", "--spec", "A2",
                       "--max-length", "5")
    assert code == 0
    assert json.loads(out)["layer_sizes"] == [1, 2, 2, 1]


def test_character_json_round_trips(capsys):
    code, out, _ = run(capsys, "--format", "json", "character",
                       "--spec", "A1!", "--labels", "0,1", "--depth", "2")
    assert code == 0
    series = json.loads(out)["series"]
    betas = {tuple(t["beta"]) for t in series["terms"]}
    assert betas == {(0, 0), (0, 1), (1, 1)}


def test_whittaker_finite(capsys):
    code, out, _ = run(capsys, "--format", "json", "whittaker",
                       "--spec", "A1", "--labels", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["stabilized"] is True
    assert len(payload["series"]["terms"]) == 4


def test_verify_finite_cs_exit_zero(capsys):
    code, out, _ = run(capsys, "--format", "json", "verify", "finite-cs",
                       "--spec", "A2", "--labels", "1,1")
    assert code == 0
    assert json.loads(out)["reports"][0]["verdict"] == "pass"


def test_verify_hecke_relations(capsys):
    code, _, _ = run(capsys, "verify", "hecke-relations", "--spec", "A1!",
                     "--count", "5")
    assert code == 0


def test_usage_error_exit_64(capsys):
    code, _, err = run(capsys, "verify", "finite-cs")
    assert code == 64 and "spec" in err
    code, _, _ = run(capsys, "verify", "finite-cs", "--spec", "A2",
                     "--labels", "1")
    assert code == 64
    code, _, _ = run(capsys, "roots", "--spec", "B7")
    assert code in (1, 64)


def test_bad_rational_q(capsys):
    code, _, err = run(capsys, "verify", "affine-cs", "--spec", "A1!",
                       "--labels", "0,1", "--q", "zebra")
    assert code == 64


def test_cache_dir_flag(tmp_path, capsys):
    code, _, _ = run(capsys, "--cache-dir", str(tmp_path), "weyl",
                     "--spec", "A1!", "--max-length", "3")
    assert code == 0
    assert any(tmp_path.iterdir())
