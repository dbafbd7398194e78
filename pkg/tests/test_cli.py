import json

import pytest

from superpl.cli import RunConfig, main, read_config_file
from superpl.errors import ConfigError
from superpl.scalar import parse_scalar


def run_json(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_single_suite_passes(capsys):
    code, rep = run_json(capsys, "--suite", "baxter")
    assert code == 0
    assert [s["name"] for s in rep["suites"]] == ["baxter"]
    assert rep["overall_pass"] is True


def test_failing_suite_gives_exit_one(capsys):
    code, rep = run_json(capsys, "--suite", "duality")
    assert code == 1
    assert rep["overall_pass"] is False


def test_invalid_shape_gives_exit_two(capsys):
    assert main(["--m", "2", "--n", "2"]) == 2
    assert "configuration error" in capsys.readouterr().err
    assert main(["--degree", "9"]) == 2
    assert main(["--suite", "nope"]) == 2


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# shape\nm = 1\nn = 2\nsuites = baxter, sdet\ndegree = 2\n")
    assert read_config_file(str(cfg))["suite"] == ["baxter", "sdet"]
    code, rep = run_json(capsys, "--config", str(cfg), "--suite", "baxter")
    assert code == 0
    assert rep["config"]["m"] == 1 and rep["config"]["degree"] == 2
    assert rep["config"]["suites"] == ["baxter"]


def test_bad_config_file(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    with pytest.raises(ConfigError):
        read_config_file(str(cfg))
    with pytest.raises(ConfigError):
        read_config_file(str(tmp_path / "missing.cfg"))


def test_json_is_deterministic(capsys):
    main(["--suite", "baxter", "--suite", "sdet", "--degree", "2"])
    first = capsys.readouterr().out
    main(["--suite", "baxter", "--suite", "sdet", "--degree", "2"])
    assert capsys.readouterr().out == first


def test_markdown_to_file(tmp_path):
    out = tmp_path / "r.md"
    assert main(["--suite", "baxter", "--format", "markdown", "--out", str(out)]) == 0
    assert "**overall: PASS**" in out.read_text()


def test_export_constants(tmp_path, capsys):
    main(["--suite", "baxter", "--export-constants", str(tmp_path)])
    capsys.readouterr()
    basis = [json.loads(x) for x in (tmp_path / "basis.jsonl").read_text().splitlines()]
    assert len(basis) == 16
    assert {r["basis"] for r in basis} == {"T", "t"}
    for name in ("constants.jsonl", "dual_constants.jsonl"):
        for line in (tmp_path / name).read_text().splitlines():
            rec = json.loads(line)
            assert parse_scalar(rec["value"])


def test_duplicate_suites_collapse():
    cfg = RunConfig(suites=["baxter", "baxter", "sdet"])
    assert cfg.selected() == ["baxter", "sdet"]
