import json
import os

import pytest

from shiftdim.cli import main
from shiftdim.config import parse_config_text, spec_from_config
from shiftdim.errors import ConfigError

FIB_CFG = """\
variant = substitution
alphabet = 0 1
rule.0 = 0 1
rule.1 = 0
"""

SFT_CFG = """\
variant = sft
alphabet = 0 1
forbidden = 11
"""


@pytest.fixture()
def fib_cfg(tmp_path):
    path = tmp_path / "fib.cfg"
    path.write_text(FIB_CFG)
    return str(path)


def test_config_parsing_round_trip():
    spec, rest = spec_from_config(FIB_CFG)
    assert spec.variant == "substitution"
    assert rest == {}
    spec, _ = spec_from_config(SFT_CFG)
    assert spec.variant == "sft"


def test_config_errors_report_line():
    with pytest.raises(ConfigError, match="line 2"):
        parse_config_text("variant = sft\nbroken line\n")
    with pytest.raises(ConfigError, match="duplicate"):
        parse_config_text("a = 1\na = 2\n")
    with pytest.raises(ConfigError, match="variant"):
        spec_from_config("alphabet = 0 1\n")


def test_bounds_command(capsys):
    code = main(["bounds", "--q", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "(rokhlin <= 3, tower <= 7, amenability <= 7, dad <= 7, nuclear <= 6)" in out


def test_lang_command_writes_csv(fib_cfg, tmp_path, capsys):
    out_dir = str(tmp_path / "out")
    code = main(["lang", "--config", fib_cfg, "--horizon", "10", "--out", out_dir])
    assert code == 0
    csv_path = os.path.join(out_dir, "language.csv")
    with open(csv_path) as fh:
        lines = fh.read().splitlines()
    assert lines[0] == "n,p,words_file"
    # p(n) = n + 1 column
    assert [int(line.split(",")[1]) for line in lines[1:]] == list(range(2, 12))


def test_usage_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("variant = banana\nalphabet = 0 1\n")
    code = main(["special", "--config", str(bad), "--depth", "8"])
    assert code == 3


def test_special_command(fib_cfg, capsys):
    code = main(["special", "--config", fib_cfg, "--depth", "12"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["kind"] == "special-report"
    assert payload["verdict"] == "pass"


def test_rokhlin_command_and_verify(fib_cfg, tmp_path, capsys):
    out_dir = str(tmp_path / "out")
    code = main([
        "rokhlin", "--config", fib_cfg, "--depth", "60", "--past-len", "6",
        "--height", "5", "--out", out_dir,
    ])
    assert code == 0
    capsys.readouterr()
    code = main(["verify", os.path.join(out_dir, "rokhlin.json")])
    assert code == 0
    assert "verified" in capsys.readouterr().out


def test_verify_rejects_corrupted_certificate(fib_cfg, tmp_path, capsys):
    out_dir = str(tmp_path / "out")
    main([
        "rokhlin", "--config", fib_cfg, "--depth", "60", "--past-len", "6",
        "--height", "5", "--out", out_dir,
    ])
    capsys.readouterr()
    path = os.path.join(out_dir, "rokhlin.json")
    with open(path) as fh:
        data = json.load(fh)
    data["params"]["tower_bases"][0] = data["params"]["tower_bases"][0][:-1]
    with open(path, "w") as fh:
        json.dump(data, fh)
    code = main(["verify", path])
    assert code == 1
    out = capsys.readouterr().out
    assert "failed" in out
