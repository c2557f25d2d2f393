import json
import subprocess
import sys
from pathlib import Path

import pytest

from derange import cli

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = Path(__file__).resolve().parent / "golden"

CASES = {
    "check_agl1_7": ["check", "data/agl1_7.action"],
    "check_cosets": ["check", "data/s4.group", "--cosets-of", "data/s4_stab.group", "--cosets-of", "data/s4_d8.group"],
    "covering_s4": ["covering", "data/s4.group", "data/s4_stab.group", "data/s4_d8.group"],
    "verify_s4": ["verify-conjecture", "data/s4.group"],
    "verify_catalog_small": ["verify-conjecture", "--catalog", "default", "--max-order", "24"],
    "coset_average": ["coset-average", "data/s4.group", "(1 2)(3 4)"],
    "coset_average_samples": ["coset-average", "--samples", "20", "--seed", "7"],
    "present_order96": ["present", "data/order96.pres", "--subgroup", "x,y^2"],
    "affine_instance": ["affine", "data/gl22_c3.instance"],
    "affine_matrix_file": ["affine", "data/gl23.mat"],
    "affine_congruence": ["affine", "--gl", "3", "2"],
    "affine_extension": ["affine", "--gl", "2", "2", "--extension", "2"],
    "affine_field_extension": ["affine", "--field-extension", "2", "2"],
    "isbell_instance": ["isbell", "data/gl32_on_8.instance"],
    "isbell_example": ["isbell", "--example", "gl32"],
    "roots_e6": ["roots", "E6", "--verify-lemma"],
    "roots_e7": ["roots", "E7"],
    "roots_e8": ["roots", "E8", "--verify-lemma"],
    "bounds_grid": ["bounds", "--lemma", "2.7", "--grid"],
    "bounds_point": ["bounds", "--check", "4", "4", "2", "--field", "3", "3", "1"],
    "catalog_export": ["catalog", "--export", "agl1(5)"],
}

TEXT_CASES = {
    "check_agl1_7_text": ["check", "data/agl1_7.action"],
    "present_text": ["present", "data/order96.pres", "--subgroup", "x,y^2"],
    "catalog_export_text": ["catalog", "--export", "agl1(5)"],
}


def _run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def _compare(name, text, update):
    path = GOLDEN / name
    if update or not path.exists():
        path.write_text(text)
    assert text == path.read_text()


@pytest.mark.parametrize("name", sorted(CASES))
def test_json_golden(name, capsys, monkeypatch, update_golden):
    monkeypatch.chdir(ROOT)
    code, out, _ = _run(CASES[name] + ["--json"], capsys)
    assert code == 0
    body = json.loads(out)
    assert body["command"] == CASES[name][0]
    assert "timing" not in out
    _compare(f"{name}.json", out, update_golden)


@pytest.mark.parametrize("name", sorted(TEXT_CASES))
def test_text_golden(name, capsys, monkeypatch, update_golden):
    monkeypatch.chdir(ROOT)
    code, out, _ = _run(TEXT_CASES[name], capsys)
    assert code == 0
    _compare(f"{name}.txt", out, update_golden)


def test_reports_are_deterministic(capsys, monkeypatch):
    monkeypatch.chdir(ROOT)
    first = _run(["check", "data/agl1_7.action", "--json"], capsys)[1]
    second = _run(["check", "data/agl1_7.action", "--json", "--timing"], capsys)
    assert first == second[1]
    assert json.loads(second[2])["timing"]["seconds"] >= 0


def test_catalog_listing(capsys, monkeypatch):
    monkeypatch.chdir(ROOT)
    code, out, _ = _run(["catalog", "--json"], capsys)
    assert code == 0
    body = json.loads(out)["result"]
    names = [e["name"] for e in body["entries"]]
    assert "agl1(7)" in names and "order96" in names
    assert out == _run(["catalog", "--json"], capsys)[1]


def test_caps_are_echoed(capsys, monkeypatch):
    monkeypatch.chdir(ROOT)
    out = _run(["roots", "E6", "--json", "--cap-enum", "77", "--cap-spin", "9"], capsys)[1]
    cfg = json.loads(out)["config"]
    assert cfg["cap_enum"] == "77" and cfg["cap_spin"] == "9"
    assert {"cap_lattice", "cap_coset", "jobs", "seed"} <= set(cfg)


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "missing.file"],
        ["check"],
        ["roots", "E9"],
        ["bounds", "--lemma", "9.9"],
        ["covering", "data/s4.group", "data/s4.group"],
        ["coset-average", "data/agl1_7.action", "(1 2)"],
        ["present", "data/s4.group"],
        ["affine"],
        ["isbell", "data/gl22_c3.instance"],
        ["check", "data/s4.group", "--cosets-of", "data/gl23.mat"],
        ["verify-conjecture", "data/s4.group", "--jobs", "0"],
    ],
)
def test_invalid_input_exits_1(argv, capsys, monkeypatch):
    monkeypatch.chdir(ROOT)
    code = None
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 1
    assert capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "data/s4.group", "--cap-enum", "10"],
        ["present", "data/order96.pres", "--cap-coset", "50"],
        ["verify-conjecture", "data/s4.group", "--cap-lattice", "10"],
        ["affine", "data/gl23.mat", "--cap-spin", "5"],
    ],
)
def test_cap_exceeded_exits_2(argv, capsys, monkeypatch):
    monkeypatch.chdir(ROOT)
    assert cli.main(argv) == 2
    assert "cap exceeded" in capsys.readouterr().err


def test_invariant_violation_exits_3(capsys, monkeypatch):
    monkeypatch.chdir(ROOT)
    monkeypatch.setattr(cli, "coset_average_fixed_points", lambda g, h: 2)
    assert cli.main(["coset-average", "data/s4.group", "(1 2)"]) == 3
    assert "invariant violated" in capsys.readouterr().err


def test_console_script_end_to_end():
    res = subprocess.run(
        [sys.executable, "-m", "derange.cli", "check", "data/agl1_7.action", "--json"],
        cwd=ROOT, capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["result"]["verdict"] == "none"
    res = subprocess.run(
        [sys.executable, "-m", "derange.cli", "check", "missing.file"], cwd=ROOT, capture_output=True, text=True,
    )
    assert res.returncode == 1
