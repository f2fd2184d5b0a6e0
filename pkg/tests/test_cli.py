from __future__ import annotations

import json

import pytest

from hallbasis.cli import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, main


@pytest.fixture
def tensor_file(tmp_path):
    def make(k, name="k.json"):
        p = tmp_path / name
        p.write_text(json.dumps({"k": k}), encoding="utf-8")
        return str(p)
    return make


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_invariants_symmetric_pair(tensor_file, capsys):
    assert main(["invariants", tensor_file([0, 0, 0, -1, 0, 0, 0, 1, 0]), "--json"]) == EXIT_PASS
    out = _json(capsys)
    assert out["invariants"]["I2"] == 2
    assert all(v == 0 for n, v in out["invariants"].items() if n != "I2")
    assert list(out["invariants"]) == ["I2", "J2", "K2", "I4", "J4", "K4", "I6", "J6", "K6", "L6"]


def test_invariants_zero(tensor_file, capsys):
    assert main(["invariants", tensor_file([0] * 9), "--json"]) == EXIT_PASS
    assert set(_json(capsys)["invariants"].values()) == {0}


def test_invariants_epsilon_exact(tensor_file, capsys):
    assert main(["invariants", tensor_file([0, 0, 1, 0, -1, 0, 1, 0, 0]), "--exact", "--json"]) == EXIT_PASS
    out = _json(capsys)
    assert out["exact"] is True
    assert out["invariants"] == {
        "I2": "3", "J2": "0", "K2": "9", "I4": "0", "J4": "9",
        "K4": "0", "I6": "0", "J6": "9", "K6": "0", "L6": "0",
    }


def test_invariants_exact_prints_fractions(tensor_file, capsys):
    assert main(["invariants", tensor_file(["1/2", 0, 0, 0, 0, 0, 0, 0, 0]), "--exact"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert "K2 = 0" in out
    assert "I2 = 1/8" in out


def test_invariants_bad_file(tensor_file, capsys):
    assert main(["invariants", tensor_file([0, 0, "x", 0, 0, 0, 0, 0, 0])]) == EXIT_USAGE
    assert "k[2]" in capsys.readouterr().err


def test_invariants_missing_file(tmp_path, capsys):
    assert main(["invariants", str(tmp_path / "none.json")]) == EXIT_USAGE
    assert "file not found" in capsys.readouterr().err


def test_verify_integrity_fixed_points(capsys):
    assert main(["verify-integrity", "--source", "paper", "--json"]) == EXIT_PASS
    assert _json(capsys)["ranks"] == [3, 9, 23]


def test_verify_integrity_random_is_byte_stable(capsys):
    assert main(["verify-integrity", "--source", "random", "--seed", "7", "--json"]) == EXIT_PASS
    first = capsys.readouterr().out
    assert main(["verify-integrity", "--source", "random", "--seed", "7", "--json"]) == EXIT_PASS
    assert capsys.readouterr().out == first
    assert json.loads(first)["seed"] == 7


def test_verify_function_basis_default(capsys):
    assert main(["verify-function-basis", "--json"]) == EXIT_PASS
    out = _json(capsys)
    assert out["passed_count"] == 10 and out["passed"]


def test_verify_function_basis_single_case(capsys):
    assert main(["verify-function-basis", "--case", "3", "--json"]) == EXIT_PASS
    out = _json(capsys)
    assert len(out["cases"]) == 1
    assert out["cases"][0]["target"] == "K2"


def test_verify_function_basis_notes_case_5(capsys):
    assert main(["verify-function-basis", "--case", "5"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert "note: documented components do not reproduce" in out
    assert "1/1 cases separate" in out
    assert main(["verify-function-basis", "--case", "5", "--json"]) == EXIT_PASS
    case = _json(capsys)["cases"][0]
    assert case["transcription_note"] and case["printed_max_mismatch"] > 1e-2


def test_verify_function_basis_case_out_of_range(capsys):
    assert main(["verify-function-basis", "--case", "11"]) == EXIT_USAGE


def test_verify_function_basis_huge_floor_fails(capsys):
    assert main(["verify-function-basis", "--separation-floor", "1000"]) == EXIT_FAIL
    assert "0/10" in capsys.readouterr().out


def test_floor_must_exceed_tolerance(capsys):
    code = main(["verify-function-basis", "--coincidence-tol", "1e-3", "--separation-floor", "1e-4"])
    assert code == EXIT_USAGE


def test_isotropy_fuzz(capsys):
    assert main(["isotropy-fuzz", "--seed", "3", "--trials", "200", "--json"]) == EXIT_PASS
    out = _json(capsys)
    assert out["trials"] == 200
    assert out["max_relative_deviation"] <= 1e-8
    assert "per_invariant" in out


@pytest.mark.parametrize("trials", ["0", "-3", "many"])
def test_isotropy_fuzz_rejects_bad_trials(trials, capsys):
    assert main(["isotropy-fuzz", "--trials", trials]) == EXIT_USAGE


def test_field_epsilon(tensor_file, capsys):
    path = tensor_file([0, 0, 1, 0, -1, 0, 1, 0, 0])
    assert main(["field", path, "--current", "1", "0", "0", "--magnetic", "0", "1", "0", "--json"]) == EXIT_PASS
    assert _json(capsys)["electric"] == [0, 0, 1]


def test_field_zero_magnetic(tensor_file, capsys):
    path = tensor_file([1, 2, 3, 4, 5, 6, 7, 8, 9])
    assert main(["field", path, "--current", "1", "2", "3", "--magnetic", "0", "0", "0"]) == EXIT_PASS
    assert "E = (0, 0, 0)" in capsys.readouterr().out


def test_config_overrides_defaults(tmp_path, capsys):
    cfg = tmp_path / "settings.json"
    cfg.write_text(json.dumps({"seed": 5, "fuzz_trials": 10, "fuzz_tensor_count": 3}), encoding="utf-8")
    assert main(["isotropy-fuzz", "--config", str(cfg), "--json"]) == EXIT_PASS
    out = _json(capsys)
    assert (out["seed"], out["trials"], out["tensor_count"]) == (5, 10, 3)


def test_missing_config_is_usage_error(tmp_path):
    assert main(["isotropy-fuzz", "--config", str(tmp_path / "nope.json")]) == EXIT_USAGE


def test_no_subcommand():
    assert main([]) == EXIT_USAGE
