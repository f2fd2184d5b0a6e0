from __future__ import annotations

import json
from fractions import Fraction

import pytest

from hallbasis.errors import TensorFileError
from hallbasis.models import CommandConfig, Settings
from hallbasis.storage import load_settings, load_tensor, parse_tensor, save_settings


def _write(tmp_path, data, name="k.json"):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
    return p


def test_load_tensor_float(tmp_path):
    k = load_tensor(_write(tmp_path, {"k": [0, 0, 0, -1, 0, 0, 0, 1, 0.5]}))
    assert k.components == (0, 0, 0, -1, 0, 0, 0, 1, 0.5)
    assert not k.exact


def test_load_tensor_exact_with_fraction_strings(tmp_path):
    k = load_tensor(_write(tmp_path, {"k": ["1/2", 0, 0, 0, 0, 0, 0, 0, 0.25]}), exact=True)
    assert k.components[0] == Fraction(1, 2)
    assert k.components[8] == Fraction(1, 4)
    assert k.exact


def test_fraction_string_in_float_mode():
    assert parse_tensor({"k": ["3/4"] + [0] * 8}).components[0] == 0.75


@pytest.mark.parametrize("data, field", [
    ({"k": [0] * 8}, "k"),
    ({"k": [0, 0, 0, "abc", 0, 0, 0, 0, 0]}, "k[3]"),
    ({"k": [0, 0, 0, 0, 0, True, 0, 0, 0]}, "k"),
    ({"k": [0, 0, 0, 0, 0, 0, "1/0", 0, 0]}, "k[6]"),
    ({"x": [0] * 9}, "k"),
])
def test_parse_errors_name_the_field(data, field):
    with pytest.raises(TensorFileError) as info:
        parse_tensor(data, path="t.json")
    assert info.value.field == field
    assert "t.json" in str(info.value)


def test_non_finite_float_string(tmp_path):
    with pytest.raises(TensorFileError) as info:
        load_tensor(_write(tmp_path, '{"k": [0, 0, 0, 0, 0, 0, 0, 0, "inf"]}'))
    assert info.value.field == "k[8]"


def test_missing_file(tmp_path):
    with pytest.raises(TensorFileError, match="file not found"):
        load_tensor(tmp_path / "nope.json")


def test_invalid_json(tmp_path):
    with pytest.raises(TensorFileError, match="invalid JSON"):
        load_tensor(_write(tmp_path, "{k: ["))


def test_settings_round_trip(tmp_path):
    path = tmp_path / "nested" / "settings.json"
    save_settings(Settings(seed=9, fuzz_trials=10), path)
    loaded = load_settings(path)
    assert loaded.seed == 9 and loaded.fuzz_trials == 10
    assert loaded.coincidence_tol == 1e-9


def test_settings_fall_back_to_defaults(tmp_path):
    assert load_settings(tmp_path / "missing.json") == Settings()
    bad = _write(tmp_path, {"coincidence_tol": -1}, "settings.json")
    assert load_settings(bad) == Settings()


def test_settings_defaults():
    s = Settings()
    assert (s.coincidence_tol, s.separation_floor, s.isotropy_tol) == (1e-9, 1e-6, 1e-8)
    assert s.fuzz_trials == 1000 and s.fuzz_tensor_count == 100


def test_command_config_validation():
    with pytest.raises(ValueError):
        CommandConfig(subcommand="isotropy-fuzz", trials=0)
    with pytest.raises(ValueError):
        CommandConfig(subcommand="verify-function-basis", coincidence_tol=0)
    with pytest.raises(ValueError):
        CommandConfig(subcommand="verify-function-basis", coincidence_tol=1e-3, separation_floor=1e-4)
    assert CommandConfig(subcommand="field").output.value == "human"
