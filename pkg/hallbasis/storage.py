from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Optional, Union

from pydantic import ValidationError

from .errors import InvalidTensorError, TensorFileError
from .exact_rational import rational
from .models import Settings, TensorFile
from .tensor_core import HallTensor, hall_from_components

logger = logging.getLogger("hallbasis.storage")

# Project root = .../hallbasis -> parents[1] is repo root
ROOT_DIR = Path(__file__).resolve().parents[1]
DATA_DIR = ROOT_DIR / "app_data"

SETTINGS_PATH = DATA_DIR / "settings.json"


def _read_json(path: Path) -> Optional[dict]:
    if not path.exists():
        return None
    try:
        with path.open("r", encoding="utf-8") as f:
            return json.load(f)
    except Exception:
        return None


def _write_json(path: Path, data: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        json.dump(data, f, ensure_ascii=False, indent=2)


def load_settings(path: Optional[Path] = None) -> Settings:
    data = _read_json(path or SETTINGS_PATH)
    if not data:
        # Defaults
        return Settings()
    try:
        return Settings(**data)
    except Exception as e:
        logger.warning("Ignoring invalid settings file %s: %s", path or SETTINGS_PATH, e)
        return Settings()


def save_settings(settings: Settings, path: Optional[Path] = None) -> None:
    _write_json(path or SETTINGS_PATH, settings.model_dump())


# ===== Tensor files =====

def _field_name(err: dict) -> str:
    loc = err.get("loc") or ()
    out = ""
    for part in loc:
        if isinstance(part, int):
            out += f"[{part}]"
        elif part in ("int", "float", "str"):
            # union member tags carry no location information
            continue
        else:
            out += ("." if out else "") + str(part)
    return out or "k"


def parse_tensor(data: object, exact: bool = False, path: Optional[str] = None) -> HallTensor:
    try:
        doc = TensorFile.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise TensorFileError(first.get("msg", "invalid tensor file"), path=path, field=_field_name(first)) from e
    values = []
    for i, x in enumerate(doc.k):
        try:
            values.append(rational(x) if exact or isinstance(x, str) else x)
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise TensorFileError(f"cannot parse {x!r} as a number: {e}", path=path, field=f"k[{i}]") from e
    if not exact:
        values = [float(v) for v in values]
    try:
        return hall_from_components(values, exact=exact)
    except InvalidTensorError as e:
        field = f"k[{e.index}]" if e.index is not None else "k"
        raise TensorFileError(str(e), path=path, field=field) from e


def load_tensor(path: Union[str, Path], exact: bool = False) -> HallTensor:
    p = Path(path)
    try:
        with p.open("r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise TensorFileError("file not found", path=str(p)) from e
    except json.JSONDecodeError as e:
        raise TensorFileError(f"invalid JSON: {e.msg} (line {e.lineno})", path=str(p)) from e
    tensor = parse_tensor(data, exact=exact, path=str(p))
    logger.debug("Loaded tensor from %s (exact=%s)", p, exact)
    return tensor
