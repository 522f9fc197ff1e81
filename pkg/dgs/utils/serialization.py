"""
JSON and CSV emitters for reports.

Reals are written with 17 significant digits so that every float round-trips;
non-finite reals become null. CSV uses a header row, commas and '.' decimals
regardless of locale.
"""
import csv
import io
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, List, Mapping, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel

from dgs.config import settings


def _plain(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, BaseModel):
        return _plain(value.model_dump())
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        return _plain(value.item())
    if isinstance(value, Mapping):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_plain(v) for v in items]
    return value


def format_real(value: float, digits: Optional[int] = None) -> str:
    digits = settings.float_digits if digits is None else digits
    if not math.isfinite(value):
        return "null"
    text = format(value, f".{digits}g")
    if not any(ch in text for ch in ".en"):
        text += ".0"
    return text


def _encode(value: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_real(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_encode(v, indent, level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(value, list):
        if not value:
            return "[]"
        items = [f"{pad}{_encode(v, indent, level + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def to_json(payload: Any, indent: int = 2) -> str:
    return _encode(_plain(payload), indent, 0) + "\n"


def write_json(path: Union[str, Path], payload: Any) -> None:
    Path(path).write_text(to_json(payload), encoding="utf-8")


def to_csv(rows: Iterable[Mapping[str, Any]], columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        plain = _plain(row)
        cells: List[str] = []
        for column in columns:
            value = plain.get(column)
            if isinstance(value, float):
                cells.append(format_real(value).replace("null", "nan"))
            elif value is None:
                cells.append("")
            else:
                cells.append(str(value))
        writer.writerow(cells)
    return buffer.getvalue()


def write_csv(path: Union[str, Path], rows: Iterable[Mapping[str, Any]], columns: Sequence[str]) -> None:
    Path(path).write_text(to_csv(rows, columns), encoding="utf-8")
