"""JSON file formats and the 1-based index-list syntax of the CLI."""

from __future__ import annotations

import json
from pathlib import Path

from .arrangement import CentralArrangement, Translate, new_arrangement, new_translate
from .errors import PreconditionError
from .exact_linalg import as_vector


def parse_index_list(text: str) -> tuple[int, ...]:
    """``"1,2,3"`` -> ``(1, 2, 3)``."""
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError as exc:
        raise PreconditionError(f"bad index list {text!r}") from exc


def parse_family(text: str) -> tuple[tuple[int, ...], ...]:
    """``"1,2,3;1,4,5"`` -> ``((1, 2, 3), (1, 4, 5))``."""
    return tuple(parse_index_list(part) for part in text.split(";") if part.strip())


def format_family(T) -> str:
    return ";".join(",".join(str(i) for i in L) for L in T)


def arrangement_json(a: CentralArrangement, T=None) -> dict:
    out = a.to_json()
    if T is not None:
        out["T"] = [list(L) for L in T]
    return out


def read_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def raw_arrangement(data: dict) -> tuple[int, list]:
    if "k" not in data or "normals" not in data:
        raise PreconditionError('arrangement JSON needs "k" and "normals"')
    return int(data["k"]), [as_vector(v) for v in data["normals"]]


def arrangement_from_json(data: dict) -> tuple[CentralArrangement, tuple | None]:
    k, normals = raw_arrangement(data)
    T = data.get("T")
    if T is not None:
        T = tuple(tuple(int(i) for i in L) for L in T)
    return new_arrangement(k, normals), T


def load_arrangement(path) -> tuple[CentralArrangement, tuple | None]:
    return arrangement_from_json(read_json(path))


def load_translate(a: CentralArrangement, path) -> Translate:
    data = read_json(path)
    if "t" not in data or data["t"] is None:
        raise PreconditionError('translate JSON needs "t"')
    return new_translate(a, data["t"])


def write_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")
