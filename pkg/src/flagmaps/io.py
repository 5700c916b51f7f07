"""Reading and writing ``.flags.json`` files.

The format is a JSON object with an integer ``n``, arrays ``r0``, ``r1``,
``r2`` of length ``n`` holding flag indices (``null`` marks an undefined
image on a fragment boundary) and an optional free-form ``meta`` object.
"""

from __future__ import annotations

import json
import os

from .flags import UNDEFINED, FlagSystem, MapFragment

EXTENSION = ".flags.json"


class FlagFileError(ValueError):
    """Malformed or inconsistent flag file."""


def to_dict(fs: FlagSystem) -> dict:
    def column(ri):
        return [None if v == UNDEFINED else int(v) for v in ri.tolist()]

    out = {"n": fs.n, "r0": column(fs.r0), "r1": column(fs.r1), "r2": column(fs.r2)}
    if fs.meta:
        out["meta"] = fs.meta
    return out


def dumps(fs: FlagSystem) -> str:
    return json.dumps(to_dict(fs), separators=(",", ":"), sort_keys=True)


def save(fs: FlagSystem, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(fs))
        fh.write("\n")


def from_dict(data) -> FlagSystem | MapFragment:
    if not isinstance(data, dict):
        raise FlagFileError("flag file must contain a JSON object")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FlagFileError(f"field 'n' must be a non-negative integer, got {n!r}")
    columns = []
    partial = False
    for i in range(3):
        key = f"r{i}"
        col = data.get(key)
        if not isinstance(col, list) or len(col) != n:
            raise FlagFileError(f"field {key!r} must be an array of length {n}")
        out = []
        for x, v in enumerate(col):
            if v is None:
                partial = True
                out.append(UNDEFINED)
            elif isinstance(v, int) and not isinstance(v, bool):
                if not 0 <= v < n:
                    raise FlagFileError(f"{key}[{x}] = {v} out of range 0..{n - 1}")
                out.append(v)
            else:
                raise FlagFileError(f"{key}[{x}] = {v!r} is not an integer or null")
        columns.append(out)
    for i, col in enumerate(columns):
        for x, y in enumerate(col):
            if y != UNDEFINED and col[y] != x:
                raise FlagFileError(f"r{i} is not an involution: r{i}[{x}] = {y} but r{i}[{y}] = "
                                    f"{'null' if col[y] == UNDEFINED else col[y]}")
    meta = data.get("meta")
    if meta is not None and not isinstance(meta, dict):
        raise FlagFileError("field 'meta' must be an object")
    if partial:
        return MapFragment(*columns, meta=meta)
    return FlagSystem(*columns, meta=meta)


def loads(text: str) -> FlagSystem | MapFragment:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FlagFileError(f"not valid JSON: {exc}") from exc
    return from_dict(data)


def load(path: str | os.PathLike) -> FlagSystem | MapFragment:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
