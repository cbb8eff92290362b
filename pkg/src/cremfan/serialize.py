"""Matroid JSON format: save/load for the three primitive backends.

Schema (version 1)::

    {
      "schema": 1,
      "kind": "matroid",
      "name": "...",            # optional
      "description": "...",     # optional
      "elements": ["1", "2", ...],        # display labels, one per element
      "backend": "vectors" | "lines" | "circuits",
      "field": "Q" | "Fp:<p>" | "Qsqrt5", # vectors backend only
      "data": [...]
    }

For the vectors backend, ``data`` holds one array of field-element strings
per element ("3/2", "1+2w" with w = sqrt5); for lines and circuits it holds
arrays of 0-based element indices.  Loading is strict: unknown backends,
malformed entries, or out-of-range indices raise InputError.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InputError
from .field import Field, FieldFormatError
from .matroid import CircuitBackend, LineBackend, Matroid, VectorBackend

SCHEMA = 1


def matroid_to_dict(M: Matroid, *, name: str | None = None,
                    description: str | None = None) -> dict:
    """Serializable dictionary form of a matroid.

    Minor backends are materialized through their circuit list when small
    enough for that to be exact and affordable.
    """
    doc: dict = {"schema": SCHEMA, "kind": "matroid"}
    if name:
        doc["name"] = name
    if description:
        doc["description"] = description
    doc["elements"] = list(M.ground.labels)
    backend = M.backend
    if isinstance(backend, VectorBackend):
        doc["backend"] = "vectors"
        doc["field"] = backend.field.spec
        doc["data"] = [
            [backend.field.format(x) for x in vec] for vec in backend.vectors
        ]
    elif isinstance(backend, LineBackend):
        doc["backend"] = "lines"
        doc["data"] = [sorted(L) for L in backend.lines]
    elif isinstance(backend, CircuitBackend):
        doc["backend"] = "circuits"
        doc["data"] = sorted(
            (sorted(C) for C in backend.circuit_list), key=lambda c: (len(c), c)
        )
    else:
        # minors and other derived backends: fall back to the circuit list
        doc["backend"] = "circuits"
        doc["data"] = sorted(
            (sorted(C) for C in M.circuits()), key=lambda c: (len(c), c)
        )
    return doc


def matroid_from_dict(doc: dict) -> Matroid:
    if not isinstance(doc, dict):
        raise InputError("matroid document must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise InputError(f"unsupported schema {doc.get('schema')!r}")
    if doc.get("kind") != "matroid":
        raise InputError(f"unsupported kind {doc.get('kind')!r}")
    labels = doc.get("elements")
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise InputError("elements must be a list of label strings")
    size = len(labels)
    backend_name = doc.get("backend")
    if backend_name == "vectors":
        try:
            field = Field.from_spec(_expect_str(doc, "field"))
        except FieldFormatError as exc:
            raise InputError(f"bad field spec: {exc}") from None
        raw = _expect_list(doc, "data")
        if len(raw) != size:
            raise InputError("vector count does not match element count")
        vectors = []
        for vec in raw:
            if not isinstance(vec, list) or not all(isinstance(x, str) for x in vec):
                raise InputError("each vector must be a list of entry strings")
            try:
                vectors.append([field.parse(x) for x in vec])
            except FieldFormatError as exc:
                raise InputError(f"bad vector entry: {exc}") from None
        backend = VectorBackend(field, vectors)
    elif backend_name == "lines":
        backend = LineBackend(size, _index_lists(doc, "data", size))
    elif backend_name == "circuits":
        backend = CircuitBackend(size, _index_lists(doc, "data", size))
    else:
        raise InputError(f"unknown backend {backend_name!r}")
    M = Matroid(backend, labels)
    if "name" in doc:
        M.name = doc["name"]
    return M


def save_matroid(M: Matroid, path: str | Path, *, name: str | None = None,
                 description: str | None = None) -> None:
    text = dumps(matroid_to_dict(M, name=name, description=description))
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None


def load_matroid(path: str | Path) -> Matroid:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from None
    return matroid_from_dict(doc)


def dumps(doc: dict) -> str:
    """Canonical JSON text: sorted keys, stable separators, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _expect_str(doc: dict, key: str) -> str:
    v = doc.get(key)
    if not isinstance(v, str):
        raise InputError(f"field {key!r} must be a string")
    return v


def _expect_list(doc: dict, key: str) -> list:
    v = doc.get(key)
    if not isinstance(v, list):
        raise InputError(f"field {key!r} must be a list")
    return v


def _index_lists(doc: dict, key: str, size: int) -> list[list[int]]:
    out = []
    for row in _expect_list(doc, key):
        if not isinstance(row, list) or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in row
        ):
            raise InputError(f"each entry of {key!r} must be a list of integers")
        if not all(0 <= x < size for x in row):
            raise InputError(f"{key!r} entry out of range: {row}")
        out.append(row)
    return out
