"""JSON input format.

    {"dimension": 4,
     "blocks": [{"id": "v", "genus": 0, "boundary": ["1", "-1", ...]}],
     "gluings": [{"from": "1", "to": "-1", "matrix": [[1, 1, 0], ...]}],
     "notes": ["optional free text, echoed in reports"]}

Integers may be JSON numbers or decimal strings (for values that other
tools would truncate).
"""
from __future__ import annotations

import hashlib
import json

from .errors import ManifoldSyntaxError, SchemaError
from .exact_linalg import IntMatrix
from .manifold import BlockSpec, GluingSpec, ManifoldSpec


def _int(value, field):
    if isinstance(value, bool):
        raise SchemaError("expected an integer, got a boolean", field)
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value.strip(), 10)
        except ValueError:
            pass
    raise SchemaError(f"expected an integer, got {value!r}", field)


def _str(value, field):
    if not isinstance(value, str) or not value:
        raise SchemaError(f"expected a non-empty string, got {value!r}", field)
    return value


def _list(value, field):
    if not isinstance(value, list):
        raise SchemaError(f"expected a list, got {type(value).__name__}", field)
    return value


def _keys(obj, required, optional, field):
    if not isinstance(obj, dict):
        raise SchemaError(f"expected an object, got {type(obj).__name__}", field)
    missing = required - obj.keys()
    if missing:
        raise SchemaError(f"missing key(s) {sorted(missing)}", field)
    extra = obj.keys() - required - optional
    if extra:
        raise SchemaError(f"unknown key(s) {sorted(extra)}", field)


def spec_from_obj(obj) -> ManifoldSpec:
    _keys(obj, {"dimension", "blocks", "gluings"}, {"notes"}, "manifold")
    n = _int(obj["dimension"], "dimension")

    raw_blocks = _list(obj["blocks"], "blocks")
    if not raw_blocks:
        raise SchemaError("at least one block is required", "blocks")
    blocks = []
    for i, b in enumerate(raw_blocks):
        f = f"blocks[{i}]"
        _keys(b, {"id", "genus", "boundary"}, set(), f)
        genus = _int(b["genus"], f"{f}.genus")
        if genus < 0:
            raise SchemaError("genus must be nonnegative", f"{f}.genus")
        labels = [
            _str(w, f"{f}.boundary[{j}]") for j, w in enumerate(_list(b["boundary"], f"{f}.boundary"))
        ]
        blocks.append(BlockSpec(_str(b["id"], f"{f}.id"), genus, labels))

    gluings = []
    side = n - 1
    for i, g in enumerate(_list(obj["gluings"], "gluings")):
        f = f"gluings[{i}]"
        _keys(g, {"from", "to", "matrix"}, set(), f)
        rows = _list(g["matrix"], f"{f}.matrix")
        if len(rows) != side:
            raise SchemaError(f"expected {side} rows, got {len(rows)}", f"{f}.matrix")
        entries = []
        for r, row in enumerate(rows):
            row = _list(row, f"{f}.matrix[{r}]")
            if len(row) != side:
                raise SchemaError(f"expected {side} entries, got {len(row)}", f"{f}.matrix[{r}]")
            entries.append([_int(x, f"{f}.matrix[{r}][{c}]") for c, x in enumerate(row)])
        gluings.append(
            GluingSpec(
                _str(g["from"], f"{f}.from"),
                _str(g["to"], f"{f}.to"),
                IntMatrix.from_rows(entries, cols=side),
            )
        )

    notes = [_str(s, f"notes[{i}]") for i, s in enumerate(_list(obj.get("notes", []), "notes"))]
    return ManifoldSpec(n, blocks, gluings, notes)


def parse_manifold(text: str) -> ManifoldSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifoldSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return spec_from_obj(obj)


def spec_to_obj(spec: ManifoldSpec) -> dict:
    obj = {
        "dimension": spec.dimension,
        "blocks": [{"id": b.id, "genus": b.genus, "boundary": list(b.boundary)} for b in spec.blocks],
        "gluings": [
            {"from": g.source, "to": g.target, "matrix": g.matrix.to_rows()} for g in spec.gluings
        ],
    }
    if spec.notes:
        obj["notes"] = list(spec.notes)
    return obj


def serialize_manifold(spec: ManifoldSpec, indent: int | None = 2) -> str:
    return json.dumps(spec_to_obj(spec), indent=indent)


def spec_digest(spec: ManifoldSpec) -> str:
    """SHA-256 of the canonical compact serialization."""
    canon = json.dumps(spec_to_obj(spec), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def load_manifold(path) -> ManifoldSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_manifold(fh.read())
