"""Canonical JSON serialization of models.

Schema
    {
      "dims": [n_minus, n_zero, n_plus],
      "names": ["w1", ...],
      "brackets": [[i, j, [[k, "p/q"], ...]], ...],   # i < j, global indices
      "reps": {"label": {"dim": d, "matrices": [[["p/q", ...], ...], ...]}},
      "meta": {...}                                    # optional
    }

Emission is canonical (sorted brackets and rep labels, compact separators),
so emit(parse(text)) round-trips byte-identically for canonical files.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .linalg import QMatrix
from .model import LieModel, Rep
from .scalars import parse_rational


class ModelSchemaError(ValueError):
    pass


def _req(obj: dict, key: str, where: str):
    if key not in obj:
        raise ModelSchemaError(f"missing field {key!r} in {where}")
    return obj[key]


def model_to_obj(m: LieModel) -> dict:
    brackets = []
    for (i, j) in sorted(m.brackets):
        comp = [[k, str(c)] for k, c in sorted(m.brackets[(i, j)].items())]
        brackets.append([i, j, comp])
    reps = {}
    for label in sorted(m.reps):
        rep = m.reps[label]
        reps[label] = {
            "dim": rep.dim,
            "matrices": [[[str(c) for c in row] for row in mat.data] for mat in rep.matrices],
        }
    obj = {
        "dims": list(m.dims),
        "names": list(m.names),
        "brackets": brackets,
        "reps": reps,
    }
    meta = _meta_obj(m)
    if meta:
        obj["meta"] = meta
    return obj


def _meta_obj(m: LieModel) -> dict:
    meta = {}
    if "family" in m.meta:
        meta["family"] = m.meta["family"]
    if "params" in m.meta:
        meta["params"] = {k: m.meta["params"][k] for k in sorted(m.meta["params"])}
    flags = {}
    for label in sorted(m.reps):
        rep = m.reps[label]
        if rep.ghost or rep.g_module:
            flags[label] = {"ghost": rep.ghost, "g_module": rep.g_module}
    if flags:
        meta["flags"] = flags
    for key in ("pairing", "plus_transport"):
        if key in m.meta:
            meta[key] = [[str(Fraction(c)) for c in row] for row in m.meta[key]]
    return meta


def emit_model_json(m: LieModel) -> str:
    return json.dumps(model_to_obj(m), separators=(",", ":")) + "\n"


def model_from_obj(obj: dict) -> LieModel:
    if not isinstance(obj, dict):
        raise ModelSchemaError("top level must be an object")
    dims = _req(obj, "dims", "model")
    if (not isinstance(dims, list) or len(dims) != 3
            or any(not isinstance(d, int) or d < 0 for d in dims)):
        raise ModelSchemaError("dims must be three non-negative integers")
    names = _req(obj, "names", "model")
    total = sum(dims)
    if not isinstance(names, list) or len(names) != total:
        raise ModelSchemaError(f"names must list exactly {total} strings")
    brackets = {}
    for entry in _req(obj, "brackets", "model"):
        try:
            i, j, comp = entry
        except ValueError:
            raise ModelSchemaError(f"malformed bracket entry {entry!r}")
        if not (isinstance(i, int) and isinstance(j, int) and 0 <= i < j < total):
            raise ModelSchemaError(f"bracket indices ({i},{j}) out of range (0..{total - 1}, i<j)")
        parsed = {}
        for pair in comp:
            try:
                k, coeff = pair
            except ValueError:
                raise ModelSchemaError(f"malformed bracket term {pair!r} in ({i},{j})")
            if not (isinstance(k, int) and 0 <= k < total):
                raise ModelSchemaError(
                    f"bracket ({i},{j}) hits generator {k} outside 0..{total - 1}")
            try:
                parsed[k] = parse_rational(coeff)
            except (ValueError, TypeError):
                raise ModelSchemaError(
                    f"bracket ({i},{j}) component {k} has non-rational coefficient {coeff!r}")
        brackets[(i, j)] = parsed
    meta_obj = obj.get("meta", {})
    meta = {}
    if "family" in meta_obj:
        meta["family"] = meta_obj["family"]
    if "params" in meta_obj:
        meta["params"] = dict(meta_obj["params"])
    for key in ("pairing", "plus_transport"):
        if key in meta_obj:
            meta[key] = [[parse_rational(c) for c in row] for row in meta_obj[key]]
    flags = meta_obj.get("flags", {})
    reps = {}
    for label, rd in _req(obj, "reps", "model").items():
        dim = _req(rd, "dim", f"rep {label!r}")
        mats = _req(rd, "matrices", f"rep {label!r}")
        if len(mats) != dims[1]:
            raise ModelSchemaError(
                f"rep {label!r} needs one matrix per g0 generator ({dims[1]}), got {len(mats)}")
        parsed_mats = []
        for mat in mats:
            if len(mat) != dim or any(len(row) != dim for row in mat):
                raise ModelSchemaError(f"rep {label!r} matrices must be {dim}x{dim}")
            try:
                parsed_mats.append(QMatrix([[parse_rational(c) for c in row] for row in mat]))
            except ValueError as e:
                raise ModelSchemaError(f"rep {label!r}: {e}")
        f = flags.get(label, {})
        reps[label] = Rep(label, parsed_mats, ghost=bool(f.get("ghost")),
                          g_module=bool(f.get("g_module")))
    try:
        return LieModel(tuple(dims), names, brackets, reps=reps, meta=meta)
    except ValueError as e:
        raise ModelSchemaError(str(e))


def parse_model_json(text: str) -> LieModel:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelSchemaError(f"invalid JSON: {e}")
    return model_from_obj(obj)


def parse_model_file(path: str) -> LieModel:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_model_json(fh.read())
