"""JSON codecs for the library's value types.

Complex numbers are ``[re, im]`` pairs; plain JSON numbers are accepted on
input as real values.  Decoding errors are :class:`InputError` whose
``field`` is a JSON pointer (``/targets/1/data/0/2``) to the offending item.
"""

from __future__ import annotations

import json
import math
from typing import Any, List

import numpy as np

from .config import DEFAULT, Config
from .discgeo import BlaschkeProduct
from .errors import InputError
from .funcalc import BlaschkeFunction, HoloFunction, PolynomialFunction, RationalFunction, TableFunction
from .polynomials import ComplexPoly


def _ptr(base: str, key) -> str:
    return f"{base}/{key}"


def complex_from_json(v: Any, at: str = "") -> complex:
    if isinstance(v, bool):
        raise InputError(f"expected a number or [re, im], got {v!r}", field=at or "/")
    if isinstance(v, (int, float)):
        z = complex(v)
    elif isinstance(v, (list, tuple)) and len(v) == 2 and all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in v
    ):
        z = complex(v[0], v[1])
    else:
        raise InputError(f"expected a number or [re, im], got {v!r}", field=at or "/")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InputError("non-finite number", field=at or "/")
    return z


def complex_to_json(z: complex) -> List[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _list(v: Any, at: str, what: str) -> list:
    if not isinstance(v, list):
        raise InputError(f"expected a list of {what}", field=at or "/")
    return v


def _obj(v: Any, at: str, keys) -> dict:
    if not isinstance(v, dict):
        raise InputError("expected an object", field=at or "/")
    for k in keys:
        if k not in v:
            raise InputError(f"missing key {k!r}", field=_ptr(at, k))
    return v


def complex_list_from_json(v: Any, at: str = "") -> np.ndarray:
    return np.array([complex_from_json(x, _ptr(at, i)) for i, x in enumerate(_list(v, at, "numbers"))], dtype=complex)


# -- Matrix ------------------------------------------------------------------


def matrix_to_json(A) -> dict:
    A = np.asarray(A, dtype=complex)
    return {"n": int(A.shape[0]), "data": [[complex_to_json(x) for x in row] for row in A]}


def matrix_from_json(v: Any, at: str = "") -> np.ndarray:
    if isinstance(v, list):
        # bare nested list accepted for convenience
        rows = v
        data_at = at
        n = len(rows)
    else:
        _obj(v, at, ("data",))
        rows = _list(v["data"], _ptr(at, "data"), "rows")
        data_at = _ptr(at, "data")
        n = len(rows)
        if "n" in v and (not isinstance(v["n"], int) or isinstance(v["n"], bool) or v["n"] != n):
            raise InputError(f"n = {v['n']!r} does not match {n} rows", field=_ptr(at, "n"))
    if n < 1:
        raise InputError("matrix must be nonempty", field=data_at or "/")
    out = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(rows):
        row_at = _ptr(data_at, i)
        row = _list(row, row_at, "entries")
        if len(row) != n:
            raise InputError(f"row {i} has {len(row)} entries, expected {n}", field=row_at)
        for j, x in enumerate(row):
            out[i, j] = complex_from_json(x, _ptr(row_at, j))
    return out


# -- Polynomials and Blaschke products --------------------------------------


def poly_from_json(v: Any, at: str = "") -> ComplexPoly:
    if isinstance(v, dict):
        _obj(v, at, ("coeffs",))
        return ComplexPoly(complex_list_from_json(v["coeffs"], _ptr(at, "coeffs")))
    return ComplexPoly(complex_list_from_json(v, at))


def blaschke_from_json(v: Any, at: str = "") -> BlaschkeProduct:
    _obj(v, at, ("zeros",))
    zeros = []
    for i, item in enumerate(_list(v["zeros"], _ptr(at, "zeros"), "zeros")):
        item_at = _ptr(_ptr(at, "zeros"), i)
        _obj(item, item_at, ("a",))
        a = complex_from_json(item["a"], _ptr(item_at, "a"))
        mult = item.get("mult", 1)
        if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
            raise InputError("mult must be a positive integer", field=_ptr(item_at, "mult"))
        if not abs(a) < 1:
            raise InputError(f"zero {a} is outside the open unit disc", field=_ptr(item_at, "a"))
        zeros.append((a, mult))
    front = complex_from_json(v.get("front", [1.0, 0.0]), _ptr(at, "front"))
    try:
        return BlaschkeProduct(tuple(zeros), front)
    except InputError as exc:
        exc.field = _ptr(at, exc.field or "")
        raise


def blaschke_to_json(b: BlaschkeProduct) -> dict:
    return b.to_json()


# -- HoloFunction ------------------------------------------------------------

_KINDS = ("polynomial", "rational", "blaschke", "table")


def function_from_json(v: Any, at: str = "") -> HoloFunction:
    _obj(v, at, ("kind",))
    kind = v["kind"]
    if kind not in _KINDS:
        raise InputError(f"kind must be one of {', '.join(_KINDS)}, got {kind!r}", field=_ptr(at, "kind"))
    if kind == "polynomial":
        _obj(v, at, ("coeffs",))
        return PolynomialFunction(ComplexPoly(complex_list_from_json(v["coeffs"], _ptr(at, "coeffs"))))
    if kind == "rational":
        _obj(v, at, ("num", "den"))
        num = ComplexPoly(complex_list_from_json(v["num"], _ptr(at, "num")))
        den = ComplexPoly(complex_list_from_json(v["den"], _ptr(at, "den")))
        if den.is_zero():
            raise InputError("denominator is the zero polynomial", field=_ptr(at, "den"))
        return RationalFunction(num, den)
    if kind == "blaschke":
        return BlaschkeFunction(blaschke_from_json(v, at))
    _obj(v, at, ("points",))
    points = []
    for i, item in enumerate(_list(v["points"], _ptr(at, "points"), "points")):
        item_at = _ptr(_ptr(at, "points"), i)
        _obj(item, item_at, ("at", "derivs"))
        p = complex_from_json(item["at"], _ptr(item_at, "at"))
        d = complex_list_from_json(item["derivs"], _ptr(item_at, "derivs"))
        if d.size == 0:
            raise InputError("at least the value f(at) is required", field=_ptr(item_at, "derivs"))
        points.append((p, d))
    return TableFunction(points)


def function_to_json(f: HoloFunction) -> dict:
    return f.to_json()


# -- SymPoint and datasets ---------------------------------------------------


def sym_point_from_json(v: Any, at: str = "") -> np.ndarray:
    if isinstance(v, dict):
        _obj(v, at, ("coords",))
        X = complex_list_from_json(v["coords"], _ptr(at, "coords"))
        where = _ptr(at, "coords")
    else:
        X = complex_list_from_json(v, at)
        where = at
    if X.size < 1:
        raise InputError("a SymPoint needs at least one coordinate", field=where or "/")
    return X


def sym_point_to_json(X) -> dict:
    return {"coords": [complex_to_json(x) for x in np.asarray(X, dtype=complex).ravel()]}


def dataset_from_json(v: Any, cfg: Config = DEFAULT, at: str = ""):
    from .nptest import InterpolationData

    _obj(v, at, ("nodes", "targets"))
    nodes = complex_list_from_json(v["nodes"], _ptr(at, "nodes"))
    targets = [
        matrix_from_json(t, _ptr(_ptr(at, "targets"), i))
        for i, t in enumerate(_list(v["targets"], _ptr(at, "targets"), "matrices"))
    ]
    try:
        return InterpolationData(nodes, targets, cfg)
    except InputError as exc:
        field = exc.field or ""
        # "targets[1]" / "nodes[0]" -> JSON pointer
        field = field.replace("[", "/").replace("]", "")
        exc.field = _ptr(at, field) if field else (at or "/")
        raise


def dataset_to_json(data) -> dict:
    return data.to_json()


def load_json_file(path: str, what: str = "input") -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise InputError(f"{what} file not found: {path}", field=what) from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} is not valid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}", field=what) from exc


def dumps(obj: Any) -> str:
    """Deterministic JSON: sorted keys, fixed separators, shortest float repr."""
    return json.dumps(_plain(obj), sort_keys=True, separators=(",", ":"), allow_nan=False)


def _plain(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        if math.isnan(x):
            return "nan"
        return x
    if isinstance(obj, (complex, np.complexfloating)):
        return complex_to_json(obj)
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    return obj


SCHEMAS = {
    "Matrix": {"n": "int", "data": "n x n list of [re, im]"},
    "ComplexPoly": {"coeffs": "list of [re, im], ascending degree"},
    "BlaschkeProduct": {"zeros": [{"a": "[re, im], |a| < 1", "mult": "positive int"}], "front": "[re, im], |front| = 1"},
    "HoloFunction": {
        "polynomial": {"kind": "polynomial", "coeffs": "list of [re, im]"},
        "rational": {"kind": "rational", "num": "list of [re, im]", "den": "list of [re, im]"},
        "blaschke": {"kind": "blaschke", "zeros": "as BlaschkeProduct", "front": "[re, im]"},
        "table": {"kind": "table", "points": [{"at": "[re, im]", "derivs": "list of [re, im]: f, f', f'', ..."}]},
    },
    "SymPoint": {"coords": "list of [re, im] (X_1, ..., X_n)"},
    "Dataset": {"nodes": "list of [re, im] in the unit disc", "targets": "list of Matrix"},
    "Verdict": {"status": "infeasible | inconclusive", "witness": "object with lhs, rhs and per-branch detail"},
    "Config": "see `nevpick --schema` field list under Config",
}
