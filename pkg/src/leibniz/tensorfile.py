"""JSON interchange formats.

``leibniz-tensor/1``::

    {"format": "leibniz-tensor/1", "dim": 2, "basis": ["e1", "e2"],
     "brackets": [{"left": 1, "right": 0, "result": {"0": "1"}}]}

Indices are 0-based, zero brackets are omitted and every coefficient is a
string ``"p"`` or ``"p/q"`` in lowest terms with ``q > 1``.  Serialisation is
canonical, so ``dumps_tensor(loads_tensor(text)) == text`` for canonical files.

``leibniz-extension/1`` carries an :class:`~leibniz.extensions.ExtensionData`
(fiber as an embedded tensor object, ``l``/``r`` as matrix lists, ``omega`` as
a table of vectors) and ``leibniz-matrix/1`` a single matrix.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from . import exactlin as xl
from .algebra import LeibnizAlgebra, from_brackets
from .extensions import ExtensionData

TENSOR_FORMAT = "leibniz-tensor/1"
EXTENSION_FORMAT = "leibniz-extension/1"
MATRIX_FORMAT = "leibniz-matrix/1"

_RATIONAL = re.compile(r"^-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?$")


class FormatError(ValueError):
    pass


def rational_str(x) -> str:
    return str(Fraction(x))


def parse_rational(s: Any) -> Fraction:
    if not isinstance(s, str) or not _RATIONAL.match(s):
        raise FormatError("malformed rational %r" % (s,))
    value = Fraction(s)
    if rational_str(value) != s:
        raise FormatError("rational %r is not in lowest terms" % (s,))
    return value


def matrix_to_json(m) -> list:
    return [[rational_str(x) for x in row] for row in m]


def vector_to_json(v) -> list:
    return [rational_str(x) for x in v]


def matrix_from_json(obj, rows=None, cols=None) -> xl.Matrix:
    if not isinstance(obj, list) or any(not isinstance(r, list) for r in obj):
        raise FormatError("matrix must be a list of rows")
    m = tuple(tuple(parse_rational(x) for x in r) for r in obj)
    if m and any(len(r) != len(m[0]) for r in m):
        raise FormatError("ragged matrix")
    if rows is not None and len(m) != rows:
        raise FormatError("expected %d rows, got %d" % (rows, len(m)))
    if cols is not None and any(len(r) != cols for r in m):
        raise FormatError("expected %d columns" % cols)
    return m


def vector_from_json(obj, length=None) -> xl.Vector:
    if not isinstance(obj, list):
        raise FormatError("vector must be a list")
    v = tuple(parse_rational(x) for x in obj)
    if length is not None and len(v) != length:
        raise FormatError("expected a vector of length %d" % length)
    return v


# -- tensors -----------------------------------------------------------------


def tensor_to_obj(L: LeibnizAlgebra) -> dict:
    brackets = []
    for i, j, v in L.nonzero_brackets():
        result = {str(k): rational_str(c) for k, c in enumerate(v) if c}
        brackets.append({"left": i, "right": j, "result": result})
    return {"format": TENSOR_FORMAT, "dim": L.dim, "basis": list(L.labels), "brackets": brackets}


def _index(x, dim, what):
    if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < dim:
        raise FormatError("%s index %r out of range for dim %d" % (what, x, dim))
    return x


def tensor_from_obj(obj: Any) -> LeibnizAlgebra:
    if not isinstance(obj, dict):
        raise FormatError("tensor file must be a JSON object")
    if obj.get("format") != TENSOR_FORMAT:
        raise FormatError("unsupported format tag %r" % (obj.get("format"),))
    dim = obj.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise FormatError("dim must be a non-negative integer")
    basis = obj.get("basis", None)
    if basis is None:
        basis = ["e%d" % (i + 1) for i in range(dim)]
    if not isinstance(basis, list) or len(basis) != dim or not all(isinstance(b, str) for b in basis):
        raise FormatError("basis must be a list of %d strings" % dim)
    records = obj.get("brackets")
    if not isinstance(records, list):
        raise FormatError("brackets must be a list")
    br = {}
    for rec in records:
        if not isinstance(rec, dict) or set(rec) != {"left", "right", "result"}:
            raise FormatError("bracket record must have exactly left, right, result")
        i = _index(rec["left"], dim, "left")
        j = _index(rec["right"], dim, "right")
        if (i, j) in br:
            raise FormatError("duplicate bracket record (%d, %d)" % (i, j))
        res = rec["result"]
        if not isinstance(res, dict):
            raise FormatError("result must be an object")
        out = {}
        for k, c in res.items():
            if not isinstance(k, str) or not k.isdigit():
                raise FormatError("result key %r is not an index" % (k,))
            out[_index(int(k), dim, "result")] = parse_rational(c)
        br[(i, j)] = out
    return from_brackets(dim, br, basis)


def dumps_tensor(L: LeibnizAlgebra) -> str:
    return dumps(tensor_to_obj(L))


def loads_tensor(text: str) -> LeibnizAlgebra:
    return tensor_from_obj(_loads(text))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError("invalid JSON: %s" % exc) from None


# -- extension data ------------------------------------------------------------


def extension_to_obj(E: ExtensionData) -> dict:
    return {
        "format": EXTENSION_FORMAT,
        "base_dim": E.base_dim,
        "base_labels": list(E.base_labels),
        "fiber": tensor_to_obj(E.fiber),
        "l": [matrix_to_json(a) for a in E.l],
        "r": [matrix_to_json(a) for a in E.r],
        "omega": [[vector_to_json(v) for v in row] for row in E.omega],
    }


def extension_from_obj(obj: Any) -> ExtensionData:
    if not isinstance(obj, dict) or obj.get("format") != EXTENSION_FORMAT:
        raise FormatError("not a %s object" % EXTENSION_FORMAT)
    m = obj.get("base_dim")
    if isinstance(m, bool) or not isinstance(m, int) or m < 0:
        raise FormatError("base_dim must be a non-negative integer")
    fiber = tensor_from_obj(obj.get("fiber"))
    s = fiber.dim
    for key in ("l", "r", "omega"):
        if not isinstance(obj.get(key), list) or len(obj[key]) != m:
            raise FormatError("%s must be a list of length %d" % (key, m))
    l = tuple(matrix_from_json(a, s, s) for a in obj["l"])
    r = tuple(matrix_from_json(a, s, s) for a in obj["r"])
    omega = []
    for row in obj["omega"]:
        if not isinstance(row, list) or len(row) != m:
            raise FormatError("omega rows must have length %d" % m)
        omega.append(tuple(vector_from_json(v, s) for v in row))
    labels = obj.get("base_labels") or ()
    if labels and (not isinstance(labels, list) or len(labels) != m):
        raise FormatError("base_labels must list %d strings" % m)
    return ExtensionData(m, fiber, l, r, tuple(omega), tuple(labels))


def dumps_extension(E: ExtensionData) -> str:
    return dumps(extension_to_obj(E))


def loads_extension(text: str) -> ExtensionData:
    return extension_from_obj(_loads(text))


# -- matrices ----------------------------------------------------------------


def dumps_matrix(m) -> str:
    return dumps({"format": MATRIX_FORMAT, "matrix": matrix_to_json(m)})


def loads_matrix(text: str) -> xl.Matrix:
    """Accepts a ``leibniz-matrix/1`` object or a bare list of rows."""
    obj = _loads(text)
    if isinstance(obj, dict):
        if obj.get("format") != MATRIX_FORMAT:
            raise FormatError("not a %s object" % MATRIX_FORMAT)
        obj = obj.get("matrix")
    return matrix_from_json(obj)
