"""Deterministic JSON/TSV encodings of reports, records and structure constants.

Rationals are always written as ``"p/q"`` strings.  A scalar of Q(i, sqrt2)
is ``{"re": ..., "im": ...}`` with ``"re_sqrt2"``/``"im_sqrt2"`` present only
when nonzero, so Gaussian-rational entries have exactly the two plain keys.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping

from . import __version__
from .cahen_wallach import CWParams, b_form, decomposability
from .matrix import CMatrix
from .moduli import ClassificationRecord, ModuliPoint
from .scalars import Surd, as_surd, parse_rational
from .superalgebra import BracketTable, bracket_table

SCHEMA = 1

__all__ = [
    "SCHEMA",
    "rational",
    "scalar_to_json",
    "scalar_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "params_to_json",
    "record_to_json",
    "record_tsv_header",
    "record_to_tsv",
    "dump_document",
    "table_to_json",
    "loaded_to_json",
    "jsonl",
    "load_dump",
    "dumps",
]


def rational(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def scalar_to_json(x) -> Dict[str, str]:
    re, im, rs, ims = as_surd(x).parts()
    out = {"re": rational(re), "im": rational(im)}
    if rs:
        out["re_sqrt2"] = rational(rs)
    if ims:
        out["im_sqrt2"] = rational(ims)
    return out


def scalar_from_json(obj: Mapping[str, str]) -> Surd:
    get = lambda k: parse_rational(obj.get(k, "0"))
    return Surd.from_parts(get("re"), get("im"), get("re_sqrt2"), get("im_sqrt2"))


def matrix_to_json(m: CMatrix) -> List[List[Dict[str, str]]]:
    return [[scalar_to_json(x) for x in row] for row in m.entries()]


def matrix_from_json(rows) -> CMatrix:
    return CMatrix.from_rows([[scalar_from_json(x) for x in row] for row in rows])


def params_to_json(p: CWParams) -> Dict[str, str]:
    return {
        "alpha_minus": rational(p.alpha_minus),
        "alpha_plus_prime": rational(p.alpha_plus_prime),
        "alpha_plus": rational(p.alpha_plus),
        "alpha_minus_prime": rational(p.alpha_minus_prime),
    }


def _point_json(pt: ModuliPoint) -> Dict[str, str]:
    return params_to_json(pt.params())


def record_to_json(rec: ClassificationRecord) -> dict:
    return {
        "schema": SCHEMA,
        "point": _point_json(rec.point),
        "b_eigenvalues": [rational(v) for v in rec.b_eigenvalues],
        "zero_count": rec.zero_count,
        "indecomposable": rec.indecomposable,
        "susy": rec.susy,
        "nu": rational(rec.nu),
        "parallel_dim": rec.parallel_dim,
        "tags": list(rec.tags),
        "mode": rec.mode,
    }


_TSV_COLUMNS = ("alpha_minus", "alpha_plus_prime", "alpha_plus", "alpha_minus_prime",
                "zero_count", "indecomposable", "susy", "nu", "parallel_dim", "tags", "mode")


def record_tsv_header() -> str:
    return "\t".join(_TSV_COLUMNS)


def record_to_tsv(rec: ClassificationRecord) -> str:
    j = record_to_json(rec)
    vals = list(j["point"].values()) + [
        str(rec.zero_count), str(rec.indecomposable).lower(), str(rec.susy).lower(),
        j["nu"], str(rec.parallel_dim), ",".join(rec.tags), rec.mode,
    ]
    return "\t".join(vals)


def dumps(obj) -> str:
    """Canonical JSON text (sorted keys, fixed separators)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# structure constants


def dump_document(params: CWParams) -> dict:
    B = b_form(params)
    reduced = not decomposability(B).indecomposable
    table = bracket_table(params, reduced=reduced)
    return table_to_json(table, reduced)


def table_to_json(table: BracketTable, reduced: bool) -> dict:
    B = b_form(table.params)
    return {
        "schema": SCHEMA,
        "metadata": {
            "parameters": params_to_json(table.params),
            "b_eigenvalues": [rational(v) for v in B.diag],
            "epsilon": table.sign,
            "reduced": reduced,
            "version": __version__,
            "mode": "exact",
        },
        "even_labels": list(table.labels),
        "even_even": [[a, b, c, scalar_to_json(v)] for a, b, c, v in table.algebra.sparse_triples()],
        "even_odd": {l: matrix_to_json(table.action[l]) for l in table.labels},
        "odd_odd": {l: matrix_to_json(table.forms[l]) for l in table.labels if l in table.forms},
    }


def load_dump(doc: Mapping) -> dict:
    """Decode a structure-constant document into exact objects."""
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    meta = doc["metadata"]
    p = meta["parameters"]
    params = CWParams.from_tuple(tuple(parse_rational(p[k]) for k in
                                       ("alpha_minus", "alpha_plus_prime", "alpha_plus", "alpha_minus_prime")))
    return {
        "params": params,
        "b_eigenvalues": tuple(parse_rational(v) for v in meta["b_eigenvalues"]),
        "epsilon": int(meta["epsilon"]),
        "reduced": bool(meta["reduced"]),
        "version": meta["version"],
        "labels": tuple(doc["even_labels"]),
        "even_even": [(a, b, c, scalar_from_json(v)) for a, b, c, v in doc["even_even"]],
        "even_odd": {l: matrix_from_json(m) for l, m in doc["even_odd"].items()},
        "odd_odd": {l: matrix_from_json(m) for l, m in doc["odd_odd"].items()},
    }


def loaded_to_json(data: Mapping) -> dict:
    """Inverse of :func:`load_dump`."""
    p = data["params"]
    return {
        "schema": SCHEMA,
        "metadata": {
            "parameters": params_to_json(p),
            "b_eigenvalues": [rational(v) for v in data["b_eigenvalues"]],
            "epsilon": data["epsilon"],
            "reduced": data["reduced"],
            "version": data["version"],
            "mode": "exact",
        },
        "even_labels": list(data["labels"]),
        "even_even": [[a, b, c, scalar_to_json(v)] for a, b, c, v in data["even_even"]],
        "even_odd": {l: matrix_to_json(m) for l, m in data["even_odd"].items()},
        "odd_odd": {l: matrix_to_json(m) for l, m in data["odd_odd"].items()},
    }


def jsonl(objs: Iterable[dict]) -> str:
    return "".join(dumps(o) + "\n" for o in objs)
