# -*- coding: utf-8 -*-
"""
GroupoidDocument: the JSON file format for finite groupoids.

{
  "schema_version": "groupoid-document/1",
  "elements": ["x", "g", ...],
  "units": ["x", ...],
  "src": {"g": "x", ...}, "rng": {...}, "inv": {...},
  "comp": [["g", "g", "x"], ...]
}
"""

import json
import logging
import os
from itertools import product
from typing import Any, Dict, Optional

from constants import DOCUMENT_FIELDS, ERROR_MESSAGES, SCHEMA_VERSION
from errors import DocumentError
from groupoid_core import FiniteGroupoid

logger = logging.getLogger(__name__)


# =============================================================================
#                           ENCODE
# =============================================================================


def encode(G: FiniteGroupoid) -> Dict[str, Any]:
    lab = G.labels
    comp = [[lab[a], lab[b], lab[G.comp[a][b]]]
            for a, b in product(G.elements, repeat=2) if G.comp[a][b] is not None]
    return {
        "schema_version": SCHEMA_VERSION,
        "elements": list(lab),
        "units": [lab[x] for x in G.unit_list],
        "src": {lab[a]: lab[G.src[a]] for a in G.elements},
        "rng": {lab[a]: lab[G.rng[a]] for a in G.elements},
        "comp": comp,
        "inv": {lab[a]: lab[G.inv[a]] for a in G.elements},
    }


def dumps(G: FiniteGroupoid) -> str:
    return json.dumps(encode(G), indent=2, ensure_ascii=False)


def save(G: FiniteGroupoid, path: str):
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(G))
    logger.info("wrote %s (%d arrows) to %s", G.name, len(G), path)


# =============================================================================
#                           DECODE
# =============================================================================


def _schema_error(detail: str, witness=None) -> DocumentError:
    return DocumentError(f"{ERROR_MESSAGES['bad_schema']}: {detail}", witness=witness)


def _label_map(data: Dict, key: str, index: Dict[str, int]) -> list:
    mapping = data[key]
    if not isinstance(mapping, dict):
        raise _schema_error(f"'{key}' must be an object")
    extra = sorted(set(mapping) - set(index))
    if extra:
        raise DocumentError(f"{ERROR_MESSAGES['unknown_label']} in '{key}'", witness=extra)
    missing = sorted(set(index) - set(mapping), key=index.get)
    if missing:
        raise _schema_error(f"'{key}' has no entry for every element", witness=missing)
    result = [None] * len(index)
    for label, target in mapping.items():
        if not isinstance(target, str) or target not in index:
            raise DocumentError(f"{ERROR_MESSAGES['unknown_label']} in '{key}'", witness=target)
        result[index[label]] = index[target]
    return result


def decode(data: Any, name: str = "document") -> FiniteGroupoid:
    """Strict schema check and conversion; the axioms are left to validate()"""
    if not isinstance(data, dict):
        raise _schema_error("top level must be an object")
    unknown = sorted(set(data) - DOCUMENT_FIELDS)
    if unknown:
        raise _schema_error("unknown fields", witness=unknown)
    missing = sorted(DOCUMENT_FIELDS - set(data))
    if missing:
        raise _schema_error("missing fields", witness=missing)
    if data["schema_version"] != SCHEMA_VERSION:
        raise _schema_error(f"unsupported schema_version {data['schema_version']!r}")

    elements = data["elements"]
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise _schema_error("'elements' must be a list of strings")
    if len(set(elements)) != len(elements):
        duplicates = sorted({e for e in elements if elements.count(e) > 1})
        raise _schema_error("duplicate element labels", witness=duplicates)
    index = {label: i for i, label in enumerate(elements)}

    units = data["units"]
    if not isinstance(units, list):
        raise _schema_error("'units' must be a list")
    stray = [u for u in units if not isinstance(u, str) or u not in index]
    if stray:
        raise DocumentError(f"{ERROR_MESSAGES['unknown_label']} in 'units'", witness=stray)

    src = _label_map(data, "src", index)
    rng = _label_map(data, "rng", index)
    inv = _label_map(data, "inv", index)

    comp = {}
    if not isinstance(data["comp"], list):
        raise _schema_error("'comp' must be a list of triples")
    for entry in data["comp"]:
        if not isinstance(entry, list) or len(entry) != 3:
            raise _schema_error("'comp' entries must be [a, b, ab] triples", witness=entry)
        bad = [label for label in entry if not isinstance(label, str) or label not in index]
        if bad:
            raise DocumentError(f"{ERROR_MESSAGES['unknown_label']} in 'comp'", witness=bad)
        a, b, c = (index[label] for label in entry)
        if (a, b) in comp and comp[(a, b)] != c:
            raise _schema_error("conflicting products", witness=entry[:2])
        comp[(a, b)] = c

    G = FiniteGroupoid.from_tables(elements, [index[u] for u in units], src, rng, comp, inv, name)
    logger.debug("decoded %s: %d arrows, %d units", name, len(G), len(G.units))
    return G


def loads(text: str, name: str = "document") -> FiniteGroupoid:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"{ERROR_MESSAGES['bad_json']}: {e.msg}", witness={"line": e.lineno}) from e
    return decode(data, name)


def load(path: str, name: Optional[str] = None) -> FiniteGroupoid:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except (OSError, UnicodeDecodeError) as e:
        raise DocumentError(f"{ERROR_MESSAGES['unreadable_file']}: {path}", witness=str(e)) from e
    return loads(text, name or os.path.splitext(os.path.basename(path))[0])
