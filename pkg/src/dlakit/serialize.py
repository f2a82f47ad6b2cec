"""JSON forms of generator specs and graphs.

Spec files look like::

    {"qubits": 2,
     "generators": [{"pauli_sum": [{"string": "XI", "coeff": "1"}]},
                    {"dense": [[["re", "im"], ...], ...]}],
     "meta": {...}}

Coefficients are decimal strings with 17 significant digits, which makes the
float round trip exact. Graph files use 1-based vertices.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

from .constructions import GeneratorSpec
from .dense import matrix_from_json, matrix_to_json
from .errors import DLAError, SpecFormatError
from .numeric import is_pauli
from .pauli import PauliCombination


def spec_to_json(spec: GeneratorSpec) -> dict:
    gens = []
    for g in spec.generators:
        if is_pauli(g):
            gens.append({"pauli_sum": g.to_json()})
        else:
            gens.append({"dense": matrix_to_json(g)})
    meta = {"family_tag": spec.family_tag, **spec.meta}
    return {"qubits": spec.qubit_count, "generators": gens, "meta": meta}


def spec_from_json(obj) -> GeneratorSpec:
    if not isinstance(obj, dict):
        raise SpecFormatError("spec must be a JSON object")
    try:
        n = int(obj["qubits"])
        items = obj["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecFormatError(f"missing or invalid field: {exc}") from None
    if not isinstance(items, list) or not items:
        raise SpecFormatError("generators must be a non-empty list")
    gens = []
    for k, item in enumerate(items):
        try:
            if "pauli_sum" in item:
                g = PauliCombination.from_json(item["pauli_sum"], n)
            elif "dense" in item:
                g = matrix_from_json(item["dense"])
            else:
                raise SpecFormatError(f"generator {k} has neither pauli_sum nor dense")
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DLAError):
                raise
            raise SpecFormatError(f"generator {k}: {exc}") from None
        gens.append(g)
    meta = obj.get("meta") or {}
    if not isinstance(meta, dict):
        raise SpecFormatError("meta must be an object")
    meta = dict(meta)
    tag = str(meta.pop("family_tag", ""))
    return GeneratorSpec(n, tuple(gens), tag, meta)


def graph_from_json(obj) -> tuple[int, list[tuple[int, int]]]:
    """``{"vertices": n, "edges": [[u, v], ...]}`` (1-based) to 0-based edges."""
    try:
        n = int(obj["vertices"])
        edges = [(int(u) - 1, int(v) - 1) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecFormatError(f"malformed graph: {exc}") from None
    return n, edges


def graph_to_json(n: int, edges) -> dict:
    return {"vertices": n, "edges": [[u + 1, v + 1] for u, v in edges]}


def load_json(path):
    text = sys.stdin.read() if str(path) == "-" else Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"invalid JSON in {path}: {exc}") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_json(obj, path=None) -> None:
    text = dumps(obj)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
