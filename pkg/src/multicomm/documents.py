"""JSON interchange: diagrams, measures, families, morphisms.

All numbers in documents are fraction strings such as ``"2/3"`` (integers and
integer strings are accepted on input). Point labels and indices are strings.
A limit element is written as the list of its coordinates in element order.

Diagram documents may omit maps between non-adjacent indices; missing maps
are filled in by composing along covers before validation, so a composite
that disagrees with a supplied map is still reported as a coherence violation.
"""

import json
from fractions import Fraction

from .diagram import SpaceMap, compute_limit, diagram_from_data, validate_poset
from .errors import ParseError
from .glue import validate_morphism
from .measures import Measure
from .polytope.linalg import format_fraction

SCHEMA = "multicomm-report/1"


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def dumps(doc):
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def parse_fraction(value, where="value"):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"{where}: expected a fraction string, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{where}: {value!r} is not a fraction") from None


def _require(doc, key, kind, where):
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object")
    if key not in doc:
        raise ParseError(f"{where}: missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise ParseError(f"{where}.{key}: wrong type {type(value).__name__}")
    return value


def _labels(values, where):
    if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
        raise ParseError(f"{where}: expected a list of strings")
    return values


# diagrams

def _split_arrow(key):
    parts = key.split("->")
    if len(parts) != 2 or not all(parts):
        raise ParseError(f"map key {key!r} must look like 'i->j'")
    return tuple(parts)


def _complete_maps(poset, maps):
    """Fill in maps for strict pairs by composing supplied ones."""
    maps = dict(maps)
    changed = True
    while changed:
        changed = False
        for i, j in poset.strict_pairs:
            if (i, j) in maps:
                continue
            for k in poset.elements:
                if (i, k) in maps and (k, j) in maps:
                    first, second = maps[(i, k)], maps[(k, j)]
                    maps[(i, j)] = {x: second[y] for x, y in first.items() if y in second}
                    changed = True
                    break
    return maps


def parse_diagram(doc):
    elements = _labels(_require(doc, "elements", list, "diagram"), "diagram.elements")
    covers = _require(doc, "covers", list, "diagram")
    for c in covers:
        if not (isinstance(c, list) and len(c) == 2 and all(isinstance(v, str) for v in c)):
            raise ParseError(f"diagram.covers: entry {c!r} is not a pair of strings")
    spaces = _require(doc, "spaces", dict, "diagram")
    spaces = {i: _labels(pts, f"diagram.spaces.{i}") for i, pts in spaces.items()}
    raw = _require(doc, "maps", dict, "diagram")
    maps = {}
    for key, assignment in raw.items():
        if not isinstance(assignment, dict) or not all(isinstance(v, str) for v in assignment.values()):
            raise ParseError(f"diagram.maps.{key}: expected an object of labels")
        maps[_split_arrow(key)] = dict(assignment)
    poset = validate_poset(elements, [tuple(c) for c in covers])
    maps = _complete_maps(poset, maps)
    return diagram_from_data(elements, [tuple(c) for c in covers], spaces, maps)


def diagram_to_json(diagram):
    return {
        "elements": list(diagram.indices),
        "covers": [list(c) for c in diagram.poset.covers],
        "spaces": {i: list(diagram.spaces[i].points) for i in diagram.indices},
        "maps": {
            f"{i}->{j}": dict(diagram.maps[(i, j)].assignment)
            for i, j in diagram.poset.strict_pairs
        },
    }


# measures and families

def _point_key(p):
    return list(p) if isinstance(p, tuple) else p


def _point_from_json(p, where):
    if isinstance(p, list):
        if not all(isinstance(v, str) for v in p):
            raise ParseError(f"{where}: tuple point must list strings")
        return tuple(p)
    if isinstance(p, str):
        return p
    raise ParseError(f"{where}: bad point {p!r}")


def measure_to_json(mu):
    """Weights as an object for plain labels, as ``[point, weight]`` pairs for tuple points."""
    if any(isinstance(p, tuple) for p in mu.weights):
        return {"weights": [[_point_key(p), format_fraction(w)] for p, w in mu.weights.items()]}
    return {"weights": {p: format_fraction(w) for p, w in mu.weights.items()}}


def parse_weights(doc, where):
    weights = doc.get("weights") if isinstance(doc, dict) else None
    if isinstance(weights, dict):
        return {p: parse_fraction(w, f"{where}.{p}") for p, w in weights.items()}
    if isinstance(weights, list):
        out = {}
        for entry in weights:
            if not (isinstance(entry, list) and len(entry) == 2):
                raise ParseError(f"{where}: weight entries must be [point, weight]")
            out[_point_from_json(entry[0], where)] = parse_fraction(entry[1], where)
        return out
    raise ParseError(f"{where}: missing 'weights'")


def parse_measure(doc, space, where="measure"):
    return Measure(space, parse_weights(doc, where))


def parse_limit_measure(doc, diagram, limit=None):
    limit = compute_limit(diagram) if limit is None else limit
    return parse_measure(doc, limit.space, "limit measure")


def family_to_json(family):
    return {
        "components": {
            i: {p: format_fraction(w) for p, w in family.components[i].weights.items()}
            for i in family.diagram.indices
        }
    }


def parse_family_components(doc, diagram):
    comps = _require(doc, "components", dict, "family")
    out = {}
    for i, weights in comps.items():
        if i not in diagram.spaces:
            raise ParseError(f"family: unknown index {i!r}")
        out[i] = parse_measure({"weights": weights}, diagram.spaces[i], f"family.components.{i}")
    missing = [i for i in diagram.indices if i not in out]
    if missing:
        raise ParseError(f"family: no component for {missing}")
    return out


# morphisms

def morphism_to_json(morphism):
    return {"maps": {i: dict(morphism.maps[i].assignment) for i in morphism.source.indices}}


def parse_morphism(doc, source, target):
    raw = _require(doc, "maps", dict, "morphism")
    maps = {}
    for i in source.indices:
        if i not in raw or not isinstance(raw[i], dict):
            raise ParseError(f"morphism: missing component map for {i!r}")
        maps[i] = SpaceMap(source.spaces[i], target.spaces[i], raw[i])
    return validate_morphism(source, target, maps)


# certificates and vectors

def vector_to_json(v):
    return [format_fraction(x) for x in v]


def vector_from_json(values, where="vector"):
    if not isinstance(values, list):
        raise ParseError(f"{where}: expected a list")
    return tuple(parse_fraction(x, where) for x in values)
