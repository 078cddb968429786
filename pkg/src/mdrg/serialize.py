"""JSON round-tripping for graphs, schemes, tensors, tables, polynomials.

All rationals travel as strings "p" or "p/q"; floats are rejected on the
way in so no inexact value can enter a computation.  Class labels are
written as their text form; on the way in, anything that parses as a
comma-separated tuple of integers becomes a multi-index and everything
else stays an opaque tag.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping, Union

import numpy as np

from .graphs import ColoredGraph, DistanceTable
from .orders import MonomialOrder, MultiIndex, PartialOrder
from .ppoly import Labeling, Polynomial
from .schemes import IntersectionTensor, Label, SchemeClasses, label_text


class InputFormatError(ValueError):
    """Malformed or ambiguous input document."""


# -- Scalars and labels ----------------------------------------------------------

def fraction_to_text(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def fraction_from_json(value: Union[str, int]) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise InputFormatError("rationals must be integers or 'p/q' strings, "
                               "got %r" % (value,))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputFormatError("bad rational %r" % value) from exc
    raise InputFormatError("bad rational %r" % (value,))


def label_from_text(text: str) -> Label:
    try:
        return MultiIndex.parse(text)
    except (ValueError, TypeError):
        return str(text)


def multiindex_from_json(value: Union[str, list]) -> MultiIndex:
    if isinstance(value, str):
        return MultiIndex.parse(value)
    if isinstance(value, list):
        return MultiIndex(value)
    raise InputFormatError("bad multi-index %r" % (value,))


# -- Graphs ----------------------------------------------------------------------

def graph_to_dict(g: ColoredGraph) -> dict:
    return {
        "m": g.m,
        "vertices": list(g.vertices),
        "edges": [[u, v, c] for u, v, c in g.edge_names()],
    }


def graph_from_dict(data: Mapping[str, Any]) -> ColoredGraph:
    try:
        m = data["m"]
        vertices = data["vertices"]
        edges = data["edges"]
    except KeyError as exc:
        raise InputFormatError("graph document needs keys m, vertices, edges; "
                               "missing %s" % exc) from exc
    if not isinstance(m, int):
        raise InputFormatError("m must be an integer")
    triples = []
    for edge in edges:
        if not (isinstance(edge, (list, tuple)) and len(edge) == 3):
            raise InputFormatError("edges are [u, v, color] triples, got %r"
                                   % (edge,))
        u, v, color = edge
        if not isinstance(color, int):
            raise InputFormatError("edge color must be an integer, got %r"
                                   % (color,))
        triples.append((str(u), str(v), color))
    return ColoredGraph(m, [str(v) for v in vertices], triples)


# -- Scheme classes ---------------------------------------------------------------

def scheme_to_dict(s: SchemeClasses) -> dict:
    return {
        "labels": [label_text(lab) for lab in s.labels],
        "vertices": list(s.vertices),
        "matrices": [mat.tolist() for mat in s.matrices],
    }


def scheme_from_dict(data: Mapping[str, Any]) -> SchemeClasses:
    try:
        labels = [label_from_text(str(lab)) for lab in data["labels"]]
        matrices = [np.array(mat, dtype=np.int64) for mat in data["matrices"]]
    except KeyError as exc:
        raise InputFormatError("scheme document needs keys labels, matrices; "
                               "missing %s" % exc) from exc
    vertices = data.get("vertices")
    if vertices is not None:
        vertices = [str(v) for v in vertices]
    return SchemeClasses(labels=labels, matrices=matrices, vertices=vertices)


# -- Intersection tensors ----------------------------------------------------------

def tensor_to_dict(t: IntersectionTensor) -> dict:
    entries = sorted(
        ([label_text(a), label_text(b), label_text(c), fraction_to_text(v)]
         for (a, b, c), v in t.p.items() if v != 0))
    return {
        "labels": sorted(label_text(lab) for lab in t.labels),
        "identity": label_text(t.identity),
        "p": entries,
    }


def tensor_from_dict(data: Mapping[str, Any]) -> IntersectionTensor:
    try:
        labels = tuple(label_from_text(str(lab)) for lab in data["labels"])
        identity = label_from_text(str(data["identity"]))
        rows = data["p"]
    except KeyError as exc:
        raise InputFormatError("tensor document needs keys labels, identity, p; "
                               "missing %s" % exc) from exc
    p: dict[tuple[Label, Label, Label], Fraction] = {}
    for row in rows:
        if not (isinstance(row, (list, tuple)) and len(row) == 4):
            raise InputFormatError("p entries are [a, b, c, value], got %r"
                                   % (row,))
        a, b, c = (label_from_text(str(x)) for x in row[:3])
        value = fraction_from_json(row[3])
        if value != 0:
            p[(a, b, c)] = value
    return IntersectionTensor(labels=labels, identity=identity, p=p)


# -- Distance tables ---------------------------------------------------------------

def table_to_dict(table: DistanceTable) -> dict:
    g = table.graph
    distances = {}
    for i, x in enumerate(g.vertices):
        for j, y in enumerate(g.vertices):
            if i < j:
                distances["%s|%s" % (x, y)] = table.labels[i][j].as_text()
    return {
        "order": table.order.as_text(),
        "vertices": list(g.vertices),
        "realized": sorted(lab.as_text() for lab in table.realized),
        "distances": distances,
    }


# -- Polynomials -------------------------------------------------------------------

def polynomials_to_dict(polys: Mapping[MultiIndex, Polynomial]) -> dict:
    out = []
    for n in sorted(polys):
        out.append({
            "n": n.as_text(),
            "terms": [{"a": a.as_text(), "coef": fraction_to_text(v)}
                      for a, v in polys[n].terms()],
        })
    return {"polynomials": out}


def polynomials_from_dict(data: Mapping[str, Any]) -> dict[MultiIndex, Polynomial]:
    polys: dict[MultiIndex, Polynomial] = {}
    for entry in data["polynomials"]:
        n = MultiIndex.parse(str(entry["n"]))
        coeffs = {MultiIndex.parse(str(term["a"])): fraction_from_json(term["coef"])
                  for term in entry["terms"]}
        polys[n] = Polynomial(coeffs)
    return polys


# -- Order / labeling text forms ----------------------------------------------------

def parse_order(text: str) -> MonomialOrder:
    return MonomialOrder.parse(text)


def parse_partial(text: str) -> PartialOrder:
    return PartialOrder.parse(text)


def parse_labeling(text: str) -> Labeling:
    return Labeling.parse(text)


# -- Documents ---------------------------------------------------------------------

def load_document(path: str) -> Union[ColoredGraph, SchemeClasses, IntersectionTensor]:
    """Read a JSON file and dispatch on its keys.

    "edges" means a colored graph, "matrices" a scheme given by class
    matrices, "p" an abstract intersection tensor.
    """
    with open(path, "r", encoding="ascii") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise InputFormatError("%s: not valid JSON (%s)" % (path, exc)) from exc
    if not isinstance(data, dict):
        raise InputFormatError("%s: top level must be an object" % path)
    if "edges" in data:
        return graph_from_dict(data)
    if "matrices" in data:
        return scheme_from_dict(data)
    if "p" in data:
        return tensor_from_dict(data)
    raise InputFormatError("%s: expected one of the keys edges/matrices/p" % path)


def dump_json(data: Any) -> str:
    """Canonical report text: sorted keys, two-space indent, newline end."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"
