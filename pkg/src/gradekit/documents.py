"""Problem documents: a small JSON vocabulary for fields, groups, cocycles,
algebras and modules, plus serializers for the structured reports.

Schema tag: "gradekit/1".  Field literals are "GF(p)" or "GF(p^k)" with an
optional explicit modulus; groups are builtins or explicit label/table
pairs; unit values are polynomial strings like "3" or "x+1".  Parsing
errors carry a path describing where in the document they happened.
"""

from __future__ import annotations

import hashlib
import json
import re

from . import algebras as al
from . import cohomology as coh
from . import fields as ff
from . import groups as gr
from .errors import GradekitError, ParseError

SCHEMA = "gradekit/1"
REPORT_SCHEMA = "gradekit-report/1"

_FIELD_RE = re.compile(r"^GF\((\d+)(?:\^(\d+))?\)$")


def parse_field(spec, where="field") -> ff.FieldSpec:
    if isinstance(spec, str):
        spec = {"spec": spec}
    if not isinstance(spec, dict) or "spec" not in spec:
        raise ParseError("expected a field literal like \"GF(5)\"", where)
    m = _FIELD_RE.match(str(spec["spec"]).replace(" ", ""))
    if not m:
        raise ParseError(f"bad field literal {spec['spec']!r}", where)
    p = int(m.group(1))
    k = int(m.group(2)) if m.group(2) else 1
    modulus = spec.get("modulus")
    try:
        return ff.make_field(p, k, modulus)
    except GradekitError as exc:
        raise ParseError(str(exc), where) from exc


def parse_group(spec, where="group") -> gr.FiniteGroup:
    if not isinstance(spec, dict):
        raise ParseError("expected a group object", where)
    try:
        if "builtin" in spec:
            kind = spec["builtin"]
            params = {k: v for k, v in spec.items() if k != "builtin"}
            if kind == "direct_product":
                factors = [parse_group(s, f"{where}.factors[{i}]") for i, s in enumerate(spec.get("factors", []))]
                if len(factors) < 2:
                    raise ParseError("direct_product needs at least two factors", where)
                params = {"factors": factors}
            return gr.builtin(kind, **params)
        if "labels" in spec and "table" in spec:
            return gr.group_from_table(spec["labels"], spec["table"])
    except GradekitError as exc:
        raise ParseError(str(exc), where) from exc
    raise ParseError("group needs either \"builtin\" or \"labels\"+\"table\"", where)


def parse_elem(F: ff.FieldSpec, text, where="value") -> int:
    try:
        return ff.parse_elem(F, text)
    except (GradekitError, ValueError) as exc:
        raise ParseError(f"bad field element {text!r}: {exc}", where) from exc


def parse_cocycle(spec, G: gr.FiniteGroup, F: ff.FieldSpec, where="cocycle") -> coh.Cocycle2:
    if not isinstance(spec, dict) or "type" not in spec:
        raise ParseError("cocycle needs a \"type\"", where)
    kind = spec["type"]
    try:
        if kind == "table":
            values = spec.get("values")
            if not isinstance(values, list) or len(values) != G.n:
                raise ParseError(f"values must be an {G.n} x {G.n} table", where)
            table = []
            for i, row in enumerate(values):
                if len(row) != G.n:
                    raise ParseError(f"row {i} has length {len(row)}", where)
                table.append([parse_elem(F, x, f"{where}.values[{i}][{j}]") for j, x in enumerate(row)])
            ok, bad = coh.is_cocycle(G, F, table)
            if not ok:
                raise ParseError(f"cocycle identity fails at triple {bad}", where)
            return coh.cocycle_from_table(G, F, table)
        if kind == "coboundary":
            lam = spec.get("lambda")
            if not isinstance(lam, list) or len(lam) != G.n:
                raise ParseError(f"lambda must list {G.n} unit values", where)
            vals = [parse_elem(F, x, f"{where}.lambda[{i}]") for i, x in enumerate(lam)]
            return coh.coboundary(G, F, vals)
        if kind == "builtin":
            c = coh.builtin_cocycle(spec.get("name", ""), F)
            if c.group != G:
                raise ParseError("builtin cocycle lives on a different group", where)
            return c
        if kind == "class":
            H = coh.h2(G, F)
            coords = spec.get("coords", [])
            if len(coords) != len(H.invariant_factors):
                raise ParseError(
                    f"class coordinates must have length {len(H.invariant_factors)}", where
                )
            cc = coh.ClassCoords(residues=tuple(int(x) % d for x, d in zip(coords, H.invariant_factors)))
            return coh.representative(H, cc)
    except ParseError:
        raise
    except GradekitError as exc:
        raise ParseError(str(exc), where) from exc
    raise ParseError(f"unknown cocycle type {kind!r}", where)


def parse_algebra(spec, F: ff.FieldSpec, where="algebra") -> al.GradedAlgebra:
    if not isinstance(spec, dict):
        raise ParseError("expected an algebra object", where)
    try:
        if "construct" in spec:
            kind = spec["construct"]
            if kind == "group_algebra":
                G = parse_group(spec["group"], f"{where}.group")
                return al.group_algebra(G, F)
            if kind == "twisted_group_algebra":
                G = parse_group(spec["group"], f"{where}.group")
                alpha = parse_cocycle(spec["cocycle"], G, F, f"{where}.cocycle")
                return al.twisted_group_algebra(alpha)
            if kind == "elementary":
                G = parse_group(spec["group"], f"{where}.group")
                degrees = [_element_index(G, x, where) for x in spec["degrees"]]
                return al.elementary_matrix_algebra(int(spec["n"]), F, G, degrees)
            if kind == "quotient_grading":
                inner = parse_algebra(spec["algebra"], F, f"{where}.algebra")
                normal = _element_set(inner.group, spec["normal"], where)
                sub, emb = gr.subgroup(inner.group, normal)
                return al.quotient_grading(inner, emb.map)[0]
            if kind == "graded_product":
                left = parse_algebra(spec["left"], F, f"{where}.left")
                right = parse_algebra(spec["right"], F, f"{where}.right")
                return al.graded_product(left, right)
            if kind == "twist":
                inner = parse_algebra(spec["algebra"], F, f"{where}.algebra")
                alpha = parse_cocycle(spec["cocycle"], inner.group, F, f"{where}.cocycle")
                if spec.get("inverse"):
                    alpha = coh.cocycle_inverse(alpha)
                return al.twist_algebra(alpha, inner)
            raise ParseError(f"unknown algebra construct {kind!r}", where)
        if {"deg", "sc", "unit", "group"} <= set(spec):
            G = parse_group(spec["group"], f"{where}.group")
            deg = [_element_index(G, x, where) for x in spec["deg"]]
            d = len(deg)
            sc = spec["sc"]
            if len(sc) != d or any(len(row) != d for row in sc):
                raise ParseError("sc must be a dim x dim table of vectors", where)
            sc_p = [
                [[parse_elem(F, x, f"{where}.sc[{i}][{j}]") for x in vec] for j, vec in enumerate(row)]
                for i, row in enumerate(sc)
            ]
            unit = [parse_elem(F, x, f"{where}.unit") for x in spec["unit"]]
            return al.make_graded_algebra(F, G, deg, sc_p, unit)
    except ParseError:
        raise
    except GradekitError as exc:
        raise ParseError(str(exc), where) from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed algebra spec: {exc!r}", where) from exc
    raise ParseError("algebra needs \"construct\" or raw deg/sc/unit/group", where)


def _element_index(G: gr.FiniteGroup, x, where) -> int:
    if isinstance(x, int):
        if not 0 <= x < G.n:
            raise ParseError(f"element index {x} out of range", where)
        return x
    if x in G.labels:
        return G.labels.index(x)
    raise ParseError(f"unknown group element {x!r}", where)


def _element_set(G: gr.FiniteGroup, xs, where):
    return [_element_index(G, x, where) for x in xs]


def parse_base_module(spec, A: al.GradedAlgebra, where="module") -> al.UngradedModule:
    """A module over the base algebra A_e."""
    Ae, idx = al.base_algebra(A)
    F = A.field
    if not isinstance(spec, dict):
        raise ParseError("expected a module object", where)
    try:
        if spec.get("construct") == "one_dim":
            values = spec.get("values")
            if not isinstance(values, list) or len(values) != Ae.dim:
                raise ParseError(
                    f"one_dim module needs {Ae.dim} scalars (one per base basis element)", where
                )
            act = [[[parse_elem(F, x, f"{where}.values[{i}]")]] for i, x in enumerate(values)]
            return al.make_ungraded_module(Ae, act)
        if "act" in spec:
            act = [
                [[parse_elem(F, x, f"{where}.act[{i}][{j}]") for x in vec] for j, vec in enumerate(row)]
                for i, row in enumerate(spec["act"])
            ]
            return al.make_ungraded_module(Ae, act)
    except ParseError:
        raise
    except GradekitError as exc:
        raise ParseError(str(exc), where) from exc
    raise ParseError("module needs \"construct\": \"one_dim\" or a raw \"act\" table", where)


def parse_graded_module(spec, A: al.GradedAlgebra, where="module") -> al.GradedModule:
    F = A.field
    if not isinstance(spec, dict):
        raise ParseError("expected a module object", where)
    try:
        if spec.get("construct") == "free":
            return al.free_module(A)
        if "mdeg" in spec and "act" in spec:
            mdeg = _element_set(A.group, spec["mdeg"], where)
            act = [
                [[parse_elem(F, x, f"{where}.act[{i}][{j}]") for x in vec] for j, vec in enumerate(row)]
                for i, row in enumerate(spec["act"])
            ]
            return al.make_graded_module(A, mdeg, act)
    except ParseError:
        raise
    except GradekitError as exc:
        raise ParseError(str(exc), where) from exc
    raise ParseError("graded module needs \"construct\": \"free\" or mdeg+act", where)


# -- rendering ----------------------------------------------------------------

def render_elem(F: ff.FieldSpec, x: int) -> str:
    return ff.format_elem(F, x)


def render_vector(F, v):
    return [render_elem(F, x) for x in v]


def render_cocycle(c: coh.Cocycle2):
    return {
        "group_labels": list(c.group.labels),
        "values": [[render_elem(c.field, x) for x in row] for row in c.table],
    }


def render_group(G: gr.FiniteGroup):
    return {"labels": list(G.labels), "table": [list(r) for r in G.table]}


def render_algebra(A: al.GradedAlgebra):
    return {
        "dim": A.dim,
        "deg": [A.group.labels[g] for g in A.deg],
        "sc": [[render_vector(A.field, v) for v in row] for row in A.sc],
        "unit": render_vector(A.field, A.unit),
    }


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(document: dict) -> str:
    return hashlib.sha256(canonical_json(document).encode("utf-8")).hexdigest()
