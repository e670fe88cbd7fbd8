"""Batch command-line front end: one document in, one report out.

Usage:
    gradekit <command> --in problem.json [--format human|structured]
                       [--seed N] [--caps JSON]

Commands: h2, cocycle, algebra, module, obstruction, extend, theorem-a,
wedderburn, correspond, selftest.  Exit codes: 0 success, 2 when the
mathematical answer itself is a refutation (e.g. "not extendable"),
1 on errors.  The environment variable GRADEKIT_SEED overrides the
document seed.  Structured reports are canonical JSON: re-running the
same document reproduces byte-identical "results".
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from contextlib import contextmanager

from . import algebras as al
from . import cohomology as coh
from . import documents as doc
from . import endomorphisms as en
from . import fields as ff
from . import groups as gr
from . import obstruction as ob
from .errors import GradekitError, ParseError

COMMANDS = (
    "h2",
    "cocycle",
    "algebra",
    "module",
    "obstruction",
    "extend",
    "theorem-a",
    "wedderburn",
    "correspond",
    "selftest",
)


@contextmanager
def _caps(overrides):
    """Temporarily override the exhaustive-scan caps."""
    saved = (al.SCAN_CAP, en.SCAN_CAP, ob.SKEW_SEARCH_CAP)
    try:
        if overrides:
            cap = int(overrides.get("scan", saved[0]))
            al.SCAN_CAP = cap
            en.SCAN_CAP = cap
            ob.SKEW_SEARCH_CAP = int(overrides.get("skew", cap))
        yield
    finally:
        al.SCAN_CAP, en.SCAN_CAP, ob.SKEW_SEARCH_CAP = saved


def _labels(G, elems):
    return [G.labels[g] for g in elems]


def _need(document, key, command):
    if key not in document:
        raise ParseError(f"command {command!r} needs a {key!r} entry", "document")
    return document[key]


def _field_and_group(document):
    F = doc.parse_field(_need(document, "field", "h2"))
    G = doc.parse_group(_need(document, "group", "h2"))
    return F, G


def run(command: str, document: dict, seed: int = 0):
    """Dispatch one command; returns (results dict, exit_code)."""
    if command == "h2":
        F, G = _field_and_group(document)
        H = coh.h2(G, F)
        return {
            "order": H.order,
            "invariant_factors": list(H.invariant_factors),
            "generators": [doc.render_cocycle(c) for c in H.generator_cocycles],
        }, 0

    if command == "cocycle":
        F, G = _field_and_group(document)
        action = document.get("action", "check")
        if action == "check":
            spec = _need(document, "cocycle", command)
            if spec.get("type") == "table":
                values = spec.get("values")
                if not isinstance(values, list) or len(values) != G.n or any(
                    len(r) != G.n for r in values
                ):
                    raise ParseError(f"values must be an {G.n} x {G.n} table", "cocycle.values")
                table = [[doc.parse_elem(F, x) for x in row] for row in values]
                ok, bad = coh.is_cocycle(G, F, table)
                return {
                    "is_cocycle": ok,
                    "violation": list(bad) if bad else None,
                    "normalized": coh.is_normalized(G, table) if ok else None,
                }, 0
            c = doc.parse_cocycle(spec, G, F)
            return {"is_cocycle": True, "violation": None, "normalized": True}, 0
        c = doc.parse_cocycle(_need(document, "cocycle", command), G, F)
        if action == "normalize":
            normalized, lam = coh.normalize(G, F, c.table)
            return {
                "cocycle": doc.render_cocycle(normalized),
                "lambda": doc.render_vector(F, lam),
            }, 0
        if action == "compare":
            c2 = doc.parse_cocycle(_need(document, "cocycle2", command), G, F)
            lam = coh.cohomologous(c, c2)
            return {
                "cohomologous": lam is not None,
                "witness": doc.render_vector(F, lam) if lam is not None else None,
            }, 0
        if action == "class":
            H = coh.h2(G, F)
            cc = coh.class_of(H, c)
            return {
                "coords": list(cc.residues),
                "invariant_factors": list(H.invariant_factors),
            }, 0
        raise ParseError(f"unknown cocycle action {action!r}", "document")

    if command == "algebra":
        F = doc.parse_field(_need(document, "field", command))
        action = document.get("action", "build")
        if action == "pullback-check":
            return _pullback_check(document, F)
        A = doc.parse_algebra(_need(document, "algebra", command), F)
        if action == "build":
            return {"algebra": doc.render_algebra(A), "group": doc.render_group(A.group)}, 0
        if action == "classify":
            rep = al.classify(A)
            return {
                "support": _labels(A.group, rep.support),
                "strong": _labels(A.group, rep.strong),
                "invertible": _labels(A.group, rep.invertible),
                "is_strongly_graded": rep.is_strongly_graded,
                "is_crossed_product": rep.is_crossed_product,
                "is_twisted_group_algebra": rep.is_twisted_group_algebra,
                "is_graded_division": rep.is_graded_division,
            }, 0
        if action == "twist":
            alpha = doc.parse_cocycle(_need(document, "cocycle", command), A.group, F)
            if document.get("inverse"):
                alpha = coh.cocycle_inverse(alpha)
            return {"algebra": doc.render_algebra(al.twist_algebra(alpha, A))}, 0
        if action == "product":
            B = doc.parse_algebra(_need(document, "algebra2", command), F)
            return {"algebra": doc.render_algebra(al.graded_product(A, B))}, 0
        if action == "quotient-grade":
            normal = doc._element_set(A.group, _need(document, "normal", command), "normal")
            sub, emb = gr.subgroup(A.group, normal)
            B, proj = al.quotient_grading(A, emb.map)
            return {
                "algebra": doc.render_algebra(B),
                "group": doc.render_group(B.group),
            }, 0
        raise ParseError(f"unknown algebra action {action!r}", "document")

    if command == "module":
        F = doc.parse_field(_need(document, "field", command))
        A = doc.parse_algebra(_need(document, "algebra", command), F)
        action = document.get("action", "associate")
        if action == "associate":
            M = doc.parse_base_module(_need(document, "module", command), A)
            W = ob.associated(A, M)
            return _module_summary(W), 0
        if action == "suspend":
            W = doc.parse_graded_module(_need(document, "module", command), A)
            h = doc._element_index(A.group, _need(document, "h", command), "h")
            return _module_summary(al.suspend(W, h)), 0
        if action == "end":
            W = doc.parse_graded_module(_need(document, "module", command), A)
            E = en.end_graded(W)
            return {
                "support": _labels(A.group, al.support(E.as_algebra)),
                "component_dims": {
                    A.group.labels[g]: len(E.as_algebra.component(g))
                    for g in al.support(E.as_algebra)
                },
                "dim": E.as_algebra.dim,
            }, 0
        if action == "inertia":
            W = doc.parse_graded_module(_need(document, "module", command), A)
            simple, _ = en.is_graded_simple(W)
            inert = en.inertia(W) if simple else en.inertia_bruteforce(W)
            return {"elements": _labels(A.group, inert.elements), "graded_simple": simple}, 0
        raise ParseError(f"unknown module action {action!r}", "document")

    if command in ("obstruction", "extend", "theorem-a", "correspond"):
        F = doc.parse_field(_need(document, "field", command))
        A = doc.parse_algebra(_need(document, "algebra", command), F)
        M = doc.parse_base_module(_need(document, "module", command), A)
        if command == "obstruction":
            rep = ob.obstruction(A, M)
            if rep.extension is not None:
                extendable = True
            elif rep.refutation:
                extendable = False
            else:
                extendable = None
            return {
                "inertia": _labels(A.group, rep.inertia.elements),
                "invariant": rep.invariant,
                "omega": doc.render_cocycle(rep.omega),
                "omega_class": list(rep.omega_class.residues),
                "inertia_invariant_factors": list(rep.cohomology.invariant_factors),
                "extendable": extendable,
                "refutation": rep.refutation,
            }, 0
        if command == "extend":
            out = ob.extend(A, M)
            results = {
                "extended": out.extended,
                "refuted": out.refuted,
                "reason": out.reason or None,
                "via": out.via,
                "module": {
                    "act": [[doc.render_vector(F, v) for v in row] for row in out.module.act]
                }
                if out.module
                else None,
            }
            return results, (0 if out.extended else 2)
        if command == "theorem-a":
            classes = None
            if "classes" in document:
                classes = [coh.ClassCoords(residues=tuple(c)) for c in document["classes"]]
            rows, omega_cls, strong = ob.extension_truth_table(A, M, classes)
            return {
                "omega_class": list(omega_cls.residues),
                "strongly_graded": strong,
                "rows": [
                    {"class": list(cc.residues), "extended": ext, "expected": exp}
                    for cc, ext, exp in rows
                ],
            }, 0
        # correspond: build alpha and the extension internally
        rep = ob.obstruction(A, M)
        if not rep.invariant:
            raise GradekitError("correspondence needs an invariant base module")
        alpha = coh.representative(rep.cohomology, rep.omega_class)
        B = al.twist_algebra(coh.cocycle_inverse(alpha), A)
        out = ob.extend(B, M)
        if not out.extended:
            raise GradekitError("no extension over the twisted algebra")
        corr = ob.correspondence(A, M, alpha, out.module, seed=seed)
        return {
            "twisted_simple_dims": [U.mdim for U in corr.twisted_simples],
            "above_dims": [S.mdim for S in corr.above],
            "matching": list(corr.matching),
            "bijection": True,
        }, 0

    if command == "wedderburn":
        F = doc.parse_field(_need(document, "field", command))
        A = doc.parse_algebra(_need(document, "algebra", command), F)
        rep = ob.wedderburn(A)
        return {
            "n": rep.n,
            "inertia": _labels(A.group, rep.inertia.elements),
            "omega": doc.render_cocycle(rep.omega),
            "omega_class": list(rep.omega_class.residues),
            "kernel_dim": rep.kernel_dim,
            "surjective": rep.surjective,
            "graded_simple": rep.graded_simple,
            "model": doc.render_algebra(rep.model) if rep.model else None,
        }, 0

    if command == "selftest":
        return _selftest(), 0

    raise ParseError(f"unknown command {command!r}", "cli")


def _pullback_check(document, F):
    sides = []
    for side in ("left", "right"):
        spec = _need(document, side, "pullback-check")
        Gamma = doc.parse_group(spec["group"], f"{side}.group")
        c = doc.parse_cocycle(spec["cocycle"], Gamma, F, f"{side}.cocycle")
        normal = doc._element_set(Gamma, spec["normal"], f"{side}.normal")
        sub, emb = gr.subgroup(Gamma, normal)
        Q, proj = gr.quotient(Gamma, emb.map)
        sides.append((Gamma, c, Q, proj))
    (G1, c1, Q1, p1), (G2, c2, Q2, p2) = sides
    if Q1 != Q2:
        raise ParseError("the two quotient groups differ; relabel to a common quotient", "document")
    A1, _ = al.quotient_grading(al.twisted_group_algebra(c1), [g for g in G1.elements() if p1(g) == Q1.e])
    A2, _ = al.quotient_grading(al.twisted_group_algebra(c2), [g for g in G2.elements() if p2(g) == Q2.e])
    prod = al.graded_product(A1, A2)
    P, pr1, pr2 = gr.pullback(p1, p2)
    cP = coh.pullback_cocycle(c1, c2, P, pr1, pr2)
    TP = al.twisted_group_algebra(cP)
    match = tables_match_under_pullback_pairing(prod, TP, P, pr1, p1)
    return {"match": match, "pullback_order": P.n}, 0


def tables_match_under_pullback_pairing(prod, TP, P, pr1, p1):
    """Structure constants of the graded product equal those of the twisted
    group algebra of the pullback under the canonical (positional) pairing.

    Both bases enumerate the pairs (x, y) with matching projections in the
    same lexicographic order, so the basis bijection is the identity on
    positions; degrees correspond through the quotient projection.
    """
    if prod.dim != TP.dim or prod.sc != TP.sc:
        return False
    # TP.deg[t] = t-th pullback element; prod.deg[t] = its common quotient image
    return all(prod.deg[t] == p1(pr1(TP.deg[t])) for t in range(prod.dim))


def _module_summary(W):
    G = W.algebra.group
    return {
        "mdim": W.mdim,
        "mdeg": _labels(G, W.mdeg),
        "component_dims": {G.labels[g]: len(W.component(g)) for g in sorted(set(W.mdeg))},
    }


def _selftest():
    checks = []

    def check(name, fn):
        fn()
        checks.append({"name": name, "ok": True})

    def fields_props():
        for (p, k) in ((7, 1), (3, 2)):
            F = ff.make_field(p, k)
            for x in range(1, F.q):
                assert ff.mul(F, x, ff.inv(F, x)) == 1
                assert ff.fpow(F, x, F.q - 1) == 1
            for x in range(1, F.q):
                for y in range(1, F.q):
                    lhs = ff.dlog(F, ff.mul(F, x, y))
                    rhs = (ff.dlog(F, x) + ff.dlog(F, y)) % (F.q - 1)
                    assert lhs == rhs

    def coboundary_props():
        F = ff.make_field(5)
        G = gr.klein4()
        from itertools import product as iproduct

        for lam in iproduct(range(1, 5), repeat=3):
            c = coh.coboundary(G, F, [1, *lam])
            ok, _ = coh.is_cocycle(G, F, c.table)
            assert ok

    def h2_props():
        F3 = ff.make_field(3)
        H = coh.h2(gr.cyclic(2), F3)
        assert H.order == 2 and H.invariant_factors == (2,)
        F5 = ff.make_field(5)
        H4 = coh.h2(gr.klein4(), F5)
        pa = coh.klein4_pauli(F5)
        assert coh.coords_order(H4, coh.class_of(H4, pa)) == 2

    def group_props():
        Z4 = gr.cyclic(4)
        Q, proj = gr.quotient(Z4, [0, 2])
        assert Q.n == 2 and proj.is_surjective()
        g = gr.quaternion8()
        for a in g.elements():
            for b in g.elements():
                pa_, pb_ = gr.inner_aut(g, a), gr.inner_aut(g, b)
                pab = gr.inner_aut(g, g.mul(a, b))
                assert tuple(pa_[pb_[x]] for x in g.elements()) == pab

    def algebra_props():
        F5 = ff.make_field(5)
        pa = coh.klein4_pauli(F5)
        T = al.twisted_group_algebra(pa)
        rep = al.classify(T)
        assert rep.is_twisted_group_algebra and rep.is_graded_division
        FG = al.group_algebra(gr.klein4(), F5)
        ext = en.extract_twisted_cocycle(en.end_graded(al.free_module(FG)))
        assert coh.cohomologous(ext.cocycle, coh.trivial_cocycle(gr.klein4(), F5)) is not None

    def suspension_props():
        F5 = ff.make_field(5)
        T = al.twisted_group_algebra(coh.klein4_pauli(F5))
        W = al.free_module(T)
        G = T.group
        for g in G.elements():
            for h in G.elements():
                assert al.suspend(al.suspend(W, h), g) == al.suspend(W, G.mul(g, h))

    check("field unit group and dlog transport", fields_props)
    check("coboundaries satisfy the cocycle identity", coboundary_props)
    check("small cohomology groups", h2_props)
    check("group constructions", group_props)
    check("twisted algebras and endomorphism extraction", algebra_props)
    check("suspension composition", suspension_props)
    return {"checks": checks, "all_ok": all(c["ok"] for c in checks)}


# -- report assembly and rendering ------------------------------------------------

def build_report(command, document, results, seed, elapsed_ms):
    return {
        "schema": doc.REPORT_SCHEMA,
        "command": command,
        "inputs_digest": doc.digest(document),
        "seed": seed,
        "results": results,
        "timing_ms": elapsed_ms,
    }


def render(report: dict, fmt: str) -> str:
    """Render a report for output; "structured" is canonical JSON."""
    if fmt == "structured":
        stable = dict(report)
        stable["timing_ms"] = None  # byte-identical reruns
        return doc.canonical_json(stable)
    if fmt != "human":
        raise ParseError(f"unknown format {fmt!r}", "cli")
    lines = [f"gradekit {report['command']}  (inputs {report['inputs_digest'][:12]})"]
    lines.extend(_human_lines(report["command"], report["results"]))
    return "\n".join(lines)


def parse_report(text: str) -> dict:
    return json.loads(text)


def _fmt_set(labels):
    return "{" + ", ".join(labels) + "}"


def _human_lines(command, r):
    if r is None:
        return ["  none"]
    if command == "h2":
        facs = " x ".join(f"Z{d}" for d in r["invariant_factors"]) or "1"
        return [f"  order = {r['order']}", f"  invariant factors: {facs}"]
    if command == "obstruction":
        out = [
            f"  inertia I = {_fmt_set(r['inertia'])}",
            f"  invariant: {r['invariant']}",
            f"  class coordinates: {tuple(r['omega_class'])} in H2(I) with factors {tuple(r['inertia_invariant_factors'])}",
        ]
        if r["extendable"] is not None:
            out.append(f"  extendable: {r['extendable']}")
        if r["refutation"]:
            out.append(f"  refutation: {r['refutation']}")
        return out
    if command == "extend":
        if r["extended"]:
            return ["  extended: yes (verified module structure)"]
        tag = "refuted" if r["refuted"] else "not found"
        return [f"  extended: no ({tag})", f"  reason: {r['reason'] or 'none'}"]
    if command == "theorem-a":
        out = [f"  omega class: {tuple(r['omega_class'])}", "  class | extended | expected"]
        for row in r["rows"]:
            out.append(
                f"  {tuple(row['class'])} | {str(row['extended']).lower()} | {str(row['expected']).lower()}"
            )
        return out
    if command == "wedderburn":
        out = [
            f"  A ≅ M_n(F) ⊗ F^ω I with n = {r['n']}, I = {_fmt_set(r['inertia'])}",
            f"  omega class coordinates: {tuple(r['omega_class'])}",
            f"  kernel dim = {r['kernel_dim']}, surjective = {r['surjective']}, graded simple = {r['graded_simple']}",
        ]
        if r["model"] is None:
            out.append("  certificate: none")
        else:
            out.append("  certificate: explicit graded isomorphism onto the model algebra")
        if r["omega"]["values"]:
            out.append("  omega table:")
            for row in r["omega"]["values"]:
                out.append("    " + " ".join(row))
        return out
    if command == "correspond":
        return [
            f"  twisted simple dims: {r['twisted_simple_dims']}",
            f"  simples above the base module: {r['above_dims']}",
            f"  bijection: {r['bijection']}",
        ]
    if command == "selftest":
        out = [f"  {c['name']}: {'ok' if c['ok'] else 'FAIL'}" for c in r["checks"]]
        out.append(f"  all ok: {r['all_ok']}")
        return out
    # generic fallback: sorted key/value lines
    out = []
    for k in sorted(r):
        v = r[k]
        if v is None or v == [] or v == {}:
            out.append(f"  {k}: none")
        elif isinstance(v, (str, int, float, bool)):
            out.append(f"  {k}: {v}")
        else:
            out.append(f"  {k}: {doc.canonical_json(v)}")
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="gradekit", description=__doc__)
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--in", dest="infile", help="problem document (JSON)")
    parser.add_argument("--format", choices=("human", "structured"), default="human")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--caps", default=None, help="JSON cap overrides, e.g. '{\"scan\": 65536}'")
    args = parser.parse_args(argv)

    document = {}
    if args.infile:
        try:
            with open(args.infile, "r", encoding="utf-8") as fh:
                document = json.load(fh)
        except OSError as exc:
            print(f"error: cannot read {args.infile}: {exc}", file=sys.stderr)
            return 1
        except json.JSONDecodeError as exc:
            print(f"error: {args.infile}:{exc.lineno}:{exc.colno}: {exc.msg}", file=sys.stderr)
            return 1
    elif args.command != "selftest":
        print("error: this command needs --in <document>", file=sys.stderr)
        return 1
    if document and document.get("schema", doc.SCHEMA) != doc.SCHEMA:
        print(f"error: unsupported schema {document.get('schema')!r}", file=sys.stderr)
        return 1

    seed = args.seed
    if seed is None:
        env = os.environ.get("GRADEKIT_SEED")
        seed = int(env) if env else int(document.get("options", {}).get("seed", 0))
    caps = json.loads(args.caps) if args.caps else document.get("options", {}).get("caps")

    t0 = time.monotonic()
    try:
        with _caps(caps):
            results, code = run(args.command, document, seed=seed)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GradekitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    elapsed_ms = int((time.monotonic() - t0) * 1000)
    report = build_report(args.command, document, results, seed, elapsed_ms)
    print(render(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
