"""Command-line front end.

    sforge <analyze|splice|conditions|equations|invariants> <file> [options]

Exit codes: 0 success (negative mathematical verdicts included), 2
malformed input, 3 precondition violation. Structured output is
byte-stable for a fixed input and version; the text rendering is
derived from the same document, never recomputed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .discgroup import discriminant_group, leaf_characters
from .equations import build_splice_equations, congruence_condition
from .errors import ParseError, PreconditionError
from .graph import (
    blow_down_minimal,
    canonical_cycle,
    classify,
    fundamental_cycle,
    intersection_matrix,
    parse_graph,
)
from .intmat import determinant, is_negative_definite
from .invariants import invariant_generators, membership_bounded, toric_relations
from .poly import parse_polynomial
from .splice import (
    edge_determinant,
    is_zhs,
    linking_number,
    node_weight,
    semigroup_condition,
    to_splice_diagram,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3


def _frac(x):
    return "%d/%d" % (x.numerator, x.denominator)


def _fracs(xs):
    return [_frac(x) for x in xs]


def _classification_doc(c):
    return {
        "kind": c.kind,
        "zsq": c.zsq,
        "multiplicity": c.multiplicity,
        "embedding_dimension": c.embedding_dimension,
        "numerically_gorenstein": c.numerically_gorenstein,
    }


def _graph_doc(g):
    return {
        "vertices": [
            {"id": v.id, "weight": v.weight, "genus": v.genus}
            for v in g.vertices
        ],
        "edges": [[a, b] for a, b in g.edges],
    }


def _envelope(command, path, data):
    with open(path, "rb") as fh:
        digest = hashlib.sha256(fh.read()).hexdigest()
    return {
        "tool": "sforge",
        "version": __version__,
        "command": command,
        "input": path,
        "input_sha256": digest,
        "result": data,
    }


# -- analyze ----------------------------------------------------------------


def _analyze(g):
    m = intersection_matrix(g)
    data = {
        "graph": _graph_doc(g),
        "matrix": m.to_lists(),
        "negative_definite": is_negative_definite(m),
    }
    if not data["negative_definite"]:
        raise PreconditionError(
            "intersection matrix is not negative definite"
        )
    det = determinant(m)
    z = fundamental_cycle(g)
    k = canonical_cycle(g)
    data["abs_det"] = abs(det)
    data["fundamental_cycle"] = dict(zip(z.vertex_ids, z.coefficients))
    data["canonical_cycle"] = dict(
        zip(k.vertex_ids, _fracs(k.coefficients))
    )
    data["numerically_gorenstein"] = k.is_integral()
    data["classification"] = _classification_doc(classify(g))
    blown = None
    if g.is_tree():
        try:
            h = blow_down_minimal(g)
            blown = {
                "changed": h != g,
                "graph": _graph_doc(h),
                "classification": _classification_doc(classify(h))
                if is_negative_definite(intersection_matrix(h))
                else None,
            }
        except PreconditionError:
            blown = None
    data["blown_down"] = blown
    if g.is_qhs_tree():
        dg = discriminant_group(g)
        data["discriminant"] = {
            "order": dg.order,
            "invariant_factors": list(dg.invariant_factors),
        }
        data["discriminant_note"] = None
    else:
        data["discriminant"] = None
        data["discriminant_note"] = (
            "discriminant data needs a QHS tree (genus-0 tree)"
        )
    return data


def _render_analyze(data):
    out = []
    g = data["graph"]
    out.append(
        "graph: %d vertices, %d edges"
        % (len(g["vertices"]), len(g["edges"]))
    )
    out.append("negative definite: %s" % data["negative_definite"])
    out.append("|det| = %d" % data["abs_det"])
    out.append(
        "fundamental cycle: "
        + " ".join(
            "%s:%d" % (v["id"], data["fundamental_cycle"][v["id"]])
            for v in g["vertices"]
        )
    )
    out.append(
        "canonical cycle: "
        + " ".join(
            "%s:%s" % (v["id"], data["canonical_cycle"][v["id"]])
            for v in g["vertices"]
        )
    )
    out.append(
        "numerically Gorenstein: %s" % data["numerically_gorenstein"]
    )
    c = data["classification"]
    line = "classification: %s (Z.Z = %d" % (c["kind"], c["zsq"])
    if c["multiplicity"] is not None:
        line += ", multiplicity %d, embdim %d" % (
            c["multiplicity"],
            c["embedding_dimension"],
        )
    out.append(line + ")")
    if data["blown_down"] and data["blown_down"]["changed"]:
        bc = data["blown_down"]["classification"]
        out.append(
            "after blow-down: %d vertices, classification %s"
            % (
                len(data["blown_down"]["graph"]["vertices"]),
                bc["kind"] if bc else "n/a",
            )
        )
    if data["discriminant"] is not None:
        d = data["discriminant"]
        desc = (
            " x ".join("Z/%d" % f for f in d["invariant_factors"])
            or "trivial"
        )
        out.append(
            "discriminant group: order %d (%s)" % (d["order"], desc)
        )
    else:
        out.append("discriminant group: n/a (%s)" % data["discriminant_note"])
    return "\n".join(out) + "\n"


# -- splice -----------------------------------------------------------------


def _splice(g):
    d = to_splice_diagram(g)
    data = {
        "no_nodes": not d.has_nodes,
        "leaves": list(d.leaves),
        "nodes": list(d.nodes),
        "edges": [
            {
                "a": e.a,
                "b": e.b,
                "path": list(e.path),
                "internal": d.is_node(e.a) and d.is_node(e.b),
            }
            for e in d.edges
        ],
        "weights": {
            v: {
                d.direction_label(v, e): d.weight(v, e)
                for e in d.incident_edges(v)
            }
            for v in d.nodes
        },
        "node_weights": {v: node_weight(d, v) for v in d.nodes},
        "linking_numbers": {
            v: {w: linking_number(d, v, w) for w in d.leaves}
            for v in d.nodes
        },
        "edge_determinants": [
            {"a": e.a, "b": e.b, "value": edge_determinant(d, e)}
            for e in d.edges
            if d.is_node(e.a) and d.is_node(e.b)
        ],
        "zhs": is_zhs(g, d),
        "diagram": d.render_text(),
    }
    if data["no_nodes"]:
        data["note"] = "no nodes: cyclic quotient case"
    return data


def _render_splice(data):
    out = []
    if data["no_nodes"]:
        out.append(data["note"])
    out.append(data["diagram"].rstrip("\n"))
    for ed in data["edge_determinants"]:
        out.append(
            "edge determinant %s--%s: %d" % (ed["a"], ed["b"], ed["value"])
        )
    for v in data["nodes"]:
        out.append("node weight %s: %d" % (v, data["node_weights"][v]))
        links = data["linking_numbers"][v]
        out.append(
            "  variable weights: "
            + ", ".join("%s:%d" % (w, links[w]) for w in data["leaves"])
        )
    out.append("integral homology sphere: %s" % data["zhs"])
    return "\n".join(out) + "\n"


# -- conditions ---------------------------------------------------------------


def _monomial_str(exps):
    return "*".join(
        "%s^%d" % (w, e) if e > 1 else w for w, e in sorted(exps.items())
    )


def _conditions(g):
    d = to_splice_diagram(g)
    if not d.has_nodes:
        return {
            "no_nodes": True,
            "note": "no nodes: cyclic quotient case",
            "semigroup": None,
            "congruence": None,
        }
    wit = semigroup_condition(d)
    witnesses = {}
    for v in d.nodes:
        witnesses[v] = {}
        for e in d.incident_edges(v):
            label = d.direction_label(v, e)
            witnesses[v][label] = [
                dict(sorted(a.items()))
                for a in wit.solutions[(v, e.index)]
            ]
    sem = {
        "holds": wit.holds,
        "witnesses": witnesses,
        "failures": [list(f) for f in wit.failures],
        "truncated": [list(t) for t in wit.truncated],
    }
    if not wit.holds:
        return {"no_nodes": False, "semigroup": sem, "congruence": None}
    cong = congruence_condition(g)
    return {
        "no_nodes": False,
        "semigroup": sem,
        "congruence": {
            "holds": cong.holds,
            "characters": {
                v: _fracs(c) for v, c in cong.node_characters.items()
            },
            "monomials": {
                v: {
                    label: dict(sorted(a.items()))
                    for label, a in mm.items()
                }
                for v, mm in cong.node_monomials.items()
            },
            "failures": list(cong.failures),
        },
    }


def _render_conditions(data):
    out = []
    if data["no_nodes"]:
        out.append(data["note"])
        return "\n".join(out) + "\n"
    sem = data["semigroup"]
    out.append("semigroup condition: %s" % sem["holds"])
    for v, dirs in sem["witnesses"].items():
        for label, sols in dirs.items():
            shown = ", ".join(_monomial_str(a) for a in sols[:8])
            if len(sols) > 8:
                shown += ", ... (%d total)" % len(sols)
            out.append("  %s %s: %s" % (v, label, shown or "(none)"))
    for v, label in sem["failures"]:
        out.append("  FAILS at node %s %s" % (v, label))
    cong = data["congruence"]
    if cong is None:
        out.append("congruence condition: not evaluated")
    else:
        out.append("congruence condition: %s" % cong["holds"])
        for v, mm in cong["monomials"].items():
            out.append(
                "  node %s: character (%s), monomials %s"
                % (
                    v,
                    ", ".join(cong["characters"][v]),
                    ", ".join(
                        "%s: %s" % (label, _monomial_str(a))
                        for label, a in mm.items()
                    ),
                )
            )
        for v in cong["failures"]:
            out.append("  FAILS at node %s" % v)
    return "\n".join(out) + "\n"


# -- equations ----------------------------------------------------------------


def _equations(g):
    pkg = build_splice_equations(g)
    dg = discriminant_group(g)
    chars = pkg.characters
    return {
        "variables": list(pkg.variables),
        "equations": [str(eq) for eq in pkg.equations],
        "nodes": [
            {
                "node": ns.node_id,
                "weight": ns.weight,
                "variable_weights": dict(sorted(ns.variable_weights.items())),
                "directions": list(ns.directions),
                "monomials": [dict(sorted(m.items())) for m in ns.monomials],
                "coefficients": ns.coefficients.to_lists(),
                "character": _fracs(ns.character),
                "equations": [str(eq) for eq in ns.equations],
            }
            for ns in pkg.nodes
        ],
        "group": {
            "order": dg.order,
            "invariant_factors": list(dg.invariant_factors),
        },
        "characters": {
            w: _fracs(
                [row[i] for row in chars.phases]
            )
            for i, w in enumerate(chars.leaf_ids)
        },
        "action_table": [
            {
                "generator": j,
                "order": chars.generator_orders[j],
                "phases": {
                    w: _frac(chars.phases[j][i])
                    for i, w in enumerate(chars.leaf_ids)
                },
            }
            for j in range(len(chars.generator_orders))
        ],
    }


def _render_equations(data):
    out = ["variables: " + ", ".join(data["variables"])]
    for ns in data["nodes"]:
        out.append(
            "node %s (weight %d, character (%s)):"
            % (ns["node"], ns["weight"], ", ".join(ns["character"]))
        )
        out.append(
            "  variable weights: "
            + ", ".join(
                "%s:%d" % (w, ns["variable_weights"][w])
                for w in data["variables"]
            )
        )
        for eq in ns["equations"]:
            out.append("  %s = 0" % eq)
    g = data["group"]
    desc = " x ".join("Z/%d" % f for f in g["invariant_factors"]) or "trivial"
    out.append("discriminant group: order %d (%s)" % (g["order"], desc))
    for row in data["action_table"]:
        out.append(
            "generator %d (order %d) acts by phases: %s"
            % (
                row["generator"],
                row["order"],
                ", ".join(
                    "%s:%s" % (w, row["phases"][w]) for w in data["variables"]
                ),
            )
        )
    return "\n".join(out) + "\n"


# -- invariants ---------------------------------------------------------------


def _invariants(g, degree_bound, identity_path):
    dg = discriminant_group(g)
    chars = leaf_characters(g)
    basis = invariant_generators(chars, dg.order)
    relations = toric_relations(basis, degree_bound)
    data = {
        "group": {
            "order": dg.order,
            "invariant_factors": list(dg.invariant_factors),
        },
        "degree_bound": degree_bound,
        "generators": [
            {
                "name": basis.names[i],
                "exponents": {
                    v: e
                    for v, e in zip(basis.variables, basis.exponents[i])
                    if e
                },
                "monomial": str(basis.monomial(i)),
            }
            for i in range(len(basis.exponents))
        ],
        "relations": [str(r) for r in relations],
        "certificate": None,
    }
    if identity_path is not None:
        with open(identity_path, "r", encoding="utf-8") as fh:
            target = parse_polynomial(fh.read(), basis.variables)
        pkg = build_splice_equations(g)
        cert = membership_bounded(target, list(pkg.equations), degree_bound)
        data["certificate"] = {
            "target": str(target),
            "ideal": [str(eq) for eq in pkg.equations],
            "degree_bound": degree_bound,
            "found": cert is not None,
            "cofactors": [str(q) for q in cert.cofactors] if cert else None,
        }
    return data


def _render_invariants(data):
    g = data["group"]
    desc = " x ".join("Z/%d" % f for f in g["invariant_factors"]) or "trivial"
    out = ["discriminant group: order %d (%s)" % (g["order"], desc)]
    out.append("invariant generators:")
    for gen in data["generators"]:
        out.append("  %s = %s" % (gen["name"], gen["monomial"]))
    out.append(
        "relations up to degree %d:%s"
        % (data["degree_bound"], "" if data["relations"] else " (none)")
    )
    for r in data["relations"]:
        out.append("  %s = 0" % r)
    cert = data["certificate"]
    if cert is not None:
        out.append("membership check: target %s" % cert["target"])
        out.append("  ideal: %s" % "; ".join(cert["ideal"]))
        if cert["found"]:
            out.append(
                "  certificate cofactors: %s" % "; ".join(cert["cofactors"])
            )
        else:
            out.append(
                "  no cofactors of degree <= %d (not a proof of"
                " non-membership)" % cert["degree_bound"]
            )
    return "\n".join(out) + "\n"


# -- driver -------------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="sforge",
        description="resolution-graph calculator for surface singularity "
        "links: invariants, splice diagrams, splice equations and "
        "discriminant-group invariant theory",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("analyze", "graph invariants, classification, discriminant group"),
        ("splice", "splice diagram, edge determinants, ZHS test"),
        ("conditions", "semigroup and congruence conditions with witnesses"),
        ("equations", "splice equations and the group action table"),
        ("invariants", "invariant generators, relations, membership checks"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="graph file")
        p.add_argument(
            "--format",
            choices=["text", "structured"],
            default="text",
            help="output rendering (structured = stable JSON)",
        )
        if name == "invariants":
            p.add_argument(
                "--degree-bound",
                type=int,
                default=2,
                metavar="N",
                help="degree bound for relations and membership cofactors",
            )
            p.add_argument(
                "--verify-identity",
                metavar="POLYFILE",
                default=None,
                help="polynomial (in the leaf variables) to test for "
                "membership in the splice-equation ideal",
            )
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print("sforge: cannot read %s: %s" % (args.file, exc), file=sys.stderr)
        return EXIT_INPUT
    try:
        g = parse_graph(text)
    except ParseError as exc:
        print("sforge: %s: %s" % (args.file, exc), file=sys.stderr)
        return EXIT_INPUT
    try:
        if args.command == "analyze":
            data = _analyze(g)
            render = _render_analyze
        elif args.command == "splice":
            data = _splice(g)
            render = _render_splice
        elif args.command == "conditions":
            data = _conditions(g)
            render = _render_conditions
        elif args.command == "equations":
            data = _equations(g)
            render = _render_equations
        else:
            if args.degree_bound < 1:
                print("sforge: --degree-bound must be >= 1", file=sys.stderr)
                return EXIT_INPUT
            data = _invariants(g, args.degree_bound, args.verify_identity)
            render = _render_invariants
    except ParseError as exc:  # polynomial file errors
        print("sforge: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except (PreconditionError, ValueError) as exc:
        print("sforge: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION
    doc = _envelope(args.command, args.file, data)
    if args.format == "structured":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        sys.stdout.write(render(data))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
