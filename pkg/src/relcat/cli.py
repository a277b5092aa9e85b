"""Command-line front end.

Every subcommand reads the line-oriented document formats, prints a
human-readable report (or a document) on standard output, and exits 0 on
success or a verified claim, 1 on a refuted or absent one, 2 on any error.
``--json`` switches the report to one JSON object with stable field names;
the schema is described in the README.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io, props
from .bisimplicial import (
    diagonal,
    homology,
    homology_iso_certificate,
    nerve_N,
    nerve_N_xi,
    pi_star,
    row_map,
)
from .core import CostGuardExceeded, RelCategory
from .dot import dot
from .dwyer import check_dwyer_explain, pushout_along_sieve
from .subdivision import KINDS as SUBDIVISION_KINDS
from .subdivision import subdivide


def _chain_name(x) -> str:
    if isinstance(x, tuple):
        parts = [_chain_name(p) for p in x]
        joined = "".join(parts)
        return joined if all(len(p) == 1 for p in parts) else "-".join(parts)
    return str(x)


def _category_document(cat: RelCategory, name: str) -> io.Document:
    try:
        return io.category_document(cat, name, _chain_name)
    except ValueError:
        # tuple-derived names collided or fell outside the grammar
        objs = {x: f"x{i}" for i, x in enumerate(cat.objects)}
        mors = {m: f"m{i}" for i, m in enumerate(cat.morphisms())}
        return io.category_document(
            cat, name, lambda x: objs[x], lambda m: mors[m]
        )


def _load(path: str, kinds: tuple) -> io.Document:
    doc = io.load(path)
    if doc.kind not in kinds:
        raise ValueError(
            f"{path}: expected a {' or '.join(kinds)} file, got {doc.kind}"
        )
    return doc


def _load_category(path: str) -> tuple[io.Document, RelCategory]:
    doc = _load(path, ("relcat", "relpos"))
    return doc, io.to_category(doc)


def _load_functor(path: str, docs: dict):
    doc = _load(path, ("map",))
    for end, label in ((doc.src, "source"), (doc.dst, "target")):
        if end not in docs:
            raise ValueError(
                f"{path}: map {label} {end!r} is not among the loaded files"
            )
    return io.to_functor(doc, docs[doc.src], docs[doc.dst])


def _emit(args, human: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(human, end="" if human.endswith("\n") else "\n")


# --- subcommands -------------------------------------------------------


def cmd_dot(args) -> int:
    doc, cat = _load_category(args.file)
    text = dot(cat, doc.name)
    edges = []
    if cat.is_poset_backed:
        for a, b in cat.relations():
            edges.append({"src": str(a), "dst": str(b), "we": cat.is_we((a, b))})
    else:
        for m in cat.morphisms():
            if not cat.is_identity(m):
                edges.append(
                    {
                        "src": str(cat.src(m)),
                        "dst": str(cat.dst(m)),
                        "we": cat.is_we(m),
                    }
                )
    _emit(
        args,
        text,
        {
            "name": doc.name,
            "nodes": [str(x) for x in cat.objects],
            "edges": edges,
            "dot": text,
        },
    )
    return 0


def cmd_subdivide(args) -> int:
    doc = _load(args.file, ("relpos",))
    cat = io.to_category(doc)
    sub = subdivide(cat, args.kind)
    name = f"{args.kind}_{doc.name}"
    out = _category_document(sub.category, name)
    if args.dot:
        rendered = dot(io.to_category(out), name)
        _emit(args, rendered, {"name": name, "dot": rendered})
        return 0
    text = io.serialize(out)
    _emit(
        args,
        text,
        {
            "name": name,
            "kind": args.kind,
            "objects": sub.category.n_objects,
            "document": text,
        },
    )
    return 0


def cmd_dwyer(args) -> int:
    adoc, a = _load_category(args.a)
    bdoc, b = _load_category(args.b)
    f = _load_functor(args.map, {adoc.name: a, bdoc.name: b})
    if f.dom is not a:
        raise ValueError("the map must go from the first file to the second")
    w, reason = check_dwyer_explain(f)
    if w is None:
        _emit(
            args,
            f"not a dwyer map: {reason}",
            {"dwyer": False, "reason": reason},
        )
        return 1
    retraction = {
        str(z): str(w.sdr.r(z))
        for z in w.sdr.r.dom.objects
        if z != w.sdr.r(z)
    }
    lines = [
        "dwyer map certified",
        "image objects: " + " ".join(str(f(x)) for x in a.objects),
        f"generated cosieve: {w.za.n_objects} objects",
        "retraction moves: "
        + (
            " ".join(f"{k}->{v}" for k, v in sorted(retraction.items()))
            or "(none)"
        ),
    ]
    _emit(
        args,
        "\n".join(lines),
        {
            "dwyer": True,
            "reason": reason,
            "image": [str(f(x)) for x in a.objects],
            "cosieve": [str(z) for z in w.za.objects],
            "retraction": retraction,
        },
    )
    return 0


def cmd_pushout(args) -> int:
    docs = {}
    cats = {}
    for path in (args.a, args.b, args.c):
        doc, cat = _load_category(path)
        if doc.name in docs:
            raise ValueError(f"duplicate document name {doc.name!r}")
        docs[doc.name] = doc
        cats[doc.name] = cat
    i = _load_functor(args.into_b, cats)
    s = _load_functor(args.into_c, cats)
    if i.dom is not s.dom:
        raise ValueError("the two maps must share their source file")
    res = pushout_along_sieve(i, s)
    out = _category_document(res.d, args.name)
    text = io.serialize(out)
    reloaded = io.to_category(out)
    naming = {str(x): nm for x, nm in zip(res.d.objects, reloaded.objects)}
    _emit(
        args,
        text,
        {
            "name": args.name,
            "objects": res.d.n_objects,
            "j": {str(x): naming[str(res.j(x))] for x in s.cod.objects},
            "t": {str(y): naming[str(res.t(y))] for y in i.cod.objects},
            "document": text,
        },
    )
    return 0


def cmd_nerve(args) -> int:
    doc, cat = _load_category(args.file)
    if args.xi:
        t = nerve_N_xi(cat, args.pmax, args.qmax, budget=args.budget)
    else:
        t = nerve_N(cat, args.pmax, args.qmax)
    levels = {
        pq: (len(t._raws[pq]), len(t.cells[pq])) for pq in sorted(t._raws)
    }
    lines = [
        f"({p},{q}): {n} simplices, {c} nondegenerate"
        for (p, q), (n, c) in levels.items()
    ]
    _emit(
        args,
        "\n".join(lines),
        {
            "name": doc.name,
            "xi": bool(args.xi),
            "levels": {
                f"{p},{q}": {"simplices": n, "cells": c}
                for (p, q), (n, c) in levels.items()
            },
        },
    )
    return 0


def cmd_homology(args) -> int:
    doc = _load(args.file, ("relcat", "relpos", "bisset"))
    if doc.kind == "bisset":
        t = io.to_bisset(doc)
        if t.pbound != t.qbound:
            raise ValueError("homology needs a square truncation")
        if args.dim > t.pbound - 1:
            raise ValueError(
                f"file is truncated at {t.pbound}; H{args.dim} needs "
                f"truncation at least {args.dim + 1}"
            )
    else:
        cat = io.to_category(doc)
        bound = args.dim + 1
        if args.xi:
            t = nerve_N_xi(cat, bound, bound, budget=args.budget)
        else:
            t = nerve_N(cat, bound, bound)
    summary = homology(diagonal(t), args.dim)
    _emit(
        args,
        "\n".join(f"H{k} = {g}" for k, g in enumerate(summary.groups)),
        {
            "name": doc.name,
            "dim": args.dim,
            "groups": [str(g) for g in summary.groups],
        },
    )
    return 0


def cmd_compare_nerves(args) -> int:
    doc, cat = _load_category(args.file)
    if args.qbound < 2:
        raise ValueError("certifying H0 and H1 needs --qbound at least 2")
    comparison = pi_star(cat, args.p, args.qbound, budget=args.budget)
    cert = homology_iso_certificate(row_map(comparison, args.p), 1)
    payload = {
        "name": doc.name,
        "row": args.p,
        "certified": cert.ok,
        "rows": [
            {
                "dim": k,
                "dom": str(cert.dom_groups[k]),
                "cod": str(cert.cod_groups[k]),
                "cone": str(cert.cone_groups[k]),
            }
            for k in range(cert.up_to + 1)
        ],
    }
    _emit(args, str(cert), payload)
    return 0 if cert.ok else 1


def cmd_verify(args) -> int:
    report = props.run_prop(args.prop, seed=args.seed)
    lines = [report.summary()]
    lines.extend(f"  {d}" for d in report.details)
    _emit(args, "\n".join(lines), report.as_dict())
    return 0 if report.verified else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relcat",
        description="Relative categories: subdivision, certified inclusions, nerves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn, help: str):
        p = sub.add_parser(name, help=help)
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.set_defaults(func=fn)
        return p

    p = add("dot", cmd_dot, "render a category file as Graphviz DOT")
    p.add_argument("file")

    p = add("subdivide", cmd_subdivide, "subdivide a relative poset file")
    p.add_argument("file")
    p.add_argument(
        "--kind", choices=sorted(SUBDIVISION_KINDS), default="xi_t"
    )
    p.add_argument("--dot", action="store_true", help="render instead of serialize")

    p = add("dwyer", cmd_dwyer, "certify an inclusion as a dwyer map")
    p.add_argument("a", help="source category file")
    p.add_argument("b", help="target category file")
    p.add_argument("map", help="map file from the source into the target")

    p = add("pushout", cmd_pushout, "push a category out along a dwyer inclusion")
    p.add_argument("a", help="shared source category file")
    p.add_argument("b", help="category receiving the dwyer inclusion")
    p.add_argument("c", help="category receiving the attaching map")
    p.add_argument("into_b", help="map file for the dwyer inclusion")
    p.add_argument("into_c", help="map file for the attaching map")
    p.add_argument("--name", default="pushout", help="name of the output document")

    p = add("nerve", cmd_nerve, "tabulate nerve levels of a category file")
    p.add_argument("file")
    p.add_argument("--pmax", type=int, default=1)
    p.add_argument("--qmax", type=int, default=1)
    p.add_argument("--xi", action="store_true", help="use the subdivided nerve")
    p.add_argument("--budget", type=int, default=200, help="subdivision size bound")

    p = add("homology", cmd_homology, "homology of the diagonal nerve")
    p.add_argument("file", help="relcat, relpos, or bisset file")
    p.add_argument("--dim", type=int, default=1, help="top degree to compute")
    p.add_argument("--xi", action="store_true", help="use the subdivided nerve")
    p.add_argument("--budget", type=int, default=200, help="subdivision size bound")

    p = add(
        "compare-nerves",
        cmd_compare_nerves,
        "certify the projection from plain to subdivided nerve on one row",
    )
    p.add_argument("file")
    p.add_argument("--p", type=int, default=0, help="row to compare")
    p.add_argument("--qbound", type=int, default=2, help="vertical truncation")
    p.add_argument("--budget", type=int, default=200, help="subdivision size bound")

    p = add("verify", cmd_verify, "run one checkable proposition suite")
    p.add_argument("--prop", required=True, choices=sorted(props.PROPS))
    p.add_argument("--seed", type=int, default=0)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except io.ParseError as e:
        msg = f"parse error: {e}"
    except CostGuardExceeded as e:
        msg = f"budget exceeded: {e}"
    except FileNotFoundError as e:
        msg = f"missing file: {e.filename}"
    except (ValueError, TypeError, KeyError, AssertionError) as e:
        msg = f"error: {e}"
    if getattr(args, "json", False):
        print(json.dumps({"error": msg}, indent=2, sort_keys=True))
    else:
        print(msg, file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
