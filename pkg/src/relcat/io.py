"""Line-oriented file formats for relative categories, relative posets,
maps, and truncated bisimplicial sets.

Four document kinds, all '#'-commented and whitespace-tolerant:

    relcat NAME          relpos NAME         map NAME : SRC -> DST
    obj a b c            obj a b c           obj a |-> x
    mor f: a -> b [we]   le a < b [we]       mor f |-> g
    cmp g.f = h

    bisset NAME
    cell c : (p,q)
    face h i c = c'
    face v j c = c'

Documents keep their statements in file order, so parse(serialize(d)) == d
exactly.  Relpos files may list covering relations or full relations; the
loader closes transitively and propagates weak-equivalence flags along
composites.  Map files only need `mor` lines where the image of a morphism
is not already determined by the images of its endpoints.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import RelCategory, RelFunctor


class ParseError(ValueError):
    """Syntax or reference error, annotated with the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Document:
    """One parsed file: a header and its statements in file order."""

    kind: str
    name: str
    body: tuple = ()
    src: str | None = None  # map documents only
    dst: str | None = None


KINDS = ("relcat", "relpos", "bisset", "map")

# a name is any run of non-space characters free of grammar punctuation
_NAME = r"[^\s:=<>#|.()]+"
_NAME_RE = re.compile(_NAME)


def writable_name(s: str) -> bool:
    """Whether the string can appear as a name in these grammars."""
    return bool(_NAME_RE.fullmatch(s))


def _check_names(values) -> None:
    bad = [s for s in values if not writable_name(s)]
    if bad:
        raise ValueError(f"names not writable in this grammar: {bad!r}")
_RULES = {
    "obj": re.compile(rf"^obj((?:\s+{_NAME})+)$"),
    "mor": re.compile(rf"^mor\s+({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})(\s+we)?$"),
    "cmp": re.compile(rf"^cmp\s+({_NAME})\s*\.\s*({_NAME})\s*=\s*({_NAME})$"),
    "le": re.compile(rf"^le\s+({_NAME})\s*<\s*({_NAME})(\s+we)?$"),
    "mapobj": re.compile(rf"^obj\s+({_NAME})\s*\|->\s*({_NAME})$"),
    "mapmor": re.compile(rf"^mor\s+({_NAME})\s*\|->\s*({_NAME})$"),
    "cell": re.compile(rf"^cell\s+({_NAME})\s*:\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)$"),
    "face": re.compile(rf"^face\s+([hv])\s+(\d+)\s+({_NAME})\s*=\s*({_NAME})$"),
}
_HEADERS = {
    "relcat": re.compile(rf"^relcat\s+({_NAME})$"),
    "relpos": re.compile(rf"^relpos\s+({_NAME})$"),
    "bisset": re.compile(rf"^bisset\s+({_NAME})$"),
    "map": re.compile(rf"^map\s+({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})$"),
}
_ALLOWED = {
    "relcat": ("obj", "mor", "cmp"),
    "relpos": ("obj", "le"),
    "map": ("mapobj", "mapmor"),
    "bisset": ("cell", "face"),
}


def parse(text: str) -> Document:
    kind = name = src = dst = None
    body = []
    objs: set = set()
    ends: dict = {}  # morphism name -> (src, dst, is_identity)
    cells: dict = {}  # cell name -> bidegree
    seen_faces: set = set()
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if kind is None:
            for k, rule in _HEADERS.items():
                m = rule.match(line)
                if m:
                    kind = k
                    name = m.group(1)
                    if k == "map":
                        src, dst = m.group(2), m.group(3)
                    break
            else:
                raise ParseError(
                    lineno, f"expected a header (one of {', '.join(KINDS)})"
                )
            continue
        for sk in _ALLOWED[kind]:
            m = _RULES[sk].match(line)
            if m:
                break
        else:
            raise ParseError(lineno, f"not a {kind} statement: {line!r}")
        if sk == "obj":
            names = tuple(m.group(1).split())
            for n in names:
                if n in objs:
                    raise ParseError(lineno, f"duplicate object {n!r}")
                objs.add(n)
                if kind == "relcat":
                    # identities are implicit but addressable in cmp lines
                    ends[_identity_name(n)] = (n, n, True)
            body.append(("obj", names))
        elif sk == "mor":
            f, a, b, we = m.group(1), m.group(2), m.group(3), bool(m.group(4))
            if a not in objs or b not in objs:
                raise ParseError(lineno, "morphism endpoints are not declared")
            if f in ends:
                raise ParseError(lineno, f"duplicate morphism {f!r}")
            ends[f] = (a, b, False)
            body.append(("mor", f, a, b, we))
        elif sk == "cmp":
            g, f, h = m.group(1), m.group(2), m.group(3)
            for n in (g, f, h):
                if n not in ends:
                    raise ParseError(lineno, f"undeclared morphism {n!r}")
            if ends[f][1] != ends[g][0]:
                raise ParseError(lineno, f"{g!r} and {f!r} are not composable")
            if (ends[f][0], ends[g][1]) != ends[h][:2]:
                raise ParseError(
                    lineno, f"composite endpoints do not match {h!r}"
                )
            if ends[f][2] or ends[g][2]:
                raise ParseError(
                    lineno, "unit composites are implied; do not state them"
                )
            body.append(("cmp", g, f, h))
        elif sk == "le":
            a, b, we = m.group(1), m.group(2), bool(m.group(3))
            if a not in objs or b not in objs:
                raise ParseError(lineno, "relation endpoints are not declared")
            if a == b:
                raise ParseError(lineno, f"relation {a!r} < {a!r} is not strict")
            body.append(("le", a, b, we))
        elif sk == "mapobj":
            body.append(("mapobj", m.group(1), m.group(2)))
        elif sk == "mapmor":
            body.append(("mapmor", m.group(1), m.group(2)))
        elif sk == "cell":
            c, p, q = m.group(1), int(m.group(2)), int(m.group(3))
            if c in cells:
                raise ParseError(lineno, f"duplicate cell {c!r}")
            cells[c] = (p, q)
            body.append(("cell", c, p, q))
        else:  # face
            d, i, c, c2 = m.group(1), int(m.group(2)), m.group(3), m.group(4)
            if c not in cells or c2 not in cells:
                raise ParseError(lineno, "face endpoints are not declared")
            p, q = cells[c]
            n = p if d == "h" else q
            if n == 0 or i > n:
                raise ParseError(lineno, f"face index {i} out of range for {c!r}")
            want = (p - 1, q) if d == "h" else (p, q - 1)
            if cells[c2] != want:
                raise ParseError(
                    lineno, f"face {d} {i} of {c!r} must have bidegree {want}"
                )
            if (d, i, c) in seen_faces:
                raise ParseError(lineno, f"duplicate face {d} {i} of {c!r}")
            seen_faces.add((d, i, c))
            body.append(("face", d, i, c, c2))
    if kind is None:
        raise ParseError(1, "empty document")
    return Document(kind, name, tuple(body), src, dst)


def serialize(doc: Document) -> str:
    if doc.kind == "map":
        lines = [f"map {doc.name} : {doc.src} -> {doc.dst}"]
    else:
        lines = [f"{doc.kind} {doc.name}"]
    for st in doc.body:
        tag = st[0]
        if tag == "obj":
            lines.append("obj " + " ".join(st[1]))
        elif tag == "mor":
            _, f, a, b, we = st
            lines.append(f"mor {f}: {a} -> {b}" + (" we" if we else ""))
        elif tag == "cmp":
            lines.append(f"cmp {st[1]}.{st[2]} = {st[3]}")
        elif tag == "le":
            _, a, b, we = st
            lines.append(f"le {a} < {b}" + (" we" if we else ""))
        elif tag == "mapobj":
            lines.append(f"obj {st[1]} |-> {st[2]}")
        elif tag == "mapmor":
            lines.append(f"mor {st[1]} |-> {st[2]}")
        elif tag == "cell":
            lines.append(f"cell {st[1]} : ({st[2]},{st[3]})")
        elif tag == "face":
            lines.append(f"face {st[1]} {st[2]} {st[3]} = {st[4]}")
        else:
            raise ValueError(f"unknown statement {st!r}")
    return "\n".join(lines) + "\n"


def load(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(doc: Document, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(doc))


# --- documents <-> categories ----------------------------------------------


def _identity_name(obj: str) -> str:
    return f"id_{obj}"


def to_category(doc: Document) -> RelCategory:
    """Build the relative category a relcat or relpos document describes."""
    if doc.kind == "relpos":
        objects: list = []
        rels = []
        we = []
        for st in doc.body:
            if st[0] == "obj":
                objects.extend(st[1])
            else:
                _, a, b, flag = st
                rels.append((a, b))
                if flag:
                    we.append((a, b))
        return RelCategory.from_poset(objects, rels, we, close_we=True)
    if doc.kind != "relcat":
        raise ValueError(f"not a category document: kind {doc.kind!r}")
    objects = []
    mor: dict = {}
    we = []
    comp: dict = {}
    for st in doc.body:
        if st[0] == "obj":
            objects.extend(st[1])
        elif st[0] == "mor":
            _, f, a, b, flag = st
            mor[f] = (a, b)
            if flag:
                we.append(f)
        else:
            _, g, f, h = st
            comp[(g, f)] = h
    identities = {x: _identity_name(x) for x in objects}
    for x in objects:
        if identities[x] in mor:
            raise ValueError(f"morphism name {identities[x]!r} is reserved")
        mor[identities[x]] = (x, x)
    cat = RelCategory.from_table(objects, mor, identities, comp, we)
    cat.validate()
    return cat


def category_document(
    cat: RelCategory, name: str, namer=str, mor_namer=None
) -> Document:
    """Serialize-ready document for a category; objects and morphism ids are
    written through ``namer`` (morphisms through ``mor_namer`` when given),
    which must be injective and produce grammar-writable names."""
    names = {x: namer(x) for x in cat.objects}
    if len(set(names.values())) != cat.n_objects:
        raise ValueError("object naming is not injective")
    _check_names(names.values())
    body: list = [("obj", tuple(names[x] for x in cat.objects))]
    if cat.is_poset_backed:
        covers = set(cat.covers())
        for a, b in covers:
            body.append(("le", names[a], names[b], cat.is_we((a, b))))
        # weak equivalences not implied by we-flagged covers still need a
        # line; redundant relations are accepted by the loader
        closure = _we_closure(cat, covers)
        for a, b in cat.we_pairs():
            if (a, b) not in closure:
                body.append(("le", names[a], names[b], True))
        return Document("relpos", name, tuple(body))
    if mor_namer is None:
        mor_namer = namer
    ids = set(cat._id_of.values())
    mnames = {
        m: _identity_name(names[cat.src(m)]) if m in ids else mor_namer(m)
        for m in cat.morphisms()
    }
    if len(set(mnames.values())) != len(mnames):
        raise ValueError("morphism naming is not injective")
    _check_names(mnames.values())
    for m in cat.morphisms():
        if m in ids:
            continue
        body.append(
            ("mor", mnames[m], names[cat.src(m)], names[cat.dst(m)], cat.is_we(m))
        )
    for f in cat.morphisms():
        for g in cat.morphisms():
            if f in ids or g in ids or cat.dst(f) != cat.src(g):
                continue
            body.append(("cmp", mnames[g], mnames[f], mnames[cat.compose(g, f)]))
    return Document("relcat", name, tuple(body))


def _we_closure(cat: RelCategory, covers) -> set:
    """Weak-equivalence pairs implied by composing we-flagged covers."""
    step = {(a, b) for a, b in covers if cat.is_we((a, b))}
    out = set(step)
    frontier = set(step)
    while frontier:
        nxt = set()
        for a, b in frontier:
            for c, d in step:
                if c == b and (a, d) not in out:
                    out.add((a, d))
                    nxt.add((a, d))
        frontier = nxt
    return out


def to_functor(doc: Document, src: RelCategory, dst: RelCategory) -> RelFunctor:
    """Build the relative functor a map document describes, inferring
    morphism images wherever the endpoints determine them."""
    if doc.kind != "map":
        raise ValueError(f"not a map document: kind {doc.kind!r}")
    obj_map = {}
    mor_lines = {}
    for st in doc.body:
        if st[0] == "mapobj":
            if st[1] not in src:
                raise ValueError(f"object {st[1]!r} is not in the source")
            if st[2] not in dst:
                raise ValueError(f"object {st[2]!r} is not in the target")
            obj_map[st[1]] = st[2]
        else:
            mor_lines[st[1]] = st[2]
    missing = [x for x in src.objects if x not in obj_map]
    if missing:
        raise ValueError(f"no image for objects {missing!r}")
    if src.is_poset_backed and dst.is_poset_backed:
        if mor_lines:
            raise ValueError("mor lines are meaningless between posets")
        f = RelFunctor(src, dst, obj_map)
        f.validate()
        return f
    mor_map = {}
    by_name = {str(m): m for m in dst.morphisms()}
    for m in src.morphisms():
        key = str(m)
        a, b = obj_map[src.src(m)], obj_map[src.dst(m)]
        if key in mor_lines:
            target = mor_lines[key]
            if target not in by_name:
                raise ValueError(f"undeclared morphism image {target!r}")
            mor_map[m] = by_name[target]
        elif src.is_identity(m):
            mor_map[m] = dst.identity(a)
        else:
            cands = dst.hom(a, b)
            if len(cands) != 1:
                raise ValueError(
                    f"image of morphism {key!r} is ambiguous; add a mor line"
                )
            mor_map[m] = cands[0]
    f = RelFunctor(src, dst, obj_map, mor_map)
    f.validate()
    return f


def functor_document(
    f: RelFunctor, name: str, src_name: str, dst_name: str, namer=str
) -> Document:
    body = [("mapobj", namer(x), namer(f(x))) for x in f.dom.objects]
    if not (f.dom.is_poset_backed and f.cod.is_poset_backed):
        for m in f.dom.morphisms():
            if f.dom.is_identity(m):
                continue
            img = f.on_mor(m)
            if f.cod.hom(f.cod.src(img), f.cod.dst(img)) != [img]:
                body.append(("mapmor", namer(m), namer(img)))
    _check_names(s for st in body for s in st[1:])
    return Document("map", name, tuple(body), src_name, dst_name)


# --- documents <-> truncated bisimplicial sets ------------------------------


def to_bisset(doc: Document, *, validate: bool = True):
    """Build the truncated bisimplicial set a bisset document presents.

    Cells are the nondegenerate simplices; every face of a cell must be a
    declared cell.  The raw action stores (cell, degeneracy pair) normal
    forms and factors an arbitrary structure map through its image, so the
    set is closed under all monotone actions up to the inferred bounds.
    """
    from .bisimplicial import (
        TruncBiSSet,
        compose_vals,
        is_surjective_vals,
        monotone_vals,
    )

    bidegree = {}
    faces = {}
    for st in doc.body:
        if st[0] == "cell":
            bidegree[st[1]] = (st[2], st[3])
        else:
            _, d, i, c, c2 = st
            p, q = bidegree[c]
            n = p if d == "h" else q
            if i > n:
                raise ValueError(f"face index {i} out of range for {c!r}")
            want = (p - 1, q) if d == "h" else (p, q - 1)
            if bidegree[c2] != want:
                raise ValueError(
                    f"face {d} {i} of {c!r} must have bidegree {want}"
                )
            faces[(d, i, c)] = c2
    for c, (p, q) in bidegree.items():
        for d, n in (("h", p), ("v", q)):
            if n == 0:
                continue
            for i in range(n + 1):
                if (d, i, c) not in faces:
                    raise ValueError(f"missing face {d} {i} of {c!r}")

    def drop(c: str, d: str, kept: tuple) -> str:
        n = bidegree[c][0] if d == "h" else bidegree[c][1]
        for i in sorted(set(range(n + 1)) - set(kept), reverse=True):
            c = faces[(d, i, c)]
        return c

    def act(x, p: int, q: int, hvals, vvals):
        c, h, v = x
        h2 = compose_vals(h, hvals)
        v2 = compose_vals(v, vvals)
        himg = tuple(sorted(set(h2)))
        vimg = tuple(sorted(set(v2)))
        c2 = drop(drop(c, "h", himg), "v", vimg)
        return (
            c2,
            tuple(himg.index(t) for t in h2),
            tuple(vimg.index(t) for t in v2),
        )

    pbound = max(p for p, _ in bidegree.values())
    qbound = max(q for _, q in bidegree.values())
    raws = {}
    for p in range(pbound + 1):
        for q in range(qbound + 1):
            level = []
            for c, (p0, q0) in bidegree.items():
                if p0 > p or q0 > q:
                    continue
                for h in monotone_vals(p, p0):
                    if not is_surjective_vals(h, p0):
                        continue
                    for v in monotone_vals(q, q0):
                        if is_surjective_vals(v, q0):
                            level.append((c, h, v))
            raws[(p, q)] = tuple(level)
    out = TruncBiSSet(pbound, qbound, raws, act)
    if validate:
        out.validate()
    return out


def bisset_document(t, name: str, namer=None) -> Document:
    """Document presenting the nondegenerate cells of a truncated
    bisimplicial set; fails when some face of a cell is degenerate, which
    this format cannot express."""
    cells = [
        (p, q, raw)
        for (p, q), raws in sorted(t.cells.items())
        for raw in raws
    ]
    if namer is None:
        names = {
            (p, q, raw): f"c{p}{q}_{k}"
            for k, (p, q, raw) in enumerate(cells)
        }
    else:
        names = {(p, q, raw): namer(raw) for (p, q, raw) in cells}
    if len(set(names.values())) != len(cells):
        raise ValueError("cell naming is not injective")
    _check_names(names.values())
    body: list = [("cell", names[key], key[0], key[1]) for key in cells]
    for p, q, raw in cells:
        x = t.identity_simplex(p, q, raw)
        for d, n in (("h", p), ("v", q)):
            for i in range(n + 1) if n else ():
                y = t.face_h(x, i) if d == "h" else t.face_v(x, i)
                if y.is_degenerate:
                    raise ValueError(
                        f"face {d} {i} of a cell is degenerate; "
                        "not representable in this format"
                    )
                key = (y.bidegree[0], y.bidegree[1], y.cell.raw)
                body.append(("face", d, i, names[(p, q, raw)], names[key]))
    return Document("bisset", name, tuple(body))


