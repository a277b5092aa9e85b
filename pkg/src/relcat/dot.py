"""Graphviz rendering of relative categories.

One node per object in declaration order; one edge per non-identity
morphism, dashed with a "~" label when it is a weak equivalence.  Output is
deterministic, so identical inputs give byte-identical text.
"""

from __future__ import annotations

from .core import RelCategory


def _quote(x) -> str:
    s = str(x)
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dot(cat: RelCategory, name: str = "G") -> str:
    index = {x: i for i, x in enumerate(cat.objects)}
    lines = [f"digraph {_quote(name)} {{"]
    for x in cat.objects:
        lines.append(f"  {_quote(x)};")
    if cat.is_poset_backed:
        edges = sorted(cat.relations(), key=lambda e: (index[e[0]], index[e[1]]))
        for a, b in edges:
            if cat.is_we((a, b)):
                lines.append(f'  {_quote(a)} -> {_quote(b)} [label="~", style=dashed];')
            else:
                lines.append(f"  {_quote(a)} -> {_quote(b)};")
    else:
        edges = sorted(
            (m for m in cat.morphisms() if not cat.is_identity(m)),
            key=lambda m: (index[cat.src(m)], index[cat.dst(m)], str(m)),
        )
        for m in edges:
            a, b = cat.src(m), cat.dst(m)
            if cat.is_we(m):
                lines.append(f'  {_quote(a)} -> {_quote(b)} [label="~", style=dashed];')
            else:
                lines.append(f"  {_quote(a)} -> {_quote(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
