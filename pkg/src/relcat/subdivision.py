"""Subdivisions of relative posets.

The objects of every subdivision of a poset P are the nonempty chains of P,
written as tuples that increase strictly in the order of P.  The four
variants differ in the direction of the arrows between nested chains and in
which endpoint of a chain controls the weak equivalences:

* terminal subdivision: an arrow c1 -> c2 for c1 a subchain of c2, a weak
  equivalence when last(c1) -> last(c2) is one in P;
* initial subdivision: an arrow c2 -> c1 for c1 a subchain of c2, a weak
  equivalence when first(c2) -> first(c1) is one in P;
* two-sided subdivision: terminal applied after initial;
* the conjugate two-sided subdivision: initial applied after terminal.

Each construction comes with its projection back to P (last element for
terminal, first for initial) and, for totally ordered P, a section.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import RelCategory, RelFunctor, _bits, find_isomorphism


@dataclass(frozen=True)
class Subdivision:
    """A subdivided relative poset together with its projection functor."""

    category: RelCategory
    projection: RelFunctor

    @property
    def base(self) -> RelCategory:
        return self.projection.cod


def _chains_and_inclusion(base: RelCategory) -> tuple[list[tuple[int, ...]], RelCategory]:
    """All nonempty chains of ``base`` as index tuples, sorted by (length,
    indices), plus the poset of chains ordered by inclusion (weak
    equivalences not yet attached)."""
    base._need_poset()
    n = base.n_objects
    up = base._up
    chains: list[tuple[int, ...]] = []
    stack: list[tuple[int, ...]] = [(i,) for i in reversed(range(n))]
    while stack:
        c = stack.pop()
        chains.append(c)
        last = c[-1]
        for j in _bits(up[last] & ~(1 << last)):
            stack.append(c + (j,))
    chains.sort(key=lambda c: (len(c), c))
    pos = {c: k for k, c in enumerate(chains)}

    down = base._down_masks()
    full = (1 << n) - 1
    rels: list[tuple[int, int]] = []
    for k, c in enumerate(chains):
        length = len(c)
        for slot in range(length + 1):
            cand = full
            if slot > 0:
                a = c[slot - 1]
                cand &= up[a] & ~(1 << a)
            if slot < length:
                b = c[slot]
                cand &= down[b] & ~(1 << b)
            for x in _bits(cand):
                rels.append((k, pos[c[:slot] + (x,) + c[slot:]]))

    objs = tuple(tuple(base.objects[i] for i in c) for c in chains)
    incl = RelCategory.from_poset(
        range(len(chains)), rels
    )
    # swap integer placeholders for the chain tuples, keeping the masks
    incl = RelCategory._from_masks(objs, incl._up, incl._wemask)
    return chains, incl


def _endpoint_we_masks(
    base: RelCategory,
    chains: list[tuple[int, ...]],
    order_masks: list[int],
    endpoint: int,
) -> list[int]:
    """Weak-equivalence masks for a chain poset: an arrow is marked when the
    selected endpoints of its chains are related by a weak equivalence of the
    base.  ``order_masks`` gives the arrows, ``endpoint`` is -1 (last) or 0
    (first)."""
    by_endpoint: dict[int, int] = {}
    for k, c in enumerate(chains):
        b = c[endpoint]
        by_endpoint[b] = by_endpoint.get(b, 0) | (1 << k)
    targets: dict[int, int] = {}
    for b in range(base.n_objects):
        m = 0
        for b2 in _bits(base._wemask[b]):
            m |= by_endpoint.get(b2, 0)
        targets[b] = m
    return [
        order_masks[k] & targets[c[endpoint]] for k, c in enumerate(chains)
    ]


def subdivide_terminal(base: RelCategory) -> Subdivision:
    """Chains ordered by inclusion; weak equivalences read off last elements."""
    chains, incl = _chains_and_inclusion(base)
    we = _endpoint_we_masks(base, chains, incl._up, -1)
    cat = RelCategory._from_masks(incl.objects, incl._up, we)
    proj = RelFunctor(cat, base, {c: c[-1] for c in cat.objects})
    return Subdivision(cat, proj)


def subdivide_initial(base: RelCategory) -> Subdivision:
    """Chains ordered by reverse inclusion; weak equivalences read off first
    elements."""
    chains, incl = _chains_and_inclusion(base)
    down = incl._down_masks()
    we = _endpoint_we_masks(base, chains, down, 0)
    cat = RelCategory._from_masks(incl.objects, down, we)
    proj = RelFunctor(cat, base, {c: c[0] for c in cat.objects})
    return Subdivision(cat, proj)


def subdivide_two_sided(base: RelCategory) -> Subdivision:
    inner = subdivide_initial(base)
    outer = subdivide_terminal(inner.category)
    return Subdivision(outer.category, outer.projection.then(inner.projection))


def subdivide_conjugate(base: RelCategory) -> Subdivision:
    inner = subdivide_terminal(base)
    outer = subdivide_initial(inner.category)
    return Subdivision(outer.category, outer.projection.then(inner.projection))


KINDS = {
    "xi_t": subdivide_terminal,
    "xi_i": subdivide_initial,
    "xi": subdivide_two_sided,
    "xibar": subdivide_conjugate,
}


def subdivide(base: RelCategory, kind: str) -> Subdivision:
    try:
        fn = KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown subdivision kind {kind!r}; choose from {sorted(KINDS)}")
    return fn(base)


def _total_order(base: RelCategory) -> list:
    objs = sorted(base.objects, key=lambda x: base._up[base._idx[x]].bit_count(), reverse=True)
    for a, b in zip(objs, objs[1:]):
        if not base.leq(a, b):
            raise ValueError("section is only defined for totally ordered bases")
    return objs


def terminal_section(sub: Subdivision) -> RelFunctor:
    """Section of the terminal projection for a totally ordered base:
    sends an element to the chain of everything below it."""
    objs = _total_order(sub.base)
    obj_map = {objs[i]: tuple(objs[: i + 1]) for i in range(len(objs))}
    return RelFunctor(sub.base, sub.category, obj_map)


def initial_section(sub: Subdivision) -> RelFunctor:
    """Section of the initial projection for a totally ordered base:
    sends an element to the chain of everything above it."""
    objs = _total_order(sub.base)
    obj_map = {objs[i]: tuple(objs[i:]) for i in range(len(objs))}
    return RelFunctor(sub.base, sub.category, obj_map)


def _mutually_inverse(f: RelFunctor) -> RelFunctor:
    """Validate f together with the reversal of its object bijection; returns
    the inverse.  Both directions being relative functors makes f an
    isomorphism of relative posets."""
    f.validate()
    back = {f(x): x for x in f.dom.objects}
    if len(back) != f.cod.n_objects:
        raise AssertionError("candidate isomorphism is not bijective")
    g = RelFunctor(f.cod, f.dom, back)
    g.validate()
    return g


def conjugation_iso(base: RelCategory) -> RelFunctor:
    """The isomorphism from the opposite of the initial subdivision to the
    terminal subdivision of the opposite base: a chain maps to itself read
    backwards.

    Inclusions of chains are unaffected by rereading, so the opposite of the
    reverse-inclusion order is the inclusion order; a weak equivalence between
    first elements becomes one between last elements.
    """
    dom = subdivide_initial(base).category.opposite()
    cod = subdivide_terminal(base.opposite()).category
    f = RelFunctor(dom, cod, {c: tuple(reversed(c)) for c in dom.objects})
    _mutually_inverse(f)
    return f


def maximal_iteration_iso(base: RelCategory, kind: str) -> RelFunctor:
    """For a maximal base, the isomorphism from the iterated one-sided
    subdivision onto the two-sided one, when it exists.

    kind "t": chains-of-chains of the terminal and of the two-sided
    subdivision carry the same sets of chains, stored in opposite tuple
    order, so the reversal map is the isomorphism.  kind "i": the identity
    correspondence is attempted and, failing that, an exhaustive isomorphism
    search; a ValueError reports when the two relative posets are simply not
    isomorphic.
    """
    if not base.is_maximal():
        raise ValueError("iterated subdivision comparison needs a maximal base")
    if kind not in ("t", "i"):
        raise ValueError(f"unknown one-sided kind {kind!r}; choose 't' or 'i'")
    two = subdivide_two_sided(base).category
    if kind == "t":
        once = subdivide_terminal(base).category
        twice = subdivide_terminal(once).category
        f = RelFunctor(twice, two, {o: tuple(reversed(o)) for o in twice.objects})
        _mutually_inverse(f)
        return f
    once = subdivide_initial(base).category
    twice = subdivide_initial(once).category
    try:
        f = RelFunctor(twice, two, {o: o for o in twice.objects})
        _mutually_inverse(f)
        return f
    except AssertionError:
        pass
    found = find_isomorphism(twice, two)
    if found is None:
        raise ValueError(
            "iterated initial subdivision is not isomorphic to the two-sided "
            "one for this base: the underlying posets are opposite orders "
            f"({twice.n_objects} objects, "
            f"{sum(1 for x in twice.objects if not any(twice.leq(y, x) and y != x for y in twice.objects))} "
            "minimal elements against "
            f"{sum(1 for x in two.objects if not any(two.leq(y, x) and y != x for y in two.objects))})"
        )
    return found


def image_chain(f: RelFunctor, chain: tuple) -> tuple:
    """Image of a chain under a relative functor, with repeats collapsed."""
    out = []
    for x in chain:
        y = f(x)
        if not out or out[-1] != y:
            out.append(y)
    return tuple(out)


def subdivide_functor(
    f: RelFunctor, sdom: RelCategory, scod: RelCategory
) -> RelFunctor:
    """Induced functor between subdivisions of the same kind: a chain maps to
    the chain of images of its elements."""
    return RelFunctor(sdom, scod, {c: image_chain(f, c) for c in sdom.objects})


def size_row(base: RelCategory, kind: str) -> dict:
    cat = subdivide(base, kind).category
    return {
        "kind": kind,
        "objects": cat.n_objects,
        "morphisms": cat.n_morphisms(),
        "weak_equivalences": cat.n_we_morphisms(),
    }
