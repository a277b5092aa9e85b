"""Strict homotopies, zigzags, homotopy equivalences, and strong deformation
retractions for finite relative categories.

A strict homotopy from f to g is a relative functor out of the cylinder
Y x 1-hat restricting to f at 0 and to g at 1; because the interval is
maximal, its components are forced to be weak equivalences.  Everything else
here is built from that notion: the zigzag relation, two-sided equivalence
witnesses with explicit correction zigzags, SDR witnesses, and the transport
of homotopies through chain subdivision by an explicit prism over a fence
poset.
"""

from __future__ import annotations

import heapq
import itertools
from collections import deque
from dataclasses import dataclass

from .core import (
    CostGuard,
    RelCategory,
    RelFunctor,
    enumerate_functors,
    is_relative_inclusion,
    karrow,
    make_maximal,
)
from .subdivision import subdivide, subdivide_functor

_INTERVAL = karrow(1, "maximal")


def interval() -> RelCategory:
    return _INTERVAL


def cylinder(y: RelCategory) -> RelCategory:
    """y x 1-hat; the two ends are the objects (obj, 0) and (obj, 1)."""
    return y.product(_INTERVAL)


# --- strict homotopies ------------------------------------------------------


@dataclass(frozen=True)
class StrictHomotopy:
    """A relative functor h on the cylinder of f.dom with h(-,0) = f and
    h(-,1) = g."""

    h: RelFunctor
    f: RelFunctor
    g: RelFunctor

    def component(self, y):
        """The weak equivalence f(y) -> g(y) picked out by h."""
        if self.h.dom.is_poset_backed:
            return self.h.on_mor(((y, 0), (y, 1)))
        return self.h.on_mor((self.f.dom.identity(y), (0, 1)))

    def validate(self) -> None:
        if not check_strict_homotopy(self.h, self.f, self.g):
            raise AssertionError("strict homotopy data does not check out")


def check_strict_homotopy(h: RelFunctor, f: RelFunctor, g: RelFunctor) -> bool:
    """True iff h is a valid relative functor on the cylinder of f.dom whose
    two ends are exactly f and g, on objects and on morphisms."""
    y = f.dom
    if g.dom is not y and g.dom != y:
        raise ValueError("endpoints have different domains")
    if f.cod != g.cod or h.cod != f.cod:
        raise ValueError("endpoints and homotopy have different codomains")
    expected = {(obj, t) for obj in y.objects for t in (0, 1)}
    if set(h.dom.objects) != expected:
        raise ValueError("homotopy domain is not the cylinder of f.dom")
    try:
        h.validate()
    except AssertionError:
        return False
    for obj in y.objects:
        if h((obj, 0)) != f(obj) or h((obj, 1)) != g(obj):
            return False
    if not f.cod.is_poset_backed:
        for m in y.morphisms():
            if y.is_poset_backed:
                m0 = ((m[0], 0), (m[1], 0))
                m1 = ((m[0], 1), (m[1], 1))
            else:
                m0 = (m, (0, 0))
                m1 = (m, (1, 1))
            if h.on_mor(m0) != f.on_mor(m) or h.on_mor(m1) != g.on_mor(m):
                return False
    return True


def _component_choices(f: RelFunctor, g: RelFunctor, identity_at=()):
    """Per-object lists of candidate weak equivalences f(y) -> g(y); None if
    some object has no candidate."""
    z = f.cod
    fixed = set(identity_at)
    out = []
    for y in f.dom.objects:
        if y in fixed:
            if f(y) != g(y):
                return None
            cands = [z.identity(f(y))]
        else:
            cands = [m for m in z.hom(f(y), g(y)) if z.is_we(m)]
        if not cands:
            return None
        out.append(cands)
    return out


def _natural(f: RelFunctor, g: RelFunctor, comp: dict) -> bool:
    z = f.cod
    for m in f.dom.morphisms():
        if f.dom.is_identity(m):
            continue
        s, d = f.dom.src(m), f.dom.dst(m)
        if z.compose(comp[d], f.on_mor(m)) != z.compose(g.on_mor(m), comp[s]):
            return False
    return True


def _homotopy_exists(f: RelFunctor, g: RelFunctor, identity_at=()) -> bool:
    """Cheap existence test, no cylinder construction."""
    choices = _component_choices(f, g, identity_at)
    if choices is None:
        return False
    if f.cod.is_poset_backed:
        return True
    objs = list(f.dom.objects)
    return any(
        _natural(f, g, dict(zip(objs, family)))
        for family in itertools.product(*choices)
    )


def _build_homotopy(f: RelFunctor, g: RelFunctor, comp: dict) -> StrictHomotopy:
    y, z = f.dom, f.cod
    cyl = cylinder(y)
    obj_map = {}
    for obj in y.objects:
        obj_map[(obj, 0)] = f(obj)
        obj_map[(obj, 1)] = g(obj)
    if z.is_poset_backed:
        h = RelFunctor(cyl, z, obj_map)
    else:
        mor_map = {}
        for m in cyl.morphisms():
            if y.is_poset_backed:
                (s, ts), (d, td) = m
                base = (s, d)
            else:
                base, (ts, td) = m
                s, d = y.src(base), y.dst(base)
            if ts == 0 and td == 0:
                mor_map[m] = f.on_mor(base)
            elif ts == 1:
                mor_map[m] = g.on_mor(base)
            else:
                mor_map[m] = z.compose(comp[d], f.on_mor(base))
        h = RelFunctor(cyl, z, obj_map, mor_map)
    hom = StrictHomotopy(h, f, g)
    hom.validate()
    return hom


def strict_homotopy_between(
    f: RelFunctor, g: RelFunctor, identity_at=()
) -> StrictHomotopy | None:
    """The strict homotopy f => g when one exists (unique for poset
    codomains, first in canonical order otherwise)."""
    choices = _component_choices(f, g, identity_at)
    if choices is None:
        return None
    objs = list(f.dom.objects)
    if f.cod.is_poset_backed:
        return _build_homotopy(f, g, dict(zip(objs, (c[0] for c in choices))))
    for family in itertools.product(*choices):
        comp = dict(zip(objs, family))
        if _natural(f, g, comp):
            return _build_homotopy(f, g, comp)
    return None


def constant_homotopy(f: RelFunctor) -> StrictHomotopy:
    hom = strict_homotopy_between(f, f, identity_at=list(f.dom.objects))
    assert hom is not None
    return hom


def strict_homotopy_from_family(
    f: RelFunctor, g: RelFunctor, family
) -> StrictHomotopy:
    """The strict homotopy with the given components (a map from domain
    objects to codomain morphisms); fails loudly if the family is not a
    natural weak equivalence."""
    z = f.cod
    comp = dict(family)
    for y in f.dom.objects:
        m = comp[y]
        if z.src(m) != f(y) or z.dst(m) != g(y) or not z.is_we(m):
            raise AssertionError(
                f"component at {y!r} is not a weak equivalence f(y) -> g(y)"
            )
    if not z.is_poset_backed and not _natural(f, g, comp):
        raise AssertionError("component family is not natural")
    return _build_homotopy(f, g, comp)


# --- zigzags ----------------------------------------------------------------


@dataclass(frozen=True)
class ZigzagStep:
    homotopy: StrictHomotopy
    forward: bool = True

    @property
    def source(self) -> RelFunctor:
        return self.homotopy.f if self.forward else self.homotopy.g

    @property
    def target(self) -> RelFunctor:
        return self.homotopy.g if self.forward else self.homotopy.f


@dataclass(frozen=True)
class Zigzag:
    """A chain of strict homotopies, each crossed in either direction,
    connecting start to end."""

    start: RelFunctor
    steps: tuple = ()

    @property
    def end(self) -> RelFunctor:
        return self.steps[-1].target if self.steps else self.start

    def __len__(self) -> int:
        return len(self.steps)

    def validate(self) -> None:
        cur = self.start
        for i, st in enumerate(self.steps):
            if st.source != cur:
                raise AssertionError(f"step {i} does not start at the current functor")
            st.homotopy.validate()
            cur = st.target

    def reverse(self) -> "Zigzag":
        return Zigzag(
            self.end,
            tuple(
                ZigzagStep(st.homotopy, not st.forward)
                for st in reversed(self.steps)
            ),
        )


def concat_zigzags(a: Zigzag, b: Zigzag) -> Zigzag:
    if a.end != b.start:
        raise ValueError("zigzags do not chain")
    return Zigzag(a.start, a.steps + b.steps)


def whisker_homotopy(
    hom: StrictHomotopy,
    pre: RelFunctor | None = None,
    post: RelFunctor | None = None,
) -> StrictHomotopy:
    """Compose a strict homotopy with fixed functors on either side."""

    def conv(u: RelFunctor) -> RelFunctor:
        if pre is not None:
            u = pre.then(u)
        if post is not None:
            u = u.then(post)
        return u

    f2, g2 = conv(hom.f), conv(hom.g)
    comp = {}
    for w in f2.dom.objects:
        m = hom.component(pre(w) if pre is not None else w)
        comp[w] = post.on_mor(m) if post is not None else m
    return _build_homotopy(f2, g2, comp)


def whisker_zigzag(
    z: Zigzag, pre: RelFunctor | None = None, post: RelFunctor | None = None
) -> Zigzag:
    def conv(u: RelFunctor) -> RelFunctor:
        if pre is not None:
            u = pre.then(u)
        if post is not None:
            u = u.then(post)
        return u

    return Zigzag(
        conv(z.start),
        tuple(
            ZigzagStep(whisker_homotopy(st.homotopy, pre, post), st.forward)
            for st in z.steps
        ),
    )


def are_homotopic(
    f: RelFunctor,
    g: RelFunctor,
    max_zigzag_length: int = 3,
    *,
    guard: CostGuard | None = None,
    _nodes=None,
) -> Zigzag | None:
    """Breadth-first search for a zigzag of at most the given number of
    strict homotopies connecting f to g; None when there is none within the
    bound."""
    if f.dom != g.dom or f.cod != g.cod:
        raise ValueError("functors are not parallel")
    if f == g:
        return Zigzag(f)
    nodes = (
        _nodes
        if _nodes is not None
        else enumerate_functors(f.dom, f.cod, guard=guard)
    )
    by_key = {u.key(): u for u in nodes}
    startk, goal = f.key(), g.key()
    parent: dict = {startk: None}
    frontier = deque([(startk, 0)])
    while frontier:
        key, depth = frontier.popleft()
        if depth == max_zigzag_length:
            continue
        u = by_key[key]
        for vkey, v in by_key.items():
            if vkey in parent:
                continue
            if _homotopy_exists(u, v):
                parent[vkey] = (key, True)
            elif _homotopy_exists(v, u):
                parent[vkey] = (key, False)
            else:
                continue
            if vkey == goal:
                return _rebuild_path(parent, by_key, f, vkey)
            frontier.append((vkey, depth + 1))
    return None


def _rebuild_path(parent, by_key, start: RelFunctor, endk) -> Zigzag:
    edges = []
    key = endk
    while parent[key] is not None:
        prevk, fwd = parent[key]
        edges.append((prevk, key, fwd))
        key = prevk
    steps = []
    for prevk, curk, fwd in reversed(edges):
        u, v = by_key[prevk], by_key[curk]
        hom = (
            strict_homotopy_between(u, v)
            if fwd
            else strict_homotopy_between(v, u)
        )
        assert hom is not None
        steps.append(ZigzagStep(hom, fwd))
    return Zigzag(start, tuple(steps))


# --- homotopy equivalences --------------------------------------------------


@dataclass(frozen=True)
class HomotopyEquivalence:
    """forward with a two-sided inverse: dom_zigzag connects
    forward.then(backward) to the identity of the domain, cod_zigzag connects
    backward.then(forward) to the identity of the codomain."""

    forward: RelFunctor
    backward: RelFunctor
    dom_zigzag: Zigzag
    cod_zigzag: Zigzag

    def validate(self) -> None:
        rt = self.forward.then(self.backward)
        if self.dom_zigzag.start != rt:
            raise AssertionError("dom zigzag does not start at the round trip")
        if self.dom_zigzag.end != RelFunctor.identity(self.forward.dom):
            raise AssertionError("dom zigzag does not end at the identity")
        rt = self.backward.then(self.forward)
        if self.cod_zigzag.start != rt:
            raise AssertionError("cod zigzag does not start at the round trip")
        if self.cod_zigzag.end != RelFunctor.identity(self.forward.cod):
            raise AssertionError("cod zigzag does not end at the identity")
        self.dom_zigzag.validate()
        self.cod_zigzag.validate()


def he_identity(c: RelCategory) -> HomotopyEquivalence:
    i = RelFunctor.identity(c)
    return HomotopyEquivalence(i, i, Zigzag(i), Zigzag(i))


def find_homotopy_equivalence(
    f: RelFunctor, bound: int = 3, *, guard: CostGuard | None = None
) -> HomotopyEquivalence | None:
    """Search for a homotopy inverse of f within the zigzag bound; first hit
    in canonical enumeration order."""
    id_dom = RelFunctor.identity(f.dom)
    id_cod = RelFunctor.identity(f.cod)
    dom_nodes = enumerate_functors(f.dom, f.dom, guard=guard)
    cod_nodes = enumerate_functors(f.cod, f.cod, guard=guard)
    for back in enumerate_functors(f.cod, f.dom, guard=guard):
        z1 = are_homotopic(f.then(back), id_dom, bound, _nodes=dom_nodes)
        if z1 is None:
            continue
        z2 = are_homotopic(back.then(f), id_cod, bound, _nodes=cod_nodes)
        if z2 is None:
            continue
        return HomotopyEquivalence(f, back, z1, z2)
    return None


def make_homotopy_equivalence(
    forward: RelFunctor,
    backward: RelFunctor,
    bound: int = 3,
    *,
    guard: CostGuard | None = None,
) -> HomotopyEquivalence | None:
    """Certify a supplied inverse pair by finding the two zigzags."""
    z1 = are_homotopic(
        forward.then(backward), RelFunctor.identity(forward.dom), bound, guard=guard
    )
    if z1 is None:
        return None
    z2 = are_homotopic(
        backward.then(forward), RelFunctor.identity(forward.cod), bound, guard=guard
    )
    if z2 is None:
        return None
    return HomotopyEquivalence(forward, backward, z1, z2)


def he_compose(
    first: HomotopyEquivalence, second: HomotopyEquivalence
) -> HomotopyEquivalence:
    """Equivalence for first.forward.then(second.forward), with zigzags
    assembled by whiskering, no search."""
    f, u = first.forward, first.backward
    g, v = second.forward, second.backward
    fwd = f.then(g)
    bwd = v.then(u)
    dz = concat_zigzags(
        whisker_zigzag(second.dom_zigzag, pre=f, post=u), first.dom_zigzag
    )
    cz = concat_zigzags(
        whisker_zigzag(first.cod_zigzag, pre=v, post=g), second.cod_zigzag
    )
    return HomotopyEquivalence(fwd, bwd, dz, cz)


def he_two_of_three_right(
    gf_he: HomotopyEquivalence, g_he: HomotopyEquivalence, f: RelFunctor
) -> HomotopyEquivalence:
    """Given equivalences for g.f and for g, produce one for f.

    Requires gf_he.forward to be literally f.then(g_he.forward).
    """
    g, v = g_he.forward, g_he.backward
    u = gf_he.backward
    if gf_he.forward != f.then(g):
        raise ValueError("composite witness does not factor through f and g")
    back = g.then(u)
    dz = gf_he.dom_zigzag
    cz = concat_zigzags(
        concat_zigzags(
            whisker_zigzag(g_he.dom_zigzag.reverse(), pre=g.then(u).then(f)),
            whisker_zigzag(gf_he.cod_zigzag, pre=g, post=v),
        ),
        g_he.dom_zigzag,
    )
    return HomotopyEquivalence(f, back, dz, cz)


# --- strong deformation retractions -----------------------------------------


@dataclass(frozen=True)
class SDRWitness:
    """A retraction r onto a subcategory together with the strict homotopy s
    from the co-restriction back to the identity, constant on the
    subcategory."""

    r: RelFunctor
    s: StrictHomotopy


def verify_sdr(a_incl: RelFunctor, w: SDRWitness) -> bool:
    """All three conditions: r retracts a_incl, s runs from incl.r to the
    identity, and s is the identity on the subcategory's objects."""
    if not is_relative_inclusion(a_incl):
        raise ValueError("not a relative inclusion")
    a, z = a_incl.dom, a_incl.cod
    if w.r.dom != z or w.r.cod != a:
        return False
    for x in a.objects:
        if w.r(a_incl(x)) != x:
            return False
    if not a.is_poset_backed:
        for m in a.morphisms():
            if w.r.on_mor(a_incl.on_mor(m)) != m:
                return False
    if not check_strict_homotopy(w.s.h, w.r.then(a_incl), RelFunctor.identity(z)):
        return False
    for x in a.objects:
        zx = a_incl(x)
        if w.s.component(zx) != z.identity(zx):
            return False
    return True


def find_sdr(
    a_incl: RelFunctor, *, guard: CostGuard | None = None
) -> SDRWitness | None:
    """Exhaustive search for a strong deformation retraction witness;
    deterministic first result in canonical order, None when none exists."""
    if not is_relative_inclusion(a_incl):
        raise ValueError("not a relative inclusion")
    a, z = a_incl.dom, a_incl.cod
    fixed = {a_incl(x): x for x in a.objects}
    image = list(fixed)
    id_z = RelFunctor.identity(z)
    for r in enumerate_functors(z, a, fixed=fixed, guard=guard):
        if not a.is_poset_backed:
            if any(
                r.on_mor(a_incl.on_mor(m)) != m for m in a.morphisms()
            ):
                continue
        s = strict_homotopy_between(r.then(a_incl), id_z, identity_at=image)
        if s is not None:
            return SDRWitness(r, s)
    return None


# --- subdivision transport ---------------------------------------------------


def build_J(n: int) -> RelCategory:
    """The maximal fence with 2n+1 objects 0..2n and covering arrows
    2i -> 2i+1 <- 2i+2."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rels = []
    for i in range(n):
        rels.append((2 * i, 2 * i + 1))
        rels.append((2 * i + 2, 2 * i + 1))
    return make_maximal(RelCategory.from_poset(range(2 * n + 1), rels, []))


def _stable_topo(p: RelCategory) -> list:
    """Linear extension of a poset, ties broken by object position."""
    objs = p.objects
    indeg = {x: 0 for x in objs}
    succ = {x: [] for x in objs}
    for a, b in p.covers():
        indeg[b] += 1
        succ[a].append(b)
    pos = {x: i for i, x in enumerate(objs)}
    ready = [pos[x] for x in objs if indeg[x] == 0]
    heapq.heapify(ready)
    out = []
    while ready:
        x = objs[heapq.heappop(ready)]
        out.append(x)
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                heapq.heappush(ready, pos[y])
    if len(out) != len(objs):
        raise ValueError("not a poset")
    return out


def _slice_chain(chain, num, thr, dbl):
    out = []
    for e in chain:
        k = num[e]
        if dbl is not None and k == dbl:
            out.append((e, 0))
            out.append((e, 1))
        else:
            out.append((e, 1 if k > thr else 0))
    return tuple(out)


def k_homotopy(p: RelCategory, hom: StrictHomotopy, kind: str = "xi_t") -> Zigzag:
    """Transport a strict homotopy through subdivision: a zigzag from the
    subdivision of hom.f to the subdivision of hom.g whose 2n stages are the
    slices of an explicit prism over the 2n+1-object fence.

    Stage c of the prism doubles or flips the indicator bits of a chain's
    entries against a threshold in a fixed linear extension; every slice is
    validated as a relative functor and every stage as a strict homotopy, so
    a formula slip aborts loudly instead of producing an unchecked witness.
    """
    if kind not in ("xi_t", "xi_i"):
        raise ValueError(f"unsupported subdivision kind {kind!r}")
    p._need_poset()
    x = hom.h.cod
    x._need_poset()
    if hom.f.dom != p:
        raise ValueError("homotopy is not over the given poset")
    order = _stable_topo(p)
    num = {obj: i + 1 for i, obj in enumerate(order)}
    n = p.n_objects
    sdom = subdivide(p, kind).category
    scod = subdivide(x, kind).category
    fsub = subdivide_functor(hom.f, sdom, scod)
    gsub = subdivide_functor(hom.g, sdom, scod)
    hmap = hom.h.obj_map

    def slice_functor(j: int) -> RelFunctor:
        if j % 2 == 0:
            i = j // 2
            thr = i if kind == "xi_t" else n - i
            dbl = None
        else:
            i = (j - 1) // 2
            thr = i if kind == "xi_t" else n - i
            dbl = (i + 1) if kind == "xi_t" else (n - i)
        obj_map = {}
        for chain in sdom.objects:
            lifted = _slice_chain(chain, num, thr, dbl)
            for (e1, b1), (e2, b2) in zip(lifted, lifted[1:]):
                if not (p.leq(e1, e2) and b1 <= b2 and (e1, b1) != (e2, b2)):
                    raise AssertionError(
                        f"prism stage {j} sends {chain!r} to a non-chain"
                    )
            image = []
            for pair in lifted:
                v = hmap[pair]
                if not image or image[-1] != v:
                    image.append(v)
            obj_map[chain] = tuple(image)
        s = RelFunctor(sdom, scod, obj_map)
        s.validate()
        return s

    slices = [slice_functor(j) for j in range(2 * n + 1)]
    if kind == "xi_t":
        # all-zero bits at stage 2n: that end is the subdivided f
        path = list(range(2 * n, -1, -1))
    else:
        path = list(range(2 * n + 1))
    if slices[path[0]] != fsub or slices[path[-1]] != gsub:
        raise AssertionError("prism endpoints do not match the subdivided maps")
    steps = []
    for a, b in zip(path, path[1:]):
        lo, hi = (a, b) if a % 2 == 0 else (b, a)
        if kind == "xi_t":
            stage = strict_homotopy_between(slices[lo], slices[hi])
            forward = a == lo
        else:
            stage = strict_homotopy_between(slices[hi], slices[lo])
            forward = a == hi
        if stage is None:
            raise AssertionError(f"prism stage {a}-{b} is not a strict homotopy")
        steps.append(ZigzagStep(stage, forward))
    z = Zigzag(fsub, tuple(steps))
    z.validate()
    return z


def subdivide_homotopy(hom: StrictHomotopy, kind: str) -> Zigzag:
    """Zigzag between the subdivided endpoints of a strict homotopy, for any
    of the four subdivision kinds."""
    if kind in ("xi_t", "xi_i"):
        return k_homotopy(hom.f.dom, hom, kind)
    if kind == "xi":
        inner, outer = "xi_i", "xi_t"
    elif kind == "xibar":
        inner, outer = "xi_t", "xi_i"
    else:
        raise ValueError(f"unsupported subdivision kind {kind!r}")
    z = k_homotopy(hom.f.dom, hom, inner)
    return _transport_zigzag(z, outer)


def _transport_zigzag(z: Zigzag, kind: str) -> Zigzag:
    base = z.start.dom
    scod_base = subdivide(base, kind).category
    scod_cod = subdivide(z.start.cod, kind).category
    out = Zigzag(subdivide_functor(z.start, scod_base, scod_cod))
    for st in z.steps:
        part = k_homotopy(base, st.homotopy, kind)
        out = concat_zigzags(out, part if st.forward else part.reverse())
    return out


def subdivide_zigzag(z: Zigzag, kind: str) -> Zigzag:
    if kind in ("xi_t", "xi_i"):
        return _transport_zigzag(z, kind)
    if kind == "xi":
        inner, outer = "xi_i", "xi_t"
    elif kind == "xibar":
        inner, outer = "xi_t", "xi_i"
    else:
        raise ValueError(f"unsupported subdivision kind {kind!r}")
    return _transport_zigzag(_transport_zigzag(z, inner), outer)


def subdivide_homotopy_equivalence(
    he: HomotopyEquivalence, kind: str
) -> HomotopyEquivalence:
    """Subdivision sends homotopy equivalences to homotopy equivalences; the
    witness zigzags are transported stage by stage."""
    if kind == "xi":
        stages = ("xi_i", "xi_t")
    elif kind == "xibar":
        stages = ("xi_t", "xi_i")
    else:
        stages = (kind,)
    fwd, bwd = he.forward, he.backward
    dcat, ccat = he.forward.dom, he.forward.cod
    for stage in stages:
        nd = subdivide(dcat, stage).category
        nc = subdivide(ccat, stage).category
        fwd = subdivide_functor(fwd, nd, nc)
        bwd = subdivide_functor(bwd, nc, nd)
        dcat, ccat = nd, nc
    dz = subdivide_zigzag(he.dom_zigzag, kind)
    cz = subdivide_zigzag(he.cod_zigzag, kind)
    return HomotopyEquivalence(fwd, bwd, dz, cz)


# --- exponentials ------------------------------------------------------------


def induced_exponential_map(
    e: RelFunctor,
    z: RelCategory,
    *,
    exp_dom: RelCategory | None = None,
    exp_cod: RelCategory | None = None,
    guard: CostGuard | None = None,
) -> RelFunctor:
    """Precomposition by e: X -> Y as a relative functor Z^Y -> Z^X."""
    from .core import exponential

    x, y = e.dom, e.cod
    if exp_dom is None:
        exp_dom = exponential(z, y, guard=guard)
    if exp_cod is None:
        exp_cod = exponential(z, x, guard=guard)
    pos = {obj: i for i, obj in enumerate(y.objects)}
    obj_map = {
        point: tuple(point[pos[e(xo)]] for xo in x.objects)
        for point in exp_dom.objects
    }
    out = RelFunctor(exp_dom, exp_cod, obj_map)
    out.validate()
    return out


def exponential_homotopy(
    hom: StrictHomotopy,
    z: RelCategory,
    *,
    exp_dom: RelCategory | None = None,
    exp_cod: RelCategory | None = None,
    guard: CostGuard | None = None,
) -> StrictHomotopy:
    """A strict homotopy f => g induces one between the precomposition maps
    Z^Y -> Z^X, sending (F, t) to F applied after the stage-t end of the
    prism."""
    from .core import exponential

    x, y = hom.f.dom, hom.f.cod
    if exp_dom is None:
        exp_dom = exponential(z, y, guard=guard)
    if exp_cod is None:
        exp_cod = exponential(z, x, guard=guard)
    fstar = induced_exponential_map(hom.f, z, exp_dom=exp_dom, exp_cod=exp_cod)
    gstar = induced_exponential_map(hom.g, z, exp_dom=exp_dom, exp_cod=exp_cod)
    pos = {obj: i for i, obj in enumerate(y.objects)}
    cyl = cylinder(exp_dom)
    obj_map = {
        (point, t): tuple(
            point[pos[hom.h((xo, t))]] for xo in x.objects
        )
        for point in exp_dom.objects
        for t in (0, 1)
    }
    h = RelFunctor(cyl, exp_cod, obj_map)
    out = StrictHomotopy(h, fstar, gstar)
    out.validate()
    return out
