"""Sieve and cosieve calculus with explicit certificates.

A relative inclusion A -> B is a sieve when every morphism of B whose
codomain lies in the image is itself in the image; the certificate is the
characteristic relative functor B -> 1-arrow category sending exactly the
image to 0.  A sieve whose generated cosieve Z A strongly deformation
retracts onto A is certified by a DwyerWitness.  The closure operations
(retract, pushout along a sieve, finite composition, terminal subdivision
of a cosieve) each construct the transported witness from explicit
formulas and re-verify it; none of them search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

from .core import (
    DEFAULT_GUARD,
    CostGuard,
    CostGuardExceeded,
    RelCategory,
    RelFunctor,
    inclusion_functor,
    is_relative_inclusion,
    karrow,
    opposite_functor,
)
from .homotopy import (
    SDRWitness,
    find_sdr,
    strict_homotopy_from_family,
    verify_sdr,
)
from .subdivision import image_chain, subdivide, subdivide_functor

_FLAG = karrow(1, "maximal")


@dataclass(frozen=True)
class SieveCert:
    """Certificate that an inclusion is a sieve.

    ``characteristic`` is the relative functor to the 1-arrow category whose
    fiber over 0 is exactly the image of ``inclusion``.
    """

    inclusion: RelFunctor
    characteristic: RelFunctor

    def validate(self) -> None:
        alpha = self.characteristic
        if alpha.dom != self.inclusion.cod or not alpha.cod.same_structure(_FLAG):
            raise AssertionError("characteristic functor has the wrong shape")
        alpha.validate()
        image = {self.inclusion(x) for x in self.inclusion.dom.objects}
        for y in alpha.dom.objects:
            if (alpha(y) == 0) != (y in image):
                raise AssertionError(f"fiber over 0 differs from the image at {y!r}")
        if is_sieve(self.inclusion) is None:
            raise AssertionError("certified inclusion is not a sieve")


@dataclass(frozen=True)
class DwyerWitness:
    """Everything needed to certify a Dwyer inclusion, re-checkable.

    ``iso`` factors the original functor through the full image subcategory;
    ``sieve`` certifies the image inclusion; ``za`` is the cosieve it
    generates, with ``sdr`` a strong deformation retraction of ``za`` onto
    the image along ``za_inclusion``.
    """

    iso: RelFunctor
    sieve: SieveCert
    za: RelCategory
    za_inclusion: RelFunctor
    sdr: SDRWitness

    @property
    def inclusion(self) -> RelFunctor:
        return self.sieve.inclusion

    @property
    def functor(self) -> RelFunctor:
        """The certified map itself, domain to ambient category."""
        return self.iso.then(self.inclusion)

    def validate(self) -> None:
        self.iso.validate()
        img = self.iso.cod
        if len({self.iso(x) for x in self.iso.dom.objects}) != img.n_objects:
            raise AssertionError("factorization is not bijective on objects")
        self.sieve.validate()
        if self.inclusion.dom != img:
            raise AssertionError("factorization and sieve certificate disagree")
        z = cosieve_generated(self.inclusion)
        if z != self.za:
            raise AssertionError("za is not the generated cosieve")
        if not verify_sdr(self.za_inclusion, self.sdr):
            raise AssertionError("deformation retraction fails verification")


@dataclass(frozen=True)
class PushoutResult:
    """Pushout of s: A -> C along a sieve A -> B.

    ``xa`` and ``xc`` are the full subcategories of objects outside the two
    images; ``t`` restricts to an isomorphism between them.
    """

    d: RelCategory
    j: RelFunctor
    t: RelFunctor
    xa: RelCategory
    xc: RelCategory


def is_sieve(incl: RelFunctor) -> Optional[SieveCert]:
    """Certificate that the inclusion's image is closed under precomposition,
    or None.  Raises when the argument is not a relative inclusion."""
    if not is_relative_inclusion(incl):
        raise ValueError("is_sieve needs a relative inclusion")
    b = incl.cod
    image_obj = {incl(x) for x in incl.dom.objects}
    image_mor = {incl.on_mor(m) for m in incl.dom.morphisms()}
    for m in b.morphisms():
        if b.dst(m) in image_obj and m not in image_mor:
            return None
    alpha = RelFunctor(b, _FLAG, {y: 0 if y in image_obj else 1 for y in b.objects})
    alpha.validate()
    return SieveCert(incl, alpha)


def is_cosieve(incl: RelFunctor) -> bool:
    """Whether the inclusion's image is closed under postcomposition.
    Raises when the argument is not a relative inclusion."""
    if not is_relative_inclusion(incl):
        raise ValueError("is_cosieve needs a relative inclusion")
    b = incl.cod
    image_obj = {incl(x) for x in incl.dom.objects}
    image_mor = {incl.on_mor(m) for m in incl.dom.morphisms()}
    return all(
        m in image_mor
        for m in b.morphisms()
        if b.src(m) in image_obj
    )


def cosieve_generated(incl: RelFunctor) -> RelCategory:
    """Full subcategory of the codomain on all objects receiving a morphism
    from the image (the smallest cosieve containing the image)."""
    b = incl.cod
    image_obj = [incl(x) for x in incl.dom.objects]
    iset = set(image_obj)
    objs = [
        y for y in b.objects if y in iset or any(b.hom(x, y) for x in image_obj)
    ]
    return b.full_subcategory(objs)


def _image_factorization(f: RelFunctor) -> tuple[RelFunctor, RelFunctor] | None:
    """Factor an injective functor as iso onto the full image followed by the
    image inclusion; None when f is not full onto its image."""
    b = f.cod
    img = b.full_subcategory([f(x) for x in f.dom.objects])
    n_dom = sum(1 for _ in f.dom.morphisms())
    n_img = sum(1 for _ in img.morphisms())
    if n_dom != n_img:
        return None
    if img.is_poset_backed:
        iso = RelFunctor(f.dom, img, dict(f.obj_map))
    else:
        iso = RelFunctor(
            f.dom, img, dict(f.obj_map), {m: f.on_mor(m) for m in f.dom.morphisms()}
        )
    return iso, inclusion_functor(img, b)


def check_dwyer_explain(
    f: RelFunctor, *, sdr: SDRWitness | None = None, guard: CostGuard | None = None
) -> tuple[Optional[DwyerWitness], str]:
    """check_dwyer plus a reason string for the absent case."""
    if not is_relative_inclusion(f):
        return None, "not a relative inclusion"
    factored = _image_factorization(f)
    if factored is None:
        return None, "not full onto its image"
    iso, incl = factored
    cert = is_sieve(incl)
    if cert is None:
        return None, "image is not a sieve"
    za = cosieve_generated(incl)
    za_incl = inclusion_functor(incl.dom, za)
    if sdr is None:
        sdr = find_sdr(za_incl, guard=guard)
        if sdr is None:
            return None, "no strong deformation retraction"
    elif not verify_sdr(za_incl, sdr):
        return None, "supplied deformation retraction fails verification"
    return DwyerWitness(iso, cert, za, za_incl, sdr), "ok"


def check_dwyer(
    f: RelFunctor, *, sdr: SDRWitness | None = None, guard: CostGuard | None = None
) -> Optional[DwyerWitness]:
    """Witness that f is a Dwyer map: factorization through the image, sieve
    certificate, generated cosieve, and a strong deformation retraction onto
    the image (searched unless supplied)."""
    w, _ = check_dwyer_explain(f, sdr=sdr, guard=guard)
    return w


def check_co_dwyer(
    f: RelFunctor, *, sdr: SDRWitness | None = None, guard: CostGuard | None = None
) -> Optional[DwyerWitness]:
    """Witness over the opposite categories that f is a co-Dwyer map."""
    return check_dwyer(opposite_functor(f), sdr=sdr, guard=guard)


# --- pushout along a sieve --------------------------------------------------


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


def pushout_along_sieve(
    i: RelFunctor,
    s: RelFunctor,
    *,
    witness: DwyerWitness | None = None,
    guard: CostGuard | None = None,
) -> PushoutResult:
    """Pushout of s: A -> C along a Dwyer inclusion i: A -> B.

    Mixed hom-sets from C-side to B-side objects are explicit quotients of
    pairs (g: i(a) -> x in B, h: c -> s(a) in C) by the relation
    (g.i(alpha), h) ~ (g, s(alpha).h); weak equivalences are the composition
    closure of the images of we(B) and we(C).  When all three inputs are
    poset-backed and the quotient is thin, the result is poset-backed.
    """
    a, b, c = i.dom, i.cod, s.cod
    if s.dom != a:
        raise ValueError("the two legs must share their domain")
    s.validate()
    if witness is None:
        witness, reason = check_dwyer_explain(i, guard=guard)
        if witness is None:
            raise ValueError(f"pushout leg is not a Dwyer inclusion: {reason}")
    else:
        w_map = witness.functor
        if (
            w_map.dom != i.dom
            or w_map.cod != i.cod
            or any(w_map(x) != i(x) for x in i.dom.objects)
        ):
            raise ValueError("supplied witness does not certify the pushout leg")
        witness.validate()
    guard = guard or DEFAULT_GUARD

    bt = b.as_table()
    ct = c.as_table()
    img_of = {i(x): x for x in a.objects}
    s_obj = {i(x): s(x) for x in a.objects}
    xa_objs = [y for y in b.objects if y not in img_of]
    xa = b.full_subcategory(xa_objs)

    collide = set(c.objects) & set(xa_objs)
    cname: Callable = (lambda x: ("C", x)) if collide else (lambda x: x)
    bname: Callable = (lambda y: ("B", y)) if collide else (lambda y: y)

    border = {m: k for k, m in enumerate(bt.morphisms())}
    corder = {m: k for k, m in enumerate(ct.morphisms())}
    amor_of = {i.on_mor(al): al for al in a.morphisms()}

    mixed_b = [
        g
        for g in bt.morphisms()
        if bt.src(g) in img_of and bt.dst(g) not in img_of
    ]
    steps = 0
    pairs = []
    for g in mixed_b:
        target = s_obj[bt.src(g)]
        for c0 in ct.objects:
            for h in ct.hom(c0, target):
                pairs.append((g, h))
                steps += 1
                if guard.max_steps is not None and steps > guard.max_steps:
                    raise CostGuardExceeded("pushout mixed hom-set budget")
    uf = _UnionFind(pairs)
    for al in a.morphisms():
        g_al = i.on_mor(al)
        s_al = s.on_mor(al)
        src_im = i(a.src(al))
        for g in mixed_b:
            if bt.src(g) != bt.dst(g_al):
                continue
            left_g = bt.compose(g, g_al)
            for c0 in ct.objects:
                for h in ct.hom(c0, s_obj[src_im]):
                    uf.union((left_g, h), (g, ct.compose(s_al, h)))
                    steps += 1
                    if guard.max_steps is not None and steps > guard.max_steps:
                        raise CostGuardExceeded("pushout relation budget")

    canon: dict = {}
    for p in pairs:
        r = uf.find(p)
        best = canon.get(r)
        if best is None or (border[p[0]], corder[p[1]]) < (
            border[best[0]],
            corder[best[1]],
        ):
            canon[r] = p

    def cls(pair):
        return ("m", canon[uf.find(pair)])

    objects = [cname(x) for x in c.objects] + [bname(y) for y in xa_objs]
    mor: dict = {}
    for m in ct.morphisms():
        mor[("c", m)] = (cname(ct.src(m)), cname(ct.dst(m)))
    xa_ids = set()
    for m in bt.morphisms():
        sm, dm = bt.src(m), bt.dst(m)
        if sm not in img_of and dm not in img_of:
            mor[("b", m)] = (bname(sm), bname(dm))
            xa_ids.add(m)
    for p in set(canon.values()):
        mor[("m", p)] = (cname(ct.src(p[1])), bname(bt.dst(p[0])))
    ids = {cname(x): ("c", ct.identity(x)) for x in c.objects}
    ids.update({bname(y): ("b", bt.identity(y)) for y in xa_objs})

    comp: dict = {}
    for (m2k, m2), (m1k, m1) in itertools.product(list(mor), repeat=2):
        if mor[(m1k, m1)][1] != mor[(m2k, m2)][0]:
            continue
        if (m1k, m1) in ids.values() or (m2k, m2) in ids.values():
            continue
        if m1k == "c" and m2k == "c":
            out = ("c", ct.compose(m2, m1))
        elif m1k == "b" and m2k == "b":
            out = ("b", bt.compose(m2, m1))
        elif m1k == "c" and m2k == "m":
            g, h = m2
            out = cls((g, ct.compose(h, m1)))
        elif m1k == "m" and m2k == "b":
            g, h = m1
            out = cls((bt.compose(m2, g), h))
        else:
            raise AssertionError("no morphisms leave the B-side")
        comp[((m2k, m2), (m1k, m1))] = out

    we = {("c", m) for m in ct.we_morphisms()}
    we |= {("b", m) for m in xa_ids if m in set(bt.we_morphisms())}
    for g in mixed_b:
        if bt.is_we(g):
            we.add(cls((g, ct.identity(s_obj[bt.src(g)]))))
    changed = True
    while changed:
        changed = False
        for (m2, m1), out in comp.items():
            if m2 in we and m1 in we and out not in we:
                we.add(out)
                changed = True

    d = RelCategory.from_table(objects, mor, ids, comp, we)
    d.validate()
    if a.is_poset_backed and b.is_poset_backed and c.is_poset_backed:
        try:
            d = d.as_poset()
        except ValueError:
            pass

    if d.is_poset_backed:
        j = RelFunctor(c, d, {x: cname(x) for x in c.objects})
        t_mor = None
    else:
        j = RelFunctor(
            c,
            d,
            {x: cname(x) for x in c.objects},
            {m: ("c", m) for m in ct.morphisms()},
        )
        t_mor = {}
        for m in bt.morphisms():
            sm, dm = bt.src(m), bt.dst(m)
            if dm in img_of:
                t_mor[m] = ("c", s.on_mor(amor_of[m]))
            elif sm in img_of:
                t_mor[m] = cls((m, ct.identity(s_obj[sm])))
            else:
                t_mor[m] = ("b", m)
    t_obj = {
        y: cname(s_obj[y]) if y in img_of else bname(y) for y in b.objects
    }
    if d.is_poset_backed:
        t = RelFunctor(b, d, t_obj)
    else:
        t = RelFunctor(b, d, t_obj, t_mor)
    j.validate()
    t.validate()
    xc = d.full_subcategory([bname(y) for y in xa_objs])
    return PushoutResult(d, j, t, xa, xc)


def transport_sdr_along_pushout(
    witness: DwyerWitness,
    s: RelFunctor,
    res: PushoutResult | None = None,
    *,
    guard: CostGuard | None = None,
) -> SDRWitness:
    """Deformation retraction of the glued cosieve Z C onto C, built from the
    witness for A -> B by pushing each component forward."""
    i = witness.functor
    c = s.cod
    if res is None:
        res = pushout_along_sieve(i, s, witness=witness, guard=guard)
    d = res.d
    zc = cosieve_generated(res.j)
    c_in_zc = _corestrict(res.j, zc)

    inv_iso = {witness.iso(x): x for x in witness.iso.dom.objects}
    inv_j = {res.j(x): x for x in c.objects}
    r_obj = {}
    for zo in zc.objects:
        if zo in inv_j:
            r_obj[zo] = inv_j[zo]
        else:
            y = _preimage(res.t.obj_map, zo)
            r_obj[zo] = s(inv_iso[witness.sdr.r(y)])
    if c.is_poset_backed:
        rp = RelFunctor(zc, c, r_obj)
    else:
        # on the glued side the retraction reads off each morphism's tag:
        # an internal B-side morphism maps to the s-image of its retraction,
        # a mixed class [(g, h)] to that image of g composed with h (well
        # defined: the generating relation moves s-images across the pair)
        inv_iso_mor = {
            witness.iso.on_mor(m): m for m in witness.iso.dom.morphisms()
        }
        inv_j_mor = {res.j.on_mor(m): m for m in c.morphisms()}

        def retract_b(bm):
            return s.on_mor(inv_iso_mor[witness.sdr.r.on_mor(bm)])

        r_mor = {}
        for m in zc.morphisms():
            if m in inv_j_mor:
                r_mor[m] = inv_j_mor[m]
                continue
            kind, payload = m
            if kind == "m":
                g, h = payload
                r_mor[m] = c.compose(retract_b(g), h)
            else:
                r_mor[m] = retract_b(payload)
        rp = RelFunctor(zc, c, r_obj, r_mor)
    rp.validate()

    family = {}
    for zo in zc.objects:
        if zo in inv_j:
            family[zo] = zc.identity(zo)
        else:
            y = _preimage(res.t.obj_map, zo)
            family[zo] = res.t.on_mor(witness.sdr.s.component(y))
    hom = strict_homotopy_from_family(
        rp.then(c_in_zc), RelFunctor.identity(zc), family
    )
    out = SDRWitness(rp, hom)
    if not verify_sdr(c_in_zc, out):
        raise AssertionError("transported retraction fails verification")
    return out


def _corestrict(f: RelFunctor, sub: RelCategory) -> RelFunctor:
    """Corestriction of f to a full subcategory of its codomain containing
    the image (full subcategories share object and morphism names)."""
    if sub.is_poset_backed:
        return RelFunctor(f.dom, sub, dict(f.obj_map))
    return RelFunctor(
        f.dom, sub, dict(f.obj_map), {m: f.on_mor(m) for m in f.dom.morphisms()}
    )


def _preimage(obj_map: dict, value):
    for k, v in obj_map.items():
        if v == value:
            return k
    raise KeyError(value)


# --- composition and retract transports -------------------------------------


def compose_dwyer(w01: DwyerWitness, w12: DwyerWitness) -> DwyerWitness:
    """Witness for the composite inclusion from witnesses of the two stages.

    The retraction is the first stage's retraction applied after the second
    stage's (restricted to the smaller cosieve); components compose in the
    ambient category.  Finite chains fold left to right; limit-ordinal
    stages have no finite encoding here.
    """
    if w12.iso.dom != w01.inclusion.cod:
        raise ValueError("witnesses do not chain: middle categories differ")
    f02 = w01.functor.then(w12.functor)
    a2 = w12.inclusion.cod
    factored = _image_factorization(f02)
    if factored is None:
        raise AssertionError("composite of sieves is not full onto its image")
    iso02, incl02 = factored
    cert02 = is_sieve(incl02)
    if cert02 is None:
        raise AssertionError("composite of sieves is not a sieve")
    z02 = cosieve_generated(incl02)

    nu = w12.iso
    inv_nu = {nu(x): x for x in nu.dom.objects}
    r12, s12 = w12.sdr.r, w12.sdr.s
    r01, s01 = w01.sdr.r, w01.sdr.s
    r_obj = {}
    mid = {}
    za01_objects = set(w01.za.objects)
    for z in z02.objects:
        u = inv_nu[r12(z)]
        if u not in za01_objects:
            raise AssertionError(
                "restricted retraction leaves the smaller cosieve"
            )
        mid[z] = u
        r_obj[z] = nu(r01(u))
    img02 = incl02.dom
    if img02.is_poset_backed:
        r02 = RelFunctor(z02, img02, r_obj)
    else:
        inv_nu_mor = {nu.on_mor(m): m for m in nu.dom.morphisms()}
        r_mor = {
            m: nu.on_mor(r01.on_mor(inv_nu_mor[r12.on_mor(m)]))
            for m in z02.morphisms()
        }
        r02 = RelFunctor(z02, img02, r_obj, r_mor)
    r02.validate()

    family = {}
    for z in z02.objects:
        comp01 = nu.on_mor(s01.component(mid[z]))
        family[z] = a2.compose(s12.component(z), comp01)
    za_incl = inclusion_functor(img02, z02)
    hom = strict_homotopy_from_family(
        r02.then(za_incl), RelFunctor.identity(z02), family
    )
    sdr = SDRWitness(r02, hom)
    if not verify_sdr(za_incl, sdr):
        raise AssertionError("composite retraction fails verification")
    return DwyerWitness(iso02, cert02, z02, za_incl, sdr)


def transport_sdr_along_retract(
    witness: DwyerWitness,
    u: RelFunctor,
    into: RelFunctor,
    onto: RelFunctor,
    a_into: RelFunctor,
    a_onto: RelFunctor,
) -> DwyerWitness:
    """Witness for a retract u: A' -> B' of the certified map i: A -> B.

    ``into``/``onto`` are the horizontal functors B' -> B -> B' composing to
    the identity, ``a_into``/``a_onto`` their restrictions A' -> A -> A';
    the squares must commute.  The transported retraction conjugates the
    given one by the horizontal functors.
    """
    i = witness.functor
    bp = u.cod
    for g, f, name in (
        (onto, into, "ambient"),
        (a_onto, a_into, "subcategory"),
    ):
        comp = f.then(g)
        if any(comp(x) != x for x in f.dom.objects):
            raise ValueError(f"{name} row does not compose to the identity")
    if any(into(u(x)) != i(a_into(x)) for x in u.dom.objects):
        raise ValueError("left square does not commute")
    if any(onto(i(x)) != u(a_onto(x)) for x in i.dom.objects):
        raise ValueError("right square does not commute")

    factored = _image_factorization(u)
    if factored is None:
        raise AssertionError("retract of a Dwyer map is not full onto its image")
    iso, incl = factored
    cert = is_sieve(incl)
    if cert is None:
        raise AssertionError("retract of a sieve is not a sieve")
    zap = cosieve_generated(incl)

    inv_iso = {witness.iso(x): x for x in witness.iso.dom.objects}
    r, s = witness.sdr.r, witness.sdr.s
    r_obj = {}
    for z in zap.objects:
        zb = into(z)
        if zb not in set(witness.za.objects):
            raise AssertionError("image of the cosieve leaves the cosieve")
        r_obj[z] = u(a_onto(inv_iso[r(zb)]))
    img = incl.dom
    if img.is_poset_backed:
        rp = RelFunctor(zap, img, r_obj)
    else:
        inv_iso_mor = {
            witness.iso.on_mor(m): m for m in witness.iso.dom.morphisms()
        }
        r_mor = {
            m: u.on_mor(a_onto.on_mor(inv_iso_mor[r.on_mor(into.on_mor(m))]))
            for m in zap.morphisms()
        }
        rp = RelFunctor(zap, img, r_obj, r_mor)
    rp.validate()

    family = {z: onto.on_mor(s.component(into(z))) for z in zap.objects}
    za_incl = inclusion_functor(img, zap)
    hom = strict_homotopy_from_family(
        rp.then(za_incl), RelFunctor.identity(zap), family
    )
    sdr = SDRWitness(rp, hom)
    if not verify_sdr(za_incl, sdr):
        raise AssertionError("transported retraction fails verification")
    return DwyerWitness(iso, cert, zap, za_incl, sdr)


# --- subdivision of a cosieve inclusion --------------------------------------


def xi_t_cosieve_witness(p_incl: RelFunctor) -> DwyerWitness:
    """Witness that terminal subdivision sends a cosieve inclusion of
    relative posets to a Dwyer map.

    The retraction truncates each chain to its tail of entries inside the
    image; the homotopy components are the corresponding subchain relations,
    which end at the same last entry and so are weak equivalences.
    """
    p, q = p_incl.dom, p_incl.cod
    p._need_poset()
    q._need_poset()
    if not is_cosieve(p_incl):
        raise ValueError("the inclusion is not a cosieve")
    sp = subdivide(p, "xi_t")
    sq = subdivide(q, "xi_t")
    f = subdivide_functor(p_incl, sp.category, sq.category)
    factored = _image_factorization(f)
    if factored is None:
        raise AssertionError("subdivided cosieve inclusion is not full")
    iso, incl = factored
    cert = is_sieve(incl)
    if cert is None:
        raise AssertionError("subdivided cosieve image is not a sieve")
    za = cosieve_generated(incl)

    in_p = {p_incl(x) for x in p.objects}
    r_obj = {}
    family = {}
    for chain in za.objects:
        j = min(k for k, entry in enumerate(chain) if entry in in_p)
        tail = chain[j:]
        r_obj[chain] = tail
        family[chain] = (tail, chain)
    img = incl.dom
    r = RelFunctor(za, img, r_obj)
    r.validate()
    za_incl = inclusion_functor(img, za)
    hom = strict_homotopy_from_family(
        r.then(za_incl), RelFunctor.identity(za), family
    )
    sdr = SDRWitness(r, hom)
    if not verify_sdr(za_incl, sdr):
        raise AssertionError("chain-tail retraction fails verification")
    return DwyerWitness(iso, cert, za, za_incl, sdr)
