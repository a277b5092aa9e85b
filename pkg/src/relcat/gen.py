"""Randomized instance builders for the property suites.

Everything here draws from a ``random.Random`` so the command-line verifier
can replay a suite from a seed; the ``*_strategy`` wrappers at the bottom
expose the same builders to hypothesis.  Builders that can dead-end (a
partial monotone map with no extension, a sieve with no deformation
retraction) return None and the caller redraws.
"""

from __future__ import annotations

import random
from typing import Callable, Iterable, Optional

from .core import (
    RelCategory,
    RelFunctor,
    inclusion_functor,
)
from .dwyer import DwyerWitness, check_dwyer
from .homotopy import StrictHomotopy, strict_homotopy_between


def poset_from_rng(
    rng: random.Random,
    max_objects: int = 6,
    *,
    min_objects: int = 1,
    edge_density: float = 0.35,
    we_density: float = 0.5,
) -> RelCategory:
    """A random relative poset on integer objects 0..n-1, relations drawn
    upward in index order so acyclicity is free, weak equivalences drawn on
    relation pairs and closed under composition."""
    n = rng.randint(min_objects, max_objects)
    rels = []
    wes = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_density:
                rels.append((i, j))
                if rng.random() < we_density:
                    wes.append((i, j))
    return RelCategory.from_poset(range(n), rels, wes, close_we=True)


def _linear_extension(p: RelCategory) -> list:
    # strictly larger up-sets come first, which is a linear extension
    return sorted(
        p.objects, key=lambda x: p._up[p._idx[x]].bit_count(), reverse=True
    )


def functor_from_rng(
    rng: random.Random,
    dom: RelCategory,
    cod: RelCategory,
    *,
    allowed: Callable[[object], Iterable] | None = None,
) -> Optional[RelFunctor]:
    """A random relative functor between poset-backed categories, assigning
    images along a linear extension; None when some partial choice has no
    extension.  ``allowed`` narrows the candidate images per object."""
    dom._need_poset()
    cod._need_poset()
    assigned: dict = {}
    for x in _linear_extension(dom):
        pool = list(allowed(x)) if allowed is not None else list(cod.objects)
        cands = []
        for y in pool:
            ok = True
            for p, fp in assigned.items():
                if not dom.leq(p, x):
                    continue
                if not cod.leq(fp, y):
                    ok = False
                    break
                if dom.is_we((p, x)) and not cod.is_we((fp, y)):
                    ok = False
                    break
            if ok:
                cands.append(y)
        if not cands:
            return None
        assigned[x] = rng.choice(cands)
    f = RelFunctor(dom, cod, assigned)
    f.validate()
    return f


def up_closed_inclusion_from_rng(
    rng: random.Random,
    base: RelCategory,
    *,
    density: float = 0.4,
    nonempty: bool = True,
) -> Optional[RelFunctor]:
    """Inclusion of the cosieve generated by a random seed set of objects."""
    seeds = [x for x in base.objects if rng.random() < density]
    if not seeds:
        if not nonempty:
            return inclusion_functor(base.full_subcategory([]), base)
        seeds = [rng.choice(base.objects)]
    objs = [y for y in base.objects if any(base.leq(x, y) for x in seeds)]
    return inclusion_functor(base.full_subcategory(objs), base)


def down_closed_inclusion_from_rng(
    rng: random.Random,
    base: RelCategory,
    *,
    density: float = 0.4,
    nonempty: bool = True,
) -> Optional[RelFunctor]:
    """Inclusion of the sieve generated by a random seed set of objects."""
    seeds = [x for x in base.objects if rng.random() < density]
    if not seeds:
        if not nonempty:
            return inclusion_functor(base.full_subcategory([]), base)
        seeds = [rng.choice(base.objects)]
    objs = [y for y in base.objects if any(base.leq(y, x) for x in seeds)]
    return inclusion_functor(base.full_subcategory(objs), base)


def full_inclusion_from_rng(
    rng: random.Random, base: RelCategory, *, density: float = 0.5
) -> RelFunctor:
    """Inclusion of the full subcategory on a random nonempty object set, no
    sieve or cosieve constraint."""
    objs = [x for x in base.objects if rng.random() < density]
    if not objs:
        objs = [rng.choice(base.objects)]
    return inclusion_functor(base.full_subcategory(objs), base)


def dwyer_from_rng(
    rng: random.Random, max_objects: int = 6, **poset_kw
) -> Optional[DwyerWitness]:
    """A certified Dwyer inclusion: a random sieve in a random relative
    poset whose generated cosieve admits a deformation retraction; None when
    the drawn sieve has none."""
    b = poset_from_rng(rng, max_objects, **poset_kw)
    incl = down_closed_inclusion_from_rng(rng, b)
    if incl is None:
        return None
    return check_dwyer(incl)


def nested_dwyer_pair_from_rng(
    rng: random.Random, max_objects: int = 6, **poset_kw
) -> Optional[tuple[DwyerWitness, DwyerWitness]]:
    """Witnesses for composable sieves A in B in C; None when either stage
    fails to be Dwyer."""
    c = poset_from_rng(rng, max_objects, **poset_kw)
    incl_bc = down_closed_inclusion_from_rng(rng, c)
    b = incl_bc.dom
    incl_ab = down_closed_inclusion_from_rng(rng, b)
    w12 = check_dwyer(incl_bc)
    if w12 is None:
        return None
    w01 = check_dwyer(incl_ab)
    if w01 is None:
        return None
    return w01, w12


def idempotent_endo_from_rng(
    rng: random.Random,
    base: RelCategory,
    *,
    stable: Iterable = (),
) -> Optional[RelFunctor]:
    """A random idempotent relative endofunctor, found by raising a random
    endofunctor to a power that fixes its eventual image pointwise.  Objects
    in ``stable`` constrain the draw to stay inside that set."""
    stable_set = set(stable)

    def allow(x):
        if x in stable_set:
            return [y for y in base.objects if y in stable_set]
        return base.objects

    m = functor_from_rng(rng, base, base, allowed=allow if stable_set else None)
    if m is None:
        return None
    cur = m
    for _ in range(4 * base.n_objects * base.n_objects + 8):
        if cur.then(cur) == cur:
            return cur
        cur = cur.then(m)
    return None


def strict_homotopy_from_rng(
    rng: random.Random,
    max_dom_objects: int = 4,
    max_cod_objects: int = 4,
    **poset_kw
) -> Optional[StrictHomotopy]:
    """A random strict homotopy between relative-poset functors: the second
    endpoint is drawn one component at a time above the first."""
    p = poset_from_rng(rng, max_dom_objects, **poset_kw)
    x = poset_from_rng(rng, max_cod_objects, **poset_kw)
    f = functor_from_rng(rng, p, x)
    if f is None:
        return None

    def above(o):
        fo = f(o)
        return [y for y in x.objects if x.leq(fo, y) and x.is_we((fo, y))]

    g = functor_from_rng(rng, p, x, allowed=above)
    if g is None:
        return None
    hom = strict_homotopy_between(f, g)
    if hom is None:
        return None
    hom.validate()
    return hom


def draw_until(rng: random.Random, build, *, attempts: int = 200):
    """Redraw a builder until it yields a value; raises after the attempt
    budget so a drought is loud."""
    for _ in range(attempts):
        out = build(rng)
        if out is not None:
            return out
    raise RuntimeError(f"no instance from {build!r} after {attempts} draws")


def seeded_stream(seed: int, build, count: int, *, attempts: int = 200):
    """Deterministic list of ``count`` instances from a builder."""
    rng = random.Random(seed)
    return [draw_until(rng, build, attempts=attempts) for _ in range(count)]


# --- hypothesis wrappers ------------------------------------------------------


def rel_poset_strategy(max_objects: int = 6, **poset_kw):
    import hypothesis.strategies as st

    return st.builds(
        lambda seed: poset_from_rng(random.Random(seed), max_objects, **poset_kw),
        st.integers(0, 2**48),
    )


def built_strategy(build, *, attempts: int = 200):
    """Strategy over any rng builder, drawing the seed through hypothesis."""
    import hypothesis.strategies as st

    return st.builds(
        lambda seed: draw_until(random.Random(seed), build, attempts=attempts),
        st.integers(0, 2**48),
    )
