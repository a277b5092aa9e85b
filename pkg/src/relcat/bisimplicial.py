"""Truncated simplicial and bisimplicial sets, nerves, and the skeletal
realization of a bisimplicial set as a relative poset.

Simplices are stored in Eilenberg-Zilber normal form: every simplex is a
nondegenerate cell acted on by a pair of monotone surjections, and the pair
(cell, surjections) is unique.  A truncated (bi)simplicial set is built from
one hashable "raw" value per simplex per (bi)degree together with a raw-level
presheaf action; normal forms, faces, degeneracies, and validation are
derived from that action.

The two nerves of a relative category land here: ``nerve_N`` uses grids of
composable strings (a (p, q)-simplex is a relative functor from a p by q
grid whose rows are weak equivalences), ``nerve_N_xi`` uses the two-sided
subdivisions of those grids.  ``K_xi`` goes the other way, gluing subdivided
grids cell by cell into a relative poset.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Mapping

from .core import (
    CostGuard,
    CostGuardExceeded,
    RelCategory,
    RelFunctor,
    enumerate_functors,
    inclusion_functor,
    karrow,
    opposite_functor,
    poset_functor,
)
from .dwyer import (
    DwyerWitness,
    PushoutResult,
    pushout_along_sieve,
    xi_t_cosieve_witness,
)
from .homology import AbelianGroup, ChainComplex, HomologySummary, IsoCertificate, h_iso_certificate
from .subdivision import Subdivision, subdivide, subdivide_functor

Vals = tuple[int, ...]


# --- monotone maps as value tuples ------------------------------------

def id_vals(n: int) -> Vals:
    return tuple(range(n + 1))


def delta_vals(i: int, n: int) -> Vals:
    """The injection [n-1] -> [n] skipping i."""
    return tuple(k if k < i else k + 1 for k in range(n))


def sigma_vals(i: int, n: int) -> Vals:
    """The surjection [n+1] -> [n] repeating i."""
    return tuple(k if k <= i else k - 1 for k in range(n + 2))


def compose_vals(outer: Vals, inner: Vals) -> Vals:
    return tuple(outer[v] for v in inner)


def monotone_vals(a: int, b: int) -> list[Vals]:
    """All monotone maps [a] -> [b] as value tuples."""
    return [
        tuple(v)
        for v in itertools.combinations_with_replacement(range(b + 1), a + 1)
    ]


def is_surjective_vals(vals: Vals, target: int) -> bool:
    return set(vals) == set(range(target + 1))


def _monotone(vals: Vals) -> bool:
    return all(a <= b for a, b in zip(vals, vals[1:]))


def twist_vals(vals: Vals, target: int) -> Vals:
    """Conjugate of a monotone map by the order reversals of both ordinals."""
    return tuple(target - v for v in reversed(vals))


# --- simplices ---------------------------------------------------------

@dataclass(frozen=True)
class SCell:
    n: int
    raw: Hashable


@dataclass(frozen=True)
class SSimplex:
    """A simplex in normal form: a nondegenerate cell precomposed with a
    monotone surjection."""

    map: Vals
    cell: SCell

    @property
    def degree(self) -> int:
        return len(self.map) - 1

    @property
    def is_degenerate(self) -> bool:
        return self.degree > self.cell.n


@dataclass(frozen=True)
class Cell:
    p: int
    q: int
    raw: Hashable


@dataclass(frozen=True)
class BiSimplex:
    h_map: Vals
    v_map: Vals
    cell: Cell

    @property
    def bidegree(self) -> tuple[int, int]:
        return (len(self.h_map) - 1, len(self.v_map) - 1)

    @property
    def is_degenerate(self) -> bool:
        return self.bidegree != (self.cell.p, self.cell.q)


class TruncSSet:
    """A simplicial set truncated above ``bound``, presented by raw simplex
    values and a raw-level action.

    ``raws[n]`` lists every n-simplex once; ``act_raw(x, n, vals)`` is the
    action of the monotone map with the given values on the raw simplex x of
    degree n, and must be functorial and closed inside the listed raws.
    """

    def __init__(
        self,
        bound: int,
        raws: Mapping[int, tuple],
        act_raw: Callable[[Hashable, int, Vals], Hashable],
    ):
        self.bound = bound
        self._act_raw = act_raw
        self._raws = {n: tuple(raws.get(n, ())) for n in range(bound + 1)}
        self._normal: dict[int, dict[Hashable, SSimplex]] = {}
        self.cells: dict[int, tuple] = {}
        for n in range(bound + 1):
            table: dict[Hashable, SSimplex] = {}
            nondeg: list = []
            for x in self._raws[n]:
                s = self._normalize(x, n)
                table[x] = s
                if not s.is_degenerate:
                    nondeg.append(x)
            self._normal[n] = table
            self.cells[n] = tuple(nondeg)

    def _normalize(self, x: Hashable, n: int) -> SSimplex:
        for i in range(n):
            y = self._act_raw(x, n, delta_vals(i, n))
            if self._act_raw(y, n - 1, sigma_vals(i, n - 1)) == x:
                inner = self._lookup(n - 1, y)
                return SSimplex(
                    compose_vals(inner.map, sigma_vals(i, n - 1)), inner.cell
                )
        return SSimplex(id_vals(n), SCell(n, x))

    def _lookup(self, n: int, raw: Hashable) -> SSimplex:
        try:
            return self._normal[n][raw]
        except KeyError:
            raise AssertionError(
                f"action left the listed {n}-simplices: {raw!r}"
            ) from None

    def simplex(self, n: int, raw: Hashable) -> SSimplex:
        return self._lookup(n, raw)

    def simplices(self, n: int) -> list[SSimplex]:
        return [self._normal[n][x] for x in self._raws[n]]

    def identity_simplex(self, n: int, raw: Hashable) -> SSimplex:
        s = self._lookup(n, raw)
        if s.is_degenerate:
            raise ValueError("not a nondegenerate cell")
        return s

    def act(self, x: SSimplex, vals: Vals) -> SSimplex:
        if not _monotone(vals) or any(v < 0 or v > x.degree for v in vals):
            raise ValueError("not a monotone map into the simplex degree")
        raw = self._act_raw(
            x.cell.raw, x.cell.n, compose_vals(x.map, vals)
        )
        return self._lookup(len(vals) - 1, raw)

    def face(self, x: SSimplex, i: int) -> SSimplex:
        return self.act(x, delta_vals(i, x.degree))

    def degeneracy(self, x: SSimplex, i: int) -> SSimplex:
        if x.degree + 1 > self.bound:
            raise ValueError("degeneracy would leave the truncation")
        return self.act(x, sigma_vals(i, x.degree))

    def n_simplices(self, n: int) -> int:
        return len(self._raws[n])

    def validate(self) -> None:
        for n in range(self.bound + 1):
            for x in self._raws[n]:
                if self._act_raw(x, n, id_vals(n)) != x:
                    raise AssertionError("identity acts nontrivially")
                for m in range(self.bound + 1):
                    for f in monotone_vals(m, n):
                        y = self._act_raw(x, n, f)
                        self._lookup(m, y)
                        for k in range(self.bound + 1):
                            for g in monotone_vals(k, m):
                                if self._act_raw(y, m, g) != self._act_raw(
                                    x, n, compose_vals(f, g)
                                ):
                                    raise AssertionError(
                                        "raw action is not functorial"
                                    )


class TruncBiSSet:
    """A bisimplicial set truncated at (pbound, qbound), presented by raw
    bisimplex values and a raw-level action in both directions."""

    def __init__(
        self,
        pbound: int,
        qbound: int,
        raws: Mapping[tuple[int, int], tuple],
        act_raw: Callable[[Hashable, int, int, Vals, Vals], Hashable],
    ):
        self.pbound = pbound
        self.qbound = qbound
        self._act_raw = act_raw
        self._raws = {
            (p, q): tuple(raws.get((p, q), ()))
            for p in range(pbound + 1)
            for q in range(qbound + 1)
        }
        self._normal: dict[tuple[int, int], dict[Hashable, BiSimplex]] = {}
        self.cells: dict[tuple[int, int], tuple] = {}
        for p, q in sorted(self._raws, key=lambda pq: (pq[0] + pq[1], pq)):
            table: dict[Hashable, BiSimplex] = {}
            nondeg: list = []
            for x in self._raws[(p, q)]:
                s = self._normalize(x, p, q)
                table[x] = s
                if not s.is_degenerate:
                    nondeg.append(x)
            self._normal[(p, q)] = table
            self.cells[(p, q)] = tuple(nondeg)

    def _normalize(self, x: Hashable, p: int, q: int) -> BiSimplex:
        for i in range(p):
            y = self._act_raw(x, p, q, delta_vals(i, p), id_vals(q))
            if (
                self._act_raw(y, p - 1, q, sigma_vals(i, p - 1), id_vals(q))
                == x
            ):
                inner = self._lookup(p - 1, q, y)
                return BiSimplex(
                    compose_vals(inner.h_map, sigma_vals(i, p - 1)),
                    inner.v_map,
                    inner.cell,
                )
        for j in range(q):
            y = self._act_raw(x, p, q, id_vals(p), delta_vals(j, q))
            if (
                self._act_raw(y, p, q - 1, id_vals(p), sigma_vals(j, q - 1))
                == x
            ):
                inner = self._lookup(p, q - 1, y)
                return BiSimplex(
                    inner.h_map,
                    compose_vals(inner.v_map, sigma_vals(j, q - 1)),
                    inner.cell,
                )
        return BiSimplex(id_vals(p), id_vals(q), Cell(p, q, x))

    def _lookup(self, p: int, q: int, raw: Hashable) -> BiSimplex:
        try:
            return self._normal[(p, q)][raw]
        except KeyError:
            raise AssertionError(
                f"action left the listed ({p},{q})-simplices: {raw!r}"
            ) from None

    def simplex(self, p: int, q: int, raw: Hashable) -> BiSimplex:
        return self._lookup(p, q, raw)

    def simplices(self, p: int, q: int) -> list[BiSimplex]:
        return [self._normal[(p, q)][x] for x in self._raws[(p, q)]]

    def identity_simplex(self, p: int, q: int, raw: Hashable) -> BiSimplex:
        s = self._lookup(p, q, raw)
        if s.is_degenerate:
            raise ValueError("not a nondegenerate cell")
        return s

    def act(self, x: BiSimplex, hvals: Vals, vvals: Vals) -> BiSimplex:
        p, q = x.bidegree
        if not _monotone(hvals) or any(v < 0 or v > p for v in hvals):
            raise ValueError("horizontal map does not land in the degree")
        if not _monotone(vvals) or any(v < 0 or v > q for v in vvals):
            raise ValueError("vertical map does not land in the degree")
        raw = self._act_raw(
            x.cell.raw,
            x.cell.p,
            x.cell.q,
            compose_vals(x.h_map, hvals),
            compose_vals(x.v_map, vvals),
        )
        return self._lookup(len(hvals) - 1, len(vvals) - 1, raw)

    def face_h(self, x: BiSimplex, i: int) -> BiSimplex:
        p, q = x.bidegree
        return self.act(x, delta_vals(i, p), id_vals(q))

    def face_v(self, x: BiSimplex, j: int) -> BiSimplex:
        p, q = x.bidegree
        return self.act(x, id_vals(p), delta_vals(j, q))

    def degeneracy_h(self, x: BiSimplex, i: int) -> BiSimplex:
        p, q = x.bidegree
        if p + 1 > self.pbound:
            raise ValueError("degeneracy would leave the truncation")
        return self.act(x, sigma_vals(i, p), id_vals(q))

    def degeneracy_v(self, x: BiSimplex, j: int) -> BiSimplex:
        p, q = x.bidegree
        if q + 1 > self.qbound:
            raise ValueError("degeneracy would leave the truncation")
        return self.act(x, id_vals(p), sigma_vals(j, q))

    def n_simplices(self, p: int, q: int) -> int:
        return len(self._raws[(p, q)])

    def size_table(self) -> dict[tuple[int, int], int]:
        return {pq: len(xs) for pq, xs in self._raws.items()}

    def cell_table(self) -> dict[tuple[int, int], int]:
        return {pq: len(xs) for pq, xs in self.cells.items()}

    def validate(self) -> None:
        """Exhaustively check the raw action: identities, closure, and
        functoriality for all composable pairs inside the truncation."""
        for (p, q), xs in self._raws.items():
            for x in xs:
                if self._act_raw(x, p, q, id_vals(p), id_vals(q)) != x:
                    raise AssertionError("identity acts nontrivially")
                for p2 in range(self.pbound + 1):
                    for q2 in range(self.qbound + 1):
                        for f in monotone_vals(p2, p):
                            for g in monotone_vals(q2, q):
                                y = self._act_raw(x, p, q, f, g)
                                self._lookup(p2, q2, y)
                                self._check_second(x, p, q, f, g, y, p2, q2)

    def _check_second(self, x, p, q, f, g, y, p2, q2) -> None:
        for p3 in range(self.pbound + 1):
            for q3 in range(self.qbound + 1):
                for f2 in monotone_vals(p3, p2):
                    for g2 in monotone_vals(q3, q2):
                        lhs = self._act_raw(y, p2, q2, f2, g2)
                        rhs = self._act_raw(
                            x, p, q, compose_vals(f, f2), compose_vals(g, g2)
                        )
                        if lhs != rhs:
                            raise AssertionError(
                                "raw action is not functorial"
                            )


# --- maps --------------------------------------------------------------

@dataclass
class SMap:
    """A map of truncated simplicial sets, given on nondegenerate cells."""

    dom: TruncSSet
    cod: TruncSSet
    cell_map: dict[SCell, SSimplex]

    def apply(self, x: SSimplex) -> SSimplex:
        return self.cod.act(self.cell_map[x.cell], x.map)

    def validate(self) -> None:
        if self.dom.bound != self.cod.bound:
            raise AssertionError("bounds differ")
        for n in range(self.dom.bound + 1):
            for raw in self.dom.cells[n]:
                x = self.dom.identity_simplex(n, raw)
                y = self.cell_map[x.cell]
                if y.degree != n:
                    raise AssertionError("cell image has the wrong degree")
                for i in range(n + 1) if n else ():
                    if self.apply(self.dom.face(x, i)) != self.cod.face(y, i):
                        raise AssertionError("map does not commute with faces")


@dataclass
class BiSMap:
    """A map of truncated bisimplicial sets, given on nondegenerate cells."""

    dom: TruncBiSSet
    cod: TruncBiSSet
    cell_map: dict[Cell, BiSimplex]

    def apply(self, x: BiSimplex) -> BiSimplex:
        return self.cod.act(self.cell_map[x.cell], x.h_map, x.v_map)

    def validate(self) -> None:
        if (self.dom.pbound, self.dom.qbound) != (
            self.cod.pbound,
            self.cod.qbound,
        ):
            raise AssertionError("bounds differ")
        for (p, q), raws in self.dom.cells.items():
            for raw in raws:
                x = self.dom.identity_simplex(p, q, raw)
                y = self.cell_map[x.cell]
                if y.bidegree != (p, q):
                    raise AssertionError("cell image has the wrong bidegree")
                for i in range(p + 1) if p else ():
                    if self.apply(self.dom.face_h(x, i)) != self.cod.face_h(
                        y, i
                    ):
                        raise AssertionError(
                            "map does not commute with horizontal faces"
                        )
                for j in range(q + 1) if q else ():
                    if self.apply(self.dom.face_v(x, j)) != self.cod.face_v(
                        y, j
                    ):
                        raise AssertionError(
                            "map does not commute with vertical faces"
                        )

    def is_levelwise_bijective(self) -> bool:
        for (p, q), xs in self.dom._raws.items():
            images = {self.apply(self.dom.simplex(p, q, x)) for x in xs}
            if len(images) != len(xs) or len(xs) != self.cod.n_simplices(p, q):
                return False
        return True


# --- standard bisimplices ----------------------------------------------

def delta(p0: int, q0: int, pbound: int, qbound: int) -> TruncBiSSet:
    """The standard (p0, q0)-bisimplex, truncated: a (p, q)-simplex is a pair
    of monotone maps [p] -> [p0], [q] -> [q0]."""
    raws = {
        (p, q): tuple(
            itertools.product(monotone_vals(p, p0), monotone_vals(q, q0))
        )
        for p in range(pbound + 1)
        for q in range(qbound + 1)
    }

    def act(x, p, q, hvals, vvals):
        f, g = x
        return (compose_vals(f, hvals), compose_vals(g, vvals))

    return TruncBiSSet(pbound, qbound, raws, act)


def boundary_delta(
    p0: int, q0: int, pbound: int, qbound: int
) -> tuple[TruncBiSSet, BiSMap]:
    """The boundary of the standard (p0, q0)-bisimplex (all pairs with a
    non-surjective component) together with its inclusion."""
    full = delta(p0, q0, pbound, qbound)
    raws = {
        (p, q): tuple(
            (f, g)
            for f, g in itertools.product(
                monotone_vals(p, p0), monotone_vals(q, q0)
            )
            if not (is_surjective_vals(f, p0) and is_surjective_vals(g, q0))
        )
        for p in range(pbound + 1)
        for q in range(qbound + 1)
    }

    def act(x, p, q, hvals, vvals):
        f, g = x
        return (compose_vals(f, hvals), compose_vals(g, vvals))

    bd = TruncBiSSet(pbound, qbound, raws, act)
    cell_map = {
        Cell(p, q, raw): full.simplex(p, q, raw)
        for (p, q), xs in bd.cells.items()
        for raw in xs
    }
    return bd, BiSMap(bd, full, cell_map)


# --- grids and their subdivisions ---------------------------------------

_GRIDS: dict[tuple[int, int], RelCategory] = {}
_HATS: dict[int, RelCategory] = {}
_PAIR_MAPS: dict[tuple, RelFunctor] = {}


@dataclass(frozen=True)
class XiGrid:
    grid: RelCategory
    inner: Subdivision
    outer: Subdivision
    projection: RelFunctor  # two-sided subdivision onto the grid

    @property
    def category(self) -> RelCategory:
        return self.outer.category


_XI_GRIDS: dict[tuple[int, int], XiGrid] = {}
_XI_MAPS: dict[tuple, RelFunctor] = {}


def grid_category(p: int, q: int) -> RelCategory:
    """The product of a p-chain with minimal and a q-chain with maximal weak
    equivalences; objects are pairs (i, j)."""
    if (p, q) not in _GRIDS:
        _GRIDS[(p, q)] = karrow(p, "minimal").product(karrow(q, "maximal"))
    return _GRIDS[(p, q)]


def _hat(q: int) -> RelCategory:
    if q not in _HATS:
        _HATS[q] = karrow(q, "maximal")
    return _HATS[q]


def pair_functor(
    p: int, q: int, p0: int, q0: int, hvals: Vals, vvals: Vals
) -> RelFunctor:
    key = (p, q, p0, q0, hvals, vvals)
    if key not in _PAIR_MAPS:
        _PAIR_MAPS[key] = RelFunctor(
            grid_category(p, q),
            grid_category(p0, q0),
            {
                (i, j): (hvals[i], vvals[j])
                for i in range(p + 1)
                for j in range(q + 1)
            },
        )
    return _PAIR_MAPS[key]


def xi_grid(p: int, q: int, *, budget: int | None = None) -> XiGrid:
    """The two-sided subdivision of the (p, q) grid, cached.  ``budget``
    bounds the number of subdivided objects and is checked against the known
    object count before any work."""
    if (p, q) not in _XI_GRIDS:
        g = grid_category(p, q)
        inner = subdivide(g, "xi_i")
        if budget is not None:
            bound = _xi_size_lower_bound(inner.category)
            if bound > budget:
                raise CostGuardExceeded(
                    f"two-sided subdivision of the ({p},{q}) grid has at "
                    f"least {bound} objects, over the budget of {budget}",
                    lower_bound=bound,
                )
        outer = subdivide(inner.category, "xi_t")
        if budget is not None and outer.category.n_objects > budget:
            raise CostGuardExceeded(
                f"two-sided subdivision of the ({p},{q}) grid has "
                f"{outer.category.n_objects} objects, over the budget of "
                f"{budget}",
                lower_bound=outer.category.n_objects,
            )
        proj = outer.projection.then(inner.projection)
        _XI_GRIDS[(p, q)] = XiGrid(g, inner, outer, proj)
    res = _XI_GRIDS[(p, q)]
    if budget is not None and res.category.n_objects > budget:
        raise CostGuardExceeded(
            f"two-sided subdivision of the ({p},{q}) grid has "
            f"{res.category.n_objects} objects, over the budget of {budget}",
            lower_bound=res.category.n_objects,
        )
    return res


def _xi_size_lower_bound(cat: RelCategory) -> int:
    # chains of an n-object poset number at least n, and at least
    # 2^k - 1 for an antichain of size k; the cheap bound suffices here
    return cat.n_objects


def xi_pair_functor(
    p: int, q: int, p0: int, q0: int, hvals: Vals, vvals: Vals
) -> RelFunctor:
    """The functor between two-sided subdivisions of grids induced by a pair
    of monotone maps."""
    key = (p, q, p0, q0, hvals, vvals)
    if key not in _XI_MAPS:
        f = pair_functor(p, q, p0, q0, hvals, vvals)
        xd, xc = xi_grid(p, q), xi_grid(p0, q0)
        fi = subdivide_functor(f, xd.inner.category, xc.inner.category)
        _XI_MAPS[key] = subdivide_functor(fi, xd.category, xc.category)
    return _XI_MAPS[key]


# --- nerves --------------------------------------------------------------

def nerve_N(
    x: RelCategory,
    pbound: int,
    qbound: int,
    *,
    guard: CostGuard | None = None,
) -> TruncBiSSet:
    """The grid nerve: a (p, q)-simplex is a relative functor from the
    (p, q) grid."""
    raws = {
        (p, q): tuple(
            enumerate_functors(grid_category(p, q), x, guard=guard)
        )
        for p in range(pbound + 1)
        for q in range(qbound + 1)
    }

    def act(f, p, q, hvals, vvals):
        pm = pair_functor(len(hvals) - 1, len(vvals) - 1, p, q, hvals, vvals)
        return pm.then(f)

    return TruncBiSSet(pbound, qbound, raws, act)


def nerve_N_xi(
    x: RelCategory,
    pbound: int,
    qbound: int,
    *,
    budget: int | None = 200,
    guard: CostGuard | None = None,
) -> TruncBiSSet:
    """The subdivided nerve: a (p, q)-simplex is a relative functor from the
    two-sided subdivision of the (p, q) grid.  Grids whose subdivisions
    exceed ``budget`` objects are refused up front."""
    raws = {}
    for p in range(pbound + 1):
        for q in range(qbound + 1):
            xg = xi_grid(p, q, budget=budget)
            raws[(p, q)] = tuple(
                enumerate_functors(xg.category, x, guard=guard)
            )

    def act(f, p, q, hvals, vvals):
        xm = xi_pair_functor(
            len(hvals) - 1, len(vvals) - 1, p, q, hvals, vvals
        )
        return xm.then(f)

    return TruncBiSSet(pbound, qbound, raws, act)


def pi_star(
    x: RelCategory,
    pbound: int,
    qbound: int,
    *,
    budget: int | None = 200,
    guard: CostGuard | None = None,
) -> BiSMap:
    """Precomposition with the subdivision projections: the natural map from
    the grid nerve to the subdivided nerve."""
    dom = nerve_N(x, pbound, qbound, guard=guard)
    cod = nerve_N_xi(x, pbound, qbound, budget=budget, guard=guard)
    cell_map = {}
    for (p, q), raws in dom.cells.items():
        proj = xi_grid(p, q).projection
        for f in raws:
            cell_map[Cell(p, q, f)] = cod.simplex(p, q, proj.then(f))
    return BiSMap(dom, cod, cell_map)


def nerve_pushout_comparison(
    i: RelFunctor,
    s: RelFunctor,
    d: RelCategory,
    j: RelFunctor,
    t: RelFunctor,
    pbound: int,
    qbound: int,
    *,
    guard: CostGuard | None = None,
) -> tuple[TruncBiSSet, BiSMap]:
    """The levelwise pushout of nerves along a sieve inclusion, and the
    canonical comparison map into the nerve of the glued category.

    ``i: A -> B`` must be injective with a full image (as for a sieve
    inclusion), ``s: A -> C`` the attaching functor, and ``d`` with legs
    ``j: C -> D``, ``t: B -> D`` the glued category.  A (p, q)-simplex of the
    pushout is a simplex of the C-nerve or a B-nerve simplex not factoring
    through A; the comparison composes with the legs.
    """
    a, b, c = i.dom, i.cod, s.cod
    nb = nerve_N(b, pbound, qbound, guard=guard)
    nc = nerve_N(c, pbound, qbound, guard=guard)
    nd = nerve_N(d, pbound, qbound, guard=guard)
    inv_obj = {i(x): x for x in a.objects}
    img_obj = set(inv_obj)
    if b.is_poset_backed:
        inv_mor = None
    else:
        inv_mor = {i.on_mor(m): m for m in a.morphisms()}

    def factors(f: RelFunctor) -> bool:
        if not all(y in img_obj for y in f.obj_map.values()):
            return False
        if inv_mor is not None:
            return all(f.on_mor(m) in inv_mor for m in f.dom.morphisms())
        return True

    def to_c(f: RelFunctor) -> RelFunctor:
        obj_map = {x: inv_obj[y] for x, y in f.obj_map.items()}
        if inv_mor is None:
            g = RelFunctor(f.dom, a, obj_map)
        else:
            g = RelFunctor(
                f.dom,
                a,
                obj_map,
                {m: inv_mor[f.on_mor(m)] for m in f.dom.morphisms()},
            )
        return g.then(s)

    raws = {}
    for (p, q), fs in nb._raws.items():
        level = [("c", g) for g in nc._raws[(p, q)]]
        level.extend(("b", f) for f in fs if not factors(f))
        raws[(p, q)] = tuple(level)

    def act(x, p, q, hvals, vvals):
        tag, f = x
        pm = pair_functor(len(hvals) - 1, len(vvals) - 1, p, q, hvals, vvals)
        f2 = pm.then(f)
        if tag == "c":
            return ("c", f2)
        if factors(f2):
            return ("c", to_c(f2))
        return ("b", f2)

    po = TruncBiSSet(pbound, qbound, raws, act)
    cell_map = {}
    for (p, q), xs in po.cells.items():
        for tag, f in xs:
            leg = j if tag == "c" else t
            cell_map[Cell(p, q, (tag, f))] = nd.simplex(p, q, f.then(leg))
    return po, BiSMap(po, nd, cell_map)


def pi0_table(t: TruncBiSSet) -> dict[Hashable, int]:
    """Connected components of the vertex set under the edges in levels
    (1,0) and (0,1): a map from vertex raws to component indices."""
    parent: dict[Hashable, Hashable] = {v: v for v in t._raws[(0, 0)]}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    if t.pbound >= 1:
        for e in t._raws[(1, 0)]:
            x = t.simplex(1, 0, e)
            union(t.face_h(x, 0).cell.raw, t.face_h(x, 1).cell.raw)
    if t.qbound >= 1:
        for e in t._raws[(0, 1)]:
            x = t.simplex(0, 1, e)
            union(t.face_v(x, 0).cell.raw, t.face_v(x, 1).cell.raw)
    reps = sorted({find(v) for v in parent}, key=lambda r: str(r))
    number = {r: k for k, r in enumerate(reps)}
    return {v: number[find(v)] for v in parent}


def classical_nerve(
    y: RelCategory, bound: int, *, guard: CostGuard | None = None
) -> TruncSSet:
    """The nerve of a category in which every morphism is a weak
    equivalence: q-simplices are functors from the q-chain."""
    if not y.is_maximal():
        raise ValueError(
            "classical nerve is only defined when every morphism is a weak "
            "equivalence"
        )
    raws = {
        q: tuple(enumerate_functors(_hat(q), y, guard=guard))
        for q in range(bound + 1)
    }

    def act(f, q, vals):
        chain_map = RelFunctor(
            _hat(len(vals) - 1), _hat(q), {i: vals[i] for i in range(len(vals))}
        )
        return chain_map.then(f)

    return TruncSSet(bound, raws, act)


# --- rows, diagonal, products, involution --------------------------------

def row(t: TruncBiSSet, p: int) -> TruncSSet:
    """The p-th row, a simplicial set in the vertical direction."""
    raws = {q: tuple(t.simplices(p, q)) for q in range(t.qbound + 1)}

    def act(x, q, vals):
        return t.act(x, id_vals(p), vals)

    return TruncSSet(t.qbound, raws, act)


def row_map(f: BiSMap, p: int) -> SMap:
    dom, cod = row(f.dom, p), row(f.cod, p)
    cell_map = {
        SCell(q, raw): cod.simplex(q, f.apply(raw))
        for q, raws in dom.cells.items()
        for raw in raws
    }
    return SMap(dom, cod, cell_map)


def diagonal(t: TruncBiSSet) -> TruncSSet:
    """The diagonal simplicial set; requires a square truncation."""
    if t.pbound != t.qbound:
        raise ValueError("diagonal needs a square truncation")
    raws = {k: tuple(t.simplices(k, k)) for k in range(t.pbound + 1)}

    def act(x, k, vals):
        return t.act(x, vals, vals)

    return TruncSSet(t.pbound, raws, act)


def diagonal_map(f: BiSMap) -> SMap:
    dom, cod = diagonal(f.dom), diagonal(f.cod)
    cell_map = {
        SCell(k, raw): cod.simplex(k, f.apply(raw))
        for k, raws in dom.cells.items()
        for raw in raws
    }
    return SMap(dom, cod, cell_map)


def bisset_product(s: TruncBiSSet, t: TruncBiSSet) -> TruncBiSSet:
    """Levelwise product with the componentwise action."""
    if (s.pbound, s.qbound) != (t.pbound, t.qbound):
        raise ValueError("bounds differ")
    raws = {
        pq: tuple(itertools.product(s._raws[pq], t._raws[pq]))
        for pq in s._raws
    }

    def act(x, p, q, hvals, vvals):
        a, b = x
        return (
            s._act_raw(a, p, q, hvals, vvals),
            t._act_raw(b, p, q, hvals, vvals),
        )

    return TruncBiSSet(s.pbound, s.qbound, raws, act)


def involution(t: TruncBiSSet) -> TruncBiSSet:
    """The same simplices with the action conjugated by order reversal in
    both directions (the nontrivial automorphism of the indexing)."""
    raws = dict(t._raws)

    def act(x, p, q, hvals, vvals):
        return t._act_raw(
            x, p, q, twist_vals(hvals, p), twist_vals(vvals, q)
        )

    return TruncBiSSet(t.pbound, t.qbound, raws, act)


# --- homology of truncated simplicial sets -------------------------------

def normalized_complex(s: TruncSSet, top: int) -> ChainComplex:
    """Chains on nondegenerate simplices with the alternating-face
    differential (degenerate faces dropped), through degree ``top``."""
    if top > s.bound:
        raise ValueError(
            f"chain data through degree {top} needs truncation at least "
            f"{top}, have {s.bound}"
        )
    dims = {n: len(s.cells[n]) for n in range(top + 1)}
    index = {
        n: {raw: i for i, raw in enumerate(s.cells[n])}
        for n in range(top + 1)
    }
    diff: dict[int, dict[tuple[int, int], int]] = {}
    for n in range(1, top + 1):
        entries: dict[tuple[int, int], int] = {}
        for col, raw in enumerate(s.cells[n]):
            x = s.identity_simplex(n, raw)
            for i in range(n + 1):
                f = s.face(x, i)
                if f.is_degenerate:
                    continue
                key = (index[n - 1][f.cell.raw], col)
                val = entries.get(key, 0) + (-1) ** i
                if val:
                    entries[key] = val
                else:
                    entries.pop(key, None)
        diff[n] = entries
    cx = ChainComplex(dims, diff)
    cx.validate()
    return cx


def homology(s: TruncSSet, up_to: int) -> HomologySummary:
    """Homology groups H_0..H_{up_to}; exact only in degrees below the
    truncation bound, so ``up_to`` must be at most ``bound - 1``."""
    if up_to > s.bound - 1:
        raise ValueError(
            f"homology through degree {up_to} needs truncation at least "
            f"{up_to + 1}, have {s.bound}"
        )
    cx = normalized_complex(s, up_to + 1)
    return HomologySummary(tuple(cx.homology(k) for k in range(up_to + 1)))


def chain_blocks(f: SMap, top: int) -> dict[int, dict[tuple[int, int], int]]:
    """The chain map induced on normalized complexes by a simplicial map,
    as sparse blocks per degree."""
    dom_index = {
        n: {raw: i for i, raw in enumerate(f.dom.cells[n])}
        for n in range(top + 1)
    }
    cod_index = {
        n: {raw: i for i, raw in enumerate(f.cod.cells[n])}
        for n in range(top + 1)
    }
    blocks: dict[int, dict[tuple[int, int], int]] = {}
    for n in range(top + 1):
        entries: dict[tuple[int, int], int] = {}
        for raw, col in dom_index[n].items():
            y = f.apply(f.dom.identity_simplex(n, raw))
            if not y.is_degenerate:
                entries[(cod_index[n][y.cell.raw], col)] = 1
        blocks[n] = entries
    return blocks


def homology_iso_certificate(f: SMap, up_to: int) -> IsoCertificate:
    """Certificate that a simplicial map induces homology isomorphisms
    through degree ``up_to``."""
    if up_to + 1 > f.dom.bound:
        raise ValueError(
            f"certifying through degree {up_to} needs truncation at least "
            f"{up_to + 1}, have {f.dom.bound}"
        )
    dom_cx = normalized_complex(f.dom, up_to + 1)
    cod_cx = normalized_complex(f.cod, up_to + 1)
    return h_iso_certificate(
        dom_cx, cod_cx, chain_blocks(f, up_to + 1), up_to
    )


# --- skeletal realization -------------------------------------------------

@dataclass
class KXiGluing:
    """One gluing round: the Dwyer witness of the subdivided boundary
    inclusion, the attaching functor into the poset built so far, the raw
    pushout, and the renaming onto the final object names."""

    cell: Cell
    witness: DwyerWitness
    attach: RelFunctor
    pushout: PushoutResult
    rename: dict


@dataclass
class KXiResult:
    """The glued relative poset of a truncated bisimplicial set, with a
    placement functor of the subdivided grid for every nondegenerate cell."""

    poset: RelCategory
    place: dict[Cell, RelFunctor] = field(default_factory=dict)
    last_gluing: KXiGluing | None = None


def _missing_line(chain_of_chains: tuple, p: int, q: int):
    """A horizontal or vertical face not met by the support of a subdivided
    simplex (the support of the largest entry)."""
    support = set(chain_of_chains[0])
    rows = {i for i, _ in support}
    cols = {j for _, j in support}
    for r in range(p + 1):
        if r not in rows:
            return ("h", r)
    for c in range(q + 1):
        if c not in cols:
            return ("v", c)
    return None


def _vertex_section(kind: str, index: int) -> Callable:
    """Inverse, on its image, of the grid inclusion skipping one row or
    column."""
    if kind == "h":
        return lambda pt: (pt[0] if pt[0] < index else pt[0] - 1, pt[1])
    return lambda pt: (pt[0], pt[1] if pt[1] < index else pt[1] - 1)


def _pull_chain_of_chains(o: tuple, back: Callable) -> tuple:
    return tuple(tuple(back(pt) for pt in entry) for entry in o)


def k_xi_detailed(
    t: TruncBiSSet, *, budget: int | None = 200
) -> KXiResult:
    """Glue one subdivided grid per nondegenerate cell, in order of total
    degree, attaching each along the subdivision of its boundary."""
    result = RelCategory.from_poset([], [])
    place: dict[Cell, RelFunctor] = {}
    gluing: KXiGluing | None = None
    order = [
        (p + q, p, q, idx, raw)
        for (p, q), raws in t.cells.items()
        for idx, raw in enumerate(raws)
    ]
    order.sort(key=lambda item: item[:4])
    for _, p, q, idx, raw in order:
        cell = Cell(p, q, raw)
        xg = xi_grid(p, q, budget=budget)
        xii = xg.inner.category
        boundary_chains = [
            c for c in xii.objects if _missing_line((c,), p, q) is not None
        ]
        bsub = xii.full_subcategory(boundary_chains)
        witness = xi_t_cosieve_witness(inclusion_functor(bsub, xii))
        a_cat = witness.functor.dom

        s_obj = {}
        for o in a_cat.objects:
            line = _missing_line(o, p, q)
            x = t.identity_simplex(p, q, raw)
            if line[0] == "h":
                fx = t.face_h(x, line[1])
                src_p, src_q = p - 1, q
            else:
                fx = t.face_v(x, line[1])
                src_p, src_q = p, q - 1
            o2 = _pull_chain_of_chains(o, _vertex_section(*line))
            route = xi_pair_functor(
                src_p, src_q, fx.cell.p, fx.cell.q, fx.h_map, fx.v_map
            )
            s_obj[o] = place[fx.cell].obj_map[route(o2)]
        s = RelFunctor(a_cat, result, s_obj)
        s.validate()

        res = pushout_along_sieve(witness.functor, s, witness=witness)
        cell_key = (p, q, idx)
        rename = {res.j(x): x for x in result.objects}
        for y in res.xa.objects:
            rename[res.t(y)] = (cell_key, y)
        gluing = KXiGluing(cell, witness, s, res, rename)
        result = res.d.relabel(lambda x: rename[x])
        if not result.is_poset_backed:
            raise AssertionError("glued category is not a poset")
        place = {
            c: RelFunctor(pl.dom, result, dict(pl.obj_map))
            for c, pl in place.items()
        }
        place[cell] = RelFunctor(
            xg.category,
            result,
            {y: rename[res.t(y)] for y in xg.category.objects},
        )
        place[cell].validate()
    return KXiResult(result, place, gluing)


def k_xi(t: TruncBiSSet, *, budget: int | None = 200) -> RelCategory:
    """The relative poset glued from the subdivided grids of the cells."""
    return k_xi_detailed(t, budget=budget).poset


def k_xi_boundary_inclusion(
    p0: int, q0: int, *, budget: int | None = 200
) -> tuple[RelFunctor, DwyerWitness]:
    """Inclusion of the glued boundary realization into the glued
    representable, with a Dwyer witness assembled from the final gluing
    round: its transported deformation retraction is renamed onto the final
    object names, so no retraction search happens at ambient size."""
    from .dwyer import check_dwyer, transport_sdr_along_pushout
    from .homotopy import SDRWitness, StrictHomotopy, cylinder

    kb = k_xi_detailed(boundary_delta(p0, q0, p0, q0)[0], budget=budget)
    kd = k_xi_detailed(delta(p0, q0, p0, q0), budget=budget)
    inner, outer = kb.poset, kd.poset
    if inner != outer.full_subcategory(inner.objects):
        raise AssertionError("glued boundary is not a subposet of the whole")
    j = inclusion_functor(inner, outer)

    g = kd.last_gluing
    raw = transport_sdr_along_pushout(g.witness, g.attach, g.pushout)
    ren = g.rename
    znames = {ren[z] for z in raw.r.dom.objects}
    zc = outer.full_subcategory([y for y in outer.objects if y in znames])
    img = outer.full_subcategory([y for y in outer.objects if y in set(inner.objects)])
    r = RelFunctor(zc, img, {ren[z]: raw.r(z) for z in raw.r.dom.objects})
    h = RelFunctor(
        cylinder(zc),
        zc,
        {
            (ren[z], t): ren[raw.s.h((z, t))]
            for z in raw.r.dom.objects
            for t in (0, 1)
        },
    )
    hom = StrictHomotopy(
        h, r.then(inclusion_functor(img, zc)), RelFunctor.identity(zc)
    )
    w = check_dwyer(j, sdr=SDRWitness(r, hom))
    if w is None:
        raise AssertionError("renamed boundary retraction fails verification")
    return j, w


def unit_eta(
    p0: int,
    q0: int,
    pbound: int,
    qbound: int,
    *,
    budget: int | None = 200,
    guard: CostGuard | None = None,
) -> BiSMap:
    """The comparison map from the standard bisimplex to the subdivided
    nerve of its glued realization."""
    kres = k_xi_detailed(delta(p0, q0, p0, q0), budget=budget)
    top = kres.place[Cell(p0, q0, (id_vals(p0), id_vals(q0)))]
    if len(set(top.obj_map.values())) != kres.poset.n_objects:
        raise AssertionError("top cell placement is not bijective")
    dom = delta(p0, q0, pbound, qbound)
    cod = nerve_N_xi(kres.poset, pbound, qbound, budget=budget, guard=guard)
    cell_map = {}
    for (p, q), raws in dom.cells.items():
        for f, g in raws:
            xm = xi_pair_functor(p, q, p0, q0, f, g)
            cell_map[Cell(p, q, (f, g))] = cod.simplex(p, q, xm.then(top))
    return BiSMap(dom, cod, cell_map)
