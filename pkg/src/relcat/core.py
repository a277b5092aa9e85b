"""Finite relative categories: a category together with a class of weak
equivalences that contains every identity and is closed under composition.

Two storage backends share one class.  Poset-backed categories identify each
morphism with an ordered pair of objects; every construction built from
chains, grids, and subdivisions lives here, and functor enumeration runs on
bitmask arithmetic over object indices.  Table-backed categories carry an
explicit composition table and appear as outputs of pushouts, where parallel
morphisms can arise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

Obj = Hashable
MorId = Hashable


class CostGuardExceeded(RuntimeError):
    """An enumeration exceeded its budget, or was proven to before starting.

    When the overrun was proven in advance, ``lower_bound`` holds a certified
    lower bound on the number of solutions.
    """

    def __init__(self, message: str, lower_bound: int | None = None):
        super().__init__(message)
        self.lower_bound = lower_bound


@dataclass(frozen=True)
class CostGuard:
    """Budget for exhaustive searches.

    ``max_steps`` bounds backtracking node visits, ``max_results`` bounds the
    number of solutions collected.  ``None`` disables the corresponding limit.
    """

    max_steps: int | None = 5_000_000
    max_results: int | None = 2_000_000


DEFAULT_GUARD = CostGuard()


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _toposort(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    """Topological order of 0..n-1 under the given edges; raises on a cycle."""
    succ: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for a, b in edges:
        succ[a].append(b)
        indeg[b] += 1
    ready = [i for i in range(n) if indeg[i] == 0]
    order: list[int] = []
    while ready:
        i = ready.pop()
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    if len(order) != n:
        raise ValueError("relation has a cycle between distinct objects")
    return order


def _transpose_masks(masks: Sequence[int]) -> list[int]:
    out = [0] * len(masks)
    for i, m in enumerate(masks):
        bit = 1 << i
        for j in _bits(m):
            out[j] |= bit
    return out


class RelCategory:
    """A finite relative category.

    Use :meth:`from_poset` or :meth:`from_table` to construct one.  Morphism
    ids in a poset-backed category are the pairs ``(src, dst)``; identities
    are the diagonal pairs.
    """

    # --- construction -------------------------------------------------

    def __init__(self) -> None:
        raise TypeError("use RelCategory.from_poset or RelCategory.from_table")

    @classmethod
    def _blank(cls) -> "RelCategory":
        self = object.__new__(cls)
        self._objs: tuple = ()
        self._idx: dict = {}
        self._poset = False
        self._up: list[int] = []
        self._wemask: list[int] = []
        self._down: list[int] | None = None
        self._wedown: list[int] | None = None
        self._covers_cache: list[tuple] | None = None
        self._mor: dict = {}
        self._comp: dict = {}
        self._id_of: dict = {}
        self._weids: frozenset = frozenset()
        self._hom_cache: dict | None = None
        return self

    @classmethod
    def from_poset(
        cls,
        objects: Iterable[Obj],
        relations: Iterable[tuple[Obj, Obj]] = (),
        we: Iterable[tuple[Obj, Obj]] = (),
        *,
        close_we: bool = False,
    ) -> "RelCategory":
        """Poset-backed category generated by ``relations`` (x, y) meaning
        x <= y.  Relations are closed transitively; antisymmetry is checked.

        ``we`` lists weak-equivalence pairs beyond the identities.  By default
        it must already be closed under composition; with ``close_we=True``
        the listed pairs are treated as generators and closed.
        """
        self = cls._blank()
        self._poset = True
        self._objs = tuple(objects)
        self._idx = {x: i for i, x in enumerate(self._objs)}
        n = len(self._objs)
        if len(self._idx) != n:
            raise ValueError("duplicate objects")
        edges = set()
        for x, y in relations:
            a, b = self._idx[x], self._idx[y]
            if a != b:
                edges.add((a, b))
        order = _toposort(n, edges)
        succ: list[list[int]] = [[] for _ in range(n)]
        for a, b in edges:
            succ[a].append(b)
        up = [0] * n
        for i in reversed(order):
            m = 1 << i
            for j in succ[i]:
                m |= up[j]
            up[i] = m
        self._up = up

        wes: list[list[int]] = [[] for _ in range(n)]
        for x, y in we:
            a, b = self._idx[x], self._idx[y]
            if not (up[a] >> b) & 1:
                raise ValueError(f"we pair {(x, y)!r} is not a relation")
            if a != b:
                wes[a].append(b)
        wemask = [0] * n
        if close_we:
            for i in reversed(order):
                m = 1 << i
                for j in wes[i]:
                    m |= wemask[j]
                wemask[i] = m
        else:
            for i in range(n):
                m = 1 << i
                for j in wes[i]:
                    m |= 1 << j
                wemask[i] = m
            for i in range(n):
                acc = 0
                for j in _bits(wemask[i] & ~(1 << i)):
                    acc |= wemask[j]
                if acc & ~wemask[i]:
                    raise ValueError(
                        "we relation is not closed under composition; "
                        "pass close_we=True to close it"
                    )
        self._wemask = wemask
        return self

    @classmethod
    def _from_masks(
        cls, objects: tuple, up: list[int], wemask: list[int]
    ) -> "RelCategory":
        self = cls._blank()
        self._poset = True
        self._objs = objects
        self._idx = {x: i for i, x in enumerate(objects)}
        self._up = up
        self._wemask = wemask
        return self

    @classmethod
    def from_table(
        cls,
        objects: Iterable[Obj],
        morphisms: Mapping[MorId, tuple[Obj, Obj]],
        identities: Mapping[Obj, MorId],
        compose: Mapping[tuple[MorId, MorId], MorId],
        we: Iterable[MorId] = (),
    ) -> "RelCategory":
        """Table-backed category.  ``morphisms`` maps each id to (src, dst);
        ``compose`` maps composable pairs (g, f) with dst(f) = src(g) to g.f.
        Unit laws for pairs involving identities are filled in automatically.
        """
        self = cls._blank()
        self._poset = False
        self._objs = tuple(objects)
        self._idx = {x: i for i, x in enumerate(self._objs)}
        if len(self._idx) != len(self._objs):
            raise ValueError("duplicate objects")
        self._mor = dict(morphisms)
        self._id_of = dict(identities)
        comp = dict(compose)
        for m, (s, d) in self._mor.items():
            comp[(m, self._id_of[s])] = m
            comp[(self._id_of[d], m)] = m
        self._comp = comp
        weset = set(we) | set(self._id_of.values())
        self._weids = frozenset(weset)
        return self

    # --- basic accessors ----------------------------------------------

    @property
    def objects(self) -> tuple:
        return self._objs

    @property
    def is_poset_backed(self) -> bool:
        return self._poset

    @property
    def n_objects(self) -> int:
        return len(self._objs)

    def __contains__(self, x: Obj) -> bool:
        return x in self._idx

    def _down_masks(self) -> list[int]:
        if self._down is None:
            self._down = _transpose_masks(self._up)
        return self._down

    def _wedown_masks(self) -> list[int]:
        if self._wedown is None:
            self._wedown = _transpose_masks(self._wemask)
        return self._wedown

    def leq(self, x: Obj, y: Obj) -> bool:
        self._need_poset()
        return (self._up[self._idx[x]] >> self._idx[y]) & 1 == 1

    def _need_poset(self) -> None:
        if not self._poset:
            raise TypeError("operation requires a poset-backed category")

    def morphisms(self) -> Iterator[MorId]:
        """All morphism ids, identities included."""
        if self._poset:
            for i, x in enumerate(self._objs):
                for j in _bits(self._up[i]):
                    yield (x, self._objs[j])
        else:
            yield from self._mor

    def n_morphisms(self) -> int:
        if self._poset:
            return sum(m.bit_count() for m in self._up)
        return len(self._mor)

    def n_we_morphisms(self) -> int:
        if self._poset:
            return sum(m.bit_count() for m in self._wemask)
        return len(self._weids)

    def src(self, m: MorId) -> Obj:
        return m[0] if self._poset else self._mor[m][0]

    def dst(self, m: MorId) -> Obj:
        return m[1] if self._poset else self._mor[m][1]

    def identity(self, x: Obj) -> MorId:
        if self._poset:
            if x not in self._idx:
                raise KeyError(x)
            return (x, x)
        return self._id_of[x]

    def is_identity(self, m: MorId) -> bool:
        if self._poset:
            return m[0] == m[1]
        s, d = self._mor[m]
        return s == d and self._id_of[s] == m

    def compose(self, g: MorId, f: MorId) -> MorId:
        """Composite g.f, applying f first."""
        if self._poset:
            if f[1] != g[0]:
                raise ValueError(f"morphisms {f!r} and {g!r} are not composable")
            return (f[0], g[1])
        try:
            return self._comp[(g, f)]
        except KeyError:
            raise ValueError(f"morphisms {f!r} and {g!r} are not composable")

    def is_we(self, m: MorId) -> bool:
        if self._poset:
            a, b = self._idx[m[0]], self._idx[m[1]]
            return (self._wemask[a] >> b) & 1 == 1
        return m in self._weids

    def hom(self, x: Obj, y: Obj) -> list[MorId]:
        if self._poset:
            return [(x, y)] if self.leq(x, y) else []
        if self._hom_cache is None:
            cache: dict = {}
            for m, (s, d) in self._mor.items():
                cache.setdefault((s, d), []).append(m)
            self._hom_cache = cache
        return list(self._hom_cache.get((x, y), ()))

    def relations(self) -> Iterator[tuple[Obj, Obj]]:
        """Non-identity ordered pairs x < y (poset-backed only)."""
        self._need_poset()
        for i, x in enumerate(self._objs):
            for j in _bits(self._up[i] & ~(1 << i)):
                yield (x, self._objs[j])

    def we_pairs(self) -> Iterator[tuple[Obj, Obj]]:
        """Non-identity weak-equivalence pairs (poset-backed only)."""
        self._need_poset()
        for i, x in enumerate(self._objs):
            for j in _bits(self._wemask[i] & ~(1 << i)):
                yield (x, self._objs[j])

    def we_morphisms(self) -> Iterator[MorId]:
        if self._poset:
            for i, x in enumerate(self._objs):
                for j in _bits(self._wemask[i]):
                    yield (x, self._objs[j])
        else:
            yield from self._weids

    def covers(self) -> list[tuple[Obj, Obj]]:
        """Transitive reduction of the order relation (poset-backed only)."""
        self._need_poset()
        if self._covers_cache is None:
            out = []
            for i, x in enumerate(self._objs):
                strict = self._up[i] & ~(1 << i)
                reach = 0
                for j in _bits(strict):
                    reach |= self._up[j] & ~(1 << j)
                for j in _bits(strict & ~reach):
                    out.append((x, self._objs[j]))
            self._covers_cache = out
        return list(self._covers_cache)

    def is_minimal(self) -> bool:
        """True when the only weak equivalences are identities."""
        if self._poset:
            return all(w == (1 << i) for i, w in enumerate(self._wemask))
        return self._weids == frozenset(self._id_of.values())

    def is_maximal(self) -> bool:
        """True when every morphism is a weak equivalence."""
        if self._poset:
            return self._wemask == self._up
        return self._weids == frozenset(self._mor)

    # --- derived categories -------------------------------------------

    def opposite(self) -> "RelCategory":
        if self._poset:
            return RelCategory._from_masks(
                self._objs, self._down_masks(), self._wedown_masks()
            )
        mor = {m: (d, s) for m, (s, d) in self._mor.items()}
        comp = {(f, g): h for (g, f), h in self._comp.items()}
        out = RelCategory._blank()
        out._poset = False
        out._objs = self._objs
        out._idx = dict(self._idx)
        out._mor = mor
        out._comp = comp
        out._id_of = dict(self._id_of)
        out._weids = self._weids
        return out

    def product(self, other: "RelCategory") -> "RelCategory":
        """Product category; weak equivalences are the componentwise ones.

        Objects are pairs, morphism ids are pairs of component ids.
        """
        if self._poset and other._poset:
            objs = list(itertools.product(self._objs, other._objs))
            rels = []
            for x1, y1 in self.covers():
                for z in other._objs:
                    rels.append((((x1, z)), ((y1, z))))
            for x2, y2 in other.covers():
                for z in self._objs:
                    rels.append((((z, x2)), ((z, y2))))
            wes = []
            we1 = list(self.we_morphisms())
            we2 = list(other.we_morphisms())
            for a1, b1 in we1:
                for a2, b2 in we2:
                    if (a1, a2) != (b1, b2):
                        wes.append(((a1, a2), (b1, b2)))
            return RelCategory.from_poset(objs, rels, wes)
        c1, c2 = self.as_table(), other.as_table()
        objs = list(itertools.product(c1._objs, c2._objs))
        mor = {}
        for m1, (s1, d1) in c1._mor.items():
            for m2, (s2, d2) in c2._mor.items():
                mor[(m1, m2)] = ((s1, s2), (d1, d2))
        ids = {
            (x1, x2): (c1._id_of[x1], c2._id_of[x2]) for (x1, x2) in objs
        }
        comp = {}
        for (g1, f1), h1 in c1._comp.items():
            for (g2, f2), h2 in c2._comp.items():
                comp[((g1, g2), (f1, f2))] = (h1, h2)
        we = [
            (m1, m2)
            for m1 in c1._weids
            for m2 in c2._weids
        ]
        return RelCategory.from_table(objs, mor, ids, comp, we)

    def as_table(self) -> "RelCategory":
        """Table-backed copy (identity on table-backed input)."""
        if not self._poset:
            return self
        mor = {}
        for m in self.morphisms():
            mor[m] = m
        ids = {x: (x, x) for x in self._objs}
        comp = {}
        for x, y in mor:
            i = self._idx[y]
            for j in _bits(self._up[i]):
                z = self._objs[j]
                comp[((y, z), (x, y))] = (x, z)
        return RelCategory.from_table(
            self._objs, mor, ids, comp, list(self.we_morphisms())
        )

    def as_poset(self) -> "RelCategory":
        """Poset-backed copy; fails if some hom-set has two morphisms or the
        category has a non-identity endomorphism or an inverse pair."""
        if self._poset:
            return self
        pairs = set()
        for m, (s, d) in self._mor.items():
            if s == d and not self.is_identity(m):
                raise ValueError("non-identity endomorphism")
            if (s, d) in pairs and s != d:
                raise ValueError(f"parallel morphisms {s!r} -> {d!r}")
            if s != d:
                pairs.add((s, d))
        we = [
            (s, d)
            for m, (s, d) in self._mor.items()
            if m in self._weids and s != d
        ]
        return RelCategory.from_poset(self._objs, pairs, we)

    def full_subcategory(self, objects: Iterable[Obj]) -> "RelCategory":
        keep = list(objects)
        for x in keep:
            if x not in self._idx:
                raise KeyError(x)
        if self._poset:
            sel = [self._idx[x] for x in keep]
            pos = {old: new for new, old in enumerate(sel)}
            up = []
            wemask = []
            for old in sel:
                u = w = 0
                for j in _bits(self._up[old]):
                    if j in pos:
                        u |= 1 << pos[j]
                for j in _bits(self._wemask[old]):
                    if j in pos:
                        w |= 1 << pos[j]
                up.append(u)
                wemask.append(w)
            return RelCategory._from_masks(tuple(keep), up, wemask)
        ks = set(keep)
        mor = {m: sd for m, sd in self._mor.items() if sd[0] in ks and sd[1] in ks}
        ids = {x: m for x, m in self._id_of.items() if x in ks}
        comp = {
            (g, f): h for (g, f), h in self._comp.items() if g in mor and f in mor
        }
        return RelCategory.from_table(
            keep, mor, ids, comp, [m for m in self._weids if m in mor]
        )

    def relabel(self, fn: Callable[[Obj], Obj]) -> "RelCategory":
        """Rename objects through an injective function."""
        objs = tuple(fn(x) for x in self._objs)
        if len(set(objs)) != len(objs):
            raise ValueError("relabeling is not injective")
        if self._poset:
            return RelCategory._from_masks(objs, list(self._up), list(self._wemask))
        ren = dict(zip(self._objs, objs))
        mor = {m: (ren[s], ren[d]) for m, (s, d) in self._mor.items()}
        ids = {ren[x]: m for x, m in self._id_of.items()}
        return RelCategory.from_table(objs, mor, ids, self._comp, self._weids)

    def wide_we_subcategory(self) -> "RelCategory":
        """Subcategory with the same objects and only the weak equivalences."""
        if self._poset:
            return RelCategory._from_masks(
                self._objs, list(self._wemask), list(self._wemask)
            )
        mor = {m: sd for m, sd in self._mor.items() if m in self._weids}
        comp = {
            (g, f): h for (g, f), h in self._comp.items() if g in mor and f in mor
        }
        return RelCategory.from_table(
            self._objs, mor, dict(self._id_of), comp, self._weids
        )

    # --- validation and comparison ------------------------------------

    def validation_report(self, *, check_associativity: bool = True) -> list[str]:
        """All violated axioms, each entry naming the witnesses.  Empty when
        the category and weak-equivalence invariants all hold."""
        out: list[str] = []
        if self._poset:
            n = len(self._objs)
            for i in range(n):
                if not (self._up[i] >> i) & 1:
                    out.append(f"order not reflexive at {self._objs[i]!r}")
                if self._wemask[i] & ~self._up[i]:
                    j = next(_bits(self._wemask[i] & ~self._up[i]))
                    out.append(
                        f"we pair ({self._objs[i]!r}, {self._objs[j]!r}) is not a relation"
                    )
                if not (self._wemask[i] >> i) & 1:
                    out.append(f"we not reflexive at {self._objs[i]!r}")
            for i in range(n):
                reach = 0
                for j in _bits(self._up[i]):
                    reach |= self._up[j]
                if reach & ~self._up[i]:
                    out.append(f"order not transitive below {self._objs[i]!r}")
                acc = 0
                for j in _bits(self._wemask[i]):
                    acc |= self._wemask[j]
                if acc & ~self._wemask[i]:
                    out.append(
                        f"we not closed under composition at {self._objs[i]!r}"
                    )
            down = self._down_masks()
            for i in range(n):
                if self._up[i] & down[i] != (1 << i):
                    out.append(f"order not antisymmetric at {self._objs[i]!r}")
            return out
        for x in self._objs:
            m = self._id_of.get(x)
            if m is None or self._mor.get(m) != (x, x):
                out.append(f"missing identity at {x!r}")
            elif m not in self._weids:
                out.append(f"identity at {x!r} not a weak equivalence")
        for m, (s, d) in self._mor.items():
            if s not in self._idx or d not in self._idx:
                out.append(f"morphism {m!r} has unknown endpoint")
        for (g, f), h in self._comp.items():
            if f not in self._mor or g not in self._mor or h not in self._mor:
                out.append(f"composite entry {(g, f)!r} references unknown morphism")
                continue
            if self._mor[f][1] != self._mor[g][0]:
                out.append(f"composite defined on non-composable pair {(g, f)!r}")
            elif self._mor[h] != (self._mor[f][0], self._mor[g][1]):
                out.append(f"composite of {(g, f)!r} has wrong endpoints")
        for f, (fs, fd) in self._mor.items():
            for g, (gs, gd) in self._mor.items():
                if fd == gs and (g, f) not in self._comp:
                    out.append(f"missing composite of {(g, f)!r}")
        for f, (fs, fd) in self._mor.items():
            if self._comp.get((f, self._id_of.get(fs))) != f:
                out.append(f"right unit law fails at {f!r}")
            if self._comp.get((self._id_of.get(fd), f)) != f:
                out.append(f"left unit law fails at {f!r}")
        if check_associativity and not out:
            for f, (fs, fd) in self._mor.items():
                for g, (gs, gd) in self._mor.items():
                    if fd != gs:
                        continue
                    gf = self._comp[(g, f)]
                    for h, (hs, hd) in self._mor.items():
                        if gd != hs:
                            continue
                        if self._comp[(h, gf)] != self._comp[(self._comp[(h, g)], f)]:
                            out.append(f"composition not associative on {(h, g, f)!r}")
        if not out:
            for g in self._weids:
                gs = self._mor[g][0]
                for f in self._weids:
                    if self._mor[f][1] == gs and self._comp[(g, f)] not in self._weids:
                        out.append(
                            f"we not closed under composition on {(g, f)!r}"
                        )
        return out

    def validate(self, *, check_associativity: bool = True) -> None:
        """Check the category and weak-equivalence axioms; raises on failure."""
        report = self.validation_report(check_associativity=check_associativity)
        if report:
            raise AssertionError("; ".join(report))

    def same_structure(self, other: "RelCategory") -> bool:
        """Literal equality of objects, morphisms, and weak equivalences."""
        if set(self._objs) != set(other._objs):
            return False
        if self._poset and other._poset:
            return (
                set(self.morphisms()) == set(other.morphisms())
                and set(self.we_morphisms()) == set(other.we_morphisms())
            )
        a, b = self.as_table(), other.as_table()
        return (
            a._mor == b._mor
            and a._id_of == b._id_of
            and a._comp == b._comp
            and a._weids == b._weids
        )

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, RelCategory):
            return NotImplemented
        return self.same_structure(other)

    def __hash__(self):  # structural equality, not hashable
        raise TypeError("RelCategory is not hashable")

    def __repr__(self) -> str:
        kind = "poset" if self._poset else "table"
        return (
            f"RelCategory({self.n_objects} objects, {self.n_morphisms()} morphisms, "
            f"{self.n_we_morphisms()} we, {kind})"
        )


def make_minimal(c: RelCategory) -> RelCategory:
    """Same underlying category with only identities as weak equivalences."""
    if c.is_poset_backed:
        return RelCategory._from_masks(
            c._objs, list(c._up), [1 << i for i in range(c.n_objects)]
        )
    return RelCategory.from_table(c._objs, c._mor, c._id_of, c._comp, ())


def make_maximal(c: RelCategory) -> RelCategory:
    """Same underlying category with every morphism a weak equivalence."""
    if c.is_poset_backed:
        return RelCategory._from_masks(c._objs, list(c._up), list(c._up))
    return RelCategory.from_table(c._objs, c._mor, c._id_of, c._comp, c._mor)


# --- standard categories ------------------------------------------------


def karrow(k: int, weak: str = "minimal") -> RelCategory:
    """The k-arrow chain 0 -> 1 -> ... -> k.

    ``weak='minimal'`` marks only identities as weak equivalences,
    ``weak='maximal'`` marks every morphism.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    objs = range(k + 1)
    rels = [(i, i + 1) for i in range(k)]
    if weak == "minimal":
        we: list[tuple[int, int]] = []
    elif weak == "maximal":
        we = [(i, j) for i in range(k + 1) for j in range(i + 1, k + 1)]
    else:
        raise ValueError("weak must be 'minimal' or 'maximal'")
    return RelCategory.from_poset(objs, rels, we)


def terminal_category() -> RelCategory:
    return karrow(0)


def empty_category() -> RelCategory:
    return RelCategory.from_poset([])


# --- relative functors ----------------------------------------------------


class RelFunctor:
    """A relative functor: maps objects and morphisms, preserves identities,
    composition, and weak equivalences."""

    __slots__ = ("dom", "cod", "obj_map", "_mor_map")

    def __init__(
        self,
        dom: RelCategory,
        cod: RelCategory,
        obj_map: Mapping[Obj, Obj],
        mor_map: Mapping[MorId, MorId] | None = None,
    ):
        self.dom = dom
        self.cod = cod
        self.obj_map = dict(obj_map)
        if mor_map is None and not cod.is_poset_backed:
            raise TypeError("mor_map is required when the codomain is table-backed")
        self._mor_map = dict(mor_map) if mor_map is not None else None

    @classmethod
    def identity(cls, c: RelCategory) -> "RelFunctor":
        if c.is_poset_backed:
            return cls(c, c, {x: x for x in c.objects})
        return cls(
            c, c, {x: x for x in c.objects}, {m: m for m in c.morphisms()}
        )

    def __call__(self, x: Obj) -> Obj:
        return self.obj_map[x]

    def on_mor(self, m: MorId) -> MorId:
        if self._mor_map is not None:
            return self._mor_map[m]
        return (self.obj_map[self.dom.src(m)], self.obj_map[self.dom.dst(m)])

    def then(self, other: "RelFunctor") -> "RelFunctor":
        """Composite functor, self applied first."""
        if other.dom is not self.cod and not other.dom.same_structure(self.cod):
            raise ValueError("functors are not composable")
        obj_map = {x: other.obj_map[y] for x, y in self.obj_map.items()}
        if self._mor_map is None and other._mor_map is None:
            return RelFunctor(self.dom, other.cod, obj_map)
        mor_map = {m: other.on_mor(self.on_mor(m)) for m in self.dom.morphisms()}
        return RelFunctor(self.dom, other.cod, obj_map, mor_map)

    def key(self) -> tuple:
        """Hashable identity of the functor: images in domain object order."""
        vals = tuple(self.obj_map[x] for x in self.dom.objects)
        if self._mor_map is None:
            return vals
        return (vals, tuple(sorted(self._mor_map.items(), key=repr)))

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, RelFunctor):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def validate(self) -> None:
        """Check functoriality and preservation of weak equivalences."""
        dom, cod = self.dom, self.cod
        for x in dom.objects:
            if x not in self.obj_map:
                raise AssertionError(f"no image for object {x!r}")
            if self.obj_map[x] not in cod:
                raise AssertionError(f"image of {x!r} not in codomain")
        for m in dom.morphisms():
            fm = self.on_mor(m)
            fs, fd = self.obj_map[dom.src(m)], self.obj_map[dom.dst(m)]
            if cod.is_poset_backed:
                if fm != (fs, fd) or not cod.leq(fs, fd):
                    raise AssertionError(f"image of {m!r} is not a morphism")
            elif fm not in cod._mor or cod._mor[fm] != (fs, fd):
                raise AssertionError(f"image of {m!r} has wrong endpoints")
            if dom.is_we(m) and not cod.is_we(fm):
                raise AssertionError(f"weak equivalence {m!r} not preserved")
        for x in dom.objects:
            if self.on_mor(dom.identity(x)) != cod.identity(self.obj_map[x]):
                raise AssertionError(f"identity at {x!r} not preserved")
        if self._mor_map is not None or not cod.is_poset_backed:
            for f in dom.morphisms():
                for g in dom.morphisms():
                    if dom.dst(f) != dom.src(g):
                        continue
                    lhs = self.on_mor(dom.compose(g, f))
                    rhs = cod.compose(self.on_mor(g), self.on_mor(f))
                    if lhs != rhs:
                        raise AssertionError("composition not preserved")

    def __repr__(self) -> str:
        return f"RelFunctor({self.dom.n_objects} -> {self.cod.n_objects} objects)"


def poset_functor(
    dom: RelCategory, cod: RelCategory, obj_map: Mapping[Obj, Obj]
) -> RelFunctor:
    """Functor between poset-backed categories from an object map, validated
    to be monotone and weak-equivalence preserving."""
    f = RelFunctor(dom, cod, obj_map)
    f.validate()
    return f


def inclusion_functor(sub: RelCategory, amb: RelCategory) -> RelFunctor:
    """Identity-on-names inclusion of a full subcategory into its ambient
    category (full subcategories share object and morphism names)."""
    if amb.is_poset_backed:
        return RelFunctor(sub, amb, {x: x for x in sub.objects})
    return RelFunctor(
        sub, amb, {x: x for x in sub.objects}, {m: m for m in sub.morphisms()}
    )


def opposite_functor(f: RelFunctor) -> RelFunctor:
    """The same data read as a functor between the opposite categories."""
    dop = f.dom.opposite()
    cop = f.cod.opposite()
    if cop.is_poset_backed:
        return RelFunctor(dop, cop, dict(f.obj_map))
    if f.dom.is_poset_backed:
        # poset opposites rename each arrow (a, b) to (b, a); table
        # opposites keep morphism ids
        mor_map = {(b, a): f.on_mor((a, b)) for (a, b) in f.dom.morphisms()}
    else:
        mor_map = {m: f.on_mor(m) for m in f.dom.morphisms()}
    return RelFunctor(dop, cop, dict(f.obj_map), mor_map)


# --- functor enumeration ---------------------------------------------------


def largest_level_antichain(c: RelCategory) -> list[Obj]:
    """An antichain found by taking the largest level of the height function.

    Sound for lower bounds: elements of equal height are incomparable.
    """
    c._need_poset()
    n = c.n_objects
    order = _toposort(
        n, [(c._idx[a], c._idx[b]) for a, b in c.covers()]
    )
    height = [0] * n
    succ: dict[int, list[int]] = {i: [] for i in range(n)}
    for a, b in c.covers():
        succ[c._idx[a]].append(c._idx[b])
    for i in order:
        for j in succ[i]:
            height[j] = max(height[j], height[i] + 1)
    levels: dict[int, list[int]] = {}
    for i, h in enumerate(height):
        levels.setdefault(h, []).append(i)
    best = max(levels.values(), key=len) if levels else []
    return [c.objects[i] for i in best]


def _we_condensation(c: RelCategory) -> tuple[RelCategory, dict]:
    """Quotient of a poset by collapsing weak equivalences and everything
    order-between their endpoints.  Returns (quotient, object -> class map).

    Monotone maps out of the quotient correspond to relative functors out of
    ``c`` into any category whose weak equivalences are all identities.
    """
    n = c.n_objects
    succ: list[list[int]] = [[] for _ in range(n)]
    for a, b in c.covers():
        succ[c._idx[a]].append(c._idx[b])
    for a, b in c.we_pairs():
        succ[c._idx[b]].append(c._idx[a])
    # iterative Tarjan SCC
    index = [0] * n
    low = [0] * n
    onstack = [False] * n
    visited = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = [0]
    ncomp = [0]
    for root in range(n):
        if visited[root]:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                visited[v] = True
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                onstack[v] = True
            advanced = False
            while pi < len(succ[v]):
                w = succ[v][pi]
                pi += 1
                if not visited[w]:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    advanced = True
                    break
                if onstack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    comp[w] = ncomp[0]
                    if w == v:
                        break
                ncomp[0] += 1
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    members: list[list[int]] = [[] for _ in range(ncomp[0])]
    for i in range(n):
        members[comp[i]].append(i)
    qobjs = [tuple(c.objects[i] for i in sorted(ms)) for ms in members]
    rels = set()
    for a, b in c.covers():
        ca, cb = comp[c._idx[a]], comp[c._idx[b]]
        if ca != cb:
            rels.add((qobjs[ca], qobjs[cb]))
    quotient = RelCategory.from_poset(qobjs, rels)
    class_of = {x: qobjs[comp[c._idx[x]]] for x in c.objects}
    return quotient, class_of


def _monotone_maps(
    dom: RelCategory,
    cod: RelCategory,
    fixed: Mapping[Obj, Obj] | None,
    guard: CostGuard,
) -> Iterator[tuple]:
    """Backtracking enumeration of we-preserving monotone maps.

    Yields tuples of codomain objects indexed by dom.objects order.
    """
    n = dom.n_objects
    m = cod.n_objects
    if n == 0:
        yield ()
        return
    if m == 0:
        return
    cod_up = cod._up
    cod_down = cod._down_masks()
    cod_weup = cod._wemask
    cod_wedown = cod._wedown_masks()
    full = (1 << m) - 1

    fixed_idx: dict[int, int] = {}
    if fixed:
        for x, y in fixed.items():
            fixed_idx[dom._idx[x]] = cod._idx[y]

    order = _toposort(n, [(dom._idx[a], dom._idx[b]) for a, b in dom.covers()])
    order.sort(key=lambda i: i not in fixed_idx)  # stable: fixed first
    pos = {v: k for k, v in enumerate(order)}

    # constraints[k]: list of (earlier position, mask table) applying to the
    # variable assigned at position k
    constraints: list[list[tuple[int, list[int]]]] = [[] for _ in range(n)]
    for a, b in dom.covers():
        ia, ib = dom._idx[a], dom._idx[b]
        if pos[ia] < pos[ib]:
            constraints[pos[ib]].append((pos[ia], cod_up))
        else:
            constraints[pos[ia]].append((pos[ib], cod_down))
    for a, b in dom.we_pairs():
        ia, ib = dom._idx[a], dom._idx[b]
        if pos[ia] < pos[ib]:
            constraints[pos[ib]].append((pos[ia], cod_weup))
        else:
            constraints[pos[ia]].append((pos[ib], cod_wedown))

    base_domain = [full] * n
    for i, j in fixed_idx.items():
        base_domain[pos[i]] = 1 << j

    assign = [0] * n  # codomain index per position
    domains = [0] * n
    steps = 0
    k = 0
    domains[0] = base_domain[0]  # position 0 has no earlier constraints
    while k >= 0:
        if domains[k] == 0:
            k -= 1
            continue
        low = domains[k] & -domains[k]
        domains[k] ^= low
        j = low.bit_length() - 1
        assign[k] = j
        steps += 1
        if guard.max_steps is not None and steps > guard.max_steps:
            raise CostGuardExceeded(
                f"functor enumeration exceeded {guard.max_steps} steps"
            )
        if k == n - 1:
            out = [0] * n
            for p in range(n):
                out[order[p]] = assign[p]
            yield tuple(cod.objects[i] for i in out)
            continue
        k += 1
        dmask = base_domain[k]
        for p, table in constraints[k]:
            dmask &= table[assign[p]]
        domains[k] = dmask


def enumerate_functors(
    dom: RelCategory,
    cod: RelCategory,
    *,
    fixed: Mapping[Obj, Obj] | None = None,
    guard: CostGuard | None = None,
    values_only: bool = False,
) -> list:
    """All relative functors out of a poset-backed category, in canonical
    order (lexicographic images over ``dom.objects``).

    ``fixed`` pins the images of some objects.  ``values_only=True`` returns
    image tuples in ``dom.objects`` order instead of RelFunctor instances
    (poset-backed codomains only).

    Raises :class:`CostGuardExceeded` when the search exceeds the guard, or
    when a cheap certificate already proves more than ``max_results``
    solutions exist (the certificate is reported as ``lower_bound``).
    """
    guard = guard or DEFAULT_GUARD
    if values_only and not (dom.is_poset_backed and cod.is_poset_backed):
        raise ValueError("values_only needs poset-backed domain and codomain")
    if not dom.is_poset_backed:
        return _enumerate_from_table(dom, cod, fixed, guard)
    if not cod.is_poset_backed:
        return _enumerate_into_table(dom, cod, fixed, guard)

    if not fixed and guard.max_results is not None and not cod.is_minimal():
        # any up-set composed with a non-identity we arrow of cod gives a
        # distinct functor, so 2^(antichain) is a certified lower bound
        anti = largest_level_antichain(dom)
        if 2 ** len(anti) > guard.max_results:
            raise CostGuardExceeded(
                f"at least 2^{len(anti)} = {2 ** len(anti)} functors exist "
                f"(up-sets over a {len(anti)}-element antichain mapped onto a "
                f"non-identity weak equivalence); guard allows "
                f"{guard.max_results}",
                lower_bound=2 ** len(anti),
            )

    search_dom = dom
    class_of: dict | None = None
    if cod.is_minimal() and not dom.is_minimal():
        quotient, class_of = _we_condensation(dom)
        qfixed: dict = {}
        if fixed:
            for x, y in fixed.items():
                q = class_of[x]
                if q in qfixed and qfixed[q] != y:
                    return []
                qfixed[q] = y
            fixed = qfixed
        search_dom = quotient

    results = []
    for values in _monotone_maps(search_dom, cod, fixed, guard):
        if class_of is not None:
            lut = dict(zip(search_dom.objects, values))
            values = tuple(lut[class_of[x]] for x in dom.objects)
        results.append(values)
        if guard.max_results is not None and len(results) > guard.max_results:
            raise CostGuardExceeded(
                f"functor enumeration found more than {guard.max_results} results"
            )
    results.sort(key=lambda vals: tuple(cod._idx[v] for v in vals))
    if values_only:
        return results
    return [
        RelFunctor(dom, cod, dict(zip(dom.objects, values))) for values in results
    ]


def _enumerate_into_table(
    dom: RelCategory,
    cod: RelCategory,
    fixed: Mapping[Obj, Obj] | None,
    guard: CostGuard,
) -> list[RelFunctor]:
    """Functors from a poset into a table-backed category, by brute force
    over object images and cover-arrow images.  Intended for small codomains
    such as pushout results."""
    objs = list(dom.objects)
    covers = dom.covers()
    out: list[RelFunctor] = []
    steps = 0

    mor_order = {m: k for k, m in enumerate(cod._mor)}
    by_src: dict = {}
    for (a, b) in covers:
        by_src.setdefault(a, []).append(b)
    # sources high in the poset first, so that (y, z) is derived before any
    # (x, z) with x below y
    pairs = [m for m in dom.morphisms() if m[0] != m[1]]
    pairs.sort(
        key=lambda m: (dom._up[dom._idx[m[0]]].bit_count(), dom._idx[m[0]], dom._idx[m[1]])
    )

    def derive(obj_img: dict, cov_img: dict) -> dict | None:
        # images of all relations, composed along cover chains; None when
        # some composite is path-dependent
        rel_img: dict = {}
        for x in objs:
            rel_img[(x, x)] = cod._id_of[obj_img[x]]
        for (x, z) in pairs:
            val = None
            for y in by_src.get(x, ()):
                if y == z:
                    cand = cov_img[(x, z)]
                elif dom.leq(y, z):
                    prev = rel_img.get((y, z))
                    if prev is None:
                        return None
                    cand = cod._comp[(prev, cov_img[(x, y)])]
                else:
                    continue
                if val is None:
                    val = cand
                elif val != cand:
                    return None
            if val is None:
                return None
            rel_img[(x, z)] = val
        return rel_img

    def rec(i: int, obj_img: dict) -> None:
        nonlocal steps
        if i == len(objs):
            cov_opts = []
            for (a, b) in covers:
                opts = cod.hom(obj_img[a], obj_img[b])
                opts.sort(key=lambda m: mor_order[m])
                if not opts:
                    return
                cov_opts.append(opts)

            def rec2(j: int, cov_img: dict) -> None:
                nonlocal steps
                steps += 1
                if guard.max_steps is not None and steps > guard.max_steps:
                    raise CostGuardExceeded(
                        f"functor enumeration exceeded {guard.max_steps} steps"
                    )
                if j == len(covers):
                    rel_img = derive(obj_img, cov_img)
                    if rel_img is None:
                        return
                    for x, y in dom.we_pairs():
                        if rel_img[(x, y)] not in cod._weids:
                            return
                    f = RelFunctor(dom, cod, dict(obj_img), rel_img)
                    out.append(f)
                    if (
                        guard.max_results is not None
                        and len(out) > guard.max_results
                    ):
                        raise CostGuardExceeded(
                            f"functor enumeration found more than "
                            f"{guard.max_results} results"
                        )
                    return
                for m in cov_opts[j]:
                    cov_img[covers[j]] = m
                    rec2(j + 1, cov_img)
                del cov_img[covers[j]]

            rec2(0, {})
            return
        x = objs[i]
        steps += 1
        if guard.max_steps is not None and steps > guard.max_steps:
            raise CostGuardExceeded(
                f"functor enumeration exceeded {guard.max_steps} steps"
            )
        if fixed and x in fixed:
            obj_img[x] = fixed[x]
            rec(i + 1, obj_img)
            del obj_img[x]
            return
        for y in cod.objects:
            obj_img[x] = y
            rec(i + 1, obj_img)
        del obj_img[x]

    rec(0, {})
    out.sort(
        key=lambda f: tuple(cod._idx[f(x)] for x in objs)
    )
    return out


def _enumerate_from_table(
    dom: RelCategory,
    cod: RelCategory,
    fixed: Mapping[Obj, Obj] | None,
    guard: CostGuard,
) -> list[RelFunctor]:
    """Functors out of a table-backed category: brute force over object
    images, then over images of the non-identity morphisms, pruned by the
    composition table and the weak-equivalence constraint."""
    codt = cod.as_table()
    objs = list(dom.objects)
    nonid = [m for m in dom._mor if not dom.is_identity(m)]
    comps = [
        ((g, f), h)
        for (g, f), h in dom._comp.items()
        if not dom.is_identity(g) and not dom.is_identity(f)
    ]
    mor_order = {m: k for k, m in enumerate(codt._mor)}
    out: list[RelFunctor] = []
    steps = 0

    def mor_rec(j: int, obj_img: dict, mor_img: dict) -> None:
        nonlocal steps
        steps += 1
        if guard.max_steps is not None and steps > guard.max_steps:
            raise CostGuardExceeded(
                f"functor enumeration exceeded {guard.max_steps} steps"
            )
        if j == len(nonid):
            f = RelFunctor(dom, codt, dict(obj_img), dict(mor_img))
            out.append(f)
            if guard.max_results is not None and len(out) > guard.max_results:
                raise CostGuardExceeded(
                    f"functor enumeration found more than "
                    f"{guard.max_results} results"
                )
            return
        m = nonid[j]
        opts = codt.hom(obj_img[dom.src(m)], obj_img[dom.dst(m)])
        opts = sorted(opts, key=lambda o: mor_order[o])
        if dom.is_we(m):
            opts = [o for o in opts if o in codt._weids]
        for o in opts:
            mor_img[m] = o
            ok = True
            for (g, f_), h in comps:
                gi, fi, hi = mor_img.get(g), mor_img.get(f_), mor_img.get(h)
                if gi is None or fi is None:
                    continue
                want = codt._comp[(gi, fi)]
                if hi is None:
                    if dom.is_identity(h):
                        if want != codt._id_of[obj_img[dom.src(h)]]:
                            ok = False
                            break
                    continue
                if want != hi:
                    ok = False
                    break
            if ok:
                mor_rec(j + 1, obj_img, mor_img)
        del mor_img[m]

    def obj_rec(i: int, obj_img: dict) -> None:
        nonlocal steps
        steps += 1
        if guard.max_steps is not None and steps > guard.max_steps:
            raise CostGuardExceeded(
                f"functor enumeration exceeded {guard.max_steps} steps"
            )
        if i == len(objs):
            mor_img = {
                dom.identity(x): codt._id_of[obj_img[x]] for x in objs
            }
            mor_rec(0, obj_img, mor_img)
            return
        x = objs[i]
        if fixed and x in fixed:
            cands = [fixed[x]]
        else:
            cands = list(codt.objects)
        closed = set(objs[: i + 1])
        touching = [
            m
            for m in nonid
            if (dom.src(m) == x or dom.dst(m) == x)
            and dom.src(m) in closed
            and dom.dst(m) in closed
        ]
        for y in cands:
            obj_img[x] = y
            ok = True
            for m in touching:
                opts = codt.hom(obj_img[dom.src(m)], obj_img[dom.dst(m)])
                if dom.is_we(m):
                    opts = [o for o in opts if o in codt._weids]
                if not opts:
                    ok = False
                    break
            if ok:
                obj_rec(i + 1, obj_img)
        del obj_img[x]

    obj_rec(0, {})
    out.sort(key=lambda f: tuple(codt._idx[f(x)] for x in objs))
    if cod.is_poset_backed:
        # thin codomain: the object map determines the functor
        return [RelFunctor(dom, cod, f.obj_map) for f in out]
    return out


def count_functors(
    dom: RelCategory, cod: RelCategory, *, guard: CostGuard | None = None
) -> int:
    if dom.is_poset_backed and cod.is_poset_backed:
        return len(enumerate_functors(dom, cod, guard=guard, values_only=True))
    return len(enumerate_functors(dom, cod, guard=guard))


def is_relative_inclusion(f: RelFunctor) -> bool:
    """True when f is injective on objects and morphisms and a morphism of
    the domain is a weak equivalence exactly when its image is one."""
    images = set(f.obj_map.values())
    if len(images) != len(f.obj_map):
        return False
    seen = set()
    for m in f.dom.morphisms():
        fm = f.on_mor(m)
        if fm in seen:
            return False
        seen.add(fm)
        if f.dom.is_we(m) != f.cod.is_we(fm):
            return False
    return True


# --- exponentials ----------------------------------------------------------


def exponential(
    z: RelCategory, y: RelCategory, *, guard: CostGuard | None = None
) -> RelCategory:
    """The relative category of relative functors Y -> Z, for poset-backed
    inputs.  Objects are image tuples over ``y.objects``; an arrow is a
    natural transformation (componentwise order), a weak equivalence one
    whose components are all weak equivalences."""
    z._need_poset()
    y._need_poset()
    funcs = enumerate_functors(y, z, guard=guard, values_only=True)
    rels = []
    wes = []
    for a in funcs:
        for b in funcs:
            if a == b:
                continue
            if all(z.leq(u, v) for u, v in zip(a, b)):
                rels.append((a, b))
                if all(z.is_we((u, v)) for u, v in zip(a, b)):
                    wes.append((a, b))
    return RelCategory.from_poset(funcs, rels, wes)


def functor_from_exponential_object(
    point: tuple, y: RelCategory, z: RelCategory
) -> RelFunctor:
    return RelFunctor(y, z, dict(zip(y.objects, point)))


def transpose(
    f: RelFunctor, x: RelCategory, y: RelCategory, exp: RelCategory | None = None
) -> RelFunctor:
    """Turn f: X x Y -> Z into X -> Z^Y; inverse of :func:`untranspose`."""
    z = f.cod
    if exp is None:
        exp = exponential(z, y)
    obj_map = {
        xo: tuple(f((xo, yo)) for yo in y.objects) for xo in x.objects
    }
    for v in obj_map.values():
        if v not in exp:
            raise ValueError("transpose image is not an object of the exponential")
    return RelFunctor(x, exp, obj_map)


def untranspose(
    g: RelFunctor, y: RelCategory, z: RelCategory, prod: RelCategory | None = None
) -> RelFunctor:
    """Turn g: X -> Z^Y into X x Y -> Z; inverse of :func:`transpose`."""
    x = g.dom
    if prod is None:
        prod = x.product(y)
    pos = {yo: i for i, yo in enumerate(y.objects)}
    obj_map = {(xo, yo): g(xo)[pos[yo]] for xo in x.objects for yo in y.objects}
    return RelFunctor(prod, z, obj_map)


# --- isomorphism search ----------------------------------------------------


def _poset_invariants(c: RelCategory) -> list:
    n = c.n_objects
    down = c._down_masks()
    wedown = c._wedown_masks()
    colors = [
        (
            c._up[i].bit_count(),
            down[i].bit_count(),
            c._wemask[i].bit_count(),
            wedown[i].bit_count(),
        )
        for i in range(n)
    ]
    covers = c.covers()
    succ: list[list[int]] = [[] for _ in range(n)]
    pred: list[list[int]] = [[] for _ in range(n)]
    for a, b in covers:
        succ[c._idx[a]].append(c._idx[b])
        pred[c._idx[b]].append(c._idx[a])
    for _ in range(n.bit_length() + 2):
        sigs = [
            (
                colors[i],
                tuple(sorted(colors[j] for j in succ[i])),
                tuple(sorted(colors[j] for j in pred[i])),
            )
            for i in range(n)
        ]
        # rank signatures in sorted order so the numbering is canonical and
        # color multisets of isomorphic posets stay comparable
        ranking = {sig: r for r, sig in enumerate(sorted(set(sigs)))}
        fresh = [ranking[sig] for sig in sigs]
        if len(set(fresh)) == len(set(colors)):
            colors = fresh
            break
        colors = fresh
    return colors


def find_isomorphism(c: RelCategory, d: RelCategory) -> RelFunctor | None:
    """An isomorphism of relative categories, or None.

    Poset-backed pairs use color refinement plus backtracking; table-backed
    pairs additionally match composition tables and are intended for small
    categories only.
    """
    if c.is_poset_backed != d.is_poset_backed:
        try:
            c, d = c.as_poset(), d.as_poset()
        except ValueError:
            c, d = c.as_table(), d.as_table()
    if c.n_objects != d.n_objects or c.n_morphisms() != d.n_morphisms():
        return None
    if c.n_we_morphisms() != d.n_we_morphisms():
        return None
    if c.is_poset_backed:
        return _find_poset_iso(c, d)
    return _find_table_iso(c, d)


def _find_poset_iso(c: RelCategory, d: RelCategory) -> RelFunctor | None:
    n = c.n_objects
    colc = _poset_invariants(c)
    cold = _poset_invariants(d)
    if sorted(colc) != sorted(cold):
        return None
    cand = [
        [j for j in range(n) if cold[j] == colc[i]] for i in range(n)
    ]
    order = sorted(range(n), key=lambda i: len(cand[i]))
    ddown = d._down_masks()
    dwedown = d._wedown_masks()
    cdown = c._down_masks()
    cwedown = c._wedown_masks()

    mapping = [-1] * n
    used = [False] * n
    pools: list[list[int]] = [[] for _ in range(n)]
    k = 0
    pools[0] = list(cand[order[0]])
    while k >= 0:
        i = order[k]
        if mapping[i] != -1:
            used[mapping[i]] = False
            mapping[i] = -1
        if not pools[k]:
            k -= 1
            continue
        j = pools[k].pop()
        if used[j]:
            continue
        ok = True
        for kk in range(k):
            i2 = order[kk]
            j2 = mapping[i2]
            if (
                ((c._up[i] >> i2) & 1) != ((d._up[j] >> j2) & 1)
                or ((cdown[i] >> i2) & 1) != ((ddown[j] >> j2) & 1)
                or ((c._wemask[i] >> i2) & 1) != ((d._wemask[j] >> j2) & 1)
                or ((cwedown[i] >> i2) & 1) != ((dwedown[j] >> j2) & 1)
            ):
                ok = False
                break
        if not ok:
            continue
        mapping[i] = j
        used[j] = True
        if k == n - 1:
            obj_map = {c.objects[i2]: d.objects[mapping[i2]] for i2 in range(n)}
            return RelFunctor(c, d, obj_map)
        k += 1
        pools[k] = list(cand[order[k]])
    return None


def _find_table_iso(c: RelCategory, d: RelCategory) -> RelFunctor | None:
    # small categories only: try object bijections, then hom-set bijections
    cobjs, dobjs = list(c.objects), list(d.objects)
    n = len(cobjs)

    def obj_sig(cat: RelCategory, x: Obj) -> tuple:
        outs = ins = wout = win = loops = 0
        for m, (s, t) in cat._mor.items():
            if s == x and t != x:
                outs += 1
                wout += m in cat._weids
            if t == x and s != x:
                ins += 1
                win += m in cat._weids
            if s == x and t == x:
                loops += 1
        return (outs, ins, wout, win, loops)

    csig = {x: obj_sig(c, x) for x in cobjs}
    dsig = {x: obj_sig(d, x) for x in dobjs}
    if sorted(csig.values()) != sorted(dsig.values()):
        return None

    def extend_mor(obj_map: dict) -> dict | None:
        cms = sorted(c._mor, key=repr)
        cand: dict = {}
        for m in cms:
            s, t = c._mor[m]
            opts = [
                m2
                for m2, (s2, t2) in d._mor.items()
                if s2 == obj_map[s]
                and t2 == obj_map[t]
                and (m in c._weids) == (m2 in d._weids)
                and (c.is_identity(m)) == (d.is_identity(m2))
            ]
            if not opts:
                return None
            cand[m] = opts
        cms.sort(key=lambda m: len(cand[m]))
        if not cms:
            return {}
        mor_map: dict = {}
        used: set = set()
        pools = {0: list(cand[cms[0]])}
        k = 0
        while k >= 0:
            m = cms[k]
            if m in mor_map:
                used.discard(mor_map.pop(m))
            if not pools[k]:
                k -= 1
                continue
            m2 = pools[k].pop()
            if m2 in used:
                continue
            ok = True
            for f, f2 in list(mor_map.items()):
                if c._mor[f][1] == c._mor[m][0]:
                    h = c._comp[(m, f)]
                    if h in mor_map and mor_map[h] != d._comp[(m2, f2)]:
                        ok = False
                        break
                if c._mor[m][1] == c._mor[f][0]:
                    h = c._comp[(f, m)]
                    if h in mor_map and mor_map[h] != d._comp[(f2, m2)]:
                        ok = False
                        break
            if c._mor[m][1] == c._mor[m][0]:
                h = c._comp[(m, m)]
                if h in mor_map and mor_map[h] != d._comp[(m2, m2)]:
                    ok = False
            if not ok:
                continue
            mor_map[m] = m2
            used.add(m2)
            if k == len(cms) - 1:
                if all(
                    d._comp.get((mor_map[g], mor_map[f])) == mor_map[h]
                    for (g, f), h in c._comp.items()
                ):
                    return dict(mor_map)
                continue
            k += 1
            pools[k] = list(cand[cms[k]])
        return None

    for perm in itertools.permutations(dobjs):
        obj_map = dict(zip(cobjs, perm))
        if any(csig[x] != dsig[obj_map[x]] for x in cobjs):
            continue
        mor_map = extend_mor(obj_map)
        if mor_map is not None:
            f = RelFunctor(c, d, obj_map, mor_map)
            try:
                f.validate()
            except AssertionError:
                continue
            return f
    return None
