"""Exact integer homology for finitely generated chain complexes.

Matrices are sparse dictionaries over arbitrary-precision integers and are
reduced by Smith elimination with a unit-pivot fast path, so ranks and
invariant factors are exact.  The mapping-cone certificate downgrades
"induces isomorphisms on H0..Hk" to a finite check: the cone's homology
vanishes through degree k and the two top groups agree abstractly.  That
check is sufficient: vanishing below the top degree gives isomorphisms
directly from the long exact sequence, and at the top it gives a
surjection between abstractly isomorphic finitely generated abelian
groups, which is always an isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field

Entries = dict[tuple[int, int], int]


def smith_diagonal(entries: Entries, rows: int, cols: int) -> list[int]:
    """Nonzero diagonal of the Smith normal form, in divisibility order.

    The length is the rank; entries of absolute value > 1 are the invariant
    factors of the cokernel's torsion.
    """
    row: dict[int, dict[int, int]] = {}
    colidx: dict[int, set[int]] = {}
    for (i, j), v in entries.items():
        if not (0 <= i < rows and 0 <= j < cols):
            raise ValueError(f"entry {(i, j)} outside a {rows}x{cols} matrix")
        if v:
            row.setdefault(i, {})[j] = v
            colidx.setdefault(j, set()).add(i)

    def set_entry(i: int, j: int, v: int) -> None:
        r = row.setdefault(i, {})
        if v:
            r[j] = v
            colidx.setdefault(j, set()).add(i)
        else:
            if j in r:
                del r[j]
                colidx[j].discard(i)

    def add_row(dst: int, src: int, factor: int) -> None:
        if not factor:
            return
        for j, v in list(row.get(src, {}).items()):
            set_entry(dst, j, row.get(dst, {}).get(j, 0) + factor * v)

    def add_col(dst: int, src: int, factor: int) -> None:
        if not factor:
            return
        for i in list(colidx.get(src, set())):
            v = row[i].get(src, 0)
            set_entry(i, dst, row[i].get(dst, 0) + factor * v)

    diag: list[int] = []
    while True:
        pivot = None
        best = None
        for i, r in row.items():
            for j, v in r.items():
                a = abs(v)
                fill = len(r) + len(colidx[j])
                key = (a != 1, a, fill)
                if best is None or key < best:
                    best = key
                    pivot = (i, j)
                    if key[:2] == (False, 1) and fill <= 2:
                        break
            else:
                continue
            break
        if pivot is None:
            break
        pi, pj = pivot
        while True:
            v = row[pi][pj]
            if v < 0:
                for j in list(row[pi]):
                    set_entry(pi, j, -row[pi][j])
                v = -v
            # clear the pivot column, then the pivot row; division with
            # remainder may leave smaller residues that become the pivot
            moved = False
            for i in list(colidx.get(pj, set())):
                if i == pi:
                    continue
                q = row[i][pj] // v
                add_row(i, pi, -q)
                if row.get(i, {}).get(pj):
                    pi = i
                    moved = True
                    break
            if moved:
                continue
            for j in list(row.get(pi, {})):
                if j == pj:
                    continue
                q = row[pi][j] // v
                add_col(j, pj, -q)
                if row[pi].get(j):
                    pj = j
                    moved = True
                    break
            if moved:
                continue
            offender = None
            for i, r in row.items():
                if i == pi:
                    continue
                for j, u in r.items():
                    if u % v:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(pi, offender, 1)
        diag.append(abs(row[pi][pj]))
        del row[pi]
        colidx[pj].discard(pi)
    return diag


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group: free rank plus invariant factors."""

    rank: int
    torsion: tuple[int, ...] = ()

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class HomologySummary:
    """Homology groups in degrees 0..len(groups)-1, exact."""

    groups: tuple[AbelianGroup, ...]

    def group(self, k: int) -> AbelianGroup:
        return self.groups[k]

    def __str__(self) -> str:
        return "; ".join(f"H{k}={g}" for k, g in enumerate(self.groups))


@dataclass
class ChainComplex:
    """Nonnegatively graded complex of free Z-modules up to a top degree.

    ``dims[n]`` is the rank of the degree-n term for 0 <= n <= top;
    ``diff[n]`` holds the matrix of d: C_n -> C_{n-1} for 1 <= n <= top.
    """

    dims: dict[int, int]
    diff: dict[int, Entries]
    _smith_cache: dict[int, list[int]] = field(default_factory=dict, repr=False)

    @property
    def top(self) -> int:
        return max(self.dims) if self.dims else -1

    def validate(self) -> None:
        for n in range(self.top + 1):
            if n not in self.dims:
                raise AssertionError(f"missing dimension at degree {n}")
        for n in range(1, self.top + 1):
            mat = self.diff.get(n, {})
            for (i, j), v in mat.items():
                if not (0 <= j < self.dims[n] and 0 <= i < self.dims[n - 1]):
                    raise AssertionError(f"entry {(i, j)} out of range at {n}")
        for n in range(2, self.top + 1):
            prod: Entries = {}
            for (i, j), v in self.diff.get(n, {}).items():
                for (k, i2), w in self.diff.get(n - 1, {}).items():
                    if i2 == i:
                        prod[(k, j)] = prod.get((k, j), 0) + w * v
            if any(prod.values()):
                raise AssertionError(f"d.d != 0 between degrees {n} and {n - 2}")

    def _smith(self, n: int) -> list[int]:
        if n not in self._smith_cache:
            if n < 1 or n > self.top:
                self._smith_cache[n] = []
            else:
                self._smith_cache[n] = smith_diagonal(
                    self.diff.get(n, {}), self.dims[n - 1], self.dims[n]
                )
        return self._smith_cache[n]

    def homology(self, k: int) -> AbelianGroup:
        """Homology at degree k; requires data one degree above (boundaries
        into degree k must be present)."""
        if k < 0 or k + 1 > self.top:
            raise ValueError(
                f"homology at {k} needs chain data through degree {k + 1}"
            )
        rank_in = len(self._smith(k + 1))
        rank_out = len(self._smith(k))
        betti = self.dims[k] - rank_in - rank_out
        torsion = tuple(d for d in self._smith(k + 1) if d > 1)
        return AbelianGroup(betti, torsion)


def check_chain_map(
    dom: ChainComplex, cod: ChainComplex, blocks: dict[int, Entries]
) -> None:
    """Assert the blocks commute with the differentials degreewise."""
    top = min(dom.top, cod.top)
    for n in range(1, top + 1):
        lhs: Entries = {}
        for (i, j), v in dom.diff.get(n, {}).items():
            for (k, i2), w in blocks.get(n - 1, {}).items():
                if i2 == i:
                    lhs[(k, j)] = lhs.get((k, j), 0) + w * v
        rhs: Entries = {}
        for (i, j), v in blocks.get(n, {}).items():
            for (k, i2), w in cod.diff.get(n, {}).items():
                if i2 == i:
                    rhs[(k, j)] = rhs.get((k, j), 0) + w * v
        keys = set(lhs) | set(rhs)
        if any(lhs.get(key, 0) != rhs.get(key, 0) for key in keys):
            raise AssertionError(f"blocks do not commute with d at degree {n}")


def mapping_cone(
    dom: ChainComplex, cod: ChainComplex, blocks: dict[int, Entries]
) -> ChainComplex:
    """Cone of a chain map, graded so degree n holds dom_{n-1} (+) cod_n."""
    check_chain_map(dom, cod, blocks)
    top = min(dom.top + 1, cod.top)
    dims = {}
    diff: dict[int, Entries] = {}
    for n in range(top + 1):
        dims[n] = dom.dims.get(n - 1, 0) + cod.dims.get(n, 0)
    for n in range(1, top + 1):
        entries: Entries = {}
        off_row = dom.dims.get(n - 2, 0)
        off_col = dom.dims.get(n - 1, 0)
        for (i, j), v in dom.diff.get(n - 1, {}).items():
            entries[(i, j)] = -v
        for (i, j), v in blocks.get(n - 1, {}).items():
            entries[(off_row + i, j)] = entries.get((off_row + i, j), 0) + v
        for (i, j), v in cod.diff.get(n, {}).items():
            key = (off_row + i, off_col + j)
            entries[key] = entries.get(key, 0) + v
        diff[n] = {k: v for k, v in entries.items() if v}
    cone = ChainComplex(dims, diff)
    cone.validate()
    return cone


@dataclass(frozen=True)
class IsoCertificate:
    """Evidence that a chain map induces isomorphisms on H0..H_{up_to}."""

    up_to: int
    cone_groups: tuple[AbelianGroup, ...]
    dom_groups: tuple[AbelianGroup, ...]
    cod_groups: tuple[AbelianGroup, ...]

    @property
    def ok(self) -> bool:
        return all(g.is_zero() for g in self.cone_groups) and all(
            a == b for a, b in zip(self.dom_groups, self.cod_groups)
        )

    def __str__(self) -> str:
        lines = []
        for k in range(self.up_to + 1):
            lines.append(
                f"H{k}: dom {self.dom_groups[k]}, cod {self.cod_groups[k]}, "
                f"cone {self.cone_groups[k]}"
            )
        verdict = "iso certified" if self.ok else "NOT certified"
        return f"{verdict} through H{self.up_to}\n" + "\n".join(lines)


def h_iso_certificate(
    dom: ChainComplex,
    cod: ChainComplex,
    blocks: dict[int, Entries],
    up_to: int,
) -> IsoCertificate:
    """Certify degreewise homology isomorphism through ``up_to``.

    Needs both complexes through degree up_to + 1.
    """
    if dom.top < up_to + 1 or cod.top < up_to + 1:
        raise ValueError(
            f"certificate through H{up_to} needs chain data through degree "
            f"{up_to + 1} on both sides"
        )
    cone = mapping_cone(dom, cod, blocks)
    cone_groups = tuple(cone.homology(k) for k in range(up_to + 1))
    dom_groups = tuple(dom.homology(k) for k in range(up_to + 1))
    cod_groups = tuple(cod.homology(k) for k in range(up_to + 1))
    return IsoCertificate(up_to, cone_groups, dom_groups, cod_groups)
