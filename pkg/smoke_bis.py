import time

t0 = time.time()

from relcat.core import (
    RelCategory,
    RelFunctor,
    karrow,
    find_isomorphism,
    CostGuardExceeded,
    inclusion_functor,
)
from relcat.dwyer import check_dwyer, pushout_along_sieve
from relcat.bisimplicial import (
    Cell,
    bisset_product,
    boundary_delta,
    classical_nerve,
    delta,
    diagonal,
    diagonal_map,
    grid_category,
    homology,
    homology_iso_certificate,
    involution,
    id_vals,
    k_xi,
    k_xi_detailed,
    nerve_N,
    nerve_N_xi,
    nerve_pushout_comparison,
    pi0_table,
    pi_star,
    row,
    row_map,
    unit_eta,
    xi_grid,
)
from relcat.subdivision import subdivide

# --- delta / boundary ---------------------------------------------------
d00 = delta(0, 0, 2, 2)
for pq, n in d00.size_table().items():
    assert n == 1, (pq, n)
assert all(
    len(v) == (1 if pq == (0, 0) else 0) for pq, v in d00.cells.items()
)

d10 = delta(1, 0, 2, 2)
assert d10.n_simplices(1, 0) == 3
assert len(d10.cells[(1, 0)]) == 1
assert len(d10.cells[(0, 0)]) == 2
d10.validate()

bd00, inc00 = boundary_delta(0, 0, 1, 1)
assert all(n == 0 for n in bd00.size_table().values())
inc00.validate()

bd10, inc10 = boundary_delta(1, 0, 2, 2)
assert len(bd10.cells[(0, 0)]) == 2
assert all(len(v) == 0 for k, v in bd10.cells.items() if k != (0, 0))
inc10.validate()

bd11, inc11 = boundary_delta(1, 1, 2, 2)
assert len(bd11.cells[(0, 0)]) == 4
assert len(bd11.cells[(1, 0)]) == 2
assert len(bd11.cells[(0, 1)]) == 2
assert len(bd11.cells[(1, 1)]) == 0
inc11.validate()

d11 = delta(1, 1, 2, 2)
d11.validate()
assert len(d11.cells[(1, 1)]) == 1
print("delta ok", round(time.time() - t0, 2))

# --- nerves ---------------------------------------------------------------
one_min = karrow(1, "minimal")
one_max = karrow(1, "maximal")

n_min = nerve_N(one_min, 2, 2)
assert n_min.n_simplices(1, 0) == 3, n_min.n_simplices(1, 0)
assert n_min.n_simplices(0, 1) == 2, n_min.n_simplices(0, 1)
assert n_min.n_simplices(0, 0) == 2

n_max = nerve_N(one_max, 2, 2)
assert n_max.n_simplices(1, 1) == 6, n_max.n_simplices(1, 1)
n_max.validate()

nxi_min = nerve_N_xi(one_min, 1, 1)
assert nxi_min.n_simplices(0, 0) == 2
assert nxi_min.n_simplices(1, 1) == 3
nxi_min.validate()

# maximal target blows up at (1,1): refusal is certified
try:
    nerve_N_xi(one_max, 1, 1)
    raise SystemExit("expected a guard refusal")
except CostGuardExceeded as e:
    assert e.lower_bound == 2**22, e.lower_bound

ps = pi_star(one_min, 1, 1)
ps.validate()

# grid budget refusal
try:
    xi_grid(2, 2, budget=200)
    raise SystemExit("budget not enforced")
except CostGuardExceeded as e:
    assert e.lower_bound is not None and e.lower_bound > 200

cn = classical_nerve(one_max, 3)
assert [cn.n_simplices(k) for k in range(4)] == [2, 3, 4, 5]
assert [len(cn.cells[k]) for k in range(4)] == [2, 1, 0, 0]
cn.validate()
try:
    classical_nerve(one_min, 2)
    raise SystemExit("classical nerve accepted a non-maximal category")
except ValueError:
    pass

# rows and diagonal
r0 = row(n_max, 0)
assert [r0.n_simplices(k) for k in range(3)] == [2, 3, 4]
diag = diagonal(n_max)
assert diag.n_simplices(0) == 2
assert diag.n_simplices(1) == n_max.n_simplices(1, 1)
diag.validate()
print("nerves ok", round(time.time() - t0, 2))

# --- homology -------------------------------------------------------------
h = homology(diagonal(nerve_N(one_max, 3, 3)), 2)
assert str(h.group(0)) == "Z" and h.group(1).is_zero and h.group(2).is_zero, str(h)

h2 = homology(cn, 2)
assert str(h2.group(0)) == "Z" and h2.group(1).is_zero

two = RelCategory.from_poset(["a", "b"], [])
h3 = homology(diagonal(nerve_N(two, 2, 2)), 1)
assert h3.group(0).rank == 2 and h3.group(1).is_zero

ps13 = pi_star(one_min, 1, 3, budget=4000)
for p in (0, 1):
    rm = row_map(ps13, p)
    rm.validate()
    cert = homology_iso_certificate(rm, 1)
    assert cert.ok, (p, str(cert))
print("homology ok", round(time.time() - t0, 2))

# --- involution -----------------------------------------------------------
inv = involution(n_max)
inv.validate()
assert inv.size_table() == n_max.size_table()

# --- product --------------------------------------------------------------
pr = bisset_product(n_min, n_min)
assert pr.n_simplices(1, 0) == 9
pr.validate()

# --- nerve pushout comparison ----------------------------------------------
sub = one_max.full_subcategory([0])
i = inclusion_functor(sub, one_max)
point = RelCategory.from_poset(["*"], [])
s = RelFunctor(sub, point, {0: "*"})
res = pushout_along_sieve(i, s)
po, cmp_map = nerve_pushout_comparison(
    i, s, res.d, res.j, res.t, 2, 2
)
cmp_map.validate()
dmc = diagonal_map(cmp_map)
dmc.validate()
cert2 = homology_iso_certificate(dmc, 1)
assert cert2.ok, cert2
print("pushout comparison ok", round(time.time() - t0, 2))

# --- K_xi -----------------------------------------------------------------
kp = k_xi(delta(0, 0, 0, 0))
assert kp.n_objects == 1

kres10 = k_xi_detailed(delta(1, 0, 1, 0))
xi10 = subdivide(grid_category(1, 0), "xi").category
assert kres10.poset.n_objects == xi10.n_objects == 5
assert find_isomorphism(kres10.poset, xi10) is not None

kb10 = k_xi(boundary_delta(1, 0, 1, 0)[0])
assert kb10.n_objects == 2 and kb10.n_morphisms() == 2
print("k_xi small ok", round(time.time() - t0, 2))

k11 = k_xi_detailed(delta(1, 1, 1, 1))
xi11 = subdivide(grid_category(1, 1), "xi").category
assert k11.poset.n_objects == xi11.n_objects == 45, k11.poset.n_objects
assert k11.poset.n_morphisms() == xi11.n_morphisms()
assert k11.poset.n_we_morphisms() == xi11.n_we_morphisms()
assert find_isomorphism(k11.poset, xi11) is not None
top = k11.place[Cell(1, 1, (id_vals(1), id_vals(1)))]
assert len(set(top.obj_map.values())) == 45

kb11 = k_xi(boundary_delta(1, 1, 1, 1)[0])
assert kb11.n_objects == 16, kb11.n_objects
print("k_xi(1,1) ok", round(time.time() - t0, 2))

# --- unit -----------------------------------------------------------------
eta00 = unit_eta(0, 0, 1, 1)
eta00.validate()
assert eta00.is_levelwise_bijective()

eta10 = unit_eta(1, 0, 1, 0)
eta10.validate()
p0_dom = pi0_table(eta10.dom)
p0_cod = pi0_table(eta10.cod)
pairs = {
    (p0_dom[raw], p0_cod[eta10.apply(eta10.dom.simplex(0, 0, raw)).cell.raw])
    for raw in eta10.dom._raws[(0, 0)]
}
assert len(pairs) == len(set(a for a, _ in pairs)) == len(set(b for _, b in pairs))
assert len(set(p0_cod.values())) == len(set(b for _, b in pairs))

print("bisimplicial ok", round(time.time() - t0, 2), "s")
