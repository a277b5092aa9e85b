"""Finite relative categories: subdivision calculus, certified inclusions
with explicit witnesses, truncated bisimplicial nerves, and checkable
verification suites for the structural claims tying them together."""

from .core import (
    CostGuard,
    CostGuardExceeded,
    RelCategory,
    RelFunctor,
    enumerate_functors,
    exponential,
    find_isomorphism,
    inclusion_functor,
    karrow,
)
from .dwyer import (
    DwyerWitness,
    check_co_dwyer,
    check_dwyer,
    check_dwyer_explain,
    compose_dwyer,
    pushout_along_sieve,
    transport_sdr_along_pushout,
    transport_sdr_along_retract,
    xi_t_cosieve_witness,
)
from .homotopy import (
    HomotopyEquivalence,
    SDRWitness,
    StrictHomotopy,
    Zigzag,
    find_sdr,
    he_compose,
    he_two_of_three_right,
    k_homotopy,
    subdivide_homotopy,
    subdivide_homotopy_equivalence,
)
from .subdivision import (
    Subdivision,
    subdivide,
    subdivide_functor,
    subdivide_initial,
    subdivide_terminal,
)
from .props import PROPS, PropReport, run_prop

__all__ = [
    "CostGuard",
    "CostGuardExceeded",
    "DwyerWitness",
    "HomotopyEquivalence",
    "PROPS",
    "PropReport",
    "RelCategory",
    "RelFunctor",
    "SDRWitness",
    "StrictHomotopy",
    "Subdivision",
    "Zigzag",
    "check_co_dwyer",
    "check_dwyer",
    "check_dwyer_explain",
    "compose_dwyer",
    "enumerate_functors",
    "exponential",
    "find_isomorphism",
    "find_sdr",
    "he_compose",
    "he_two_of_three_right",
    "inclusion_functor",
    "k_homotopy",
    "karrow",
    "pushout_along_sieve",
    "run_prop",
    "subdivide",
    "subdivide_functor",
    "subdivide_homotopy",
    "subdivide_homotopy_equivalence",
    "subdivide_initial",
    "subdivide_terminal",
    "transport_sdr_along_pushout",
    "transport_sdr_along_retract",
    "xi_t_cosieve_witness",
]
