"""Exact computations with the rank-one Witt algebra over small prime fields:
automorphism orbits, canonical forms with witnesses, orbit-closure
hypersurfaces on both the algebra and its dual, and the per-prime resolution
of the height-(p-1) closure dichotomy.
"""

from .ffield import (
    FieldCtx,
    FieldElem,
    FieldError,
    RootBoundError,
    embed,
    make_field,
    multiplicative_order,
    nth_root,
    subfield_decode,
)
from .sympoly import MultiPoly, divides, evaluate, poly_parse, poly_str, substitute, triangular_invert, weighted_components
from .trunc import Automorphism, TruncPoly, act_dual, act_witt, aut_invert, sym_action, tp_compose
from .witt import (
    Character,
    InternalCheckError,
    WittElem,
    as_endo,
    basis,
    basis_dual,
    bracket,
    char_phi,
    char_phi_symbolic,
    d_power,
    p_power,
)
from .worbit import (
    ClosureDataW,
    OrbitClassW,
    WitnessW,
    ZeroOrbitError,
    canonicalize_w,
    compute_closure_w,
    in_closure_w,
    same_orbit_w,
)
from .dorbit import (
    ClosureDataDual,
    ConditionalClosureError,
    HeightP1Report,
    OrbitClassDual,
    StabilizerDual,
    canonicalize_dual,
    compute_closure_dual,
    height,
    in_closure_dual,
    invariants_check,
    resolve_height_p1,
    same_orbit_dual,
    stabilizer_dual,
)
from .suites import SUITE_NAMES, SuiteReport, run_suite

__version__ = "0.1.0"
