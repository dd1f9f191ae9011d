"""Exact-arithmetic workbench for automorphism orbits.

Subpackages cover: basic-commutator bases (``hall``), coordinate arithmetic
in free nilpotent groups and their rational completions (``nilpotent``),
endomorphisms / orbit canonicalization / transport obstructions (``autos``),
finite groups as Cayley tables (``finite``), interval Boolean rings
(``boolring``), Boolean powers (``bpower``), and a command-line front end
(``cli``).
"""

from .qarith import Q, as_q, is_rational_square
from .hall import enumerate_basis, witt_dimension, commutator_name
from .nilpotent import (
    NilContext,
    NilElement,
    commutator,
    from_word,
    inv,
    lcs_weight,
    mul,
    polynomials,
    pow_,
)
from .autos import (
    EndoSpec,
    apply,
    canonicalize_class2,
    canonicalize_n23,
    center_action_matrix,
    compose,
    identity_endo,
    invert,
    is_automorphism,
    make_endo,
    obstruction_n24,
    obstruction_n33,
    width_class2,
)
from .finite import (
    FiniteGroup,
    GroupMap,
    aut_orbits,
    brute_force_auts,
    exponent_check,
    lcm_closure,
    spectrum,
)
from .boolring import IntervalSet, PLMap, apply_map, build_map, ring_orbit_class
from .bpower import (
    BPAut,
    BPElement,
    GlobalF,
    LocalF,
    RingMap,
    bp_apply,
    bp_canonicalize,
    bp_inv,
    bp_mul,
    bp_order,
    check_c1_relation,
    orbit_bound,
    wreath_mul,
)

__version__ = "0.1.0"
