"""Exact arithmetic for even integral lattices and hyperkähler lattice questions."""
from .catalog import (
    DeformationType,
    assignment_to_k3,
    bb_lattice,
    e6_dual,
    epw,
    fibre_admits_section,
    gamma_v,
    hyperbolic_plane,
    lagrangian_section_lattice,
    lambda8,
    lambda24,
    lambda26,
    named_lattice,
    rank_one,
)
from .criteria import (
    InducedReport,
    MukaiVector,
    algebraic_part_candidates,
    classify_mukai_vector,
    contains_U,
    eichler_equivalent,
    embed_corank1,
    induced_check,
    isotropy_obstruction,
    mukai_pairing,
    numerical_moduli_check,
    split_U,
)
from .discform import (
    FiniteQuadraticForm,
    TwoElemInvariants,
    discriminant_form,
    isotropic_subgroups,
    nikulin_equal,
    overlattice_from_isotropic,
    primitive_gluings,
    subgroup,
    two_elementary_invariants,
)
from .errors import *  # noqa: F401,F403
from .expr import format_expr, lattice_from_expr, parse_lattice_expr
from .isometry import (
    Isometry,
    disc_action,
    extend_to_unimodular,
    invariant_and_coinvariant,
    make_isometry,
    negated_reflection,
    reflection,
)
from .lattice import (
    Lattice,
    Sublattice,
    direct_sum,
    divisibility,
    is_isometric_small,
    lattice,
    lattice_info,
    orthogonal_complement,
    rescale,
    saturate,
    vectors_of_norm,
)
from .verdict import Verdict

__version__ = "0.1.0"
