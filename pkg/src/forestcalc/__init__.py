"""Exact-arithmetic calculus on rooted-tree Hopf algebras.

Canonical rooted trees and forests, the Connes-Kreimer coproduct and
antipode, character convolution with Birkhoff renormalization, the free
pre-Lie and NAP algebras, the extraction-contraction Hopf algebra and the
B-series composition/substitution laws, concrete operads, and axiom checkers
for related binary structures.
"""

from .forests import (
    EMPTY_FOREST,
    Forest,
    RootedTree,
    b_plus,
    canonical_form,
    enumerate_forests,
    enumerate_trees,
    leaf,
    parse_forest,
    parse_tree,
    symmetry_factor,
)
from .ck_hopf import TensorSum, TreeSum, antipode, coproduct, counit, reduced_coproduct
from .conv import (
    Functional,
    RATIONAL,
    Ring,
    character_from_tree_values,
    conv_exp,
    conv_inverse,
    conv_log,
    convolve,
    dual_basis,
    is_character,
    is_infinitesimal_character,
    unit_functional,
)
from .renorm import (
    BirkhoffPair,
    LaurentSeries,
    WindowOverflowError,
    birkhoff,
    bogoliubov_prepare,
    default_window,
    laurent_ring,
    ms_project,
    rota_baxter_check,
)
from .prelie import (
    bch,
    graft,
    grafting_counts,
    magnus_omega,
    m_action,
    omega_map,
    pre_lie_morphism,
    project_to_trees,
    sharp_inverse,
    sharp_product,
    star_exp,
    star_exp_product,
    w_map,
)
from .nap import butcher_product, nap_morphism
from .substitution import (
    coaction,
    contraction_coproduct,
    h_antipode,
    h_coproduct,
    substitution_star,
)
from .vector_fields import (
    Poly,
    PolyVectorField,
    cayley,
    elementary_differential,
    frozen_cayley,
    parse_vector_field,
    vf_frozen_nap,
    vf_prelie,
)
from .bseries import (
    BSeries,
    HSeriesMap,
    bseries_compose,
    bseries_eval,
    bseries_substitute,
    rk_to_bseries,
    substituted_field,
    unit_bseries,
)
from .operads import (
    AssocOperad,
    ComOperad,
    PreLieOperad,
    block_substitution,
    operad_axiom_suite,
    prelie_insert,
)
from .structures import (
    AlgebraCarrier,
    DendriformCarrier,
    ProductTable,
    dendriform_axiom_check,
    derived_prelie,
    half_shuffles,
    novikov_prototype,
    shuffle_axiom_sweep,
    shuffle_carrier,
    structure_axiom_check,
)

__version__ = "0.1.0"
