"""Power lattices and their combinatorics.

A power lattice is a finite semimodular ranked lattice in which every atom
has at most one power per rank and the total atom valuation determines the
rank.  On top of that sit P-complexes and their shellings, matroids given
by independence or basis axioms, weighted graphic matroids, order complexes
with exact simplicial homology, and the Stanley-Reisner ideal with its
polarization to a squarefree simplicial model.
"""

from .lattice import (
    BudgetError,
    CheckResult,
    Element,
    LatticeError,
    LatticeInputError,
    NotALatticeError,
    PowerLattice,
    VerificationReport,
    atom_power,
    covers,
    factorization,
    join_of_factorization,
    leq_valuationwise,
    min_rule_compare,
    rank_lex_compare,
    valuation,
    verify_power_lattice,
)
from .instances import (
    BooleanLattice,
    DivisorLattice,
    HasseLattice,
    MultisetLattice,
    ProductLattice,
    SubspaceLattice,
    build_boolean,
    build_divisor,
    build_hasse,
    build_multiset,
    build_product,
    build_subspace,
    lattice_from_obj,
)
from .pcomplex import (
    PComplex,
    ShellingReport,
    find_shelling,
    generate,
    sort_by_rank_lex,
    sphere,
    verify_shelling,
)
from .ordercomplex import (
    OrderShellingReport,
    SimplicialComplex,
    SimplicialShellingReport,
    WedgeReport,
    check_wedge,
    compare_reverse_lex,
    compare_shelling_order,
    complex_order_shelling_check,
    maximal_chains,
    order_complex,
    reduced_betti,
    reduced_betti_mod2,
    sphere_order_shelling_check,
    verify_pure_simplicial_shelling,
)
from .matroid import (
    Edge,
    Matroid,
    WeightedGraph,
    bases,
    check_equal_rank,
    dual_exchange_witness,
    graph_from_obj,
    graph_lattice,
    graph_to_obj,
    graphic_matroid,
    independence_complex,
    is_independent_edge_multiset,
    matroid_shelling,
    uniform_matroid,
    verify_basis_axioms,
    verify_independence_axioms,
    weighted_graph,
)
from .stanley_reisner import (
    MonomialIdeal,
    Multicomplex,
    PolarizedIdeal,
    PolarizedShellingReport,
    SectionCheck,
    depolarize,
    divides,
    export_ideal,
    find_nonpure_shelling,
    intersect_monomial_ideals,
    irreducible_ideal,
    meets_of_facets,
    minimal_nonfaces,
    monomial_gcd,
    monomial_label,
    monomial_lcm,
    multicomplex_from_pcomplex,
    polar_label,
    polar_monomial_label,
    polar_universe,
    polarize_ideal,
    polarize_monomial,
    polarized_complex,
    polarized_shelling,
    section_ring_check,
    verify_nonpure_shelling,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
