"""Complexity invariants of periodic weighted graphs and Mahler measures.

Public surface re-exported here for convenience; submodules remain the
authoritative home of each piece.
"""

from .errors import (
    GraphMahlerError,
    InputError,
    InternalInconsistencyError,
    SizeRefusalError,
)
from .laurent import (
    ExactDivisionError,
    LaurentMatrix,
    LaurentPoly,
    det_laurent,
    divides,
    exact_divide,
    format_poly,
    parse_poly,
)
from .intmat import (
    SmithForm,
    bareiss_determinant,
    gcd_minors,
    smith_normal_form,
    torsion_order,
)
from .graphs import (
    ComponentInfo,
    EdgeOrbit,
    PeriodicGraph,
    component_orbits,
    disjoint_union,
    graph_from_dict,
    graph_to_dict,
    grid_graph,
    integer_laplacian,
    laplacian_matrix,
    laplacian_polynomial,
    parse_graph,
    serialize_graph,
)
from .quotients import (
    ComplexityReport,
    FiniteQuotientGraph,
    GrowthEntry,
    GrowthSeries,
    LatticeSpec,
    companion_quotient_laplacian,
    complexity,
    cyclic_family,
    growth_series,
    growth_series_csv,
    minimal_vector_length,
    quotient_graph,
    scaled_family,
)
from .mahler import (
    MahlerResult,
    grid_graph_polynomial,
    is_measure_one,
    mahler_jensen,
    mahler_measure,
    mahler_quadrature,
)
from .oracles import crsf_polynomial, spanning_tree_sum
from .lehmer import (
    LEHMER_POLYNOMIAL,
    LehmerExperimentReport,
    SearchHit,
    WindingDecomposition,
    lehmer_experiment,
    lehmer_palindromic,
    palindrome_decompose,
    realize_periodic_graph,
    search_results_csv,
    search_small_measure,
    single_orbit_quotient_complexity,
)

__version__ = "0.1.0"
