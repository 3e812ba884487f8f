"""Combinatorial star products: exact engine, catalog, probes, states."""

from .catalog import (
    CATALOG_IDS,
    StarProduct,
    build_catalog,
    catalog_poisson,
    equivalence_transform,
    log_canonical_star,
    log_canonical_table,
    nonquadratic_star,
    nonquadratic_table,
    quantum_weyl_star,
    quantum_weyl_table,
    symmetrized_star,
    symmetrized_star_by_averaging,
    translated_star,
    translated_table,
    wick_involution_condition,
    wick_log_canonical_table,
    wick_star,
)
from .params import ParameterCatalog, ParameterRule
from .parsing import ParseError, format_poly, parse_poly
from .poly import NcPolynomial, Polynomial
from .qcomb import PoleAtRootOfUnity, multinomial, q_factorial, q_integer, q_multinomial
from .reduction import (
    PoissonStructure,
    ReductionTrace,
    RelationTable,
    StepLimitExceeded,
    check_overlaps,
    jacobi_check,
    poisson_bracket,
    poisson_from_table,
    reduce_once,
    star_by_reduction,
)
from .scalars import (
    ComplexRing,
    GaussRational,
    RationalQ,
    RationalQRing,
    RationalRing,
    SeriesRing,
    TruncSeries,
    make_ring,
)
from .norms import NormSpec, adic_order, seminorm
from .states import (
    GnsData,
    StateFunctional,
    WickPoint,
    gns_build,
    gram_matrix,
    nonpositivity_witness,
    point_separation_probe,
    psd_check,
    random_wick_point,
    reversal_isomorphism,
    vandermonde_psd_check,
)

__version__ = "0.1.0"
