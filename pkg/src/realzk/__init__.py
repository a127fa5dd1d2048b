"""Integer cohomology rings of real moment-angle complexes.

Given a finite simplicial complex K on vertex set [m], this package computes
the integer cohomology ring of the associated cube subcomplex (coordinates in
a simplex range over the interval, the rest over its endpoints) by two
independent routes that cross-validate each other:

  * a fast combinatorial route through the support-mask decomposition of a
    monomial differential graded algebra, and
  * a direct cellular route over the 3^m-cell product decomposition.
"""

from .algebra import Cochain, Monomial, differential, mul, normalize, omega_basis
from .cellular import (
    Cell,
    CellCochain,
    CellularContext,
    epsilon,
    interval_cup,
    oracle_cohomology,
    oracle_cup,
    theta_inverse,
    theta_transport,
)
from .complexes import (
    SimplicialComplex,
    from_facets,
    full_simplex,
    load_complex,
    loads_complex,
    polygon,
    random_complex,
    simplex_boundary,
)
from .errors import (
    ComplexInconsistencyError,
    InvalidComplexError,
    NotInSpanError,
    RealzkError,
    SizeLimitError,
)
from .fixtures import fixture_names, load_fixture
from .hochster import (
    HochsterTable,
    betti_and_torsion,
    betti_numbers,
    hochster_table,
    lambda_transport,
    reduced_cohomology,
)
from .intlinalg import (
    CohomologyGroup,
    IntegerCochainComplex,
    SmithDecomposition,
    express_in_quotient,
    smith_normal_form,
)
from .ring import (
    RingPresentation,
    build_ring,
    compare_rings,
    representative_independence_check,
)

__version__ = "0.1.0"

__all__ = [
    "Cochain",
    "Monomial",
    "normalize",
    "mul",
    "differential",
    "omega_basis",
    "Cell",
    "CellCochain",
    "CellularContext",
    "epsilon",
    "interval_cup",
    "oracle_cohomology",
    "oracle_cup",
    "theta_inverse",
    "theta_transport",
    "SimplicialComplex",
    "from_facets",
    "full_simplex",
    "load_complex",
    "loads_complex",
    "polygon",
    "random_complex",
    "simplex_boundary",
    "RealzkError",
    "InvalidComplexError",
    "SizeLimitError",
    "ComplexInconsistencyError",
    "NotInSpanError",
    "fixture_names",
    "load_fixture",
    "HochsterTable",
    "hochster_table",
    "betti_and_torsion",
    "betti_numbers",
    "lambda_transport",
    "reduced_cohomology",
    "CohomologyGroup",
    "IntegerCochainComplex",
    "SmithDecomposition",
    "smith_normal_form",
    "express_in_quotient",
    "RingPresentation",
    "build_ring",
    "compare_rings",
    "representative_independence_check",
    "__version__",
]
