"""Hodge and Newton polygons for L-functions of generalized Kloosterman sums."""
from .cyclotomic import CyclotomicInteger, pi_adic_valuation
from .ffield import ExtensionField, FieldElement
from .graded import GradedElement, ReductionResult, graded_multiply, jacobian_term, reduce_monomial
from .kernels import BACKEND
from .lattice import (
    BasisSet,
    KloostermanFamily,
    basis_cardinality_formula,
    cofacial,
    e_star,
    enumerate_basis,
    weight,
)
from .lfunc import (
    BudgetExceeded,
    LPolynomial,
    consistency_check_extra_sum,
    exponential_sum,
    l_polynomial,
    newton_polygon_bruteforce,
)
from .ordinarity import (
    ordinary_sufficient_estar,
    ordinary_sufficient_faces,
    smith_normal_form,
    coprime_slope_sequence,
)
from .polygon import INF, Polygon, compare, hodge_polygon, newton_polygon

__version__ = "0.1.0"
