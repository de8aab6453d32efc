"""Minimum sumset, difference-set, and signed-sumset sizes over finite abelian groups.

Closed-form evaluators, explicit extremal witness constructions, exact
search with certificates, an exhaustive verifier for the difference-size
formula on small groups, and checkers for the combinatorial inequalities
behind the bounds.
"""

from .constructions import WitnessReport, coset_progression, lex_prefix, product_construction
from .errors import (
    DomainError,
    GroupMismatchError,
    InvalidElementError,
    NodeBudgetExceeded,
    UnsupportedRegimeError,
)
from .formulas import (
    conjectured_min_difference_size,
    difference_size_status,
    min_difference_size_vector_space,
    min_self_sumset_size,
    min_sumset_size,
    predicted_min_signed_sumset_size,
)
from .groups import (
    GroupSpec,
    divisors,
    enumerate_abelian_groups,
    invariant_factors,
    restricted_divisor_set,
    subgroup_of_order,
)
from .search import (
    SearchCertificate,
    SearchOptions,
    search_minimum,
    verify_conjecture,
)
from .setops import GroupSubset, difference_set, negate_set, signed_sumset_2, sumset, translate

__version__ = "0.1.0"
