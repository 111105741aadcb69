"""posetforge: a desk-scale laboratory for finite forcing-style posets.

Finite partial orders, their regular open completions, regular
suborders and projections, two order games, and a zoo of finite
truncations of classical forcing notions, each bundled with the dense
sets and projection maps it is supposed to carry.
"""

from .core import (AntichainSet, FinitePoset, SeparativeQuotient, Suborder,
                   compatible, is_dense_subset, is_predense, make_poset,
                   maximal_antichains, regular_open_closure,
                   separative_quotient)
from .boolalg import (FiniteBooleanAlgebra, PartitionSubalgebra,
                      RegularOpenAlgebra, adjoin, are_codense, completion,
                      free_algebra, generated_subalgebra, is_independent_over,
                      is_independent_set)
from .embeddings import (ProjectionMap, RegularityVerdict,
                         check_projection_map, is_regular_suborder_antichain,
                         is_regular_suborder_completion,
                         is_regular_suborder_pseudoprojection,
                         lower_projection, pseudo_projection,
                         upper_projection)
from .report import CheckReport

__all__ = [
    "AntichainSet", "CheckReport", "FiniteBooleanAlgebra", "FinitePoset",
    "PartitionSubalgebra", "ProjectionMap", "RegularOpenAlgebra",
    "RegularityVerdict", "SeparativeQuotient", "Suborder", "adjoin",
    "are_codense", "check_projection_map", "compatible", "completion",
    "free_algebra", "generated_subalgebra", "is_dense_subset",
    "is_independent_over", "is_independent_set", "is_predense",
    "is_regular_suborder_antichain", "is_regular_suborder_completion",
    "is_regular_suborder_pseudoprojection", "lower_projection", "make_poset",
    "maximal_antichains", "pseudo_projection", "regular_open_closure",
    "separative_quotient", "upper_projection",
]

__version__ = "0.1.0"
