"""Exact enumeration and Monte Carlo tools for the stack-sorting map and its depth statistics."""

from .core_perm import (
    Hook, Perm, SizeGuardError, all_perms, del_r, foata, format_perm, normalize,
    parse_perm, right_to_left_maxima, split_by_hook,
)
from .sorting_maps import (
    apply_map, depth_under, iterate, pop_stack, revstack, sd, sd_prime, stack_sort,
)
from .fertility import (
    FertilityCache, catalan, exact_depth_average, fertility, image_counts,
    preimages_brute, wt_table,
)
from .weak_order import leq_left, leq_right, value_swap_check
from .partition_dynamics import (
    ballot_lower_bound, ballot_probability, eta, is_quarantined, run_dynamics,
)
from .montecarlo import EstimateReport, estimate, sample_values
from .analytic_bounds import bounds_table, golomb_dickman, li
from .reporting import VerifyResult, emit, run_verify

__version__ = "0.1.0"

__all__ = [
    "Hook", "Perm", "SizeGuardError", "all_perms", "del_r", "foata", "format_perm",
    "normalize", "parse_perm", "right_to_left_maxima", "split_by_hook", "apply_map",
    "depth_under", "iterate", "pop_stack", "revstack", "sd", "sd_prime", "stack_sort",
    "FertilityCache", "catalan", "exact_depth_average", "fertility", "image_counts",
    "preimages_brute", "wt_table", "leq_left", "leq_right", "value_swap_check",
    "ballot_lower_bound", "ballot_probability", "eta", "is_quarantined", "run_dynamics",
    "EstimateReport", "estimate", "sample_values", "bounds_table", "golomb_dickman",
    "li", "VerifyResult", "emit", "run_verify",
]
