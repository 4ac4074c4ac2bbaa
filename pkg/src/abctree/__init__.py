"""Exact calculator, optimizer, and verifier for an abstract branch-and-cut
tree model.

The model: a rooted binary tree proves a dual bound; branch nodes improve
the bound by ``(ell, r)`` on their two children, cut nodes by ``c`` (or a
harmonically decaying ``c/k``) on their single child, and a nondecreasing
time-function ``w`` prices each node by the number of cuts above it.  The
package computes optimal cut counts and placements, minimal tree sizes and
times (exactly, in rational arithmetic), and checks the model's claims on
concrete parameter grids.
"""

from .closed_form import (
    CutCountAnswer,
    KStarCase,
    cut_benefit_threshold,
    delta_star,
    depth_max,
    kappa,
    min_cut_count_lower,
    optimal_cuts_equal_lr,
    size_by_cut_count,
)
from .core import (
    BRANCH,
    CUT,
    LEAF,
    BcNode,
    BcTree,
    CutDecay,
    DomainError,
    InfeasibleError,
    OptResult,
    ParameterError,
    StateLimitError,
    SvbcParams,
    TimeFn,
    build_cut_and_branch,
    eval_time_fn,
    proves_bound,
    tree_time,
    tree_to_dot,
)
from .instances import TriangleInstance, derive_model, optimal_plan, triangle_instance
from .optimizer import (
    cut_threshold_search,
    min_tree_time,
    min_tree_time_root_cuts_only,
    optimal_prefix_cuts,
    pure_branching_size,
    pure_branching_time,
    pure_cutting_time,
)
from .oracle import EnumLimits, enumerate_min
from .rational import Rational, as_rational, format_rational, parse_rational
from .svbwc import (
    MinSizeAnswer,
    SizeBounds,
    SvbwcPlan,
    approx_cut_count,
    continuous_minimizers,
    harmonic,
    harmonic_inverse,
    kappa_bar,
    min_tree_size,
    size_bounds,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
