"""Independent brute-force enumeration of branch-and-cut trees.

Ground truth for the exact searches: within explicit limits, recursively
generate every tree (a node is a leaf exactly when the residual bound is
met, since extending a finished path only adds time; otherwise it may take
a cut child or two branch children) and keep the minimum-time one.

Deliberately no memoization: results must not inherit correctness from the
dynamic program this oracle is meant to check.  The only shortcut is a
symmetry reduction when both branch improvements are equal, in which case
the two children of a branch node face identical subproblems and one
enumeration serves both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    BRANCH,
    CUT,
    LEAF,
    BcTree,
    InfeasibleError,
    OptResult,
    ParameterError,
    SvbcParams,
    TimeFn,
)
from .rational import RationalLike, as_rational


@dataclass(frozen=True)
class EnumLimits:
    """Search caps: path length (edges), total nodes, cuts per path."""

    max_depth: int
    max_nodes: int
    max_cuts_per_path: int

    def __post_init__(self) -> None:
        if min(self.max_depth, self.max_nodes, self.max_cuts_per_path) < 1:
            raise ParameterError("all enumeration limits must be >= 1")


def enumerate_min(
    params: SvbcParams, w: TimeFn, Z: RationalLike, limits: EnumLimits
) -> OptResult:
    """True minimum tree time within ``limits``, with one witness tree.

    Instances whose branch-only proof does not fit in ``max_depth`` are
    refused outright, so the reported minimum is trustworthy rather than an
    artifact of truncation.  ``max_nodes`` is a safety valve checked on the
    returned witness, not a search dimension.
    """
    Z = as_rational(Z)
    if Z > 0:
        if params.ell <= 0:
            raise InfeasibleError("branch-only proof impossible with ell = 0")
        if math.ceil(Z / params.ell) > limits.max_depth:
            raise InfeasibleError(
                "branch-only proof needs depth "
                f"{math.ceil(Z / params.ell)} > max_depth={limits.max_depth}"
            )

    def search(g: Fraction, z: int, depth_left: int):
        if g <= 0:
            return w(z), (LEAF,)
        if depth_left == 0:
            return None
        best = None
        if params.c > 0 and z < limits.max_cuts_per_path:
            sub = search(g - params.cut_gain(z), z + 1, depth_left - 1)
            if sub is not None:
                best = (w(z) + sub[0], (CUT, sub[1]))
        if params.ell == params.r:
            sub = search(g - params.ell, z, depth_left - 1)
            if sub is not None:
                cand = (w(z) + 2 * sub[0], (BRANCH, sub[1], sub[1]))
                if best is None or cand[0] < best[0]:
                    best = cand
        else:
            left = search(g - params.ell, z, depth_left - 1)
            right = search(g - params.r, z, depth_left - 1)
            if left is not None and right is not None:
                cand = (w(z) + left[0] + right[0], (BRANCH, left[1], right[1]))
                if best is None or cand[0] < best[0]:
                    best = cand
        return best

    found = search(Z, 0, limits.max_depth)
    if found is None:
        raise InfeasibleError("no proving tree within the enumeration limits")
    witness = BcTree.from_shape(params, found[1])
    if witness.num_nodes > limits.max_nodes:
        raise InfeasibleError(
            f"minimal tree has {witness.num_nodes} nodes > max_nodes={limits.max_nodes}"
        )
    result = OptResult.from_witness(witness, w)
    assert result.tau == found[0]
    return result
