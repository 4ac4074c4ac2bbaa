"""Exact minimum-time search over branch-and-cut trees.

The search state is ``(g, z)``: the residual bound still to prove and the
number of cut nodes on the path so far.  Node time depends only on ``z``
and the feasible continuations only on ``g``, so the optimal completion
time is a well-defined function of the state (any subtree of an optimal
tree is optimal for its own state) and can be memoized:

    T(g, z) = w(z)                                        if g <= 0
    T(g, z) = w(z) + min( T(g - gain(z), z+1),            cut, if c > 0
                          T(g - ell, z) + T(g - r, z) )   branch, if ell > 0

with ``gain(z)`` the strength of the next cut (constant or harmonic).
This is valid for both decay modes because cut strength depends only on
``z``.  Branching with ``ell = 0`` is never taken: the left child would
face the parent's own state, so the tree strictly beats itself.

Memo keys are exact rationals in lowest terms, so distinct residuals never
alias.  Ties prefer the cut child, then the smaller branching depth, which
makes witnesses deterministic.  Each call owns a private memo table, so
calls on distinct inputs can run concurrently; the table size is capped by
``max_states`` (or the ABC_TREE_MAX_STATES environment variable,
default 10**7) to bound memory.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

from .core import (
    BRANCH,
    CUT,
    LEAF,
    BcNode,
    BcTree,
    InfeasibleError,
    OptResult,
    ParameterError,
    StateLimitError,
    SvbcParams,
    TimeFn,
    tree_time,
)
from .rational import RationalLike, as_rational

_STATE_ENV_VAR = "ABC_TREE_MAX_STATES"
_DEFAULT_MAX_STATES = 10**7


def _state_budget(max_states: int | None) -> int:
    if max_states is not None:
        return max_states
    raw = os.environ.get(_STATE_ENV_VAR)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ParameterError(f"{_STATE_ENV_VAR} must be an integer, got {raw!r}")
    return _DEFAULT_MAX_STATES


def _check_provable(params: SvbcParams, Z: Fraction) -> None:
    # The all-left path only ever gains ell per branch plus cut gains, so
    # with ell = 0 and c = 0 no finite tree reaches a positive bound.
    if Z > 0 and params.c <= 0 and params.ell <= 0:
        raise ParameterError(
            "no finite tree can prove a positive bound with ell = 0 and c = 0"
        )


def min_tree_time(
    params: SvbcParams,
    w: TimeFn,
    Z: RationalLike,
    max_states: int | None = None,
) -> OptResult:
    """Minimum tree time over all trees proving ``Z``, with a witness."""
    Z = as_rational(Z)
    _check_provable(params, Z)
    budget = _state_budget(max_states)
    can_cut = params.c > 0
    can_branch = params.ell > 0

    # memo: (g, z) -> (tau, action); leaf states are not memoized.
    memo: dict[tuple[Fraction, int], tuple[Fraction, str]] = {}

    def leaf_or_memo(g: Fraction, z: int) -> tuple[Fraction, str] | None:
        if g <= 0:
            return (w(z), LEAF)
        return memo.get((g, z))

    stack: list[tuple[Fraction, int]] = [(Z, 0)]
    while stack:
        g, z = stack[-1]
        if leaf_or_memo(g, z) is not None:
            stack.pop()
            continue
        deps: list[tuple[Fraction, int]] = []
        if can_cut:
            deps.append((g - params.cut_gain(z), z + 1))
        if can_branch:
            deps.append((g - params.ell, z))
            deps.append((g - params.r, z))
        missing = [d for d in deps if leaf_or_memo(*d) is None]
        if missing:
            stack.extend(missing)
            continue
        node_cost = w(z)
        best: tuple[Fraction, str] | None = None
        if can_cut:
            best = (node_cost + leaf_or_memo(*deps[0])[0], CUT)
        if can_branch:
            left = leaf_or_memo(g - params.ell, z)[0]
            right = leaf_or_memo(g - params.r, z)[0]
            cand = (node_cost + left + right, BRANCH)
            if best is None or cand[0] < best[0]:
                best = cand
        if len(memo) >= budget:
            raise StateLimitError(
                f"memo exceeded {budget} states; raise {_STATE_ENV_VAR} or max_states"
            )
        memo[(g, z)] = best
        stack.pop()

    witness = _witness_from_memo(params, memo, Z)
    return OptResult.from_witness(witness, w)


def _witness_from_memo(
    params: SvbcParams,
    memo: dict[tuple[Fraction, int], tuple[Fraction, str]],
    Z: Fraction,
) -> BcTree:
    nodes: list[list] = []  # [kind, child ids, gap, cuts]
    stack = [(Z, 0, Fraction(0), -1)]
    while stack:
        g, z, gap, parent = stack.pop()
        action = LEAF if g <= 0 else memo[(g, z)][1]
        node_id = len(nodes)
        nodes.append([action, [], gap, z])
        if parent >= 0:
            nodes[parent][1].append(node_id)
        if action == CUT:
            gain = params.cut_gain(z)
            stack.append((g - gain, z + 1, gap + gain, node_id))
        elif action == BRANCH:
            stack.append((g - params.r, z, gap + params.r, node_id))
            stack.append((g - params.ell, z, gap + params.ell, node_id))
    return BcTree([BcNode(k, tuple(ch), g, z) for k, ch, g, z in nodes])


def pure_branching_size(params: SvbcParams, Z: RationalLike) -> int:
    """Node count of the minimal tree that uses branch nodes only."""
    Z = as_rational(Z)
    if Z > 0 and params.ell <= 0:
        raise ParameterError("pure branching cannot prove a positive bound with ell = 0")
    memo: dict[Fraction, int] = {}

    def size(g: Fraction) -> int:
        if g <= 0:
            return 1
        if g not in memo:
            memo[g] = 1 + size(g - params.ell) + size(g - params.r)
        return memo[g]

    return size(Z)


def pure_branching_time(params: SvbcParams, w: TimeFn, Z: RationalLike) -> Fraction:
    """Minimum tree time over branch-only trees.

    Every node of a branch-only tree sits above zero cuts and costs
    ``w(0) = 1``, so the time equals the minimal node count for any ``w``.
    """
    return Fraction(pure_branching_size(params, Z))


def pure_cutting_time(params: SvbcParams, w: TimeFn, Z: RationalLike) -> Fraction:
    """Time of the minimal cut-only tree: cut until the bound is proven."""
    Z = as_rational(Z)
    total = w(0)
    gap = Fraction(0)
    z = 0
    while gap < Z:
        if params.c <= 0:
            raise ParameterError("pure cutting cannot prove a positive bound with c = 0")
        gap += params.cut_gain(z)
        z += 1
        total += w(z)
    return total


def min_tree_time_root_cuts_only(
    params: SvbcParams, w: TimeFn, Z: RationalLike
) -> OptResult:
    """Minimum tree time over cut-and-branch trees (all cuts at the root).

    For ``k`` root cuts the rest is the forced branch-only tree on the
    residual bound, all of whose nodes cost ``w(k)``; the search stops at
    the first ``k`` whose cuts alone prove the bound, since further cuts
    only add time.
    """
    Z = as_rational(Z)
    _check_provable(params, Z)

    def branch_size(g: Fraction) -> int | None:
        if g <= 0:
            return 1
        if params.ell <= 0:
            return None
        memo: dict[Fraction, int] = {}

        def size(gg: Fraction) -> int:
            if gg <= 0:
                return 1
            if gg not in memo:
                memo[gg] = 1 + size(gg - params.ell) + size(gg - params.r)
            return memo[gg]

        return size(g)

    best_tau: Fraction | None = None
    best_k = 0
    prefix = Fraction(0)  # time of the first k cut nodes
    residual = Z
    k = 0
    while True:
        s = branch_size(residual)
        if s is not None:
            tau = prefix + w(k) * s
            if best_tau is None or tau < best_tau:
                best_tau, best_k = tau, k
        if residual <= 0:
            break
        if params.c <= 0:
            if best_tau is None:
                raise ParameterError("bound unprovable without cuts (ell = 0)")
            break
        prefix += w(k)
        residual -= params.cut_gain(k)
        k += 1
    assert best_tau is not None

    # materialize the witness: best_k cuts then the forced branch tree
    def branch_shape(g: Fraction):
        if g <= 0:
            return (LEAF,)
        return (BRANCH, branch_shape(g - params.ell), branch_shape(g - params.r))

    residual = Z
    shape = branch_shape(
        residual - sum((params.cut_gain(i) for i in range(best_k)), Fraction(0))
    )
    for _ in range(best_k):
        shape = (CUT, shape)
    witness = BcTree.from_shape(params, shape)
    result = OptResult.from_witness(witness, w)
    assert result.tau == best_tau
    return result


def optimal_prefix_cuts(w: TimeFn, k: int) -> int:
    """Given ``k`` cuts that will sit either at the root or immediately
    after the first branch node (on both sides), the number to put at the
    root is the smallest minimizer of ``w(t) - sum(w(i) for i in 0..t-1)``.

    Root cuts are paid once but raise the cost of everything below; cuts
    after the branch are paid twice.  The objective is exactly the net
    change from promoting ``t`` cuts to the root.
    """
    if k < 0:
        raise ParameterError("cut budget must be nonnegative")
    best_t = 0
    best_obj: Fraction | None = None
    prefix = Fraction(0)
    for t in range(k + 1):
        obj = w(t) - prefix
        if best_obj is None or obj < best_obj:
            best_obj, best_t = obj, t
        prefix += w(t)
    return best_t


def cut_threshold_search(
    params: SvbcParams,
    w: TimeFn,
    z_max: RationalLike,
    step: RationalLike,
) -> Fraction | None:
    """Smallest bound in ``{step, 2*step, ...}`` from which cuts stay
    forced through ``z_max``: at it and at every later grid point, every
    minimum-time tree contains a cut node.  None if cuts are not forced at
    ``z_max`` itself.

    A single bound forces cuts when the unrestricted minimum strictly
    beats the best branch-only tree (witnessed by a cut-bearing optimal
    tree).  That property is not monotone in the bound, small bounds can
    force cuts accidentally, so the interesting quantity is where the
    final forced stretch begins.  Table time-functions are rejected: the
    search has no a-priori cap on the cut depth it explores.
    """
    z_max, step = as_rational(z_max), as_rational(step)
    if step <= 0 or z_max <= 0:
        raise ParameterError("cut_threshold_search needs step > 0 and z_max > 0")
    if w.kind == "table":
        raise ParameterError("cut_threshold_search needs an unbounded time-function")

    def forced(bound: Fraction) -> bool:
        best = min_tree_time(params, w, bound)
        if params.ell <= 0:
            return best.num_cuts >= 1
        return best.num_cuts >= 1 and best.tau < pure_branching_time(params, w, bound)

    onset: Fraction | None = None
    bound = step
    while bound <= z_max:
        if forced(bound):
            if onset is None:
                onset = bound
        else:
            onset = None
        bound += step
    return onset
