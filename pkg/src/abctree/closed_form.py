"""Closed-form cut counts for unit node time and equal branch improvements.

With ``ell = r``, constant cut strength ``0 < c <= r``, and unit node time,
a minimal tree proving bound ``Z`` keeps all its cuts at the root: ``k``
cuts are followed by a complete branching component of depth
``delta_k = max(0, ceil((Z - c*k)/r))`` for ``k + 2**(delta_k+1) - 1``
nodes in total.  Removing one branching layer (2**delta leaves) costs
``kappa(delta-1) - kappa(delta)`` extra cuts, which pins the optimal
branching depth near ``delta_star = floor(log2(ceil(r/c)))`` independently
of ``Z``; the optimal cut count follows from a four-way case split.

Everything here is exact integer / rational arithmetic: ceilings and the
base-2 logarithm are computed on integers, never through floats.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .core import ParameterError
from .rational import RationalLike, as_rational


class KStarCase(enum.Enum):
    """Which case of the optimal-cut-count split produced ``k_star``."""

    DELTA_STAR = "delta_star"
    DELTA_STAR_MINUS_1 = "delta_star_minus_1"
    DEPTH_MAX_MINUS_1 = "depth_max_minus_1"
    ZERO = "zero"


@dataclass(frozen=True)
class CutCountAnswer:
    k_star: int
    case_taken: KStarCase
    min_size_lower_bound: int


def depth_max(Z: RationalLike, r: RationalLike) -> int:
    """Depth of the pure branching proof, ``ceil(Z/r)``; the branching
    component of any cut-and-branch tree never needs to be deeper."""
    Z, r = as_rational(Z), as_rational(r)
    if r <= 0:
        raise ParameterError("depth_max needs r > 0")
    return max(0, math.ceil(Z / r))


def kappa(Z: RationalLike, r: RationalLike, c: RationalLike, delta: int) -> int:
    """Minimum root cuts so that a depth-``delta`` branching component
    finishes proving ``Z``: ``max(0, ceil((Z - delta*r)/c))``."""
    Z, r, c = as_rational(Z), as_rational(r), as_rational(c)
    if c <= 0:
        raise ParameterError("kappa needs c > 0")
    return max(0, math.ceil((Z - delta * r) / c))


def delta_star(r: RationalLike, c: RationalLike) -> int:
    """``floor(log2(ceil(r/c)))`` via exact integer arithmetic."""
    r, c = as_rational(r), as_rational(c)
    if c <= 0:
        raise ParameterError("delta_star needs c > 0")
    n = math.ceil(r / c)
    if n < 1:
        raise ParameterError("delta_star needs r > 0")
    return n.bit_length() - 1


def size_by_cut_count(Z: RationalLike, r: RationalLike, c: RationalLike, k: int) -> int:
    """Size of the cut-and-branch tree with ``k`` root cuts:
    ``k + 2**(delta_k + 1) - 1`` with ``delta_k = max(0, ceil((Z - c*k)/r))``.

    Not monotone in ``k``: one cut can grow the tree while two cuts shrink
    it, which is the pitfall of judging a cut family one round at a time.
    """
    Z, r, c = as_rational(Z), as_rational(r), as_rational(c)
    if r <= 0:
        raise ParameterError("size_by_cut_count needs r > 0")
    if k < 0:
        raise ParameterError("cut count must be nonnegative")
    delta_k = max(0, math.ceil((Z - c * k) / r))
    return k + 2 ** (delta_k + 1) - 1


def optimal_cuts_equal_lr(
    Z: RationalLike, r: RationalLike, c: RationalLike
) -> CutCountAnswer:
    """Optimal number of root cuts minimizing tree size when
    ``0 < c <= ell = r``, plus the implied minimal-size lower bound.

    The four cases compare the cuts needed to strip one branching layer
    (``kappa(delta-1) - kappa(delta)``) against the ``2**delta`` leaves that
    layer holds, around the depth cap ``delta_star``.
    """
    Z, r, c = as_rational(Z), as_rational(r), as_rational(c)
    if not 0 < c <= r:
        raise ParameterError(
            "optimal_cuts_equal_lr requires 0 < c <= r (equal branch improvements)"
        )
    dstar = delta_star(r, c)
    dmax = depth_max(Z, r)
    if Z >= r * dstar:
        gain = kappa(Z, r, c, dstar - 1) - kappa(Z, r, c, dstar)
        if gain >= 2**dstar:
            k_star, case = kappa(Z, r, c, dstar), KStarCase.DELTA_STAR
        else:
            k_star, case = kappa(Z, r, c, dstar - 1), KStarCase.DELTA_STAR_MINUS_1
    elif kappa(Z, r, c, dmax - 1) < 2**dmax:
        k_star, case = kappa(Z, r, c, dmax - 1), KStarCase.DEPTH_MAX_MINUS_1
    else:
        k_star, case = 0, KStarCase.ZERO
    return CutCountAnswer(
        k_star=k_star,
        case_taken=case,
        min_size_lower_bound=size_by_cut_count(Z, r, c, k_star),
    )


def cut_benefit_threshold(r: RationalLike, c: RationalLike) -> Fraction:
    """Bound level ``r * delta_star`` above which minimal trees must cut.

    For any ``Z`` strictly above this value (and any ``0 < c <= ell <= r``),
    every minimal-size tree proving ``Z`` contains at least one cut node:
    ``ceil(r/c)`` root cuts prune the whole last layer of the pure branching
    tree, which has more than ``ceil(r/c)`` leaves once ``Z`` is that large.
    """
    r, c = as_rational(r), as_rational(c)
    if not 0 < c <= r:
        raise ParameterError("cut_benefit_threshold requires 0 < c <= r")
    return r * delta_star(r, c)


def min_cut_count_lower(
    Z: RationalLike, Zbar: RationalLike, c: RationalLike
) -> int:
    """At least ``ceil((Z - Zbar)/c)`` cuts appear in every minimal tree
    proving ``Z`` once ``Z`` exceeds the cut-benefit threshold ``Zbar``."""
    Z, Zbar, c = as_rational(Z), as_rational(Zbar), as_rational(c)
    if c <= 0:
        raise ParameterError("min_cut_count_lower needs c > 0")
    return max(0, math.ceil((Z - Zbar) / c))
