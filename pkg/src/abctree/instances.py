"""A concrete family where cuts give an exponential win: disjoint triangles.

Maximum independent set on ``m`` disjoint triangles has optimum ``m`` (one
vertex per triangle) while the relaxation packs ``1/2`` on every vertex for
value ``3m/2``: the gap to close is ``m/2``.  Branching on any vertex
forces its triangle's contribution from ``3/2`` down to ``1`` on both
sides, a bound improvement of ``1/2`` left and right, and leaves the other
triangles untouched.  Summing a triangle's three edge constraints and
rounding gives the clique inequality ``x_u + x_v + x_w <= 1``, also worth
exactly ``1/2``.  So the abstract model has ``ell = r = c = 1/2`` with
constant decay, no relaxation solver needed.

One cut per triangle closes the gap with ``m`` cuts and no branching at
all (``m + 1`` nodes counting the final leaf), while the branch-only proof
needs depth ``m`` and ``2**(m+1) - 1`` nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .closed_form import CutCountAnswer, delta_star, optimal_cuts_equal_lr
from .core import CutDecay, ParameterError, SvbcParams


@dataclass(frozen=True)
class TriangleInstance:
    m: int
    lp_value: Fraction
    ip_value: Fraction
    gap: Fraction


def triangle_instance(m: int) -> TriangleInstance:
    if m < 1:
        raise ParameterError("need at least one triangle")
    return TriangleInstance(
        m=m,
        lp_value=Fraction(3 * m, 2),
        ip_value=Fraction(m),
        gap=Fraction(m, 2),
    )


def derive_model(m: int) -> tuple[SvbcParams, Fraction]:
    """Abstract parameters and target bound for ``m`` disjoint triangles."""
    inst = triangle_instance(m)
    half = Fraction(1, 2)
    return SvbcParams(ell=half, r=half, c=half, decay=CutDecay.CONSTANT), inst.gap


def optimal_plan(m: int) -> CutCountAnswer:
    """Optimal cut count for the derived model: one cut per triangle.

    The optimal branching depth is 0 here (cut strength matches branch
    strength), so the whole gap is closed by cuts.
    """
    params, bound = derive_model(m)
    answer = optimal_cuts_equal_lr(bound, params.r, params.c)
    assert answer.k_star == m
    assert delta_star(params.r, params.c) == 0
    return answer


def pure_branching_size(m: int) -> int:
    """Node count of the branch-only proof: a complete tree of depth m."""
    if m < 1:
        raise ParameterError("need at least one triangle")
    return 2 ** (m + 1) - 1
