"""Worsening cuts: harmonic decay, exact inverses, and near-optimal plans.

When the k-th cut on a root path improves the bound by ``c/k``, the total
improvement from ``k`` root cuts is ``c * H(k)`` with ``H`` the harmonic
series, so the cuts needed to prove a bound grow exponentially in it: both
pure cutting and pure branching are exponential, and the interesting
question is how to split the work.  With equal branch improvements, a
cut-and-branch tree whose branching component has depth ``delta`` needs
``kappa_bar(delta) = harmonic_inverse((Z - delta*r)/c)`` cuts and has size
``kappa_bar(delta) + 2**(delta+1) - 1``.

``harmonic_inverse`` has no closed form, but is tightly sandwiched:
``e**(x-1) <= harmonic_inverse(x) < e**x`` for ``x > 1``.  That makes the
size, as a function of ``delta``, a sum of a decaying exponential and
``2**(delta+1)``; minimizing smooth lower/upper envelopes of it pins the
optimal depth to within a couple of integers, which is what
:func:`approx_cut_count` exploits: it evaluates the true size at the two
roundings of the envelope minimizer plus the one depth past the envelope's
validity range, and keeps the best.

Exactness policy: harmonic numbers are exact rationals.  Comparisons
``H(k) >= x`` use the exact cached prefix sums for small ``k``; for large
``k`` they use a certified bracket (consecutive truncations of the
enveloping asymptotic series for ``H``, evaluated at 60 significant
digits, bracket width below ``1/(120 k**4)``) and fall back to an exact
divide-and-conquer rational sum in the inconclusive case.  Floats appear
only in the envelope functions and continuous minimizers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .core import DomainError, ParameterError
from .rational import RationalLike, as_rational

_EULER_GAMMA = 0.5772156649015329

# Exact prefix sums H(0), H(1), ...; grown on demand.
_HARMONIC_CACHE: list[Fraction] = [Fraction(0)]

# Largest k the exact cache will grow to on behalf of a comparison; the
# certified bracket takes over beyond it.
_EXACT_CMP_LIMIT = 5000

# harmonic_inverse(x) ~ e**(x - gamma) nodes; past this the answer cannot
# even be enumerated, let alone used.
_MAX_INVERSE_EXPONENT = 50


def harmonic(k: int) -> Fraction:
    """Exact k-th harmonic number ``1 + 1/2 + ... + 1/k``; ``H(0) = 0``."""
    if k < 0:
        raise DomainError("harmonic needs k >= 0")
    while len(_HARMONIC_CACHE) <= k:
        n = len(_HARMONIC_CACHE)
        _HARMONIC_CACHE.append(_HARMONIC_CACHE[-1] + Fraction(1, n))
    return _HARMONIC_CACHE[k]


def _harmonic_unreduced(a: int, b: int) -> tuple[int, int]:
    """Numerator/denominator (not reduced) of ``sum(1/i for i in a..b)``."""
    if a == b:
        return 1, a
    mid = (a + b) // 2
    n1, d1 = _harmonic_unreduced(a, mid)
    n2, d2 = _harmonic_unreduced(mid + 1, b)
    return n1 * d2 + n2 * d1, d1 * d2


def _cmp_harmonic_exact(k: int, x: Fraction) -> int:
    num, den = _harmonic_unreduced(1, k)
    lhs = num * x.denominator
    rhs = x.numerator * den
    return (lhs > rhs) - (lhs < rhs)


def _cmp_harmonic_certified(k: int, x: Fraction) -> int | None:
    """Sign of ``H(k) - x`` from a rigorous bracket, or None if too close.

    ``H(k) = euler_gamma + psi(k+1)`` and the asymptotic series for psi is
    enveloping for real positive arguments: truncating after the
    ``-1/(12 t**2)`` term undershoots, adding ``+1/(120 t**4)`` overshoots.
    """
    with mpmath.mp.workdps(60):
        t = mpmath.mpf(k + 1)
        under = mpmath.ln(t) - 1 / (2 * t) - 1 / (12 * t**2)
        over = under + 1 / (120 * t**4)
        slack = mpmath.mpf(10) ** -50
        lo = mpmath.mp.euler + under - slack
        hi = mpmath.mp.euler + over + slack
        xv = mpmath.mpf(x.numerator) / x.denominator
        if lo > xv:
            return 1
        if hi < xv:
            return -1
    return None


def _cmp_harmonic(k: int, x: Fraction) -> int:
    """Sign of ``H(k) - x``, always correct."""
    if k < len(_HARMONIC_CACHE) or k <= _EXACT_CMP_LIMIT:
        h = harmonic(k)
        return (h > x) - (h < x)
    sign = _cmp_harmonic_certified(k, x)
    if sign is None:
        sign = _cmp_harmonic_exact(k, x)
    return sign


def harmonic_inverse(x: RationalLike) -> int:
    """Smallest ``k >= 0`` with ``H(k) >= x``.

    0 for ``x <= 0`` and 1 for ``x`` in (0, 1].  Beyond that the answer is
    seeded from the asymptotic ``H(k) ~ ln(k + 1/2) + euler_gamma`` (the
    same rounding a well-known conjecture gives for integer ``x``) and then
    moved to the exact crossing with certified comparisons, so the returned
    ``k`` always satisfies ``H(k) >= x`` and ``H(k-1) < x``.
    """
    x = as_rational(x)
    if x <= 0:
        return 0
    if x <= 1:
        return 1
    if x > _MAX_INVERSE_EXPONENT:
        raise DomainError(
            f"harmonic_inverse of {float(x):.3g} exceeds ~e**{_MAX_INVERSE_EXPONENT}"
        )
    k = max(1, int(math.exp(float(x) - _EULER_GAMMA) + 0.5))
    while k > 1 and _cmp_harmonic(k - 1, x) >= 0:
        k -= 1
    while _cmp_harmonic(k, x) < 0:
        k += 1
    return k


def kappa_bar(
    Z: RationalLike, r: RationalLike, c: RationalLike, delta: int
) -> int:
    """Minimum cuts so a depth-``delta`` branching component finishes the
    proof under harmonic decay: ``harmonic_inverse((Z - delta*r)/c)``."""
    Z, r, c = as_rational(Z), as_rational(r), as_rational(c)
    if c <= 0:
        raise ParameterError("kappa_bar needs c > 0")
    return harmonic_inverse((Z - delta * r) / c)


def delta_hat_star(Z: RationalLike, r: RationalLike, c: RationalLike) -> int:
    """``floor((Z - c)/r)``: the largest depth where the size envelopes of
    :func:`size_bounds` are valid."""
    Z, r, c = as_rational(Z), as_rational(r), as_rational(c)
    if r <= 0:
        raise ParameterError("delta_hat_star needs r > 0")
    return math.floor((Z - c) / r)


@dataclass(frozen=True)
class SizeBounds:
    lb: float
    ub: float
    exact: int | None = None


def size_bounds(
    Z: RationalLike, r: RationalLike, c: RationalLike, delta: int
) -> SizeBounds:
    """Size of the depth-``delta`` cut-and-branch tree, exactly or bracketed.

    With ``Z_delta = Z - delta*r``: the size is exactly ``2**(delta+1) - 1``
    when ``Z_delta <= 0`` (no cuts needed) and exactly ``2**(delta+1)`` when
    ``0 < Z_delta <= c`` (one cut suffices).  Otherwise, for
    ``delta <= delta_hat_star``, the exponential envelopes apply:

        lb = e**(Z_delta/c - 1) + 2**(delta+1) - 1
        ub = e**(Z_delta/c)     + 2**(delta+1) - 2

    Past ``delta_hat_star`` with ``Z_delta > c`` the envelopes are unproven
    and a DomainError is raised.
    """
    Z, r, c = as_rational(Z), as_rational(r), as_rational(c)
    if c <= 0 or r <= 0:
        raise ParameterError("size_bounds needs r > 0 and c > 0")
    if delta < 0:
        raise ParameterError("delta must be nonnegative")
    z_delta = Z - delta * r
    if z_delta <= 0:
        n = 2 ** (delta + 1) - 1
        return SizeBounds(float(n), float(n), n)
    if z_delta <= c:
        n = 2 ** (delta + 1)
        return SizeBounds(float(n), float(n), n)
    if delta > delta_hat_star(Z, r, c):
        raise DomainError(
            f"size envelopes unproven at delta={delta} (> floor((Z-c)/r))"
        )
    xexp = float(z_delta / c)
    branch_part = 2.0 ** (delta + 1)
    return SizeBounds(
        lb=math.exp(xexp - 1.0) + branch_part - 1.0,
        ub=math.exp(xexp) + branch_part - 2.0,
    )


def continuous_minimizers(
    Z: RationalLike, r: RationalLike, c: RationalLike
) -> tuple[float, float]:
    """Real-valued minimizers ``(delta_lb, delta_ub)`` of the size envelopes.

    Both envelopes are strictly convex in ``delta`` (decaying exponential
    plus ``2**(delta+1)``); setting derivatives to zero gives

        delta_lb = (c*ln(r/(c ln2)) + Z - c*(1 + ln2)) / (r + c ln2)
        delta_ub = (c*ln(r/(c ln2)) + Z - c*ln2)       / (r + c ln2)

    Their gap is exactly ``c / (r + c ln2)``, always in (0, 1.5), so the two
    envelopes point at essentially the same depth.
    """
    Z, r, c = as_rational(Z), as_rational(r), as_rational(c)
    if r <= 0 or c <= 0:
        raise ParameterError("continuous_minimizers needs r > 0 and c > 0")
    rf, cf, zf = float(r), float(c), float(Z)
    ln2 = math.log(2.0)
    denom = rf + cf * ln2
    common = cf * math.log(rf / (cf * ln2)) + zf
    d_lb = (common - cf * (1.0 + ln2)) / denom
    d_ub = (common - cf * ln2) / denom
    gap = cf / denom
    assert 0.0 < gap < 1.5 and abs((d_ub - d_lb) - gap) < 1e-9
    return d_lb, d_ub


@dataclass(frozen=True)
class SvbwcPlan:
    """Chosen depth/cut count and the candidate table it was picked from."""

    chosen_delta: int
    num_cuts: int
    tree_size: int
    candidates: tuple[tuple[int, int, int], ...]  # (delta, cuts, size)


def approx_cut_count(
    Z: RationalLike, r: RationalLike, c: RationalLike
) -> SvbwcPlan:
    """Near-optimal cut count under harmonic decay (equal branching).

    Evaluates the exact tree size ``kappa_bar(delta) + 2**(delta+1) - 1`` at
    the floor and ceiling of the upper envelope's continuous minimizer and
    at ``delta_hat_star + 1`` (the only depth past the envelopes' validity
    that can still be optimal), and returns the best.  The result is within
    a factor ``max(8, e**(1 + r/c))`` of the true minimum size.
    """
    Z, r, c = as_rational(Z), as_rational(r), as_rational(c)
    if r <= 0 or c <= 0:
        raise ParameterError("approx_cut_count needs r > 0 and c > 0")
    _, d_ub = continuous_minimizers(Z, r, c)
    deltas = sorted(
        {
            max(0, math.floor(d_ub)),
            max(0, math.ceil(d_ub)),
            max(0, delta_hat_star(Z, r, c) + 1),
        }
    )
    candidates = []
    for delta in deltas:
        cuts = kappa_bar(Z, r, c, delta)
        candidates.append((delta, cuts, cuts + 2 ** (delta + 1) - 1))
    chosen = min(candidates, key=lambda t: (t[2], t[0]))
    return SvbwcPlan(
        chosen_delta=chosen[0],
        num_cuts=chosen[1],
        tree_size=chosen[2],
        candidates=tuple(candidates),
    )


@dataclass(frozen=True)
class MinSizeAnswer:
    size: int
    delta: int
    num_cuts: int


def min_tree_size(Z: RationalLike, r: RationalLike, c: RationalLike) -> MinSizeAnswer:
    """Exact minimal tree size under harmonic decay with equal branching
    and unit node time.

    Cuts can always be migrated to the root without growing the tree, and
    with equal branch improvements a cut-and-branch tree of branching depth
    ``delta`` has size ``kappa_bar(delta) + 2**(delta+1) - 1``; scanning all
    depths up to the pure-branching depth is therefore exhaustive.
    """
    Z, r, c = as_rational(Z), as_rational(r), as_rational(c)
    if c <= 0:
        raise ParameterError("min_tree_size needs c > 0")
    if Z <= 0:
        return MinSizeAnswer(size=1, delta=0, num_cuts=0)
    dmax = 0 if r <= 0 else max(0, math.ceil(Z / r))
    best: MinSizeAnswer | None = None
    for delta in range(dmax, -1, -1):
        cuts = kappa_bar(Z, r, c, delta)
        size = cuts + 2 ** (delta + 1) - 1
        if best is None or size < best.size or (size == best.size and delta < best.delta):
            best = MinSizeAnswer(size=size, delta=delta, num_cuts=cuts)
    return best
