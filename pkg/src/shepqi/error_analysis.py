"""Error metrics and computable bound ingredients for a built interpolant.

Provides the max-error scan on uniform evaluation grids, the L1 error via
composite Gauss-Legendre quadrature over node subintervals, the blend-point
span where the theory's accuracy statements hold, and the two-term sup-norm
bound (local interpolation term plus weight-leakage term) with all of its
constants computed rather than assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InternalInvariantError, InvalidInputError
from .local_fit import eval_model, lebesgue_constant, nodal_polynomial_abs
from .quasi_interp import QuasiInterpolant, eval_batch
from .shepard import f_mu_bound

__all__ = [
    "gauss_legendre",
    "EvaluationGrid",
    "EMaxResult",
    "e_max",
    "e_l1",
    "XiDomain",
    "xi_domain",
    "BoundIngredients",
    "bound_terms",
    "pointwise_bound",
]


# -- quadrature ---------------------------------------------------------------

@lru_cache(maxsize=None)
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.

    Roots of the order-n Legendre polynomial, started from the Chebyshev-like
    guesses and polished to 1e-15; weights via 2 / ((1 - x^2) P'_n(x)^2).
    Self-checks the weight sum and low-order monomials before returning.
    """
    if order < 1:
        raise InvalidInputError(f"quadrature order must be >= 1, got {order}")
    n = order
    i = np.arange(n)
    x = np.cos(np.pi * (i + 0.75) / (n + 0.5))
    for _ in range(100):
        p_prev, p = np.ones_like(x), x.copy()
        for kk in range(2, n + 1):
            p_prev, p = p, ((2 * kk - 1) * x * p - (kk - 1) * p_prev) / kk
        if n == 1:
            p, p_prev = x.copy(), np.ones_like(x)
        dp = n * (x * p - p_prev) / (x * x - 1.0)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    else:  # pragma: no cover
        raise InternalInvariantError("Legendre root iteration did not converge")
    p_prev, p = np.ones_like(x), x.copy()
    for kk in range(2, n + 1):
        p_prev, p = p, ((2 * kk - 1) * x * p - (kk - 1) * p_prev) / kk
    if n == 1:
        p, p_prev = x.copy(), np.ones_like(x)
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order_idx = np.argsort(x)
    x, w = x[order_idx], w[order_idx]

    if abs(w.sum() - 2.0) > 1e-13:
        raise InternalInvariantError("quadrature weights do not sum to 2")
    if n >= 1 and abs(float(w @ x)) > 1e-13:
        raise InternalInvariantError("quadrature fails monomial self-check")
    if n >= 2 and abs(float(w @ x**2) - 2.0 / 3.0) > 1e-13:
        raise InternalInvariantError("quadrature fails monomial self-check")
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


# -- max error on a uniform grid ----------------------------------------------

@dataclass(frozen=True)
class EvaluationGrid:
    """The n_e+1 uniform points a + (b-a) i / n_e, endpoints included."""

    a: float
    b: float
    n_e: int

    def __post_init__(self):
        if self.n_e < 1:
            raise InvalidInputError(f"n_e must be >= 1, got {self.n_e}")

    def points(self) -> np.ndarray:
        i = np.arange(self.n_e + 1)
        return self.a + (self.b - self.a) * i / self.n_e


@dataclass(frozen=True)
class EMaxResult:
    value: float
    argmax: float
    argmax_in_gap: bool


def e_max(q: QuasiInterpolant, f, n_e: int) -> EMaxResult:
    """Max |f - Q| over the uniform n_e-grid, with the offending location."""
    xs = EvaluationGrid(q.a, q.b, n_e).points()
    approx, _ = eval_batch(q, xs)
    err = np.abs(np.asarray(f(xs), dtype=float) - approx)
    i = int(np.argmax(err))
    return EMaxResult(
        value=float(err[i]),
        argmax=float(xs[i]),
        argmax_in_gap=bool(q.in_gap(xs[i])),
    )


# -- L1 error -----------------------------------------------------------------

def e_l1(
    q,
    f,
    panels: np.ndarray | None = None,
    quad_order: int = 20,
) -> float:
    """Composite Gauss-Legendre integral of |f - q| over [a, b].

    Panels default to the node subintervals of the interpolant, which keeps
    the integrand's only kink (the sign change of f - q) localized and treats
    the jump-bracketing panels like any other.  ``q`` may also be a plain
    callable, in which case panels must be supplied.
    """
    if panels is None:
        if not isinstance(q, QuasiInterpolant):
            raise InvalidInputError("panels are required when q is a bare callable")
        panels = q.nodes
    panels = np.asarray(panels, dtype=float)
    if panels.ndim != 1 or panels.size < 2 or not np.all(np.diff(panels) > 0):
        raise InvalidInputError("panels must be a strictly increasing 1-d grid")
    gx, gw = gauss_legendre(quad_order)
    mid = 0.5 * (panels[1:] + panels[:-1])
    half = 0.5 * (panels[1:] - panels[:-1])
    xs = (mid[:, None] + half[:, None] * gx[None, :]).ravel()
    ws = (half[:, None] * gw[None, :]).ravel()
    if isinstance(q, QuasiInterpolant):
        approx, _ = eval_batch(q, xs)
    else:
        approx = np.asarray(q(xs), dtype=float)
    resid = np.abs(np.asarray(f(xs), dtype=float) - approx)
    return float(np.sum(ws * resid))


# -- accuracy domain ----------------------------------------------------------

@dataclass(frozen=True)
class XiDomain:
    """Per continuity piece, the span from the first to the last blend point.

    Inside these spans the approximation follows the local polynomials; in
    the margins outside them (and in the gaps) accuracy degrades.
    """

    spans: tuple[tuple[float, float], ...]

    def contains(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=bool)
        for lo, hi in self.spans:
            out |= (x >= lo) & (x <= hi)
        return out

    def sample(self, per_span: int) -> np.ndarray:
        return np.concatenate(
            [np.linspace(lo, hi, per_span) for lo, hi in self.spans]
        )


def xi_domain(covering) -> XiDomain:
    if covering.n_blend is None:
        raise InvalidInputError("covering has no blend points attached")
    spans: list[tuple[float, float]] = []
    for piece in sorted({ci.piece for ci in covering.intervals}):
        members = covering.piece_slice(piece)
        spans.append(
            (float(members[0].blend_points[0]), float(members[-1].blend_points[-1]))
        )
    return XiDomain(tuple(spans))


# -- sup-norm bound ingredients -------------------------------------------------

@dataclass(frozen=True)
class BoundIngredients:
    max_nodes_per_interval: int  # n_max
    deriv_bound: float  # supplied bound on the relevant derivative orders
    max_overlap_count: int  # sets met by a width-2h window, <= 4
    lebesgue_max: float  # worst extrapolation growth among non-local intervals
    min_gap_width: float
    sup_f: float  # sample-based estimate of ||f||_inf
    series_sum: float  # tail series in the local-term constant
    c1: float
    c2: float
    interp_term: float  # E1: local interpolation contribution
    leakage_term: float  # E2: cross-piece weight leakage contribution

    @property
    def total(self) -> float:
        return self.interp_term + self.leakage_term


def _max_overlap_count(q: QuasiInterpolant) -> int:
    """Sup over anchor points of how many blend sets meet (y-h, y+h].

    A set with span [s, e] intersects the window iff y is in [s-h, e+h), so
    the sup is the maximum stabbing number of those half-open intervals.
    """
    h = q.covering.width
    events: list[tuple[float, int]] = []
    for ci in q.covering.intervals:
        events.append((float(ci.blend_points[0]) - h, 1))
        events.append((float(ci.blend_points[-1]) + h, -1))
    events.sort(key=lambda e: (e[0], e[1]))  # ends close before starts open
    best = cur = 0
    for _, delta in events:
        cur += delta
        best = max(best, cur)
    return best


def _resolve_deriv_bound(deriv_bound, orders) -> float:
    if callable(deriv_bound):
        return max(float(deriv_bound(o)) for o in orders)
    return float(deriv_bound)


def bound_terms(
    q: QuasiInterpolant,
    deriv_bound,
    probe_grid_size: int = 10_000,
    series_rtol: float = 1e-16,
) -> BoundIngredients:
    """Compute the two sup-norm bound terms over the blend-point spans.

    ``deriv_bound`` bounds |f^(c+1)| over the continuity pieces, either as a
    single number or a callable order -> bound (sampled at the orders the
    covering actually needs).  The leakage constant uses the worst Lebesgue
    constant over intervals non-local to some piece and a sample-based sup of
    |f|; with no jumps there is nothing non-local and the leakage term is 0.
    """
    covering = q.covering
    K = covering.n_blend
    h = covering.width
    cards = [ci.node_count for ci in covering.intervals]
    n_max = max(cards)
    if q.mu <= (n_max + 2) / K:
        raise InvalidInputError(
            f"sharpness mu={q.mu} must exceed (n_max+2)/K = {(n_max + 2) / K:g} "
            "for the bound series to converge"
        )

    m_f = _resolve_deriv_bound(deriv_bound, sorted({c + 1 for c in cards}))
    m_h = _max_overlap_count(q)
    if m_h > 4:
        raise InternalInvariantError(
            f"blend-set window count {m_h} exceeds the theoretical cap of 4"
        )

    # tail series sum_{theta>=2} (theta+1)^(n_max+1) / (theta-1/2)^(K mu)
    series = 0.0
    theta = 2
    while True:
        term = (theta + 1) ** (n_max + 1) / (theta - 0.5) ** (K * q.mu)
        series += term
        if term < series_rtol * series or theta > 10_000:
            break
        theta += 1

    c1 = m_f * m_h * (1.0 + 2.0 * 2 ** (n_max + 1) + 2.0 * series)
    interp_term = c1 * max(
        (2.0 * h) ** (c + 1) / math.factorial(c + 1) for c in cards
    )

    pieces = {ci.piece for ci in covering.intervals}
    sup_f = float(np.max(np.abs(q.values)))
    if len(pieces) > 1:
        # every interval is non-local to some other piece
        leb = max(
            lebesgue_constant(ci, _signal_view(q), probe_grid_size)
            for ci in covering.intervals
        )
        gaps = q.gap_intervals()
        min_gap = min(hi - lo for lo, hi in gaps)
        c2 = 2.0 * covering.size * sup_f * (1.0 + leb)
        leakage_term = c2 * f_mu_bound(min_gap, h, K - 1, K, q.mu)
    else:
        leb = 0.0
        min_gap = math.inf
        c2 = 0.0
        leakage_term = 0.0

    return BoundIngredients(
        max_nodes_per_interval=n_max,
        deriv_bound=m_f,
        max_overlap_count=m_h,
        lebesgue_max=leb,
        min_gap_width=min_gap,
        sup_f=sup_f,
        series_sum=series,
        c1=c1,
        c2=c2,
        interp_term=interp_term,
        leakage_term=leakage_term,
    )


def _signal_view(q: QuasiInterpolant):
    """The interpolant's samples as a signal, for the local-fit helpers."""
    from .grid import SampledSignal

    return SampledSignal(q.nodes, q.values)


def pointwise_bound(
    q: QuasiInterpolant, x: float, f_value: float, deriv_bound_local: float
) -> float:
    """Two-term bound on |f(x) - Q(x)| at one point of the blend-point span.

    First term: worst local-interpolation remainder among the intervals
    containing x (nodal polynomial over factorial, scaled by the supplied
    derivative bound).  Second term: the leakage envelope times how large the
    non-containing polynomials get at x.
    """
    xi = xi_domain(q.covering)
    if not bool(xi.contains(np.asarray(x))):
        raise InvalidInputError(
            f"x={x} lies outside the blend-point spans; no bound holds there"
        )
    signal = _signal_view(q)
    covering = q.covering
    K = covering.n_blend
    h = covering.width

    term1 = 0.0
    worst_leak = 0.0
    far_peak = 0.0
    intervals = covering.intervals
    for i, ci in enumerate(intervals):
        if ci.lo <= x <= ci.hi:
            omega = nodal_polynomial_abs(ci, signal, x)
            term1 = max(
                term1,
                deriv_bound_local * omega / math.factorial(ci.node_count + 1),
            )
        else:
            far_peak = max(far_peak, abs(eval_model(q.models[i], x)))
            if i + 1 < len(intervals):
                gap = max(0.0, intervals[i + 1].lo - ci.hi)
                worst_leak = max(worst_leak, f_mu_bound(gap, h, K - 1, K, q.mu))
    term2 = covering.size * (abs(f_value) + far_peak) * worst_leak
    return term1 + term2
