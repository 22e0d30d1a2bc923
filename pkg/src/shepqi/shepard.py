"""Stable evaluation of multinode Shepard weights and their leakage bounds.

A weight for interval i at point x is the inverse of the product of
|x - blend point| over that interval's blend set, raised to an even power mu
and normalized across intervals.  Written directly, those products overflow
or underflow for realistic parameters, so everything here runs in the log
domain: per-set log-distance sums are shifted by their minimum before
exponentiation, which is exact algebra and keeps every intermediate in
[0, 1].  Points landing exactly on a blend point are a measure-zero special
case resolved by cancelling the shared singular factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .covering import Covering
from .errors import InvalidInputError

__all__ = [
    "ShepardBasis",
    "basis_eval",
    "weights_batch",
    "f_mu_bound",
    "verify_lemma_bound",
    "LemmaReport",
]

FLUSH_THRESHOLD = 1e-300  # weights below this are exact zero for our purposes
_CHUNK = 4096


def _validate_mu(mu: int) -> int:
    if mu <= 0 or mu % 2 != 0:
        raise InvalidInputError(f"exponent mu must be a positive even integer, got {mu}")
    return int(mu)


@dataclass(frozen=True)
class ShepardBasis:
    """The blend sets of a covering plus the sharpness exponent mu."""

    blend_sets: np.ndarray  # (M, K), rows sorted
    mu: int

    def __post_init__(self):
        sets = np.array(self.blend_sets, dtype=float)
        if sets.ndim != 2 or sets.shape[1] < 1:
            raise InvalidInputError("blend_sets must be a (M, K) array")
        if not np.all(np.isfinite(sets)):
            raise InvalidInputError("blend points must be finite")
        sets.flags.writeable = False
        object.__setattr__(self, "blend_sets", sets)
        object.__setattr__(self, "mu", _validate_mu(self.mu))

    @classmethod
    def from_covering(cls, covering: Covering, mu: int) -> "ShepardBasis":
        return cls(covering.blend_matrix(), mu)

    @property
    def size(self) -> int:
        return self.blend_sets.shape[0]

    @property
    def n_blend(self) -> int:
        return self.blend_sets.shape[1]


def _flush_and_normalize(w: np.ndarray) -> np.ndarray:
    w /= w.sum(axis=-1, keepdims=True)
    small = w < FLUSH_THRESHOLD
    if small.any():
        w[small] = 0.0
        w /= w.sum(axis=-1, keepdims=True)
    return w


def _exact_hit_weights(basis: ShepardBasis, x: float) -> np.ndarray:
    """Limit weights at a blend point: cancel the common singular factor.

    Sets not containing x get exactly 0; sets containing it split according
    to their remaining distance products (1 for a sole owner, 1/2 each for a
    symmetric shared point).
    """
    sets = basis.blend_sets
    hit_rows = np.nonzero((sets == x).any(axis=1))[0]
    logs = np.empty(hit_rows.size)
    for out_i, row in enumerate(hit_rows):
        d = np.abs(x - sets[row])
        logs[out_i] = np.log(d[d > 0.0]).sum()
    w = np.zeros(basis.size)
    shifted = np.exp(-basis.mu * (logs - logs.min()))
    w[hit_rows] = shifted / shifted.sum()
    return _flush_and_normalize(w)


def weights_batch(basis: ShepardBasis, xs: np.ndarray) -> np.ndarray:
    """(P, M) weight matrix; rows are convex coefficients summing to 1."""
    xs = np.asarray(xs, dtype=float)
    if not np.all(np.isfinite(xs)):
        raise InvalidInputError("evaluation points must be finite")
    sets = basis.blend_sets
    m, k = sets.shape
    out = np.empty((xs.size, m))
    flat = xs.ravel()
    for start in range(0, flat.size, _CHUNK):
        block = flat[start:start + _CHUNK]
        logsum = np.zeros((block.size, m))
        hit = np.zeros(block.size, dtype=bool)
        with np.errstate(divide="ignore", invalid="ignore"):
            for kk in range(k):
                diff = np.abs(block[:, None] - sets[None, :, kk])
                hit |= (diff == 0.0).any(axis=1)
                logsum += np.log(diff)
            shifted = np.exp(
                -basis.mu * (logsum - logsum.min(axis=1, keepdims=True))
            )
            w = _flush_and_normalize(shifted)
        for i in np.nonzero(hit)[0]:
            w[i] = _exact_hit_weights(basis, float(block[i]))
        out[start:start + _CHUNK] = w
    return out.reshape(xs.shape + (m,)) if xs.ndim else out[0]


def basis_eval(basis: ShepardBasis, x: float) -> np.ndarray:
    """Weight vector at a single point."""
    return weights_batch(basis, np.array([float(x)]))[0]


def f_mu_bound(gap: float, h: float, k: int, n_blend: int, mu: int) -> float:
    """Closed-form envelope on how much weight leaks into a neighbour set.

    For two same-width intervals a distance ``gap`` apart, each carrying
    ``n_blend`` equispaced blend points, this bounds the far interval's
    weight at points of the near interval's k-th blend slot.  Evaluated in
    the log domain (log-factorials plus a log-sum-exp for the two denominator
    terms); underflow returns exactly 0.
    """
    mu = _validate_mu(mu)
    K = int(n_blend)
    if K < 2:
        raise InvalidInputError(f"need at least two blend points, got {K}")
    if not 1 <= k <= K - 1:
        raise InvalidInputError(f"slot k must be in 1..{K - 1}, got {k}")
    if h <= 0:
        raise InvalidInputError(f"interval width must be positive, got {h}")
    if gap < 0:
        raise InvalidInputError(f"gap must be nonnegative, got {gap}")

    log_num = math.lgamma(k + 1) + math.lgamma(K - k + 1)
    # product_{j=1..K} (K - k + j) == (2K - k)! / (K - k)!
    log_term1 = math.lgamma(2 * K - k + 1) - math.lgamma(K - k + 1)
    if gap == 0:
        log_den = log_term1
    elif math.isinf(gap):
        return 0.0
    else:
        log_term2 = K * (math.log(K + 1) + math.log(gap) - math.log(h))
        log_den = np.logaddexp(log_term1, log_term2)
    try:
        return math.exp(mu * (log_num - log_den))
    except OverflowError:  # pragma: no cover - bound is <= 1 by construction
        return math.inf


@dataclass(frozen=True)
class LemmaReport:
    """Sampled check that weights never exceed their closed-form envelope."""

    max_ratio: float
    slot_ratios_left: np.ndarray  # per slot k, max B/F with x in the left set
    slot_ratios_right: np.ndarray

    @property
    def holds(self) -> bool:
        return self.max_ratio <= 1.0


def verify_lemma_bound(
    left_lo: float,
    right_lo: float,
    width: float,
    n_blend: int,
    mu: int,
    samples_per_slot: int = 1000,
) -> LemmaReport:
    """Sample the two-interval geometry and compare weights against bounds.

    The intervals are [left_lo, left_lo+width] and [right_lo, right_lo+width]
    with equal widths and a nonnegative separation; each carries ``n_blend``
    equispaced blend points.  For x between consecutive blend points of one
    set, the other set's weight must stay below the envelope for that slot.
    """
    if width <= 0:
        raise InvalidInputError("interval width must be positive")
    if right_lo < left_lo + width:
        raise InvalidInputError(
            "right interval must not start before the left one ends"
        )
    K = int(n_blend)
    gap = right_lo - (left_lo + width)
    xi = np.vstack([
        left_lo + np.arange(1, K + 1) * width / (K + 1),
        right_lo + np.arange(1, K + 1) * width / (K + 1),
    ])
    basis = ShepardBasis(xi, mu)

    ratios_l = np.empty(K - 1)
    ratios_r = np.empty(K - 1)
    for k in range(1, K):
        for side, ratios, far in ((0, ratios_l, 1), (1, ratios_r, 0)):
            xs = np.linspace(
                xi[side, k - 1], xi[side, k], samples_per_slot + 2
            )[1:-1]
            w_far = weights_batch(basis, xs)[:, far]
            slot = k if side == 0 else K - k
            bound = f_mu_bound(gap, width, slot, K, mu)
            ratios[k - 1] = float(w_far.max() / bound)
    return LemmaReport(
        max_ratio=float(max(ratios_l.max(), ratios_r.max())),
        slot_ratios_left=ratios_l,
        slot_ratios_right=ratios_r,
    )
