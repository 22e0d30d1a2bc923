"""Per-interval polynomial models and the quantities entering error bounds.

Each cover interval carries one polynomial: either the interpolant through
all of its nodes or a lower-degree least-squares fit (the right choice for
noisy samples).  Fits are performed in a local frame mapping the interval to
[-1, 1] so the involved systems stay well conditioned; interpolants use the
Newton form on Leja-ordered nodes, least-squares fits an orthogonalized
solve.  Both are representation details: a model is just something you can
evaluate anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .covering import CoverInterval
from .errors import InvalidInputError
from .grid import SampledSignal

__all__ = [
    "LocalModel",
    "interpolating_model",
    "least_squares_model",
    "eval_model",
    "nodal_polynomial_abs",
    "lebesgue_constant",
]

_LOG_DOMAIN_CARD = 30  # switch the nodal product to logs beyond this many nodes


@dataclass(frozen=True)
class LocalModel:
    """A polynomial attached to [lo, hi], stored in the mapped frame.

    Interpolating kind: Newton coefficients over ``centers`` (Leja order).
    Least-squares kind: power-basis coefficients, ``centers`` is None.
    """

    lo: float
    hi: float
    kind: str  # "interpolating" | "least_squares"
    degree: int
    coeffs: np.ndarray
    centers: np.ndarray | None = None

    def to_frame(self, x):
        return (2.0 * np.asarray(x, dtype=float) - (self.lo + self.hi)) / (
            self.hi - self.lo
        )

    def to_json_dict(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "kind": self.kind,
            "degree": self.degree,
            "coeffs": [float(c) for c in self.coeffs],
            "centers": None
            if self.centers is None
            else [float(c) for c in self.centers],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "LocalModel":
        return cls(
            lo=float(d["lo"]),
            hi=float(d["hi"]),
            kind=str(d["kind"]),
            degree=int(d["degree"]),
            coeffs=np.array(d["coeffs"], dtype=float),
            centers=None
            if d["centers"] is None
            else np.array(d["centers"], dtype=float),
        )


def _leja_order(t: np.ndarray) -> np.ndarray:
    """Greedy ordering maximizing successive distance products."""
    m = t.size
    order = np.empty(m, dtype=int)
    remaining = list(range(m))
    first = int(np.argmax(np.abs(t)))
    order[0] = first
    remaining.remove(first)
    logprod = np.full(m, 0.0)
    for k in range(1, m):
        with np.errstate(divide="ignore"):
            logprod[remaining] += np.log(np.abs(t[remaining] - t[order[k - 1]]))
        nxt = remaining[int(np.argmax(logprod[remaining]))]
        order[k] = nxt
        remaining.remove(nxt)
    return order


def _newton_coeffs(t: np.ndarray, y: np.ndarray) -> np.ndarray:
    c = y.astype(float).copy()
    for j in range(1, t.size):
        c[j:] = (c[j:] - c[j - 1:-1]) / (t[j:] - t[: t.size - j])
    return c


def interpolating_model(ci: CoverInterval, signal: SampledSignal) -> LocalModel:
    """Exact interpolant through every node of the cover interval."""
    idx = ci.node_indices()
    x = signal.nodes[idx]
    y = signal.values[idx]
    lo, hi = ci.lo, ci.hi
    t = (2.0 * x - (lo + hi)) / (hi - lo)
    order = _leja_order(t)
    t, y = t[order], y[order]
    return LocalModel(lo, hi, "interpolating", t.size - 1, _newton_coeffs(t, y), t)


def least_squares_model(
    ci: CoverInterval, signal: SampledSignal, d_prime: int
) -> LocalModel:
    """Degree-d' least-squares polynomial over the interval's nodes."""
    idx = ci.node_indices()
    if not 0 <= d_prime <= idx.size - 1:
        raise InvalidInputError(
            f"least-squares degree {d_prime} needs between 0 and "
            f"{idx.size - 1} for an interval with {idx.size} nodes"
        )
    x = signal.nodes[idx]
    y = signal.values[idx]
    lo, hi = ci.lo, ci.hi
    t = (2.0 * x - (lo + hi)) / (hi - lo)
    coeffs = npoly.polyfit(t, y, d_prime)
    return LocalModel(lo, hi, "least_squares", d_prime, coeffs)


def eval_model(model: LocalModel, x):
    """Evaluate the model anywhere (polynomials extend globally)."""
    t = model.to_frame(x)
    if model.centers is not None:
        c = model.coeffs
        out = np.full_like(np.asarray(t, dtype=float), c[-1])
        for j in range(c.size - 2, -1, -1):
            out = out * (t - model.centers[j]) + c[j]
    else:
        out = npoly.polyval(t, model.coeffs)
    if np.ndim(x) == 0:
        return float(out)
    return out


def nodal_polynomial_abs(ci: CoverInterval, signal: SampledSignal, x):
    """|product of (x - node)| over the interval's nodes; 0 exactly on them."""
    nodes = signal.nodes[ci.node_indices()]
    diffs = np.abs(np.asarray(x, dtype=float)[..., None] - nodes)
    if nodes.size > _LOG_DOMAIN_CARD:
        with np.errstate(divide="ignore"):
            out = np.exp(np.log(diffs).sum(axis=-1))
    else:
        out = diffs.prod(axis=-1)
    if np.ndim(x) == 0:
        return float(out)
    return out


def lebesgue_constant(
    ci: CoverInterval,
    signal: SampledSignal,
    probe_grid_size: int = 10_000,
    domain: tuple[float, float] | None = None,
) -> float:
    """Max of the Lebesgue function over a uniform probe grid.

    The probe domain defaults to the signal's full span, so for intervals far
    from a probe point this measures extrapolation growth.  A grid maximum is
    a lower estimate of the true constant.
    """
    if probe_grid_size < 2:
        raise InvalidInputError("probe grid needs at least two points")
    if domain is None:
        domain = (signal.a, signal.b)
    nodes = signal.nodes[ci.node_indices()]
    lo, hi = ci.lo, ci.hi
    t = (2.0 * nodes - (lo + hi)) / (hi - lo)
    if t.size == 1:
        return 1.0

    # barycentric weights in the frame
    w = np.empty(t.size)
    for i in range(t.size):
        w[i] = 1.0 / np.prod(t[i] - np.delete(t, i))

    y = np.linspace(domain[0], domain[1], probe_grid_size)
    ty = (2.0 * y - (lo + hi)) / (hi - lo)
    with np.errstate(divide="ignore", invalid="ignore"):
        frac = w[None, :] / (ty[:, None] - t[None, :])
        lam = np.abs(frac).sum(axis=1) / np.abs(frac.sum(axis=1))
    lam[~np.isfinite(lam)] = 1.0  # probe point exactly on a node
    return float(lam.max())
