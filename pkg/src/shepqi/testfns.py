"""Benchmark functions with known jumps, their derivative bounds, and sampling.

Six reference functions on [-1, 1]: four with jump discontinuities (the
printed branch conditions decide which piece owns a point exactly at a jump)
and two smooth ones.  Sampling places equispaced nodes, derives the gap
indices bracketing each jump, and optionally adds seeded Gaussian noise.

Noise semantics: ``amplitude`` bounds the noise peaks, with draws taken from
a zero-mean normal of standard deviation amplitude/3 (the usual three-sigma
reading).  Under a stddev reading the reconstruction's deviations would
exceed the amplitude for purely statistical reasons, so the peak reading is
the one under which denoising claims are meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import InvalidInputError
from .grid import GapSpec, SampledSignal

__all__ = [
    "Jump",
    "TestFunction",
    "TEST_FUNCTIONS",
    "NoiseSpec",
    "eval_test_function",
    "sample_on_grid",
]


@dataclass(frozen=True)
class Jump:
    """A jump location plus which side's branch owns a node landing on it."""

    x: float
    node_owner: str  # "left" | "right"


@dataclass(frozen=True)
class TestFunction:
    name: str
    fn: Callable[[np.ndarray], np.ndarray]  # vectorized, no domain check
    jumps: tuple[Jump, ...]
    deriv_sup: Callable[[int], float] | None  # order -> sup |f^(order)| over pieces
    check_domain: bool  # piecewise definitions reject points outside [-1, 1]


def _f1(x):
    x = np.asarray(x, dtype=float)
    s = np.sin(17.0 / 8.0 * np.pi * x)
    return np.where(x <= 0, s, 0.5 * s + 10.0)


def _f2(x):
    x = np.asarray(x, dtype=float)
    return np.where(
        x <= 0, 0.5 * x**5 - x**2, x**6 - x**4 + x**2 - 2.0
    )


def _f3(x):
    x = np.asarray(x, dtype=float)
    return np.where(
        x <= 0, np.exp(0.5 * (x + 1.0)), 1.0 + np.exp(0.25 * (x + 1.0) ** 2)
    )


def _f4(x):
    x = np.asarray(x, dtype=float)
    return np.where(
        np.abs(x) >= 0.5,
        5.0 / ((x / 4.0) ** 2 + 1.0),
        np.where(x < 0, 1.5, 0.25),
    )


def _f5(x):
    x = np.asarray(x, dtype=float)
    return 1.0 / (1.0 + 25.0 * x**2)


def _f6(x):
    x = np.asarray(x, dtype=float)
    return np.cos(20.0 * np.pi * x)


def _poly_sup_abs(coeffs: np.ndarray, lo: float, hi: float, order: int) -> float:
    """Exact sup of |p^(order)| on [lo, hi] via the derivative's real roots."""
    c = np.asarray(coeffs, dtype=float)
    for _ in range(order):
        c = npoly.polyder(c)
    if c.size == 1:
        return abs(float(c[0]))
    pts = [lo, hi]
    dc = npoly.polyder(c)
    if dc.size > 1 or dc[0] != 0.0:
        for r in npoly.polyroots(dc):
            if abs(r.imag) < 1e-12 and lo <= r.real <= hi:
                pts.append(float(r.real))
    return float(np.max(np.abs(npoly.polyval(np.array(pts), c))))


_F2_LEFT = np.array([0.0, 0.0, -1.0, 0.0, 0.0, 0.5])
_F2_RIGHT = np.array([-2.0, 0.0, 1.0, 0.0, -1.0, 0.0, 1.0])


def _f1_sup(order: int) -> float:
    if order == 0:
        return 10.5
    return (17.0 * math.pi / 8.0) ** order


def _f2_sup(order: int) -> float:
    return max(
        _poly_sup_abs(_F2_LEFT, -1.0, 0.0, order),
        _poly_sup_abs(_F2_RIGHT, 0.0, 1.0, order),
    )


def _f3_sup(order: int) -> float:
    if order == 0:
        return 1.0 + math.e
    left = math.exp(0.5) * 0.5**order
    # right piece: d^k/dx^k exp(v) = P_k(x) exp(v) with v = (x+1)^2/4;
    # P_1 = v' and P_{k+1} = P_k' + P_k v'.  All P_k coefficients are
    # nonnegative, so the sup on [0, 1] sits at x = 1.
    v1 = np.array([0.5, 0.5])
    p = v1.copy()
    for _ in range(order - 1):
        p = npoly.polyadd(npoly.polyder(p), npoly.polymul(p, v1))
    right = float(npoly.polyval(1.0, p)) * math.e
    return max(left, right)


TEST_FUNCTIONS: dict[str, TestFunction] = {
    "f1": TestFunction(
        "f1", _f1, (Jump(0.0, "left"),), _f1_sup, True
    ),
    "f2": TestFunction(
        "f2", _f2, (Jump(0.0, "left"),), _f2_sup, True
    ),
    "f3": TestFunction(
        "f3", _f3, (Jump(0.0, "left"),), _f3_sup, True
    ),
    "f4": TestFunction(
        "f4",
        _f4,
        (Jump(-0.5, "left"), Jump(0.0, "right"), Jump(0.5, "right")),
        None,
        True,
    ),
    "f5": TestFunction("f5", _f5, (), None, False),
    "f6": TestFunction("f6", _f6, (), None, False),
}


@dataclass(frozen=True)
class NoiseSpec:
    """Seeded additive Gaussian noise with peak-bound semantics.

    Draws come from the PCG64 generator so runs are reproducible; the
    standard deviation is amplitude/3.
    """

    amplitude: float
    seed: int

    def __post_init__(self):
        if self.amplitude < 0:
            raise InvalidInputError("noise amplitude must be nonnegative")

    @property
    def sigma(self) -> float:
        return self.amplitude / 3.0


def eval_test_function(name: str, x):
    """Evaluate a benchmark function, enforcing its domain where piecewise."""
    tf = _lookup(name)
    arr = np.asarray(x, dtype=float)
    if tf.check_domain and (np.any(arr < -1.0) or np.any(arr > 1.0)):
        raise InvalidInputError(f"{name} is defined on [-1, 1] only")
    out = tf.fn(arr)
    return float(out) if np.ndim(x) == 0 else out


def _lookup(name: str) -> TestFunction:
    try:
        return TEST_FUNCTIONS[name]
    except KeyError:
        raise InvalidInputError(
            f"unknown test function {name!r}; choose from {sorted(TEST_FUNCTIONS)}"
        ) from None


def sample_on_grid(
    name: str, n: int, noise: NoiseSpec | None = None
) -> tuple[SampledSignal, GapSpec]:
    """Sample on n+1 equispaced nodes of [-1, 1] and bracket every jump.

    A jump strictly between nodes gets the subinterval containing it.  A jump
    exactly on a node is assigned so that the node's sample stays inside the
    piece its branch condition puts it in: gap to the right when the left
    branch owns the node, to the left otherwise.
    """
    tf = _lookup(name)
    if n < 2:
        raise InvalidInputError(f"need n >= 2, got {n}")
    if any(j.x == 0.0 for j in tf.jumps) and n % 2:
        raise InvalidInputError(
            f"{name} jumps at 0; n must be even so a node sits on it"
        )
    nodes = -1.0 + 2.0 * np.arange(n + 1) / n

    gap_list: list[int] = []
    for jump in tf.jumps:
        pos = (jump.x + 1.0) * n / 2.0
        i = int(round(pos))
        if abs(pos - i) < 1e-9 * max(1.0, n):
            gap_list.append(i if jump.node_owner == "left" else i - 1)
        else:
            gap_list.append(int(math.floor(pos)))
    gaps = GapSpec(tuple(sorted(gap_list)))

    values = tf.fn(nodes)
    if noise is not None and noise.amplitude > 0:
        rng = np.random.default_rng(noise.seed)
        values = values + rng.normal(0.0, noise.sigma, size=values.shape)

    signal = SampledSignal(nodes, values)
    try:
        gaps.validate(signal)
    except InvalidInputError as exc:
        raise InvalidInputError(
            f"{name} at n={n}: jumps fall in adjacent or boundary "
            f"subintervals ({exc})"
        ) from exc
    return signal, gaps
