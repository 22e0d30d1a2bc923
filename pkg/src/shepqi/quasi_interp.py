"""The assembled quasi-interpolant: covering + local models + Shepard basis.

Evaluation is the convex combination of the local polynomials under the
Shepard weights, so the result always lies inside the range of the active
models at that point.  That convexity is the mechanism suppressing overshoot
at jumps: no evaluation can exceed what some local polynomial already does.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .covering import (
    Covering,
    attach_blend_points,
    build_covering_equispaced,
    build_covering_general,
)
from .errors import InvalidInputError, MeshConditionError, ShepqiError
from .grid import GapSpec, SampledSignal, mesh_report
from .local_fit import LocalModel, eval_model, interpolating_model, least_squares_model
from .shepard import ShepardBasis, weights_batch

__all__ = ["QuasiInterpolant", "build", "eval_point", "eval_batch"]

_SCHEMES = ("auto", "equispaced", "general")
_MODES = ("interpolating", "least_squares")


@dataclass(frozen=True)
class QuasiInterpolant:
    """Immutable, evaluable reconstruction of a sampled signal."""

    covering: Covering
    models: tuple[LocalModel, ...]
    basis: ShepardBasis
    mode: str
    mu: int
    nodes: np.ndarray  # signal abscissas, kept for panel and gap queries
    values: np.ndarray  # the fitted samples
    gap_indices: tuple[int, ...]

    def __post_init__(self):
        if not (len(self.models) == self.covering.size == self.basis.size):
            raise InvalidInputError(
                "covering, models and basis must have matching sizes"
            )

    @property
    def a(self) -> float:
        return float(self.nodes[0])

    @property
    def b(self) -> float:
        return float(self.nodes[-1])

    def gap_intervals(self) -> list[tuple[float, float]]:
        return [
            (float(self.nodes[i]), float(self.nodes[i + 1]))
            for i in self.gap_indices
        ]

    def in_gap(self, x) -> np.ndarray:
        """True where x lies strictly inside a bracketed jump interval."""
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=bool)
        for lo, hi in self.gap_intervals():
            out |= (x > lo) & (x < hi)
        return out

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        vals, _ = eval_batch(self, np.atleast_1d(x))
        return float(vals[0]) if x.ndim == 0 else vals.reshape(x.shape)

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "mu": self.mu,
            "mode": self.mode,
            "covering": self.covering.to_json_dict(),
            "models": [m.to_json_dict() for m in self.models],
            "nodes": [float(v) for v in self.nodes],
            "values": [float(v) for v in self.values],
            "gap_indices": list(self.gap_indices),
        }

    def save_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh)

    @classmethod
    def from_json_dict(cls, d: dict) -> "QuasiInterpolant":
        covering = Covering.from_json_dict(d["covering"])
        return cls(
            covering=covering,
            models=tuple(LocalModel.from_json_dict(m) for m in d["models"]),
            basis=ShepardBasis.from_covering(covering, int(d["mu"])),
            mode=str(d["mode"]),
            mu=int(d["mu"]),
            nodes=np.array(d["nodes"], dtype=float),
            values=np.array(d["values"], dtype=float),
            gap_indices=tuple(int(i) for i in d["gap_indices"]),
        )

    @classmethod
    def load_json(cls, path) -> "QuasiInterpolant":
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))


def _stage(name: str):
    class _Ctx:
        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            if exc is not None and isinstance(exc, ShepqiError):
                exc.args = (f"[{name}] {exc.args[0] if exc.args else ''}",)
            return False

    return _Ctx()


def build(
    signal: SampledSignal,
    gaps: GapSpec | None = None,
    *,
    degree: int = 3,
    mu: int = 4,
    n_blend: int = 10,
    scheme: str = "auto",
    mode: str = "interpolating",
    ls_degree: int | None = None,
    share_overlaps: bool | None = None,
) -> QuasiInterpolant:
    """Assemble the full pipeline; identical inputs give identical results.

    ``scheme="auto"`` picks the index-stepping covering on uniform meshes and
    the general walk otherwise.  ``share_overlaps`` defaults off for the
    equispaced scheme (overlaps are single nodes) and on for the general one
    (overlaps have positive width).  ``ls_degree`` selects least-squares mode
    implicitly; it defaults to ``degree`` when only ``mode`` is given.
    """
    if gaps is None:
        gaps = GapSpec()
    if scheme not in _SCHEMES:
        raise InvalidInputError(f"scheme must be one of {_SCHEMES}, got {scheme!r}")
    if mode not in _MODES:
        raise InvalidInputError(f"mode must be one of {_MODES}, got {mode!r}")
    if ls_degree is not None:
        mode = "least_squares"
    if mode == "least_squares" and ls_degree is None:
        ls_degree = degree

    with _stage("grid"):
        report = mesh_report(signal, gaps, degree)
        if not report.window_fits:
            raise MeshConditionError(
                f"degree {degree} windows (width {report.max_window:g}) exceed "
                f"the shortest continuity piece ({report.min_piece_length:g}); "
                f"largest admissible degree is {report.max_degree}"
            )

    if scheme == "auto":
        scheme = "equispaced" if signal.is_equispaced() else "general"
    if share_overlaps is None:
        share_overlaps = scheme == "general"

    with _stage("covering"):
        if scheme == "equispaced":
            covering = build_covering_equispaced(signal, gaps, degree)
        else:
            covering = build_covering_general(signal, gaps, degree)
        covering = attach_blend_points(covering, n_blend, share_overlaps)

    with _stage("local_fit"):
        if mode == "interpolating":
            models = tuple(
                interpolating_model(ci, signal) for ci in covering.intervals
            )
        else:
            models = tuple(
                least_squares_model(ci, signal, ls_degree)
                for ci in covering.intervals
            )

    with _stage("shepard"):
        basis = ShepardBasis.from_covering(covering, mu)

    return QuasiInterpolant(
        covering=covering,
        models=models,
        basis=basis,
        mode=mode,
        mu=mu,
        nodes=signal.nodes,
        values=signal.values,
        gap_indices=gaps.indices,
    )


def eval_batch(
    q: QuasiInterpolant, xs: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate at many points; returns (values, extrapolation flags).

    Weights flushed to zero skip their model entirely; the summation order
    over intervals is fixed (ascending) for run-to-run reproducibility.
    """
    xs = np.asarray(xs, dtype=float).ravel()
    if xs.size == 0:
        return np.empty(0), np.empty(0, dtype=bool)
    w = weights_batch(q.basis, xs)
    out = np.zeros(xs.size)
    for i, model in enumerate(q.models):
        active = np.nonzero(w[:, i])[0]
        if active.size:
            out[active] += w[active, i] * eval_model(model, xs[active])
    extrapolating = (xs < q.a) | (xs > q.b)
    return out, extrapolating


def eval_point(q: QuasiInterpolant, x: float) -> float:
    """Evaluate at one point (outside [a, b] is permitted extrapolation)."""
    vals, _ = eval_batch(q, np.array([float(x)]))
    return float(vals[0])
