"""Sampled signals, jump bracketing, and mesh quantities.

A signal is a set of strictly increasing abscissas with one sample value per
node.  Jumps are never located exactly; the caller only declares which node
subintervals bracket one (a "gap").  Everything downstream works on the
continuity pieces between gaps, so this module also computes the mesh widths
that decide whether a covering with a given node count per window exists.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError, MeshConditionError

__all__ = [
    "SampledSignal",
    "GapSpec",
    "ContinuityIntervals",
    "MeshReport",
    "continuity_intervals",
    "window_width",
    "mesh_report",
    "read_samples_csv",
    "write_samples_csv",
]


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class SampledSignal:
    """Node abscissas x_0 < ... < x_n with sample values f(x_i).

    Strict monotonicity is enforced with exact comparisons: duplicate
    abscissas are a data error, not a numerical edge case.
    """

    nodes: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        nodes = _readonly(np.ravel(self.nodes))
        values = _readonly(np.ravel(self.values))
        if nodes.size < 2:
            raise InvalidInputError("need at least two nodes")
        if values.size != nodes.size:
            raise InvalidInputError(
                f"got {nodes.size} nodes but {values.size} values"
            )
        if not np.all(np.isfinite(nodes)) or not np.all(np.isfinite(values)):
            raise InvalidInputError("nodes and values must be finite")
        if not np.all(nodes[1:] > nodes[:-1]):
            raise InvalidInputError("nodes must be strictly increasing")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        """Number of node subintervals (one less than the node count)."""
        return self.nodes.size - 1

    @property
    def a(self) -> float:
        return float(self.nodes[0])

    @property
    def b(self) -> float:
        return float(self.nodes[-1])

    def is_equispaced(self, rtol: float = 1e-12) -> bool:
        steps = np.diff(self.nodes)
        step = (self.b - self.a) / self.n
        return bool(np.all(np.abs(steps - step) <= rtol * step))


@dataclass(frozen=True)
class GapSpec:
    """Indices i of node subintervals (x_i, x_{i+1}) known to bracket a jump.

    Jumps must be strictly interior and non-adjacent: consecutive gap indices
    differ by at least 2, so every continuity piece has positive length.
    An empty spec means the signal is globally continuous.
    """

    indices: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)

    @property
    def m(self) -> int:
        return len(self.indices)

    def validate(self, signal: SampledSignal) -> None:
        n = signal.n
        idx = self.indices
        for i in idx:
            if not 0 < i < n - 1:
                raise InvalidInputError(
                    f"gap index {i} not strictly interior for n={n}"
                )
        for prev, cur in zip(idx, idx[1:]):
            if prev >= cur:
                raise InvalidInputError("gap indices must be strictly increasing")
            if prev + 1 >= cur:
                raise InvalidInputError(
                    f"gap indices {prev} and {cur} bracket adjacent subintervals; "
                    "each continuity piece needs at least one node span"
                )

    def intervals(self, signal: SampledSignal) -> list[tuple[float, float]]:
        """Open abscissa intervals (x_i, x_{i+1}) bracketing the jumps."""
        x = signal.nodes
        return [(float(x[i]), float(x[i + 1])) for i in self.indices]


@dataclass(frozen=True)
class ContinuityIntervals:
    """Closed node-bounded intervals on which the signal is continuous.

    Piece 0 runs from the first node to the left edge of the first gap, the
    last piece from the right edge of the last gap to the final node.
    """

    index_bounds: tuple[tuple[int, int], ...]  # (lo, hi) node indices per piece
    abscissa_bounds: tuple[tuple[float, float], ...]

    @property
    def count(self) -> int:
        return len(self.index_bounds)

    @property
    def lengths(self) -> tuple[float, ...]:
        return tuple(hi - lo for lo, hi in self.abscissa_bounds)


@dataclass(frozen=True)
class MeshReport:
    """All mesh widths gating the covering construction, for one degree.

    ``max_window``/``min_window`` are the extreme widths |x_i - x_{i+d+1}|
    over index windows that avoid every gap; ``max_step``/``min_step`` are
    their single-subinterval (d=0) specialization.  ``max_degree`` is the
    largest d whose windows still fit inside the shortest continuity piece,
    which is the sufficient condition for a covering with >= d+1 nodes per
    interval to exist.
    """

    degree: int
    min_piece_length: float
    max_step: float
    min_step: float
    max_window: float
    min_window: float
    max_degree: int
    min_gap_width: float  # inf when there are no gaps
    window_fits: bool  # min_piece_length >= max_window for the requested degree


def continuity_intervals(signal: SampledSignal, gaps: GapSpec) -> ContinuityIntervals:
    """Split the node range into the closed pieces between gaps."""
    gaps.validate(signal)
    x = signal.nodes
    lo = 0
    idx_bounds: list[tuple[int, int]] = []
    for g in gaps.indices:
        idx_bounds.append((lo, g))
        lo = g + 1
    idx_bounds.append((lo, signal.n))
    absc = tuple((float(x[i]), float(x[j])) for i, j in idx_bounds)
    return ContinuityIntervals(tuple(idx_bounds), absc)


def _window_widths(
    signal: SampledSignal, gaps: GapSpec, d: int
) -> np.ndarray:
    """Widths |x_i - x_{i+d+1}| of every window avoiding all gaps.

    A window avoids the gaps exactly when it lies inside one continuity
    piece, so the admissible starts are contiguous runs per piece.
    """
    if d < 0:
        raise InvalidInputError(f"degree must be >= 0, got {d}")
    x = signal.nodes
    pieces = continuity_intervals(signal, gaps)
    chunks = [
        x[lo + d + 1: hi + 1] - x[lo: hi - d]
        for lo, hi in pieces.index_bounds
        if hi - lo >= d + 1
    ]
    if not chunks:
        return np.empty(0)
    return np.concatenate(chunks)


def window_width(
    signal: SampledSignal, gaps: GapSpec, d: int, which: str = "max"
) -> float:
    """Extreme width of gap-avoiding windows holding d+1 node spans.

    ``which`` selects the max or the min.  d=0 reduces to the extreme node
    spacing away from the gaps.
    """
    gaps.validate(signal)
    widths = _window_widths(signal, gaps, d)
    if widths.size == 0:
        raise MeshConditionError(
            f"no admissible window of {d + 1} node spans avoids the gaps"
        )
    if which == "max":
        return float(widths.max())
    if which == "min":
        return float(widths.min())
    raise InvalidInputError(f"which must be 'max' or 'min', got {which!r}")


def mesh_report(signal: SampledSignal, gaps: GapSpec, d: int) -> MeshReport:
    """Compute every mesh quantity for the requested degree.

    ``max_degree`` scans all degrees with at least one admissible window and
    keeps the largest whose max window still fits the shortest piece.  It is
    a conservative (sufficient) criterion; the minimal covering radius itself
    is never computed.
    """
    pieces = continuity_intervals(signal, gaps)
    min_piece = min(pieces.lengths)
    max_step = window_width(signal, gaps, 0, "max")
    min_step = window_width(signal, gaps, 0, "min")
    max_win = window_width(signal, gaps, d, "max")
    min_win = window_width(signal, gaps, d, "min")

    max_degree = -1
    for dd in range(signal.n):
        widths = _window_widths(signal, gaps, dd)
        if widths.size == 0:
            break
        if min_piece >= float(widths.max()):
            max_degree = dd
    if max_degree < 0:
        raise MeshConditionError(
            "mesh admits no covering degree at all: shortest continuity piece "
            "is narrower than the widest gap-free node spacing"
        )

    if gaps.m:
        min_gap = min(hi - lo for lo, hi in gaps.intervals(signal))
    else:
        min_gap = math.inf

    return MeshReport(
        degree=d,
        min_piece_length=float(min_piece),
        max_step=max_step,
        min_step=min_step,
        max_window=max_win,
        min_window=min_win,
        max_degree=max_degree,
        min_gap_width=float(min_gap),
        window_fits=bool(min_piece >= max_win),
    )


# -- CSV interface ----------------------------------------------------------

def read_samples_csv(path) -> SampledSignal:
    """Read (x, f(x)) rows; a single leading non-numeric row is a header."""
    xs: list[float] = []
    ys: list[float] = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            try:
                x, y = float(row[0]), float(row[1])
            except (ValueError, IndexError):
                if lineno == 1:
                    continue  # header
                raise InvalidInputError(
                    f"{path}: malformed CSV row {lineno}: {row!r}"
                ) from None
            xs.append(x)
            ys.append(y)
    if len(xs) < 2:
        raise InvalidInputError(f"{path}: fewer than two sample rows")
    return SampledSignal(np.array(xs), np.array(ys))


def write_samples_csv(path, signal: SampledSignal) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y"])
        for x, y in zip(signal.nodes, signal.values):
            writer.writerow([repr(float(x)), repr(float(y))])
