"""Overlapping coverings of the continuity pieces.

Each piece is covered by intervals of one fixed width (the widest admissible
node window), every interval holding at least d+1 nodes and overlapping the
next.  Two builders are provided: a general constructive walk valid for any
mesh satisfying the width condition, and an index-stepping scheme for
equispaced nodes where consecutive intervals share exactly one node.  Blend
points, the anchors of the Shepard weights, are attached afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import InternalInvariantError, InvalidInputError, MeshConditionError
from .grid import ContinuityIntervals, GapSpec, SampledSignal, continuity_intervals, mesh_report

__all__ = [
    "CoverInterval",
    "Covering",
    "build_covering_general",
    "build_covering_equispaced",
    "attach_blend_points",
]


@dataclass(frozen=True)
class CoverInterval:
    """One covering interval [lo, hi] inside continuity piece ``piece``.

    ``first_node``..``last_node`` (inclusive) are the signal nodes falling in
    [lo, hi]; they are contiguous because the nodes are sorted.  Blend points
    are strictly interior and pairwise distinct, or None before attachment.
    """

    lo: float
    hi: float
    first_node: int
    last_node: int
    piece: int
    blend_points: np.ndarray | None = None

    @property
    def node_count(self) -> int:
        return self.last_node - self.first_node + 1

    def node_indices(self) -> np.ndarray:
        return np.arange(self.first_node, self.last_node + 1)

    def contains(self, x) -> np.ndarray:
        return (np.asarray(x) >= self.lo) & (np.asarray(x) <= self.hi)


@dataclass(frozen=True)
class Covering:
    """Flat, left-to-right list of cover intervals over all pieces."""

    intervals: tuple[CoverInterval, ...]
    degree: int
    width: float  # common interval width (the max admissible window)
    scheme: str  # "general" | "equispaced"
    n_blend: int | None = None  # blend points per interval, None before attach

    @property
    def size(self) -> int:
        return len(self.intervals)

    def per_piece_counts(self) -> tuple[int, ...]:
        counts: dict[int, int] = {}
        for ci in self.intervals:
            counts[ci.piece] = counts.get(ci.piece, 0) + 1
        return tuple(counts[k] for k in sorted(counts))

    def piece_slice(self, piece: int) -> list[CoverInterval]:
        return [ci for ci in self.intervals if ci.piece == piece]

    def blend_matrix(self) -> np.ndarray:
        """(size, n_blend) array of blend points; requires attachment."""
        if self.n_blend is None:
            raise InvalidInputError("covering has no blend points attached")
        return np.vstack([ci.blend_points for ci in self.intervals])

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "width": self.width,
            "scheme": self.scheme,
            "n_blend": self.n_blend,
            "intervals": [
                {
                    "lo": ci.lo,
                    "hi": ci.hi,
                    "first_node": ci.first_node,
                    "last_node": ci.last_node,
                    "piece": ci.piece,
                    "blend_points": None
                    if ci.blend_points is None
                    else [float(v) for v in ci.blend_points],
                }
                for ci in self.intervals
            ],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "Covering":
        intervals = tuple(
            CoverInterval(
                lo=float(e["lo"]),
                hi=float(e["hi"]),
                first_node=int(e["first_node"]),
                last_node=int(e["last_node"]),
                piece=int(e["piece"]),
                blend_points=None
                if e["blend_points"] is None
                else np.array(e["blend_points"], dtype=float),
            )
            for e in d["intervals"]
        )
        return cls(
            intervals=intervals,
            degree=int(d["degree"]),
            width=float(d["width"]),
            scheme=str(d["scheme"]),
            n_blend=None if d["n_blend"] is None else int(d["n_blend"]),
        )


def _nodes_in(signal: SampledSignal, lo: float, hi: float) -> tuple[int, int]:
    """Inclusive index range of nodes inside [lo, hi]."""
    first = int(np.searchsorted(signal.nodes, lo, side="left"))
    last = int(np.searchsorted(signal.nodes, hi, side="right")) - 1
    return first, last


def _check_counts(intervals: list[CoverInterval], d: int) -> None:
    for k, ci in enumerate(intervals):
        if ci.node_count < d + 1:
            raise InternalInvariantError(
                f"cover interval {k} [{ci.lo}, {ci.hi}] holds "
                f"{ci.node_count} nodes, fewer than d+1={d + 1}; "
                "the mesh is inconsistent with the width condition"
            )


def _require_window_fits(signal, gaps, d) -> float:
    report = mesh_report(signal, gaps, d)
    if not report.window_fits:
        raise MeshConditionError(
            f"degree {d} windows (width {report.max_window:g}) exceed the "
            f"shortest continuity piece ({report.min_piece_length:g}); "
            f"largest admissible degree is {report.max_degree}"
        )
    return report.max_window


def build_covering_general(
    signal: SampledSignal, gaps: GapSpec, d: int
) -> Covering:
    """Cover each piece by width-h intervals via the constructive walk.

    Start at the piece's left end.  While the current interval's right end b'
    leaves room for another full interval, the next one starts at the largest
    node <= b'; otherwise the final interval is pinned to the piece's right
    end.  Every interval then has at least one node endpoint, which is what
    guarantees the d+1 node count on meshes satisfying the width condition.
    """
    h = _require_window_fits(signal, gaps, d)
    pieces: ContinuityIntervals = continuity_intervals(signal, gaps)
    nodes = signal.nodes
    intervals: list[CoverInterval] = []

    def emit(lo: float, hi: float, piece_idx: int) -> None:
        intervals.append(
            CoverInterval(lo, hi, *_nodes_in(signal, lo, hi), piece_idx)
        )

    for piece_idx, (alo, ahi) in enumerate(pieces.abscissa_bounds):
        lo = alo
        while True:
            hi = lo + h
            if hi >= ahi:
                # reached the piece end; clamp a possible ulp of overshoot
                emit(lo, ahi, piece_idx)
                break
            if hi + h > ahi:
                emit(lo, hi, piece_idx)
                emit(ahi - h, ahi, piece_idx)
                break
            emit(lo, hi, piece_idx)
            # the largest node <= hi starts the next interval
            next_lo = float(nodes[np.searchsorted(nodes, hi, side="right") - 1])
            if not next_lo > lo:
                raise InternalInvariantError(
                    f"covering walk stalled at [{lo}, {hi}] in piece {piece_idx}"
                )
            lo = next_lo

    _check_counts(intervals, d)
    return Covering(tuple(intervals), d, h, "general")


def build_covering_equispaced(
    signal: SampledSignal, gaps: GapSpec, d: int, rtol: float = 1e-12
) -> Covering:
    """Cover each piece by node windows stepping d+1 subintervals at a time.

    Consecutive intervals share exactly one node.  When d+1 does not divide
    the piece's span the last interval is snapped to end on the piece's right
    node, shifting its start left (it then overlaps its predecessor in more
    than one node).
    """
    if not signal.is_equispaced(rtol):
        raise InvalidInputError(
            "nodes are not equispaced; use the general covering scheme"
        )
    h = _require_window_fits(signal, gaps, d)
    pieces = continuity_intervals(signal, gaps)
    nodes = signal.nodes
    step = d + 1
    intervals: list[CoverInterval] = []

    for piece_idx, (ilo, ihi) in enumerate(pieces.index_bounds):
        i = ilo
        while i + step <= ihi:
            intervals.append(
                CoverInterval(
                    float(nodes[i]), float(nodes[i + step]), i, i + step, piece_idx
                )
            )
            i += step
        if intervals[-1].last_node != ihi:
            intervals.append(
                CoverInterval(
                    float(nodes[ihi - step]), float(nodes[ihi]),
                    ihi - step, ihi, piece_idx,
                )
            )

    _check_counts(intervals, d)
    return Covering(tuple(intervals), d, h, "equispaced")


def _default_blend(lo: float, hi: float, k: int) -> np.ndarray:
    return lo + np.arange(1, k + 1) * (hi - lo) / (k + 1)


def attach_blend_points(
    covering: Covering, n_blend: int, share_overlaps: bool = False
) -> Covering:
    """Place n_blend equispaced interior blend points in every interval.

    With ``share_overlaps`` the two sets flanking a positive-width overlap are
    forced to carry identical abscissas there (the union of their default
    grids inside the overlap, evenly thinned back to the original count),
    which removes the weight oscillations that distinct points on an overlap
    would cause.  Measure-zero overlaps (a shared node) need no sharing.
    """
    if n_blend < 1:
        raise InvalidInputError(f"need at least one blend point, got {n_blend}")
    sets = [_default_blend(ci.lo, ci.hi, n_blend) for ci in covering.intervals]

    if share_overlaps:
        ivs = covering.intervals
        prev_overlap_end = -np.inf
        for i in range(len(ivs) - 1):
            left, right = ivs[i], ivs[i + 1]
            if left.piece != right.piece or right.lo >= left.hi:
                continue
            o_lo, o_hi = right.lo, left.hi
            if o_lo < prev_overlap_end:
                raise InvalidInputError(
                    f"cover intervals {i - 1}..{i + 1} overlap jointly; "
                    "blend-point sharing cannot keep the sets consistent"
                )
            prev_overlap_end = o_hi
            in_l = np.nonzero((sets[i] > o_lo) & (sets[i] < o_hi))[0]
            in_r = np.nonzero((sets[i + 1] > o_lo) & (sets[i + 1] < o_hi))[0]
            if in_l.size != in_r.size:
                raise InvalidInputError(
                    f"overlap of cover intervals {i} and {i + 1} holds "
                    f"{in_l.size} vs {in_r.size} default blend points; "
                    "sharing cannot preserve the per-set count"
                )
            t = in_l.size
            if t == 0:
                continue
            pool = np.unique(np.concatenate([sets[i][in_l], sets[i + 1][in_r]]))
            pick = pool[np.round(np.linspace(0, pool.size - 1, t)).astype(int)]
            sets[i][in_l] = pick
            sets[i + 1][in_r] = pick

    new_intervals = []
    for ci, pts in zip(covering.intervals, sets):
        if np.unique(pts).size != n_blend or pts[0] <= ci.lo or pts[-1] >= ci.hi:
            raise InvalidInputError(
                f"cannot place {n_blend} distinct interior blend points in "
                f"[{ci.lo}, {ci.hi}]"
            )
        pts = pts.copy()
        pts.flags.writeable = False
        new_intervals.append(replace(ci, blend_points=pts))

    return Covering(
        tuple(new_intervals), covering.degree, covering.width,
        covering.scheme, n_blend,
    )
