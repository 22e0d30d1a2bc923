import numpy as np
import pytest

from shepqi.errors import InvalidInputError, MeshConditionError
from shepqi.grid import (
    GapSpec,
    SampledSignal,
    continuity_intervals,
    mesh_report,
    read_samples_csv,
    window_width,
    write_samples_csv,
)

from conftest import equispaced_signal


class TestSampledSignal:
    def test_basic_properties(self):
        s = equispaced_signal(8)
        assert s.n == 8
        assert s.a == -1.0 and s.b == 1.0
        assert s.is_equispaced()

    def test_rejects_single_node(self):
        with pytest.raises(InvalidInputError):
            SampledSignal(np.array([0.0]), np.array([1.0]))

    def test_rejects_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            SampledSignal(np.array([0.0, 1.0]), np.array([1.0]))

    def test_rejects_nonfinite(self):
        with pytest.raises(InvalidInputError):
            SampledSignal(np.array([0.0, np.nan]), np.array([1.0, 2.0]))
        with pytest.raises(InvalidInputError):
            SampledSignal(np.array([0.0, 1.0]), np.array([1.0, np.inf]))

    def test_rejects_unsorted_and_duplicates(self):
        with pytest.raises(InvalidInputError):
            SampledSignal(np.array([0.0, 2.0, 1.0]), np.zeros(3))
        # exact comparison: equal abscissas are data errors
        with pytest.raises(InvalidInputError):
            SampledSignal(np.array([0.0, 1.0, 1.0]), np.zeros(3))

    def test_nonuniform_detected(self):
        s = SampledSignal(np.array([0.0, 0.1, 0.3, 0.6, 1.0]), np.zeros(5))
        assert not s.is_equispaced()


class TestGapSpec:
    def test_empty_is_valid(self):
        GapSpec().validate(equispaced_signal(8))

    def test_rejects_boundary_gaps(self):
        s = equispaced_signal(8)
        with pytest.raises(InvalidInputError):
            GapSpec((0,)).validate(s)
        with pytest.raises(InvalidInputError):
            GapSpec((7,)).validate(s)  # needs alpha < n-1

    def test_rejects_adjacent_gaps(self):
        s = equispaced_signal(16)
        with pytest.raises(InvalidInputError):
            GapSpec((4, 5)).validate(s)
        GapSpec((4, 6)).validate(s)

    def test_rejects_unsorted(self):
        with pytest.raises(InvalidInputError):
            GapSpec((6, 4)).validate(equispaced_signal(16))

    def test_intervals(self):
        s = equispaced_signal(8)
        assert GapSpec((4,)).intervals(s) == [(0.0, 0.25)]


class TestContinuityIntervals:
    def test_single_gap_example(self):
        # n=8 equispaced on [-1,1], gap at 4: pieces [-1,0] and [0.25,1]
        pieces = continuity_intervals(equispaced_signal(8), GapSpec((4,)))
        assert pieces.abscissa_bounds == ((-1.0, 0.0), (0.25, 1.0))
        assert pieces.lengths == (1.0, 0.75)

    def test_no_gaps_single_piece(self):
        pieces = continuity_intervals(equispaced_signal(8), GapSpec())
        assert pieces.abscissa_bounds == ((-1.0, 1.0),)

    def test_large_grid(self):
        pieces = continuity_intervals(equispaced_signal(1024), GapSpec((512,)))
        assert pieces.abscissa_bounds[0] == (-1.0, 0.0)
        assert pieces.abscissa_bounds[1][0] == pytest.approx(
            2 * 513 / 1024 - 1, abs=1e-15
        )
        assert pieces.abscissa_bounds[1][1] == 1.0

    def test_pieces_and_gaps_partition_domain(self):
        s = equispaced_signal(64)
        gaps = GapSpec((10, 30, 50))
        pieces = continuity_intervals(s, gaps)
        total = sum(pieces.lengths) + sum(
            hi - lo for lo, hi in gaps.intervals(s)
        )
        assert total == pytest.approx(s.b - s.a, rel=1e-14)
        bounds = [b for piece in pieces.abscissa_bounds for b in piece]
        assert bounds == sorted(bounds)


class TestWindowWidth:
    def test_equispaced_exact(self):
        s = equispaced_signal(16)
        h = 2.0 / 16
        for d in range(5):
            assert window_width(s, GapSpec((8,)), d, "max") == pytest.approx(
                (d + 1) * h, rel=1e-14
            )
            assert window_width(s, GapSpec((8,)), d, "min") == pytest.approx(
                (d + 1) * h, rel=1e-14
            )

    def test_nonuniform_no_gaps(self):
        s = SampledSignal(np.array([0.0, 0.1, 0.3, 0.6, 1.0]), np.zeros(5))
        assert window_width(s, GapSpec(), 0, "max") == pytest.approx(0.4)
        assert window_width(s, GapSpec(), 0, "min") == pytest.approx(0.1)

    def test_nonuniform_with_gap(self):
        # jump bracketed by (0.1, 0.3): admissible steps 0.1, 0.3, 0.4
        s = SampledSignal(np.array([0.0, 0.1, 0.3, 0.6, 1.0]), np.zeros(5))
        assert window_width(s, GapSpec((1,)), 0, "max") == pytest.approx(0.4)
        assert window_width(s, GapSpec((1,)), 0, "min") == pytest.approx(0.1)

    def test_no_admissible_window(self):
        s = equispaced_signal(8)
        with pytest.raises(MeshConditionError):
            window_width(s, GapSpec((4,)), 7, "max")

    def test_bad_which(self):
        with pytest.raises(InvalidInputError):
            window_width(equispaced_signal(8), GapSpec(), 0, "median")


class TestMeshReport:
    def test_worked_example(self):
        # n=16 on [-1,1], gap at 8: shortest piece 0.875, (d+1)*0.125 windows
        r = mesh_report(equispaced_signal(16), GapSpec((8,)), 3)
        assert r.min_piece_length == pytest.approx(0.875)
        assert r.max_window == pytest.approx(0.5)
        assert r.max_degree == 6
        assert r.window_fits
        assert r.min_gap_width == pytest.approx(0.125)

    def test_no_gaps(self):
        s = equispaced_signal(16)
        r = mesh_report(s, GapSpec(), 3)
        assert r.min_piece_length == pytest.approx(2.0)
        assert r.max_degree == 15  # the whole-span window still exists
        assert r.min_gap_width == np.inf

    def test_paper_scale_condition(self):
        r = mesh_report(equispaced_signal(1024), GapSpec((512,)), 3)
        assert r.window_fits  # 4*(2/1024) <= 1.0

    def test_condition_holds_below_max_degree(self):
        s = equispaced_signal(128)
        gaps = GapSpec((40, 90))
        report = mesh_report(s, gaps, 0)
        for d in range(report.max_degree + 1):
            r = mesh_report(s, gaps, d)
            assert r.min_piece_length >= r.max_window

    def test_max_degree_monotone_in_gaps(self):
        s = equispaced_signal(256)
        rng = np.random.default_rng(7)
        candidates = sorted(rng.choice(np.arange(10, 246, 4), 6, replace=False))
        gaps: list[int] = []
        last = mesh_report(s, GapSpec(), 0).max_degree
        for g in candidates:
            gaps.append(int(g))
            cur = mesh_report(s, GapSpec(tuple(gaps)), 0).max_degree
            assert cur <= last
            last = cur

    def test_step_extremes_match_window_width(self):
        s = SampledSignal(np.cumsum(np.array([0, 1, 2, 0.5, 1.5, 3])), np.zeros(6))
        r = mesh_report(s, GapSpec((2,)), 1)
        assert r.max_step == window_width(s, GapSpec((2,)), 0, "max")
        assert r.min_step == window_width(s, GapSpec((2,)), 0, "min")
        assert r.max_window >= r.min_window > 0


class TestCsv:
    def test_round_trip(self, tmp_path):
        s = SampledSignal(np.linspace(0, 1, 9), np.sin(np.linspace(0, 1, 9)))
        path = tmp_path / "samples.csv"
        write_samples_csv(path, s)
        back = read_samples_csv(path)
        assert np.array_equal(back.nodes, s.nodes)
        assert np.array_equal(back.values, s.values)

    def test_headerless(self, tmp_path):
        path = tmp_path / "raw.csv"
        path.write_text("0.0,1.0\n0.5,2.0\n1.0,3.0\n")
        s = read_samples_csv(path)
        assert s.n == 2

    def test_malformed_row_reports_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,y\n0.0,1.0\n0.5,oops\n1.0,3.0\n")
        with pytest.raises(InvalidInputError, match="row 3"):
            read_samples_csv(path)
