import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from shepqi.errors import InvalidInputError
from shepqi.estimator import ShepardQuasiInterpolator
from shepqi.quasi_interp import build, eval_batch
from shepqi.testfns import TEST_FUNCTIONS, sample_on_grid


class TestSklearnContract:
    def test_get_set_params_round_trip(self):
        est = ShepardQuasiInterpolator(degree=2, mu=6, n_blend=4)
        params = est.get_params()
        assert params["degree"] == 2 and params["mu"] == 6
        est.set_params(degree=5)
        assert est.degree == 5

    def test_clone(self):
        est = ShepardQuasiInterpolator(degree=1, mode="least_squares", ls_degree=1)
        twin = clone(est)
        assert twin.get_params() == est.get_params()

    def test_predict_before_fit_raises(self):
        with pytest.raises(NotFittedError):
            ShepardQuasiInterpolator().predict([0.0])

    def test_score_on_smooth_data(self):
        signal, gaps = sample_on_grid("f5", 200)
        est = ShepardQuasiInterpolator(degree=3).fit(signal.nodes, signal.values)
        xs = np.linspace(-1, 1, 500)
        assert est.score(xs, TEST_FUNCTIONS["f5"].fn(xs)) > 0.999999


class TestFitPredict:
    def test_matches_functional_pipeline(self):
        signal, gaps = sample_on_grid("f1", 256)
        est = ShepardQuasiInterpolator(degree=3, mu=4, n_blend=10)
        est.fit(signal.nodes, signal.values, gaps=gaps.indices)
        q = build(signal, gaps, degree=3, mu=4, n_blend=10)
        xs = np.linspace(-1, 1, 1001)
        want, _ = eval_batch(q, xs)
        assert np.array_equal(est.predict(xs), want)

    def test_column_vector_input(self):
        signal, _ = sample_on_grid("f5", 64)
        est = ShepardQuasiInterpolator(degree=2)
        est.fit(signal.nodes.reshape(-1, 1), signal.values)
        out = est.predict(np.array([[0.0], [0.5]]))
        assert out.shape == (2,)

    def test_least_squares_mode(self):
        signal, gaps = sample_on_grid("f1", 256)
        est = ShepardQuasiInterpolator(degree=6, ls_degree=3)
        est.fit(signal.nodes, signal.values, gaps=gaps.indices)
        assert est.interpolant_.mode == "least_squares"

    def test_rejects_bad_shapes(self):
        est = ShepardQuasiInterpolator()
        with pytest.raises(InvalidInputError):
            est.fit(np.zeros((4, 2)), np.zeros(4))

    def test_rejects_unsorted_abscissas(self):
        est = ShepardQuasiInterpolator()
        with pytest.raises(InvalidInputError):
            est.fit(np.array([0.0, 2.0, 1.0]), np.zeros(3))

    def test_rejects_bad_gap_indices(self):
        signal, _ = sample_on_grid("f5", 64)
        est = ShepardQuasiInterpolator()
        with pytest.raises(InvalidInputError):
            est.fit(signal.nodes, signal.values, gaps=(0,))
