"""Scikit-learn style front end for the quasi-interpolation pipeline.

Fit on abscissa/value samples (plus the indices of the subintervals known to
bracket a jump) and predict anywhere on the sampled span.  Parameters follow
the scikit-learn contract, so grid search, cloning and pipelines work.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from .errors import InvalidInputError
from .grid import GapSpec, SampledSignal
from .quasi_interp import build, eval_batch

__all__ = ["ShepardQuasiInterpolator"]


def _as_abscissas(X, name: str = "X") -> np.ndarray:
    """Accept a 1-d array or a single-column 2-d array of abscissas."""
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise InvalidInputError(
            f"{name} must be 1-d or a single column, got shape {arr.shape}"
        )
    return arr


class ShepardQuasiInterpolator(BaseEstimator, RegressorMixin):
    """Smooth rational reconstruction of univariate data with known jump gaps.

    Parameters
    ----------
    degree : int
        Minimum local polynomial degree; every covering interval holds at
        least degree+1 nodes.
    mu : int
        Even sharpness exponent of the blending weights.
    n_blend : int
        Blend points per covering interval.
    scheme : {"auto", "equispaced", "general"}
        Covering construction; "auto" picks by mesh uniformity.
    mode : {"interpolating", "least_squares"}
        Local model type.  Least squares (see ``ls_degree``) suits noisy data.
    ls_degree : int or None
        Least-squares degree; defaults to ``degree`` when mode requires it.
    share_overlaps : bool or None
        Force flanking blend sets to agree on positive-width overlaps.
        Defaults by scheme.

    Attributes
    ----------
    interpolant_ : QuasiInterpolant
        The built pipeline object, evaluable directly.
    """

    def __init__(
        self,
        degree: int = 3,
        mu: int = 4,
        n_blend: int = 10,
        scheme: str = "auto",
        mode: str = "interpolating",
        ls_degree: int | None = None,
        share_overlaps: bool | None = None,
    ):
        self.degree = degree
        self.mu = mu
        self.n_blend = n_blend
        self.scheme = scheme
        self.mode = mode
        self.ls_degree = ls_degree
        self.share_overlaps = share_overlaps

    def fit(self, X, y, gaps=None):
        """Fit to samples.

        Parameters
        ----------
        X : array-like of shape (n_samples,) or (n_samples, 1)
            Strictly increasing abscissas.
        y : array-like of shape (n_samples,)
            Sample values.
        gaps : iterable of int, optional
            Indices i of the subintervals (X[i], X[i+1]) bracketing a jump.
        """
        x = _as_abscissas(X)
        yv = np.asarray(y, dtype=float).ravel()
        signal = SampledSignal(x, yv)
        gap_spec = GapSpec(tuple(gaps) if gaps is not None else ())
        self.interpolant_ = build(
            signal,
            gap_spec,
            degree=self.degree,
            mu=self.mu,
            n_blend=self.n_blend,
            scheme=self.scheme,
            mode=self.mode,
            ls_degree=self.ls_degree,
            share_overlaps=self.share_overlaps,
        )
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "interpolant_")
        x = _as_abscissas(X)
        values, _ = eval_batch(self.interpolant_, x)
        return values
