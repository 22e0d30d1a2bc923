"""Smooth rational quasi-interpolation of sampled functions with jumps.

Local polynomials on an overlapping covering of the continuity pieces are
blended by multinode Shepard weights into a globally smooth reconstruction
that reproduces polynomials and does not oscillate at the jumps.
"""

from .errors import (
    InternalInvariantError,
    InvalidInputError,
    MeshConditionError,
    ShepqiError,
)
from .estimator import ShepardQuasiInterpolator
from .grid import (
    GapSpec,
    MeshReport,
    SampledSignal,
    continuity_intervals,
    mesh_report,
    read_samples_csv,
    window_width,
    write_samples_csv,
)
from .quasi_interp import QuasiInterpolant, build, eval_batch, eval_point
from .testfns import TEST_FUNCTIONS, NoiseSpec, eval_test_function, sample_on_grid

__version__ = "0.1.0"

__all__ = [
    "ShepqiError",
    "InvalidInputError",
    "MeshConditionError",
    "InternalInvariantError",
    "SampledSignal",
    "GapSpec",
    "MeshReport",
    "continuity_intervals",
    "window_width",
    "mesh_report",
    "read_samples_csv",
    "write_samples_csv",
    "QuasiInterpolant",
    "build",
    "eval_point",
    "eval_batch",
    "ShepardQuasiInterpolator",
    "TEST_FUNCTIONS",
    "NoiseSpec",
    "eval_test_function",
    "sample_on_grid",
    "__version__",
]
