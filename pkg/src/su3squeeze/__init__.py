"""Spin-1 collective squeezing through the su(2) subalgebras of su(3)."""

from .algebra import (
    GENERATORS,
    ObservableCombo,
    RootVector,
    Su2Triad,
    Su3Rotation,
    appendix_b_search,
    build_generator_basis,
    classify_triad,
    conjugate_triad,
    enumerate_canonical_triads,
    nematic_tensor,
    observable,
    root_diagram,
    structure_constants,
)
from .dynamics import EulerAngles, TwistingSchedule, rotated_triad, rotation_u1, rotation_u2, solve_angles
from .fock import Spinor, build_basis, coherent_state, covariance_matrix, expectation, second_quantize
from .squeezing import asymptotic_prediction, run_squeezing, sweep_scaling

__version__ = "0.1.0"
