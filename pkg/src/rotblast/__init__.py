"""
Cylindrical blast waves in a rotating van der Waals gas.

The flow behind a strong cylindrical shock is expanded in powers of
``y = (a0/U)^2``.  The zeroth-order profiles have a closed form built on a
Taylor ansatz for the radial velocity; the first-order corrections are split
into two linear families integrated inward from the front.
"""

from .errors import BreakdownError, ConvergenceError, DomainError, RotBlastError, SingularityError
from .first_order import FirstOrderSolution, reconstruct_physical, series_coefficients, solve_first_order
from .gas_model import AmbientState, GasParams, RotationParams, ambient_state, sound_speed
from .series_engine import SeriesCoefficients, effective_energy_factor, integral_j0, integral_theta1
from .shock_jump import rh_residual, series_bc, similarity_bc, strong_shock_state
from .shock_kinematics import (
    ShockTrajectory,
    reference_ambient,
    shock_trajectory,
    time_of_radius,
    velocity_of_radius,
    y_of_radius,
)
from .zeroth_order import ZerothSolution, ansatz_coefficients, solve_zeroth_by_ode, zeroth_solution

__all__ = [
    "RotBlastError", "DomainError", "SingularityError", "ConvergenceError", "BreakdownError",
    "GasParams", "RotationParams", "AmbientState", "ambient_state", "sound_speed",
    "strong_shock_state", "rh_residual", "similarity_bc", "series_bc",
    "ZerothSolution", "ansatz_coefficients", "zeroth_solution", "solve_zeroth_by_ode",
    "SeriesCoefficients", "integral_j0", "integral_theta1", "effective_energy_factor",
    "FirstOrderSolution", "solve_first_order", "series_coefficients", "reconstruct_physical",
    "ShockTrajectory", "reference_ambient", "y_of_radius", "velocity_of_radius",
    "time_of_radius", "shock_trajectory",
]
