"""Rotational hypersurfaces of constant or prescribed Gauss-Kronecker curvature."""

__version__ = "0.1.0"

from .curvature import (CurveParams, CurveState, PqParams, admissible_interval, first_integral_residual,
                        gauss_curvature, phi_bounds, phi_prime_from_first_integral, pq_gauss_curvature,
                        principal_curvatures, validate_params)
from .curves import EndpointKind, GeneratingCurve, read_curve_csv, solve_constant_K, sphere_from_constant_principal
from .errors import *  # noqa: F401,F403
from .measures import MeasureResult, ball_volume, enclosed_volume, sphere_area, surface_area
from .mesh import MeshModel, read_obj, revolve_mesh
from .oracle import check_comparison, numeric_curvatures, numeric_forms, run_suite
from .prescribed import BumpSpec, RiccatiCase, bump_shooting, riccati_closed_form, solve_prescribed_K
from .quadrature import PeriodData, QuadratureConfig, height_gain, period_data, time_of_flight
from .series import asymptotic_pseudosphere, pseudosphere_coefficients, pseudosphere_time_shift, taylor_extremum
