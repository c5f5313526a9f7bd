"""High-order Coulomb-corrected strong-field approximation in 1D.

Ionization of a 1D soft-boundary-free Coulomb system by a half-cycle
laser pulse: eikonal amplitude hierarchy (S0, S1, S2qc, S2qu),
photoelectron momentum distribution peaks and Coulomb shifts, analytic
reference formulas, and a heuristic quasiclassical complex-trajectory
solver.  Atomic units throughout.
"""

from .errors import (Ccsfa1dError, BarrierSuppressionError,
                     CoreProximityError, QuadratureError,
                     SaddleConvergenceError, BranchError, CausticError,
                     ShootingError)
from .model import (AtomicSystem, HalfCyclePulse, DerivedParams,
                    derived_params, tunnel_exit)
from .actions import (Contour, CoulombIntegrals, ZetaJet, trajectory,
                      velocity, s0, s1, s2_quasiclassical, s2_quantum,
                      coulomb_integrals, zeta_jet)
from .saddle import (SaddleSolution, seed_guess, solve_zeroth, solve,
                     solve_truncated_direct)
from .amplitude import (VARIANTS, AmplitudeResult, PmdPoint, PeakResult,
                        PptReference, amplitude, pmd, peak, arm_amplitude,
                        ppt_reference, capture_factor, shift_estimate)
from .hqa import (TrajectoryState, HqaSolution, initial_conditions,
                  propagate, shoot, hqa_probability)
from .oracle import (QuadratureReport, exact_x_amplitude, half_line_fraction,
                     nested_riemann_s2, finite_difference_jet,
                     third_order_spi_estimate)

__version__ = "0.1.0"
