"""Heuristic quasiclassical approach: complex-trajectory shooting.

The electron starts at a complex time t_s on the coordinate x_s =
sqrt(kappa/F(t_s)) with the under-barrier momentum iota = i*kappa -
i(Z+kappa)/(kappa*x_s) and obeys Newton dynamics in the combined laser
and Coulomb fields, x'' = F(t) - Z/x^2.  The most probable trajectory
is singled out by the tunnel-exit conditions Im x(t_e) = 0 and
x'(t_e) = 0 at a real exit time t_e; the asymptotic momentum is the
real velocity at the end of the pulse.  The ionization probability is
reconstructed from the quasiclassical propagator with a saddle-point
prefactor obtained by finite differences of the exponent.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import root

from .errors import CoreProximityError, ShootingError
from .model import AtomicSystem, HalfCyclePulse, derived_params
from .saddle import seed_guess

__all__ = [
    "TrajectoryState",
    "HqaSolution",
    "initial_conditions",
    "propagate",
    "shoot",
    "hqa_probability",
]

CORE_EXCLUSION = 1e-3


@dataclass(frozen=True)
class TrajectoryState:
    """Phase-space point plus the action accumulated since launch."""

    t: complex
    x: complex
    v: complex
    action: complex = 0j


@dataclass(frozen=True)
class HqaSolution:
    """Converged most-probable complex trajectory."""

    t_s: complex
    t_e: float
    x_e: float
    p_final: float
    action: complex          # S~_c from t_s to the end of the pulse
    x_final: complex
    residual: float


def initial_conditions(atom: AtomicSystem, pulse: HalfCyclePulse,
                       t_s: complex) -> tuple[complex, complex]:
    """Launch coordinate sqrt(kappa/F(t_s)) and under-barrier momentum.

    The square root is taken on the principal branch, Re x_s > 0; the
    momentum follows from the coordinate derivative of the
    quasiclassical action at the launch point.
    """
    f = pulse.field(t_s)
    if f == 0:
        raise ValueError("launch time lies outside the pulse window")
    x_s = cmath.sqrt(atom.kappa / f)
    if x_s.real < 0.0:
        x_s = -x_s
    v_s = 1j * atom.kappa - 1j * (atom.charge + atom.kappa) / (atom.kappa * x_s)
    return x_s, v_s


def _rhs(atom, pulse, t0, direction):
    z = atom.charge
    k = atom.kappa

    def rhs(s, y):
        t = t0 + direction * s
        x, v = y[0], y[1]
        if abs(x) < CORE_EXCLUSION / k:
            raise CoreProximityError(
                f"trajectory reached |x| = {abs(x):.2e} at t = {t}")
        force = pulse.field(t) - z / x**2
        lagr = 0.5 * v * v + x * pulse.field(t) + z / x
        return np.array([v, force, lagr]) * direction

    return rhs


def propagate(atom: AtomicSystem, pulse: HalfCyclePulse,
              state: TrajectoryState, t_target: complex,
              rtol: float = 1e-10, atol: float = 1e-12) -> TrajectoryState:
    """Integrate the Newton dynamics along the straight segment to t_target.

    The action integral of the Lagrangian x'^2/2 + xF + Z/x is carried
    along.  Piecewise straight contours are handled by chaining calls.
    """
    dt = t_target - state.t
    length = abs(dt)
    if length == 0.0:
        return state
    direction = dt / length
    y0 = np.array([state.x, state.v, state.action], dtype=complex)
    sol = solve_ivp(_rhs(atom, pulse, state.t, direction), (0.0, length), y0,
                    method="DOP853", rtol=rtol, atol=atol, dense_output=False)
    if not sol.success:
        raise ShootingError(f"trajectory integration failed: {sol.message}")
    x, v, action = sol.y[:, -1]
    return TrajectoryState(t=t_target, x=x, v=v, action=action)


def _descend(atom, pulse, t_s: complex, t_e: float) -> TrajectoryState:
    """Vertical leg t_s -> Re t_s, then along the real axis to t_e."""
    x_s, v_s = initial_conditions(atom, pulse, t_s)
    state = TrajectoryState(t=t_s, x=x_s, v=v_s)
    state = propagate(atom, pulse, state, complex(t_s.real))
    return propagate(atom, pulse, state, complex(t_e))


def shoot(atom: AtomicSystem, pulse: HalfCyclePulse,
          tol: float = 1e-10) -> HqaSolution:
    """Solve the tunnel-exit boundary conditions for (Re t_s, Im t_s, t_e).

    Residuals: Im x(t_e), Re x'(t_e), Im x'(t_e).  Re t_s is left free
    so that its vanishing for the most probable trajectory is an
    outcome, not an input.  The converged trajectory is then continued
    to the end of the pulse where the velocity is purely drift.
    """
    par = derived_params(atom, pulse, warn=False)
    t_seed, _ = seed_guess(atom, pulse, par.p0)
    scale_v = atom.kappa

    def residuals(u):
        t_s = complex(u[0], u[1])
        if t_s.imag <= 0.0:
            return np.array([1.0, 1.0, 1.0])
        try:
            st = _descend(atom, pulse, t_s, u[2])
        except CoreProximityError:
            return np.array([1.0, 1.0, 1.0])
        return np.array([st.x.imag * atom.kappa,
                         st.v.real / scale_v,
                         st.v.imag / scale_v])

    sol = root(residuals, x0=[0.0, t_seed.imag, 0.0], method="hybr",
               options={"xtol": 1e-13, "maxfev": 400})
    res = float(np.max(np.abs(residuals(sol.x))))
    if not sol.success and res > 1e-8:
        raise ShootingError(f"exit shooting did not converge: {sol.message}")

    t_s = complex(sol.x[0], sol.x[1])
    t_e = float(sol.x[2])
    st = _descend(atom, pulse, t_s, t_e)
    x_e = st.x.real
    final = propagate(atom, pulse, st, complex(pulse.t_end))
    return HqaSolution(t_s=t_s, t_e=t_e, x_e=x_e,
                       p_final=float(final.v.real), action=final.action,
                       x_final=final.x, residual=res)


def _exponent(atom: AtomicSystem, pulse: HalfCyclePulse, t_s: complex,
              x_s: complex, v_s: complex, p: float) -> complex:
    """Total exponent -i p x_f + i S~_c + S_a for a launch point.

    The launch velocity is free here; callers fix it either by the
    under-barrier momentum rule or by the final-momentum constraint.
    """
    state = TrajectoryState(t=t_s, x=x_s, v=v_s)
    state = propagate(atom, pulse, state, complex(t_s.real))
    state = propagate(atom, pulse, state, complex(pulse.t_end))
    sa0, sa1 = atom.bound_action(x_s, t_s)
    return -1j * p * state.x + 1j * state.action + sa0 + sa1


def _matched_velocity(atom, pulse, t_s, x_s, p, v_guess):
    """Launch velocity such that the end-of-pulse velocity equals p."""
    v0 = v_guess
    for _ in range(30):
        state = TrajectoryState(t=t_s, x=x_s, v=v0)
        state = propagate(atom, pulse, state, complex(t_s.real))
        state = propagate(atom, pulse, state, complex(pulse.t_end))
        err = state.v - p
        if abs(err) < 1e-11 * atom.kappa:
            return v0
        dv = 1e-6 * (1.0 + abs(v0))
        state2 = TrajectoryState(t=t_s, x=x_s, v=v0 + dv)
        state2 = propagate(atom, pulse, state2, complex(t_s.real))
        state2 = propagate(atom, pulse, state2, complex(pulse.t_end))
        jac = (state2.v - state.v) / dv
        v0 = v0 - err / jac
    raise ShootingError("velocity matching did not converge")


def hqa_probability(atom: AtomicSystem, pulse: HalfCyclePulse,
                    solution: HqaSolution) -> float:
    """|M|^2 at the most probable momentum of the shooting solution.

    M = -i c_a sqrt(2 pi) x_s F(t_s) exp(eta) / sqrt(det eta'') with
    eta(x, t) = -i p x_f + i S~_c + S_a evaluated on trajectories whose
    end-of-pulse velocity is held at p_final; the Hessian of eta over
    the launch point is taken by central finite differences.
    """
    par = derived_params(atom, pulse, warn=False)
    t_s = solution.t_s
    p = solution.p_final
    x_s, v_s = initial_conditions(atom, pulse, t_s)

    dx = 5e-3 * abs(x_s)
    dt = 5e-3 / math.sqrt(atom.kappa * par.es)

    def eta(xx, tt):
        vg = 1j * atom.kappa - 1j * (atom.charge + atom.kappa) \
            / (atom.kappa * xx)
        v0 = _matched_velocity(atom, pulse, tt, xx, p, vg)
        return _exponent(atom, pulse, tt, xx, v0, p)

    e00 = eta(x_s, t_s)
    exx = (eta(x_s + dx, t_s) - 2.0 * e00 + eta(x_s - dx, t_s)) / dx**2
    ett = (eta(x_s, t_s + dt) - 2.0 * e00 + eta(x_s, t_s - dt)) / dt**2
    ext = (eta(x_s + dx, t_s + dt) - eta(x_s + dx, t_s - dt)
           - eta(x_s - dx, t_s + dt) + eta(x_s - dx, t_s - dt)) \
        / (4.0 * dx * dt)
    # fold the x F(t) prefactor into the saddle curvature analytically;
    # the launch point solves the stationarity of the full exponent
    # eta + log(x F), so the Van-Vleck determinant belongs to that sum
    lf1 = pulse.field_prime(t_s) / pulse.field(t_s)
    lf2 = -pulse.omega**2 - lf1**2
    det = (exx - 1.0 / x_s**2) * (ett + lf2) - ext**2

    pref = atom.c_a * math.sqrt(2.0 * math.pi) * abs(x_s * pulse.field(t_s))
    return pref**2 * math.exp(2.0 * e00.real) / abs(det)
