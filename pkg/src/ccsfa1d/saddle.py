"""Complex two-dimensional saddle points of the exponent zeta.

The zeroth-order saddle (t0, x0) solves the closed-form stationarity of
zeta0 by damped Newton iteration.  The Coulomb corrections enter through
perturbative shifts: the first order is the standard linear solve
against the zeta0 Hessian, the second order adds the zeta1 Hessian
acting on the first-order shift, the zeta2 gradient, and zeta0 third
derivatives contracted with the first-order shift.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import BranchError, CausticError, SaddleConvergenceError
from .model import AtomicSystem, HalfCyclePulse, derived_params
from .actions import ZetaJet, zeta_jet, _zeta0_jet

__all__ = [
    "SaddleSolution",
    "seed_guess",
    "solve_zeroth",
    "correction_first",
    "correction_second",
    "solve",
    "solve_truncated_direct",
]

MAX_NEWTON_ITER = 50
MAX_DAMPING_HALVINGS = 8


@dataclass(frozen=True)
class SaddleSolution:
    """Perturbative orders of the complex saddle at asymptotic momentum p."""

    p: float
    t0: complex
    x0: complex
    t1: complex = 0j
    x1: complex = 0j
    t2: complex = 0j
    x2: complex = 0j
    residual0: float = 0.0

    def at_order(self, order: int) -> tuple[complex, complex]:
        """Accumulated (t, x) through the requested perturbative order."""
        t = self.t0
        x = self.x0
        if order >= 1:
            t += self.t1
            x += self.x1
        if order >= 2:
            t += self.t2
            x += self.x2
        return t, x


def seed_guess(atom: AtomicSystem, pulse: HalfCyclePulse, p: float
               ) -> tuple[complex, complex]:
    """Short-range-limit saddle estimate used to seed the Newton iteration.

    The time seed solves p + A(t) = i*kappa for the in-window vector
    potential, shifted down by the coordinate-coupling correction
    i/sqrt(kappa*Es); the coordinate seed is sqrt(kappa/Es).
    """
    par = derived_params(atom, pulse, warn=False)
    a = pulse.a0
    arg = (a - p + 1j * atom.kappa) / a
    t_seed = cmath.asin(arg) / pulse.omega - 1j / math.sqrt(atom.kappa * par.es)
    x_seed = complex(math.sqrt(atom.kappa / par.es))
    return t_seed, x_seed


def _grad_hess_zeta0(atom, pulse, t, x, p):
    d = _zeta0_jet(atom, pulse, x, t, p)
    grad = np.array([d["z0_t"], d["z0_x"]])
    hess = np.array([[d["z0_tt"], d["z0_xt"]],
                     [d["z0_xt"], d["z0_xx"]]])
    return grad, hess


def solve_zeroth(atom: AtomicSystem, pulse: HalfCyclePulse, p: float,
                 seed: tuple[complex, complex] | None = None,
                 tol: float = 1e-12) -> tuple[complex, complex]:
    """Damped Newton solve of the zeroth-order saddle equations.

    Residual scales: |d zeta0/dt| against kappa*Es, |d zeta0/dx| against
    kappa.  Raises SaddleConvergenceError after 50 iterations and
    BranchError when the mirror solution (Im t < 0 or Re x < 0) is hit.
    """
    par = derived_params(atom, pulse, warn=False)
    scale = np.array([atom.kappa * par.es, atom.kappa])
    t, x = seed if seed is not None else seed_guess(atom, pulse, p)

    grad, hess = _grad_hess_zeta0(atom, pulse, t, x, p)
    res = np.max(np.abs(grad) / scale)
    for _ in range(MAX_NEWTON_ITER):
        if res < tol:
            break
        step = np.linalg.solve(hess, -grad)
        lam = 1.0
        for _ in range(MAX_DAMPING_HALVINGS + 1):
            t_new = t + lam * step[0]
            x_new = x + lam * step[1]
            try:
                grad_new, hess_new = _grad_hess_zeta0(atom, pulse, t_new,
                                                      x_new, p)
            except (ValueError, ZeroDivisionError):
                lam *= 0.5
                continue
            res_new = np.max(np.abs(grad_new) / scale)
            if res_new < res or lam <= 0.5**MAX_DAMPING_HALVINGS:
                break
            lam *= 0.5
        t, x = t_new, x_new
        grad, hess, res = grad_new, hess_new, res_new
    else:
        raise SaddleConvergenceError(
            f"zeroth-order saddle did not converge at p = {p} "
            f"(residual {res:.2e}); seed failure")

    if t.imag <= 0.0 or x.real <= 0.0:
        raise BranchError(
            f"converged to the mirror branch: t = {t}, x = {x}")
    return t, x


def _hessian_solve(jet: ZetaJet, rhs_t: complex, rhs_x: complex
                   ) -> tuple[complex, complex]:
    det = jet.det0
    scale = abs(jet.z0_tt * jet.z0_xx) + abs(jet.z0_xt) ** 2
    if abs(det) < 1e-12 * scale:
        raise CausticError("zeta0 Hessian is (near-)degenerate")
    t = (jet.z0_xx * rhs_t - jet.z0_xt * rhs_x) / det
    x = (jet.z0_tt * rhs_x - jet.z0_xt * rhs_t) / det
    return t, x


def correction_first(jet: ZetaJet) -> tuple[complex, complex]:
    """First-order saddle shift -H0^{-1} grad(zeta1) from a jet at (x0, t0)."""
    t1, x1 = _hessian_solve(jet, -jet.z1_t, -jet.z1_x)
    return t1, x1


def correction_second(jet: ZetaJet) -> tuple[complex, complex]:
    """Second-order saddle shift from the alpha^2 expansion of stationarity.

    H0 s2 = -[grad(zeta2) + H1 s1 + T0[s1, s1]/2] with T0 the zeta0
    third-derivative tensor and s1 the first-order shift.
    """
    t1, x1 = correction_first(jet)
    # H1 acting on (t1, x1)
    h1_t = jet.z1_tt * t1 + jet.z1_xt * x1
    h1_x = jet.z1_xt * t1 + jet.z1_xx * x1
    # T0[s1, s1]/2, components ordered (t, x)
    t0_t = 0.5 * (jet.z0_ttt * t1 * t1 + 2.0 * jet.z0_xtt * t1 * x1
                  + jet.z0_xxt * x1 * x1)
    t0_x = 0.5 * (jet.z0_xtt * t1 * t1 + 2.0 * jet.z0_xxt * t1 * x1
                  + jet.z0_xxx * x1 * x1)
    rhs_t = -(jet.z2_t + h1_t + t0_t)
    rhs_x = -(jet.z2_x + h1_x + t0_x)
    return _hessian_solve(jet, rhs_t, rhs_x)


def solve(atom: AtomicSystem, pulse: HalfCyclePulse, p: float,
          order: int = 2) -> SaddleSolution:
    """Zeroth-order Newton solve plus perturbative corrections to `order`."""
    t0, x0 = solve_zeroth(atom, pulse, p)
    grad, _ = _grad_hess_zeta0(atom, pulse, t0, x0, p)
    sol = dict(p=p, t0=t0, x0=x0, residual0=float(np.max(np.abs(grad))))
    if order >= 1 and atom.charge > 0.0:
        jet = zeta_jet(atom, pulse, x0, t0, p, order=order)
        t1, x1 = correction_first(jet)
        sol.update(t1=t1, x1=x1)
        if order >= 2:
            t2, x2 = correction_second(jet)
            sol.update(t2=t2, x2=x2)
    return SaddleSolution(**sol)


def solve_truncated_direct(atom: AtomicSystem, pulse: HalfCyclePulse,
                           p: float, order: int,
                           tol: float = 1e-10,
                           max_iter: int = 40) -> tuple[complex, complex]:
    """Newton solve of the stationarity of the full truncated zeta.

    Validation path for the perturbative corrections: iterates on
    grad(zeta0 + zeta1 [+ zeta2]) with the zeta0 + zeta1 Hessian as
    (quasi-)Jacobian.  Much slower than `solve`; used by tests.
    """
    par = derived_params(atom, pulse, warn=False)
    scale = np.array([atom.kappa * par.es, atom.kappa])
    t, x = solve_zeroth(atom, pulse, p)
    if atom.charge == 0.0 or order == 0:
        return t, x
    for _ in range(max_iter):
        jet = zeta_jet(atom, pulse, x, t, p, order=order)
        gt = jet.z0_t + jet.z1_t
        gx = jet.z0_x + jet.z1_x
        if order >= 2:
            gt += jet.z2_t
            gx += jet.z2_x
        res = max(abs(gt) / scale[0], abs(gx) / scale[1])
        if res < tol:
            return t, x
        hess = np.array([[jet.z0_tt + jet.z1_tt, jet.z0_xt + jet.z1_xt],
                         [jet.z0_xt + jet.z1_xt, jet.z0_xx + jet.z1_xx]])
        step = np.linalg.solve(hess, -np.array([gt, gx]))
        t = t + step[0]
        x = x + step[1]
    raise SaddleConvergenceError(
        f"direct truncated solve did not converge at p = {p}")
