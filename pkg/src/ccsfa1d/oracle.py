"""Brute-force evaluators used as arbiters by the test suite.

Nothing here is needed on the hot path: the quadratures and difference
stencils are slow but independent of the analytic machinery they check.
The time integral is always treated by saddle point, as everywhere in
this package; only the coordinate integral is ever done exactly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import erf

from .errors import CoreProximityError, QuadratureError
from .model import AtomicSystem, HalfCyclePulse, derived_params
from .actions import (ZetaJet, zeta_jet, coulomb_integrals, trajectory,
                      _zeta0_jet)
from .saddle import solve_zeroth

__all__ = [
    "QuadratureReport",
    "exact_x_amplitude",
    "half_line_fraction",
    "nested_riemann_s2",
    "finite_difference_jet",
    "third_order_spi_estimate",
]


@dataclass(frozen=True)
class QuadratureReport:
    value: complex
    error: float
    nodes: int


def _time_saddle_at_x(atom, pulse, x, p, t_guess, order):
    """Newton solve of the stationarity d zeta/dt = 0 at fixed x."""
    t = t_guess
    for _ in range(60):
        jet = zeta_jet(atom, pulse, x, t, p, order=order)
        num = jet.z0_t + (jet.z1_t if order >= 1 else 0.0)
        den = jet.z0_tt + (jet.z1_tt if order >= 1 else 0.0)
        step = num / den
        t = t - step
        if abs(step) < 1e-12 * (1.0 + abs(t)):
            return t, zeta_jet(atom, pulse, x, t, p, order=order)
    raise QuadratureError(f"time saddle at x = {x} did not converge")


def exact_x_amplitude(atom: AtomicSystem, pulse: HalfCyclePulse, p: float,
                      variant: str = "S0", order: int = 0
                      ) -> QuadratureReport:
    """Exact coordinate quadrature of the amplitude over x in (0, inf).

    At each x the time integral is done by saddle point around the
    x-dependent time saddle; the remaining x integral of the full
    (non-Gaussian) integrand is evaluated by adaptive quadrature.
    Quantifies the coordinate-SPI error of the amplitude composition.
    """
    if variant not in ("S0", "S1"):
        raise ValueError("exact x-quadrature supports S0 and S1 only")
    order = 0 if variant == "S0" else 1
    t0, x0 = solve_zeroth(atom, pulse, p)
    pref = atom.c_a if variant == "S1" else atom.c_a0

    xs = abs(x0)
    lo = 1e-3 * xs           # integrand vanishes linearly at the origin
    hi = 5.0 * xs            # Gaussian falloff scale is xs itself

    # continuation table: march the time saddle outward from x0 so the
    # Newton solve inside the quadrature always starts close.  Near the
    # classical exit the saddle reaches the real time axis (turning
    # point, vanishing time curvature); stop safely before that.
    grid = np.linspace(lo, hi, 200)
    guesses = np.empty(grid.size, dtype=complex)
    i0 = int(np.argmin(np.abs(grid - xs)))
    last = grid.size - 1
    tg = t0
    for i in range(i0, grid.size):
        try:
            tg, _ = _time_saddle_at_x(atom, pulse, complex(grid[i]), p, tg,
                                      order)
        except QuadratureError:
            last = i - 1
            break
        if tg.imag < 0.15 * t0.imag:
            last = i
            break
        guesses[i] = tg
    tg = guesses[i0]
    first = 0
    for i in range(i0 - 1, -1, -1):
        try:
            tg, _ = _time_saddle_at_x(atom, pulse, complex(grid[i]), p, tg,
                                      order)
        except (QuadratureError, CoreProximityError):
            # near-core breakdown of the eikonal phase (order >= 1 only);
            # keep a safety margin above the last refractory node
            first = min(i + 4, i0)
            break
        guesses[i] = tg
    if last < grid.size - 1:
        hi = grid[max(last - 1, i0 + 1)]
    lo = grid[first]
    grid = grid[first:max(last, i0 + 2)]
    guesses = guesses[first:first + grid.size]

    count = [0]

    def integrand(x):
        count[0] += 1
        guess = complex(np.interp(x, grid, guesses.real),
                        np.interp(x, grid, guesses.imag))
        _, jet = _time_saddle_at_x(atom, pulse, complex(x), p, guess, order)
        zeta = jet.zeta0 + (jet.zeta1 if order >= 1 else 0.0)
        ztt = jet.z0_tt + (jet.z1_tt if order >= 1 else 0.0)
        return cmath.exp(zeta) * cmath.sqrt(2.0 * math.pi / -ztt)
    re, re_err = quad(lambda x: integrand(x).real, lo, hi, limit=200,
                      epsabs=0.0, epsrel=1e-10)
    im, im_err = quad(lambda x: integrand(x).imag, lo, hi, limit=200,
                      epsabs=0.0, epsrel=1e-10)
    value = -1j * pref / math.sqrt(2.0 * math.pi) * complex(re, im)
    err = math.hypot(re_err, im_err) * pref
    return QuadratureReport(value=value, error=err, nodes=count[0])


def half_line_fraction(jet: ZetaJet) -> complex:
    """Amplitude fraction kept when the coordinate Gaussian spans (0, inf).

    Uses the Schur curvature of the exponent after the time integration;
    equals (1 + erf(1))/2 in the limit where that curvature is -2/x_s^2.
    """
    c = jet.z0_xx - jet.z0_xt**2 / jet.z0_tt
    arg = jet.x * cmath.sqrt(-c / 2.0)
    return 0.5 * (1.0 + erf(arg))


def nested_riemann_s2(atom: AtomicSystem, pulse: HalfCyclePulse,
                      x: complex, t: complex, p: float,
                      part: str = "qc", t_final: float | None = None,
                      tol: float = 1e-6) -> QuadratureReport:
    """Fixed-grid nested Riemann sums for the second-order double integrals.

    part "qc": int dt' [int_{t'} dt'' dV/dx]^2 / 2;
    part "qu": int dt' int_{t'} dt'' d2V/dx2 / 2.
    Midpoint rule on the straight two-leg contour with one grid halving
    and Richardson extrapolation; the analytic ODE sweep must agree.
    """
    if part not in ("qc", "qu"):
        raise ValueError("part must be 'qc' or 'qu'")
    if atom.charge == 0.0:
        return QuadratureReport(value=0j, error=0.0, nodes=0)
    tf = pulse.t_end if t_final is None else t_final
    z = atom.charge

    # two straight legs: t -> Re t, Re t -> tf
    def nodes_weights(n):
        legs = [(t, complex(t.real)), (complex(t.real), complex(tf))]
        ts, ws = [], []
        for a, b in legs:
            if a == b:
                continue
            h = (b - a) / n
            for k in range(n):
                ts.append(a + (k + 0.5) * h)
                ws.append(h)
        return np.array(ts), np.array(ws)

    def evaluate(n):
        ts, ws = nodes_weights(n)
        xs = np.array([trajectory(pulse, x, t, p, tt) for tt in ts])
        if part == "qc":
            inner = z / xs**2                     # dV/dx on Re x > 0
        else:
            inner = -z / xs**3                    # d2V/dx2 / 2
        # inner[k] integrated from ts[k] to tf: suffix sums of the tail
        tail = np.cumsum((inner * ws)[::-1])[::-1] - 0.5 * inner * ws
        if part == "qc":
            return np.sum(ws * tail**2) / 2.0
        return np.sum(ws * tail)

    n = 1024
    coarse = evaluate(n)
    fine = evaluate(2 * n)
    value = (4.0 * fine - coarse) / 3.0           # midpoint rule is O(h^2)
    err = abs(fine - coarse) / 3.0
    if err > tol * max(abs(value), 1.0):
        raise QuadratureError(f"riemann s2 ({part}) error {err:.2e}")
    return QuadratureReport(value=value, error=err, nodes=3 * n)


def finite_difference_jet(atom: AtomicSystem, pulse: HalfCyclePulse,
                          x: complex, t: complex, p: float,
                          order: int = 2) -> ZetaJet:
    """Richardson-improved central differences of the exponent pieces.

    Steps scale with the natural saddle widths 1/kappa and
    1/sqrt(kappa Es); values are recomputed from scratch at each stencil
    node so the result is independent of the analytic derivative code.
    """
    par = derived_params(atom, pulse, warn=False)
    hx = 1e-2 / atom.kappa
    ht = 1e-2 / math.sqrt(atom.kappa * par.es)
    z, k = atom.charge, atom.kappa

    def pieces(xx, tt):
        # values only; recomputed per stencil node with a tight ODE
        # tolerance so roundoff, not integrator noise, limits the stencil
        d = _zeta0_jet(atom, pulse, xx, tt, p)
        if order == 0 or z == 0.0:
            return np.array([d["zeta0"], 0j, 0j, 0j])
        ci = coulomb_integrals(atom, pulse, xx, tt, p, rtol=1e-13)
        z1 = -1j * ci.s1 + (z / k) * cmath.log(2.0 * k * xx)
        if order == 1:
            return np.array([d["zeta0"], z1, 0j, 0j])
        return np.array([d["zeta0"], z1, -1j * ci.s2_qc, ci.quantum])

    def d1(h, axis):
        def diff(step):
            if axis == "x":
                return (pieces(x + step, t) - pieces(x - step, t)) \
                    / (2.0 * step)
            return (pieces(x, t + step) - pieces(x, t - step)) / (2.0 * step)
        return (4.0 * diff(h / 2.0) - diff(h)) / 3.0

    def d2(h, axis, center):
        def diff(step):
            if axis == "x":
                return (pieces(x + step, t) - 2.0 * center
                        + pieces(x - step, t)) / step**2
            return (pieces(x, t + step) - 2.0 * center
                    + pieces(x, t - step)) / step**2
        return (4.0 * diff(h / 2.0) - diff(h)) / 3.0

    def dxt():
        def diff(sx, st):
            return (pieces(x + sx, t + st) - pieces(x + sx, t - st)
                    - pieces(x - sx, t + st) + pieces(x - sx, t - st)) \
                / (4.0 * sx * st)
        return (4.0 * diff(hx / 2.0, ht / 2.0) - diff(hx, ht)) / 3.0

    def d3_from_closed_form(key, axis, h):
        # third derivatives of zeta0 only: stencil over the closed-form
        # second partials, which are exact
        def g(xx, tt):
            return _zeta0_jet(atom, pulse, xx, tt, p)[key]

        def diff(step):
            if axis == "x":
                return (g(x + step, t) - g(x - step, t)) / (2.0 * step)
            return (g(x, t + step) - g(x, t - step)) / (2.0 * step)
        return (4.0 * diff(h / 2.0) - diff(h)) / 3.0

    v = pieces(x, t)
    gx = d1(hx, "x")
    gt = d1(ht, "t")
    gxx = d2(hx, "x", v)
    gtt = d2(ht, "t", v)
    gxt = dxt()
    return ZetaJet(
        x=x, t=t, p=p, order=order,
        zeta0=v[0], z0_x=gx[0], z0_t=gt[0],
        z0_xx=gxx[0], z0_xt=gxt[0], z0_tt=gtt[0],
        z0_xxx=d3_from_closed_form("z0_xx", "x", hx),
        z0_xxt=d3_from_closed_form("z0_xx", "t", ht),
        z0_xtt=d3_from_closed_form("z0_tt", "x", hx),
        z0_ttt=d3_from_closed_form("z0_tt", "t", ht),
        zeta1=v[1], z1_x=gx[1], z1_t=gt[1],
        z1_xx=gxx[1], z1_xt=gxt[1], z1_tt=gtt[1],
        zeta2_qc=v[2], z2qc_x=gx[2], z2qc_t=gt[2],
        zeta2_qu=v[3], z2qu_x=gx[3], z2qu_t=gt[3])


def third_order_spi_estimate(jet: ZetaJet) -> float:
    """Relative size of the cubic time term in the saddle integration.

    |d3 zeta0/dt3|^2 / (72 |d2 zeta0/dt2|^3): the square of the cubic
    correction at the Gaussian width, of order (E0/Ea)/72.  Diagnostic
    only; the term is never applied to any amplitude.
    """
    return abs(jet.z0_ttt) ** 2 / (72.0 * abs(jet.z0_tt) ** 3)
