"""Eikonal action hierarchy along complex laser-driven trajectories.

The zeroth-order (Volkov) action and every derivative of the exponent

    zeta(x, t) = -i S(x, t) + log[x F(t)] + S_a(x, t)

needed by the saddle solver are closed forms.  The first- and
second-order Coulomb corrections are contour integrals of

    s1     = int_t^{tf} V(x(t')) dt'
    s2_qc  = int_t^{tf} dt' [ int_{t'}^{tf} dt'' dV/dx(x(t'')) ]^2 / 2
    s2_qu  = -i int_t^{tf} dt' int_{t'}^{tf} dt'' d2V/dx2(x(t'')) / 2

with x(t') the laser-only trajectory.  All of these, together with the
partial derivatives obtained by differentiating under the integral, are
accumulated in a single backward ODE sweep along the contour.

Sign convention for the conjugated second order: explicit constant
imaginary factors in the closed forms are conjugated before analytic
continuation, which gives  zeta2 = -i*s2_qc + i*s2_qu  (the quantum
double integral enters zeta with a real positive sign).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import CoreProximityError, QuadratureError
from .model import AtomicSystem, HalfCyclePulse

__all__ = [
    "Contour",
    "ActionValues",
    "ZetaJet",
    "trajectory",
    "velocity",
    "s0",
    "s1",
    "s2_quasiclassical",
    "s2_quantum",
    "coulomb_integrals",
    "action_values",
    "zeta_jet",
]

# Relative radius of the exclusion disk around the core, in units of 1/kappa.
CORE_EXCLUSION = 1e-3


@dataclass(frozen=True)
class Contour:
    """Ordered complex time nodes from the start time down to the real axis.

    The default descent contour drops vertically from a complex start
    time t to Re t and then runs along the real axis to t_f.  Any
    polyline with the same endpoints that avoids the core gives the same
    integrals (Cauchy), which the tests exploit.
    """

    nodes: tuple[complex, ...]
    kind: str = "custom"

    def __post_init__(self):
        if len(self.nodes) < 2:
            raise ValueError("a contour needs at least two nodes")
        if abs(self.nodes[-1].imag) > 1e-12:
            raise ValueError("contour must end on the real time axis")

    @classmethod
    def descent(cls, t_start: complex, t_final: float) -> "Contour":
        """Vertical segment to the real axis, then along the real axis."""
        t_start = complex(t_start)
        if abs(t_start.imag) < 1e-14:
            return cls((t_start, complex(t_final)), kind="vertical-then-real")
        return cls((t_start, complex(t_start.real), complex(t_final)),
                   kind="vertical-then-real")


def trajectory(pulse: HalfCyclePulse, x: complex, t: complex, p: float,
               t_prime: complex) -> complex:
    """Laser-only trajectory x + int_t^{t'} [p + A(s)] ds (closed form)."""
    return x + p * (t_prime - t) + pulse.alpha(t_prime) - pulse.alpha(t)


def velocity(pulse: HalfCyclePulse, p: float, t_prime: complex) -> complex:
    """Laser-only velocity p + A(t')."""
    return p + pulse.vector_potential(t_prime)


def _volkov_antiderivative(pulse: HalfCyclePulse, p: float, s: complex) -> complex:
    """Antiderivative of [p + A(s)]^2 / 2 inside the pulse window."""
    a = pulse.a0
    b = p - a
    w = pulse.omega
    return (0.5 * b**2 * s
            - (a * b / w) * cmath.cos(w * s)
            + 0.25 * a**2 * s
            - a**2 * cmath.sin(2.0 * w * s) / (8.0 * w))


def s0(pulse: HalfCyclePulse, x: complex, t: complex, p: float,
       t_final: float | None = None) -> complex:
    """Volkov action [p + A(t)] x + int_t^{tf} [p + A]^2/2 dt'.

    Requires Re t inside the pulse window (true for every saddle point);
    t_final defaults to the end of the pulse.
    """
    tf = pulse.t_end if t_final is None else t_final
    head = (p + pulse.vector_potential(t)) * x
    kinetic = _volkov_antiderivative(pulse, p, min(tf, pulse.t_end))
    kinetic -= _volkov_antiderivative(pulse, p, t)
    if tf > pulse.t_end:
        kinetic += 0.5 * p**2 * (tf - pulse.t_end)
    return head + kinetic


@dataclass(frozen=True)
class CoulombIntegrals:
    """Contour integrals entering s1, s2 and their partial derivatives.

    j1 = int V' dt', j2 = int V'' dt' along the full contour;
    dx_* / dt_* are partials with respect to the trajectory start (x, t).
    """

    s1: complex
    j1: complex
    j2: complex
    s2_qc: complex
    dx_s2qc: complex
    dt_s2qc: complex
    quantum: complex      # D = int dt' int dt'' V''/2  (without the -i)
    dx_quantum: complex
    dt_quantum: complex
    min_core_distance: float


_ZERO_INTEGRALS = CoulombIntegrals(0j, 0j, 0j, 0j, 0j, 0j, 0j, 0j, 0j,
                                   math.inf)


def coulomb_integrals(atom: AtomicSystem, pulse: HalfCyclePulse, x: complex,
                      t: complex, p: float, contour: Contour | None = None,
                      t_final: float | None = None,
                      rtol: float = 1e-12) -> CoulombIntegrals:
    """One backward sweep along the contour accumulating all Coulomb integrals.

    The inner integrals of the nested second-order terms are the running
    values of j1 and j2, so a single ODE pass from t_f back to t yields
    s1, s2_qc, the quantum double integral, and every first partial.
    """
    z = atom.charge
    if z == 0.0:
        return _ZERO_INTEGRALS

    tf = pulse.t_end if t_final is None else t_final
    if contour is None:
        contour = Contour.descent(t, tf)
    nodes = list(contour.nodes)
    if abs(nodes[0] - t) > 1e-12 * max(1.0, abs(t)):
        raise ValueError("contour must start at the trajectory start time")
    if abs(nodes[-1] - tf) > 1e-9:
        nodes[-1] = complex(tf)

    r_min = CORE_EXCLUSION / atom.kappa
    min_dist = [math.inf]

    def xc(tp: complex) -> complex:
        xi = trajectory(pulse, x, t, p, tp)
        d = abs(xi)
        if d < min_dist[0]:
            min_dist[0] = d
        if d < r_min:
            raise CoreProximityError(
                f"trajectory reached |x| = {d:.3e} < {r_min:.3e}")
        return xi

    # State: [intV, intV', intV'', int K^2/2, int K*L, int t''V''/2,
    #         int V'''/2, int t''V'''/2]  with K, L the running intV', intV''.
    def rhs(s, y, a, b):
        tp = a + s * (b - a)
        dts = b - a
        xi = xc(tp)
        v = -z / xi
        v1 = z / xi**2
        v2 = -2.0 * z / xi**3
        v3 = 6.0 * z / xi**4
        k = y[1]
        ell = y[2]
        return -dts * np.array([
            v,
            v1,
            v2,
            0.5 * k * k,
            k * ell,
            0.5 * tp * v2,
            0.5 * v3,
            0.5 * tp * v3,
        ])

    y = np.zeros(8, dtype=complex)
    # Walk the contour in reverse: from t_f back to the start time.
    for a, b in zip(reversed(nodes[1:]), reversed(nodes[:-1])):
        if a == b:
            continue
        sol = solve_ivp(rhs, (0.0, 1.0), y, method="DOP853", args=(a, b),
                        rtol=rtol, atol=1e-14, dense_output=False)
        if not sol.success:
            raise QuadratureError(f"contour integration failed: {sol.message}")
        y = sol.y[:, -1]

    s1_v, j1, j2, s2qc, kl, tv2, g1, g2 = y
    v_start = velocity(pulse, p, t)
    quantum = tv2 - 0.5 * t * j2
    dx_quantum = g2 - t * g1
    dt_quantum = -0.5 * j2 - v_start * dx_quantum
    dt_s2qc = -0.5 * j1**2 - v_start * kl
    return CoulombIntegrals(
        s1=s1_v, j1=j1, j2=j2,
        s2_qc=s2qc, dx_s2qc=kl, dt_s2qc=dt_s2qc,
        quantum=quantum, dx_quantum=dx_quantum, dt_quantum=dt_quantum,
        min_core_distance=min_dist[0])


def s1(atom: AtomicSystem, pulse: HalfCyclePulse, x: complex, t: complex,
       p: float, contour: Contour | None = None,
       t_final: float | None = None) -> complex:
    """First-order eikonal correction int_t^{tf} V(x(t')) dt'.

    The integral stops at the end of the pulse: the logarithmically
    growing Coulomb tail on the real axis is a pure phase (it moves
    neither |M| nor the peak) and is dropped uniformly.
    """
    return coulomb_integrals(atom, pulse, x, t, p, contour, t_final).s1


def s2_quasiclassical(atom: AtomicSystem, pulse: HalfCyclePulse, x: complex,
                      t: complex, p: float, contour: Contour | None = None,
                      t_final: float | None = None) -> complex:
    """Quasiclassical second-order term int dt' [int dt'' V'(x)]^2 / 2."""
    return coulomb_integrals(atom, pulse, x, t, p, contour, t_final).s2_qc


def s2_quantum(atom: AtomicSystem, pulse: HalfCyclePulse, x: complex,
               t: complex, p: float, contour: Contour | None = None,
               t_final: float | None = None) -> complex:
    """Quantum second-order term -i int dt' int dt'' V''(x)/2 (order hbar^0)."""
    return -1j * coulomb_integrals(atom, pulse, x, t, p, contour,
                                   t_final).quantum


@dataclass(frozen=True)
class ActionValues:
    """Action pieces at one phase-space point (x, t) and momentum p."""

    s0: complex
    s1: complex
    s2_qc: complex
    s2_qu: complex
    x: complex
    t: complex
    p: float
    t_final: float


def action_values(atom: AtomicSystem, pulse: HalfCyclePulse, x: complex,
                  t: complex, p: float, contour: Contour | None = None,
                  t_final: float | None = None) -> ActionValues:
    tf = pulse.t_end if t_final is None else t_final
    ci = coulomb_integrals(atom, pulse, x, t, p, contour, t_final)
    return ActionValues(s0=s0(pulse, x, t, p, t_final), s1=ci.s1,
                        s2_qc=ci.s2_qc, s2_qu=-1j * ci.quantum,
                        x=x, t=t, p=p, t_final=tf)


@dataclass(frozen=True)
class ZetaJet:
    """Values and partials of the exponent pieces zeta0, zeta1, zeta2.

    zeta0 = -i s0 + log[x F(t)] + S_a0      (closed form, with third
    derivatives for the second-order saddle expansion),
    zeta1 = -i s1 + S_a1,
    zeta2 = -i s2_qc + i s2_qu.
    """

    x: complex
    t: complex
    p: float
    order: int

    zeta0: complex
    z0_x: complex
    z0_t: complex
    z0_xx: complex
    z0_xt: complex
    z0_tt: complex
    z0_xxx: complex
    z0_xxt: complex
    z0_xtt: complex
    z0_ttt: complex

    zeta1: complex = 0j
    z1_x: complex = 0j
    z1_t: complex = 0j
    z1_xx: complex = 0j
    z1_xt: complex = 0j
    z1_tt: complex = 0j

    zeta2_qc: complex = 0j   # -i * s2_qc
    zeta2_qu: complex = 0j   # quantum double integral, enters with + sign
    z2qc_x: complex = 0j
    z2qc_t: complex = 0j
    z2qu_x: complex = 0j
    z2qu_t: complex = 0j

    @property
    def zeta2(self) -> complex:
        return self.zeta2_qc + self.zeta2_qu

    @property
    def z2_x(self) -> complex:
        return self.z2qc_x + self.z2qu_x

    @property
    def z2_t(self) -> complex:
        return self.z2qc_t + self.z2qu_t

    @property
    def det0(self) -> complex:
        """Hessian determinant of zeta0."""
        return self.z0_tt * self.z0_xx - self.z0_xt**2

    @property
    def det01(self) -> complex:
        """Hessian determinant of zeta0 + zeta1."""
        return ((self.z0_tt + self.z1_tt) * (self.z0_xx + self.z1_xx)
                - (self.z0_xt + self.z1_xt)**2)


def _zeta0_jet(atom: AtomicSystem, pulse: HalfCyclePulse, x: complex,
               t: complex, p: float) -> dict:
    """Closed-form zeta0 and partials up to third order."""
    f = pulse.field(t)
    if x == 0 or f == 0:
        raise ValueError("zeta0 is singular at x = 0 or F(t) = 0")
    fp = pulse.field_prime(t)
    fpp = -pulse.omega**2 * f
    a_t = pulse.vector_potential(t)
    v = p + a_t
    ip = atom.ip

    s0_val = s0(pulse, x, t, p)
    zeta0 = -1j * s0_val + cmath.log(x * f) - atom.kappa * x + 1j * ip * t

    lf1 = fp / f                       # d/dt log F
    lf2 = fpp / f - lf1**2             # d2/dt2 log F
    lf3 = 2.0 * lf1**3 - 3.0 * lf1 * (fpp / f) + (-pulse.omega**2 * fp) / f

    return dict(
        zeta0=zeta0,
        z0_x=-1j * v + 1.0 / x - atom.kappa,
        z0_t=-1j * (f * x - 0.5 * v**2) + lf1 + 1j * ip,
        z0_xx=-1.0 / x**2,
        z0_xt=-1j * f,
        z0_tt=-1j * (fp * x - v * f) + lf2,
        z0_xxx=2.0 / x**3,
        z0_xxt=0j,
        z0_xtt=-1j * fp,
        z0_ttt=-1j * (fpp * x - f**2 - v * fp) + lf3,
    )


def zeta_jet(atom: AtomicSystem, pulse: HalfCyclePulse, x: complex,
             t: complex, p: float, order: int = 2,
             contour: Contour | None = None,
             t_final: float | None = None) -> ZetaJet:
    """Assemble the exponent jet at (x, t) up to the requested order.

    Partials of zeta1 and zeta2 come from differentiation under the
    contour integral; everything else is analytic.
    """
    if order not in (0, 1, 2):
        raise ValueError("order must be 0, 1 or 2")
    base = _zeta0_jet(atom, pulse, x, t, p)
    jet = dict(x=x, t=t, p=p, order=order, **base)

    z = atom.charge
    if order >= 1 and z > 0.0:
        ci = coulomb_integrals(atom, pulse, x, t, p, contour, t_final)
        k = atom.kappa
        v = velocity(pulse, p, t)
        v_x = -z / x          # V at the start point
        v1_x = z / x**2       # V'
        jet.update(
            zeta1=-1j * ci.s1 + (z / k) * cmath.log(2.0 * k * x),
            z1_x=-1j * ci.j1 + z / (k * x),
            z1_t=-1j * (-v_x - v * ci.j1),
            z1_xx=-1j * ci.j2 - z / (k * x**2),
            z1_xt=-1j * (-v1_x - v * ci.j2),
            z1_tt=-1j * (-pulse.field(t) * ci.j1 + v * v1_x + v**2 * ci.j2),
        )
        if order == 2:
            jet.update(
                zeta2_qc=-1j * ci.s2_qc,
                zeta2_qu=ci.quantum,
                z2qc_x=-1j * ci.dx_s2qc,
                z2qc_t=-1j * ci.dt_s2qc,
                z2qu_x=ci.dx_quantum,
                z2qu_t=ci.dt_quantum,
            )
    return ZetaJet(**jet)
