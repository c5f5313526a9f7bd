"""Ionization amplitudes per truncation variant, PMD peaks, and references.

Variant composition at the zeroth saddle (x0, t0):

    S0    exp(zeta0) / sqrt(det zeta0),             prefactor c_a0
    S1    exp(zeta0 + zeta1) / sqrt(det zeta0),     full c_a
    S2qc  adds the quasiclassical part of zeta2 and the alpha^2 cross
          term built from zeta1 gradients and the zeta0 Hessian,
          determinant still det zeta0
    S2qu  additionally includes the quantum part of zeta2 and replaces
          the determinant by det(zeta0 + zeta1)

The cross term equals -grad(zeta1) . H0^{-1} . grad(zeta1) / 2 and is
always paired with the second order, never with S1.  The PMD peak is
located either perturbatively (order-by-order solve of the extremum
condition on log|M|) or directly by golden-section search.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from scipy.integrate import quad
from scipy.optimize import brentq, minimize_scalar
from scipy.special import erf, gamma as gamma_fn

from .errors import Ccsfa1dError, CausticError
from .model import AtomicSystem, HalfCyclePulse, derived_params, tunnel_exit
from .actions import ZetaJet, zeta_jet, s0 as s0_action, s1 as s1_integral
from .saddle import solve_zeroth

__all__ = [
    "VARIANTS",
    "AmplitudeResult",
    "PmdPoint",
    "PeakResult",
    "PptReference",
    "amplitude",
    "pmd",
    "peak",
    "arm_amplitude",
    "ppt_reference",
    "capture_factor",
    "shift_estimate",
]

VARIANTS = ("S0", "S1", "S2qc", "S2qu")


@dataclass(frozen=True)
class AmplitudeResult:
    m: complex
    probability: float
    variant: str
    p: float


def _variant_order(variant: str) -> int:
    try:
        return {"S0": 0, "S1": 1, "S2qc": 2, "S2qu": 2}[variant]
    except KeyError:
        raise ValueError(f"unknown variant {variant!r}") from None


def _cross_term(jet: ZetaJet) -> complex:
    """alpha^2 cross term: -(grad zeta1) H0^{-1} (grad zeta1) / 2."""
    denom = jet.z0_xt**2 - jet.z0_tt * jet.z0_xx
    return (jet.z0_xx * jet.z1_t**2
            - 2.0 * jet.z1_x * jet.z0_xt * jet.z1_t
            + jet.z0_tt * jet.z1_x**2) / (2.0 * denom)


def _compose(atom: AtomicSystem, jet: ZetaJet, variant: str
             ) -> tuple[complex, complex, float]:
    """(exponent, determinant, prefactor constant) for one variant."""
    if variant == "S0":
        return jet.zeta0, jet.det0, atom.c_a0
    if variant == "S1":
        return jet.zeta0 + jet.zeta1, jet.det0, atom.c_a
    cross = _cross_term(jet)
    if variant == "S2qc":
        return (jet.zeta0 + jet.zeta1 + jet.zeta2_qc + cross,
                jet.det0, atom.c_a)
    if variant == "S2qu":
        return (jet.zeta0 + jet.zeta1 + jet.zeta2 + cross,
                jet.det01, atom.c_a)
    raise ValueError(f"unknown variant {variant!r}")


def _amplitude_from_jet(atom: AtomicSystem, jet: ZetaJet,
                        variant: str) -> complex:
    exponent, det, pref = _compose(atom, jet, variant)
    if det.real <= 0.0:
        raise CausticError(f"non-positive Hessian determinant {det}")
    return (-1j * pref * math.sqrt(2.0 * math.pi)
            * cmath.exp(exponent) / cmath.sqrt(det))


def amplitude(atom: AtomicSystem, pulse: HalfCyclePulse, p: float,
              variant: str = "S1") -> AmplitudeResult:
    """Ionization amplitude M(p) at one momentum for one variant."""
    t0, x0 = solve_zeroth(atom, pulse, p)
    jet = zeta_jet(atom, pulse, x0, t0, p, order=_variant_order(variant))
    m = _amplitude_from_jet(atom, jet, variant)
    return AmplitudeResult(m=m, probability=abs(m) ** 2, variant=variant, p=p)


@dataclass(frozen=True)
class PmdPoint:
    p: float
    probability: float
    error: str | None = None


def pmd(atom: AtomicSystem, pulse: HalfCyclePulse, p_grid,
        variant: str = "S1") -> list[PmdPoint]:
    """Sample w(p) = |M(p)|^2 on a grid; per-point failures are flagged."""
    out = []
    for p in p_grid:
        try:
            res = amplitude(atom, pulse, float(p), variant)
            out.append(PmdPoint(p=float(p), probability=res.probability))
        except Ccsfa1dError as exc:
            out.append(PmdPoint(p=float(p), probability=math.nan,
                                error=type(exc).__name__))
    return out


# ---------------------------------------------------------------------------
# PMD peak

@dataclass(frozen=True)
class PeakResult:
    """Most probable momentum and its decomposition for one variant."""

    variant: str
    method: str
    p_m: float
    p_orders: tuple[float, float, float]   # (p0, p1, p2) perturbative orders
    coulomb_shift: float                   # p^(0) - p_m, positive: decelerated
    probability: float
    ratio_to_arm: float
    p_m_direct: float | None = None


def _log_m_orders(atom: AtomicSystem, pulse: HalfCyclePulse, variant: str
                  ) -> Callable[[float], tuple[float, float, float]]:
    """Per-momentum evaluation of the exponent orders (h0, h1, h2) of log|M|.

    h0 carries the zeroth exponent and the det(zeta0) prefactor; h1 the
    first Coulomb correction; h2 the variant-specific second order
    (including the determinant replacement for S2qu).
    """
    order = _variant_order(variant)

    def values(p: float) -> tuple[float, float, float]:
        t0, x0 = solve_zeroth(atom, pulse, p)
        jet = zeta_jet(atom, pulse, x0, t0, p, order=order)
        h0 = jet.zeta0.real - 0.5 * cmath.log(jet.det0).real
        h1 = jet.zeta1.real if order >= 1 else 0.0
        h2 = 0.0
        if order >= 2:
            h2 = (jet.zeta2_qc + _cross_term(jet)).real
            if variant == "S2qu":
                h2 += jet.zeta2_qu.real
                h2 -= 0.5 * cmath.log(jet.det01 / jet.det0).real
        return h0, h1, h2

    return values


def _zeroth_peak(atom, pulse, values, delta) -> float:
    """Root of d h0/dp, bracketed around the drift momentum."""
    p0 = derived_params(atom, pulse, warn=False).p0
    step = 1e-4 * delta

    def dh0(p):
        return (values(p + step)[0] - values(p - step)[0]) / (2.0 * step)

    lo, hi = p0 - 0.5 * delta, p0 + 0.5 * delta
    if dh0(lo) * dh0(hi) > 0:
        lo, hi = p0 - 1.5 * delta, p0 + 1.5 * delta
    return brentq(dh0, lo, hi, xtol=1e-12)


def peak(atom: AtomicSystem, pulse: HalfCyclePulse, variant: str = "S1",
         method: str = "perturbative") -> PeakResult:
    """PMD peak via the extremum condition on |M(p)|.

    perturbative: order-by-order solve p_m = p0 + p1 + p2 with the
    exponent expanded to second order; direct: golden-section
    maximization of |M| as a cross-check (both are reported).
    """
    if method not in ("perturbative", "direct"):
        raise ValueError("method must be 'perturbative' or 'direct'")
    delta = ppt_reference(atom, pulse).width
    values = _log_m_orders(atom, pulse, variant)

    p_star = _zeroth_peak(atom, pulse, values, delta)
    p1 = p2 = 0.0
    if atom.charge > 0.0 and _variant_order(variant) >= 1:
        d = 5e-3 * delta
        v = {k: values(p_star + k * d) for k in (-2, -1, 0, 1, 2)}
        h0 = {k: v[k][0] for k in v}
        h1 = {k: v[k][1] for k in v}
        h2 = {k: v[k][2] for k in v}
        h0_2 = (-h0[2] + 16 * h0[1] - 30 * h0[0] + 16 * h0[-1] - h0[-2]) \
            / (12 * d * d)
        h0_3 = (h0[2] - 2 * h0[1] + 2 * h0[-1] - h0[-2]) / (2 * d**3)
        h1_1 = (h1[1] - h1[-1]) / (2 * d)
        h1_2 = (h1[1] - 2 * h1[0] + h1[-1]) / (d * d)
        p1 = -h1_1 / h0_2
        if _variant_order(variant) >= 2:
            h2_1 = (h2[1] - h2[-1]) / (2 * d)
            p2 = -(h2_1 + h1_2 * p1 + 0.5 * h0_3 * p1 * p1) / h0_2

    p_m = p_star + p1 + p2
    p_m_direct = None
    if method == "direct":
        res = minimize_scalar(
            lambda p: -math.log(amplitude(atom, pulse, p, variant).probability),
            bounds=(p_star - 3 * delta, p_star + 3 * delta),
            method="bounded", options={"xatol": 1e-10})
        if not res.success:
            raise Ccsfa1dError("direct peak bracket failure")
        p_m_direct = float(res.x)
        p_m = p_m_direct

    prob = amplitude(atom, pulse, p_m, variant).probability
    arm = arm_amplitude(atom, pulse, p_m)
    ratio = prob / arm.probability if arm.probability > 0 else math.inf
    return PeakResult(variant=variant, method=method, p_m=p_m,
                      p_orders=(p_star, p1, p2),
                      coulomb_shift=p_star - p_m, probability=prob,
                      ratio_to_arm=ratio, p_m_direct=p_m_direct)


# ---------------------------------------------------------------------------
# Reference theories

def arm_amplitude(atom: AtomicSystem, pulse: HalfCyclePulse, p: float
                  ) -> AmplitudeResult:
    """Analytical R-matrix style amplitude at matching point b = x0.

    Time-only saddle-point integration with the scale kappa*Es for the
    second time derivative, the truncated action evaluated at the
    matching coordinate, and the Gaussian matching correction
    exp(+Es b^2 / 2 kappa).
    """
    par = derived_params(atom, pulse, warn=False)
    t0, x0 = solve_zeroth(atom, pulse, p)
    b = x0
    sa0, sa1 = atom.bound_action(b, t0)
    exponent = (-1j * s0_action(pulse, b, t0, p)
                - 1j * s1_integral(atom, pulse, b, t0, p)
                + sa0 + sa1
                + par.es * b**2 / (2.0 * atom.kappa))
    m = (-1j * atom.kappa * atom.c_a * cmath.exp(exponent)
         / math.sqrt(atom.kappa * par.es))
    return AmplitudeResult(m=m, probability=abs(m) ** 2, variant="ARM", p=p)


@dataclass(frozen=True)
class PptReference:
    """Closed-form reference quantities (no saddle solver involved)."""

    width: float                  # Gaussian width of the S0 distribution
    p0: float
    tunneling_exponent: float     # field-dependent exponent of the S0 rate
    prefactor: float              # pi kappa^2 / (e Es)
    coulomb_factor_leading: float
    coulomb_factor_full: float
    pi_over_e: float
    half_line_factor: float       # [1 + erf(1)]^2 pi / (4 e)

    def sfa0_probability(self, p: float) -> float:
        """Short-range PMD w(p): prefactor, tunneling exponent, Gaussian."""
        return self.prefactor * math.exp(
            -self.tunneling_exponent - (p - self.p0) ** 2 / self.width**2)


def ppt_reference(atom: AtomicSystem, pulse: HalfCyclePulse) -> PptReference:
    par = derived_params(atom, pulse, warn=False)
    g = par.gamma
    k = atom.kappa
    asg = math.asinh(g)
    width = math.sqrt(par.es) / math.sqrt(
        k * (math.sqrt(1.0 + 1.0 / g**2) * asg - 1.0))
    expo = k**3 * (-math.sqrt(g * g + 1.0) * g + 2.0 * g * g * asg + asg) \
        / (2.0 * g**3 * pulse.e0)
    pref = math.pi * k * k / (math.e * par.es)

    zk = atom.charge / k
    if atom.charge == 0.0:
        lead = full = 1.0
    else:
        lead = 16.0**zk * par.f ** (-2.0 * zk) / gamma_fn(2.0 * zk + 1.0)
        root4 = (g * g + 1.0) ** 0.25
        inner = math.tanh(0.5 * asg - 0.5 * g * math.sqrt(par.f) / root4)
        arg = (math.sqrt(g * g + 1.0) - 1.0) / (g * inner)
        # acoth(y) = atanh(1/y)
        full = (4.0**zk * (1.0 / (root4 * math.sqrt(par.f))) ** (2.0 * zk)
                / gamma_fn(2.0 * zk + 1.0)
                * math.exp(4.0 * zk * math.atanh(1.0 / arg)))
    return PptReference(
        width=width, p0=par.p0, tunneling_exponent=expo, prefactor=pref,
        coulomb_factor_leading=lead, coulomb_factor_full=full,
        pi_over_e=math.pi / math.e,
        half_line_factor=(1.0 + erf(1.0)) ** 2 * math.pi / (4.0 * math.e))


def capture_factor(atom: AtomicSystem, gamma: float) -> float:
    """Frustrated-ionization rate reduction (2 gamma / e)^(-2Z/kappa).

    Reference only: the half-cycle pulse excludes recollisions, so this
    factor never multiplies any amplitude in this package.
    """
    if gamma <= 0.0:
        raise ValueError("gamma must be positive")
    return (2.0 * gamma / math.e) ** (-2.0 * atom.charge / atom.kappa)


def shift_estimate(atom: AtomicSystem, pulse: HalfCyclePulse, regime: str,
                   exit_model: str = "simpleman") -> float:
    """Coulomb momentum shift of the PMD peak from the continuum force.

    static:        pi Z E0 / kappa^3
    nonadiabatic:  gamma^2 Z E0 / kappa^3
    trajectory_integral: quadrature of the continuum force integral
        int Z / x(t)^2 dt along the post-exit simple-man trajectory with
        the chosen exit model, quoted with the peak-shift sign
        convention (positive for an attractive core).
    """
    par = derived_params(atom, pulse, warn=False)
    z, k = atom.charge, atom.kappa
    if regime == "static":
        return math.pi * z * pulse.e0 / k**3
    if regime == "nonadiabatic":
        return par.gamma**2 * z * pulse.e0 / k**3
    if regime != "trajectory_integral":
        raise ValueError(f"unknown regime {regime!r}")
    if z == 0.0:
        return 0.0
    x_e = tunnel_exit(atom, pulse, exit_model)
    a0 = pulse.a0

    def x_of_t(t: float) -> float:
        # release at the field peak with zero velocity
        return x_e + (pulse.alpha(t) - pulse.alpha(0.0)).real + a0 * t

    tf = pulse.t_end
    val, _ = quad(lambda t: z / x_of_t(t) ** 2, 0.0, tf, limit=200)
    # analytic tail: free drift at momentum a0 after the pulse
    val += z / (a0 * x_of_t(tf))
    return val
