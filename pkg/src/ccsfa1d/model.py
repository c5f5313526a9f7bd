"""Atom, half-cycle pulse, and derived strong-field parameters.

Atomic units throughout (hbar = m_e = |e| = 1).  The active electron is
bound by the 1D Coulomb potential V(x) = -Z/|x| with asymptotic ground
state  c_a * exp(S_a)  where

    S_a(x, t) = -kappa*x + i*Ip*t + (Z/kappa) * log(2*kappa*x)

on the ionization side Re x > 0.  The laser is a half-cycle cosine pulse,
so recollisions with the core are excluded by construction.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from scipy.special import gamma as gamma_fn

from .errors import BarrierSuppressionError

__all__ = [
    "AtomicSystem",
    "HalfCyclePulse",
    "DerivedParams",
    "derived_params",
    "tunnel_exit",
]


@dataclass(frozen=True)
class AtomicSystem:
    """Binding system: atomic momentum unit kappa = sqrt(2*Ip), core charge Z.

    charge = 0 selects the short-range limit; every Coulomb correction
    downstream is then exactly zero and the bound-state normalization
    falls back to the short-range value sqrt(kappa) used by the
    zeroth-order amplitude.
    """

    kappa: float
    charge: float = 0.0

    def __post_init__(self):
        if self.kappa <= 0.0:
            raise ValueError("kappa must be positive")
        if self.charge < 0.0:
            raise ValueError("charge must be non-negative")

    @property
    def ip(self) -> float:
        return 0.5 * self.kappa**2

    @property
    def ea(self) -> float:
        """Atomic field strength kappa^3."""
        return self.kappa**3

    @property
    def c_a0(self) -> float:
        """Short-range bound-state prefactor sqrt(kappa)."""
        return math.sqrt(self.kappa)

    @property
    def c_a(self) -> float:
        """Asymptotic bound-state normalization kappa/sqrt(2Z Gamma(2Z/kappa)).

        Rewritten through Gamma(2Z/kappa + 1) = (2Z/kappa) Gamma(2Z/kappa)
        this is sqrt(kappa/Gamma(2Z/kappa + 1)), continuous in Z with
        c_a -> c_a0 as Z -> 0.
        """
        if self.charge == 0.0:
            return self.c_a0
        s = 2.0 * self.charge / self.kappa
        val = math.sqrt(self.kappa / gamma_fn(s + 1.0))
        if not math.isfinite(val) or val <= 0.0:
            raise ValueError("bound-state normalization is not finite/positive")
        return val

    def bound_action(self, x: complex, t: complex) -> tuple[complex, complex]:
        """Pieces (S_a0, S_a1) of the asymptotic bound-state exponent.

        S_a0 = -kappa*x + i*Ip*t,  S_a1 = (Z/kappa)*log(2*kappa*x) on the
        principal branch (all saddle coordinates sit at Re x > 0).
        """
        if x == 0:
            raise ValueError("bound_action is singular at x = 0")
        s_a0 = -self.kappa * x + 1j * self.ip * t
        if self.charge == 0.0:
            s_a1 = 0.0 + 0.0j
        else:
            s_a1 = (self.charge / self.kappa) * cmath.log(2.0 * self.kappa * x)
        return s_a0, s_a1


@dataclass(frozen=True)
class HalfCyclePulse:
    """Half-cycle cosine pulse F(t) = E0 cos(wt) for |wt| < pi/2, else 0.

    The gauge constant of A is fixed so that A(t) = 0 after the pulse;
    the canonical momentum p then equals the detected momentum and the
    drift p0 = -A(0) = E0/omega.  Complex times are evaluated with the
    analytic in-window formula whenever Re(omega*t) lies inside the
    window, as required for saddle-point integration.
    """

    e0: float
    omega: float

    def __post_init__(self):
        if self.e0 <= 0.0 or self.omega <= 0.0:
            raise ValueError("e0 and omega must be positive")

    @property
    def t_end(self) -> float:
        """End of the pulse window pi/(2 omega)."""
        return 0.5 * math.pi / self.omega

    @property
    def a0(self) -> float:
        """Vector-potential scale E0/omega (also the drift momentum p0)."""
        return self.e0 / self.omega

    def field(self, t: complex) -> complex:
        """F(t), analytically continued inside the window (test on Re t)."""
        if abs((self.omega * t).real) >= 0.5 * math.pi:
            return 0.0 + 0.0j
        return self.e0 * cmath.cos(self.omega * t)

    def field_prime(self, t: complex) -> complex:
        """dF/dt inside the window, zero outside."""
        if abs((self.omega * t).real) >= 0.5 * math.pi:
            return 0.0 + 0.0j
        return -self.e0 * self.omega * cmath.sin(self.omega * t)

    def vector_potential(self, t: complex) -> complex:
        """A(t) = (E0/omega)(sin(wt) - 1) in the window, 0 after, -2E0/w before."""
        re_phase = (self.omega * t).real
        if re_phase >= 0.5 * math.pi:
            return 0.0 + 0.0j
        if re_phase <= -0.5 * math.pi:
            return -2.0 * self.a0 + 0.0j
        return self.a0 * (cmath.sin(self.omega * t) - 1.0)

    def alpha(self, t: complex) -> complex:
        """Antiderivative of A(t), continuous across the window edges."""
        re_phase = (self.omega * t).real
        a = self.a0
        tf = self.t_end
        if re_phase >= 0.5 * math.pi:
            return -a * tf + 0.0j
        if re_phase <= -0.5 * math.pi:
            return -2.0 * a * t - a * tf
        return a * (-cmath.cos(self.omega * t) / self.omega - t)


@dataclass(frozen=True)
class DerivedParams:
    """Dimensionless characterization of an (atom, pulse) pair."""

    gamma: float          # Keldysh parameter omega*kappa/E0
    es: float             # effective peak field E0*sqrt(1+gamma^2)
    f: float              # reduced field E0/kappa^3
    up: float             # ponderomotive energy E0^2/(4 omega^2)
    p0: float             # most probable drift momentum E0/omega
    barrier_ok: bool      # E_s/E_a < kappa/(16 Z) (True when Z = 0)
    spi_ok: bool          # omega << Ip and omega << Up


def derived_params(atom: AtomicSystem, pulse: HalfCyclePulse,
                   warn: bool = True) -> DerivedParams:
    """Keldysh parameter and friends, with advisory validity checks.

    Violations emit warnings rather than raising: parameter scans may
    intentionally probe near-threshold behavior.
    """
    gamma = pulse.omega * atom.kappa / pulse.e0
    es = pulse.e0 * math.sqrt(1.0 + gamma**2)
    f = pulse.e0 / atom.ea
    up = pulse.e0**2 / (4.0 * pulse.omega**2)
    p0 = pulse.e0 / pulse.omega

    barrier_ok = True
    if atom.charge > 0.0:
        barrier_ok = es / atom.ea < atom.kappa / (16.0 * atom.charge)
    spi_ok = pulse.omega < 0.1 * atom.ip and pulse.omega < 0.1 * up

    if warn:
        if not barrier_ok:
            warnings.warn(
                "field approaches the over-the-barrier regime; eikonal "
                "perturbation theory is unreliable", stacklevel=2)
        if not spi_ok:
            warnings.warn(
                "omega is not small against Ip and Up; saddle-point "
                "integration may be inaccurate", stacklevel=2)
    return DerivedParams(gamma=gamma, es=es, f=f, up=up, p0=p0,
                         barrier_ok=barrier_ok, spi_ok=spi_ok)


def tunnel_exit(atom: AtomicSystem, pulse: HalfCyclePulse, model: str,
                exact: bool = False) -> float:
    """Tunnel-exit coordinate for the requested barrier model.

    model options:
      "simpleman"         : Ip/E0
      "nonadiabatic"      : 2/gamma^2 (sqrt(1+gamma^2) - 1) * Ip/E0
      "coulomb_corrected" : (Ip/E0)(1 - 4 Z E0/(kappa Ea)); with
                            exact=True the exact outer root of
                            Ip = E0 x + Z/x is returned instead.
    """
    ip, e0 = atom.ip, pulse.e0
    if model == "simpleman":
        return ip / e0
    if model == "nonadiabatic":
        g = derived_params(atom, pulse, warn=False).gamma
        return 2.0 / g**2 * (math.sqrt(1.0 + g**2) - 1.0) * ip / e0
    if model == "coulomb_corrected":
        z = atom.charge
        if not exact:
            return (ip / e0) * (1.0 - 4.0 * z * e0 / (atom.kappa * atom.ea))
        disc = ip**2 - 4.0 * e0 * z
        if disc < 0.0:
            raise BarrierSuppressionError(
                "no real tunnel exit: barrier is suppressed")
        return (ip + math.sqrt(disc)) / (2.0 * e0)
    raise ValueError(f"unknown tunnel-exit model {model!r}")
