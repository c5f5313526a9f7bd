import cmath
import math

import pytest

from ccsfa1d import (CoreProximityError, TrajectoryState,
                     initial_conditions, propagate, shoot, hqa_probability,
                     amplitude, derived_params, ppt_reference)
from conftest import system

ATOM, PULSE = system()
ATOM0, _ = system(charge=0.0)
P0 = PULSE.a0


def test_initial_conditions_launch_point():
    t_s = 40.0j
    x_s, v_s = initial_conditions(ATOM, PULSE, t_s)
    assert x_s.real > 0.0
    assert x_s == pytest.approx(cmath.sqrt(ATOM.kappa / PULSE.field(t_s)))
    # short-range limit: v = i kappa (1 - 1/(kappa x)) exactly at Z=0
    x0, v0 = initial_conditions(ATOM0, PULSE, t_s)
    assert v0 == pytest.approx(1j * ATOM0.kappa
                               - 1j / x0)


def test_initial_conditions_outside_window():
    with pytest.raises(ValueError):
        initial_conditions(ATOM, PULSE, PULSE.t_end + 1.0)


def test_propagate_short_range_matches_closed_form():
    # Z = 0: Newton dynamics is laser-only, closed form available
    t_s = 30.0j
    x_s, v_s = initial_conditions(ATOM0, PULSE, t_s)
    state = TrajectoryState(t=t_s, x=x_s, v=v_s)
    end = propagate(ATOM0, PULSE, state, complex(PULSE.t_end))
    # compare against the analytic Volkov trajectory with the same
    # complex initial velocity split off the vector potential
    drift = v_s - PULSE.vector_potential(t_s)
    x_ref = x_s + drift * (PULSE.t_end - t_s) \
        + (PULSE.alpha(PULSE.t_end) - PULSE.alpha(t_s))
    assert end.x == pytest.approx(x_ref, abs=1e-9)
    assert end.v == pytest.approx(drift + PULSE.vector_potential(PULSE.t_end),
                                  abs=1e-9)


def test_propagate_contour_swap():
    # endpoint is contour independent (analytic dynamics off the core)
    t_s = 35.0j
    x_s, v_s = initial_conditions(ATOM, PULSE, t_s)
    state = TrajectoryState(t=t_s, x=x_s, v=v_s)
    mid_a = complex(t_s.real)                 # vertical then real
    mid_b = 0.5 * PULSE.t_end + 0.5 * t_s     # slanted two-leg detour
    end_a = propagate(ATOM, PULSE,
                      propagate(ATOM, PULSE, state, mid_a),
                      complex(PULSE.t_end))
    end_b = propagate(ATOM, PULSE,
                      propagate(ATOM, PULSE, state, mid_b),
                      complex(PULSE.t_end))
    assert end_a.x == pytest.approx(end_b.x, rel=1e-9)
    assert end_a.v == pytest.approx(end_b.v, abs=1e-8)
    assert end_a.action == pytest.approx(end_b.action, rel=1e-9)


def test_propagate_core_exclusion():
    state = TrajectoryState(t=0j, x=2e-4 + 0j, v=0j)
    with pytest.raises(CoreProximityError):
        propagate(ATOM, PULSE, state, complex(PULSE.t_end))


def test_energy_bookkeeping_real_segment():
    # d/dt (v^2/2 - xF + V) = -x F' along real time
    sol = shoot(ATOM, PULSE)
    x_s, v_s = initial_conditions(ATOM, PULSE, sol.t_s)
    st0 = propagate(ATOM, PULSE,
                    TrajectoryState(t=sol.t_s, x=x_s, v=v_s),
                    complex(sol.t_s.real))

    def energy(state):
        return (0.5 * state.v**2 - state.x * PULSE.field(state.t)
                - ATOM.charge / state.x)

    t_a, t_b = 10.0, 60.0
    sa = propagate(ATOM, PULSE, st0, complex(t_a))
    sb = propagate(ATOM, PULSE, sa, complex(t_b))
    from scipy.integrate import quad
    de = energy(sb) - energy(sa)
    work = quad(lambda t: -(propagate(ATOM, PULSE, sa, complex(t)).x
                            * PULSE.field_prime(t)).real, t_a, t_b,
                limit=30)[0]
    assert de.real == pytest.approx(work, rel=1e-5)


def test_shoot_exit_conditions():
    sol = shoot(ATOM, PULSE)
    assert sol.residual < 1e-8
    # most probable trajectory: launch on the imaginary axis, exit at
    # the field peak with vanishing velocity
    assert abs(sol.t_s.real) < 1e-9
    assert abs(sol.t_e) < 1e-9
    assert sol.x_e > 0.0
    x_s, v_s = initial_conditions(ATOM, PULSE, sol.t_s)
    exit_state = propagate(ATOM, PULSE,
                           TrajectoryState(t=sol.t_s, x=x_s, v=v_s),
                           complex(sol.t_e))
    assert abs(exit_state.x.imag) < 1e-8
    assert abs(exit_state.v) < 1e-7


def test_shoot_short_range_recovers_drift():
    sol = shoot(ATOM0, PULSE)
    par = derived_params(ATOM0, PULSE, warn=False)
    assert sol.p_final == pytest.approx(par.p0, abs=1e-8)
    # launch time matches the zeroth saddle's imaginary part scale
    assert sol.t_s.imag > 0.0


def test_shoot_coulomb_decelerates():
    sol = shoot(ATOM, PULSE)
    par = derived_params(ATOM, PULSE, warn=False)
    assert sol.p_final < par.p0
    # exit closer in than the simple-man estimate Ip/E0
    assert sol.x_e < ATOM.ip / PULSE.e0


def test_probability_short_range_matches_s0():
    sol = shoot(ATOM0, PULSE)
    prob = hqa_probability(ATOM0, PULSE, sol)
    s0 = amplitude(ATOM0, PULSE, sol.p_final, "S0").probability
    assert prob == pytest.approx(s0, rel=0.10)


def test_probability_coulomb_enhancement():
    sol = shoot(ATOM, PULSE)
    prob = hqa_probability(ATOM, PULSE, sol)
    s0 = amplitude(ATOM0, PULSE, P0, "S0").probability
    ref = ppt_reference(ATOM, PULSE)
    # enhancement within an order of magnitude of the closed-form factor
    assert 0.1 < (prob / s0) / ref.coulomb_factor_leading < 10.0
