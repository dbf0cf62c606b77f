import math
import types

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadcruise import (ControlVector, MotorForces, QuadParams, QuadState,
                        actuator_step, inverse_mixer, mixer, rotational_accel,
                        state_derivative, translational_accel)
from quadcruise.errors import InvalidInputError, SingularMixerError
from quadcruise.simulation import rk4_step


class TestMixer:
    def test_symmetric_forces_cancel_torques(self, params):
        u = mixer(MotorForces(10, 10, 10, 10), params)
        assert (u.u1, u.u2, u.u3, u.u4) == (40, 0, 0, 0)

    def test_asymmetric_forces(self, params):
        u = mixer(MotorForces(1, 2, 3, 4), params)
        assert u.u1 == 10
        assert u.u2 == -2
        assert u.u3 == -2
        assert u.u4 == pytest.approx(-0.1, abs=1e-15)

    def test_zero(self, params):
        u = mixer(MotorForces(0, 0, 0, 0), params)
        assert (u.u1, u.u2, u.u3, u.u4) == (0, 0, 0, 0)

    def test_nonfinite_rejected(self, params):
        with pytest.raises(InvalidInputError):
            mixer(MotorForces(1.0, math.nan, 0.0, 0.0), params)
        with pytest.raises(InvalidInputError):
            mixer(MotorForces(math.inf, 0.0, 0.0, 0.0), params)


class TestInverseMixer:
    def test_symmetric(self, params):
        f = inverse_mixer(ControlVector(40, 0, 0, 0), params)
        assert f.as_tuple() == (10, 10, 10, 10)

    def test_inverts_asymmetric_example(self, params):
        f = inverse_mixer(ControlVector(10, -2, -2, -0.1), params)
        assert f.as_tuple() == pytest.approx((1, 2, 3, 4), abs=1e-12)

    def test_round_trip_1000_random(self, params, rng):
        worst = 0.0
        for _ in range(1000):
            u = ControlVector(rng.uniform(0, 100), rng.uniform(-10, 10),
                              rng.uniform(-10, 10), rng.uniform(-1, 1))
            v = mixer(inverse_mixer(u, params), params)
            worst = max(worst, abs(v.u1 - u.u1), abs(v.u2 - u.u2),
                        abs(v.u3 - u.u3), abs(v.u4 - u.u4))
        assert worst < 1e-12

    def test_singular_for_zero_d(self):
        # d = 0 cannot be built via QuadParams; exercise the guard directly
        stub = types.SimpleNamespace(d=0.0)
        with pytest.raises(SingularMixerError):
            inverse_mixer(ControlVector(10, 0, 0, 0), stub)


class TestActuator:
    def test_equilibrium(self, params):
        f = MotorForces(3, 3, 3, 3)
        assert actuator_step(f, f, params) == (0, 0, 0, 0)

    def test_derivative_magnitude(self, params):
        d = actuator_step(MotorForces(2, 0, 0, 0), MotorForces(0, 0, 0, 0),
                          params)
        assert d[0] == -30.0

    def test_command_saturated_before_lag(self, params):
        d = actuator_step(MotorForces(0, 0, 0, 0),
                          MotorForces(1e6, -5.0, 0, 0), params)
        assert d[0] == params.omega_act * params.f_max
        assert d[1] == 0.0

    def test_step_response_matches_exponential(self, params):
        # integrate dF/dt = 15 (1 - F) to t = 0.1 s
        y = (0.0,)

        def deriv(t, y):
            return actuator_step(MotorForces(y[0], 0, 0, 0),
                                 MotorForces(1.0, 0, 0, 0), params)[:1]

        for i in range(100):
            y = rk4_step(deriv, i * 1e-3, y, 1e-3)
        assert y[0] == pytest.approx(1.0 - math.exp(-1.5), abs=1e-9)


class TestTranslationalAccel:
    def test_hover_equilibrium(self, params):
        state = QuadState(psi=1.234)
        acc = translational_accel(state, params.m * params.g, params)
        assert acc == pytest.approx((0, 0, 0), abs=1e-12)

    def test_pitch_tilts_thrust(self, params):
        state = QuadState(theta=0.1)
        acc = translational_accel(state, 10.0 * params.m, params)
        assert acc[0] == pytest.approx(10 * math.sin(0.1), abs=1e-12)
        assert acc[1] == 0.0
        assert acc[2] == pytest.approx(10 * math.cos(0.1) - 9.81, abs=1e-12)

    def test_free_fall(self, params):
        acc = translational_accel(QuadState(), 0.0, params)
        assert acc == (0.0, 0.0, -params.g)

    @given(psi=st.floats(-math.pi, math.pi), u1=st.floats(0.0, 400.0))
    def test_yaw_invariance_at_level_attitude(self, psi, u1):
        params = QuadParams()
        acc = translational_accel(QuadState(psi=psi), u1, params)
        assert acc[0] == pytest.approx(0.0, abs=1e-12)
        assert acc[1] == pytest.approx(0.0, abs=1e-12)
        assert acc[2] == pytest.approx(u1 / params.m - params.g, abs=1e-12)


class TestRotationalAccel:
    def test_gyroscopic_terms_only(self, params):
        state = QuadState(p=0.1, q=0.2, r=0.3)
        acc = rotational_accel(state, ControlVector(0, 0, 0, 0), params)
        assert acc[0] == pytest.approx(-0.02, abs=1e-12)
        assert acc[1] == pytest.approx(0.01, abs=1e-12)
        assert acc[2] == 0.0  # k5 = 0 when Jxx == Jyy

    def test_roll_input_gain(self, params):
        acc = rotational_accel(QuadState(), ControlVector(0, 1, 0, 0), params)
        assert acc[0] == pytest.approx(params.l / params.jxx, abs=1e-12)

    def test_rest_is_zero(self, params):
        assert rotational_accel(QuadState(), ControlVector(0, 0, 0, 0),
                                params) == (0, 0, 0)


class TestStateDerivative:
    def test_hover_is_fixed_point(self, params):
        f = params.hover_thrust / 4.0
        d = state_derivative(QuadState(z=5.0), MotorForces(f, f, f, f), params)
        assert max(abs(v) for v in d.as_tuple()) < 1e-12

    def test_free_fall_from_rest(self, params):
        d = state_derivative(QuadState(), MotorForces(0, 0, 0, 0), params)
        assert d.vz == -params.g
        assert all(v == 0.0 for k, v in zip(range(12), d.as_tuple())
                   if k != 5)

    def test_finite_difference_consistency(self, params, rng):
        # derivative must agree with (x(t+h) - x(t)) / h to O(h)
        state = QuadState(*[rng.uniform(-0.5, 0.5) for _ in range(12)])
        forces = MotorForces(*[rng.uniform(0, 20) for _ in range(4)])

        def deriv(t, y):
            return state_derivative(QuadState.from_tuple(y), forces,
                                    params).as_tuple()

        h = 1e-6
        y1 = rk4_step(deriv, 0.0, state.as_tuple(), h)
        fd = [(a - b) / h for a, b in zip(y1, state.as_tuple())]
        exact = deriv(0.0, state.as_tuple())
        assert max(abs(a - b) for a, b in zip(fd, exact)) < 1e-4


@settings(max_examples=50)
@given(jxy=st.floats(0.01, 1.0), jz=st.floats(0.01, 1.0))
def test_k5_zero_for_symmetric_inertia(jxy, jz):
    from quadcruise import coupling_constants
    params = QuadParams(jxx=jxy, jyy=jxy, jzz=jz)
    assert coupling_constants(params).k5 == 0.0
