import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from swiftstop import DomainError, HULTHEN_SCALE, gas_from_rs, relative_velocity, setup

# 30-digit mpmath evaluation of the closed forms at r_s = 2.07
N0_207 = 0.0269153699986395325832242991774
WP_207 = 0.581574169496469568898989200091
KF_207 = 0.927129609989136718176241703501


def test_gas_at_207(gas):
    assert gas.n0 == pytest.approx(N0_207, rel=1e-14)
    assert gas.omega_p == pytest.approx(WP_207, rel=1e-14)
    assert gas.k_F == pytest.approx(KF_207, rel=1e-14)
    assert gas.v_F == gas.k_F
    # values quoted to 4-5 digits
    assert gas.omega_p == pytest.approx(0.58160, abs=1e-4)
    assert gas.n0 == pytest.approx(0.026916, abs=1e-6)


def test_gas_rs_one():
    assert gas_from_rs(1.0).omega_p == pytest.approx(math.sqrt(3.0), rel=1e-15)


@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan"), float("inf")])
def test_gas_rejects_bad_rs(bad):
    with pytest.raises(DomainError):
        gas_from_rs(bad)


@given(st.floats(min_value=1e-3, max_value=1e3))
def test_plasma_frequency_scaling(r_s):
    g = gas_from_rs(r_s)
    assert g.omega_p * r_s**1.5 == pytest.approx(math.sqrt(3.0), rel=1e-14)
    assert g.omega_p**2 == pytest.approx(4.0 * math.pi * g.n0, rel=1e-14)
    assert min(g.n0, g.omega_p, g.k_F, g.v_F) > 0.0


def test_setup_values(gas, proton6):
    s = proton6
    assert s.k == s.v == 6.0
    assert s.gamma == pytest.approx(1.0 / 6.0)
    assert s.lambda_yukawa == pytest.approx(0.0969290282494115948, rel=1e-14)
    assert s.lambda_hulthen == pytest.approx(0.172630599312202050, rel=1e-14)
    assert s.lambda_yukawa == pytest.approx(0.096933, abs=1e-5)
    assert s.lambda_hulthen / s.lambda_yukawa == pytest.approx(HULTHEN_SCALE, rel=1e-15)


def test_setup_rejects_nonpositive_velocity(gas):
    with pytest.raises(DomainError):
        setup(gas, 1.0, 0.0)


@given(
    st.floats(min_value=0.1, max_value=10.0),
    st.floats(min_value=0.01, max_value=20.0),
    st.floats(min_value=0.05, max_value=50.0),
)
def test_setup_sign_symmetry(r_s, z1, v):
    gas = gas_from_rs(r_s)
    a, b = setup(gas, z1, v), setup(gas, -z1, v)
    assert b.gamma == -a.gamma
    assert (a.k, a.lambda_yukawa, a.lambda_hulthen) == (b.k, b.lambda_yukawa, b.lambda_hulthen)
    assert a.gamma * a.v == pytest.approx(z1, rel=1e-15)


def test_relative_velocity():
    assert relative_velocity(6.0, 0.0) == 6.0
    assert relative_velocity(1.0, 3.0) == 2.0
    ideal = 0.6 * KF_207**2
    assert relative_velocity(6.0, ideal) == pytest.approx(6.0 * (1.0 + ideal / 108.0), rel=1e-15)
    assert relative_velocity(6.0, ideal) == pytest.approx(6.02866, abs=2e-5)
    with pytest.raises(DomainError):
        relative_velocity(0.0, 1.0)
