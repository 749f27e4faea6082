import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swiftstop import DomainError, RegimeError, gas_from_rs, setup
from swiftstop.phase_shifts import (
    PhaseShiftSeries,
    PotentialKind,
    PotentialSpec,
    SeriesSource,
    born_delta0_hulthen,
    born_delta0_yukawa,
    born_delta_l,
    born_delta_l_closed,
    build_series,
    coulomb_diff,
    hulthen_delta0_exact,
    hulthen_delta0_series,
    hulthen_jost_phase,
    hulthen_vq_sum,
)

# brute-force sums (8e6 terms plus integral tail) at r_s = 2.07
EXACT_DELTA0 = {
    (1.0, 4.0): 1.0029668898643658,
    (-1.0, 4.0): -0.9890577452209667,
    (1.0, 6.0): 0.8030154544408377,
    (-1.0, 6.0): -0.7995898034375806,
    (1.0, 8.0): 0.6741030007997261,
    (-1.0, 8.0): -0.6728700769118827,
}
# 30-digit digamma evaluation
BORN_DELTA0 = {4.0: 1.00197016192335, 6.0: 0.803123465447557, 8.0: 0.674261643489573}


@pytest.mark.parametrize("z1,v", sorted(EXACT_DELTA0))
def test_exact_delta0_frozen(gas, z1, v):
    res = hulthen_delta0_exact(setup(gas, z1, v))
    assert res.converged
    assert res.value == pytest.approx(EXACT_DELTA0[z1, v], abs=1e-10)


def test_exact_delta0_positive_exceeds_negative(gas):
    for v in (4.0, 6.0, 8.0):
        assert EXACT_DELTA0[1.0, v] > -EXACT_DELTA0[-1.0, v] > 0.0
        d = hulthen_delta0_exact(setup(gas, 1.0, v)).value
        assert d > -hulthen_delta0_exact(setup(gas, -1.0, v)).value


@pytest.mark.parametrize("v", [4.0, 6.0, 8.0])
def test_born_delta0_frozen(gas, v):
    s = setup(gas, 1.0, v)
    assert born_delta0_hulthen(s) == pytest.approx(BORN_DELTA0[v], abs=1e-12)
    assert born_delta0_hulthen(setup(gas, -1.0, v)) == -born_delta0_hulthen(s)


def test_born_delta0_routes_agree(proton6):
    p = PotentialSpec.hulthen(proton6)
    quad = born_delta_l(p, 0, proton6.k)
    assert quad == pytest.approx(born_delta0_hulthen(proton6), abs=1e-7)
    assert born_delta_l_closed(p, 0, proton6.k) == born_delta0_hulthen(proton6)


def test_born_yukawa_closed_form():
    k, lam = 6.0, 0.0969290282494116
    assert born_delta0_yukawa(1.0, k, lam) == pytest.approx(0.5 * math.log1p((2 * k / lam) ** 2) / k)
    p = PotentialSpec(PotentialKind.YUKAWA, 1.0, lam)
    assert born_delta_l(p, 0, k) == pytest.approx(born_delta0_yukawa(1.0, k, lam), abs=1e-10)
    with pytest.raises(DomainError):
        born_delta0_yukawa(1.0, 0.0, lam)


@pytest.mark.parametrize("kind", ["hulthen", "yukawa"])
@pytest.mark.parametrize("l", [1, 2, 5, 17, 40])
def test_born_closed_matches_quadrature(proton6, kind, l):
    p = getattr(PotentialSpec, kind)(proton6)
    closed = born_delta_l_closed(p, l, proton6.k)
    quad = born_delta_l(p, l, proton6.k, rel_tol=1e-11)
    assert closed == pytest.approx(quad, abs=1e-11, rel=1e-8)


def test_born_is_odd_in_charge(proton6, antiproton6):
    for l in (0, 3):
        a = born_delta_l(PotentialSpec.hulthen(proton6), l, 6.0)
        b = born_delta_l(PotentialSpec.hulthen(antiproton6), l, 6.0)
        assert b == -a


def test_hulthen_vq_sum_brute_force():
    lam = 0.17263059931220205
    n = np.arange(1, 4_000_001, dtype=float)
    for q in (0.01, 0.5, 3.0, 12.0):
        brute = math.fsum(n / (q * q + (n * lam) ** 2) ** 2)
        # remainder of the brute sum ~ 1 / (2 lam^4 N^2)
        brute += 1.0 / (2.0 * lam**4 * 4e6**2)
        assert hulthen_vq_sum(q, lam) == pytest.approx(brute, rel=1e-10)


def test_hulthen_vq_small_q_limit():
    lam = 0.3
    # sum 1/(n^3 lam^4) as q -> 0
    assert hulthen_vq_sum(0.0, lam) == pytest.approx(1.2020569031595942 / lam**4, rel=1e-12)


def test_jost_product_matches_series(proton6, antiproton6):
    for s in (proton6, antiproton6):
        jost = hulthen_jost_phase(s, 1_000_000)
        assert jost == pytest.approx(hulthen_delta0_exact(s).value, abs=5e-9)


def test_regime_error_at_strong_coupling():
    gas = gas_from_rs(2.07)
    # gamma x > 1 + x^2 needs gamma > 2; here gamma = 3, x ~ 0.52
    s = setup(gas, 3.0, 1.0)
    with pytest.raises(RegimeError):
        hulthen_delta0_exact(s)
    with pytest.raises(RegimeError):
        hulthen_jost_phase(s, 10)


def test_zero_coupling():
    assert hulthen_delta0_series(0.0, 6.0, 0.17).value == 0.0
    p = PotentialSpec(PotentialKind.HULTHEN, 0.0, 0.17)
    series = build_series(p, 6.0, 5, "born_closed")
    assert series.values == (0.0,) * 6


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=0.01, max_value=0.9), st.floats(min_value=1.0, max_value=20.0))
def test_exact_delta0_weak_coupling_tends_to_born(g, k):
    # relative difference from Born is O(gamma); gamma <= 9e-4 here
    gas = gas_from_rs(2.07)
    s = setup(gas, g * 1e-3 * k, k)
    exact = hulthen_delta0_exact(s).value
    assert exact == pytest.approx(born_delta0_hulthen(s), rel=5e-3)


def test_coulomb_diff():
    assert coulomb_diff(1.0, 0) == pytest.approx(math.pi / 4)
    assert coulomb_diff(-0.5, 3) == -coulomb_diff(0.5, 3)


def test_potential_validation():
    with pytest.raises(DomainError):
        PotentialSpec(PotentialKind.HULTHEN, 1.0, 0.0)
    with pytest.raises(DomainError):
        PotentialSpec(PotentialKind.COULOMB, 1.0, 0.2)
    p = PotentialSpec("yukawa", 2.0, 0.5)
    assert p.kind is PotentialKind.YUKAWA
    assert p.with_charge(-2.0).v_r(1.0) == -p.v_r(1.0)


def test_hulthen_small_r_expansion():
    p = PotentialSpec(PotentialKind.HULTHEN, 1.3, 0.4)
    c = p.small_r_coefficients(10)
    r = 0.05
    approx = sum(cm * r ** (m - 1) for m, cm in enumerate(c))
    assert approx == pytest.approx(2.0 * float(p.v_r(r)), rel=1e-13)


def test_hulthen_to_coulomb_at_small_r():
    p = PotentialSpec(PotentialKind.HULTHEN, 1.0, 0.17)
    assert float(p.v_r(1e-6)) * 1e-6 == pytest.approx(-1.0, rel=1e-6)


def test_series_container(proton6):
    p = PotentialSpec.hulthen(proton6)
    series = build_series(p, 6.0, 6, "exact_hulthen_l0")
    assert series.source is SeriesSource.EXACT_HULTHEN_L0
    assert series.l_max == 6 and series.gamma == pytest.approx(1 / 6)
    assert series.values[0] == pytest.approx(EXACT_DELTA0[1.0, 6.0], abs=1e-10)
    assert np.all(series.differences() == np.asarray(series.values[:-1]) - series.values[1:])
    with pytest.raises(DomainError):
        build_series(PotentialSpec.yukawa(proton6), 6.0, 4, "exact_hulthen_l0")
    with pytest.raises(DomainError):
        build_series(p, 6.0, 0, "born_closed")
    assert isinstance(series, PhaseShiftSeries)


def test_yukawa_closed_series_is_monotone(proton6):
    vals = build_series(PotentialSpec.yukawa(proton6), 6.0, 200, "born_closed").values
    assert all(a > b > 0 for a, b in zip(vals, vals[1:]))
