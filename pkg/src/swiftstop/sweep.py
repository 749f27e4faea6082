"""Velocity/charge sweeps, Fig. 1 curves and the diagnostics report."""

import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import ConvergenceError, DomainError, RegimeError
from .kinematics import gas_from_rs, setup
from .numerov import RadialGrid, numerov_delta_l
from .phase_shifts import (
    PotentialSpec,
    SeriesSource,
    born_delta0_hulthen,
    born_delta_l,
    build_series,
    coulomb_diff,
    hulthen_delta0_exact,
    hulthen_jost_phase,
)
from .special import DEFAULT_CONTROL, PSI_ONE, SumControl, re_digamma_1p_iu, sum_series
from .stopping import (
    asymptotic_decomposition,
    born_integral_inequality,
    check_asymptotic_regime,
    coulomb_identity_check,
    identity_2d_check,
    lindhard_barkas,
    stopping_2d_exact,
    stopping_2d_partial_wave,
    stopping_new_form,
    stopping_semi_analytic,
    stopping_transport_form,
    truncated_coulomb_sum,
)
from .tables import Table

METHODS = ("asymptotic", "semi-analytic", "numeric", "transport", "2d")
DEFAULT_LMAX = 40
FIG1_DEFAULTS = {"r_s": 2.07, "v_min": 2.0, "v_max": 10.0, "steps": 81}


@dataclass(frozen=True)
class SweepSpec:
    r_s: float
    z1_list: tuple
    v_min: float
    v_max: float
    steps: int
    spacing: str = "linear"
    methods: tuple = ("asymptotic", "semi-analytic")
    l_max: int = DEFAULT_LMAX
    tolerances: SumControl = field(default_factory=SumControl)
    n0_2d: float = None

    def validate(self):
        if not self.r_s > 0.0:
            raise DomainError("r_s must be positive")
        if not self.z1_list:
            raise DomainError("at least one z1 is required")
        if any(z == 0.0 for z in self.z1_list):
            raise DomainError("z1 = 0 carries no stopping force")
        if not 0.0 < self.v_min < self.v_max:
            raise DomainError("need 0 < vmin < vmax")
        if self.steps < 2:
            raise DomainError("steps must be at least 2")
        if self.spacing not in ("linear", "log"):
            raise DomainError(f"unknown spacing {self.spacing!r}")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise DomainError(f"unknown methods {sorted(unknown)}")
        if "2d" in self.methods and not (self.n0_2d and self.n0_2d > 0.0):
            raise DomainError("method 2d needs a positive 2D density (--n2d)")
        if self.l_max < 1:
            raise DomainError("lmax must be at least 1")

    def velocities(self):
        if self.spacing == "log":
            return np.geomspace(self.v_min, self.v_max, self.steps)
        return np.linspace(self.v_min, self.v_max, self.steps)


def sweep_columns(methods):
    cols = [
        "status", "z1", "v", "gamma", "lambda", "Lambda",
        "delta0_exact", "delta0_born", "L0", "L1", "L2",
        "dEdz_asymptotic", "dEdz_semi_analytic",
    ]
    if "numeric" in methods:
        cols.append("dEdz_numeric")
    if "transport" in methods:
        cols.append("dEdz_transport")
    if "2d" in methods:
        cols.append("dEdz_2d")
    cols += ["lindhard_L1_pi", "lindhard_L1_3pi2", "message"]
    return cols


def _sweep_row(gas, z1, v, spec):
    s = setup(gas, z1, v)
    row = {
        "z1": z1, "v": v, "gamma": s.gamma,
        "lambda": s.lambda_yukawa, "Lambda": s.lambda_hulthen,
    }
    try:
        check_asymptotic_regime(gas, s)
        ctrl = spec.tolerances
        d0 = hulthen_delta0_exact(s, ctrl)
        dec = asymptotic_decomposition(gas, s)
        out = {
            "status": "ok",
            "delta0_exact": d0.value,
            "delta0_born": born_delta0_hulthen(s),
            "L0": dec.L0,
            "L1": dec.L1,
            "L2": dec.L2,
            "dEdz_asymptotic": dec.total,
            "dEdz_semi_analytic": stopping_semi_analytic(gas, s, ctrl).value,
            "lindhard_L1_pi": lindhard_barkas(gas, s, math.pi),
            "lindhard_L1_3pi2": lindhard_barkas(gas, s, 1.5 * math.pi),
        }
        if "numeric" in spec.methods or "transport" in spec.methods:
            series = build_series(PotentialSpec.hulthen(s), s.k, spec.l_max, SeriesSource.NUMEROV, ctrl=ctrl)
            if "numeric" in spec.methods:
                out["dEdz_numeric"] = stopping_new_form(gas, s, series, ctrl).value
            if "transport" in spec.methods:
                out["dEdz_transport"] = stopping_transport_form(gas, s, series).value
        if "2d" in spec.methods:
            out["dEdz_2d"] = stopping_2d_exact(spec.n0_2d, s)
        row.update(out)
    except (RegimeError, ConvergenceError) as exc:
        row["status"] = "regime_error" if isinstance(exc, RegimeError) else "convergence_error"
        row["message"] = str(exc)
    return row


def _meta(command, gas, ctrl, **extra):
    meta = {
        "command": command,
        "version": __version__,
        "units": "hartree atomic units",
        "r_s": repr(gas.r_s),
        "omega_p": f"{gas.omega_p:.9e}",
        "series_abs_tol": repr(ctrl.abs_tol),
        "series_max_terms": str(ctrl.max_terms),
    }
    meta.update({k: str(v) for k, v in extra.items()})
    return meta


def run_sweep(spec):
    """One row per (z1, v), ordered by z1 as given and then by v."""
    spec.validate()
    gas = gas_from_rs(spec.r_s)
    table = Table(
        "sweep",
        sweep_columns(spec.methods),
        meta=_meta(
            "sweep", gas, spec.tolerances,
            methods=",".join(spec.methods), spacing=spec.spacing, lmax=spec.l_max,
        ),
    )
    for z1 in spec.z1_list:
        for v in spec.velocities():
            table.add(**_sweep_row(gas, float(z1), float(v), spec))
    return table


def fig1_tables(r_s=2.07, v_min=2.0, v_max=10.0, steps=81, overlay=None):
    """Proton (solid) and antiproton (dashed) asymptotic curves, plus overlay report."""
    spec = SweepSpec(r_s, (1.0, -1.0), v_min, v_max, steps)
    spec.validate()
    gas = gas_from_rs(r_s)
    curves = Table(
        "fig1",
        ["status", "v", "dEdz_proton", "dEdz_antiproton", "splitting_pct", "message"],
        meta=_meta("fig1", gas, DEFAULT_CONTROL, method="asymptotic"),
    )
    for v in spec.velocities():
        v = float(v)
        try:
            p = asymptotic_decomposition(gas, setup(gas, 1.0, v)).total
            a = asymptotic_decomposition(gas, setup(gas, -1.0, v)).total
        except RegimeError as exc:
            curves.add(status="regime_error", v=v, message=str(exc))
            continue
        curves.add(
            status="ok", v=v, dEdz_proton=p, dEdz_antiproton=a,
            splitting_pct=200.0 * (p - a) / (p + a),
        )
    tables = [curves]
    if overlay is not None:
        tables.append(overlay_table(curves, overlay))
    return tables


def overlay_table(curves, overlay):
    """Compare reference points with the proton curve at the nearest emitted v."""
    rep = Table(
        "overlay",
        ["label", "v_ref", "dEdz_ref", "v_model", "dEdz_model", "pct_diff"],
        meta={"label": overlay.label, "compared_curve": "dEdz_proton"},
    )
    ok = [r for r in curves.rows if r["status"] == "ok"]
    if not ok:
        return rep
    vs = np.array([r["v"] for r in ok])
    for v_ref, s_ref in overlay.points:
        row = ok[int(np.argmin(np.abs(vs - v_ref)))]
        model = row["dEdz_proton"]
        pct = 100.0 * (model - s_ref) / s_ref if s_ref != 0.0 else None
        rep.add(
            label=overlay.label, v_ref=v_ref, dEdz_ref=s_ref,
            v_model=row["v"], dEdz_model=model, pct_diff=pct,
        )
    return rep


def phase_shift_table(r_s, z1, v, l_max=DEFAULT_LMAX, source="numerov", potential="hulthen",
                      ctrl=DEFAULT_CONTROL):
    gas = gas_from_rs(r_s)
    s = setup(gas, z1, v)
    p = PotentialSpec.hulthen(s) if potential == "hulthen" else PotentialSpec.yukawa(s)
    series = build_series(p, s.k, l_max, source, ctrl=ctrl)
    table = Table(
        "phase_shifts",
        ["l", "delta"],
        meta=_meta(
            "phase-shifts", gas, ctrl, z1=repr(float(z1)), v=repr(float(v)), k=repr(s.k),
            potential=potential, screening=repr(p.screening), source=series.source.value,
            tail_model=series.tail_model.value,
        ),
    )
    for l, d in enumerate(series.values):
        table.add(l=l, delta=d)
    return table


DIAG_COLUMNS = ["check", "status", "value", "reference", "residual", "tolerance", "passed", "message"]


def _check(table, name, value, reference, tolerance, relative=False):
    residual = abs(value - reference)
    if relative:
        residual /= abs(reference)
    table.add(
        check=name, status="ok", value=value, reference=reference,
        residual=residual, tolerance=tolerance, passed=bool(residual <= tolerance),
    )


def diagnostics_table(r_s, z1, v, ctrl=DEFAULT_CONTROL, l_max=DEFAULT_LMAX, born_l_max=4000,
                      grid=RadialGrid()):
    """Cross-checks of every identity and independent route at one (r_s, z1, v)."""
    gas = gas_from_rs(r_s)
    s = setup(gas, z1, v)
    table = Table(
        "diagnostics", DIAG_COLUMNS,
        meta=_meta("diagnose", gas, ctrl, z1=repr(float(z1)), v=repr(float(v))),
    )
    try:
        check_asymptotic_regime(gas, s)
        d0 = hulthen_delta0_exact(s, ctrl)
    except RegimeError as exc:
        table.add(check="regime", status="regime_error", passed=False, message=str(exc))
        return table
    g = s.gamma
    for l in range(11):
        lhs, rhs = coulomb_identity_check(g, l)
        _check(table, f"coulomb_identity_l{l}", lhs, rhs, 1e-14)
    for lo in (100, 1000):
        growth = truncated_coulomb_sum(g, 10 * lo) - truncated_coulomb_sum(g, lo)
        _check(table, f"truncated_sum_growth_{lo}_to_{10 * lo}", growth, g * g * math.log(10.0), 0.02,
               relative=True)

    ineq = born_integral_inequality(s.z1, s.k, s.lambda_yukawa)
    _check(table, "born_integral_lhs", ineq.lhs, ineq.lhs_closed, 1e-8, relative=True)
    _check(table, "born_integral_rhs", ineq.rhs, ineq.rhs_closed, 1e-8, relative=True)
    r2 = 4.0 * s.k**2 / s.lambda_yukawa**2
    _check(table, "born_integral_gap", ineq.rhs - ineq.lhs, 0.5 * r2 / (1.0 + r2), 1e-6)
    table.add(check="born_integral_lhs_below_rhs", status="ok", value=ineq.lhs, reference=ineq.rhs,
              passed=bool(ineq.lhs < ineq.rhs))

    born = build_series(PotentialSpec.yukawa(s), s.k, born_l_max, SeriesSource.BORN_CLOSED, ctrl=ctrl)
    new_born = stopping_new_form(gas, s, born, ctrl).value
    transport_born = stopping_transport_form(gas, s, born).value
    prefactor = gas.omega_p**2 * g * g
    table.add(check="stopping_transport_born_yukawa", status="ok", value=transport_born)
    table.add(check="stopping_new_form_born_yukawa", status="ok", value=new_born)
    _check(table, "new_minus_transport_over_prefactor", (new_born - transport_born) / prefactor, 0.5, 0.05)
    table.add(check="transport_below_new_form", status="ok", value=transport_born, reference=new_born,
              passed=bool(transport_born < new_born))
    hybrid = build_series(PotentialSpec.hulthen(s), s.k, l_max, SeriesSource.EXACT_HULTHEN_L0, ctrl=ctrl)
    table.add(check="stopping_new_form_exact_l0", status="ok",
              value=stopping_new_form(gas, s, hybrid, ctrl).value)

    pw = stopping_2d_partial_wave(g, ctrl)
    _check(table, "two_d_partial_wave_vs_tanh", pw.value, 0.5 * math.pi * g * math.tanh(math.pi * g), 1e-8)
    lhs, rhs = identity_2d_check(g, 0)
    _check(table, "two_d_identity_m0", lhs, rhs, 1e-15)
    table.add(check="stopping_2d_exact_unit_density", status="ok", value=stopping_2d_exact(1.0, s))

    u = 2.0 * s.k / s.lambda_hulthen
    brute = sum_series(lambda n: u * u / (n * (n * n + u * u)), ctrl).value
    _check(table, "digamma_closed_vs_series", re_digamma_1p_iu(u) - PSI_ONE, brute, 1e-10)
    _check(table, "born_delta0_digamma_vs_quadrature", born_delta0_hulthen(s),
           born_delta_l(PotentialSpec.hulthen(s), 0, s.k), 1e-7)
    _check(table, "delta0_jost_product_vs_series", hulthen_jost_phase(s, 1_000_000), d0.value, 1e-8)
    _check(table, "delta0_exact_vs_numerov", d0.value, numerov_delta_l(PotentialSpec.hulthen(s), 0, s.k, grid),
           1e-6)
    table.add(check="coulomb_diff_l0", status="ok", value=coulomb_diff(g, 0))
    return table
