import json
import math
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from swiftstop.cli import main
from swiftstop.sweep import SweepSpec, diagnostics_table, fig1_tables, run_sweep
from swiftstop.tables import (
    OverlayError,
    Table,
    format_value,
    parse_overlay,
    parse_value,
    quantize,
    read_csv,
    render,
)


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_quantized_values_round_trip(x):
    q = quantize(x)
    assert parse_value(format_value(q)) == q


def test_value_formatting():
    assert format_value(None) == "" and parse_value("") is None
    assert parse_value(format_value(True)) is True
    assert parse_value("7") == 7 and parse_value("ok") == "ok"
    assert quantize(1 / 3) == 0.3333333333


def test_table_rejects_unknown_column():
    t = Table("t", ["a"])
    with pytest.raises(KeyError):
        t.add(b=1.0)


def _sweep(**kw):
    base = dict(r_s=2.07, z1_list=(1.0, -1.0), v_min=0.3, v_max=8.0, steps=5)
    base.update(kw)
    return run_sweep(SweepSpec(**base))


def test_sweep_csv_round_trip():
    table = _sweep()
    text = render([table], "csv")
    (back,) = read_csv(text)
    assert back.name == "sweep" and back.columns == table.columns
    assert back.rows == table.rows
    assert back.meta == table.meta
    statuses = table.column("status")
    assert statuses[0] == "regime_error" and statuses[-1] == "ok"


def test_sweep_is_deterministic():
    a = render([_sweep(methods=("asymptotic", "semi-analytic", "2d"), n0_2d=0.01)], "csv")
    b = render([_sweep(methods=("asymptotic", "semi-analytic", "2d"), n0_2d=0.01)], "csv")
    assert a == b


def test_sweep_json():
    obj = json.loads(render([_sweep()], "json"))
    assert obj["columns"][0] == "status"
    assert len(obj["rows"]) == 10
    assert obj["meta"]["units"] == "hartree atomic units"


def test_sweep_validation():
    from swiftstop import DomainError

    for kw in ({"v_min": 5.0, "v_max": 1.0}, {"steps": 1}, {"z1_list": (0.0,)},
               {"methods": ("2d",)}, {"methods": ("bogus",)}, {"r_s": -1.0}):
        with pytest.raises(DomainError):
            _sweep(**kw)


def test_fig1_ordering_and_overlay():
    overlay = parse_overlay("# label: ref\nv,S\n4.0,0.08\n6.0,0.045\n")
    curves, rep = fig1_tables(overlay=overlay)
    ok = [r for r in curves.rows if r["status"] == "ok"]
    assert len(curves.rows) == 81
    assert all(r["dEdz_proton"] > r["dEdz_antiproton"] > 0 for r in ok)
    assert rep.meta["label"] == "ref"
    assert rep.rows[1]["v_model"] == 6.0
    assert rep.rows[1]["pct_diff"] == pytest.approx(100 * (0.0450678091533043 / 0.045 - 1), abs=1e-8)


def test_overlay_parsing_errors():
    assert parse_overlay("").points == ()
    assert parse_overlay("# only comments\n", "x").label == "x"
    with pytest.raises(OverlayError, match="line 2"):
        parse_overlay("1,2\n2,abc\n")
    with pytest.raises(OverlayError, match="increasing"):
        parse_overlay("2,1\n1,1\n")
    with pytest.raises(OverlayError, match="2 columns"):
        parse_overlay("1,2,3\n")
    with pytest.raises(OverlayError, match="non-finite"):
        parse_overlay("1,nan\n")


def test_diagnostics_all_pass():
    table = diagnostics_table(2.07, 1.0, 6.0)
    # informational rows have passed = None
    failed = [r["check"] for r in table.rows if r["passed"] is False]
    assert not failed
    assert sum(r["passed"] is True for r in table.rows) > 20


def test_diagnostics_regime_row():
    table = diagnostics_table(2.07, 1.0, 0.3)
    assert [r["status"] for r in table.rows] == ["regime_error"]


def test_cli_sweep(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code = main(["sweep", "--vmin", "2", "--vmax", "6", "--steps", "3", "--z1", "1", "--z1", "-1",
                 "--output", str(out)])
    assert code == 0
    (t,) = read_csv(out.read_text())
    assert t.column("z1") == [1.0] * 3 + [-1.0] * 3
    assert main(["sweep", "--vmin", "2", "--vmax", "6", "--steps", "3", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["meta"]["command"] == "sweep"


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["sweep", "--vmin", "0.1", "--vmax", "0.2", "--steps", "2"]) == 3
    assert main(["sweep", "--vmin", "2", "--vmax", "1", "--steps", "3"]) == 2
    assert main(["sweep", "--rs", "-1", "--vmin", "1", "--vmax", "2", "--steps", "3"]) == 2
    with pytest.raises(SystemExit) as info:
        main(["sweep", "--vmin", "2"])
    assert info.value.code == 2
    bad = tmp_path / "bad.csv"
    bad.write_text("1,x\n2,y\n")
    assert main(["fig1", "--overlay", str(bad)]) == 4
    assert main(["fig1", "--overlay", str(tmp_path / "missing.csv")]) == 4
    assert main(["sweep", "--vmin", "2", "--vmax", "3", "--steps", "2",
                 "--output", str(tmp_path / "no" / "dir.csv")]) == 4
    capsys.readouterr()


def test_cli_phase_shifts(capsys):
    assert main(["phase-shifts", "--v", "6", "--lmax", "3", "--source", "exact-l0"]) == 0
    (t,) = read_csv(capsys.readouterr().out)
    assert t.column("l") == [0, 1, 2, 3]
    assert t.rows[0]["delta"] == pytest.approx(0.8030154544, abs=1e-9)
    assert t.meta["source"] == "exact_hulthen_l0"


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "swiftstop.cli", "fig1", "--steps", "3"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert res.stdout.startswith("# table: fig1")
    assert not math.isnan(read_csv(res.stdout)[0].rows[0]["dEdz_proton"])
