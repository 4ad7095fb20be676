import subprocess
import sys
from pathlib import Path

import pytest
import yaml

from wgmcqed.cli import main
from wgmcqed.config import RunConfig
from wgmcqed.material import MaterialModel
from wgmcqed.report import Table, format_number, read_csv, to_csv

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def mode_values(out):
    t = read_csv(out)
    return dict(t.rows)


def test_mode_report(capsys):
    code, out, err = run(capsys, "mode", "--l", "50", "--lambda", "852.359e-9")
    assert code == 0
    v = mode_values(out)
    assert float(v["a_m"]) == pytest.approx(5.305e-6, rel=1e-3)
    for key in ("x_tilde", "B_re", "B_im", "v_p_m3", "v_tilde", "beta", "g_over_2pi_Hz",
                "q_total", "dominant_loss", "n0", "N0"):
        assert key in v
    assert "resolved configuration" in err


def test_mode_coupling_l33(capsys):
    code, out, _ = run(capsys, "mode", "--l", "33", "--n-fixed", "1.45246")
    assert code == 0
    assert float(mode_values(out)["g_over_2pi_Hz"]) == pytest.approx(749.986e6, rel=0.03)


def test_human_units(capsys):
    code, out, _ = run(capsys, "mode", "--l", "50", "--format", "human")
    assert code == 0
    assert "a_um" in out and "g_over_2pi_MHz" in out and "v_p_um3" in out
    line = next(s for s in out.splitlines() if s.strip().startswith("a_um"))
    assert float(line.split()[1]) == pytest.approx(5.305, rel=1e-3)


@pytest.mark.parametrize("argv", [
    ("mode", "--l", "0"),
    ("mode",),
    ("reproduce", "fig99"),
    ("sweep", "--l-min", "50", "--l-max", "40"),
    ("mode", "--l", "40", "--atom", "unobtainium"),
    ("frobnicate",),
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_unknown_figure_lists_valid_ids(capsys):
    run(capsys, "reproduce", "fig99")
    # argparse writes the choices list to stderr
    code = main(["reproduce", "fig99"])
    _, err = capsys.readouterr()
    assert "fig12" in err and code == 2


def test_numerical_failure_exit_code(capsys):
    code, _, err = run(capsys, "mode", "--l", "40", "--n-fixed", "0.9")
    assert code == 1
    assert "numerical failure" in err


def test_number_format():
    assert format_number(1.5e-4) == "1.500000000e-04"
    assert format_number(2.5e7) == "2.500000000e+07"
    assert format_number(0.125) == "0.125"
    assert format_number(123456.0) == "123456"
    assert format_number(0.0) == "0"
    assert format_number(7) == "7"
    assert format_number(True) == "true"
    assert format_number(None) == ""
    assert format_number(float("inf")) == "inf"


def test_csv_round_trip():
    t = Table("demo", ["a_m", "name"], notes=["note"])
    t.add(1e-6, "x, y")
    back = read_csv(to_csv(t))
    assert back.columns == ["a_m", "name"]
    assert back.rows == [("1.000000000e-06", "x, y")]
    assert back.notes == ["note"]
    with pytest.raises(ValueError):
        read_csv("a,b\n1,2\n")


@pytest.mark.parametrize("argv,golden", [
    (("sweep", "--l-min", "30", "--l-max", "33", "--n-fixed", "1.45246"), "sweep_l30-33.csv"),
    (("qbudget", "--l-min", "70", "--l-max", "74"), "qbudget_l70-74.csv"),
])
def test_golden_files(capsys, argv, golden):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == (GOLDEN / golden).read_text(encoding="utf-8")


def test_echoed_config_reproduces_output(capsys, tmp_path):
    code, first, err = run(capsys, "reproduce", "fig2", "--n", "2.0", "--l-min", "12", "--l-max", "16")
    assert code == 0
    cfg_file = tmp_path / "cfg.yaml"
    cfg_file.write_text(err.split("\n", 1)[1], encoding="utf-8")
    code, second, _ = run(capsys, "run", "--config", str(cfg_file))
    assert code == 0
    assert second == first
    assert "minimum v_tilde=15596.8 at l=14" in first


def test_out_file_and_flag_override(capsys, tmp_path):
    cfg = RunConfig(command="qbudget", l=60, material=MaterialModel(n_fixed=1.45246))
    cfg_file = tmp_path / "c.yaml"
    cfg_file.write_text(cfg.to_yaml(), encoding="utf-8")
    out_file = tmp_path / "q.csv"
    code, out, _ = run(capsys, "qbudget", "--config", str(cfg_file), "--l", "61", "--out", str(out_file))
    assert code == 0 and out == ""
    rows = read_csv(out_file.read_text(encoding="utf-8")).rows
    assert [r[0] for r in rows] == ["61"]


def test_config_round_trip_is_exact():
    cfg = RunConfig(command="sweep", lambda0=852.359e-9, q_fixed=0.8e7, l_min=21, l_max=77,
                    indices=(1.45246, 2.0), material=MaterialModel(n_fixed=1.4524616629781363))
    again = RunConfig.from_yaml(cfg.to_yaml())
    assert again == cfg
    with pytest.raises(ValueError):
        RunConfig.from_dict({"bogus": 1})
    with pytest.raises(ValueError):
        RunConfig(command="nope")
    assert RunConfig.from_dict({"atom": "cs-d2"}).atom.name == "Cs D2"
    assert yaml.safe_load(cfg.to_yaml())["command"] == "sweep"


def test_reproduce_fig12_columns(capsys):
    code, out, _ = run(capsys, "reproduce", "fig12", "--l-min", "74", "--l-max", "78",
                       "--n-fixed", "1.45246")
    assert code == 0
    t = read_csv(out)
    assert t.columns == ["l", "a_um", "n0", "N0", "geomean"]
    assert any("minimum geomean at l=76" in n for n in t.notes)


def test_reproduce_fig14_has_literature_rows(capsys):
    code, out, _ = run(capsys, "reproduce", "fig14", "--radius", "10e-6", "--q-fixed", "0.8e7")
    assert code == 0
    t = read_csv(out)
    sources = t.column("source")
    assert sources.count("literature constant") == 2
    assert sources[0].startswith("computed")


def test_optimize_boundary_flag(capsys):
    code, out, _ = run(capsys, "optimize", "--l-min", "90", "--l-max", "95")
    assert code == 0
    t = read_csv(out)
    row = dict(zip(t.columns, t.rows[t.column("record").index("min_geo_mean")]))
    assert row["l"] == "90" and row["at_boundary"] == "true"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "wgmcqed", "mode", "--l", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 2


@pytest.mark.parametrize("fig,first", [
    ("fig2", "n"), ("fig3", "l"), ("fig5", "n"), ("fig7", "n"), ("fig8", "n"),
    ("fig9", "l"), ("fig10", "l"), ("fig11", "l"), ("fig12", "l"), ("fig14", "name"),
])
def test_every_figure_emits_a_table(capsys, fig, first):
    argv = ["reproduce", fig, "--l-min", "30", "--l-max", "32", "--n", "1.45246"]
    if fig == "fig14":
        argv += ["--l", "40", "--q-fixed", "1e7"]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    t = read_csv(out)
    assert t.columns[0] == first and len(t.rows) >= 3
