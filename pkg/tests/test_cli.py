import math
import subprocess
import sys

import numpy as np
import pytest

from robin_dce.cli import main
from robin_dce.figures import FIGURE_FILES
from robin_dce.kernels import DampedCosine, delta_gamma
from robin_dce.tables import parse_csv, read_csv, recompute


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def column(cols, data, name):
    return data[:, cols.index(name)]


def test_spectrum_point_value(capsys):
    code, out, err = run(capsys, "spectrum", "--grid", "0:1:5")
    assert code == 0
    assert "validation: ok" in err
    meta, cols, data = parse_csv(out)
    assert meta["gamma0"] == "1.0" and meta["method"] == "closed"
    row = data[2]
    assert column(cols, data, "omega")[2] == 0.5
    assert row[cols.index("vac_scaled")] == 0.16
    assert row[cols.index("total_scaled")] == 0.16


def test_spectrum_zero_temperature_endpoints(capsys, tmp_path):
    out = tmp_path / "s.csv"
    assert main(["spectrum", "--grid", "0:1:2", "--out", str(out)]) == 0
    _, cols, data = read_csv(out)
    np.testing.assert_array_equal(data[:, 2:], 0.0)


def test_spectrum_deterministic(capsys):
    argv = ("spectrum", "--gamma0", "5", "--temperature", "0.07", "--grid", "0:1.5:301")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_rate_sweep(capsys):
    code, out, _ = run(capsys, "rate", "--omega0-sweep", "0:1:2", "--temperatures", "0,0.1")
    assert code == 0
    _, cols, data = parse_csv(out)
    T = column(cols, data, "temperature")
    total = column(cols, data, "rate_total")
    w0 = column(cols, data, "omega0")
    cold, hot = total[T == 0], total[T == 0.1]
    assert cold[0] == 0.0 and hot[0] > 0
    assert cold[1] == pytest.approx((3 * math.log(2) - math.pi / 2) / 5, rel=1e-11)
    assert np.all(hot >= cold)
    np.testing.assert_array_equal(w0[T == 0], w0[T == 0.1])


def test_rate_general_method(capsys):
    code, out, _ = run(capsys, "rate", "--omega0-sweep", "1:2:2", "--method", "general", "--rel-tol", "1e-6")
    assert code == 0
    _, cols, data = parse_csv(out)
    assert column(cols, data, "rate_vac")[0] == pytest.approx(0.10172904, rel=0.02)


def test_figures(capsys, tmp_path):
    assert main(["figures", "--outdir", str(tmp_path)]) == 0
    for name in FIGURE_FILES:
        assert (tmp_path / name).exists()
    _, cols, data = read_csv(tmp_path / "fig1.csv")
    cold = data[column(cols, data, "temperature") == 0]
    w = column(cols, cold, "omega")
    vac = column(cols, cold, "vac_scaled")
    assert vac.max() == 0.16 and w[np.argmax(vac)] == 0.5
    np.testing.assert_array_equal(vac[w >= 1], 0.0)

    meta, cols, data = read_csv(tmp_path / "fig2b.csv")
    assert meta["gamma0"] == "10.0"
    hot = data[column(cols, data, "temperature") == 0.1]
    peak = column(cols, hot, "omega")[np.argmax(column(cols, hot, "total_scaled"))]
    assert 0.85 <= peak <= 1.05
    np.testing.assert_allclose(column(cols, hot, "plotted"), 100.0 * column(cols, hot, "total_scaled"), rtol=1e-11)

    meta, cols, data = read_csv(tmp_path / "fig3.csv")
    assert "not-narrowband" in meta["note"]
    T = column(cols, data, "temperature")
    w0 = column(cols, data, "omega0")[T == 0]
    assert len(w0) == 300 and w0[0] > 0 and w0[-1] == 30.0
    assert np.all(column(cols, data, "rate_total")[T == 0.1] > column(cols, data, "rate_total")[T == 0])
    compile((tmp_path / "plot_figures.py").read_text(), "plot_figures.py", "exec")


def test_figures_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["figures", "--outdir", str(a)]) == 0
    assert main(["figures", "--outdir", str(b)]) == 0
    for name in FIGURE_FILES:
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_validate(capsys, tmp_path):
    report = tmp_path / "report.csv"
    code, out, _ = run(capsys, "validate", "--out", str(report))
    assert code == 0
    assert "checks passed" in out and "FAIL" not in out
    lines = report.read_text().splitlines()
    assert lines[0].startswith("check,passed")
    assert all(line.split(",")[1] == "1" for line in lines[1:])


@pytest.mark.parametrize("argv", [
    ["spectrum", "--gamma0", "0"],
    ["spectrum", "--tau", "-1"],
    ["spectrum", "--grid", "1:0:5"],
    ["spectrum", "--grid", "0:1"],
    ["spectrum", "--temperature", "-0.1"],
    ["rate", "--omega0-sweep", "0:1:3", "--temperatures", "0,x"],
    ["rate", "--omega0-sweep", "0:1:3", "--temperatures", "-1"],
])
def test_invalid_input_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["spectrum", "--convention", "bogus"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["rate"])
    assert info.value.code == 2


def test_non_convergence_exit_3(capsys):
    code, _, err = run(capsys, "spectrum", "--method", "general", "--grid", "0.5:1:2",
                       "--rel-tol", "1e-15")
    assert code == 3
    assert "non-convergence" in err


def test_io_failure_exit_4(capsys, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert run(capsys, "spectrum", "--out", str(blocker / "s.csv"))[0] == 4
    assert run(capsys, "figures", "--outdir", str(blocker / "sub"))[0] == 4
    assert run(capsys, "spectrum", "--profile-file", str(tmp_path / "missing.txt"),
               "--method", "general")[0] == 4


def test_closed_method_rejects_profile(capsys, tmp_path):
    path = tmp_path / "p.txt"
    t = np.linspace(-50, 50, 101)
    v = delta_gamma(t, DampedCosine(0.01, 1.0, 5.0))
    v[0] = v[-1] = 0.0
    np.savetxt(path, np.column_stack([t, v]))
    assert run(capsys, "spectrum", "--profile-file", str(path))[0] == 2


def test_profile_file_general(capsys, tmp_path):
    tau = 20.0
    t = np.linspace(-25 * tau, 25 * tau, 20001)
    v = delta_gamma(t, DampedCosine(0.01, 1.0, tau))
    v[0] = v[-1] = 0.0
    path = tmp_path / "p.txt"
    np.savetxt(path, np.column_stack([t, v]), fmt="%.17g", header="time delta_gamma")
    base = ["spectrum", "--method", "general", "--tau", "20", "--grid", "0.4:0.8:2"]
    code, out, _ = run(capsys, *base, "--profile-file", str(path))
    assert code == 0
    meta, cols, data = parse_csv(out)
    assert meta["profile_file"] == str(path)
    ref = parse_csv(run(capsys, *base)[1])[2]
    np.testing.assert_allclose(data[:, 2], ref[:, 2], rtol=1e-5)


@pytest.mark.parametrize("argv", [
    ["spectrum", "--gamma0", "5", "--temperature", "0.1", "--convention", "as-printed", "--grid", "0:2:41"],
    ["rate", "--omega0-sweep", "0:3:4", "--temperatures", "0,0.05,0.1"],
])
def test_csv_round_trip(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert recompute(out) == out


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "robin_dce", "spectrum", "--grid", "0:1:3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert parse_csv(proc.stdout)[2][1, 2] == 0.16
