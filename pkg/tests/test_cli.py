import json
import subprocess
import sys

import numpy as np
import pytest

from dickestark.cli import main
from dickestark.sweep import rows_to_csv_text


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_meanfield_prints_thermal_critical_coupling(capsys, tmp_path):
    cfg = tmp_path / "mf.cfg"
    cfg.write_text(
        "# anisotropic case with an A-square term\n"
        "omega = 1.0\n"
        "delta = 0.5\n"
        "kappa = 1.0\n"
        "tau = 2.5\n"
        "u = 0.5\n"
        "g = 0.62\n"
        "temperature = 0.5\n"
    )
    code, out, _ = run_cli(["meanfield", str(cfg)], capsys)
    assert code == 0
    assert "g_c = 0.5160" in out
    assert "phase = superradiant" in out


def test_meanfield_zero_temperature_output(capsys):
    code, out, _ = run_cli(
        ["meanfield", "--set", "delta=0.5", "--set", "u=0.5", "--set", "tau=2.5",
         "--set", "kappa=1.2", "--set", "g=0.1"],
        capsys,
    )
    assert code == 0
    assert "g_c0 = 0.2244" in out
    assert "phase = normal" in out


def test_landscape_labels_unstable_point(capsys, recwarn):
    code, out, _ = run_cli(
        [
            "landscape",
            "--set", "delta=0.5",
            "--set", "kappa=1.0",
            "--set", "tau=1.0",
            "--set", "u=5.5",
            "--set", "g=0.30108",
            "--set", "temperature=0.5",
            "--set", "x_min=-0.6", "--set", "x_max=0.6",
            "--set", "y_min=-0.6", "--set", "y_max=0.6",
            "--set", "resolution=65",
        ],
        capsys,
    )
    assert code == 0
    assert "phase = unstable" in out
    assert "maxima = 2" in out


def test_spectrum_command(capsys):
    code, out, _ = run_cli(
        ["spectrum", "--set", "delta=0.8", "--set", "n_atoms=4", "--set", "g=0.0",
         "--set", "n_max=8"],
        capsys,
    )
    assert code == 0
    assert "e0 = -1.6" in out
    assert "epsilon = 0.8" in out
    assert "nph_total = 0" in out


def test_thermal_command(capsys):
    code, out, _ = run_cli(
        ["thermal", "--set", "delta=0.5", "--set", "u=0.5", "--set", "tau=1.5",
         "--set", "kappa=1.2", "--set", "g=0.7", "--set", "temperature=0.1"],
        capsys,
    )
    assert code == 0
    assert "t_c = 0.1730" in out
    assert "phase = superradiant" in out


def test_spectrum_continuum_regime_exit_code(capsys, recwarn):
    code, _, err = run_cli(
        ["spectrum", "--set", "u=2.5", "--set", "g=0.2", "--set", "n_atoms=4",
         "--set", "n_max_start=8", "--set", "n_max_cap=64"],
        capsys,
    )
    assert code == 2
    assert "CutoffRunaway" in err


def test_unknown_key_rejected(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("gg = 0.3\n")
    code, _, err = run_cli(["meanfield", str(cfg)], capsys)
    assert code == 1
    assert "unknown config keys: gg" in err


def test_malformed_config_line(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("omega 1.0\n")
    code, _, err = run_cli(["meanfield", str(cfg)], capsys)
    assert code == 1
    assert "expected 'key = value'" in err


def test_missing_required_keys(capsys):
    code, _, err = run_cli(["sweep", "--set", "g=0.1"], capsys)
    assert code == 1
    assert "missing required keys" in err


def test_sweep_cli_end_to_end(capsys, tmp_path):
    out_path = tmp_path / "scan.csv"
    code, out, _ = run_cli(
        [
            "sweep",
            "--set", "delta=0.5", "--set", "u=0.5", "--set", "tau=2.5",
            "--set", "kappa=1.2", "--set", "n_atoms=6",
            "--set", "axis1=g", "--set", "axis1_start=0.05",
            "--set", "axis1_stop=0.35", "--set", "axis1_points=3",
            "--set", "observables=e0,nph_density,g_c0",
            "--set", "k_eigenpairs=2", "--set", "n_max_start=8",
            "--set", f"output={out_path}",
        ],
        capsys,
    )
    assert code == 0
    assert out_path.exists()
    lines = out_path.read_text().splitlines()
    assert lines[0] == "g,e0,nph_density,g_c0,n_max_used,residual_max,error"
    assert len(lines) == 4


def test_sweep_cli_explicit_axis_values(capsys, tmp_path):
    # multi-size gap dataset keyed by an integer N column
    out_path = tmp_path / "gaps.csv"
    code, out, _ = run_cli(
        [
            "sweep",
            "--set", "delta=0.5", "--set", "u=0.5", "--set", "tau=2.5",
            "--set", "kappa=1.2",
            "--set", "axis1=g", "--set", "axis1_values=0.205,0.215",
            "--set", "axis2=N", "--set", "axis2_values=8,16",
            "--set", "observables=epsilon",
            "--set", "k_eigenpairs=2", "--set", "n_max_start=8",
            "--set", f"output={out_path}",
        ],
        capsys,
    )
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert len(lines) == 5
    assert lines[1].split(",")[1] == "8"  # N column carries integers


def test_sweep_cli_partial_failure_exit_code(capsys, tmp_path, recwarn):
    out_path = tmp_path / "scan.csv"
    code, out, _ = run_cli(
        [
            "sweep",
            "--set", "delta=1.0", "--set", "n_atoms=4", "--set", "g=0.2",
            "--set", "axis1=U", "--set", "axis1_start=0.5",
            "--set", "axis1_stop=2.5", "--set", "axis1_points=2",
            "--set", "observables=e0",
            "--set", "k_eigenpairs=1", "--set", "n_max_start=8",
            "--set", "n_max_cap=64",
            "--set", f"output={out_path}",
        ],
        capsys,
    )
    assert code == 2
    assert "1 errors" in out


def test_sweep_io_failure_exit_code(capsys):
    code, _, err = run_cli(
        [
            "sweep",
            "--set", "axis1=g", "--set", "axis1_start=0.0",
            "--set", "axis1_stop=0.1", "--set", "axis1_points=2",
            "--set", "observables=g_c0",
            "--set", "output=/nonexistent-dir/scan.csv",
        ],
        capsys,
    )
    assert code == 3
    assert "i/o error" in err


def synthetic_csv(tmp_path, name="synthetic.csv"):
    g_c, beta_q, nu = 0.3, 0.5, 1.5
    rows = []
    for n_atoms in (32, 64, 128, 256):
        for r in np.geomspace(1.05e-2, 9.8e-2, 12):
            g = g_c * (1 + r)
            scaled = r * n_atoms ** (1.0 / nu)
            rows.append(
                {
                    "g": g,
                    "N": n_atoms,
                    "epsilon": r**beta_q * (np.exp(-scaled) + 0.5),
                    "pure": abs(g - g_c) ** beta_q,
                    "error": "",
                }
            )
    path = tmp_path / name
    path.write_text(rows_to_csv_text(["g", "N", "epsilon", "pure", "error"], rows))
    return path


def test_scaling_cli_powerlaw_recovers_planted_exponent(capsys, tmp_path):
    path = synthetic_csv(tmp_path)
    code, out, _ = run_cli(
        [
            "scaling",
            "--set", f"input={path}",
            "--set", "mode=powerlaw",
            "--set", "observable=pure",
            "--set", "critical_value=0.3",
        ],
        capsys,
    )
    assert code == 0
    report = json.loads(out)
    for fit in report["fits"]:
        assert abs(fit["exponent"] - 0.5) < 1e-9


def test_scaling_cli_criticality_mode(capsys, tmp_path):
    rows = [
        {"g": 0.3, "N": n, "epsilon": 2.0 * n ** (-1 / 3), "error": ""}
        for n in (32, 64, 128, 256)
    ]
    path = tmp_path / "crit.csv"
    path.write_text(rows_to_csv_text(["g", "N", "epsilon", "error"], rows))
    code, out, _ = run_cli(
        ["scaling", "--set", f"input={path}", "--set", "mode=criticality",
         "--set", "observable=epsilon"],
        capsys,
    )
    assert code == 0
    report = json.loads(out)
    assert abs(report["fit"]["exponent"] + 1 / 3) < 1e-10


def test_scaling_cli_collapse_mode(capsys, tmp_path):
    path = synthetic_csv(tmp_path)
    code, out, _ = run_cli(
        [
            "scaling",
            "--set", f"input={path}",
            "--set", "mode=collapse",
            "--set", "observable=epsilon",
            "--set", "critical_value=0.3",
            "--set", "beta_q=0.5",
        ],
        capsys,
    )
    assert code == 0
    base = json.loads(out)["score"]
    code, out, _ = run_cli(
        [
            "scaling",
            "--set", f"input={path}",
            "--set", "mode=collapse",
            "--set", "observable=epsilon",
            "--set", "critical_value=0.3",
            "--set", "beta_q=0.65",
        ],
        capsys,
    )
    perturbed = json.loads(out)["score"]
    assert perturbed > 5 * base


def test_console_script_help():
    proc = subprocess.run(
        [sys.executable, "-m", "dickestark.cli", "sweep", "--help"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    # every config key documented in the help text
    for key in ("axis1", "observables", "tail_tol", "kappa", "workers"):
        assert key in proc.stdout
