import csv
import json
import math
import os

import numpy as np
import pytest
import yaml

from vibcav.cli import EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, RunConfig, emit_profile_csv, main
from vibcav.errors import ConfigError, ParameterError
from vibcav.observables import EnergyProfile, energy_profile
from vibcav.phase import solve_phase
from vibcav.trajectory import static

PI = math.pi


def write_cfg(tmp_path, d, name="cfg.yaml"):
    p = tmp_path / name
    p.write_text(yaml.safe_dump(d))
    return str(p)


def lawwu_cfg(**extra):
    d = {
        "trajectory": {"kind": "lawwu", "L": PI, "delta_L": 0.01 * PI, "k_drive": 2, "periods": 10},
        "backend": "lawwu_exact",
        "eval_after_motion": [1.0],
        "outputs": ["energy", "spectrum", "sum_rule", {"type": "beta", "max_index": 4},
                    {"type": "profile", "n": 65}, {"type": "density2d", "nx": 5, "nt": 5},
                    "symmetry_check"],
        "seed_moebius": [1.0, 0.3, -0.2, 0.94],
    }
    d.update(extra)
    return d


def read(path):
    with open(path) as fh:
        return fh.read()


def test_run_outputs(tmp_path, capsys):
    cfg = write_cfg(tmp_path, lawwu_cfg())
    out = tmp_path / "out"
    assert main(["run", "--config", cfg, "--out", str(out)]) == EXIT_OK
    summary = json.loads(read(out / "summary.json"))
    (pt,) = summary["points"]
    rec = pt["times"][0]
    assert rec["E_total"] == pytest.approx(pt["E_reference"], rel=1e-9)
    assert rec["sum_rule"]["rel_err"] <= 1e-9
    assert rec["symmetry"]["E_rel_diff"] <= 1e-7
    for name in ("energy.csv", "spectrum.csv", "beta.csv", "profile.csv", "density2d.csv"):
        assert (out / name).is_file()
    with open(out / "beta.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["k", "l", "re", "im"] and len(rows) == 17
    assert "E=" in capsys.readouterr().out


def test_rerun_is_byte_identical(tmp_path):
    cfg = write_cfg(tmp_path, lawwu_cfg())
    for d in ("a", "b"):
        assert main(["run", "--quiet", "--config", cfg, "--out", str(tmp_path / d)]) == EXIT_OK
    for name in os.listdir(tmp_path / "a"):
        assert read(tmp_path / "a" / name) == read(tmp_path / "b" / name)


def test_validate(tmp_path, capsys):
    cfg = write_cfg(tmp_path, lawwu_cfg())
    assert main(["validate", "--config", cfg]) == EXIT_OK
    msg = json.loads(capsys.readouterr().out)
    assert msg["status"] == "ok" and len(msg["config_hash"]) == 64


def test_sweep_power_law(tmp_path):
    d = lawwu_cfg(outputs=["energy"], sweep={"parameter": "periods", "values": [10, 20, 40], "workers": 2})
    d.pop("seed_moebius")
    cfg = write_cfg(tmp_path, d)
    out = tmp_path / "sw"
    assert main(["sweep", "--quiet", "--config", cfg, "--out", str(out)]) == EXIT_OK
    summary = json.loads(read(out / "summary.json"))
    assert len(summary["points"]) == 3
    assert summary["fit"]["power_law_exponent"] == pytest.approx(2.0, abs=1e-6)
    assert (out / "point_002" / "energy.csv").is_file()


@pytest.mark.parametrize("mutate", [
    lambda d: d["trajectory"].update(delta_L=0.5 * PI),          # superluminal
    lambda d: d.update(backend="magic"),
    lambda d: d.update(eval_after_motion=[], eval_times=[]),
    lambda d: d.update(eval_after_motion=[-5.0]),                 # spectra before the motion ends
    lambda d: d.update(tolerances={"tol_moore": -1}),
    lambda d: d.update(bogus=1),
    lambda d: d.update(seed_moebius=[0.0, 1.0, 1.0, 0.0]),
])
def test_config_errors_exit_2(tmp_path, capsys, mutate):
    d = lawwu_cfg()
    mutate(d)
    cfg = write_cfg(tmp_path, d)
    assert main(["run", "--config", cfg, "--out", str(tmp_path / "o")]) == EXIT_CONFIG
    diag = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert diag["status"] == "config_error"


def test_missing_file_and_sweep_section(tmp_path):
    assert main(["run", "--config", str(tmp_path / "none.yaml")]) == EXIT_CONFIG
    cfg = write_cfg(tmp_path, lawwu_cfg())
    assert main(["sweep", "--config", cfg, "--out", str(tmp_path / "o")]) == EXIT_CONFIG


def test_numerical_failure_exit_3(tmp_path, capsys):
    d = lawwu_cfg(backend="grid", outputs=["energy"], tolerances={"tol_moore": 1e-20})
    d.pop("seed_moebius")
    cfg = write_cfg(tmp_path, d)
    assert main(["run", "--config", cfg, "--out", str(tmp_path / "o")]) == EXIT_NUMERICAL
    diag = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert diag["status"] == "numerical_error" and diag["stage"] == "moore_residual"


def test_config_error_names_field():
    with pytest.raises(ConfigError) as exc:
        RunConfig.from_dict({"trajectory": {"kind": "static", "L": 1.0}, "eval_times": ["x"]})
    assert exc.value.field == "eval_times"


def test_profile_csv_roundtrip(tmp_path):
    R = solve_phase(static(PI), 10.0)
    prof = energy_profile(R, (0.0, 2 * PI), 33)
    path = tmp_path / "p.csv"
    emit_profile_csv(prof, path)
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    assert np.array_equal(data[:, 0], prof.tau)
    assert np.array_equal(data[:, 1], prof.rho)
    assert np.allclose(data[:, 1], -PI / (48 * PI * PI), rtol=1e-14)


def test_empty_profile_refused(tmp_path):
    empty = EnergyProfile(np.array([]), np.array([]), 0.0, PI)
    path = tmp_path / "e.csv"
    with pytest.raises(ParameterError):
        emit_profile_csv(empty, path)
    assert not path.exists()
