import json

import numpy as np
import pytest

from sewi.cli import (
    EXIT_BLOWUP,
    EXIT_CONFIG,
    ConfigError,
    main,
    parse_config,
    serialize_config,
)

MINIMAL = """
# minimal free run
dim = 1
a = -16
b = 16
n = 256
potential = zero
beta = 0
sigma = 1
psi0 = gaussian_odd
tau = 1e-3
T = 0.1
"""


def write_config(tmp_path, text, name="run.cfg"):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestConfigParsing:
    def test_minimal_config(self):
        cfg = parse_config(MINIMAL)
        assert cfg["n"] == 256
        assert cfg["tau"] == 1e-3
        assert cfg["potential"] == "zero"

    def test_unknown_key_names_key_and_line(self):
        bad = MINIMAL + "sigmma = 0.5\n"
        with pytest.raises(ConfigError) as exc:
            parse_config(bad, source="run.cfg")
        msg = str(exc.value)
        assert "sigmma" in msg
        assert "13" in msg  # offending line number

    def test_bad_value_reports_line(self):
        with pytest.raises(ConfigError) as exc:
            parse_config("tau = fast\n", source="x.cfg")
        assert "x.cfg:1" in str(exc.value)

    def test_duplicate_key_rejected(self):
        with pytest.raises(ConfigError):
            parse_config("tau = 1e-3\ntau = 1e-2\n")

    def test_enum_validation(self):
        with pytest.raises(ConfigError):
            parse_config("potential = harmonic\n")

    def test_round_trip(self):
        cfg = parse_config(MINIMAL)
        text = serialize_config(cfg)
        again = parse_config(text)
        assert again == cfg

    def test_round_trip_preserves_float_precision(self):
        cfg = parse_config("tau = 0.1\nT = 0.30000000000000004\na = -16\nb = 16\nn = 8\n")
        again = parse_config(serialize_config(cfg))
        assert again["T"] == cfg["T"]
        assert again["tau"] == cfg["tau"]


class TestRunCommand:
    def test_minimal_run_mass_constant(self, tmp_path, capsys):
        cfg = write_config(tmp_path, MINIMAL + f"outdir = {tmp_path / 'out'}\n")
        rc = main(["run", str(cfg)])
        assert rc == 0
        report = json.loads((tmp_path / "out" / "report.json").read_text())
        masses = [r["mass"] for r in report["records"]]
        assert max(abs(m - masses[0]) for m in masses) <= 1e-12 * masses[0]
        assert (tmp_path / "out" / "observables.csv").exists()
        assert (tmp_path / "out" / "density.csv").exists()
        assert (tmp_path / "out" / "conservation.svg").exists()

    def test_unknown_key_exits_2(self, tmp_path, capsys):
        cfg = write_config(tmp_path, MINIMAL + "sigmma = 0.5\n")
        rc = main(["run", str(cfg)])
        assert rc == EXIT_CONFIG
        assert "sigmma" in capsys.readouterr().err

    def test_missing_config_exits_2(self, tmp_path, capsys):
        rc = main(["run", str(tmp_path / "absent.cfg")])
        assert rc == EXIT_CONFIG

    def test_blowup_exits_3_with_partial_outputs(self, tmp_path, capsys):
        text = """
dim = 1
a = -16
b = 16
n = 32
potential = constant
v0 = 10
beta = 0
sigma = 1
psi0 = gaussian_odd
tau = 0.5
T = 5000
first_step = ewi1
snapshot_every = 50
"""
        cfg = write_config(tmp_path, text + f"outdir = {tmp_path / 'out'}\n")
        rc = main(["run", str(cfg)])
        assert rc == EXIT_BLOWUP
        assert (tmp_path / "out" / "report.json").exists()
        assert (tmp_path / "out" / "last_finite_state.sewi").exists()

    def test_snapshots_written(self, tmp_path):
        cfg = write_config(
            tmp_path,
            MINIMAL + f"outdir = {tmp_path / 'out'}\nsave_snapshots = true\nsnapshot_every = 50\n",
        )
        rc = main(["run", str(cfg)])
        assert rc == 0
        snaps = sorted((tmp_path / "out").glob("state_*.sewi"))
        assert [s.name for s in snaps] == [
            "state_00000000.sewi",
            "state_00000050.sewi",
            "state_00000100.sewi",
        ]


class TestExitCodes:
    def test_io_error_exits_4(self, tmp_path, capsys):
        blocker = tmp_path / "not_a_dir"
        blocker.write_text("occupied")
        cfg = write_config(tmp_path, MINIMAL + f"outdir = {blocker}\n")
        rc = main(["run", str(cfg)])
        assert rc == 4
        assert "i/o error" in capsys.readouterr().err


class TestConvergeCommand:
    def test_temporal_free_case(self, tmp_path):
        text = MINIMAL + (
            f"outdir = {tmp_path / 'out'}\n"
            "sweep_taus = 1e-2,5e-3,2.5e-3\n"
            "ref_tau = 1e-4\n"
        )
        cfg = write_config(tmp_path, text)
        rc = main(["converge", str(cfg), "--mode", "temporal",
                   "--cache-dir", str(tmp_path / "cache")])
        assert rc == 0
        out = tmp_path / "out"
        csv = (out / "convergence_temporal.csv").read_text().strip().splitlines()
        assert csv[0] == "resolution,eL2,eH1,order_L2,order_H1"
        # scheme is exact for the free case: errors at roundoff
        for line in csv[1:]:
            assert float(line.split(",")[1]) < 1e-12
        assert (out / "convergence_temporal.svg").exists()
        assert (out / "convergence_temporal.json").exists()

    def test_spatial_band_limited(self, tmp_path):
        text = MINIMAL + (
            f"outdir = {tmp_path / 'out'}\n"
            "sweep_ns = 16,32,64\n"
            "ref_tau = 1e-3\n"
            "ref_n = 128\n"
        )
        cfg = write_config(tmp_path, text)
        rc = main(["converge", str(cfg), "--mode", "spatial",
                   "--cache-dir", str(tmp_path / "cache")])
        assert rc == 0
        assert (tmp_path / "out" / "convergence_spatial.csv").exists()

    def test_coupled_mode(self, tmp_path):
        text = MINIMAL + (
            f"outdir = {tmp_path / 'out'}\n"
            "sweep_taus = 1e-2,2.5e-3\n"
            "ref_tau = 1e-4\n"
            "ref_n = 512\n"
            "coupling_c = 10\n"
        )
        cfg = write_config(tmp_path, text)
        rc = main(["converge", str(cfg), "--mode", "coupled",
                   "--cache-dir", str(tmp_path / "cache")])
        assert rc == 0
        data = json.loads((tmp_path / "out" / "convergence_coupled.json").read_text())
        # mesh tied to the step: recorded mode counts follow h = sqrt(10 tau)
        assert [r["n_modes"] for r in data["rows"]] == [[128], [256]]

    def test_missing_sweep_exits_2(self, tmp_path, capsys):
        cfg = write_config(tmp_path, MINIMAL + "ref_tau = 1e-4\n")
        rc = main(["converge", str(cfg), "--mode", "temporal"])
        assert rc == EXIT_CONFIG
        assert "sweep_taus" in capsys.readouterr().err


class TestConserveCommand:
    def test_short_free_case(self, tmp_path, capsys):
        cfg = write_config(tmp_path, MINIMAL + f"outdir = {tmp_path / 'out'}\n")
        rc = main(["conserve", str(cfg), "--T", "1.0"])
        assert rc == 0
        out = tmp_path / "out"
        assert (out / "drift_tau.csv").exists()
        assert (out / "drift_tau_half.csv").exists()
        assert (out / "conservation.svg").exists()
        summary = json.loads((out / "conservation_summary.json").read_text())
        assert summary["max_mass_drift"] <= 1e-12


class TestBenchmarkCommand:
    def test_tiny_benchmark(self, tmp_path):
        rc = main(["benchmark", "--tau", "1e-3", "--n", "256", "--T", "0.01",
                   "--outdir", str(tmp_path / "bench")])
        assert rc == 0
        assert (tmp_path / "bench" / "report.json").exists()
        assert (tmp_path / "bench" / "density.svg").exists()
