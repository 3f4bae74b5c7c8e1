"""Configuration files, sweeps, CSV output and the command line."""
import csv
import io

import numpy as np
import pytest

from wacasim.errors import ConfigurationError
from wacasim.simkit import SimulationConfig, build_config, run_simulation, summarize
from wacasim.simkit import cli, csvio
from wacasim.simkit.config import CONFIG_ENV, parse_config_text
from wacasim.simkit.sweep import CellKey, ExperimentResult, expand_grid, parse_values, sweep

SMALL = SimulationConfig(n_devices=10, runs=3)


# -- configuration ---------------------------------------------------------

def test_parse_config_text():
    text = """
    # comment
    n_devices = 30
    transmission-range = 45.5   # trailing comment
    algorithm = wca
    king_bonus = no
    mover_count = none
    """
    cfg = build_config(parse_config_text(text))
    assert (cfg.n_devices, cfg.transmission_range, cfg.algorithm, cfg.king_bonus) == (30, 45.5, "WCA", False)
    assert cfg.mover_count is None


@pytest.mark.parametrize("text", ["n_devices 3", "bogus = 1", "n_devices = many", "king_bonus = maybe"])
def test_bad_config_text(text):
    with pytest.raises(ConfigurationError):
        build_config(parse_config_text(text))


def test_overrides_beat_file_values():
    cfg = build_config({"n_devices": "30", "runs": "4"}, {"n_devices": "12"})
    assert cfg.n_devices == 12 and cfg.runs == 4


def test_mobile_default_duration():
    assert SimulationConfig().effective_duration is None
    assert SimulationConfig(mobility="random_waypoint").effective_duration == 900.0
    assert SimulationConfig(mobility="random_waypoint", mover_count=0).effective_duration is None


# -- sweeps ----------------------------------------------------------------

def test_one_cell_one_run_equals_run_summary():
    cfg = SMALL.replace(runs=1, base_seed=7)
    result = sweep([cfg])
    expected = summarize(run_simulation(cfg, 7), static=True)
    assert {r.metric: r.mean for r in result.rows} == expected
    assert all(r.stddev == 0.0 and r.runs == 1 for r in result.rows)


def test_grid_size_and_order():
    cells = expand_grid(SMALL.replace(runs=1), n_devices=[60, 20], transmission_range=range(10, 75, 5))
    result = sweep(cells)
    keys = []
    for r in result.rows:
        if not keys or keys[-1] != r.key:
            keys.append(r.key)
    assert len(keys) == 26
    assert keys == sorted(keys, key=CellKey.sort_key)
    metrics = [r.metric for r in result.rows if r.key == keys[0]]
    assert metrics == sorted(metrics)


def test_sweep_is_reproducible_and_aggregates_exactly():
    cells = expand_grid(SMALL, transmission_range=[20.0, 40.0])
    a, b = sweep(cells), sweep(cells)
    assert a.rows == b.rows
    runs = [summarize(run_simulation(cells[0], SMALL.base_seed + i), static=True) for i in range(3)]
    vals = np.array([s["clusterhead_count"] for s in runs])
    row = next(r for r in a.rows if r.key == CellKey.of(cells[0]) and r.metric == "clusterhead_count")
    assert row.mean == vals.mean() and row.stddev == pytest.approx(vals.std(ddof=1))


def test_parallel_sweep_matches_serial():
    cells = expand_grid(SMALL, transmission_range=[15.0, 35.0, 55.0])
    assert sweep(cells, workers=2).rows == sweep(cells).rows


def test_failed_cell_is_recorded_and_others_proceed(monkeypatch):
    from wacasim.simkit import sweep as sweep_mod
    real = sweep_mod.run_cell

    def flaky(config):
        if config.transmission_range == 20.0:
            raise RuntimeError("boom")
        return real(config)

    monkeypatch.setattr(sweep_mod, "run_cell", flaky)
    result = sweep(expand_grid(SMALL, transmission_range=[20.0, 40.0]))
    assert not result.ok
    assert list(result.failures.values()) == ["RuntimeError: boom"]
    assert {r.key.range for r in result.rows} == {40.0}


def test_empty_or_duplicate_grid_rejected():
    with pytest.raises(ValueError):
        sweep([])
    with pytest.raises(ValueError):
        sweep([SMALL, SMALL])


@pytest.mark.parametrize("text, expected", [
    ("10:70:5", [float(x) for x in range(10, 75, 5)]),
    ("10,15, 20", [10.0, 15.0, 20.0]),
    ("0.5:1.5:0.5", [0.5, 1.0, 1.5]),
])
def test_parse_values(text, expected):
    assert parse_values(text) == pytest.approx(expected)


def test_parse_values_int_and_errors():
    assert parse_values("5:30:5", int) == [5, 10, 15, 20, 25, 30]
    for bad in ("", "1:2", "1:5:0", "1.5,2"):
        with pytest.raises(ValueError):
            parse_values(bad, int)


# -- CSV -------------------------------------------------------------------

def test_float_format():
    assert [csvio.fmt(x) for x in (30.0, 1 / 3, 123456789.0, 0.1, 3, True)] == \
        ["30", "0.333333", "1.23457e+08", "0.1", "3", "true"]


def test_aggregate_csv_layout(tmp_path):
    result = sweep(expand_grid(SMALL, transmission_range=[40.0, 20.0]))
    path = tmp_path / "agg.csv"
    csvio.write_aggregate(result, path)
    raw = path.read_bytes().decode("utf-8")
    lines = raw.splitlines()
    assert lines[0] == "algorithm,n_devices,range,king_bonus,mover_count,metric,mean,stddev,runs"
    assert lines[1].startswith("WACA,10,20,true,0,")
    rows = csvio.read_aggregate(path)
    assert len(rows) == len(result.rows)
    assert raw == csvio.aggregate_text(result)


def test_series_csv(tmp_path):
    s = run_simulation(SMALL.replace(mobility="random_waypoint", duration=5.0), 1)
    path = tmp_path / "s.csv"
    csvio.write_series(s, path)
    rows = list(csv.DictReader(path.open(encoding="utf-8")))
    assert len(rows) == 5 and rows[-1]["time"] == "5"
    assert all(int(r["beacons_emitted"]) == 10 for r in rows)


# -- CLI -------------------------------------------------------------------

def test_cli_run(tmp_path, capsys):
    out = tmp_path / "run.csv"
    code = cli.main(["run", "--n-devices", "8", "--mobility", "random_waypoint", "--duration", "12",
                     "-o", str(out)])
    assert code == 0
    assert len(out.read_text().splitlines()) == 13


def test_cli_sweep_to_stdout(capsys):
    code = cli.main(["sweep", "--n-devices", "8,12", "--transmission-range", "20:40:20", "--runs", "2"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert {(r["n_devices"], r["range"]) for r in rows} == {("8", "20"), ("8", "40"), ("12", "20"), ("12", "40")}


def test_cli_config_file_via_env(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "sim.cfg"
    cfg.write_text("n_devices = 9\nruns = 2\ntransmission_range = 25\n")
    monkeypatch.setenv(CONFIG_ENV, str(cfg))
    assert cli.main(["compare", "--runs", "1"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert {r["algorithm"] for r in rows} == {"WACA", "WCA"}
    assert {r["n_devices"] for r in rows} == {"9"} and {r["runs"] for r in rows} == {"1"}


def test_cli_ablation_is_paired(capsys):
    code = cli.main(["ablate-kingbonus", "--n-devices", "10", "--mover-count", "5,10", "--runs", "2",
                     "--duration", "20"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert {(r["king_bonus"], r["mover_count"]) for r in rows} == \
        {("true", "5"), ("false", "5"), ("true", "10"), ("false", "10")}


def test_cli_usage_errors(capsys):
    assert cli.main(["run", "--n-devices", "0"]) == 2
    assert cli.main(["run", "--n-devices", "5,6"]) == 2
    assert cli.main(["sweep", "--config", "/nonexistent/file.cfg"]) == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["nonsense"])
    assert exc.value.code == 2


def test_cli_failed_cell_exit_code(monkeypatch, capsys):
    from wacasim.simkit import sweep as sweep_mod
    monkeypatch.setattr(sweep_mod, "run_cell", lambda config: (_ for _ in ()).throw(RuntimeError("x")))
    assert cli.main(["sweep", "--runs", "1"]) == 1


def test_cli_verify(capsys):
    assert cli.main(["verify", "--graphs", "50", "--quick"]) == 0
    out = capsys.readouterr().out
    assert "[FAIL]" not in out and "checks passed" in out
