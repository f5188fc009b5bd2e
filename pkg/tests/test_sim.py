import pytest

import bgev.sim as sim_mod
from bgev import BgevParams, SimConfig, run_cell, run_suite
from bgev.sim import CSV_HEADER, SimCellError, load_suite_config, reports_to_csv, reports_to_table

CELL = SimConfig(truth=BgevParams(xi=0.5, mu=0.0, sigma=1.0, delta=2.0), n=100, m=12, seed=5)


def test_report_moment_identity():
    rep = run_cell(CELL)
    for k in ("xi", "mu", "delta"):
        # mse = variance + bias^2 implies mse >= bias^2 up to arithmetic slack
        assert rep.mse[k] >= rep.bias[k] ** 2 - 1e-12
        assert rep.mean[k] == pytest.approx(
            getattr(CELL.truth, k) + rep.bias[k], rel=1e-12, abs=1e-12
        )


def test_single_replicate_custom_start_well_formed():
    truth = BgevParams(xi=0.5, mu=0.0, sigma=1.0, delta=2.0)
    cfg = SimConfig(truth=truth, n=5000, m=1, seed=3, start_rule=truth)
    rep = run_cell(cfg)
    assert rep.replicates_used == 1 and rep.failures == 0
    for k in ("xi", "mu", "delta"):
        assert abs(rep.bias[k]) < 0.1  # estimator noise only at n=5000


def test_determinism_identical_csv():
    a = reports_to_csv([run_cell(CELL)])
    b = reports_to_csv([run_cell(CELL)])
    assert a == b
    assert a.startswith(CSV_HEADER)


def test_parallel_serial_agreement():
    cells = [
        CELL,
        SimConfig(truth=BgevParams(xi=1.0, mu=-1.0, sigma=1.0, delta=0.0), n=100, m=10, seed=9),
    ]
    serial, err_s = run_suite(cells, parallelism=1)
    parallel, err_p = run_suite(cells, parallelism=2)
    assert not err_s and not err_p
    assert reports_to_csv(serial) == reports_to_csv(parallel)


def test_single_cell_suite_equals_run_cell():
    suite, errors = run_suite([CELL])
    assert not errors
    assert reports_to_csv(suite) == reports_to_csv([run_cell(CELL)])


def test_failure_budget_enforced(monkeypatch):
    def always_diverges(x, start, opts=None):
        raise ValueError("forced failure")

    monkeypatch.setattr(sim_mod, "fit_mle", always_diverges)
    with pytest.raises(SimCellError):
        run_cell(CELL)
    # the suite runner contains the damage and reports it
    reports, errors = run_suite([CELL])
    assert reports == [None]
    assert len(errors) == 1 and "replicates failed" in errors[0][1]


def test_config_validation():
    with pytest.raises(ValueError):
        SimConfig(truth=CELL.truth, n=4, m=10, seed=1)
    with pytest.raises(ValueError):
        SimConfig(truth=CELL.truth, n=100, m=0, seed=1)
    with pytest.raises(ValueError):
        SimConfig(truth=CELL.truth, n=100, m=10, seed=1, start_rule="warm")


def test_table_rendering_contains_cells():
    rep = run_cell(CELL)
    table = reports_to_table([rep])
    assert "0.5" in table and "100" in table
    assert "wall" not in table.lower()  # timing must stay out of deterministic artifacts


def test_load_suite_config_cells_and_grid(tmp_path):
    cfg = tmp_path / "suite.ini"
    cfg.write_text(
        """
[cell one]
xi = 0.5
mu = 0
delta = 2
n = 100
m = 7
seed = 11

[grid main]
xi = 1, 0.5
mu = -1, 0, 1
delta = 0, 2, 4
n = 50, 100
m = 3
seed = 100
""",
        encoding="utf-8",
    )
    cells = load_suite_config(str(cfg))
    assert len(cells) == 1 + 2 * 3 * 3 * 2
    assert cells[0].m == 7 and cells[0].seed == 11
    # expansion order is xi-outer ... n-inner with consecutive seeds
    assert cells[1].seed == 100 and cells[2].seed == 101
    assert cells[1].truth.xi == 1.0 and cells[1].n == 50 and cells[2].n == 100
    assert cells[-1].truth.xi == 0.5 and cells[-1].truth.mu == 1.0 and cells[-1].truth.delta == 4.0


def test_full_study_grid_expands_to_180_cells(tmp_path):
    cfg = tmp_path / "full_study.ini"
    cfg.write_text(
        """
[grid full]
xi = 1, 0.5, 0.25, -0.25, -0.5
mu = -1, 0, 1
delta = 0, 2, 4
n = 50, 100, 250, 1000
m = 100
seed = 0
""",
        encoding="utf-8",
    )
    cells = load_suite_config(str(cfg))
    assert len(cells) == 5 * 3 * 3 * 4 == 180
    seeds = [c.seed for c in cells]
    assert seeds == list(range(180))


def test_load_suite_config_errors(tmp_path):
    missing = tmp_path / "nope.ini"
    with pytest.raises(FileNotFoundError):
        load_suite_config(str(missing))
    bad = tmp_path / "bad.ini"
    bad.write_text("[weird]\nxi = 1\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_suite_config(str(bad))
