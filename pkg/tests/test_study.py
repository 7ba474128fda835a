import json
import math

import pandas as pd
import pytest

from maxcorr.constants import POWER_TABLE_COLUMNS
from maxcorr.exceptions import ScenarioError
from maxcorr.simulation import (
    OutcomeModel,
    PowerRow,
    PowerStudy,
    ScenarioSpec,
    power_table,
    run_coverage_study,
    run_power_study,
    run_replication,
    write_power_table,
)


SMALL = {"n": 60, "p": 12, "reps": 6, "seed": 17}


@pytest.mark.parametrize(
    "options",
    [
        {"model": "A9.IE"},
        {"method": "lasso"},
        {"n": 3},
        {"p": 9, "model": "A2.IE"},
        {"rho": 1.0},
        {"reps": 0},
        {"alpha": 0.5},
        {"chunk_count": 0},
    ],
)
def test_scenario_validation(options):
    fields = {"model": "N.IE", **SMALL, **options}
    with pytest.raises(ScenarioError):
        ScenarioSpec(**fields)


def test_screen_config_uses_one_sided_level():
    spec = ScenarioSpec("N.IE", **SMALL, alpha=0.05)
    assert spec.screen_config().alpha == pytest.approx(0.1)
    assert spec.screen_config().chunk_count == 10


def test_power_row():
    spec = ScenarioSpec("A1.IE", **SMALL)
    row = PowerRow.from_rejections(spec, 3)
    assert row.power == 0.5
    assert row.mc_stderr == pytest.approx(math.sqrt(0.25 / 6))
    record = row.as_record()
    assert list(record) == list(POWER_TABLE_COLUMNS)
    assert record["model"] == "A1.IE"
    assert record["rejections"] == 3


@pytest.mark.parametrize("method", ["stabilized_one_step", "bonferroni_t"])
def test_run_replication_reproducible(method):
    spec = ScenarioSpec("A2.IE", **SMALL, method=method)
    assert run_replication(spec, 2) == run_replication(spec, 2)
    assert isinstance(run_replication(spec, 0), bool)


def test_coverage_study_counts():
    model = OutcomeModel("strong", (2.0, ))
    result = run_coverage_study(model, 300, 20, reps=3, seed=1)
    assert result.target == pytest.approx(2.0 / math.sqrt(5.0))
    assert result.reps == 3
    assert 0 <= result.covered <= 3


def test_power_study_deterministic():
    specs = [
        ScenarioSpec("N.IE", **SMALL),
        ScenarioSpec("A1.IE", **SMALL, method="bonferroni_t"),
    ]
    first = run_power_study(specs)
    second = run_power_study(specs)
    assert first == second
    assert [row.spec for row in first] == specs
    assert all(0 <= row.rejections <= row.spec.reps for row in first)


def test_power_study_parallel_matches_serial():
    specs = [ScenarioSpec("A1.DE", **SMALL)]
    assert run_power_study(specs, n_jobs=2) == run_power_study(specs)


def test_power_study_events():
    specs = [
        ScenarioSpec("N.IE", **SMALL),
        ScenarioSpec("N.DE", **SMALL),
    ]
    study = PowerStudy(specs)
    replications = []
    scenarios = []

    def on_replication(spec, index, rejected):
        replications.append((spec.model, index))

    study.on("replication", on_replication)
    study.on("scenario", scenarios.append)
    rows = study.run()
    assert study.total_replications == 12
    assert len(replications) == 12
    assert replications[:6] == [("N.IE", i) for i in range(6)]
    assert scenarios == rows


def test_failed_replication_carries_context(monkeypatch):
    def broken(*args, **kwargs):
        raise ValueError("boom")

    monkeypatch.setattr("maxcorr.simulation.study.est_psi", broken)
    with pytest.raises(ScenarioError, match="Replication 0 of scenario"):
        run_power_study([ScenarioSpec("N.IE", **SMALL)])


def test_write_power_table_csv(tmp_path):
    rows = [PowerRow.from_rejections(ScenarioSpec("A1.IE", **SMALL), 4)]
    path = write_power_table(rows, tmp_path / "power.csv")
    table = pd.read_csv(path)
    assert list(table.columns) == list(POWER_TABLE_COLUMNS)
    assert table.loc[0, "rejections"] == 4
    assert table.equals(power_table(rows))


def test_write_power_table_json(tmp_path):
    rows = [PowerRow.from_rejections(ScenarioSpec("N.DE", **SMALL), 1)]
    path = write_power_table(rows, tmp_path / "power.json", "json")
    document = json.loads(path.read_text())
    assert document["rows"][0]["model"] == "N.DE"
    assert document["rows"][0]["power"] == pytest.approx(1 / 6)


def test_write_power_table_bad_format(tmp_path):
    with pytest.raises(ValueError):
        write_power_table([], tmp_path / "power.txt", "xlsx")


def _rate(model, rho=0.0, method="stabilized_one_step"):
    spec = ScenarioSpec(
        model,
        n=500,
        p=200,
        rho=rho,
        reps=500,
        seed=2024,
        method=method,
    )
    return run_power_study([spec])[0].power


@pytest.mark.slow
@pytest.mark.parametrize("model", ["N.IE", "N.DE"])
@pytest.mark.parametrize("rho", [0.0, 0.5])
def test_type_one_error(model, rho):
    assert _rate(model, rho) <= 0.05 + 2 * math.sqrt(0.05 * 0.95 / 500)


@pytest.mark.slow
def test_power_ordering():
    null = _rate("N.IE")
    assert _rate("A1.IE") >= null + 0.2
    assert _rate("A2.IE") >= null + 0.2


@pytest.mark.slow
def test_interval_coverage():
    model = OutcomeModel("half", (0.5, ))
    result = run_coverage_study(model, 2000, 5, reps=500, seed=7)
    assert 0.92 <= result.coverage <= 0.975
