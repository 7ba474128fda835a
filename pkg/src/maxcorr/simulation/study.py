from __future__ import annotations

import json
import logging
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable

import pandas as pd
from joblib import Parallel, delayed
from pyee import EventEmitter

from maxcorr.constants import (
    DEFAULT_ALPHA,
    DEFAULT_REPS,
    METHODS,
    MODEL_NAMES,
    N_JOBS,
    OUTPUT_FORMATS,
    POWER_TABLE_COLUMNS,
)
from maxcorr.exceptions import BaseMaxcorrException, ScenarioError
from maxcorr.screen import (
    ScreenConfig,
    correlations,
    est_psi,
    initialize_h,
    update_h,
)
from maxcorr.simulation.baseline import bonferroni_from_correlations
from maxcorr.simulation.design import (
    OutcomeModel,
    generate_stream,
    get_model,
    make_rng,
    population_max_correlation,
)


LOGGER = logging.getLogger(__name__)

SIMULATION_METHODS = ("stabilized_one_step", "bonferroni_t")
# Refits per run used by the power study.
DEFAULT_SIMULATION_CHUNKS = 10


@dataclass(frozen=True)
class ScenarioSpec():
    """
    One cell of the power study.

    `alpha` is the level of the test. The stabilized one-step test rejects
    when the lower bound of its 1 - 2 * alpha interval is above zero.
    """
    model: MODEL_NAMES
    n: int
    p: int
    rho: float = 0.0
    reps: int = DEFAULT_REPS
    alpha: float = DEFAULT_ALPHA
    seed: int = 0
    method: METHODS = "stabilized_one_step"
    chunk_count: int | None = DEFAULT_SIMULATION_CHUNKS

    def __post_init__(self) -> None:
        model = get_model(self.model)
        if self.method not in SIMULATION_METHODS:
            raise ScenarioError(f"Unknown method: {self.method}")
        if self.n < 4:
            raise ScenarioError(f"n must be at least 4: {self.n}")
        if self.p < max(model.support, 1):
            raise ScenarioError(
                f"Model {model.name} needs p >= {max(model.support, 1)},"
                f" got {self.p}."
            )
        if not 0.0 <= self.rho < 1.0:
            raise ScenarioError(f"rho must be in [0, 1): {self.rho}")
        if self.reps < 1:
            raise ScenarioError(f"reps must be at least 1: {self.reps}")
        if not 0.0 < self.alpha < 0.5:
            raise ScenarioError(f"alpha must be in (0, 0.5): {self.alpha}")
        if self.chunk_count is not None and self.chunk_count < 1:
            raise ScenarioError(
                f"chunk_count must be at least 1: {self.chunk_count}"
            )

    def __str__(self) -> str:
        return (
            f"{self.model} n={self.n} p={self.p} rho={self.rho}"
            f" method={self.method}"
        )

    def screen_config(self) -> ScreenConfig:
        return ScreenConfig(
            alpha=2.0 * self.alpha,
            chunk_count=self.chunk_count,
            range_policy="off",
            seed=self.seed,
        )


@dataclass(frozen=True)
class PowerRow():
    spec: ScenarioSpec
    rejections: int
    power: float
    mc_stderr: float

    @classmethod
    def from_rejections(cls, spec: ScenarioSpec, rejections: int) -> PowerRow:
        power = rejections / spec.reps
        return cls(
            spec,
            rejections,
            power,
            math.sqrt(power * (1.0 - power) / spec.reps),
        )

    def as_record(self) -> dict:
        """Flat record keyed by the power table columns."""
        record = {**asdict(self.spec), **asdict(self)}
        return {column: record[column] for column in POWER_TABLE_COLUMNS}


def run_replication(spec: ScenarioSpec, index: int) -> bool:
    """
    Run replication `index` of `spec` on its own random substream.

    Returns:
        bool: True if the method rejected the null of no correlation.
    """
    rng = make_rng(spec.seed, index)
    stream = generate_stream(spec.model, spec.n, spec.p, spec.rho, rng)
    if spec.method == "stabilized_one_step":
        return est_psi(stream, spec.n, spec.screen_config()).reject_null
    # The baseline only needs the marginal correlations, so it streams too.
    h = initialize_h(next(stream), next(stream))
    for observation in stream:
        update_h(h, observation)
    return bonferroni_from_correlations(
        correlations(h).corr,
        spec.n,
        spec.alpha,
    )


def _checked_replication(spec: ScenarioSpec, index: int) -> bool:
    try:
        return run_replication(spec, index)
    except (BaseMaxcorrException, ValueError, ArithmeticError) as error:
        raise ScenarioError(
            f"Replication {index} of scenario [{spec}] failed: {error}"
        ) from error


class PowerStudy(EventEmitter):
    def __init__(
        self,
        specs: Iterable[ScenarioSpec],
        n_jobs: int = N_JOBS,
        log_level: str | int = None,
    ) -> None:
        """
        Monte Carlo estimate of the rejection rate for each scenario.

        Emits "replication" `(spec, index, rejected)` as replications
        finish and "scenario" `(row)` once a scenario's tally is complete.

        Args:
            specs (Iterable[ScenarioSpec]): Scenarios, run in order.
            n_jobs (int, optional): Worker processes for replications.
                Defaults to `MAXCORR_N_JOBS` or 1.
            log_level (str | int, optional): Log level to log at.
                Defaults to None (same as root).

        Example::

            ```python
            from maxcorr.simulation import PowerStudy, ScenarioSpec

            study = PowerStudy([ScenarioSpec("A1.IE", n=500, p=200)])
            study.on("scenario", lambda row: print(row.power))
            rows = study.run()
            ```
        """
        super().__init__()
        self.specs = list(specs)
        self.n_jobs = n_jobs
        if log_level is not None:
            logging.getLogger('maxcorr').setLevel(log_level)

    @property
    def total_replications(self) -> int:
        return sum(spec.reps for spec in self.specs)

    def run_scenario(self, spec: ScenarioSpec) -> PowerRow:
        LOGGER.info(f"Running {spec.reps} replications of [{spec}].")
        results = Parallel(n_jobs=self.n_jobs, return_as="generator")(
            delayed(_checked_replication)(spec, index)
            for index in range(spec.reps)
        )
        rejections = 0
        for index, rejected in enumerate(results):
            rejections += int(rejected)
            self.emit("replication", spec, index, rejected)
        row = PowerRow.from_rejections(spec, rejections)
        LOGGER.info(f"[{spec}] rejected {rejections}/{spec.reps}.")
        self.emit("scenario", row)
        return row

    def run(self) -> list[PowerRow]:
        return [self.run_scenario(spec) for spec in self.specs]


def run_power_study(
    specs: Iterable[ScenarioSpec],
    n_jobs: int = N_JOBS,
) -> list[PowerRow]:
    """
    Rejection rates for every scenario. Wrapper for
    `maxcorr.simulation.PowerStudy.run`.

    Args:
        specs (Iterable[ScenarioSpec]): Scenarios, run in order.
        n_jobs (int, optional): Worker processes for replications.
            Defaults to `MAXCORR_N_JOBS` or 1.

    Raises:
        ScenarioError: Raised, with scenario context, if a replication fails.

    Returns:
        list[PowerRow]: One row per scenario, in input order.
    """
    return PowerStudy(specs, n_jobs).run()


@dataclass(frozen=True)
class CoverageResult():
    target: float
    covered: int
    reps: int

    @property
    def coverage(self) -> float:
        return self.covered / self.reps


def run_coverage_study(
    model: str | OutcomeModel,
    n: int,
    p: int,
    rho: float = 0.0,
    reps: int = DEFAULT_REPS,
    alpha: float = DEFAULT_ALPHA,
    seed: int = 0,
    chunk_count: int | None = None,
) -> CoverageResult:
    """
    How often the two-sided 1 - `alpha` interval covers the true maximal
    absolute correlation of `model`.
    """
    target = population_max_correlation(model, p, rho)
    config = ScreenConfig(
        alpha=alpha,
        chunk_count=chunk_count,
        range_policy="off",
        seed=seed,
    )
    covered = 0
    for index in range(reps):
        stream = generate_stream(model, n, p, rho, make_rng(seed, index))
        covered += est_psi(stream, n, config).covers(target)
    return CoverageResult(target, covered, reps)


def power_table(rows: Iterable[PowerRow]) -> pd.DataFrame:
    return pd.DataFrame(
        [row.as_record() for row in rows],
        columns=list(POWER_TABLE_COLUMNS),
    )


def write_power_table(
    rows: Iterable[PowerRow],
    path: str | Path,
    output_format: OUTPUT_FORMATS = "csv",
) -> Path:
    """
    Write the power table as CSV or JSON.

    Args:
        rows (Iterable[PowerRow]): Study output.
        path (str | Path): Destination file.
        output_format (OUTPUT_FORMATS, optional): "csv" or "json".
            Defaults to "csv".

    Returns:
        Path: The written file.
    """
    path = Path(path)
    rows = list(rows)
    if output_format == "csv":
        power_table(rows).to_csv(path, index=False)
    elif output_format == "json":
        records = [row.as_record() for row in rows]
        with open(path, "w") as f:
            json.dump({"rows": records}, f, indent=2)
            f.write("\n")
    else:
        raise ValueError(f"Unknown output format: {output_format}")
    return path
