from __future__ import annotations

import logging
import sys
from argparse import ArgumentParser
from dataclasses import dataclass
from pathlib import Path

from tqdm import tqdm

from maxcorr.constants import (
    DEFAULT_ALPHA,
    DEFAULT_EPSILON,
    DEFAULT_REPS,
    N_JOBS,
    OUTPUT_FORMATS,
)
from maxcorr.exceptions import (
    DataError,
    InvalidParameterError,
    ScenarioError,
)
from maxcorr.io import (
    count_rows,
    parse_csv_stream,
    read_grid,
    render_result,
    spool,
)
from maxcorr.screen import ScreenConfig, StreamingScreen
from maxcorr.simulation import PowerStudy, write_power_table


LOGGER = logging.getLogger(__name__)

INPUT_ERRORS = (DataError, InvalidParameterError, ScenarioError, OSError)


@dataclass
class CliConfig():
    """Options of one CLI invocation."""
    subcommand: str
    input_path: str | None = None
    y_column: str | None = None
    alpha: float = DEFAULT_ALPHA
    epsilon: float = DEFAULT_EPSILON
    ell_override: int | None = None
    chunk_count: int | None = None
    sigmoid: bool = False
    seed: int | None = None
    output_format: OUTPUT_FORMATS = "json"
    grid_path: str | None = None
    out_path: str | None = None
    reps: int = DEFAULT_REPS
    n_jobs: int = N_JOBS
    quiet: bool = False
    log_level: str | None = None

    def __post_init__(self) -> None:
        if self.subcommand not in ("screen", "simulate"):
            raise InvalidParameterError(
                f"Unknown subcommand: {self.subcommand}"
            )
        if self.output_format not in ("json", "csv"):
            raise InvalidParameterError(
                f"Unknown output format: {self.output_format}"
            )
        if self.subcommand == "simulate":
            if not self.grid_path or not self.out_path:
                raise InvalidParameterError(
                    "simulate needs both --grid and --out."
                )
            if self.reps < 1:
                raise InvalidParameterError(
                    f"reps must be at least 1: {self.reps}"
                )

    def screen_config(self) -> ScreenConfig:
        return ScreenConfig(
            alpha=self.alpha,
            epsilon=self.epsilon,
            ell_override=self.ell_override,
            chunk_count=self.chunk_count,
            apply_sigmoid=self.sigmoid,
            seed=self.seed,
        )


def _fail(error: Exception, code: int) -> int:
    print(f"maxcorr: {error}", file=sys.stderr)
    return code


def run_screen(config: CliConfig) -> int:
    """
    Screen a CSV file (or standard input) and print the result.

    Args:
        config (CliConfig): Parsed options.

    Returns:
        int: 0 on success, 2 for bad input or options, 1 otherwise.
    """
    spooled = None
    try:
        screen_config = config.screen_config()
        if config.input_path and config.input_path != "-":
            path = Path(config.input_path)
            if not path.is_file():
                raise FileNotFoundError(f"No such input file: {path}")
        else:
            path = spooled = spool()
        stream = parse_csv_stream(path, config.y_column)
        n = count_rows(path)
        LOGGER.info(
            f"Screening {n} rows of {stream.p} predictors against"
            f" {stream.y_name!r}."
        )
        result = StreamingScreen(screen_config, config.log_level).run(
            stream,
            n,
        )
        sys.stdout.write(
            render_result(result, config.output_format, stream.x_names)
        )
    except INPUT_ERRORS as error:
        return _fail(error, 2)
    except Exception as error:
        LOGGER.debug("Screen failed.", exc_info=True)
        return _fail(error, 1)
    finally:
        if spooled is not None:
            spooled.unlink(missing_ok=True)
    return 0


def run_simulate(config: CliConfig) -> int:
    """
    Run the power study described by a grid file and write the table.

    Args:
        config (CliConfig): Parsed options.

    Returns:
        int: 0 on success, 2 for bad input or options, 1 otherwise.
    """
    try:
        specs = read_grid(
            config.grid_path,
            seed=config.seed if config.seed is not None else 0,
            reps=config.reps,
            alpha=config.alpha,
        )
        study = PowerStudy(specs, config.n_jobs, config.log_level)
        progress_bar = tqdm(
            total=study.total_replications,
            disable=config.quiet,
            unit="rep",
            file=sys.stderr,
        )
        study.on(
            "replication",
            lambda spec, index, rejected: progress_bar.update(1),
        )
        study.on(
            "scenario",
            lambda row: progress_bar.set_postfix_str(
                f"{row.spec.model} power={row.power:.3f}"
            ),
        )
        try:
            rows = study.run()
        finally:
            progress_bar.close()
        path = write_power_table(rows, config.out_path, config.output_format)
        if not config.quiet:
            print(f"Wrote {len(rows)} rows to {path}", file=sys.stderr)
    except INPUT_ERRORS as error:
        return _fail(error, 2)
    except Exception as error:
        LOGGER.debug("Simulation failed.", exc_info=True)
        return _fail(error, 1)
    return 0


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        "maxcorr",
        description="Streaming screen for the maximal absolute correlation.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    screen_parser = subparsers.add_parser(
        "screen",
        description="Estimate the maximal absolute correlation of a CSV file.",
    )
    screen_parser.add_argument(
        "--input",
        help="CSV file with a header row. Reads standard input if omitted.",
        dest="input_path",
        default=None,
    )
    screen_parser.add_argument(
        "--y-col",
        help='Outcome column name or 0-based position. Defaults to "y" if'
        " present, else the last column.",
        dest="y_column",
        default=None,
    )
    screen_parser.add_argument(
        "--alpha",
        help="Two-sided miscoverage of the interval.",
        type=float,
        default=DEFAULT_ALPHA,
    )
    screen_parser.add_argument(
        "--epsilon",
        help="Burn-in growth exponent in (0, 2).",
        type=float,
        default=DEFAULT_EPSILON,
    )
    screen_parser.add_argument(
        "--ell",
        help="Fixed burn-in length instead of the default schedule.",
        type=int,
        dest="ell_override",
        default=None,
    )
    screen_parser.add_argument(
        "--chunks",
        help="Refit the selected index only this many times.",
        type=int,
        dest="chunk_count",
        default=None,
    )
    screen_parser.add_argument(
        "--sigmoid",
        help="Map every value into (-1, 1) before screening.",
        action="store_true",
    )
    screen_parser.add_argument(
        "--format",
        help="Result format.",
        choices=["json", "csv"],
        dest="output_format",
        default="json",
    )
    simulate_parser = subparsers.add_parser(
        "simulate",
        description="Run a Monte Carlo power study from a scenario grid.",
    )
    simulate_parser.add_argument(
        "--grid",
        help="CSV grid of scenarios (model, n, p and optional overrides).",
        dest="grid_path",
        required=True,
    )
    simulate_parser.add_argument(
        "--seed",
        help="Study seed.",
        type=int,
        default=0,
    )
    simulate_parser.add_argument(
        "--reps",
        help="Replications per scenario, unless the grid sets them.",
        type=int,
        default=DEFAULT_REPS,
    )
    simulate_parser.add_argument(
        "--out",
        help="Power table destination.",
        dest="out_path",
        required=True,
    )
    simulate_parser.add_argument(
        "--format",
        help="Power table format.",
        choices=["csv", "json"],
        dest="output_format",
        default="csv",
    )
    simulate_parser.add_argument(
        "--jobs",
        help="Worker processes for replications.",
        type=int,
        dest="n_jobs",
        default=N_JOBS,
    )
    simulate_parser.add_argument(
        "--quiet",
        help="No progress bar.",
        action="store_true",
    )
    for subparser in (screen_parser, simulate_parser):
        subparser.add_argument(
            "--log-level",
            help="Log level, e.g. DEBUG or INFO.",
            type=str.upper,
            default=None,
        )
    return parser


def main(argv: list[str] | None = None) -> None:
    options = vars(build_parser().parse_args(argv))
    logging.basicConfig(
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = CliConfig(options.pop("command"), **options)
        if config.log_level:
            logging.getLogger("maxcorr").setLevel(config.log_level)
    except ValueError as error:
        raise SystemExit(_fail(error, 2))
    if config.subcommand == "screen":
        code = run_screen(config)
    else:
        code = run_simulate(config)
    if code:
        raise SystemExit(code)
