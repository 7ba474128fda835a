from __future__ import annotations

import logging
from pathlib import Path
from typing import Callable

import pandas as pd

from maxcorr.constants import DEFAULT_ALPHA, DEFAULT_REPS
from maxcorr.exceptions import ScenarioError
from maxcorr.simulation import ScenarioSpec, derive_seed


LOGGER = logging.getLogger(__name__)

REQUIRED_COLUMNS = ("model", "n", "p")
OPTIONAL_COLUMNS = ("rho", "reps", "alpha", "seed", "method", "chunk_count")


def _optional_int(value: str) -> int | None:
    return None if value.lower() == "none" else int(value)


_CONVERTERS: dict[str, Callable[[str], object]] = {
    "model": str,
    "n": int,
    "p": int,
    "rho": float,
    "reps": int,
    "alpha": float,
    "seed": int,
    "method": str,
    "chunk_count": _optional_int,
}


def read_grid(
    path: str | Path,
    seed: int = 0,
    reps: int = DEFAULT_REPS,
    alpha: float = DEFAULT_ALPHA,
) -> list[ScenarioSpec]:
    """
    Read a scenario grid: a CSV file with columns model, n and p, and
    optionally rho, reps, alpha, seed, method and chunk_count (use "none"
    to refit at every step). Blank cells fall back to the defaults given
    here; a row without a seed gets one derived from `seed` and its
    position so every scenario draws from a different stream.

    Args:
        path (str | Path): Grid CSV file.
        seed (int, optional): Study seed. Defaults to 0.
        reps (int, optional): Default replications per scenario.
            Defaults to 500.
        alpha (float, optional): Default test level. Defaults to 0.05.

    Raises:
        ScenarioError: Raised for unknown or missing columns and for invalid
            rows, naming the file line.

    Returns:
        list[ScenarioSpec]: Scenarios in file order.
    """
    try:
        frame = pd.read_csv(
            path,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=False,
            index_col=False,
        )
    except pd.errors.EmptyDataError:
        raise ScenarioError(f"Grid file is empty: {path}") from None
    except pd.errors.ParserError as error:
        raise ScenarioError(f"Malformed grid file {path}: {error}") from error
    frame.columns = [str(column).strip() for column in frame.columns]
    missing = [c for c in REQUIRED_COLUMNS if c not in frame.columns]
    if missing:
        raise ScenarioError(f"Grid is missing columns: {', '.join(missing)}")
    unknown = [
        c for c in frame.columns
        if c not in REQUIRED_COLUMNS + OPTIONAL_COLUMNS
    ]
    if unknown:
        raise ScenarioError(f"Unknown grid columns: {', '.join(unknown)}")

    specs = []
    for position, (_, row) in enumerate(frame.iterrows()):
        # Header is line 1.
        line = position + 2
        cells = {
            column: value.strip() for column, value in row.items()
            if isinstance(value, str) and value.strip()
        }
        if not cells:
            continue
        fields = {"reps": reps, "alpha": alpha}
        try:
            for column, value in cells.items():
                fields[column] = _CONVERTERS[column](value)
            fields.setdefault("seed", derive_seed(seed, position))
            specs.append(ScenarioSpec(**fields))
        except (ValueError, TypeError) as error:
            raise ScenarioError(
                f"Invalid scenario on line {line} of {path}: {error}"
            ) from error
    if not specs:
        raise ScenarioError(f"Grid file has no scenarios: {path}")
    LOGGER.debug(f"Read {len(specs)} scenarios from {path}.")
    return specs
