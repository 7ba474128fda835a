from __future__ import annotations

from pathlib import Path

from maxcorr.constants import MAXCORR_VERSION
from maxcorr.io import count_rows, parse_csv_stream
from maxcorr.screen import ScreenConfig, ScreenResult, est_psi


version = MAXCORR_VERSION
version_info = tuple(int(i) for i in version.split('.'))


def screen_csv(
    path: str | Path,
    y_column: str | int | None = None,
    config: ScreenConfig | None = None,
    log_level: str | int = None,
) -> ScreenResult:
    """
    Screen a CSV file in one pass. Wrapper for `maxcorr.io.parse_csv_stream`
    and `maxcorr.screen.est_psi`.

    Args:
        path (str | Path): CSV file with a header row and numeric cells.
        y_column (str | int | None, optional): Outcome column name or
            position. Defaults to None ("y" if present, else last).
        config (ScreenConfig | None, optional): Screen settings.
            Defaults to None (all defaults).
        log_level (str | int, optional): Log level to log at.
            Defaults to None (same as root).

    Example::

        ```python
        from maxcorr import ScreenConfig, screen_csv

        result = screen_csv("data.csv", config=ScreenConfig(chunk_count=10))
        if result.reject_null:
            print(f"max |corr| in [{result.ci_lower}, {result.ci_upper}]")
        ```

    Raises:
        FileNotFoundError: Raised if `path` doesn't exist.
        CsvFormatError: Raised on malformed input.

    Returns:
        ScreenResult: Estimate, interval, test decision and diagnostics.
    """
    stream = parse_csv_stream(path, y_column)
    return est_psi(stream, count_rows(path), config, log_level)
