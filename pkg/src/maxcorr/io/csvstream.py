from __future__ import annotations

import logging
import shutil
import sys
import tempfile
from pathlib import Path
from typing import IO, Iterator

import numpy as np
import pandas as pd

from maxcorr.constants import CSV_CHUNKSIZE
from maxcorr.exceptions import CsvFormatError
from maxcorr.screen import Observation


LOGGER = logging.getLogger(__name__)

_READ_OPTIONS = {
    "dtype": str,
    "keep_default_na": False,
    "index_col": False,
}


def resolve_y_column(columns: list[str], y_column: str | int | None) -> int:
    """
    Position of the outcome column. `None` picks "y" when present, else
    the last column. A name is matched first; a string of digits or an int
    is taken as a 0-based position.
    """
    if y_column is None:
        return columns.index("y") if "y" in columns else len(columns) - 1
    if isinstance(y_column, str):
        if y_column in columns:
            return columns.index(y_column)
        if not y_column.isdigit():
            raise CsvFormatError(
                f"Outcome column {y_column!r} not in header: {columns}"
            )
        y_column = int(y_column)
    if not 0 <= y_column < len(columns):
        raise CsvFormatError(
            f"Outcome column index {y_column} out of range for"
            f" {len(columns)} columns."
        )
    return y_column


class CsvStream():
    def __init__(
        self,
        path: str | Path,
        y_column: str | int | None = None,
        chunksize: int = CSV_CHUNKSIZE,
    ) -> None:
        """
        Observations read lazily from a headed numeric CSV file. Only
        `chunksize` rows are held in memory at a time, and every iteration
        re-reads the file from the start.

        Args:
            path (str | Path): CSV file with a header row.
            y_column (str | int | None, optional): Outcome column name or
                position. Defaults to None ("y" if present, else last).
            chunksize (int, optional): Rows per read. Defaults to
                `MAXCORR_CSV_CHUNKSIZE` or 1024.

        Raises:
            FileNotFoundError: Raised if `path` doesn't exist.
            CsvFormatError: Raised if the header is missing, has fewer than
                two columns, or lacks the outcome column.
        """
        self.path = Path(path)
        self.chunksize = chunksize
        try:
            header = pd.read_csv(self.path, nrows=0, **_READ_OPTIONS)
        except pd.errors.EmptyDataError:
            raise CsvFormatError(f"No header row in {self.path}") from None
        self.columns = [str(column) for column in header.columns]
        if len(self.columns) < 2:
            raise CsvFormatError(
                f"Need an outcome and at least one predictor column, got:"
                f" {self.columns}"
            )
        self.y_index = resolve_y_column(self.columns, y_column)
        self.x_indices = np.array(
            [i for i in range(len(self.columns)) if i != self.y_index]
        )

    def __repr__(self) -> str:
        return f"<CsvStream {self.path} (p={self.p}, y={self.y_name!r})>"

    @property
    def p(self) -> int:
        return len(self.columns) - 1

    @property
    def y_name(self) -> str:
        return self.columns[self.y_index]

    @property
    def x_names(self) -> list[str]:
        return [self.columns[i] for i in self.x_indices]

    def _check_width(self, chunk: pd.DataFrame, offset: int) -> None:
        width = len(self.columns)
        if chunk.shape[1] == width:
            return
        if chunk.shape[1] > width:
            extra = chunk.iloc[:, width:].notna().any(axis=1).to_numpy()
            i = int(np.argmax(extra))
        else:
            i = 0
        fields = int(chunk.iloc[i].notna().sum())
        raise CsvFormatError(
            f"Row {offset + i + 1} has {fields} fields, expected {width}."
        )

    def _values(self, chunk: pd.DataFrame, offset: int) -> np.ndarray:
        values = chunk.apply(pd.to_numeric, errors="coerce").to_numpy(
            dtype=float,
        )
        bad = ~np.isfinite(values)
        if not bad.any():
            return values
        i, column = (int(v) for v in np.argwhere(bad)[0])
        row = offset + i + 1
        if chunk.iloc[i].isna().any():
            fields = int(chunk.iloc[i].notna().sum())
            raise CsvFormatError(
                f"Row {row} has {fields} fields, expected {len(self.columns)}."
            )
        raise CsvFormatError(
            f"Non-numeric value {chunk.iat[i, column]!r} in row {row},"
            f" column {self.columns[column]!r}."
        )

    def __iter__(self) -> Iterator[Observation]:
        offset = 0
        try:
            # Header skipped: surplus fields in the first row must stay
            # visible to the width check.
            reader = pd.read_csv(
                self.path,
                header=None,
                skiprows=1,
                chunksize=self.chunksize,
                **_READ_OPTIONS,
            )
        except pd.errors.EmptyDataError:
            return
        try:
            with reader:
                for chunk in reader:
                    self._check_width(chunk, offset)
                    values = self._values(chunk, offset)
                    for row in values:
                        yield Observation(
                            row[self.x_indices],
                            row[self.y_index],
                        )
                    offset += len(chunk)
        except pd.errors.ParserError as error:
            raise CsvFormatError(
                f"Malformed CSV after data row {offset}: {error}"
            ) from error


def parse_csv_stream(
    source: str | Path,
    y_column: str | int | None = None,
    chunksize: int = CSV_CHUNKSIZE,
) -> CsvStream:
    """
    Open a CSV file as an ordered stream of observations.

    Args:
        source (str | Path): CSV file with a header row.
        y_column (str | int | None, optional): Outcome column name or
            position. Defaults to None ("y" if present, else last).
        chunksize (int, optional): Rows per read. Defaults to
            `MAXCORR_CSV_CHUNKSIZE` or 1024.

    Example::

        ```python
        from maxcorr.io import count_rows, parse_csv_stream
        from maxcorr.screen import est_psi

        stream = parse_csv_stream("data.csv", y_column="outcome")
        result = est_psi(stream, count_rows("data.csv"))
        ```

    Returns:
        CsvStream: Iterable of `Observation`, with `p`, `columns` and
            `y_name`.
    """
    return CsvStream(source, y_column, chunksize)


def count_rows(path: str | Path) -> int:
    """Number of non-blank data rows after the header, in constant memory."""
    with open(path) as f:
        lines = sum(1 for line in f if line.strip())
    return max(lines - 1, 0)


def spool(source: IO[str] | None = None) -> Path:
    """
    Copy a text stream (standard input by default) to a temporary CSV file
    so it can be counted and then read. The caller removes the file.
    """
    source = source if source is not None else sys.stdin
    with tempfile.NamedTemporaryFile(
        "w",
        suffix=".csv",
        prefix="maxcorr-",
        delete=False,
    ) as f:
        shutil.copyfileobj(source, f)
    LOGGER.debug(f"Spooled input to {f.name}.")
    return Path(f.name)
