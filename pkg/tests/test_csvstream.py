import io

import numpy as np
import pandas as pd
import pytest

from maxcorr.exceptions import CsvFormatError
from maxcorr.io import count_rows, parse_csv_stream, spool
from maxcorr.screen import ScreenConfig, est_psi
from maxcorr.simulation import generate_stream, make_rng


def numeric_rows(count, columns):
    return [
        ",".join(str(i + c / 10) for c in range(columns))
        for i in range(count)
    ]


def test_small_file(write_csv):
    path = write_csv("small.csv", "x1,x2,y\n1,2,3\n4,5,6\n7,8.5,-9\n")
    stream = parse_csv_stream(path)
    rows = list(stream)
    assert stream.p == 2
    assert stream.columns == ["x1", "x2", "y"]
    assert stream.y_name == "y"
    assert len(rows) == 3
    np.testing.assert_array_equal(rows[2].x, [7.0, 8.5])
    assert rows[2].y == -9.0
    assert count_rows(path) == 3


def test_outcome_defaults_to_last_column(write_csv):
    path = write_csv("last.csv", "a,b,c\n1,2,3\n")
    stream = parse_csv_stream(path)
    assert stream.y_name == "c"
    assert stream.x_names == ["a", "b"]


@pytest.mark.parametrize("y_column", ["a", "0", 0])
def test_outcome_by_name_or_position(write_csv, y_column):
    path = write_csv("first.csv", "a,b,c\n1,2,3\n")
    stream = parse_csv_stream(path, y_column)
    (row, ) = list(stream)
    assert stream.y_name == "a"
    assert row.y == 1.0
    np.testing.assert_array_equal(row.x, [2.0, 3.0])


@pytest.mark.parametrize("y_column", ["outcome", "7", 3])
def test_missing_outcome_column(write_csv, y_column):
    path = write_csv("bad.csv", "a,b,c\n1,2,3\n")
    with pytest.raises(CsvFormatError):
        parse_csv_stream(path, y_column)


@pytest.mark.parametrize("chunksize", [1024, 5])
def test_non_numeric_cell_names_row_and_column(write_csv, chunksize):
    lines = numeric_rows(20, 4)
    cells = lines[16].split(",")
    cells[2] = "NA"
    lines[16] = ",".join(cells)
    path = write_csv("na.csv", "x1,x2,x3,y\n" + "\n".join(lines) + "\n")
    with pytest.raises(CsvFormatError) as error:
        list(parse_csv_stream(path, chunksize=chunksize))
    message = str(error.value)
    assert "row 17" in message
    assert "'x3'" in message
    assert "'NA'" in message


def test_empty_cell(write_csv):
    path = write_csv("empty.csv", "x1,y\n1,2\n,3\n")
    with pytest.raises(CsvFormatError, match="row 2"):
        list(parse_csv_stream(path))


def test_short_row(write_csv):
    path = write_csv("short.csv", "x1,x2,y\n1,2,3\n4,5\n")
    with pytest.raises(CsvFormatError, match="Row 2 has 2 fields"):
        list(parse_csv_stream(path))


def test_long_row(write_csv):
    path = write_csv("long.csv", "x1,x2,y\n1,2,3\n4,5,6\n7,8,9,10\n")
    with pytest.raises(CsvFormatError):
        list(parse_csv_stream(path))


@pytest.mark.parametrize("chunksize", [1024, 1])
def test_long_first_row(write_csv, chunksize):
    path = write_csv("long_first.csv", "x1,x2,y\n1,2,3,4\n5,6,7\n")
    with pytest.raises(CsvFormatError, match="Row 1 has 4 fields, expected 3"):
        list(parse_csv_stream(path, chunksize=chunksize))


def test_long_row_in_later_chunk(write_csv):
    lines = numeric_rows(6, 3)
    lines[4] += ",9"
    path = write_csv("long_later.csv", "x1,x2,y\n" + "\n".join(lines) + "\n")
    with pytest.raises(CsvFormatError):
        list(parse_csv_stream(path, chunksize=2))


def test_header_only(write_csv):
    path = write_csv("header.csv", "x1,x2,y\n")
    stream = parse_csv_stream(path)
    assert stream.p == 2
    assert list(stream) == []
    assert count_rows(path) == 0


def test_missing_header(write_csv):
    with pytest.raises(CsvFormatError):
        parse_csv_stream(write_csv("blank.csv", ""))


def test_single_column(write_csv):
    with pytest.raises(CsvFormatError):
        parse_csv_stream(write_csv("one.csv", "y\n1\n2\n"))


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        parse_csv_stream(tmp_path / "nothing.csv")


def test_count_rows_skips_blank_lines(write_csv):
    path = write_csv("blank_lines.csv", "x,y\n1,2\n\n3,4\n\n")
    assert count_rows(path) == 2
    assert len(list(parse_csv_stream(path))) == 2


def test_iterates_more_than_once(write_csv):
    path = write_csv("twice.csv", "x,y\n1,2\n3,4\n")
    stream = parse_csv_stream(path)
    assert len(list(stream)) == len(list(stream)) == 2


def test_spool():
    path = spool(io.StringIO("x,y\n1,2\n"))
    try:
        assert path.read_text() == "x,y\n1,2\n"
        assert count_rows(path) == 1
    finally:
        path.unlink()


def test_round_trip_through_csv(tmp_path):
    n, p = 300, 8
    rows = list(generate_stream("A1.IE", n, p, 0.25, make_rng(31)))
    frame = pd.DataFrame(
        [row.x for row in rows],
        columns=[f"x{k + 1}" for k in range(p)],
    )
    frame["y"] = [row.y for row in rows]
    path = tmp_path / "simulated.csv"
    frame.to_csv(path, index=False)

    config = ScreenConfig(chunk_count=5, range_policy="off")
    in_memory = est_psi(rows, n, config)
    from_file = est_psi(
        parse_csv_stream(path, chunksize=64),
        count_rows(path),
        config,
    )
    assert from_file.psi_hat == pytest.approx(in_memory.psi_hat, abs=1e-12)
    assert from_file.ci_lower == pytest.approx(in_memory.ci_lower, abs=1e-12)
    assert from_file.selected == in_memory.selected
