from maxcorr.io.csvstream import (  # noqa
    CsvStream,
    count_rows,
    parse_csv_stream,
    resolve_y_column,
    spool,
)
from maxcorr.io.grid import read_grid  # noqa
from maxcorr.io.serialize import (  # noqa
    render_result,
    result_to_csv,
    result_to_json,
)
