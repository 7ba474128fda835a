from __future__ import annotations

import io
import json
from typing import Sequence

import pandas as pd

from maxcorr.constants import OUTPUT_FORMATS
from maxcorr.screen import ScreenResult


def result_to_json(
    result: ScreenResult,
    column_names: Sequence[str] | None = None,
) -> str:
    """Versioned JSON document for `result`, newline terminated."""
    return json.dumps(result.to_dict(column_names), indent=2) + "\n"


def result_to_csv(
    result: ScreenResult,
    column_names: Sequence[str] | None = None,
) -> str:
    """
    One-row CSV of `result`. The selected index is flattened into
    `selected_k`, `selected_m` and `selected_name`; the top correlations are
    written as `name:corr` pairs joined with ";".
    """
    record = result.to_dict(column_names)
    selected = record.pop("selected")
    top = record.pop("top_correlations")
    record.update({
        "selected_k": selected["k"],
        "selected_m": selected["m"],
        "selected_name": selected["name"],
        "top_correlations": ";".join(
            f"{item['name'] if item['name'] else item['k']}:{item['corr']!r}"
            for item in top
        ),
    })
    buffer = io.StringIO()
    pd.DataFrame([record]).to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def render_result(
    result: ScreenResult,
    output_format: OUTPUT_FORMATS = "json",
    column_names: Sequence[str] | None = None,
) -> str:
    if output_format == "json":
        return result_to_json(result, column_names)
    if output_format == "csv":
        return result_to_csv(result, column_names)
    raise ValueError(f"Unknown output format: {output_format}")
