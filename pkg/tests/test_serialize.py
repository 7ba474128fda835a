import json

import pandas as pd
import pytest

from maxcorr.io import render_result, result_to_csv, result_to_json
from maxcorr.screen import Index, ScreenResult


@pytest.fixture
def result():
    return ScreenResult(
        psi_hat=0.31,
        sigma_bar=0.9,
        ci_lower=0.12,
        ci_upper=0.5,
        alpha=0.05,
        n=400,
        ell_n=36,
        reject_null=True,
        p_value=0.0007,
        selected=Index(2, -1),
        top_correlations=((2, -0.33), (0, 0.1)),
        degenerate_steps=0,
        chunk_count=364,
    )


def test_json(result):
    document = json.loads(result_to_json(result, ["a", "b", "c"]))
    assert document["schema"] == "screen-result/1"
    assert document["psi_hat"] == 0.31
    assert document["reject_null"] is True
    assert document["selected"] == {"k": 2, "m": -1, "name": "c"}
    assert document["top_correlations"][0] == {
        "k": 2,
        "name": "c",
        "corr": -0.33,
    }


def test_json_without_names(result):
    document = json.loads(result_to_json(result))
    assert document["selected"]["name"] is None
    assert document["seed"] is None


def test_json_is_stable(result):
    text = render_result(result, "json")
    assert text == render_result(result, "json")
    assert text.endswith("}\n")


def test_csv(result, tmp_path):
    path = tmp_path / "result.csv"
    path.write_text(result_to_csv(result, ["a", "b", "c"]))
    table = pd.read_csv(path)
    assert len(table) == 1
    assert table.loc[0, "selected_k"] == 2
    assert table.loc[0, "selected_name"] == "c"
    assert table.loc[0, "top_correlations"] == "c:-0.33;a:0.1"
    assert table.loc[0, "psi_hat"] == 0.31


def test_unknown_format(result):
    with pytest.raises(ValueError):
        render_result(result, "yaml")
