import math

import pytest

from maxcorr.estimator import normal_quantile, normal_upper_tail
from maxcorr.exceptions import InvalidParameterError


@pytest.mark.parametrize(
    "q, expected",
    [(0.975, 1.959964), (0.995, 2.575829), (0.5, 0.0), (0.95, 1.644854)],
)
def test_normal_quantile(q, expected):
    assert normal_quantile(q) == pytest.approx(expected, abs=1e-6)


def test_normal_quantile_symmetry():
    assert normal_quantile(0.025) == pytest.approx(-normal_quantile(0.975))


@pytest.mark.parametrize("q", [0.0, 1.0, -0.1, 1.5, math.nan])
def test_normal_quantile_out_of_range(q):
    with pytest.raises(InvalidParameterError):
        normal_quantile(q)


def test_normal_upper_tail():
    assert normal_upper_tail(0.0) == pytest.approx(0.5)
    assert normal_upper_tail(1.959964) == pytest.approx(0.025, abs=1e-7)
