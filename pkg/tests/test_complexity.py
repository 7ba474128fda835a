import time
import tracemalloc

import pytest

from maxcorr.screen import ScreenConfig, est_psi
from maxcorr.simulation import generate_stream, make_rng


CONFIG = ScreenConfig(range_policy="off")


def timed_screen(n, p, seed=0):
    stream = generate_stream("N.IE", n, p, 0.0, make_rng(seed))
    start = time.perf_counter()
    est_psi(stream, n, CONFIG)
    return time.perf_counter() - start


def peak_memory(n, p):
    stream = generate_stream("A1.IE", n, p, 0.0, make_rng(1))
    tracemalloc.start()
    try:
        est_psi(stream, n, CONFIG)
        return tracemalloc.get_traced_memory()[1]
    finally:
        tracemalloc.stop()


@pytest.mark.slow
def test_time_linear_in_p():
    timed_screen(1000, 10_000)
    small = min(timed_screen(1000, 10_000, seed) for seed in range(3))
    large = min(timed_screen(1000, 20_000, seed) for seed in range(3))
    assert 1.5 <= large / small <= 3.0


@pytest.mark.slow
def test_memory_flat_in_n():
    peaks = [peak_memory(n, 50) for n in (1_000, 10_000, 100_000)]
    assert max(peaks) <= 1.5 * min(peaks)


@pytest.mark.slow
def test_wide_screen_under_a_minute():
    assert timed_screen(1000, 100_000) < 60.0
