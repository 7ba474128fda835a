from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from maxcorr.constants import (
    DEFAULT_ALPHA,
    DEFAULT_EPSILON,
    DEFAULT_SIGMA_FLOOR_SQ,
    DEFAULT_TOP_CORRELATIONS,
    DEFAULT_VAR_FLOOR,
    MIN_SAMPLE_SIZE,
    OFFSET_WARNING_RATIO,
    RANGE_POLICIES,
)
from maxcorr.estimator import (
    EstimatorAccumulator,
    accumulate,
    compute_ell_n,
    finalize,
)
from maxcorr.exceptions import (
    DataError,
    DimensionError,
    InvalidParameterError,
    StreamExhaustedError,
)
from maxcorr.screen.gradient import calc_sig_hat, maximizer, summarize
from maxcorr.screen.moments import (
    MomentState,
    Observation,
    correlations,
    initialize_h,
    update_h,
)
from maxcorr.screen.result import ScreenResult
from maxcorr.utils import out_of_range, sigmoid


LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScreenConfig():
    """
    Settings for one screen.

    Args:
        alpha (float, optional): Two-sided miscoverage of the interval.
            Defaults to 0.05.
        epsilon (float, optional): Burn-in growth exponent in (0, 2).
            Defaults to 0.5.
        ell_override (int | None, optional): Fixed burn-in length, skipping
            the default schedule. Defaults to None.
        sigma_floor_sq (float, optional): Lower truncation of the gradient
            variance estimate. Defaults to 1e-4.
        var_floor (float, optional): Variances at or below this are treated
            as zero. Defaults to 1e-12.
        chunk_count (int | None, optional): Refit the selected index and
            variance only this many times, at contiguous chunk starts.
            Defaults to None (refit at every step).
        apply_sigmoid (bool, optional): Map every value through
            2 / (1 + exp(-z)) - 1 before use. Defaults to False.
        range_policy (RANGE_POLICIES, optional): What to do with values
            outside [-1, 1]: "off", "warn" (once), or "error".
            Defaults to "warn".
        seed (int | None, optional): Seed that generated simulated input,
            carried into the result. Defaults to None.
    """
    alpha: float = DEFAULT_ALPHA
    epsilon: float = DEFAULT_EPSILON
    ell_override: int | None = None
    sigma_floor_sq: float = DEFAULT_SIGMA_FLOOR_SQ
    var_floor: float = DEFAULT_VAR_FLOOR
    chunk_count: int | None = None
    apply_sigmoid: bool = False
    range_policy: RANGE_POLICIES = "warn"
    seed: int | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha < 1.0:
            raise InvalidParameterError(
                f"Alpha must be in (0, 1): {self.alpha}"
            )
        if not 0.0 < self.epsilon < 2.0:
            raise InvalidParameterError(
                f"Epsilon must be in (0, 2): {self.epsilon}"
            )
        if self.chunk_count is not None and self.chunk_count < 1:
            raise InvalidParameterError(
                f"Chunk count must be at least 1: {self.chunk_count}"
            )
        if self.ell_override is not None and self.ell_override < 2:
            raise InvalidParameterError(
                f"Burn-in must be at least 2: {self.ell_override}"
            )
        if self.sigma_floor_sq <= 0.0:
            raise InvalidParameterError(
                f"Variance floor must be positive: {self.sigma_floor_sq}"
            )
        if self.var_floor < 0.0:
            raise InvalidParameterError(
                f"Degeneracy threshold is negative: {self.var_floor}"
            )
        if self.range_policy not in ("off", "warn", "error"):
            raise InvalidParameterError(
                f"Unknown range policy: {self.range_policy}"
            )


def chunk_bounds(
    ell_n: int,
    n: int,
    chunk_count: int | None = None,
) -> Iterator[tuple[int, int]]:
    """
    Split the accumulation steps j = ell_n..n-1 into contiguous
    `[start, stop)` ranges. Without a chunk count every step is its own
    chunk; otherwise the last chunk also takes the remainder.
    """
    terms = n - ell_n
    if chunk_count is None:
        for j in range(ell_n, n):
            yield j, j + 1
        return
    count = min(chunk_count, terms)
    size = terms // count
    for i in range(count):
        start = ell_n + i * size
        yield start, n if i == count - 1 else start + size


class StreamingScreen():
    def __init__(
        self,
        config: ScreenConfig | None = None,
        log_level: str | int = None,
    ) -> None:
        """
        Single-pass stabilized one-step estimator of the maximal absolute
        correlation between an outcome and p predictors. Holds O(p) state
        and takes O(np) time.

        Args:
            config (ScreenConfig | None, optional): Screen settings.
                Defaults to None (all defaults).
            log_level (str | int, optional): Log level to log at.
                Defaults to None (same as root).

        Example::

            ```python
            from maxcorr.screen import ScreenConfig, StreamingScreen

            screen = StreamingScreen(ScreenConfig(alpha=0.1, chunk_count=10))
            result = screen.run(observations, n=500)
            print(result.psi_hat, result.ci_lower, result.reject_null)
            ```
        """
        self.config = config if config else ScreenConfig()
        if log_level is not None:
            logging.getLogger('maxcorr').setLevel(log_level)
        self._warned_range = False

    def ell_n(self, n: int, p: int) -> int:
        """Burn-in length for a sample of `n` rows with `p` predictors."""
        if self.config.ell_override is None:
            return compute_ell_n(n, p, self.config.epsilon)
        if self.config.ell_override > n - 1:
            raise InvalidParameterError(
                f"Burn-in {self.config.ell_override} leaves no terms for"
                f" n={n}."
            )
        return self.config.ell_override

    def _prepare(self, o: Observation, p: int | None) -> Observation:
        x = np.asarray(o.x, dtype=float)
        if p is not None and x.shape != (p,):
            raise DimensionError(
                f"Observation has shape {x.shape}, expected ({p},)."
            )
        y = float(o.y)
        if not (np.isfinite(y) and np.isfinite(x).all()):
            raise DataError("Observation contains non-finite values.")
        if self.config.apply_sigmoid:
            x, y = sigmoid(x), float(sigmoid(y))
        if self.config.range_policy != "off" and out_of_range(x, y):
            if self.config.range_policy == "error":
                raise DataError("Observation has values outside [-1, 1].")
            if not self._warned_range:
                LOGGER.warning(
                    "Data has values outside [-1, 1]; estimates are computed"
                    " as given. Use the sigmoid transform to bound them."
                )
                self._warned_range = True
        return Observation(x, y)

    def run(self, stream: Iterable[Observation], n: int) -> ScreenResult:
        """
        Consume exactly `n` observations from `stream` and estimate.

        Args:
            stream (Iterable[Observation]): Ordered observations.
            n (int): Sample size, at least 4.

        Raises:
            InvalidParameterError: Raised if `n` is too small.
            StreamExhaustedError: Raised if the stream yields fewer than `n`
                observations.
            DimensionError: Raised if the predictor count changes mid-stream.
            DataError: Raised on non-finite values.

        Returns:
            ScreenResult: Estimate, interval, test decision and diagnostics.
        """
        if n < MIN_SAMPLE_SIZE:
            raise InvalidParameterError(
                f"Sample size must be at least {MIN_SAMPLE_SIZE}, got: {n}"
            )
        config = self.config
        self._warned_range = False
        iterator = iter(stream)
        received = 0
        p = None

        def read() -> Observation:
            nonlocal received
            try:
                o = next(iterator)
            except StopIteration:
                raise StreamExhaustedError(n, received) from None
            received += 1
            return self._prepare(o, p)

        first = read()
        p = first.x.shape[0]
        h = initialize_h(first, read())
        ell_n = self.ell_n(n, p)
        for _ in range(2, ell_n):
            update_h(h, read())
        LOGGER.debug(f"Burn-in of {ell_n} observations done (n={n}, p={p}).")
        if far_from_zero(h, config.var_floor):
            LOGGER.warning(
                f"Some means are over {OFFSET_WARNING_RATIO:g} standard"
                " deviations from zero, so the gradient variance loses"
                " precision. Center the data or use the sigmoid transform."
            )

        acc = EstimatorAccumulator()
        degenerate_steps = 0
        chunks = 0
        index = None
        for start, stop in chunk_bounds(ell_n, n, config.chunk_count):
            chunks += 1
            # Frozen for the whole chunk.
            index = maximizer(h, config.var_floor)
            summary = summarize(h, index.k, config.var_floor)
            sigma_hat = calc_sig_hat(
                h,
                index,
                config.sigma_floor_sq,
                config.var_floor,
            )
            plug_in = summary.psi(index.m)
            if summary.degenerate:
                degenerate_steps += stop - start
            if config.chunk_count is not None:
                LOGGER.debug(
                    f"Chunk [{start}, {stop}): index {index}, plug-in"
                    f" {plug_in:.6g}, sigma {sigma_hat:.6g}."
                )
            for _ in range(start, stop):
                o = read()
                gradient = float(
                    summary.gradient(index.m, o.x[index.k], o.y)
                )
                acc = accumulate(acc, plug_in, gradient, sigma_hat)
                update_h(h, o)
        if degenerate_steps:
            LOGGER.info(
                f"{degenerate_steps} of {n - ell_n} steps had degenerate"
                " variances and contributed only their plug-in."
            )
        interval = finalize(acc, config.alpha)
        return ScreenResult(
            psi_hat=interval.psi_hat,
            sigma_bar=interval.sigma_bar,
            ci_lower=interval.ci_lower,
            ci_upper=interval.ci_upper,
            alpha=config.alpha,
            n=n,
            ell_n=ell_n,
            reject_null=interval.ci_lower > 0.0,
            p_value=interval.p_value,
            selected=index,
            top_correlations=top_correlations(h, config.var_floor),
            degenerate_steps=degenerate_steps,
            chunk_count=chunks,
            seed=config.seed,
        )


def far_from_zero(
    h: MomentState,
    var_floor: float = DEFAULT_VAR_FLOOR,
    ratio: float = OFFSET_WARNING_RATIO,
) -> bool:
    """
    True if the outcome or any non-degenerate predictor has a mean more than
    `ratio` standard deviations from zero under `h`.
    """
    stats = correlations(h, var_floor)
    means = np.append(h.column(1, 0), h.mean_y)
    variances = np.append(stats.var_x, stats.var_y)
    usable = variances > var_floor
    return bool(
        np.any(means[usable] ** 2 > ratio * ratio * variances[usable])
    )


def top_correlations(
    h: MomentState,
    var_floor: float = DEFAULT_VAR_FLOOR,
    count: int = DEFAULT_TOP_CORRELATIONS,
) -> tuple[tuple[int, float], ...]:
    """Largest absolute correlations in `h` as `(k, corr)` pairs."""
    corr = correlations(h, var_floor).corr
    count = min(count, corr.shape[0])
    # Stable sort keeps the lower position first among equal magnitudes.
    order = np.argsort(-np.abs(corr), kind="stable")[:count]
    return tuple((int(k), float(corr[k])) for k in order)


def est_psi(
    stream: Iterable[Observation],
    n: int,
    config: ScreenConfig | None = None,
    log_level: str | int = None,
) -> ScreenResult:
    """
    Estimate the maximal absolute correlation from a stream of `n`
    observations. Wrapper for `maxcorr.screen.StreamingScreen.run`.

    Args:
        stream (Iterable[Observation]): Ordered observations.
        n (int): Sample size, at least 4.
        config (ScreenConfig | None, optional): Screen settings.
            Defaults to None.
        log_level (str | int, optional): Log level to log at.
            Defaults to None (same as root).

    Returns:
        ScreenResult: Estimate, interval, test decision and diagnostics.
    """
    return StreamingScreen(config, log_level).run(stream, n)
