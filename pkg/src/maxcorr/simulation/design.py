from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from maxcorr.exceptions import ScenarioError
from maxcorr.screen import Observation


@dataclass(frozen=True)
class OutcomeModel():
    """
    Outcome `Y = sum_k coefficients[k] * X_k + noise` over the leading
    predictors. Noise is a standard normal `tau_1`, or, when
    `heteroscedastic`, `sum_k X_k tau_k / sqrt(p)` with fresh `tau_k`.
    """
    name: str
    coefficients: tuple[float, ...] = ()
    heteroscedastic: bool = False

    @property
    def support(self) -> int:
        return len(self.coefficients)

    @property
    def is_null(self) -> bool:
        return not any(self.coefficients)


def _contrast(positive: float, negative: float) -> tuple[float, ...]:
    return (positive, ) * 5 + (negative, ) * 5


MODELS = {
    "N.IE": OutcomeModel("N.IE"),
    "A1.IE": OutcomeModel("A1.IE", (1 / 5, )),
    "A2.IE": OutcomeModel("A2.IE", _contrast(0.15, -0.1)),
    "N.DE": OutcomeModel("N.DE", (), True),
    "A1.DE": OutcomeModel("A1.DE", (1 / 5, ), True),
    "A2.DE": OutcomeModel("A2.DE", _contrast(0.15, -0.1), True),
    "A3.IE": OutcomeModel("A3.IE", (1 / 15, )),
    "A4.IE": OutcomeModel("A4.IE", _contrast(0.03, -0.015)),
}


def get_model(model: str | OutcomeModel) -> OutcomeModel:
    if isinstance(model, OutcomeModel):
        return model
    try:
        return MODELS[model]
    except KeyError:
        raise ScenarioError(
            f"Unknown model: {model}. Choose from {', '.join(MODELS)}."
        ) from None


def make_rng(seed: int, index: int | None = None) -> np.random.Generator:
    """
    Philox generator for `seed`, or for replication `index` of it. The
    replication streams are the children `SeedSequence(seed).spawn` would
    hand out, so they are independent and reproducible one by one.
    """
    if index is None:
        sequence = np.random.SeedSequence(seed)
    else:
        sequence = np.random.SeedSequence(seed, spawn_key=(index, ))
    return np.random.Generator(np.random.Philox(sequence))


def derive_seed(seed: int, position: int) -> int:
    """Reproducible per-scenario seed from a study seed and row position."""
    state = np.random.SeedSequence([seed, position]).generate_state(1)
    return int(state[0])


def gen_design_row(p: int, rho: float, rng: np.random.Generator) -> np.ndarray:
    """
    One row of an equicorrelated normal design: unit variances and pairwise
    correlation `rho`, built from one shared factor in O(p).

    Args:
        p (int): Number of predictors.
        rho (float): Pairwise correlation in [0, 1).
        rng (np.random.Generator): Random source.

    Raises:
        ScenarioError: Raised if `rho` is out of range.

    Returns:
        np.ndarray: Vector of length p.
    """
    if not 0.0 <= rho < 1.0:
        raise ScenarioError(f"rho must be in [0, 1): {rho}")
    shared = rng.standard_normal()
    own = rng.standard_normal(p)
    return math.sqrt(rho) * shared + math.sqrt(1.0 - rho) * own


def gen_outcome(
    model: str | OutcomeModel,
    x: np.ndarray,
    rng: np.random.Generator,
    noise_scale: float = 1.0,
) -> float:
    """
    Draw an outcome for predictors `x` under `model`.

    Args:
        model (str | OutcomeModel): Model name (e.g. "A1.IE") or model.
        x (np.ndarray): Predictor vector.
        rng (np.random.Generator): Random source for the noise.
        noise_scale (float, optional): Multiplier on the noise term.
            Defaults to 1.0.

    Raises:
        ScenarioError: Raised if the model uses more predictors than `x` has.

    Returns:
        float: The outcome.
    """
    model = get_model(model)
    p = x.shape[0]
    if p < model.support:
        raise ScenarioError(
            f"Model {model.name} needs at least {model.support} predictors,"
            f" got {p}."
        )
    signal = float(np.dot(model.coefficients, x[:model.support]))
    if model.heteroscedastic:
        noise = float(np.dot(x, rng.standard_normal(p))) / math.sqrt(p)
    else:
        noise = rng.standard_normal()
    return signal + noise_scale * noise


def generate_stream(
    model: str | OutcomeModel,
    n: int,
    p: int,
    rho: float,
    rng: np.random.Generator,
) -> Iterator[Observation]:
    """Lazily generate `n` observations; only one row is alive at a time."""
    model = get_model(model)
    for _ in range(n):
        x = gen_design_row(p, rho, rng)
        yield Observation(x, gen_outcome(model, x, rng))


def population_max_correlation(
    model: str | OutcomeModel,
    p: int,
    rho: float,
) -> float:
    """
    True maximal absolute correlation between Y and the predictors for a
    model on the equicorrelated design. Both noise types have unit variance
    and are uncorrelated with every predictor.
    """
    model = get_model(model)
    beta = np.asarray(model.coefficients, dtype=float)
    total = beta.sum()
    var_y = (1.0 - rho) * float(beta @ beta) + rho * total * total + 1.0
    covariances = list(np.abs((1.0 - rho) * beta + rho * total))
    if p > model.support:
        covariances.append(abs(rho * total))
    return max(covariances, default=0.0) / math.sqrt(var_y)
