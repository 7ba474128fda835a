from maxcorr.estimator.accumulator import (  # noqa
    EstimateInterval,
    EstimatorAccumulator,
    accumulate,
    finalize,
    weights,
)
from maxcorr.estimator.normal import normal_quantile, normal_upper_tail  # noqa
from maxcorr.estimator.schedule import compute_ell_n  # noqa
