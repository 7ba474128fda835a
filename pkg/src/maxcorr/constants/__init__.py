from maxcorr.constants.info import (  # noqa
    CSV_CHUNKSIZE,
    DEFAULT_ALPHA,
    DEFAULT_EPSILON,
    DEFAULT_REPS,
    DEFAULT_SIGMA_FLOOR_SQ,
    DEFAULT_TOP_CORRELATIONS,
    DEFAULT_VAR_FLOOR,
    MAXCORR_VERSION,
    MIN_SAMPLE_SIZE,
    N_JOBS,
    OFFSET_WARNING_RATIO,
    POWER_TABLE_COLUMNS,
    SCHEMA_VERSION,
)
from maxcorr.constants.typing import (  # noqa
    METHODS,
    MODEL_NAMES,
    OUTPUT_FORMATS,
    RANGE_POLICIES,
)
