import os


MAXCORR_VERSION = "0.1.0"
SCHEMA_VERSION = "screen-result/1"

DEFAULT_ALPHA = 0.05
DEFAULT_EPSILON = 0.5
DEFAULT_SIGMA_FLOOR_SQ = 1e-4
DEFAULT_VAR_FLOOR = 1e-12
DEFAULT_REPS = 500
DEFAULT_TOP_CORRELATIONS = 10
MIN_SAMPLE_SIZE = 4
# Columns whose mean is further than this many standard deviations from zero
# lose precision in the raw-moment gradient variance.
OFFSET_WARNING_RATIO = 100.0

# Rows held in memory at once while reading CSV input.
CSV_CHUNKSIZE = int(os.environ.get("MAXCORR_CSV_CHUNKSIZE", 1024))
# Worker processes for Monte Carlo replications.
N_JOBS = int(os.environ.get("MAXCORR_N_JOBS", 1))

POWER_TABLE_COLUMNS = (
    "model",
    "n",
    "p",
    "rho",
    "method",
    "reps",
    "rejections",
    "power",
    "mc_stderr",
)
