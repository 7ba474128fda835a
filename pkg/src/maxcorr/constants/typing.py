from typing import Literal


MODEL_NAMES = Literal[
    "N.IE",
    "A1.IE",
    "A2.IE",
    "N.DE",
    "A1.DE",
    "A2.DE",
    "A3.IE",
    "A4.IE",
]

METHODS = Literal[
    "stabilized_one_step",
    "bonferroni_t",
]

OUTPUT_FORMATS = Literal[
    "json",
    "csv",
]

RANGE_POLICIES = Literal[
    "off",
    "warn",
    "error",
]
