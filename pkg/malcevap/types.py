from enum import Enum, IntEnum
from typing import Literal, TypeAlias

import numpy as np


class VerbosityLevel(IntEnum):
    """The different verbosity levels"""

    SILENT = 0
    NORMAL = 1
    VERBOSE = 2
    DEAFENING = 3


class FlowConvention(str, Enum):
    """Which side the one-parameter subgroup translates from.

    `LEFT` is the flow p ↦ exp(tx)·p of left translations, `RIGHT` is p ↦ p·exp(tx).
    """

    LEFT = "left"
    RIGHT = "right"


class ActionConvention(str, Enum):
    """Vector-field and bracket conventions for the action on the first eigenspace.

    `STANDARD_RIGHT` pairs right translations with the full commutator xy - yx, so that
    associative calibrations represent honestly. `PAPER_LEFT` pairs left translations with the
    ½-commutator bracket as written for Im(O).
    """

    STANDARD_RIGHT = "standard-right"
    PAPER_LEFT = "paper-left"


OutputFormat: TypeAlias = Literal["json", "csv"]

# The translation flows plus the inner automorphism p ↦ exp(tx/2)·p·exp(−tx/2)
FlowKind: TypeAlias = Literal["left", "right", "conjugation"]

# Elements of an algebra are coefficient arrays over its basis, operators are dense matrices.
Vector: TypeAlias = np.ndarray
LinOp: TypeAlias = np.ndarray
