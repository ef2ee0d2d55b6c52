"""Order dimension at desk scale: exact dimension, realizer extension, separators."""

from .core import (
    ChainSet,
    LinearExtension,
    OnlineLinearizer,
    Poset,
    build_poset,
    chains_incomparable,
    down_set,
    extend_acyclic,
    incomparable_pairs,
    is_chain,
    linearize,
    online_linearize,
    up_set,
)
from .dimension import (
    DimensionResult,
    Realizer,
    dimension_exact,
    dimension_oracle,
    standard_realization,
    verify_realizer,
)
from .errors import OrderError

__version__ = "0.1.0"

__all__ = [
    "ChainSet",
    "DimensionResult",
    "LinearExtension",
    "OnlineLinearizer",
    "OrderError",
    "Poset",
    "Realizer",
    "build_poset",
    "chains_incomparable",
    "dimension_exact",
    "dimension_oracle",
    "down_set",
    "extend_acyclic",
    "incomparable_pairs",
    "is_chain",
    "linearize",
    "online_linearize",
    "standard_realization",
    "up_set",
    "verify_realizer",
]
