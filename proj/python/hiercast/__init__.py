"""Hierarchical retail demand forecasting.

Series are scored for trend versus seasonality strength, modelled per
subgroup with Tweedie gradient boosting, and reconciled by allocating
trend-model totals proportionally to the boosted weights.
"""

from hiercast._core import (
    GbmModel,
    __version__,
    allocate,
    decompose,
    load_gbm,
    rmsse,
    run_cli,
    strength_scores,
    train_gbm,
    tweedie_grad_hess,
    tweedie_loss,
)

__all__ = [
    "GbmModel",
    "__version__",
    "allocate",
    "decompose",
    "load_gbm",
    "rmsse",
    "run_cli",
    "strength_scores",
    "train_gbm",
    "tweedie_grad_hess",
    "tweedie_loss",
]
