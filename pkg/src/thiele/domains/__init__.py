"""Domain structure: domination, consecutive ones, LC witnesses, interval and
tree models, L/R labelings and worked fixtures."""

from thiele.domains.consecutive import consecutive_ones_order, has_consecutive_ones
from thiele.domains.dominance import find_dominations, is_domination_free, remove_dominated_columns
from thiele.domains.fixtures import fixtures
from thiele.domains.labeling import LrLabeling, check_lr_labeling, lr_labeling_feasible, refute_vci_small
from thiele.domains.lc import check_lc_order, find_lc_order_bruteforce, lc_order_to_vcci_intervals
from thiele.domains.models import (
    CONTAINMENT,
    INTERSECTION,
    IntervalModel,
    LinearOrderWitness,
    TreeModel,
    intervals_to_matrix,
    tree_model_to_matrix,
    vcci_intervals_to_lc_order,
    vci_to_lc_order,
)

__all__ = [
    "CONTAINMENT",
    "INTERSECTION",
    "IntervalModel",
    "LinearOrderWitness",
    "LrLabeling",
    "TreeModel",
    "check_lc_order",
    "check_lr_labeling",
    "consecutive_ones_order",
    "find_dominations",
    "find_lc_order_bruteforce",
    "fixtures",
    "has_consecutive_ones",
    "intervals_to_matrix",
    "is_domination_free",
    "lc_order_to_vcci_intervals",
    "lr_labeling_feasible",
    "refute_vci_small",
    "remove_dominated_columns",
    "tree_model_to_matrix",
    "vcci_intervals_to_lc_order",
    "vci_to_lc_order",
]
