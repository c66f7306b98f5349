"""Colored permutation groups S_{n,r}: statistics, conjugacy classes, ColoredDescents and moments."""

__version__ = "0.1.0"

from .conjugacy import RPartition, class_size, cycle_type, enumerate_class, r_partitions
from .enumeration import Domain, InfeasibleError, histogram, histograms
from .moments import closed_form_moment, expect_X_product_group, expect_XY_product, gf_distribution
from .perm import (
    ADIN_ROICHMAN_ORDER,
    DESCENT_ORDER,
    ColoredPermutation,
    Letter,
    ParameterError,
    compose,
    inverse,
    parse_element,
    to_cycles,
)
from .stats import Statistic, des, fmaj, maj

__all__ = [
    "__version__",
    "ADIN_ROICHMAN_ORDER",
    "DESCENT_ORDER",
    "ColoredPermutation",
    "Domain",
    "InfeasibleError",
    "Letter",
    "ParameterError",
    "RPartition",
    "Statistic",
    "class_size",
    "closed_form_moment",
    "compose",
    "cycle_type",
    "des",
    "enumerate_class",
    "expect_XY_product",
    "expect_X_product_group",
    "fmaj",
    "gf_distribution",
    "histogram",
    "histograms",
    "inverse",
    "maj",
    "parse_element",
    "r_partitions",
    "to_cycles",
]
