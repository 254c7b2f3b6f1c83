"""Relative-to-maximum inequality index (IDRM) and reference inequality measures."""

from .analytics import (
    LorenzCurve,
    PalmaDecomposition,
    Summary,
    idrm_via_palma_form,
    lorenz,
    palma_bounds,
    tolerance_tau,
    welfare,
    x_mide,
)
from .decomposition import GroupedPopulation, decompose, hierarchical_decompose
from .distribution import WeightedDistribution, quantile_group, validate
from .indices import (
    IndexResult,
    atkinson,
    evaluate,
    ge,
    gini,
    idrm,
    mld,
    palma_decile_ratio,
    palma_share_ratio,
    theil,
)
from .resampling import bias_sweep, bootstrap

__version__ = "0.1.0"
