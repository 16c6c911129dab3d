"""Gap-based cluster detection.

Thin Python layer over the compiled core: spacing statistics, the
split-at-the-largest-standardized-component decomposition, its
extreme-value calibration, and the deterministic replication engine.
"""

from ._core import (
    ClusterSplit,
    ComponentSummary,
    DataError,
    DecompositionComponent,
    DegenerateSampleError,
    DetectionOutput,
    GumbelTest,
    InputDigest,
    IoError,
    LemmaCheckCase,
    LemmaCheckReport,
    MonteCarloReport,
    ProjectionInfo,
    RandomStream,
    Sample,
    SimConfig,
    SpacingSet,
    TruncatedNormalMoments,
    VarianceDecomposition,
    cluster_index,
    cluster_statistic,
    cluster_test,
    decompose,
    detect,
    empirical_cdf,
    gumbel_cdf,
    gumbel_quantile,
    half_limit_cdf,
    kth_max_spacing,
    ks_critical_value,
    lemma31_bound,
    load_matrix,
    load_series,
    max_spacing_scaling,
    mills_ratio,
    parse_grid,
    sample_std_normal,
    segment_means,
    simulate_cluster_statistic,
    simulate_half_statistic,
    spacings,
    std_normal_cdf,
    std_normal_pdf,
    std_normal_quantile,
    std_normal_upper_tail,
    substream,
    truncated_moments,
    verify_lemma31,
    verify_uniform_ratio,
)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
