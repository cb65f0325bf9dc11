"""Time-series preprocessing: ingestion, normalization, clustering,
principal components, and convex-hull generator pruning."""
from .bundle import (
    bundle_from_dict,
    bundle_to_dict,
    load_bundle,
    save_bundle,
    write_json_atomic,
)
from .cluster import ScenarioSet, kmeans_day_vectors, kmeans_scenarios
from .dataset import (
    DEMAND_MAX_KW,
    DEMAND_MIN_KW,
    QUANTITIES,
    GapError,
    RangeError,
    SchemaError,
    TimeSeriesDataset,
    ingest_csv,
    synth_generate,
)
from .hull import GeneratorSet, prune_generators
from .normalize import ConstantSeries, NormalizationModel, denormalize, znormalize
from .pca import (
    DimensionMismatch,
    PcaModel,
    explained_variance_report,
    jacobi_eigh,
    pca_fit,
    pca_project,
    pca_reconstruct,
)

__all__ = [
    "ConstantSeries",
    "DEMAND_MAX_KW",
    "DEMAND_MIN_KW",
    "DimensionMismatch",
    "GapError",
    "GeneratorSet",
    "NormalizationModel",
    "PcaModel",
    "QUANTITIES",
    "RangeError",
    "ScenarioSet",
    "SchemaError",
    "TimeSeriesDataset",
    "bundle_from_dict",
    "bundle_to_dict",
    "denormalize",
    "explained_variance_report",
    "ingest_csv",
    "jacobi_eigh",
    "kmeans_day_vectors",
    "kmeans_scenarios",
    "load_bundle",
    "pca_fit",
    "pca_project",
    "pca_reconstruct",
    "prune_generators",
    "save_bundle",
    "synth_generate",
    "write_json_atomic",
    "znormalize",
]
