"""Closed-form self-representation subspace clustering (FSSC, LRSC, L2-graph)."""

from ._fssc import (
    InputError,
    NumericalError,
    ParameterError,
    StageError,
    build_affinity,
    clustering_accuracy,
    cluster,
    fssc_coefficients,
    fssc_shrinkage,
    generate_synthetic,
    kmeans,
    l2graph_coefficients,
    load_labels,
    load_matrix,
    lrsc_coefficients,
    lrsc_shrinkage,
    nmi,
    normalize_columns,
    normalized_laplacian,
    pca_project,
    save_labels,
    save_matrix,
    sparsify_topk,
    spectral_cluster,
    spectral_embed,
    thin_svd,
)

__all__ = [
    "InputError",
    "NumericalError",
    "ParameterError",
    "StageError",
    "build_affinity",
    "clustering_accuracy",
    "cluster",
    "fssc_coefficients",
    "fssc_shrinkage",
    "generate_synthetic",
    "kmeans",
    "l2graph_coefficients",
    "load_labels",
    "load_matrix",
    "lrsc_coefficients",
    "lrsc_shrinkage",
    "nmi",
    "normalize_columns",
    "normalized_laplacian",
    "pca_project",
    "save_labels",
    "save_matrix",
    "sparsify_topk",
    "spectral_cluster",
    "spectral_embed",
    "thin_svd",
]
