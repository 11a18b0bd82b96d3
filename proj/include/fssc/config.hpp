#pragma once

#include "fssc/pipeline.hpp"

#include <filesystem>
#include <string_view>

namespace fssc {

/// Overlays the keys of a JSON object onto `config`. Recognised keys mirror
/// the command-line flags: algorithm, tau, k, clusters, repeats, seed, input,
/// labels, format, pca_dim, normalize, zero_diagonal, l2_normalize, rank_eps,
/// kmeans_restarts, kmeans_max_iters, out, tau_grid, k_grid and a "synthetic"
/// object (ambient_dim, subspace_dim, num_subspaces, points_per_subspace,
/// noise_sigma, seed). Unknown keys are rejected.
void apply_json_config(std::string_view json_text, SweepConfig& config);

void load_json_config(const std::filesystem::path& path, SweepConfig& config);

}  // namespace fssc
