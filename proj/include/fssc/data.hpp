#pragma once

#include "fssc/metrics.hpp"
#include "fssc/types.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace fssc {

/// Union of independent linear subspaces.
struct SyntheticSpec {
  Index ambient_dim = 50;
  Index subspace_dim = 4;
  Index num_subspaces = 5;
  Index points_per_subspace = 40;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Dataset {
  DataMatrix matrix;
  GroundTruth truth;
  std::string name;
};

/// Draws a random rotation of the ambient space and gives subspace j the
/// rotated coordinate block [j*d, (j+1)*d). Samples are unit-norm random
/// combinations of the basis plus isotropic Gaussian noise, grouped by
/// subspace.
Dataset generate_synthetic(const SyntheticSpec& spec);

enum class MatrixFormat { csv, binary };

MatrixFormat parse_matrix_format(std::string_view name);

/// Picks binary for ".bin"/".sgc" paths and CSV otherwise.
MatrixFormat guess_matrix_format(const std::filesystem::path& path);

/// CSV: one line per feature row, comma separated, samples as columns.
/// Binary: "SGC1", u32 rows, u32 cols, then rows*cols little-endian float64
/// values in column-major order.
DataMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format);
void save_matrix(const Matrix& values, const std::filesystem::path& path, MatrixFormat format);

/// One integer per line; labels are renumbered densely.
GroundTruth load_labels(const std::filesystem::path& path);
void save_labels(std::span<const int> labels, const std::filesystem::path& path);

struct PcaResult {
  Matrix components;  // m x dim, orthonormal columns
  Vector mean;        // m
  Matrix projected;   // dim x n
};

/// Principal components of the mean-centered columns of Y.
PcaResult pca(const DataMatrix& y, Index dim);

/// Coordinates of the centered samples on the top `dim` principal directions.
DataMatrix pca_project(const DataMatrix& y, Index dim);

/// Scales each nonzero column to unit Euclidean norm.
DataMatrix normalize_columns(const DataMatrix& y);

}  // namespace fssc
