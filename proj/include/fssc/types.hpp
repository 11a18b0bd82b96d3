#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace fssc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Data matrix with samples stored as columns (features x samples).
///
/// Holds at least two samples and only finite entries; both are checked on
/// construction.
class DataMatrix {
 public:
  explicit DataMatrix(Matrix values);

  const Matrix& values() const noexcept { return values_; }
  Index features() const noexcept { return values_.rows(); }
  Index samples() const noexcept { return values_.cols(); }

 private:
  Matrix values_;
};

/// Self-representation matrix; column i holds the weights used to express
/// sample i through the other samples.
struct CoefficientMatrix {
  Matrix values;
  bool symmetric = false;

  Index size() const noexcept { return values.cols(); }
};

/// Thin SVD truncated to the effective rank.
struct SvdFactors {
  Matrix left_vectors;    // m x r
  Vector singular_values; // r, descending
  Matrix right_vectors;   // n x r
  double rank_tolerance = 0.0;

  Index rank() const noexcept { return singular_values.size(); }
};

}  // namespace fssc
