#include "fssc/data.hpp"

#include "fssc/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

namespace fssc {

DataMatrix::DataMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() < 1) {
    throw InputError("data matrix needs at least one feature row");
  }
  if (values_.cols() < 2) {
    throw InputError("data matrix needs at least two samples, got " +
                     std::to_string(values_.cols()));
  }
  for (Index j = 0; j < values_.cols(); ++j) {
    for (Index i = 0; i < values_.rows(); ++i) {
      if (!std::isfinite(values_(i, j))) {
        throw InputError("non-finite entry at row " + std::to_string(i) + ", column " +
                         std::to_string(j));
      }
    }
  }
}

void SyntheticSpec::validate() const {
  if (ambient_dim < 1 || subspace_dim < 1 || num_subspaces < 1 || points_per_subspace < 1) {
    throw ParameterError("synthetic dimensions and counts must be positive");
  }
  if (subspace_dim >= ambient_dim) {
    throw ParameterError("subspace dimension must be below the ambient dimension");
  }
  if (subspace_dim * num_subspaces > ambient_dim) {
    throw ParameterError("independent subspaces need num_subspaces * subspace_dim <= ambient_dim");
  }
  if (points_per_subspace < subspace_dim) {
    throw ParameterError("each subspace needs at least subspace_dim points");
  }
  if (num_subspaces * points_per_subspace < 2) {
    throw ParameterError("a dataset needs at least two samples");
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw ParameterError("noise_sigma must be finite and nonnegative");
  }
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto gaussian = [&](Index rows, Index cols) {
    Matrix g(rows, cols);
    for (Index j = 0; j < cols; ++j) {
      for (Index i = 0; i < rows; ++i) g(i, j) = normal(rng);
    }
    return g;
  };

  const Index m = spec.ambient_dim;
  const Index d = spec.subspace_dim;
  const Index p = spec.points_per_subspace;
  const Index n = spec.num_subspaces * p;

  Eigen::HouseholderQR<Matrix> qr(gaussian(m, m));
  const Matrix rotation = qr.householderQ() * Matrix::Identity(m, m);

  Matrix y(m, n);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (Index s = 0; s < spec.num_subspaces; ++s) {
    const auto basis = rotation.middleCols(s * d, d);
    for (Index j = 0; j < p; ++j) {
      const Index col = s * p + j;
      Vector x = basis * gaussian(d, 1);
      const double norm = x.norm();
      if (norm > 0.0) x /= norm;
      y.col(col) = x;
      labels[static_cast<std::size_t>(col)] = static_cast<int>(s);
    }
  }
  if (spec.noise_sigma > 0.0) y += spec.noise_sigma * gaussian(m, n);

  std::ostringstream name;
  name << "synthetic-m" << m << "-d" << d << "-u" << spec.num_subspaces << "-p" << p
       << "-s" << spec.seed;
  return Dataset{DataMatrix(std::move(y)), GroundTruth::from_labels(labels), name.str()};
}

MatrixFormat parse_matrix_format(std::string_view name) {
  if (name == "csv") return MatrixFormat::csv;
  if (name == "binary" || name == "bin") return MatrixFormat::binary;
  throw ParameterError("unknown matrix format '" + std::string(name) +
                       "' (expected csv or binary)");
}

MatrixFormat guess_matrix_format(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  return ext == ".bin" || ext == ".sgc" ? MatrixFormat::binary : MatrixFormat::csv;
}

namespace {

constexpr std::array<char, 4> kMagic = {'S', 'G', 'C', '1'};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

template <typename T>
T to_little_endian(T value) {
  if constexpr (std::endian::native == std::endian::big) {
    std::array<char, sizeof(T)> bytes;
    std::memcpy(bytes.data(), &value, sizeof(T));
    std::reverse(bytes.begin(), bytes.end());
    std::memcpy(&value, bytes.data(), sizeof(T));
  }
  return value;
}

template <typename T>
void write_le(std::ostream& out, T value) {
  value = to_little_endian(value);
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_le(std::istream& in, const std::filesystem::path& path, const char* what) {
  const auto offset = static_cast<long long>(in.tellg());
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    throw InputError(path.string() + ": truncated file reading " + what + " at byte offset " +
                     std::to_string(offset));
  }
  return to_little_endian(value);
}

DataMatrix load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t blank_run = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view content = trim(line);
    if (content.empty()) {
      ++blank_run;
      continue;
    }
    if (blank_run > 0 && !rows.empty()) {
      throw InputError(where(path, line_no - 1) + "blank line inside matrix data");
    }
    blank_run = 0;

    std::vector<double> row;
    std::size_t field = 0;
    std::size_t start = 0;
    while (true) {
      ++field;
      const std::size_t comma = content.find(',', start);
      const std::string_view token =
          trim(content.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                     : comma - start));
      double value = 0.0;
      const char* begin = token.data();
      const char* end = token.data() + token.size();
      if (!token.empty() && *begin == '+') ++begin;
      const auto [ptr, ec] = std::from_chars(begin, end, value);
      if (token.empty() || ec != std::errc() || ptr != end) {
        throw InputError(where(path, line_no) + "field " + std::to_string(field) +
                         ": cannot parse '" + std::string(token) + "' as a number");
      }
      if (!std::isfinite(value)) {
        throw InputError(where(path, line_no) + "field " + std::to_string(field) +
                         ": non-finite value '" + std::string(token) + "'");
      }
      row.push_back(value);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InputError(where(path, line_no) + "expected " +
                       std::to_string(rows.front().size()) + " fields, found " +
                       std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(path.string() + ": no matrix data");

  Matrix values(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return DataMatrix(std::move(values));
}

DataMatrix load_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());

  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw InputError(path.string() + ": bad magic at byte offset 0 (expected SGC1)");
  }
  const auto rows = read_le<std::uint32_t>(in, path, "row count");
  const auto cols = read_le<std::uint32_t>(in, path, "column count");
  Matrix values(static_cast<Index>(rows), static_cast<Index>(cols));
  for (Index j = 0; j < values.cols(); ++j) {
    for (Index i = 0; i < values.rows(); ++i) {
      const auto offset = static_cast<long long>(in.tellg());
      const double v = read_le<double>(in, path, "matrix entry");
      if (!std::isfinite(v)) {
        throw InputError(path.string() + ": non-finite value at byte offset " +
                         std::to_string(offset) + " (row " + std::to_string(i) + ", column " +
                         std::to_string(j) + ")");
      }
      values(i, j) = v;
    }
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw InputError(path.string() + ": trailing bytes after " + std::to_string(rows) + "x" +
                     std::to_string(cols) + " matrix");
  }
  return DataMatrix(std::move(values));
}

}  // namespace

DataMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format) {
  return format == MatrixFormat::csv ? load_csv(path) : load_binary(path);
}

void save_matrix(const Matrix& values, const std::filesystem::path& path, MatrixFormat format) {
  if (format == MatrixFormat::csv) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    std::array<char, 32> buf{};
    for (Index i = 0; i < values.rows(); ++i) {
      for (Index j = 0; j < values.cols(); ++j) {
        if (j > 0) out << ',';
        // Shortest round-trip representation.
        const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), values(i, j));
        out.write(buf.data(), ptr - buf.data());
      }
      out << '\n';
    }
    if (!out) throw InputError("failed writing " + path.string());
    return;
  }

  if (values.rows() > UINT32_MAX || values.cols() > UINT32_MAX) {
    throw InputError("matrix too large for the binary format");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(kMagic.data(), kMagic.size());
  write_le(out, static_cast<std::uint32_t>(values.rows()));
  write_le(out, static_cast<std::uint32_t>(values.cols()));
  for (Index j = 0; j < values.cols(); ++j) {
    for (Index i = 0; i < values.rows(); ++i) write_le(out, values(i, j));
  }
  if (!out) throw InputError("failed writing " + path.string());
}

GroundTruth load_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<int> raw;
  std::string line;
  std::size_t line_no = 0;
  std::size_t blank_run = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view token = trim(line);
    if (token.empty()) {
      ++blank_run;
      continue;
    }
    if (blank_run > 0 && !raw.empty()) {
      throw InputError(where(path, line_no - 1) + "blank line between labels");
    }
    blank_run = 0;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw InputError(where(path, line_no) + "cannot parse '" + std::string(token) +
                       "' as an integer label");
    }
    if (value < 0) {
      throw InputError(where(path, line_no) + "negative label " + std::to_string(value));
    }
    raw.push_back(value);
  }
  if (raw.empty()) throw InputError(path.string() + ": no labels");
  return GroundTruth::from_labels(raw);
}

void save_labels(std::span<const int> labels, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  for (int label : labels) out << label << '\n';
  if (!out) throw InputError("failed writing " + path.string());
}

PcaResult pca(const DataMatrix& y, Index dim) {
  const Index limit = std::min(y.features(), y.samples());
  if (dim < 1 || dim > limit) {
    throw ParameterError("PCA dimension must lie in [1, " + std::to_string(limit) + "], got " +
                         std::to_string(dim));
  }
  PcaResult out;
  out.mean = y.values().rowwise().mean();
  const Matrix centered = y.values().colwise() - out.mean;
  Eigen::BDCSVD<Matrix> svd(centered, Eigen::ComputeThinU);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD did not converge in PCA");

  out.components = svd.matrixU().leftCols(dim);
  // Fix the sign of each direction: largest-magnitude entry positive.
  for (Index c = 0; c < dim; ++c) {
    Index arg = 0;
    out.components.col(c).cwiseAbs().maxCoeff(&arg);
    if (out.components(arg, c) < 0.0) out.components.col(c) *= -1.0;
  }
  out.projected = out.components.transpose() * centered;
  return out;
}

DataMatrix pca_project(const DataMatrix& y, Index dim) {
  return DataMatrix(pca(y, dim).projected);
}

DataMatrix normalize_columns(const DataMatrix& y) {
  Matrix values = y.values();
  for (Index j = 0; j < values.cols(); ++j) {
    const double norm = values.col(j).norm();
    if (norm > 0.0) values.col(j) /= norm;
  }
  return DataMatrix(std::move(values));
}

}  // namespace fssc
