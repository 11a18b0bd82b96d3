#include "doctest.h"
#include "oracles.hpp"

#include "fssc/data.hpp"
#include "fssc/error.hpp"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

using namespace fssc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const char* root = std::getenv("FSSC_TEST_TMP");
  fs::path dir = root ? fs::path(root) : fs::temp_directory_path();
  dir /= "fssc_data_test";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_text(const std::string& name, const std::string& text) {
  const fs::path path = scratch(name);
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

std::string error_of(auto&& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("load_matrix csv") {
  const DataMatrix m = load_matrix(write_text("two.csv", "1,2\n3,4"), MatrixFormat::csv);
  Matrix expected(2, 2);
  expected << 1, 2, 3, 4;
  CHECK(m.values() == expected);

  const DataMatrix spaced =
      load_matrix(write_text("spaced.csv", " 1.5 , -2e-3\r\n+3,4\n\n"), MatrixFormat::csv);
  CHECK(spaced.values()(0, 1) == -2e-3);
  CHECK(spaced.values()(1, 0) == 3.0);

  SUBCASE("NaN is rejected with its location") {
    const std::string msg = error_of(
        [] { load_matrix(write_text("nan.csv", "1,2\n3,NaN\n"), MatrixFormat::csv); });
    CHECK(msg.find(":2:") != std::string::npos);
    CHECK(msg.find("field 2") != std::string::npos);
  }
  SUBCASE("ragged rows") {
    const std::string msg = error_of(
        [] { load_matrix(write_text("ragged.csv", "1,2,3\n4,5\n"), MatrixFormat::csv); });
    CHECK(msg.find(":2:") != std::string::npos);
  }
  SUBCASE("garbage and gaps") {
    CHECK_THROWS_AS(load_matrix(write_text("junk.csv", "1,x\n"), MatrixFormat::csv), InputError);
    CHECK_THROWS_AS(load_matrix(write_text("gap.csv", "1,2\n\n3,4\n"), MatrixFormat::csv),
                    InputError);
    CHECK_THROWS_AS(load_matrix(write_text("empty.csv", ""), MatrixFormat::csv), InputError);
    CHECK_THROWS_AS(load_matrix(scratch("missing.csv"), MatrixFormat::csv), InputError);
  }
}

TEST_CASE("binary matrix round trip is bit exact") {
  std::mt19937_64 rng(1);
  Matrix m = oracle::random_matrix(7, 5, rng);
  m(0, 0) = 1e-310;  // subnormal
  m(1, 1) = -0.0;
  const fs::path path = scratch("m.bin");
  save_matrix(m, path, MatrixFormat::binary);
  const Matrix back = load_matrix(path, MatrixFormat::binary).values();
  REQUIRE(back.rows() == 7);
  REQUIRE(back.cols() == 5);
  CHECK(std::memcmp(back.data(), m.data(), sizeof(double) * 35) == 0);
  CHECK(fs::file_size(path) == 4 + 4 + 4 + 35 * 8);

  // Header layout: magic then little-endian u32 rows and cols.
  std::ifstream in(path, std::ios::binary);
  std::array<unsigned char, 12> header{};
  in.read(reinterpret_cast<char*>(header.data()), 12);
  CHECK(std::string(header.begin(), header.begin() + 4) == "SGC1");
  CHECK(header[4] == 7);
  CHECK(header[8] == 5);

  SUBCASE("csv round trip preserves values") {
    const fs::path csv = scratch("m.csv");
    save_matrix(m, csv, MatrixFormat::csv);
    CHECK(load_matrix(csv, MatrixFormat::csv).values() == m);
  }
  SUBCASE("corrupt files") {
    CHECK_THROWS_AS(load_matrix(write_text("bad.bin", "XXXX"), MatrixFormat::binary),
                    InputError);
    std::string truncated(12 + 8, '\0');
    std::memcpy(truncated.data(), "SGC1", 4);
    truncated[4] = 2;
    truncated[8] = 2;
    const std::string msg = error_of(
        [&] { load_matrix(write_text("short.bin", truncated), MatrixFormat::binary); });
    CHECK(msg.find("offset 20") != std::string::npos);
  }
}

TEST_CASE("load_labels") {
  CHECK(load_labels(write_text("l1.txt", "0\n0\n1")).labels == std::vector{0, 0, 1});
  const GroundTruth sparse = load_labels(write_text("l2.txt", "2\n5\n"));
  CHECK(sparse.labels == std::vector{0, 1});
  CHECK(sparse.num_classes == 2);
  const std::string msg = error_of([] { load_labels(write_text("l3.txt", "0\nx\n")); });
  CHECK(msg.find(":2:") != std::string::npos);
  CHECK_THROWS_AS(load_labels(write_text("l4.txt", "x")), InputError);
  CHECK_THROWS_AS(load_labels(write_text("l5.txt", "1\n\n2\n")), InputError);
  CHECK_THROWS_AS(load_labels(write_text("l6.txt", "1.5\n")), InputError);

  const fs::path path = scratch("l7.txt");
  save_labels(std::vector{1, 0, 2}, path);
  CHECK(load_labels(path).labels == std::vector{1, 0, 2});
}

TEST_CASE("generate_synthetic") {
  SyntheticSpec spec;
  spec.ambient_dim = 30;
  spec.subspace_dim = 3;
  spec.num_subspaces = 4;
  spec.points_per_subspace = 12;
  spec.seed = 77;

  SUBCASE("noiseless blocks have rank d and unit columns") {
    const Dataset d = generate_synthetic(spec);
    CHECK(d.matrix.samples() == 48);
    for (Index s = 0; s < 4; ++s) {
      const Matrix block = d.matrix.values().middleCols(s * 12, 12);
      Eigen::JacobiSVD<Matrix> svd(block);
      const Vector sv = svd.singularValues();
      CHECK(sv(2) > 1e-6);
      CHECK(sv(3) <= 1e-12 * sv(0));
      CHECK((block.colwise().norm().array() - 1.0).abs().maxCoeff() <= 1e-12);
    }
    CHECK(d.truth.num_classes == 4);
    CHECK(d.truth.labels[13] == 1);
  }
  SUBCASE("principal angles between subspaces are large") {
    const Dataset d = generate_synthetic(spec);
    std::vector<Matrix> bases;
    for (Index s = 0; s < 4; ++s) {
      Eigen::JacobiSVD<Matrix> svd(d.matrix.values().middleCols(s * 12, 12), Eigen::ComputeThinU);
      bases.push_back(svd.matrixU().leftCols(3));
    }
    const double min_angle = 10.0 * M_PI / 180.0;
    for (std::size_t a = 0; a < bases.size(); ++a) {
      for (std::size_t b = a + 1; b < bases.size(); ++b) {
        // Largest cosine = cos of the smallest principal angle.
        const double cos_min = Eigen::JacobiSVD<Matrix>(bases[a].transpose() * bases[b])
                                   .singularValues()(0);
        CHECK(std::acos(std::min(1.0, cos_min)) >= min_angle);
      }
    }
  }
  SUBCASE("one subspace means one label") {
    spec.num_subspaces = 1;
    const Dataset d = generate_synthetic(spec);
    CHECK(std::all_of(d.truth.labels.begin(), d.truth.labels.end(), [](int l) { return l == 0; }));
  }
  SUBCASE("same seed, same bits; new seed, new data") {
    spec.noise_sigma = 0.05;
    const Dataset a = generate_synthetic(spec);
    const Dataset b = generate_synthetic(spec);
    CHECK(std::memcmp(a.matrix.values().data(), b.matrix.values().data(),
                      sizeof(double) * static_cast<std::size_t>(a.matrix.values().size())) == 0);
    CHECK(a.truth.labels == b.truth.labels);
    spec.seed = 78;
    CHECK(generate_synthetic(spec).matrix.values() != a.matrix.values());
  }
  SUBCASE("invalid specs") {
    SyntheticSpec bad = spec;
    bad.subspace_dim = 30;
    CHECK_THROWS_AS(generate_synthetic(bad), ParameterError);
    bad = spec;
    bad.num_subspaces = 11;
    CHECK_THROWS_AS(generate_synthetic(bad), ParameterError);
    bad = spec;
    bad.points_per_subspace = 2;
    CHECK_THROWS_AS(generate_synthetic(bad), ParameterError);
    bad = spec;
    bad.noise_sigma = -1;
    CHECK_THROWS_AS(generate_synthetic(bad), ParameterError);
  }
}

TEST_CASE("pca") {
  std::mt19937_64 rng(5);
  SUBCASE("full dimension is lossless") {
    const Matrix y = oracle::random_matrix(6, 15, rng);
    const PcaResult p = pca(DataMatrix(y), 6);
    const Matrix rebuilt = (p.components * p.projected).colwise() + p.mean;
    CHECK((rebuilt - y).cwiseAbs().maxCoeff() <= 1e-8);
  }
  SUBCASE("rank-one data keeps its variance in one component") {
    const Vector dir = oracle::random_matrix(8, 1, rng);
    const Matrix coeff = oracle::random_matrix(1, 20, rng);
    const Matrix y = dir * coeff;
    const PcaResult p = pca(DataMatrix(y), 1);
    const Matrix centered = y.colwise() - y.rowwise().mean();
    CHECK(p.projected.squaredNorm() >= 0.99999 * centered.squaredNorm());
  }
  SUBCASE("projected covariance is diagonal") {
    const Matrix y = oracle::random_matrix(10, 40, rng);
    const Matrix z = pca_project(DataMatrix(y), 4).values();
    const Matrix zc = z.colwise() - z.rowwise().mean();
    const Matrix cov = zc * zc.transpose() / 39.0;
    Matrix off = cov;
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() <= 1e-8);
    for (Index i = 1; i < 4; ++i) CHECK(cov(i, i) <= cov(i - 1, i - 1));
  }
  SUBCASE("dimension range") {
    const DataMatrix y(oracle::random_matrix(3, 5, rng));
    CHECK_THROWS_AS(pca(y, 0), ParameterError);
    CHECK_THROWS_AS(pca(y, 4), ParameterError);
  }
}

TEST_CASE("normalize_columns") {
  Matrix y(2, 3);
  y << 3, 0, 1, 4, 0, 0;
  const Matrix n = normalize_columns(DataMatrix(y)).values();
  CHECK(n(0, 0) == doctest::Approx(0.6));
  CHECK(n(1, 0) == doctest::Approx(0.8));
  CHECK(n.col(1).isZero(0.0));
  CHECK(n.col(2) == y.col(2));
}

TEST_CASE("format names") {
  CHECK(parse_matrix_format("csv") == MatrixFormat::csv);
  CHECK(parse_matrix_format("binary") == MatrixFormat::binary);
  CHECK_THROWS_AS(parse_matrix_format("hdf5"), ParameterError);
  CHECK(guess_matrix_format("x.bin") == MatrixFormat::binary);
  CHECK(guess_matrix_format("x.csv") == MatrixFormat::csv);
}
