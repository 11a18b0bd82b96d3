#include "fssc/error.hpp"
#include "fssc/pipeline.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

fssc::MatrixFormat format_for(const std::filesystem::path& path, const std::string& format) {
  return format.empty() ? fssc::guess_matrix_format(path) : fssc::parse_matrix_format(format);
}

fssc::FsscRoute parse_route(const std::string& route) {
  if (route == "auto") return fssc::FsscRoute::automatic;
  if (route == "spectral") return fssc::FsscRoute::spectral;
  if (route == "ridge") return fssc::FsscRoute::ridge;
  throw fssc::ParameterError("route must be 'auto', 'spectral' or 'ridge'");
}

fssc::SpectralParams spectral_params(fssc::Index clusters, int restarts, int max_iters,
                                     std::uint64_t seed) {
  fssc::SpectralParams params;
  params.num_clusters = clusters;
  params.kmeans_restarts = restarts;
  params.kmeans_max_iters = max_iters;
  params.seed = seed;
  return params;
}

}  // namespace

PYBIND11_MODULE(_fssc, m) {
  m.doc() = "Closed-form self-representation subspace clustering";

  auto base = py::register_exception<fssc::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<fssc::InputError>(m, "InputError", base.ptr());
  py::register_exception<fssc::ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<fssc::NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<fssc::StageError>(m, "StageError", base.ptr());

  m.def(
      "thin_svd",
      [](const fssc::Matrix& y, double rank_eps) {
        const fssc::SvdFactors f = fssc::thin_svd(fssc::DataMatrix(y), rank_eps);
        return py::make_tuple(f.left_vectors, f.singular_values, f.right_vectors);
      },
      "y"_a, "rank_eps"_a = 1e-12, "Truncated thin SVD; returns (U, singular_values, V).");

  m.def("fssc_shrinkage", &fssc::fssc_shrinkage, "singular_value"_a, "tau"_a);
  m.def("lrsc_shrinkage", &fssc::lrsc_shrinkage, "singular_value"_a, "tau"_a);

  m.def(
      "fssc_coefficients",
      [](const fssc::Matrix& y, double tau, double rank_eps, const std::string& route) {
        return fssc::fssc_coefficients(fssc::DataMatrix(y), {tau, rank_eps}, parse_route(route))
            .values;
      },
      "y"_a, "tau"_a, "rank_eps"_a = 1e-12, "route"_a = "auto");

  m.def(
      "lrsc_coefficients",
      [](const fssc::Matrix& y, double tau, double rank_eps) {
        return fssc::lrsc_coefficients(fssc::DataMatrix(y), {tau, rank_eps}).values;
      },
      "y"_a, "tau"_a, "rank_eps"_a = 1e-12);

  m.def(
      "l2graph_coefficients",
      [](const fssc::Matrix& y, double tau, bool normalize) {
        return fssc::l2graph_coefficients(fssc::DataMatrix(y), {tau, 1e-12}, normalize).values;
      },
      "y"_a, "tau"_a, "normalize"_a = true);

  m.def(
      "sparsify_topk",
      [](const fssc::Matrix& c, fssc::Index k, bool zero_diagonal) {
        return fssc::sparsify_topk({c, false}, {k, zero_diagonal}).values;
      },
      "c"_a, "k"_a, "zero_diagonal"_a = true);

  m.def(
      "build_affinity",
      [](const fssc::Matrix& c_hat) {
        fssc::AffinityGraph g = fssc::build_affinity({c_hat, false});
        return py::make_tuple(std::move(g.values), g.isolated_nodes);
      },
      "c_hat"_a, "Returns (W, isolated_nodes).");

  m.def(
      "normalized_laplacian",
      [](const fssc::Matrix& w) {
        return fssc::normalized_laplacian(fssc::AffinityGraph::from_matrix(w));
      },
      "w"_a);

  m.def(
      "spectral_embed",
      [](const fssc::Matrix& w, fssc::Index u) {
        return fssc::spectral_embed(fssc::AffinityGraph::from_matrix(w), u);
      },
      "w"_a, "u"_a);

  m.def(
      "kmeans",
      [](const fssc::Matrix& points, fssc::Index clusters, int restarts, int max_iters,
         std::uint64_t seed) {
        return fssc::kmeans(points, spectral_params(clusters, restarts, max_iters, seed)).labels;
      },
      "points"_a, "clusters"_a, "restarts"_a = 20, "max_iters"_a = 300, "seed"_a = 0);

  m.def(
      "spectral_cluster",
      [](const fssc::Matrix& w, fssc::Index clusters, int restarts, int max_iters,
         std::uint64_t seed) {
        return fssc::spectral_cluster(fssc::AffinityGraph::from_matrix(w),
                                      spectral_params(clusters, restarts, max_iters, seed))
            .labels;
      },
      "w"_a, "clusters"_a, "restarts"_a = 20, "max_iters"_a = 300, "seed"_a = 0);

  m.def(
      "cluster",
      [](const fssc::Matrix& y, fssc::Index clusters, const std::string& algorithm, double tau,
         fssc::Index k, bool zero_diagonal, std::uint64_t seed) {
        fssc::RunConfig config;
        config.algorithm = fssc::parse_algorithm(algorithm);
        config.tau = tau;
        config.k = k;
        config.zero_diagonal = zero_diagonal;
        return fssc::cluster_data(fssc::DataMatrix(y), config, clusters, seed).assignment.labels;
      },
      "y"_a, "clusters"_a, "algorithm"_a = "fssc", "tau"_a = 10.0, "k"_a = 5,
      "zero_diagonal"_a = true, "seed"_a = 0,
      "Full pipeline: coefficients, top-k graph, spectral clustering. Returns labels.");

  m.def(
      "clustering_accuracy",
      [](const std::vector<int>& pred, const std::vector<int>& truth) {
        return fssc::clustering_accuracy(pred, truth);
      },
      "predicted"_a, "truth"_a);
  m.def(
      "nmi",
      [](const std::vector<int>& pred, const std::vector<int>& truth) {
        return fssc::nmi(pred, truth);
      },
      "predicted"_a, "truth"_a);

  m.def(
      "generate_synthetic",
      [](fssc::Index ambient_dim, fssc::Index subspace_dim, fssc::Index num_subspaces,
         fssc::Index points_per_subspace, double noise_sigma, std::uint64_t seed) {
        fssc::Dataset d = fssc::generate_synthetic(
            {ambient_dim, subspace_dim, num_subspaces, points_per_subspace, noise_sigma, seed});
        return py::make_tuple(d.matrix.values(), d.truth.labels);
      },
      "ambient_dim"_a, "subspace_dim"_a, "num_subspaces"_a, "points_per_subspace"_a,
      "noise_sigma"_a = 0.0, "seed"_a = 0, "Returns (Y, labels) with samples as columns.");

  m.def(
      "pca_project",
      [](const fssc::Matrix& y, fssc::Index dim) {
        return fssc::pca_project(fssc::DataMatrix(y), dim).values();
      },
      "y"_a, "dim"_a);
  m.def(
      "normalize_columns",
      [](const fssc::Matrix& y) { return fssc::normalize_columns(fssc::DataMatrix(y)).values(); },
      "y"_a);

  m.def(
      "load_matrix",
      [](const std::filesystem::path& path, const std::string& format) {
        return fssc::load_matrix(path, format_for(path, format)).values();
      },
      "path"_a, "format"_a = "");
  m.def(
      "save_matrix",
      [](const fssc::Matrix& y, const std::filesystem::path& path, const std::string& format) {
        fssc::save_matrix(y, path, format_for(path, format));
      },
      "y"_a, "path"_a, "format"_a = "");
  m.def(
      "load_labels",
      [](const std::filesystem::path& path) { return fssc::load_labels(path).labels; }, "path"_a);
  m.def(
      "save_labels",
      [](const std::vector<int>& labels, const std::filesystem::path& path) {
        fssc::save_labels(labels, path);
      },
      "labels"_a, "path"_a);
}
