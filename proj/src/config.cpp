#include "fssc/config.hpp"

#include "fssc/error.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace fssc {

namespace {

using json = nlohmann::json;

void apply_synthetic(const json& obj, SyntheticSpec& spec) {
  if (!obj.is_object()) throw InputError("config: 'synthetic' must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (key == "ambient_dim") spec.ambient_dim = value.get<Index>();
    else if (key == "subspace_dim") spec.subspace_dim = value.get<Index>();
    else if (key == "num_subspaces") spec.num_subspaces = value.get<Index>();
    else if (key == "points_per_subspace") spec.points_per_subspace = value.get<Index>();
    else if (key == "noise_sigma") spec.noise_sigma = value.get<double>();
    else if (key == "seed") spec.seed = value.get<std::uint64_t>();
    else throw InputError("config: unknown key 'synthetic." + key + "'");
  }
}

}  // namespace

void apply_json_config(std::string_view json_text, SweepConfig& config) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  if (!root.is_object()) throw InputError("config: top level must be an object");

  RunConfig& run = config.base;
  try {
    for (const auto& [key, value] : root.items()) {
      if (key == "algorithm") run.algorithm = parse_algorithm(value.get<std::string>());
      else if (key == "tau") run.tau = value.get<double>();
      else if (key == "k") run.k = value.get<Index>();
      else if (key == "clusters") run.clusters = value.get<Index>();
      else if (key == "repeats") run.repeats = value.get<int>();
      else if (key == "seed") run.seed = value.get<std::uint64_t>();
      else if (key == "input") run.input = value.get<std::string>();
      else if (key == "labels") run.labels = value.get<std::string>();
      else if (key == "format") run.format = parse_matrix_format(value.get<std::string>());
      else if (key == "pca_dim") run.pca_dim = value.get<Index>();
      else if (key == "normalize") run.normalize = value.get<bool>();
      else if (key == "zero_diagonal") run.zero_diagonal = value.get<bool>();
      else if (key == "l2_normalize") run.l2_normalize = value.get<bool>();
      else if (key == "rank_eps") run.rank_eps = value.get<double>();
      else if (key == "kmeans_restarts") run.kmeans_restarts = value.get<int>();
      else if (key == "kmeans_max_iters") run.kmeans_max_iters = value.get<int>();
      else if (key == "out") run.out = value.get<std::string>();
      else if (key == "tau_grid") config.tau_grid = value.get<std::vector<double>>();
      else if (key == "k_grid") config.k_grid = value.get<std::vector<Index>>();
      else if (key == "synthetic") apply_synthetic(value, run.synthetic);
      else throw InputError("config: unknown key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
}

void load_json_config(const std::filesystem::path& path, SweepConfig& config) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  apply_json_config(text.str(), config);
}

}  // namespace fssc
