// fssc: run, sweep and generate subspace-clustering experiments.

#include "fssc/config.hpp"
#include "fssc/error.hpp"
#include "fssc/pipeline.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <utility>
#include <vector>

namespace {

using fssc::Index;
using fssc::SweepConfig;

// Flags are bound to scratch values; only the ones that appear on the command
// line are copied over the defaults and the optional JSON config.
class FlagSet {
 public:
  explicit FlagSet(CLI::App& app) : app_(app) {}

  template <typename T, typename Apply>
  void option(const std::string& name, const std::string& help, Apply apply) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app_.add_option(name, *value, help);
    setters_.emplace_back(opt, [value, apply](SweepConfig& c) { apply(c, *value); });
  }

  void flag(const std::string& name, const std::string& help,
            std::function<void(SweepConfig&)> apply) {
    CLI::Option* opt = app_.add_flag(name, help);
    setters_.emplace_back(opt, std::move(apply));
  }

  void apply(SweepConfig& config) const {
    for (const auto& [opt, set] : setters_) {
      if (opt->count() > 0) set(config);
    }
  }

 private:
  CLI::App& app_;
  std::vector<std::pair<CLI::Option*, std::function<void(SweepConfig&)>>> setters_;
};

void add_data_flags(FlagSet& flags, bool input_side) {
  flags.option<std::string>("--format", "Matrix format: csv or binary (default: by extension)",
                            [](SweepConfig& c, const std::string& v) {
                              c.base.format = fssc::parse_matrix_format(v);
                            });
  flags.option<Index>("--ambient-dim", "Synthetic ambient dimension",
                      [](SweepConfig& c, Index v) { c.base.synthetic.ambient_dim = v; });
  flags.option<Index>("--subspace-dim", "Synthetic subspace dimension",
                      [](SweepConfig& c, Index v) { c.base.synthetic.subspace_dim = v; });
  flags.option<Index>("--subspaces", "Number of synthetic subspaces",
                      [](SweepConfig& c, Index v) { c.base.synthetic.num_subspaces = v; });
  flags.option<Index>("--points", "Synthetic points per subspace",
                      [](SweepConfig& c, Index v) { c.base.synthetic.points_per_subspace = v; });
  flags.option<double>("--noise", "Synthetic Gaussian noise sigma",
                       [](SweepConfig& c, double v) { c.base.synthetic.noise_sigma = v; });
  flags.option<std::uint64_t>("--data-seed", "Synthetic generator seed",
                              [](SweepConfig& c, std::uint64_t v) { c.base.synthetic.seed = v; });
  if (!input_side) return;
  flags.option<std::string>("--input", "Data matrix file (samples as columns)",
                            [](SweepConfig& c, const std::string& v) { c.base.input = v; });
  flags.option<std::string>("--labels", "Ground-truth label file, one integer per line",
                            [](SweepConfig& c, const std::string& v) { c.base.labels = v; });
  flags.option<Index>("--pca-dim", "Project onto this many principal components (0 = off)",
                      [](SweepConfig& c, Index v) { c.base.pca_dim = v; });
  flags.flag("--normalize", "Scale every sample to unit norm",
             [](SweepConfig& c) { c.base.normalize = true; });
}

void add_experiment_flags(FlagSet& flags) {
  flags.option<std::string>("--algorithm", "fssc, lrsc or l2graph",
                            [](SweepConfig& c, const std::string& v) {
                              c.base.algorithm = fssc::parse_algorithm(v);
                            });
  flags.option<double>("--tau", "Balance parameter tau",
                       [](SweepConfig& c, double v) { c.base.tau = v; });
  flags.option<Index>("--k", "Coefficients kept per column",
                      [](SweepConfig& c, Index v) { c.base.k = v; });
  flags.option<Index>("--clusters", "Number of clusters (default: from labels)",
                      [](SweepConfig& c, Index v) { c.base.clusters = v; });
  flags.option<int>("--repeats", "Independent k-means repeats",
                    [](SweepConfig& c, int v) { c.base.repeats = v; });
  flags.option<std::uint64_t>("--seed", "Base seed for k-means repeats",
                              [](SweepConfig& c, std::uint64_t v) { c.base.seed = v; });
  flags.option<bool>("--zero-diagonal", "Drop self-coefficients before top-k (true/false)",
                     [](SweepConfig& c, bool v) { c.base.zero_diagonal = v; });
  flags.option<bool>("--l2-normalize", "Unit-normalize L2-graph columns (true/false)",
                     [](SweepConfig& c, bool v) { c.base.l2_normalize = v; });
  flags.option<std::string>("--out", "Output CSV path (default: stdout)",
                            [](SweepConfig& c, const std::string& v) { c.base.out = v; });
}

SweepConfig resolve(const std::string& config_path, const FlagSet& flags) {
  SweepConfig config;
  if (!config_path.empty()) fssc::load_json_config(config_path, config);
  flags.apply(config);
  return config;
}

template <typename Write>
void emit(const std::string& path, Write write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw fssc::StageError("write", "cannot open " + path);
  write(out);
  if (!out) throw fssc::StageError("write", "failed writing " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subspace clustering with closed-form self-representation graphs"};
  app.require_subcommand(1);

  std::string run_config;
  CLI::App* run = app.add_subcommand("run", "Run one configuration with repeated k-means seeds");
  run->add_option("--config", run_config, "JSON config file; flags override it");
  FlagSet run_flags(*run);
  add_data_flags(run_flags, true);
  add_experiment_flags(run_flags);

  std::string sweep_config;
  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate a tau x k parameter grid");
  sweep->add_option("--config", sweep_config, "JSON config file; flags override it");
  FlagSet sweep_flags(*sweep);
  add_data_flags(sweep_flags, true);
  add_experiment_flags(sweep_flags);
  sweep_flags.option<std::vector<double>>(
      "--tau-grid", "Comma-separated tau values",
      [](SweepConfig& c, const std::vector<double>& v) { c.tau_grid = v; });
  sweep_flags.option<std::vector<Index>>(
      "--k-grid", "Comma-separated k values",
      [](SweepConfig& c, const std::vector<Index>& v) { c.k_grid = v; });
  for (const char* name : {"--tau-grid", "--k-grid"}) sweep->get_option(name)->delimiter(',');

  std::string gen_config;
  std::string gen_out;
  std::string gen_labels;
  CLI::App* gen = app.add_subcommand("gen", "Write a synthetic union-of-subspaces dataset");
  gen->add_option("--config", gen_config, "JSON config file; flags override it");
  gen->add_option("--out", gen_out, "Matrix output path")->required();
  gen->add_option("--labels", gen_labels, "Label output path")->required();
  FlagSet gen_flags(*gen);
  add_data_flags(gen_flags, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const SweepConfig config = resolve(run_config, run_flags);
      const fssc::Dataset data = fssc::load_dataset(config.base);
      const fssc::RepeatedResult result = fssc::run_repeated(data, config.base);
      emit(config.base.out,
           [&](std::ostream& out) { fssc::write_runs_csv(out, config.base, result); });
      fssc::write_summary(config.base.out.empty() ? std::cerr : std::cout, result.summary);
    } else if (*sweep) {
      const SweepConfig config = resolve(sweep_config, sweep_flags);
      const fssc::Dataset data = fssc::load_dataset(config.base);
      const auto rows = fssc::run_sweep(data, config);
      emit(config.base.out, [&](std::ostream& out) { fssc::write_sweep_csv(out, rows); });
    } else if (*gen) {
      const SweepConfig config = resolve(gen_config, gen_flags);
      const fssc::Dataset data = [&] {
        try {
          return fssc::generate_synthetic(config.base.synthetic);
        } catch (const fssc::Error& e) {
          throw fssc::StageError("gen", e.what());
        }
      }();
      try {
        const fssc::MatrixFormat format =
            config.base.format.value_or(fssc::guess_matrix_format(gen_out));
        fssc::save_matrix(data.matrix.values(), gen_out, format);
        fssc::save_labels(data.truth.labels, gen_labels);
      } catch (const fssc::Error& e) {
        throw fssc::StageError("write", e.what());
      }
      std::cout << data.name << ": " << data.matrix.features() << " x "
                << data.matrix.samples() << '\n';
    }
  } catch (const fssc::StageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
