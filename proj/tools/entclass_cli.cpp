// Command-line driver: dataset generation, feature ranking, N-sweeps and the
// rank/tangle oracle report.
#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "entclass/dataset_io.hpp"
#include "entclass/featsel.hpp"
#include "entclass/oracle_report.hpp"
#include "entclass/reports.hpp"
#include "entclass/splits.hpp"
#include "entclass/stategen.hpp"
#include "entclass/sweep.hpp"

namespace fs = std::filesystem;
using namespace entclass;

namespace {

void ensure_parent(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

Problem parse_problem(const std::string& name) {
  const auto p = problem_from_name(name);
  if (!p) throw std::invalid_argument("unknown problem '" + name + "' (expected gme or slocc)");
  return *p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement classification of three-qubit states"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string out;
  auto add_common = [&](CLI::App* sub, const std::string& out_help) {
    sub->add_option("--seed", seed, "Master seed")->default_val(0);
    sub->add_option("--out", out, out_help)->required();
  };

  int train_per_class = 2000;
  auto* gen_train = app.add_subcommand("gen-train", "Generate the clean training set");
  gen_train->add_option("--per-class", train_per_class, "States per class")->default_val(2000);
  add_common(gen_train, "Output CSV path");

  int eval_per_class = 5;
  auto* gen_eval = app.add_subcommand("gen-eval", "Generate the noisy evaluation set");
  gen_eval->add_option("--per-class", eval_per_class, "States per class")->default_val(5);
  add_common(gen_eval, "Output CSV path");

  std::string anova_train, target_name;
  int anova_per_class = 200;
  auto* anova = app.add_subcommand("anova", "Rank the 18 features by ANOVA F value");
  anova->add_option("--train", anova_train,
                    "Training CSV (default: fresh sample drawn from --seed)");
  anova->add_option("--per-class", anova_per_class, "States per class when sampling")
      ->default_val(200);
  anova->add_option("--target", target_name, "gme or slocc")
      ->required()
      ->check(CLI::IsMember({"gme", "slocc"}));
  add_common(anova, "Output ranking CSV path");

  std::string sweep_problem, sweep_train, sweep_eval, sweep_ranking;
  int combos = 100, n_min = 1, n_max = kNumFeatures, epochs = 0;
  unsigned threads = 0;
  bool no_baselines = false;
  auto* sweep = app.add_subcommand("sweep", "Train and evaluate over N and split combos");
  sweep->add_option("--problem", sweep_problem, "gme or slocc")
      ->required()
      ->check(CLI::IsMember({"gme", "slocc"}));
  sweep->add_option("--train", sweep_train, "Training CSV")->required();
  sweep->add_option("--eval", sweep_eval, "Evaluation CSV")->required();
  sweep->add_option("--ranking", sweep_ranking, "Ranking CSV")->required();
  sweep->add_option("--combos", combos, "Validation/test combos")->default_val(100);
  sweep->add_option("--n-min", n_min, "Smallest feature count")->default_val(1);
  sweep->add_option("--n-max", n_max, "Largest feature count")->default_val(kNumFeatures);
  sweep->add_option("--epochs", epochs, "Override the epoch limit");
  sweep->add_option("--threads", threads, "Worker threads (0: all cores)")->default_val(0);
  sweep->add_flag("--no-baselines", no_baselines, "Skip SVM and KNN");
  add_common(sweep, "Output directory");

  std::string oracle_eval;
  double tol_noisy = kRankTolNoisy, tol_clean = kRankTolClean;
  double tangle_noisy = kTangleTolNoisy, tangle_clean = kTangleTolClean;
  auto* oracle = app.add_subcommand("oracle", "Rank/tangle classification report");
  oracle->add_option("--eval", oracle_eval, "Evaluation CSV")->required();
  oracle->add_option("--tol-noisy", tol_noisy, "Rank threshold for noisy states")
      ->default_val(kRankTolNoisy);
  oracle->add_option("--tol-clean", tol_clean, "Rank threshold for clean states")
      ->default_val(kRankTolClean);
  oracle->add_option("--tangle-tol-noisy", tangle_noisy)->default_val(kTangleTolNoisy);
  oracle->add_option("--tangle-tol-clean", tangle_clean)->default_val(kTangleTolClean);
  add_common(oracle, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "entclass: error: " << e.what() << '\n';
    return e.get_exit_code() != 0 ? e.get_exit_code() : 2;
  }

  try {
    if (gen_train->parsed()) {
      const fs::path path(out);
      ensure_parent(path);
      write_dataset(build_training_dataset(train_per_class, seed), path);
    } else if (gen_eval->parsed()) {
      const fs::path path(out);
      ensure_parent(path);
      write_eval_set(build_eval_set(eval_per_class, seed), path);
    } else if (anova->parsed()) {
      const auto rows = anova_train.empty() ? build_training_dataset(anova_per_class, seed)
                                            : read_dataset(anova_train);
      const Target target = target_name == "gme" ? Target::Gme : Target::Slocc;
      const fs::path path(out);
      ensure_parent(path);
      write_ranking(anova_ranking(rows, target), path);
    } else if (sweep->parsed()) {
      const Problem problem = parse_problem(sweep_problem);
      const auto rows = read_dataset(sweep_train);
      const auto eval_set = read_eval_set(sweep_eval);
      const auto ranking = read_ranking(sweep_ranking);
      const auto plan = sample_splits(eval_set, combos, derive_seed({seed, 0x73706c74}));
      SweepConfig cfg;
      cfg.n_min = n_min;
      cfg.n_max = n_max;
      cfg.seed = seed;
      cfg.threads = threads;
      cfg.baselines = !no_baselines;
      if (epochs > 0) {
        TrainConfig tc = default_train_config(problem);
        tc.epochs = epochs;
        tc.patience = std::min(tc.patience, epochs);
        cfg.train = tc;
      }
      const auto results = run_sweep(problem, eval_set, rows, ranking, plan, cfg);
      emit_sweep_reports(results, out);
      std::cout << sweep_summary(results);
    } else if (oracle->parsed()) {
      const auto eval_set = read_eval_set(oracle_eval);
      const OracleSettings settings{tol_clean, tol_noisy, tangle_clean, tangle_noisy};
      const auto report = oracle_report(eval_set, settings);
      emit_oracle_reports(report, out);
      std::cout << oracle_summary(report);
    }
  } catch (const std::exception& e) {
    std::cerr << "entclass: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
