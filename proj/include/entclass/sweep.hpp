// N-sweeps of the ANN classifiers over a split plan, with SVM and KNN
// baselines on the whole evaluation set.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "entclass/featsel.hpp"
#include "entclass/knn.hpp"
#include "entclass/metrics.hpp"
#include "entclass/mlp.hpp"
#include "entclass/splits.hpp"
#include "entclass/stategen.hpp"
#include "entclass/train.hpp"

namespace entclass {

enum class Problem { Gme, Slocc };

const char* problem_name(Problem p);  // "gme" / "slocc"
std::optional<Problem> problem_from_name(std::string_view name);
Target problem_target(Problem p);
int problem_classes(Problem p);  // 2 or 6

/// N x ceil(N/2) x 1 sigmoid for GME, N x 6 x 6 softmax for SLOCC.
Mlp make_model(Problem p, int n_inputs);
TrainConfig default_train_config(Problem p);

/// First n ranked features of every row, labelled for the problem.
LabeledSet make_labeled_set(std::span<const DatasetRow> rows, const FeatureRanking& ranking,
                            int n, Problem p);
/// Same, from the noisy states at `indices`.
LabeledSet make_labeled_set(const std::vector<EvalState>& states,
                            const FeatureRanking& ranking, int n, Problem p,
                            std::span<const std::size_t> indices);
LabeledSet make_labeled_set(const std::vector<EvalState>& states,
                            const FeatureRanking& ranking, int n, Problem p);

struct KnnSettings {
  int k;
  KnnWeighting weighting;
  int p;
};

/// k=18 uniform p=1 for GME; k=20 distance p=2 for SLOCC.
KnnSettings default_knn(Problem p);
inline constexpr double kSvmC = 0.1;

struct SweepConfig {
  int n_min = 1;
  int n_max = kNumFeatures;
  std::uint64_t seed = 0;
  /// Overrides the problem's default training settings (seed is ignored;
  /// every job derives its own).
  std::optional<TrainConfig> train;
  unsigned threads = 0;  // 0: hardware concurrency
  bool baselines = true;
};

struct ComboResult {
  double val_accuracy = 0.0;
  double test_accuracy = 0.0;
  double val_loss = 0.0;
  double test_loss = 0.0;
  int best_epoch = 0;
  int epochs_run = 0;
};

struct RunResult {
  Problem problem = Problem::Gme;
  int n = 0;
  std::vector<int> topology;
  std::size_t true_params = 0;
  int p2 = 0;  // width-sum convention
  int p3 = 0;
  std::vector<ComboResult> combos;
  SeriesStats val_accuracy, test_accuracy, val_loss, test_loss;
  double delta = 0.0;  // Pearson correlation of per-combo val / test accuracy
  CombinedMetric overall;  // A_T and its spread
  /// Test-set predictions of every combo, accumulated.
  ConfusionMatrix test_confusion{2};
  std::optional<double> svm_accuracy;  // A1
  std::optional<double> knn_accuracy;  // A2
  /// Best-epoch model of combo 0.
  std::optional<Mlp> model;
};

/// Recomputes the aggregate fields of r from r.combos.
void aggregate(RunResult& r);

/// One training per (N, combo) on the full training set with the combo's
/// validation states for early stopping, evaluated on the combo's test
/// states. Results come back ordered by N and are independent of the thread
/// count.
std::vector<RunResult> run_sweep(Problem problem, const std::vector<EvalState>& eval_set,
                                 std::span<const DatasetRow> train_rows,
                                 const FeatureRanking& ranking, const SplitPlan& plan,
                                 const SweepConfig& config);

}  // namespace entclass
