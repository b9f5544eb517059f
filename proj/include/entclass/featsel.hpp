// Density-matrix features: the 128-entry flattening, the 18 entries that can
// be nonzero for canonical-form states, and one-way ANOVA F ranking.
#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "entclass/qcore.hpp"
#include "entclass/stategen.hpp"

namespace entclass {

inline constexpr int kNumFeatures = 18;

using FeatureVector18 = std::array<double, kNumFeatures>;
using Flat128 = std::array<double, 128>;

/// Matrix position of a feature and whether it reads the imaginary part.
struct FeatureSlot {
  int row;
  int col;
  bool imag;
};

/// Slots of features 1..18 in their canonical numbering:
/// Re rho_00, 04, 05, 06, 07, 44, 45, 46, 47, 55, 56, 57, 66, 67,
/// Im rho_04, 45, 46, 47.
const std::array<FeatureSlot, kNumFeatures>& feature_slots();

/// "Re_rho_07" style name of feature `index` (0-based).
std::string feature_name(int index);

/// Flat index of a feature inside the 128-entry flattening.
int flat_index(int feature);

/// Row-major real parts followed by row-major imaginary parts.
Flat128 flatten(const DensityMatrix& rho);
Flat128 flatten(const DatasetRow& row);

FeatureVector18 extract_features18(const DensityMatrix& rho);
FeatureVector18 extract_features18(const DatasetRow& row);

enum class AnovaFlag {
  Ok,
  /// Between- and within-group variance both zero; score 0.
  Constant,
  /// Zero within-group variance with group means apart; score is the
  /// largest finite double.
  PerfectSeparation
};

struct AnovaScore {
  double f = 0.0;
  AnovaFlag flag = AnovaFlag::Ok;
};

/// One-way ANOVA F statistic of one feature against integer group labels.
/// Requires >= 2 groups, each with >= 2 samples, and n > k.
AnovaScore anova_f(std::span<const double> values, std::span<const int> groups);

std::array<AnovaScore, kNumFeatures> anova_f_scores(
    std::span<const FeatureVector18> features, std::span<const int> targets);

struct FeatureRanking {
  /// Feature indices, best first.
  std::array<int, kNumFeatures> order{};
  std::array<double, kNumFeatures> scores{};
};

/// Descending score; ties go to the lower feature index.
FeatureRanking rank_features(const std::array<double, kNumFeatures>& scores);
FeatureRanking rank_features(const std::array<AnovaScore, kNumFeatures>& scores);

/// Values of the first n ranked features, in rank order.
std::vector<double> select_top_n(const FeatureVector18& fv,
                                 const FeatureRanking& ranking, int n);

/// Reference orderings, kept as regression fixtures.
const std::array<int, kNumFeatures>& reference_gme_order();
const std::array<int, kNumFeatures>& reference_slocc_order();
FeatureRanking ranking_from_order(const std::array<int, kNumFeatures>& order);

enum class Target { Gme, Slocc };

/// GME flag or SLOCC class code of a row, depending on target.
int target_label(const DatasetRow& row, Target target);

/// Scores every feature of `rows` against `target`.
FeatureRanking anova_ranking(std::span<const DatasetRow> rows, Target target);

/// CSV: feature_index,feature_name,score,rank (1-based index and rank),
/// one line per feature in rank order.
void write_ranking(const FeatureRanking& ranking, const std::filesystem::path& path);
FeatureRanking read_ranking(const std::filesystem::path& path);

}  // namespace entclass
