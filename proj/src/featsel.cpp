#include "entclass/featsel.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "entclass/dataset_io.hpp"

namespace entclass {

namespace {

constexpr std::array<FeatureSlot, kNumFeatures> kSlots{{
    {0, 0, false}, {0, 4, false}, {0, 5, false}, {0, 6, false}, {0, 7, false},
    {4, 4, false}, {4, 5, false}, {4, 6, false}, {4, 7, false}, {5, 5, false},
    {5, 6, false}, {5, 7, false}, {6, 6, false}, {6, 7, false}, {0, 4, true},
    {4, 5, true},  {4, 6, true},  {4, 7, true},
}};

constexpr std::array<int, kNumFeatures> kGmeOrder{
    4, 10, 2, 3, 11, 13, 5, 7, 0, 17, 6, 1, 14, 15, 8, 16, 12, 9};
constexpr std::array<int, kNumFeatures> kSloccOrder{
    4, 3, 2, 13, 11, 10, 9, 0, 12, 5, 16, 14, 15, 7, 1, 6, 8, 17};

std::string ranking_header() { return "feature_index,feature_name,score,rank"; }

}  // namespace

const std::array<FeatureSlot, kNumFeatures>& feature_slots() { return kSlots; }

std::string feature_name(int index) {
  const auto& s = kSlots.at(index);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%s_rho_%d%d", s.imag ? "Im" : "Re", s.row, s.col);
  return buf;
}

int flat_index(int feature) {
  const auto& s = kSlots.at(feature);
  return (s.imag ? 64 : 0) + 8 * s.row + s.col;
}

Flat128 flatten(const DensityMatrix& rho) {
  Flat128 v{};
  for (int r = 0; r < kDim; ++r)
    for (int c = 0; c < kDim; ++c) {
      v[8 * r + c] = rho(r, c).real();
      v[64 + 8 * r + c] = rho(r, c).imag();
    }
  return v;
}

Flat128 flatten(const DatasetRow& row) {
  Flat128 v{};
  std::copy(row.v_re.begin(), row.v_re.end(), v.begin());
  std::copy(row.v_im.begin(), row.v_im.end(), v.begin() + 64);
  return v;
}

FeatureVector18 extract_features18(const DensityMatrix& rho) {
  FeatureVector18 fv{};
  for (int f = 0; f < kNumFeatures; ++f) {
    const auto& s = kSlots[f];
    const Complex z = rho(s.row, s.col);
    fv[f] = s.imag ? z.imag() : z.real();
  }
  return fv;
}

FeatureVector18 extract_features18(const DatasetRow& row) {
  FeatureVector18 fv{};
  for (int f = 0; f < kNumFeatures; ++f) {
    const auto& s = kSlots[f];
    fv[f] = (s.imag ? row.v_im : row.v_re)[8 * s.row + s.col];
  }
  return fv;
}

AnovaScore anova_f(std::span<const double> values, std::span<const int> groups) {
  if (values.size() != groups.size())
    throw std::invalid_argument("anova_f: values and groups differ in length");

  // Group sums in label order keep the reduction deterministic.
  std::map<int, std::pair<std::size_t, double>> stats;
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto& [count, sum] = stats[groups[i]];
    ++count;
    sum += values[i];
  }
  const std::size_t k = stats.size();
  const std::size_t n = values.size();
  if (k < 2) throw std::invalid_argument("anova_f: need at least two groups");
  for (const auto& [label, s] : stats) {
    if (s.first < 2)
      throw std::invalid_argument("anova_f: group " + std::to_string(label) +
                                  " has fewer than two samples");
  }
  if (n <= k) throw std::invalid_argument("anova_f: need more samples than groups");

  double total = 0.0;
  for (const auto& [label, s] : stats) total += s.second;
  const double grand = total / static_cast<double>(n);

  std::map<int, double> means;
  double ssb = 0.0;
  for (const auto& [label, s] : stats) {
    const double mean = s.second / static_cast<double>(s.first);
    means[label] = mean;
    ssb += static_cast<double>(s.first) * (mean - grand) * (mean - grand);
  }
  double ssw = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = values[i] - means[groups[i]];
    ssw += d * d;
  }

  if (ssw == 0.0) {
    if (ssb == 0.0) return {0.0, AnovaFlag::Constant};
    return {std::numeric_limits<double>::max(), AnovaFlag::PerfectSeparation};
  }
  const double f = (ssb / static_cast<double>(k - 1)) /
                   (ssw / static_cast<double>(n - k));
  return {f, AnovaFlag::Ok};
}

std::array<AnovaScore, kNumFeatures> anova_f_scores(
    std::span<const FeatureVector18> features, std::span<const int> targets) {
  std::array<AnovaScore, kNumFeatures> out{};
  std::vector<double> column(features.size());
  for (int f = 0; f < kNumFeatures; ++f) {
    for (std::size_t i = 0; i < features.size(); ++i) column[i] = features[i][f];
    out[f] = anova_f(column, targets);
  }
  return out;
}

FeatureRanking rank_features(const std::array<double, kNumFeatures>& scores) {
  FeatureRanking r;
  r.scores = scores;
  std::iota(r.order.begin(), r.order.end(), 0);
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  return r;
}

FeatureRanking rank_features(const std::array<AnovaScore, kNumFeatures>& scores) {
  std::array<double, kNumFeatures> f{};
  for (int i = 0; i < kNumFeatures; ++i) f[i] = scores[i].f;
  return rank_features(f);
}

std::vector<double> select_top_n(const FeatureVector18& fv,
                                 const FeatureRanking& ranking, int n) {
  if (n < 1 || n > kNumFeatures)
    throw std::out_of_range("select_top_n: N must be in 1..18, got " +
                            std::to_string(n));
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = fv[ranking.order[i]];
  return out;
}

const std::array<int, kNumFeatures>& reference_gme_order() { return kGmeOrder; }
const std::array<int, kNumFeatures>& reference_slocc_order() { return kSloccOrder; }

FeatureRanking ranking_from_order(const std::array<int, kNumFeatures>& order) {
  FeatureRanking r;
  r.order = order;
  // Synthetic descending scores so the ranking invariants still hold.
  for (int i = 0; i < kNumFeatures; ++i) r.scores[order[i]] = kNumFeatures - i;
  return r;
}

int target_label(const DatasetRow& row, Target target) {
  return target == Target::Gme ? row.label.gme_flag : row.label.integer_code;
}

FeatureRanking anova_ranking(std::span<const DatasetRow> rows, Target target) {
  std::vector<FeatureVector18> fvs;
  std::vector<int> labels;
  fvs.reserve(rows.size());
  labels.reserve(rows.size());
  for (const auto& row : rows) {
    fvs.push_back(extract_features18(row));
    labels.push_back(target_label(row, target));
  }
  return rank_features(anova_f_scores(fvs, labels));
}

void write_ranking(const FeatureRanking& ranking, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << ranking_header() << '\n';
  for (int i = 0; i < kNumFeatures; ++i) {
    const int f = ranking.order[i];
    out << f + 1 << ',' << feature_name(f) << ',' << format_double(ranking.scores[f])
        << ',' << i + 1 << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

FeatureRanking read_ranking(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open ranking file " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != ranking_header())
    throw std::runtime_error(path.string() + ": unexpected ranking header");

  FeatureRanking r;
  std::array<bool, kNumFeatures> seen{};
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    double index = 0, score = 0, rank = 0;
    if (fields.size() != 4 || !parse_double(fields[0], index) ||
        !parse_double(fields[2], score) || !parse_double(fields[3], rank))
      throw std::runtime_error(path.string() + ": malformed ranking line '" + line + "'");
    const int f = static_cast<int>(index) - 1;
    const int k = static_cast<int>(rank) - 1;
    if (f < 0 || f >= kNumFeatures || k < 0 || k >= kNumFeatures || seen[f] ||
        fields[1] != feature_name(f))
      throw std::runtime_error(path.string() + ": invalid ranking entry '" + line + "'");
    seen[f] = true;
    r.order[k] = f;
    r.scores[f] = score;
    ++rows;
  }
  if (rows != kNumFeatures)
    throw std::runtime_error(path.string() + ": ranking must list all 18 features");
  return r;
}

}  // namespace entclass
