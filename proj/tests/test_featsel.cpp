#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <limits>
#include <set>

#include "entclass/featsel.hpp"
#include "oracles.hpp"

using namespace entclass;

namespace {

// Reference F scores of features 1..18 for the GME and SLOCC targets.
constexpr std::array<double, kNumFeatures> kGmeScores{
    0.08, 0.19, 208.61, 195.36, 391.70, 53.90, 1.20, 0.20, 2.31,
    0.12, 286.44, 92.00, 11.17, 44.76, 0.24, 0.00, 0.03, 2.30};
constexpr std::array<double, kNumFeatures> kSloccScores{
    70.43, 1.27, 291.39, 283.19, 315.85, 25.85, 0.40, 1.48, 2.54,
    80.63, 110.98, 98.17, 58.51, 95.44, 0.38, 1.49, 0.25, 0.34};

int feature_by_name(const std::string& name) {
  for (int f = 0; f < kNumFeatures; ++f)
    if (feature_name(f) == name) return f;
  return -1;
}

}  // namespace

TEST_CASE("feature slots and names") {
  CHECK(feature_name(0) == "Re_rho_00");
  CHECK(feature_name(4) == "Re_rho_07");
  CHECK(feature_name(13) == "Re_rho_67");
  CHECK(feature_name(14) == "Im_rho_04");
  CHECK(feature_name(17) == "Im_rho_47");
  CHECK(flat_index(4) == 7);
  CHECK(flat_index(14) == 64 + 4);
  std::set<std::string> names;
  for (int f = 0; f < kNumFeatures; ++f) names.insert(feature_name(f));
  CHECK(names.size() == kNumFeatures);
}

TEST_CASE("feature extraction reads the flattened matrix") {
  const auto rows = build_training_dataset(2, 3);
  for (const auto& row : rows) {
    const auto rho = row_density(row);
    const auto flat = flatten(rho);
    CHECK(flat == flatten(row));
    const auto fv = extract_features18(row);
    CHECK(fv == extract_features18(rho));
    for (int f = 0; f < kNumFeatures; ++f) CHECK(fv[f] == flat[flat_index(f)]);
  }
}

TEST_CASE("canonical states are zero outside the 18 features and rho_77") {
  const auto rows = build_training_dataset(10, 4);
  std::set<int> allowed{63};  // Re rho_77, fixed by the unit trace
  for (int f = 0; f < kNumFeatures; ++f) {
    const auto s = feature_slots()[f];
    allowed.insert((s.imag ? 64 : 0) + 8 * s.row + s.col);
    allowed.insert((s.imag ? 64 : 0) + 8 * s.col + s.row);
  }
  for (const auto& row : rows) {
    const auto flat = flatten(row);
    for (int k = 0; k < 128; ++k)
      if (!allowed.count(k)) CHECK(flat[k] == 0.0);
  }
}

TEST_CASE("ANOVA F against the total-within decomposition") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 2 + static_cast<int>(rng.below(5));
    std::vector<double> x;
    std::vector<int> g;
    for (int c = 0; c < k; ++c) {
      const int n = 2 + static_cast<int>(rng.below(10));
      for (int i = 0; i < n; ++i) {
        x.push_back(rng.normal() + 0.3 * c);
        g.push_back(c * 3);  // labels need not be contiguous
      }
    }
    const auto s = anova_f(x, g);
    CHECK(s.flag == AnovaFlag::Ok);
    CHECK(s.f == doctest::Approx(oracle::anova_f(x, g)).epsilon(1e-10));
  }
}

TEST_CASE("ANOVA hand example") {
  // Groups {1,2,3} and {4,5,6}: SSB = 13.5, SSW = 4, F = 13.5 / (4/4) = 13.5.
  const std::vector<double> x{1, 2, 3, 4, 5, 6};
  const std::vector<int> g{0, 0, 0, 1, 1, 1};
  CHECK(anova_f(x, g).f == doctest::Approx(13.5));
}

TEST_CASE("ANOVA degenerate inputs") {
  const std::vector<int> g{0, 0, 1, 1};
  const auto constant = anova_f(std::vector<double>{2, 2, 2, 2}, g);
  CHECK(constant.flag == AnovaFlag::Constant);
  CHECK(constant.f == 0.0);
  const auto separated = anova_f(std::vector<double>{1, 1, 3, 3}, g);
  CHECK(separated.flag == AnovaFlag::PerfectSeparation);
  CHECK(separated.f == std::numeric_limits<double>::max());

  CHECK_THROWS_AS(anova_f(std::vector<double>{1, 2}, std::vector<int>{0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(anova_f(std::vector<double>{1, 2, 3}, std::vector<int>{0, 0, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(anova_f(std::vector<double>{1, 2, 3}, std::vector<int>{0, 1}),
                  std::invalid_argument);
}

TEST_CASE("ranking the reference scores") {
  // The reference orders agree with the reference scores only on the
  // leading features, so only those are compared.
  const auto gme = rank_features(kGmeScores);
  CHECK(feature_name(gme.order[0]) == "Re_rho_07");
  CHECK(feature_name(gme.order[1]) == "Re_rho_56");
  CHECK(feature_name(gme.order[2]) == "Re_rho_05");
  CHECK(feature_name(gme.order[3]) == "Re_rho_06");
  for (int i = 0; i < 4; ++i) CHECK(gme.order[i] == reference_gme_order()[i]);

  const auto slocc = rank_features(kSloccScores);
  std::set<int> top6(slocc.order.begin(), slocc.order.begin() + 6);
  std::set<int> expected;
  for (const char* n : {"Re_rho_07", "Re_rho_06", "Re_rho_05", "Re_rho_67", "Re_rho_57",
                        "Re_rho_56"})
    expected.insert(feature_by_name(n));
  CHECK(top6 == expected);
  std::set<int> ref6(reference_slocc_order().begin(), reference_slocc_order().begin() + 6);
  CHECK(ref6 == expected);
  CHECK(slocc.order[0] == reference_slocc_order()[0]);
}

TEST_CASE("ranking invariants") {
  std::array<double, kNumFeatures> scores{};
  scores[3] = 5.0;
  scores[7] = 5.0;
  scores[1] = 9.0;
  const auto r = rank_features(scores);
  CHECK(r.order[0] == 1);
  CHECK(r.order[1] == 3);  // tie goes to the lower index
  CHECK(r.order[2] == 7);
  for (int i = 1; i < kNumFeatures; ++i)
    CHECK(r.scores[r.order[i - 1]] >= r.scores[r.order[i]]);
  std::set<int> all(r.order.begin(), r.order.end());
  CHECK(all.size() == kNumFeatures);
}

TEST_CASE("top-N selection") {
  FeatureVector18 fv{};
  for (int i = 0; i < kNumFeatures; ++i) fv[i] = i * 10.0;
  const auto r = ranking_from_order(reference_gme_order());
  const auto top = select_top_n(fv, r, 4);
  CHECK(top == std::vector<double>{40, 100, 20, 30});
  CHECK(select_top_n(fv, r, 18).size() == 18);
  CHECK_THROWS_AS(select_top_n(fv, r, 0), std::out_of_range);
  CHECK_THROWS_AS(select_top_n(fv, r, 19), std::out_of_range);
}

TEST_CASE("sampled data ranks the GHZ coherence first") {
  const auto rows = build_training_dataset(200, 31);
  for (auto target : {Target::Gme, Target::Slocc}) {
    const auto r = anova_ranking(rows, target);
    CHECK(feature_name(r.order[0]) == "Re_rho_07");
    CHECK(r.scores[r.order[0]] > r.scores[feature_by_name("Im_rho_04")]);
  }
}

TEST_CASE("ranking file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "entclass_ranking.csv";
  const auto r = rank_features(kSloccScores);
  write_ranking(r, path);
  const auto back = read_ranking(path);
  CHECK(back.order == r.order);
  CHECK(back.scores == r.scores);
  CHECK_THROWS(read_ranking(std::filesystem::temp_directory_path() / "entclass_missing.csv"));
}
