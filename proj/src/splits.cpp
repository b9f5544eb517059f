#include "entclass/splits.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "entclass/rng.hpp"

namespace entclass {

SplitPlan sample_splits(const std::vector<EvalState>& eval_set, int n_combos,
                        std::uint64_t seed) {
  // (5 choose 3)^6 distinct partitions exist.
  constexpr int kMaxCombos = 1000000;
  if (n_combos < 1 || n_combos > kMaxCombos)
    throw SplitError("sample_splits: combo count must be in 1..1000000");

  std::array<std::vector<std::size_t>, kNumClasses> by_class;
  for (std::size_t i = 0; i < eval_set.size(); ++i)
    by_class[class_code(eval_set[i].slocc_class)].push_back(i);
  for (int c = 0; c < kNumClasses; ++c) {
    if (by_class[c].size() != kStatesPerClass)
      throw SplitError("sample_splits: class " +
                       std::string(class_name(kAllClasses[c])) + " has " +
                       std::to_string(by_class[c].size()) + " states, expected " +
                       std::to_string(kStatesPerClass));
  }

  Rng rng(seed);
  SplitPlan plan;
  std::set<std::vector<std::size_t>> seen;
  while (static_cast<int>(plan.combos.size()) < n_combos) {
    SplitCombo combo;
    for (int c = 0; c < kNumClasses; ++c) {
      std::array<std::size_t, kStatesPerClass> members{};
      std::copy(by_class[c].begin(), by_class[c].end(), members.begin());
      rng.shuffle(std::span<std::size_t>(members));
      combo.validation.insert(combo.validation.end(), members.begin(),
                              members.begin() + kValPerClass);
      combo.test.insert(combo.test.end(), members.begin() + kValPerClass, members.end());
    }
    std::sort(combo.validation.begin(), combo.validation.end());
    std::sort(combo.test.begin(), combo.test.end());
    if (seen.insert(combo.validation).second) plan.combos.push_back(std::move(combo));
  }
  return plan;
}

}  // namespace entclass
