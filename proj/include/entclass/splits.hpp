// Validation / test partitions of the 30-state evaluation set.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "entclass/stategen.hpp"

namespace entclass {

inline constexpr int kStatesPerClass = 5;
inline constexpr int kValPerClass = 3;
inline constexpr int kTestPerClass = 2;

/// Indices into the evaluation set, ascending.
struct SplitCombo {
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
  friend bool operator==(const SplitCombo&, const SplitCombo&) = default;
};

struct SplitPlan {
  std::vector<SplitCombo> combos;
  std::size_t count() const { return combos.size(); }
};

class SplitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// n_combos distinct partitions choosing 3 of the 5 states of every class
/// for validation and the other 2 for test. Duplicate draws are rejected.
/// Throws SplitError unless every class has exactly 5 states, or if
/// n_combos is outside 1..10^6.
SplitPlan sample_splits(const std::vector<EvalState>& eval_set, int n_combos,
                        std::uint64_t seed);

}  // namespace entclass
