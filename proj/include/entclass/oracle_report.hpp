// Rank / tangle classification of every evaluation state, clean and noisy.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entclass/entangle.hpp"
#include "entclass/metrics.hpp"
#include "entclass/stategen.hpp"

namespace entclass {

struct OracleRow {
  std::string state_id;
  SloccClass slocc_class;
  double fidelity = 0.0;
  RankTriple clean_ranks, noisy_ranks;
  double clean_tangle = 0.0, noisy_tangle = 0.0;
  int gme_true = 0;
  int gme_clean = 0;  // predicted from clean-state ranks
  int gme_noisy = 0;  // predicted from noisy-state ranks
  std::optional<SloccClass> slocc_clean, slocc_noisy;
  bool gme_correct = false;    // noisy prediction
  bool slocc_correct = false;  // noisy prediction
};

struct OracleSettings {
  double rank_tol_clean = kRankTolClean;
  double rank_tol_noisy = kRankTolNoisy;
  double tangle_tol_clean = kTangleTolClean;
  double tangle_tol_noisy = kTangleTolNoisy;
};

struct OracleReport {
  std::vector<OracleRow> rows;
  double gme_accuracy_clean = 0.0;
  double slocc_accuracy_clean = 0.0;
  double gme_accuracy_noisy = 0.0;
  double slocc_accuracy_noisy = 0.0;
  /// Noisy-state predictions; unmatched rank patterns never count as a hit
  /// and are left out of the SLOCC matrix.
  ConfusionMatrix gme_confusion{2};
  ConfusionMatrix slocc_confusion{kNumClasses};
};

OracleReport oracle_report(const std::vector<EvalState>& eval_set,
                           const OracleSettings& settings = {});

}  // namespace entclass
