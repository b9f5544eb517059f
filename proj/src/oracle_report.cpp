#include "entclass/oracle_report.hpp"

#include <stdexcept>

namespace entclass {

OracleReport oracle_report(const std::vector<EvalState>& eval_set,
                           const OracleSettings& settings) {
  if (eval_set.empty()) throw std::invalid_argument("oracle_report: empty evaluation set");
  OracleReport rep;
  int gme_clean_ok = 0, slocc_clean_ok = 0, gme_noisy_ok = 0, slocc_noisy_ok = 0;
  for (const auto& s : eval_set) {
    OracleRow row;
    row.state_id = s.state_id;
    row.slocc_class = s.slocc_class;
    row.fidelity = s.fidelity;
    row.clean_ranks = correlation_ranks(s.clean, settings.rank_tol_clean);
    row.noisy_ranks = correlation_ranks(s.noisy, settings.rank_tol_noisy);
    row.clean_tangle = three_tangle(s.clean);
    row.noisy_tangle = three_tangle(s.noisy);
    row.gme_true = is_gme(s.slocc_class) ? 1 : 0;
    row.gme_clean = classify_by_ranks(row.clean_ranks) == RankClass::GME ? 1 : 0;
    row.gme_noisy = classify_by_ranks(row.noisy_ranks) == RankClass::GME ? 1 : 0;
    row.slocc_clean =
        slocc_oracle(s.clean, settings.rank_tol_clean, settings.tangle_tol_clean);
    row.slocc_noisy =
        slocc_oracle(s.noisy, settings.rank_tol_noisy, settings.tangle_tol_noisy);
    row.gme_correct = row.gme_noisy == row.gme_true;
    row.slocc_correct = row.slocc_noisy == s.slocc_class;

    gme_clean_ok += row.gme_clean == row.gme_true;
    slocc_clean_ok += row.slocc_clean == s.slocc_class;
    gme_noisy_ok += row.gme_correct;
    slocc_noisy_ok += row.slocc_correct;
    rep.gme_confusion.add(row.gme_true, row.gme_noisy);
    if (row.slocc_noisy)
      rep.slocc_confusion.add(class_code(s.slocc_class), class_code(*row.slocc_noisy));
    rep.rows.push_back(std::move(row));
  }
  const double n = static_cast<double>(eval_set.size());
  rep.gme_accuracy_clean = gme_clean_ok / n;
  rep.slocc_accuracy_clean = slocc_clean_ok / n;
  rep.gme_accuracy_noisy = gme_noisy_ok / n;
  rep.slocc_accuracy_noisy = slocc_noisy_ok / n;
  return rep;
}

}  // namespace entclass
