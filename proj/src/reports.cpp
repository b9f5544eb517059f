#include "entclass/reports.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "entclass/dataset_io.hpp"

namespace entclass {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ReportError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw ReportError("write failed: " + path.string());
}

std::string opt_double(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string ranks_string(const RankTriple& r) {
  return std::to_string(r.r1) + ',' + std::to_string(r.r2) + ',' + std::to_string(r.r3);
}

std::string class_or_none(const std::optional<SloccClass>& c) {
  return c ? std::string(class_name(*c)) : std::string("NONE");
}

std::vector<std::string> class_labels(Problem p) {
  if (p == Problem::Gme) return {"NON-GME", "GME"};
  std::vector<std::string> out;
  for (auto c : kAllClasses) out.emplace_back(class_name(c));
  return out;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw ReportError("cannot create output directory " + dir.string());
}

}  // namespace

std::string topology_string(const std::vector<int>& sizes) {
  std::string s;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) s += 'x';
    s += std::to_string(sizes[i]);
  }
  return s;
}

void write_sweep_csv(std::span<const RunResult> results, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "N,topology,true_params,p2_width_sum,p3_width_sum,mean_val_acc,std_val_acc,"
         "mean_test_acc,std_test_acc,mean_val_loss,std_val_loss,mean_test_loss,"
         "std_test_loss,A_T,std_A_T,delta,svm_acc,knn_acc\n";
  for (const auto& r : results) {
    out << r.n << ',' << topology_string(r.topology) << ',' << r.true_params << ',' << r.p2
        << ',' << r.p3 << ',' << format_double(r.val_accuracy.mean) << ','
        << format_double(r.val_accuracy.std) << ',' << format_double(r.test_accuracy.mean)
        << ',' << format_double(r.test_accuracy.std) << ',' << format_double(r.val_loss.mean)
        << ',' << format_double(r.val_loss.std) << ',' << format_double(r.test_loss.mean)
        << ',' << format_double(r.test_loss.std) << ',' << format_double(r.overall.mean)
        << ',' << format_double(r.overall.std) << ',' << format_double(r.delta) << ','
        << opt_double(r.svm_accuracy) << ',' << opt_double(r.knn_accuracy) << '\n';
  }
  finish(out, path);
}

void write_combos_csv(std::span<const RunResult> results, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "N,combo,val_acc,test_acc,val_loss,test_loss,best_epoch,epochs_run\n";
  for (const auto& r : results)
    for (std::size_t c = 0; c < r.combos.size(); ++c) {
      const auto& x = r.combos[c];
      out << r.n << ',' << c << ',' << format_double(x.val_accuracy) << ','
          << format_double(x.test_accuracy) << ',' << format_double(x.val_loss) << ','
          << format_double(x.test_loss) << ',' << x.best_epoch + 1 << ',' << x.epochs_run
          << '\n';
    }
  finish(out, path);
}

void write_confusion_csv(const ConfusionMatrix& cm, std::span<const std::string> labels,
                         const std::filesystem::path& path) {
  if (static_cast<int>(labels.size()) != cm.size())
    throw ReportError("confusion labels do not match the matrix size");
  auto out = open_out(path);
  out << "true\\predicted";
  for (const auto& l : labels) out << ',' << l;
  out << '\n';
  for (int t = 0; t < cm.size(); ++t) {
    out << labels[t];
    for (int p = 0; p < cm.size(); ++p) out << ',' << cm.count(t, p);
    out << '\n';
  }
  finish(out, path);
}

void write_oracle_csv(const OracleReport& report, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "state_id,class,fidelity,r1_clean,r2_clean,r3_clean,r1_noisy,r2_noisy,r3_noisy,"
         "tangle_clean,tangle_noisy,gme_true,gme_clean,gme_noisy,slocc_clean,slocc_noisy,"
         "gme_correct,slocc_correct\n";
  for (const auto& r : report.rows) {
    out << r.state_id << ',' << class_name(r.slocc_class) << ',' << format_double(r.fidelity)
        << ',' << ranks_string(r.clean_ranks) << ',' << ranks_string(r.noisy_ranks) << ','
        << format_double(r.clean_tangle) << ',' << format_double(r.noisy_tangle) << ','
        << r.gme_true << ',' << r.gme_clean << ',' << r.gme_noisy << ','
        << class_or_none(r.slocc_clean) << ',' << class_or_none(r.slocc_noisy) << ','
        << (r.gme_correct ? 1 : 0) << ',' << (r.slocc_correct ? 1 : 0) << '\n';
  }
  finish(out, path);
}

std::string sweep_summary(std::span<const RunResult> results) {
  std::ostringstream s;
  if (results.empty()) return s.str();
  s << "problem: " << problem_name(results.front().problem) << '\n'
    << "combos per N: " << results.front().combos.size() << '\n'
    << "A_T = 0.6 mean(val acc) + 0.4 mean(test acc); its spread uses sample standard\n"
    << "deviations across combos and delta = Pearson correlation of per-combo val/test\n"
    << "accuracy. P2/P3 follow the width-sum convention; true_params counts weights and\n"
    << "biases.\n\n";
  s << "N   topology   params  val_acc        test_acc       A_T            SVM    KNN\n";
  for (const auto& r : results) {
    char line[256];
    std::snprintf(line, sizeof line, "%-3d %-10s %-7zu %s+-%s  %s+-%s  %s+-%s  %-6s %-6s\n",
                  r.n, topology_string(r.topology).c_str(), r.true_params,
                  fixed(r.val_accuracy.mean).c_str(), fixed(r.val_accuracy.std).c_str(),
                  fixed(r.test_accuracy.mean).c_str(), fixed(r.test_accuracy.std).c_str(),
                  fixed(r.overall.mean).c_str(), fixed(r.overall.std).c_str(),
                  r.svm_accuracy ? fixed(*r.svm_accuracy).c_str() : "-",
                  r.knn_accuracy ? fixed(*r.knn_accuracy).c_str() : "-");
    s << line;
  }
  return s.str();
}

std::string oracle_summary(const OracleReport& report) {
  std::ostringstream s;
  s << "states: " << report.rows.size() << '\n'
    << "GME accuracy (clean): " << fixed(report.gme_accuracy_clean, 4) << '\n'
    << "SLOCC accuracy (clean): " << fixed(report.slocc_accuracy_clean, 4) << '\n'
    << "GME accuracy (noisy): " << fixed(report.gme_accuracy_noisy, 4) << '\n'
    << "SLOCC accuracy (noisy): " << fixed(report.slocc_accuracy_noisy, 4) << '\n';
  return s.str();
}

void emit_sweep_reports(std::span<const RunResult> results, const std::filesystem::path& out_dir) {
  if (results.empty()) throw ReportError("no sweep results to report");
  const Problem p = results.front().problem;
  for (const auto& r : results)
    if (r.problem != p) throw ReportError("sweep results mix problems");

  ensure_dir(out_dir);
  const std::string name = problem_name(p);
  write_sweep_csv(results, out_dir / (name + "_sweep.csv"));
  write_combos_csv(results, out_dir / (name + "_combos.csv"));
  const auto labels = class_labels(p);
  for (const auto& r : results)
    write_confusion_csv(r.test_confusion, labels,
                        out_dir / ("confusion_" + name + "_N" + std::to_string(r.n) + ".csv"));
  {
    const auto path = out_dir / ("summary_" + name + ".txt");
    auto out = open_out(path);
    out << sweep_summary(results);
    finish(out, path);
  }
  bool any_model = false;
  for (const auto& r : results) any_model = any_model || r.model.has_value();
  if (any_model) {
    ensure_dir(out_dir / "models");
    for (const auto& r : results)
      if (r.model)
        save_model(*r.model, out_dir / "models" / (name + "_N" + std::to_string(r.n) + ".model"));
  }
}

void emit_oracle_reports(const OracleReport& report, const std::filesystem::path& out_dir) {
  if (report.rows.empty()) throw ReportError("no oracle rows to report");
  ensure_dir(out_dir);
  write_oracle_csv(report, out_dir / "oracle_table.csv");
  write_confusion_csv(report.gme_confusion, class_labels(Problem::Gme),
                      out_dir / "confusion_oracle_gme.csv");
  write_confusion_csv(report.slocc_confusion, class_labels(Problem::Slocc),
                      out_dir / "confusion_oracle_slocc.csv");
  const auto path = out_dir / "oracle_summary.txt";
  auto out = open_out(path);
  out << oracle_summary(report);
  finish(out, path);
}

}  // namespace entclass
