// Acceptance checks 1-11. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Every random draw descends from kMaster.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "entclass/entangle.hpp"
#include "entclass/featsel.hpp"
#include "entclass/knn.hpp"
#include "entclass/metrics.hpp"
#include "entclass/mlp.hpp"
#include "entclass/splits.hpp"
#include "entclass/svm.hpp"
#include "entclass/sweep.hpp"
#include "oracles.hpp"

using namespace entclass;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kMaster = 1;
constexpr std::uint64_t kSplitTag = 0x73706c74;  // same tag as the CLI

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

DensityMatrix canonical_density(std::array<double, 5> l) {
  double n = 0.0;
  for (double v : l) n += v * v;
  for (double& v : l) v /= std::sqrt(n);
  return density_from_ket(ket_from_canonical(CanonicalCoefficients(l, 0.0, SloccClass::SEP)));
}

void criterion1() {
  const auto t0 = Clock::now();
  Rng rng(derive_seed({kMaster, 1}));
  int hits = 0, total = 0;
  for (auto cls : kAllClasses)
    for (int i = 0; i < 100; ++i) {
      const auto rho = density_from_ket(ket_from_canonical(sample_class_coefficients(cls, rng)));
      hits += slocc_oracle(rho, 1e-10, 1e-6) == cls;
      ++total;
    }
  const double secs = seconds_since(t0);
  report(1, hits == total && secs < 30.0,
         fmt("oracle matched %.0f/%.0f clean states in %.2f s", hits, total, secs));
}

void criterion2() {
  struct Row {
    RankTriple ranks;
    RankClass cls;
  };
  const Row table[] = {{{3, 3, 3}, RankClass::GME}, {{2, 2, 2}, RankClass::GME},
                       {{1, 3, 3}, RankClass::BS1}, {{3, 1, 3}, RankClass::BS2},
                       {{3, 3, 1}, RankClass::BS3}, {{1, 1, 1}, RankClass::SEP}};
  int rows_ok = 0;
  for (const auto& r : table) rows_ok += classify_by_ranks(r.ranks) == r.cls;

  const auto ghz = canonical_density({1, 0, 0, 0, 1});
  const auto w = canonical_density({1, 0, 1, 1, 0});
  const auto ghz_bf = oracle::tensor_ranks(ghz.entries(), 1e-10);
  const auto w_bf = oracle::tensor_ranks(w.entries(), 1e-10);
  const bool ghz_ok = ghz_bf == std::array<int, 3>{2, 2, 2} &&
                      correlation_ranks(ghz, 1e-10) == RankTriple{2, 2, 2};
  const bool w_ok = w_bf == std::array<int, 3>{3, 3, 3} &&
                    correlation_ranks(w, 1e-10) == RankTriple{3, 3, 3};
  report(2, rows_ok == 6 && ghz_ok && w_ok,
         fmt("%.0f/6 rank-table rows, GHZ (2,2,2) %.0f, W (3,3,3) %.0f", rows_ok, ghz_ok, w_ok));
}

void criterion3() {
  const double tau_ghz = three_tangle(canonical_density({1, 0, 0, 0, 1}));
  Rng rng(derive_seed({kMaster, 3}));
  double worst = 0.0;
  for (auto cls : kAllClasses) {
    if (cls == SloccClass::GHZ) continue;
    for (int i = 0; i < 200; ++i) {
      const auto rho = density_from_ket(ket_from_canonical(sample_class_coefficients(cls, rng)));
      worst = std::max(worst, std::abs(three_tangle(rho)));
    }
  }
  report(3, std::abs(tau_ghz - 1.0) <= 1e-12 && worst <= 1e-12,
         fmt("GHZ tangle %.15f, largest non-GHZ tangle %.3g", tau_ghz, worst));
}

int feature_index(const std::string& name) {
  for (int f = 0; f < kNumFeatures; ++f)
    if (feature_name(f) == name) return f;
  return -1;
}

void criterion4() {
  const int re07 = feature_index("Re_rho_07");
  const std::set<int> core{re07, feature_index("Re_rho_06"), feature_index("Re_rho_05")};
  int contains = 0, first_both = 0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    const auto rows = build_training_dataset(200, derive_seed({kMaster, 4, std::uint64_t(s)}));
    const auto slocc = anova_ranking(rows, Target::Slocc);
    const auto gme = anova_ranking(rows, Target::Gme);
    const std::set<int> top6(slocc.order.begin(), slocc.order.begin() + 6);
    contains += std::includes(top6.begin(), top6.end(), core.begin(), core.end());
    first_both += slocc.order[0] == re07 && gme.order[0] == re07;
  }
  const bool ok = contains >= 18 && first_both >= 18;
  report(4, ok,
         fmt("SLOCC top-6 holds Re07/Re06/Re05 in %.0f/20 seeds, Re07 first for both in %.0f/20",
             contains, first_both));
}

void criterion5() {
  Rng rng(derive_seed({kMaster, 5}));
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const bool sig = trial % 2 == 0;
    const int n_in = 1 + static_cast<int>(rng.below(4));
    Mlp m = sig ? Mlp::gme(n_in) : Mlp({n_in, 3, 4}, OutputActivation::Softmax);
    for (double& p : m.params()) p = rng.normal() * 0.5;
    LabeledSet data;
    data.dim = n_in;
    for (int i = 0; i < 8; ++i) {
      std::vector<double> x(n_in);
      for (double& v : x) v = rng.normal();
      data.push_back(x, static_cast<int>(rng.below(sig ? 2 : 4)));
    }
    const auto lg = backward(m, data);
    const auto fd = oracle::numeric_gradient(m, data, 1e-6);
    worst = std::max(worst, oracle::relative_error(lg.grad, fd));
  }
  report(5, worst < 1e-5, fmt("largest relative gradient error over 20 models %.3g", worst));
}

struct SweepInputs {
  std::vector<DatasetRow> train;
  std::vector<EvalState> eval;
};

const SweepInputs& sweep_inputs() {
  static const SweepInputs in{build_training_dataset(2000, kMaster), build_eval_set(5, kMaster)};
  return in;
}

void reproduction(int id, Problem problem, int n, double threshold, double limit_s) {
  const auto t0 = Clock::now();
  const auto& in = sweep_inputs();
  const auto ranking = anova_ranking(in.train, problem_target(problem));
  const auto plan = sample_splits(in.eval, 100, derive_seed({kMaster, kSplitTag}));
  SweepConfig cfg;
  cfg.n_min = n;
  cfg.n_max = n;
  cfg.seed = kMaster;
  const auto res = run_sweep(problem, in.eval, in.train, ranking, plan, cfg);
  const double secs = seconds_since(t0);
  const auto& r = res.at(0);
  std::string topo;
  for (std::size_t i = 0; i < r.topology.size(); ++i)
    topo += (i ? "x" : "") + std::to_string(r.topology[i]);
  report(id, r.overall.mean >= threshold && secs < limit_s,
         std::string(problem_name(problem)) + " N=" + std::to_string(n) + " (" + topo + ") " +
             fmt("A_T %.4f +- %.4f (val %.4f, test %.4f)", r.overall.mean, r.overall.std,
                 r.val_accuracy.mean, r.test_accuracy.mean) +
             fmt(", need >= %.2f; %.1f s", threshold, secs));
}

void criterion8() {
  const auto& in = sweep_inputs();
  const auto ranking = anova_ranking(in.train, Target::Gme);
  const auto held_out = build_training_dataset(200, derive_seed({kMaster, 8}));
  const auto tr = make_labeled_set(std::span<const DatasetRow>(in.train), ranking, 4, Problem::Gme);
  const auto te = make_labeled_set(std::span<const DatasetRow>(held_out), ranking, 4, Problem::Gme);

  int knn_hits = 0;
  for (std::size_t i = 0; i < te.size(); ++i)
    knn_hits += knn_predict(tr, te.row(i), 18, KnnWeighting::Uniform, 1) == te.y[i];
  const auto svm = svm_train(tr, 2, SvmConfig{0.1, 2000});
  int svm_hits = 0;
  for (std::size_t i = 0; i < te.size(); ++i) svm_hits += svm_predict(svm, te.row(i)) == te.y[i];

  const double knn = knn_hits / static_cast<double>(te.size());
  const double s = svm_hits / static_cast<double>(te.size());
  report(8, knn >= 0.95 && s >= 0.90,
         fmt("clean held-out GME accuracy at N=4: KNN %.4f (need >= 0.95), SVM %.4f (need >= 0.90)",
             knn, s));
}

void criterion9() {
  double worst = 0.0;
  auto track = [&](double got, double want) { worst = std::max(worst, std::abs(got - want)); };

  ConfusionMatrix cm(6);
  for (int i = 0; i < 27; ++i) cm.add(i % 6, i % 6);
  for (int i = 0; i < 3; ++i) cm.add(2, 4);
  track(accuracy(cm), 0.9);

  const auto a = combine_metrics({0.9, 0.0}, {0.8, 0.0}, 0.0);
  track(a.mean, 0.86);
  track(a.std, 0.0);
  const auto b = combine_metrics({0.5, 0.1}, {0.5, 0.1}, 0.0);
  track(b.std, std::sqrt(0.0052));
  const auto c = combine_metrics({0.8, 0.07}, {0.6, 0.07}, 1.0);
  track(c.std, 0.07);
  track(c.mean, 0.72);

  const std::vector<double> v{0.9, 0.8, 1.0, 0.7}, t{0.75, 0.5, 1.0, 0.5};
  track(mean(v), 0.85);
  track(sample_std(v), std::sqrt(0.05 / 3.0));
  // Hand values: sum (v - 0.85)(t - 0.6875) = 0.0875, sum (t - 0.6875)^2 = 0.171875.
  track(pearson(v, t), 0.0875 / std::sqrt(0.05 * 0.171875));
  report(9, worst <= 1e-12, fmt("largest deviation from hand-computed fixtures %.3g", worst));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool run(const std::string& args) {
  const std::string cmd = std::string("\"") + ENTCLASS_CLI_PATH + "\" " + args + " > /dev/null";
  return std::system(cmd.c_str()) == 0;
}

bool pipeline(const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string d = "\"" + dir.string() + "\"";
  const std::string s = " --seed 1";
  return run("gen-train" + s + " --per-class 300 --out " + d + "/train.csv") &&
         run("gen-eval" + s + " --out " + d + "/eval.csv") &&
         run("anova" + s + " --train " + d + "/train.csv --target gme --out " + d +
             "/ranking_gme.csv") &&
         run("sweep" + s + " --problem gme --train " + d + "/train.csv --eval " + d +
             "/eval.csv --ranking " + d + "/ranking_gme.csv --combos 6 --n-min 3 --n-max 5" +
             " --epochs 15 --threads 2 --out " + d + "/sweep") &&
         run("oracle" + s + " --eval " + d + "/eval.csv --out " + d + "/oracle");
}

void criterion10() {
  const fs::path root = fs::temp_directory_path() / "entclass_acceptance_determinism";
  const bool ran = pipeline(root / "a") && pipeline(root / "b");
  std::size_t files = 0, identical = 0;
  bool has_model = false;
  if (ran) {
    for (const auto& e : fs::recursive_directory_iterator(root / "a")) {
      if (!e.is_regular_file()) continue;
      ++files;
      const auto rel = fs::relative(e.path(), root / "a");
      has_model |= rel.extension() == ".model";
      const auto other = root / "b" / rel;
      identical += fs::exists(other) && slurp(e.path()) == slurp(other);
    }
  }
  report(10, ran && files > 0 && identical == files && has_model,
         fmt("%.0f/%.0f output files byte-identical across two runs (models included: %.0f)",
             identical, files, has_model));
}

void criterion11() {
  const auto& ev = sweep_inputs().eval;
  double lo = 1.0, hi = 0.0, drift = 0.0;
  for (const auto& s : ev) {
    lo = std::min(lo, s.fidelity);
    hi = std::max(hi, s.fidelity);
    drift = std::max(drift, std::abs(fidelity(s.noisy, s.clean) - s.fidelity));
  }
  report(11, lo >= 0.87 && hi <= 0.98 && drift <= 1e-9,
         fmt("%.0f states, fidelities in [%.4f, %.4f], largest recomputation gap %.3g",
             static_cast<double>(ev.size()), lo, hi, drift));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> checks = {
      criterion1,
      criterion2,
      criterion3,
      criterion4,
      criterion5,
      [] { reproduction(6, Problem::Gme, 4, 0.85, 600.0); },
      [] { reproduction(7, Problem::Slocc, 6, 0.70, 900.0); },
      criterion8,
      criterion9,
      criterion10,
      criterion11,
  };
  for (std::size_t i = 0; i < checks.size(); ++i) {
    try {
      checks[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i) + 1, false, std::string("threw: ") + e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, checks.size());
  return failures == 0 ? 0 : 1;
}
