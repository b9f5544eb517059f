#include "entclass/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "entclass/rng.hpp"
#include "entclass/svm.hpp"

namespace entclass {

const char* problem_name(Problem p) { return p == Problem::Gme ? "gme" : "slocc"; }

std::optional<Problem> problem_from_name(std::string_view name) {
  if (name == "gme") return Problem::Gme;
  if (name == "slocc") return Problem::Slocc;
  return std::nullopt;
}

Target problem_target(Problem p) { return p == Problem::Gme ? Target::Gme : Target::Slocc; }

int problem_classes(Problem p) { return p == Problem::Gme ? 2 : kNumClasses; }

Mlp make_model(Problem p, int n_inputs) {
  return p == Problem::Gme ? Mlp::gme(n_inputs) : Mlp::slocc(n_inputs);
}

TrainConfig default_train_config(Problem p) {
  return p == Problem::Gme ? TrainConfig::gme() : TrainConfig::slocc();
}

KnnSettings default_knn(Problem p) {
  if (p == Problem::Gme) return {18, KnnWeighting::Uniform, 1};
  return {20, KnnWeighting::Distance, 2};
}

namespace {

int problem_label(SloccClass c, Problem p) {
  return p == Problem::Gme ? (is_gme(c) ? 1 : 0) : class_code(c);
}

void check_n(int n) {
  if (n < 1 || n > kNumFeatures)
    throw std::out_of_range("feature count must be in 1..18, got " + std::to_string(n));
}

}  // namespace

LabeledSet make_labeled_set(std::span<const DatasetRow> rows, const FeatureRanking& ranking,
                            int n, Problem p) {
  check_n(n);
  LabeledSet set;
  set.dim = n;
  set.x.reserve(rows.size() * n);
  set.y.reserve(rows.size());
  for (const auto& row : rows)
    set.push_back(select_top_n(extract_features18(row), ranking, n),
                  problem_label(row.slocc_class(), p));
  return set;
}

LabeledSet make_labeled_set(const std::vector<EvalState>& states,
                            const FeatureRanking& ranking, int n, Problem p,
                            std::span<const std::size_t> indices) {
  check_n(n);
  LabeledSet set;
  set.dim = n;
  for (std::size_t i : indices) {
    const auto& s = states.at(i);
    set.push_back(select_top_n(extract_features18(s.noisy), ranking, n),
                  problem_label(s.slocc_class, p));
  }
  return set;
}

LabeledSet make_labeled_set(const std::vector<EvalState>& states,
                            const FeatureRanking& ranking, int n, Problem p) {
  std::vector<std::size_t> all(states.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return make_labeled_set(states, ranking, n, p, all);
}

void aggregate(RunResult& r) {
  if (r.combos.empty()) throw std::invalid_argument("aggregate: no combo results");
  std::vector<double> va, ta, vl, tl;
  for (const auto& c : r.combos) {
    va.push_back(c.val_accuracy);
    ta.push_back(c.test_accuracy);
    vl.push_back(c.val_loss);
    tl.push_back(c.test_loss);
  }
  r.val_accuracy = series_stats(va);
  r.test_accuracy = series_stats(ta);
  r.val_loss = series_stats(vl);
  r.test_loss = series_stats(tl);
  r.delta = pearson(va, ta);
  r.overall = combine_metrics(r.val_accuracy, r.test_accuracy, r.delta);
}

namespace {

struct Job {
  std::size_t run;  // index into the result vector
  int n;
  std::size_t combo;
};

struct JobOutput {
  ComboResult result;
  std::vector<int> test_truth;
  std::vector<int> test_pred;
  std::optional<Mlp> model;
};

template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<RunResult> run_sweep(Problem problem, const std::vector<EvalState>& eval_set,
                                 std::span<const DatasetRow> train_rows,
                                 const FeatureRanking& ranking, const SplitPlan& plan,
                                 const SweepConfig& config) {
  check_n(config.n_min);
  check_n(config.n_max);
  if (config.n_min > config.n_max) throw std::invalid_argument("run_sweep: empty N range");
  if (plan.combos.empty()) throw std::invalid_argument("run_sweep: empty split plan");
  if (train_rows.empty()) throw std::invalid_argument("run_sweep: empty training set");
  if (eval_set.empty()) throw std::invalid_argument("run_sweep: empty evaluation set");

  const TrainConfig base = config.train.value_or(default_train_config(problem));
  base.validate();
  const int classes = problem_classes(problem);

  std::vector<RunResult> results;
  std::vector<LabeledSet> train_sets;
  std::vector<Job> jobs;
  for (int n = config.n_min; n <= config.n_max; ++n) {
    RunResult r;
    r.problem = problem;
    r.n = n;
    const Mlp shape = make_model(problem, n);
    r.topology = shape.layer_sizes();
    r.true_params = true_param_count(shape);
    r.p2 = width_sum_hidden(shape);
    r.p3 = width_sum_output(shape);
    r.test_confusion = ConfusionMatrix(classes);
    r.combos.resize(plan.combos.size());
    results.push_back(std::move(r));
    train_sets.push_back(make_labeled_set(train_rows, ranking, n, problem));
    for (std::size_t c = 0; c < plan.combos.size(); ++c)
      jobs.push_back({results.size() - 1, n, c});
  }

  std::vector<JobOutput> outputs(jobs.size());
  parallel_for(jobs.size(), config.threads, [&](std::size_t j) {
    const Job& job = jobs[j];
    const auto& combo = plan.combos[job.combo];
    const std::uint64_t job_seed =
        derive_seed({config.seed, static_cast<std::uint64_t>(problem),
                     static_cast<std::uint64_t>(job.n), job.combo});
    const LabeledSet val = make_labeled_set(eval_set, ranking, job.n, problem, combo.validation);
    const LabeledSet test = make_labeled_set(eval_set, ranking, job.n, problem, combo.test);

    Mlp model = make_model(problem, job.n);
    model.init_glorot(derive_seed({job_seed, 1}));
    TrainConfig tc = base;
    tc.seed = derive_seed({job_seed, 2});
    auto trained = train(std::move(model), train_sets[job.run], val, tc);

    JobOutput& out = outputs[j];
    const auto v = evaluate(trained.model, val);
    const auto t = evaluate(trained.model, test);
    out.result = {v.accuracy, t.accuracy, v.loss, t.loss, trained.history.best_epoch,
                  static_cast<int>(trained.history.epochs.size())};
    for (std::size_t i = 0; i < test.size(); ++i) {
      out.test_truth.push_back(test.y[i]);
      out.test_pred.push_back(trained.model.predict(test.row(i)));
    }
    if (job.combo == 0) out.model = std::move(trained.model);
  });

  // Ordered reduction.
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    RunResult& r = results[jobs[j].run];
    r.combos[jobs[j].combo] = outputs[j].result;
    for (std::size_t i = 0; i < outputs[j].test_truth.size(); ++i)
      r.test_confusion.add(outputs[j].test_truth[i], outputs[j].test_pred[i]);
    if (outputs[j].model) r.model = std::move(outputs[j].model);
  }
  for (auto& r : results) aggregate(r);

  if (config.baselines) {
    parallel_for(results.size(), config.threads, [&](std::size_t i) {
      RunResult& r = results[i];
      const LabeledSet all = make_labeled_set(eval_set, ranking, r.n, problem);
      const auto knn = default_knn(problem);
      const LinearSvm svm = svm_train(train_sets[i], classes, SvmConfig{kSvmC, 2000});
      int svm_ok = 0, knn_ok = 0;
      for (std::size_t s = 0; s < all.size(); ++s) {
        svm_ok += svm_predict(svm, all.row(s)) == all.y[s];
        knn_ok += knn_predict(train_sets[i], all.row(s), knn.k, knn.weighting, knn.p) == all.y[s];
      }
      r.svm_accuracy = static_cast<double>(svm_ok) / static_cast<double>(all.size());
      r.knn_accuracy = static_cast<double>(knn_ok) / static_cast<double>(all.size());
    });
  }
  return results;
}

}  // namespace entclass
