#include "entclass/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace entclass {

ConfusionMatrix::ConfusionMatrix(int k) : k_(k) {
  if (k < 2) throw std::invalid_argument("ConfusionMatrix: need at least two classes");
  counts_.assign(static_cast<std::size_t>(k) * k, 0);
}

void ConfusionMatrix::add(int truth, int predicted) {
  if (truth < 0 || truth >= k_ || predicted < 0 || predicted >= k_)
    throw std::out_of_range("ConfusionMatrix::add: class index out of range");
  ++counts_[truth * k_ + predicted];
}

long ConfusionMatrix::count(int truth, int predicted) const {
  return counts_.at(truth * k_ + predicted);
}

long ConfusionMatrix::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), 0L);
}

long ConfusionMatrix::diagonal() const {
  long d = 0;
  for (int i = 0; i < k_; ++i) d += counts_[i * k_ + i];
  return d;
}

double accuracy(const ConfusionMatrix& cm) {
  const long total = cm.total();
  if (total == 0) throw std::invalid_argument("accuracy: empty confusion matrix");
  return static_cast<double>(cm.diagonal()) / static_cast<double>(total);
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean: empty series");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_std(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("pearson: length mismatch");
  if (xs.size() < 2) return 0.0;
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

SeriesStats series_stats(std::span<const double> xs) { return {mean(xs), sample_std(xs)}; }

CombinedMetric combine_metrics(const SeriesStats& val, const SeriesStats& test,
                               double delta) {
  CombinedMetric out;
  out.mean = 0.6 * val.mean + 0.4 * test.mean;
  const double var = 0.36 * val.std * val.std + 0.16 * test.std * test.std +
                     0.48 * delta * val.std * test.std;
  out.std = std::sqrt(std::max(0.0, var));
  return out;
}

}  // namespace entclass
