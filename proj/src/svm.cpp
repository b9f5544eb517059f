#include "entclass/svm.hpp"

#include <cmath>
#include <stdexcept>

namespace entclass {

double LinearSvm::decision(int cls, std::span<const double> x) const {
  const auto& w = weights.at(cls);
  double s = w[dim];
  for (int j = 0; j < dim; ++j) s += w[j] * x[j];
  return s;
}

LinearSvm svm_train(const LabeledSet& train, int n_classes, const SvmConfig& config) {
  if (n_classes < 2) throw std::invalid_argument("svm_train: need at least two classes");
  if (!(config.c > 0.0) || config.passes < 1)
    throw std::invalid_argument("svm_train: C and passes must be positive");
  std::vector<int> counts(n_classes, 0);
  for (int y : train.y) {
    if (y < 0 || y >= n_classes) throw std::invalid_argument("svm_train: label out of range");
    ++counts[y];
  }
  int present = 0;
  for (int c : counts) present += c > 0;
  if (present < 2) throw std::invalid_argument("svm_train: single-class training set");

  const std::size_t n = train.size();
  const int dim = train.dim;
  const double lambda = 1.0 / (config.c * static_cast<double>(n));
  const double radius = 1.0 / std::sqrt(lambda);

  LinearSvm model{n_classes, dim, {}};
  std::vector<double> step(dim + 1);
  for (int cls = 0; cls < n_classes; ++cls) {
    std::vector<double> w(dim + 1, 0.0);
    for (int t = 1; t <= config.passes; ++t) {
      std::fill(step.begin(), step.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const auto x = train.row(i);
        const double y = train.y[i] == cls ? 1.0 : -1.0;
        double m = w[dim];
        for (int j = 0; j < dim; ++j) m += w[j] * x[j];
        if (y * m < 1.0) {
          for (int j = 0; j < dim; ++j) step[j] += y * x[j];
          step[dim] += y;
        }
      }
      // w <- w - eta (lambda w - (1/n) sum y x), eta = 1/(lambda t).
      const double shrink = 1.0 - 1.0 / static_cast<double>(t);
      const double scale = 1.0 / (lambda * static_cast<double>(t) * static_cast<double>(n));
      double norm2 = 0.0;
      for (int j = 0; j <= dim; ++j) {
        w[j] = shrink * w[j] + scale * step[j];
        norm2 += w[j] * w[j];
      }
      if (norm2 > radius * radius) {
        const double f = radius / std::sqrt(norm2);
        for (double& v : w) v *= f;
      }
    }
    model.weights.push_back(std::move(w));
  }
  return model;
}

int svm_predict(const LinearSvm& model, std::span<const double> x) {
  if (static_cast<int>(x.size()) != model.dim)
    throw std::invalid_argument("svm_predict: feature width mismatch");
  int best = 0;
  double best_v = model.decision(0, x);
  for (int c = 1; c < model.n_classes; ++c) {
    const double v = model.decision(c, x);
    if (v > best_v) {
      best = c;
      best_v = v;
    }
  }
  return best;
}

}  // namespace entclass
