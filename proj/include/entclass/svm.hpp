// One-vs-rest linear SVM trained by deterministic full-batch sub-gradient
// descent on the hinge loss.
#pragma once

#include <span>
#include <vector>

#include "entclass/mlp.hpp"

namespace entclass {

struct SvmConfig {
  double c = 0.1;
  int passes = 2000;
};

struct LinearSvm {
  int n_classes = 0;
  int dim = 0;
  /// Row c holds w_c followed by b_c.
  std::vector<std::vector<double>> weights;

  double decision(int cls, std::span<const double> x) const;
};

/// Per class c, minimizes (1/2)|w_c|^2 + C sum max(0, 1 - y (w_c.x + b_c))
/// with y = +1 for class c and -1 otherwise. The bias is treated as the
/// weight of a constant feature 1, so it is regularized with w. Step size
/// 1/(lambda t) with lambda = 1/(C n), iterate projected onto the ball of
/// radius 1/sqrt(lambda). Labels must lie in 0..n_classes-1.
LinearSvm svm_train(const LabeledSet& train, int n_classes, const SvmConfig& config = {});

/// argmax of the decision values, smallest class index on ties. A binary
/// model (n_classes == 2) behaves the same way.
int svm_predict(const LinearSvm& model, std::span<const double> x);

}  // namespace entclass
