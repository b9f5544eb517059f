#include "entclass/knn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace entclass {

int knn_predict(const LabeledSet& train, std::span<const double> x, int k,
                KnnWeighting weighting, int p) {
  if (train.size() == 0) throw std::invalid_argument("knn_predict: empty training set");
  if (k < 1 || static_cast<std::size_t>(k) > train.size())
    throw std::invalid_argument("knn_predict: k must be in 1..training size");
  if (p != 1 && p != 2) throw std::invalid_argument("knn_predict: p must be 1 or 2");
  if (static_cast<int>(x.size()) != train.dim)
    throw std::invalid_argument("knn_predict: feature width mismatch");

  std::vector<std::pair<double, std::size_t>> dist(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    const auto r = train.row(i);
    double d = 0.0;
    for (int j = 0; j < train.dim; ++j) {
      const double diff = std::abs(r[j] - x[j]);
      d += p == 1 ? diff : diff * diff;
    }
    dist[i] = {p == 1 ? d : std::sqrt(d), i};
  }
  std::partial_sort(dist.begin(), dist.begin() + k, dist.end());

  std::map<int, double> votes;
  for (int n = 0; n < k; ++n) {
    const auto [d, i] = dist[n];
    if (weighting == KnnWeighting::Distance) {
      if (d == 0.0) return train.y[i];
      votes[train.y[i]] += 1.0 / d;
    } else {
      votes[train.y[i]] += 1.0;
    }
  }
  // std::map iterates labels ascending, so strict > keeps the smallest on ties.
  int best = votes.begin()->first;
  double best_votes = votes.begin()->second;
  for (const auto& [label, v] : votes)
    if (v > best_votes) {
      best = label;
      best_votes = v;
    }
  return best;
}

}  // namespace entclass
