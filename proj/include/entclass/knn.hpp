// Brute-force k-nearest-neighbour classification with Minkowski distance.
#pragma once

#include <span>

#include "entclass/mlp.hpp"

namespace entclass {

enum class KnnWeighting { Uniform, Distance };

/// Neighbours are ordered by distance, ties by training index. Uniform
/// weighting takes a majority vote; distance weighting votes with 1/d and
/// returns a neighbour's label outright when d == 0. Vote ties go to the
/// smallest label. p must be 1 or 2.
int knn_predict(const LabeledSet& train, std::span<const double> x, int k,
                KnnWeighting weighting, int p);

}  // namespace entclass
