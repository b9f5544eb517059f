// Confusion matrices, summary statistics and the weighted combination of
// validation and test accuracy.
#pragma once

#include <span>
#include <vector>

namespace entclass {

class ConfusionMatrix {
 public:
  /// k x k zero counts, rows = true class, columns = predicted class.
  explicit ConfusionMatrix(int k);

  int size() const { return k_; }
  void add(int truth, int predicted);
  long count(int truth, int predicted) const;
  long total() const;
  long diagonal() const;

 private:
  int k_;
  std::vector<long> counts_;
};

/// Diagonal over total. Throws std::invalid_argument on an empty matrix.
double accuracy(const ConfusionMatrix& cm);

double mean(std::span<const double> xs);
/// Sample standard deviation (n - 1); 0 for fewer than two values.
double sample_std(std::span<const double> xs);
/// Pearson correlation; 0 when either series has zero spread.
double pearson(std::span<const double> xs, std::span<const double> ys);

struct SeriesStats {
  double mean = 0.0;
  double std = 0.0;
};

SeriesStats series_stats(std::span<const double> xs);

struct CombinedMetric {
  double mean = 0.0;
  double std = 0.0;
};

/// mean = 0.6 mu_v + 0.4 mu_t and
/// std^2 = 0.36 s_v^2 + 0.16 s_t^2 + 0.48 delta s_v s_t, clamped at 0.
CombinedMetric combine_metrics(const SeriesStats& val, const SeriesStats& test,
                               double delta);

}  // namespace entclass
