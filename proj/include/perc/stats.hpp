// Mergeable trial statistics and log-log power-law fits.
#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace perc {

// Count / mean / sum of squared deviations in Welford form. merged() uses
// the exact pooled update, so combining partial results is associative up to
// floating round-off regardless of split.
class RunningStats {
  public:
    void add(double x);
    static RunningStats merged(const RunningStats& a, const RunningStats& b);

    long count() const { return count_; }
    double mean() const { return mean_; }
    double sum_squared_deviations() const { return m2_; }
    double variance() const {  // sample variance
        return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
    }
    double stddev() const;
    double stderror() const;
    double min() const { return min_; }
    double max() const { return max_; }

  private:
    long count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double min_ = std::numeric_limits<double>::infinity();
    double max_ = -std::numeric_limits<double>::infinity();
};

// Stats tied to the estimator that produced them; merging mismatched
// statistics is rejected.
struct NamedStats {
    std::string statistic;
    RunningStats stats;
};
NamedStats merge_statistics(const NamedStats& a, const NamedStats& b);

struct FitPoint {
    double n = 0.0;
    double value = 0.0;
    double stderror = 0.0;  // carried through for reporting
};

// Ordinary least squares on (log n, log value).
struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<double, double>> points;  // (log n, log value)
};

ExponentFit fit_exponent(const std::vector<FitPoint>& points);

}  // namespace perc
