#include "perc/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace perc {

void RunningStats::add(double x) {
    ++count_;
    double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
    if (x < min_) min_ = x;
    if (x > max_) max_ = x;
}

RunningStats RunningStats::merged(const RunningStats& a,
                                  const RunningStats& b) {
    if (a.count_ == 0) return b;
    if (b.count_ == 0) return a;
    RunningStats out;
    out.count_ = a.count_ + b.count_;
    double delta = b.mean_ - a.mean_;
    double na = static_cast<double>(a.count_), nb = static_cast<double>(b.count_);
    out.mean_ = a.mean_ + delta * nb / (na + nb);
    out.m2_ = a.m2_ + b.m2_ + delta * delta * na * nb / (na + nb);
    out.min_ = std::min(a.min_, b.min_);
    out.max_ = std::max(a.max_, b.max_);
    return out;
}

double RunningStats::stddev() const { return std::sqrt(variance()); }

double RunningStats::stderror() const {
    return count_ > 0 ? stddev() / std::sqrt(static_cast<double>(count_))
                      : 0.0;
}

NamedStats merge_statistics(const NamedStats& a, const NamedStats& b) {
    if (a.statistic != b.statistic)
        throw std::invalid_argument("cannot merge stats of different statistics: " +
                                    a.statistic + " vs " + b.statistic);
    return {a.statistic, RunningStats::merged(a.stats, b.stats)};
}

ExponentFit fit_exponent(const std::vector<FitPoint>& points) {
    if (points.size() < 3)
        throw std::invalid_argument("exponent fit needs at least 3 points");
    ExponentFit fit;
    for (const FitPoint& pt : points) {
        if (pt.n <= 0.0 || pt.value <= 0.0)
            throw std::invalid_argument(
                "exponent fit needs positive sizes and values");
        fit.points.emplace_back(std::log(pt.n), std::log(pt.value));
    }
    const double m = static_cast<double>(fit.points.size());
    double sx = 0, sy = 0;
    for (auto [x, y] : fit.points) {
        sx += x;
        sy += y;
    }
    const double xbar = sx / m, ybar = sy / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (auto [x, y] : fit.points) {
        sxx += (x - xbar) * (x - xbar);
        sxy += (x - xbar) * (y - ybar);
        syy += (y - ybar) * (y - ybar);
    }
    if (sxx == 0.0) throw std::invalid_argument("degenerate fit abscissae");
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    double ss_res = 0;
    for (auto [x, y] : fit.points) {
        double r = y - (fit.intercept + fit.slope * x);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    const double dof = m - 2.0;
    fit.slope_stderr = dof > 0.0 ? std::sqrt((ss_res / dof) / sxx) : 0.0;
    return fit;
}

}  // namespace perc
