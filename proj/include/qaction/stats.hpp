#pragma once

#include <cmath>
#include <span>

#include "qaction/error.hpp"

namespace qaction::stats {

struct OriginFit {
    double slope;
    double r2;  // 1 - SS_res / SS_tot, SS_tot taken about the mean of y
};

// Least squares y ~ slope * x through the origin.
inline OriginFit fit_through_origin(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("fit", "fit needs >= 2 paired samples");
    double sxy = 0.0, sxx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += x[i] * y[i];
        sxx += x[i] * x[i];
        my += y[i];
    }
    if (sxx == 0.0) throw DomainError("fit", "all abscissae are zero");
    my /= static_cast<double>(y.size());
    const double slope = sxy / sxx;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        ss_res += (y[i] - slope * x[i]) * (y[i] - slope * x[i]);
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    return {slope, ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0)};
}

inline double mean(std::span<const double> v) {
    if (v.empty()) throw DomainError("stats", "mean of empty sample");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// Sample standard deviation over the mean.
inline double coefficient_of_variation(std::span<const double> v) {
    if (v.size() < 2) throw DomainError("stats", "coefficient of variation needs >= 2 samples");
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1)) / std::abs(m);
}

// (max - min) / min
inline double relative_spread(std::span<const double> v) {
    if (v.empty()) throw DomainError("stats", "spread of empty sample");
    double lo = v[0], hi = v[0];
    for (double x : v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return (hi - lo) / std::abs(lo);
}

}  // namespace qaction::stats
