#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "qaction/evolution.hpp"

namespace qaction {

inline constexpr double kOrthogonalityThreshold = 1e-6;
inline constexpr double kPeakThreshold = 0.999;

namespace detail {

inline constexpr double kInvPhi = 0.6180339887498949;  // 1/golden ratio

// Minimiser of a unimodal f on [a, b], to relative precision `rel` in the abscissa.
inline std::pair<double, double> golden_min(const std::function<double(double)>& f, double a, double b, double rel) {
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    while (std::abs(b - a) > rel * std::max(std::abs(a) + std::abs(b), 1e-300) * 0.5) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
        if (b - a <= 0.0) break;
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

// First root of g in [a, b] given g(a) > 0 >= g(b).
inline double bisect(const std::function<double(double)>& g, double a, double b, double rel) {
    while (b - a > rel * std::abs(b)) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        (g(m) > 0.0 ? a : b) = m;
    }
    return b;
}

}  // namespace detail

// First time |<psi0|psi(t)>| drops to `threshold`, refined to relative precision 1e-9.
//
// A grid sample at or below threshold brackets the crossing directly. A grid
// local minimum above threshold may hide a dip between samples; when the trace
// can be re-evaluated exactly it is minimised by golden section and, if the dip
// reaches the threshold, bisected on its descending side.
inline std::optional<double> first_orthogonality_time(const EvolutionTrace& trace,
                                                      double threshold = kOrthogonalityThreshold) {
    if (!trace.valid)
        throw InvalidTrace("trace norm drift " + std::to_string(trace.max_norm_drift()) + " exceeds bound");
    const std::size_t n = trace.size();
    if (n == 0) return std::nullopt;

    std::function<double(double)> mag;
    if (trace.initial_overlap_at) mag = [&](double t) { return std::abs(trace.initial_overlap_at(t)); };
    auto grid = [&](std::size_t i) { return std::abs(trace.initial_overlap[i]); };
    constexpr double rel = 1e-9;

    if (grid(0) <= threshold) return trace.times[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (grid(i) <= threshold) {
            const double a = trace.times[i - 1], b = trace.times[i];
            if (!mag) {
                const double f = (grid(i - 1) - threshold) / (grid(i - 1) - grid(i));
                return a + f * (b - a);
            }
            return detail::bisect([&](double t) { return mag(t) - threshold; }, a, b, rel);
        }
        if (mag && i + 1 < n && grid(i) <= grid(i - 1) && grid(i) <= grid(i + 1)) {
            const double a = trace.times[i - 1], b = trace.times[i + 1];
            const auto [tmin, vmin] = detail::golden_min(mag, a, b, 1e-13);
            if (vmin <= threshold)
                return detail::bisect([&](double t) { return mag(t) - threshold; }, a, tmin, rel);
        }
    }
    return std::nullopt;
}

struct Peak {
    double t_star;
    double value;
};

// First local maximum of `prob` in [window.first, window.second] whose value
// exceeds 0.999: coarse scan then golden-section refinement.
inline Peak peak_time(const std::function<double(double)>& prob, std::pair<double, double> window,
                      std::size_t scan_points = 400, double threshold = kPeakThreshold) {
    const auto [lo, hi] = window;
    if (!(lo >= 0.0) || !(hi > lo)) throw DomainError("peak-window", "window must satisfy 0 <= lo < hi");
    scan_points = std::max<std::size_t>(scan_points, 400);
    std::vector<double> t(scan_points + 1), f(scan_points + 1);
    for (std::size_t i = 0; i <= scan_points; ++i) {
        t[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(scan_points);
        f[i] = prob(t[i]);
    }
    double observed = f[0];
    for (std::size_t i = 0; i <= scan_points; ++i) {
        observed = std::max(observed, f[i]);
        const bool left_ok = i == 0 || f[i] >= f[i - 1];
        const bool right_ok = i == scan_points || f[i] >= f[i + 1];
        if (!(left_ok && right_ok)) continue;
        const double a = i == 0 ? t[0] : t[i - 1];
        const double b = i == scan_points ? t[scan_points] : t[i + 1];
        auto [ts, v] = detail::golden_min([&](double x) { return -prob(x); }, a, b, 1e-8);
        v = -v;
        if (f[i] > v) {
            ts = t[i];
            v = f[i];
        }
        observed = std::max(observed, v);
        if (v > threshold) return {ts, v};
    }
    throw NoFlip(observed, "no local maximum above " + std::to_string(threshold) + " in window; observed max " +
                               std::to_string(observed));
}

}  // namespace qaction
