#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qaction/spectral.hpp"

namespace qaction {

inline constexpr double kTraceDriftBound = 1e-8;

struct EvolutionTrace {
    std::vector<double> times;
    std::vector<cplx> target_overlap;   // <target|psi(t)>
    std::vector<cplx> initial_overlap;  // <psi0|psi(t)>
    std::vector<std::vector<double>> populations;  // empty unless requested
    std::vector<double> norm_drift;
    bool valid = true;
    Vec final_state;

    // Exact re-evaluation between grid points; only static traces provide these.
    std::function<cplx(double)> target_overlap_at;
    std::function<cplx(double)> initial_overlap_at;

    std::size_t size() const { return times.size(); }

    double max_norm_drift() const {
        double m = 0.0;
        for (double d : norm_drift) m = std::max(m, d);
        return m;
    }
};

struct EvolveOptions {
    std::optional<StateVector> target;  // defaults to the initial state
    bool record_populations = false;
    std::size_t cap = kDefaultFullSpaceCap;
};

// 0, h/(count-1), ..., horizon
inline std::vector<double> uniform_times(double horizon, std::size_t count) {
    if (count < 2 || !(horizon > 0.0)) throw DomainError("time-grid", "need horizon > 0 and at least 2 points");
    std::vector<double> t(count);
    for (std::size_t i = 0; i < count; ++i) t[i] = horizon * static_cast<double>(i) / static_cast<double>(count - 1);
    return t;
}

namespace detail {

inline void check_time_grid(const std::vector<double>& times) {
    if (times.empty() || times.front() != 0.0) throw DomainError("time-grid", "trace times must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw DomainError("time-grid", "trace times must be strictly increasing");
}

inline void record(EvolutionTrace& tr, double t, const Vec& psi, const Vec& psi0, const Vec& target, bool pops) {
    tr.times.push_back(t);
    tr.target_overlap.push_back(target.dot(psi));
    tr.initial_overlap.push_back(psi0.dot(psi));
    const double drift = std::abs(psi.squaredNorm() - 1.0);
    tr.norm_drift.push_back(drift);
    if (drift > kTraceDriftBound) tr.valid = false;
    if (pops) {
        std::vector<double> p(static_cast<std::size_t>(psi.size()));
        for (Eigen::Index k = 0; k < psi.size(); ++k) p[static_cast<std::size_t>(k)] = std::norm(psi(k));
        tr.populations.push_back(std::move(p));
    }
}

}  // namespace detail

// Exact evolution psi(t) = sum_k e^{-i l_k t} P_k psi0 from the spectral decomposition.
inline EvolutionTrace evolve_static(const StateVector& psi0, const HamiltonianSpec& h, const std::vector<double>& times,
                                    const EvolveOptions& opt = {}) {
    if (h.is_driven()) throw WrongVariant("evolve_static needs a static Hamiltonian");
    if (psi0.dim() != h.dim()) throw DimensionMismatch("initial state dim != Hamiltonian dim");
    if (opt.target) require_same_space(psi0, *opt.target);
    detail::check_time_grid(times);

    auto spectrum = std::make_shared<const Spectrum>(Spectrum::of(h, opt.cap));
    const Vec& x0 = psi0.amplitudes();
    const Vec target = opt.target ? opt.target->amplitudes() : x0;

    EvolutionTrace tr;
    for (double t : times) {
        Vec psi = spectrum->evolve(x0, t);
        detail::record(tr, t, psi, x0, target, opt.record_populations);
        if (t == times.back()) tr.final_state = std::move(psi);
    }
    tr.target_overlap_at = spectrum->overlap_series(target, x0);
    tr.initial_overlap_at = spectrum->overlap_series(x0, x0);
    return tr;
}

// Single-time convenience: psi(t) as a state (not renormalised beyond construction).
inline StateVector evolve_state(const StateVector& psi0, const HamiltonianSpec& h, double t,
                                std::size_t cap = kDefaultFullSpaceCap) {
    if (psi0.dim() != h.dim()) throw DimensionMismatch("initial state dim != Hamiltonian dim");
    return {Spectrum::of(h, cap).evolve(psi0.amplitudes(), t), psi0.basis()};
}

struct StepControl {
    double dt = 0.0;
    std::size_t record_every = 1;
    std::size_t min_steps_per_period = 40;
    std::size_t max_cached_unitaries = 4096;
};

// max(drive frequency, spectral radius of H0 + V)
inline double fastest_scale(const HamiltonianSpec& driven) {
    const Driven& d = driven.as_driven();
    const Mat h = d.static_part->to_dense() + d.perturbation->to_dense();
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    const double radius = es.eigenvalues().cwiseAbs().maxCoeff();
    return std::max(d.drive_frequency, radius);
}

// Step control meeting the resolution rule. When the drive is on, dt divides
// the drive period exactly so per-phase step unitaries can be reused.
inline StepControl resolve_steps(const HamiltonianSpec& driven, std::size_t steps_per_period = 40,
                                 std::size_t record_every = 1) {
    const double omega = driven.as_driven().drive_frequency;
    const double scale = fastest_scale(driven);
    StepControl sc;
    sc.record_every = record_every;
    sc.min_steps_per_period = 40;
    if (!(scale > 0.0)) {
        sc.dt = 1.0;
        return sc;
    }
    const double per = static_cast<double>(std::max<std::size_t>(steps_per_period, 40));
    if (omega > 0.0) {
        const auto m = static_cast<std::size_t>(std::ceil(per * scale / omega - 1e-9));
        sc.dt = 2.0 * std::numbers::pi / (omega * static_cast<double>(m));
    } else {
        sc.dt = 2.0 * std::numbers::pi / (per * scale);
    }
    return sc;
}

// Midpoint exponential stepping: psi <- exp(-i H(t + dt/2) dt) psi, no renormalisation.
inline EvolutionTrace evolve_driven(const StateVector& psi0, const HamiltonianSpec& h, double horizon,
                                    const StepControl& sc, const EvolveOptions& opt = {}) {
    const Driven& d = h.as_driven();
    if (psi0.dim() != h.dim()) throw DimensionMismatch("initial state dim != Hamiltonian dim");
    if (opt.target) require_same_space(psi0, *opt.target);
    if (h.dim() > opt.cap) throw OverCap("driven evolution dim exceeds the full-space cap");
    if (!(horizon > 0.0)) throw DomainError("horizon", "horizon must be positive");
    if (!(sc.dt > 0.0) || sc.record_every == 0) throw StepResolution("dt must be positive, record_every >= 1");

    const double scale = fastest_scale(h);
    const double max_dt = 2.0 * std::numbers::pi / (static_cast<double>(sc.min_steps_per_period) * scale);
    if (sc.min_steps_per_period < 40 || (scale > 0.0 && sc.dt > max_dt * (1.0 + 1e-12)))
        throw StepResolution("dt = " + std::to_string(sc.dt) + " gives fewer than 40 steps per period of the fastest scale " +
                             std::to_string(scale));

    const Mat h0 = d.static_part->to_dense();
    const Mat v = d.perturbation->to_dense();
    const double omega = d.drive_frequency;
    const double dt = sc.dt;

    auto step_unitary = [&](double t_mid) -> Mat {
        const Mat hm = h0 + std::cos(omega * t_mid) * v;
        Eigen::SelfAdjointEigenSolver<Mat> es(hm);
        Vec ph(hm.rows());
        for (Eigen::Index j = 0; j < ph.size(); ++j) ph(j) = std::polar(1.0, -es.eigenvalues()(j) * dt);
        return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    };

    std::size_t period_steps = 0;
    if (omega > 0.0) {
        const double m = 2.0 * std::numbers::pi / (omega * dt);
        const double mr = std::round(m);
        if (mr >= 1.0 && std::abs(m - mr) <= 1e-9 * m && mr <= static_cast<double>(sc.max_cached_unitaries))
            period_steps = static_cast<std::size_t>(mr);
    } else {
        period_steps = 1;  // H(t) is constant
    }
    std::vector<std::optional<Mat>> cache(period_steps);

    const auto n_steps = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
    const Vec& x0 = psi0.amplitudes();
    const Vec target = opt.target ? opt.target->amplitudes() : x0;

    EvolutionTrace tr;
    Vec psi = x0;
    detail::record(tr, 0.0, psi, x0, target, opt.record_populations);
    for (std::size_t s = 0; s < n_steps; ++s) {
        const double t_mid = (static_cast<double>(s) + 0.5) * dt;
        if (period_steps > 0) {
            auto& slot = cache[s % period_steps];
            if (!slot) slot = step_unitary(t_mid);
            psi = (*slot) * psi;
        } else {
            psi = step_unitary(t_mid) * psi;
        }
        if ((s + 1) % sc.record_every == 0 || s + 1 == n_steps)
            detail::record(tr, static_cast<double>(s + 1) * dt, psi, x0, target, opt.record_populations);
    }
    tr.final_state = psi;
    return tr;
}

}  // namespace qaction
