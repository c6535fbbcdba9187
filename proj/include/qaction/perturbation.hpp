#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qaction/evolution.hpp"

namespace qaction::perturbation {

inline constexpr double kValidityLimit = 0.1;
inline constexpr double kDominanceRatio = 10.0;

// Textbook-style first-order excitation estimate in closed form,
//   p = 2|v|^2 sin^2((e_k - e_j) t / 2) / (e_k - e_j)^2,
// written as |v|^2 t^2/2 * sinc^2 so the resonant limit is continuous.
// This is an estimate, not the exact dynamics; see `in_validity_region`.
inline double first_order_probability(cplx v_elem, double e_k, double e_j, double t) {
    if (!(t >= 0.0)) throw DomainError("time", "first-order probability needs t >= 0");
    const double x = 0.5 * (e_k - e_j) * t;
    const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
    return 0.5 * std::norm(v_elem) * t * t * sinc * sinc;
}

inline bool in_validity_region(double p) { return p <= kValidityLimit; }

inline double discrimination_time_estimate(double e_j, double e_k_nearest) {
    if (e_j == e_k_nearest) throw DomainError("degenerate-gap", "discrimination estimate needs distinct energies");
    return 1.0 / std::abs(e_j - e_k_nearest);
}

inline double directory_search_time(std::uint64_t N, double e_max) {
    if (N < 2) throw DomainError("directory-size", "directory search time needs N >= 2");
    if (!(e_max > 0.0)) throw DomainError("directory-energy", "E_max must be positive");
    return static_cast<double>(N) / e_max;
}

struct ResonanceScan {
    std::size_t target = 0;
    std::size_t initial = 0;
    double drive_frequency = 0.0;
    double dominance_threshold = kDominanceRatio;
    std::vector<std::size_t> competitors;
    std::vector<double> times;
    std::vector<std::vector<double>> populations;
    std::optional<double> discrimination_time;
    double nearest_gap = 0.0;
    double estimate = 0.0;                  // 1 / nearest_gap
    std::optional<double> gap_time_product;  // discrimination_time * nearest_gap
    double max_norm_drift = 0.0;
    double max_population = 0.0;
    std::vector<std::string> warnings;

    double population(std::size_t probe, std::size_t state) const { return populations[probe][state]; }
};

struct ScanOptions {
    std::size_t initial = 0;
    double dominance_threshold = kDominanceRatio;
};

// Exact driven evolution from `initial`, populations at every recorded step.
// The discrimination time is the first probe time t > 0 with
// p_target >= threshold * max_k p_k over competitor states k. Competitors are
// every state other than the target and the initial state; a two-level system
// has no such state, so there the initial state itself competes.
inline ResonanceScan run_resonance_scan(const HamiltonianSpec& driven, std::size_t target, double horizon,
                                        const StepControl& sc, const ScanOptions& opt = {}) {
    const Driven& d = driven.as_driven();
    const std::size_t dim = driven.dim();
    if (target >= dim || opt.initial >= dim) throw DomainError("scan-target", "target/initial index out of range");
    if (target == opt.initial) throw DomainError("scan-target", "target must differ from the initial state");
    if (!(opt.dominance_threshold > 0.0)) throw DomainError("dominance", "dominance threshold must be positive");

    const Mat h0 = d.static_part->to_dense();
    std::vector<double> e(dim);
    for (std::size_t k = 0; k < dim; ++k) e[k] = h0(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real();

    ResonanceScan scan;
    scan.target = target;
    scan.initial = opt.initial;
    scan.drive_frequency = d.drive_frequency;
    scan.dominance_threshold = opt.dominance_threshold;
    for (std::size_t k = 0; k < dim; ++k)
        if (k != target && k != opt.initial) scan.competitors.push_back(k);
    if (scan.competitors.empty()) scan.competitors.push_back(opt.initial);

    scan.nearest_gap = std::abs(e[target] - e[scan.competitors.front()]);
    for (std::size_t k : scan.competitors) scan.nearest_gap = std::min(scan.nearest_gap, std::abs(e[target] - e[k]));
    scan.estimate = discrimination_time_estimate(e[target], e[target] + scan.nearest_gap);
    if (horizon < 2.0 * scan.estimate)
        scan.warnings.push_back("horizon " + std::to_string(horizon) + " is shorter than twice the waiting-time estimate " +
                                std::to_string(scan.estimate));

    EvolveOptions eo;
    eo.record_populations = true;
    const auto psi0 = StateVector::basis_state(dim, opt.initial);
    EvolutionTrace tr = evolve_driven(psi0, driven, horizon, sc, eo);
    scan.max_norm_drift = tr.max_norm_drift();
    if (!tr.valid) throw InvalidTrace("driven scan norm drift " + std::to_string(scan.max_norm_drift) + " exceeds bound");

    scan.times = std::move(tr.times);
    scan.populations = std::move(tr.populations);
    for (std::size_t i = 0; i < scan.times.size(); ++i) {
        const auto& p = scan.populations[i];
        for (double x : p) scan.max_population = std::max(scan.max_population, x);
        if (scan.discrimination_time || scan.times[i] <= 0.0) continue;
        double rival = 0.0;
        for (std::size_t k : scan.competitors) rival = std::max(rival, p[k]);
        if (p[target] > 0.0 && p[target] >= opt.dominance_threshold * rival) scan.discrimination_time = scan.times[i];
    }
    if (scan.max_population > 1.0 + 1e-8)
        throw NumericalContract("probability-bound", "population exceeds 1 + 1e-8");
    if (scan.discrimination_time) scan.gap_time_product = *scan.discrimination_time * scan.nearest_gap;
    return scan;
}

}  // namespace qaction::perturbation
