#pragma once

// End-to-end runs of each model: build, evolve, measure, report.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "qaction/analysis.hpp"
#include "qaction/models/cavity.hpp"
#include "qaction/models/directory.hpp"
#include "qaction/models/grover.hpp"
#include "qaction/models/prep.hpp"
#include "qaction/models/shor.hpp"
#include "qaction/stats.hpp"

namespace qaction::experiments {

// ---------------------------------------------------------------- Grover

struct GroverRun {
    models::GroverModel model;
    double gap;               // from the full-space spectral decomposition
    double t_star;
    double peak;
    double initial_spread;    // energy spread of |in>
    models::GroverReduced reduced;
    models::GroverReference reference;
    std::function<double(double)> probability;  // full-space |<x|psi(t)>|^2
};

inline GroverRun run_grover(const models::GroverModel& m, std::size_t cap = kDefaultFullSpaceCap) {
    const auto h = models::build_grover(m);
    const auto in = models::grover_initial(m);
    const auto x = models::grover_target(m);
    auto spectrum = std::make_shared<const Spectrum>(Spectrum::of(h, cap));
    const double gap = spectrum->eigenvalues().maxCoeff() - spectrum->eigenvalues().minCoeff();
    auto series = spectrum->overlap_series(x.amplitudes(), in.amplitudes());
    std::function<double(double)> prob = [series](double t) { return std::norm(series(t)); };
    // one full period of the two-level oscillation
    const auto peak = peak_time(prob, {0.0, 2.0 * std::numbers::pi / gap});
    return {m,
            gap,
            peak.t_star,
            peak.value,
            energy_moments(in, h).spread,
            models::grover_reduced(m),
            models::grover_reference(m),
            std::move(prob)};
}

inline analysis::ModelId grover_id(const models::GroverModel& m) {
    return m.variant == models::GroverVariant::h1 ? analysis::ModelId::grover_h1 : analysis::ModelId::grover_h2;
}

inline std::vector<analysis::Discrepancy> grover_discrepancies(const GroverRun& r) {
    return {{"gap", r.reference.gap, r.gap}, {"flip_time", r.reference.flip_time, r.t_star}};
}

// Preparation of the register, the search itself, and a readout of the same
// duration. `algorithm_only` drops the register stages.
inline analysis::ActionReport grover_report(const GroverRun& r, bool algorithm_only = false) {
    const unsigned n = r.model.qubits();
    std::vector<analysis::Stage> stages;
    const models::PrepModel reg{n, models::checkerboard_mask(n), r.t_star};
    if (!algorithm_only) stages.push_back(analysis::register_stage("preparation", reg));
    stages.push_back(
        analysis::static_stage("algorithm", models::grover_initial(r.model), models::build_grover(r.model), r.t_star));
    if (!algorithm_only) stages.push_back(analysis::register_stage("measurement", reg));
    return analysis::make_action_report({grover_id(r.model),
                                         r.model.N,
                                         {{"N", static_cast<double>(r.model.N)}, {"E", r.model.E}},
                                         std::move(stages),
                                         std::nullopt,
                                         grover_discrepancies(r)});
}

// ------------------------------------------------------------- directory

struct DirectoryRun {
    models::DirectoryModel model;
    std::size_t target;
    double horizon;
    perturbation::ResonanceScan scan;
    double waiting_estimate;  // 1 / nearest gap
    double search_estimate;   // N / E_max
};

struct DriveSettings {
    std::optional<double> horizon;
    std::size_t steps_per_period = 40;
    std::size_t record_every = 4;
    double dominance = perturbation::kDominanceRatio;
};

inline DirectoryRun run_directory(const models::DirectoryModel& base, std::size_t target, const DriveSettings& ds = {}) {
    const auto m = base.tuned_to(target);
    const auto h = models::build_directory(m);
    const double horizon = ds.horizon.value_or(8.0 * static_cast<double>(m.size()) / m.e_max());
    auto sc = resolve_steps(h, ds.steps_per_period, ds.record_every);
    auto scan = perturbation::run_resonance_scan(h, target, horizon, sc, {0, ds.dominance});
    const double est = scan.estimate;
    return {m, target, horizon, std::move(scan), est, perturbation::directory_search_time(m.size(), m.e_max())};
}

inline analysis::ActionReport directory_report(const DirectoryRun& r) {
    if (!r.scan.discrimination_time)
        throw NumericalContract("discrimination", "target never dominated its competitors within the horizon");
    const double t = *r.scan.discrimination_time;
    const auto h = models::build_directory(r.model);
    unsigned n = 0;
    while ((std::size_t{1} << n) < r.model.size()) ++n;
    const models::PrepModel reg{n, models::checkerboard_mask(n), t};
    std::vector<analysis::Stage> stages;
    stages.push_back(analysis::register_stage("preparation", reg));
    stages.push_back(analysis::driven_stage("algorithm", h, r.scan, t));
    stages.push_back(analysis::register_stage("measurement", reg));
    return analysis::make_action_report({analysis::ModelId::directory,
                                         r.model.size(),
                                         {{"N", static_cast<double>(r.model.size())},
                                          {"E_max", r.model.e_max()},
                                          {"epsilon", r.model.epsilon},
                                          {"seed", static_cast<double>(r.model.seed)},
                                          {"target", static_cast<double>(r.target)}},
                                         std::move(stages),
                                         std::nullopt,
                                         {{"search_time", r.search_estimate, t}}});
}

// ---------------------------------------------------------------- cavity

struct CavityRun {
    models::CavityModel model;
    numtheory::Int target;
    models::CavityWindow window;
    perturbation::ResonanceScan scan;
};

// Coupling scaled to the level spacing at the top of the window.
inline double default_cavity_coupling(double epsilon, double omega, numtheory::Int hi) {
    return epsilon * omega / static_cast<double>(hi);
}

inline CavityRun run_cavity(const models::CavityModel& m, numtheory::Int target, const DriveSettings& ds = {}) {
    if (!m.contains(target)) throw DomainError("cavity-target", "target label must lie inside the window");
    auto w = models::build_cavity_window(m, models::cavity_drive_for(m, target));
    const double horizon = ds.horizon.value_or(10.0 * static_cast<double>(target) / m.omega);
    auto sc = resolve_steps(w.driven, ds.steps_per_period, ds.record_every);
    auto scan = perturbation::run_resonance_scan(w.driven, w.index_of(target), horizon, sc, {0, ds.dominance});
    return {m, target, std::move(w), std::move(scan)};
}

inline analysis::ActionReport cavity_report(const CavityRun& r) {
    if (!r.scan.discrimination_time)
        throw NumericalContract("discrimination", "target never dominated its competitors within the horizon");
    const double t = *r.scan.discrimination_time;
    std::vector<analysis::Stage> stages;
    stages.push_back(analysis::driven_stage("algorithm", r.window.driven, r.scan, t));
    return analysis::make_action_report({analysis::ModelId::cavity,
                                         r.target,
                                         {{"target", static_cast<double>(r.target)},
                                          {"omega", r.model.omega},
                                          {"window_lo", static_cast<double>(r.model.lo)},
                                          {"window_hi", static_cast<double>(r.model.hi)},
                                          {"coupling", r.model.coupling}},
                                         std::move(stages),
                                         std::nullopt,
                                         {{"selection_time", static_cast<double>(r.target) / r.model.omega, t}}});
}

// ------------------------------------------------------------ phase shift

struct ShorRun {
    models::ShorPhaseModel model;
    double t_n;
    double mean_energy;
    double mean_energy_closed_form;
    double spread;
    double ground;
    double fidelity;  // |<target|psi(t_n)>|
};

inline ShorRun run_shor(const models::ShorPhaseModel& m) {
    const auto s = models::build_shor_phase(m);
    const auto mom = energy_moments(s.input, s.h);
    const auto psi = evolve_state(s.input, s.h, s.t_n);
    return {m,
            s.t_n,
            mom.mean,
            models::shor_average_energy(m.n, m.omega),
            mom.spread,
            Spectrum::of(s.h).min_eigenvalue(),
            std::abs(inner_product(s.target, psi))};
}

inline analysis::ActionReport shor_report(const ShorRun& r, analysis::Measure headline = analysis::Measure::spread,
                                          bool algorithm_only = false) {
    const auto s = models::build_shor_phase(r.model);
    std::vector<analysis::Stage> stages;
    const models::PrepModel reg{r.model.n, models::checkerboard_mask(r.model.n), r.t_n};
    if (!algorithm_only && r.t_n > 0.0) stages.push_back(analysis::register_stage("preparation", reg));
    auto alg = analysis::static_stage("algorithm", s.input, s.h, r.t_n);
    alg.headline = headline;
    stages.push_back(alg);
    if (!algorithm_only && r.t_n > 0.0) stages.push_back(analysis::register_stage("measurement", reg));
    return analysis::make_action_report({analysis::ModelId::shor_phase,
                                         r.model.n,
                                         {{"n", static_cast<double>(r.model.n)},
                                          {"omega", r.model.omega},
                                          {"alpha", r.model.alpha}},
                                         std::move(stages),
                                         r.model.n,
                                         {{"mean_energy", r.mean_energy_closed_form, r.mean_energy}}});
}

// ----------------------------------------------------------- preparation

struct PrepRun {
    models::PrepModel model;
    models::PrepSchedule schedule;
    double per_bit_product;
    double expected_total;  // (n/2)(pi/2), uniformly random targets
};

inline PrepRun run_prep(const models::PrepModel& m) {
    auto s = models::build_prep(m);
    const double per_bit = s.bits.empty() ? std::numbers::pi / 2.0 : s.per_bit_spread * m.t_c;
    return {m, std::move(s), per_bit, 0.5 * m.n * std::numbers::pi / 2.0};
}

inline analysis::ActionReport prep_report(const PrepRun& r) {
    return analysis::make_action_report({analysis::ModelId::prep,
                                         r.model.n,
                                         {{"n", static_cast<double>(r.model.n)},
                                          {"t_c", r.model.t_c},
                                          {"flips", static_cast<double>(r.model.flips())}},
                                         {analysis::register_stage("preparation", r.model)},
                                         r.model.flips(),
                                         {}});
}

// Mean total spread-time product over `samples` uniformly random flip masks.
struct PrepMonteCarlo {
    double mean;
    double standard_error;
};

inline PrepMonteCarlo prep_monte_carlo(unsigned n, double t_c, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> v;
    v.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        std::uint64_t mask = rng();
        if (n < 64) mask &= (std::uint64_t{1} << n) - 1;
        v.push_back(models::build_prep({n, mask, t_c}).total_spread_time_product);
    }
    const double m = stats::mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return {m, std::sqrt(ss / static_cast<double>(samples - 1) / static_cast<double>(samples))};
}

// ----------------------------------------------------------- bound suite

struct BoundCase {
    std::size_t dim;
    bool two_level_superposition;
    analysis::BoundCheck check;
};

// Random static (H, psi0) pairs with dim <= max_dim. Odd cases use an
// equal-weight superposition of two eigenvectors, which does reach an
// orthogonal state and saturates the bound.
inline std::vector<BoundCase> run_bound_suite(std::size_t cases, std::size_t max_dim, std::uint64_t seed) {
    if (max_dim < 2) throw DomainError("bound-suite", "max_dim must be >= 2");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> dims(2, max_dim);
    std::normal_distribution<double> g(0.0, 1.0);
    auto gaussian_vec = [&](std::size_t d) {
        Vec v(static_cast<Eigen::Index>(d));
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            const double re = g(rng);
            const double im = g(rng);
            v(i) = cplx(re, im);
        }
        return v;
    };
    std::vector<BoundCase> out;
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t d = dims(rng);
        Mat a(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (Eigen::Index j = 0; j < a.cols(); ++j) a.col(j) = gaussian_vec(d);
        const auto h = HamiltonianSpec::dense(0.5 * (a + a.adjoint()).eval());
        const bool pair = c % 2 == 1;
        Vec x;
        if (pair) {
            const auto spec = Spectrum::of(h);
            std::uniform_int_distribution<std::size_t> pick(0, d - 1);
            const std::size_t i = pick(rng);
            std::size_t j = pick(rng);
            if (j == i) j = (i + 1) % d;
            std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
            x = spec.eigenvectors().col(static_cast<Eigen::Index>(i)) +
                std::polar(1.0, phase(rng)) * spec.eigenvectors().col(static_cast<Eigen::Index>(j));
        } else {
            x = gaussian_vec(d);
        }
        const StateVector psi0(x, Basis::computational);
        const double spread = energy_moments(psi0, h).spread;
        const double horizon = 4.0 * std::numbers::pi / (2.0 * spread);
        const auto tr = evolve_static(psi0, h, uniform_times(horizon, 2001));
        out.push_back({d, pair, analysis::check_speed_limit(tr, psi0, h)});
    }
    return out;
}

// ------------------------------------------------------- standard suite

struct SuiteSettings {
    std::uint64_t seed = 1;
    unsigned prep_n = 8;
    std::uint64_t grover_N = 256;
    std::size_t directory_N = 32;
    numtheory::Int cavity_target = 30;
    unsigned shor_n = 6;
};

// One report per model: prep, grover-h1, directory, cavity, shor-phase.
inline std::vector<analysis::ActionReport> standard_suite(const SuiteSettings& s = {}) {
    std::vector<analysis::ActionReport> reports;
    {
        const models::PrepModel m{s.prep_n, s.prep_n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << s.prep_n) - 1,
                                  1.0};
        reports.push_back(prep_report(run_prep(m)));
    }
    reports.push_back(grover_report(run_grover({s.grover_N, 1.0, models::GroverVariant::h1, 0})));
    {
        const auto m = models::DirectoryModel::equally_spaced(s.directory_N, 1.0, models::kDefaultCoupling, s.seed);
        reports.push_back(directory_report(run_directory(m, s.directory_N / 2)));
    }
    {
        models::CavityModel m;
        m.omega = 1.0;
        m.lo = s.cavity_target > 5 ? s.cavity_target - 4 : 2;
        m.hi = s.cavity_target + 4;
        m.q_max = m.hi;
        m.coupling = default_cavity_coupling(models::kDefaultCoupling, m.omega, m.hi);
        reports.push_back(cavity_report(run_cavity(m, s.cavity_target, {std::nullopt, 40, 10})));
    }
    reports.push_back(shor_report(run_shor({s.shor_n, 1.0, std::numbers::pi})));
    return reports;
}

}  // namespace qaction::experiments
