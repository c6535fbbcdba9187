#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qaction/models/prep.hpp"
#include "qaction/perturbation.hpp"
#include "qaction/timing.hpp"

namespace qaction::analysis {

enum class ModelId { prep, grover_h1, grover_h2, directory, cavity, shor_phase };

inline std::string_view to_string(ModelId m) {
    switch (m) {
        case ModelId::prep: return "prep";
        case ModelId::grover_h1: return "grover-h1";
        case ModelId::grover_h2: return "grover-h2";
        case ModelId::directory: return "directory";
        case ModelId::cavity: return "cavity";
        case ModelId::shor_phase: return "shor-phase";
    }
    return "?";
}

inline ModelId parse_model_id(std::string_view s) {
    for (auto m : {ModelId::prep, ModelId::grover_h1, ModelId::grover_h2, ModelId::directory, ModelId::cavity,
                   ModelId::shor_phase})
        if (to_string(m) == s) return m;
    throw DomainError("model-id", "unknown model id '" + std::string(s) + "'");
}

// Name of the size parameter each model is ordered by.
inline std::string_view size_name(ModelId m) {
    switch (m) {
        case ModelId::prep:
        case ModelId::shor_phase: return "n";
        default: return "N";
    }
}

// Logical step count of the classical task:
//   prep n, Grover ceil(log2 N), directory N, cavity N (target label), phase network 2^n.
inline std::uint64_t classical_complexity(ModelId m, std::uint64_t size) {
    switch (m) {
        case ModelId::prep: return size;
        case ModelId::grover_h1:
        case ModelId::grover_h2: {
            if (size < 2) throw DomainError("grover-size", "Grover complexity needs N >= 2");
            std::uint64_t n = 0;
            while (n < 64 && (std::uint64_t{1} << n) < size) ++n;
            return n;
        }
        case ModelId::directory:
        case ModelId::cavity: return size;
        case ModelId::shor_phase:
            if (size >= 64) throw Overflow("2^n exceeds 64-bit width");
            return std::uint64_t{1} << size;
    }
    throw DomainError("model-id", "unknown model id");
}

struct EnergyMeasures {
    double spread = 0.0;       // standard deviation of H in the stage's initial state
    double mean_excess = 0.0;  // mean energy above the ground level
    double max_span = 0.0;     // spectral span the stage can reach
};

enum class Measure { spread, mean_excess, max_span };

inline std::string_view to_string(Measure m) {
    switch (m) {
        case Measure::spread: return "spread";
        case Measure::mean_excess: return "mean_excess";
        case Measure::max_span: return "max_span";
    }
    return "?";
}

inline double pick(const EnergyMeasures& e, Measure m) {
    switch (m) {
        case Measure::spread: return e.spread;
        case Measure::mean_excess: return e.mean_excess;
        case Measure::max_span: return e.max_span;
    }
    return 0.0;
}

struct Stage {
    std::string name;
    double duration = 0.0;
    EnergyMeasures measures;
    Measure headline = Measure::spread;
    bool trace_valid = true;

    double action() const { return pick(measures, headline) * duration; }
};

// Static evolution stage: measures of psi0 under h.
inline Stage static_stage(std::string name, const StateVector& psi0, const HamiltonianSpec& h, double duration,
                          bool trace_valid = true) {
    const auto mom = energy_moments(psi0, h);
    const auto spec = Spectrum::of(h);
    Stage s;
    s.name = std::move(name);
    s.duration = duration;
    s.measures = {mom.spread, mom.mean - spec.min_eigenvalue(), spec.max_eigenvalue() - spec.min_eigenvalue()};
    s.trace_valid = trace_valid;
    return s;
}

// Bit-writing stage (preparation or readout). Each flipped bit is an
// independent two-level rotation and the bits' energies add.
inline Stage register_stage(std::string name, const models::PrepModel& m) {
    const auto sched = models::build_prep(m);
    Stage s;
    s.name = std::move(name);
    s.duration = m.t_c;
    const auto zero = StateVector::basis_state(2, 0);
    for (const auto& g : sched.generators) {
        const auto st = static_stage("bit", zero, g, m.t_c);
        s.measures.spread += st.measures.spread;
        s.measures.mean_excess += st.measures.mean_excess;
        s.measures.max_span += st.measures.max_span;
    }
    return s;
}

// Resonant-drive stage. The initial state is stationary under the static part,
// so its spread comes from the weak drive alone; the energy the computation
// must bridge is the static spectral span, which is the headline here.
inline Stage driven_stage(std::string name, const HamiltonianSpec& driven, const perturbation::ResonanceScan& scan,
                          double duration) {
    const Driven& d = driven.as_driven();
    const auto psi0 = StateVector::basis_state(driven.dim(), scan.initial);
    const auto h_at_zero = HamiltonianSpec::dense(driven.dense_at(0.0));
    const auto spec0 = Spectrum::of(*d.static_part);
    const Mat h0 = d.static_part->to_dense();
    double mean_excess = 0.0;
    for (const auto& p : scan.populations) {
        double m = 0.0;
        for (std::size_t k = 0; k < p.size(); ++k) m += p[k] * h0(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real();
        mean_excess = std::max(mean_excess, m - spec0.min_eigenvalue());
    }
    Stage s;
    s.name = std::move(name);
    s.duration = duration;
    s.measures = {energy_moments(psi0, h_at_zero).spread, mean_excess,
                  spec0.max_eigenvalue() - spec0.min_eigenvalue()};
    s.headline = Measure::max_span;
    return s;
}

// A reference constant next to the value the exact computation produced.
struct Discrepancy {
    std::string quantity;
    double reference;
    double measured;

    double ratio() const { return measured / reference; }
};

struct ActionReport {
    ModelId model = ModelId::prep;
    std::uint64_t size = 0;
    std::vector<std::pair<std::string, double>> parameters;
    std::vector<Stage> stages;
    double t_c = 0.0;
    EnergyMeasures measures;  // duration-weighted stage averages
    Measure headline = Measure::spread;
    double E_c = 0.0;
    double action = 0.0;
    std::uint64_t C = 0;
    std::optional<std::uint64_t> G;
    double ratio = 0.0;
    std::vector<Discrepancy> discrepancies;
};

struct ReportInput {
    ModelId model;
    std::uint64_t size;
    std::vector<std::pair<std::string, double>> parameters;
    std::vector<Stage> stages;
    std::optional<std::uint64_t> gate_count;
    std::vector<Discrepancy> discrepancies;
};

// t_c is the summed stage duration and the action is the sum of stage actions,
// so E_c = action / t_c is the duration-weighted headline energy.
inline ActionReport make_action_report(ReportInput in) {
    if (in.stages.empty()) throw DomainError("report-stages", "action report needs at least one stage");
    ActionReport r;
    r.model = in.model;
    r.size = in.size;
    r.parameters = std::move(in.parameters);
    r.G = in.gate_count;
    r.discrepancies = std::move(in.discrepancies);
    r.headline = Measure::spread;
    for (const auto& s : in.stages) {
        if (!s.trace_valid) throw InvalidTrace("stage '" + s.name + "' carries an invalid trace");
        if (!(s.duration >= 0.0)) throw DomainError("report-stage", "stage durations must be >= 0");
        if (s.measures.spread < 0.0 || s.measures.mean_excess < -1e-12 || s.measures.max_span < 0.0)
            throw DomainError("report-measures", "energy measures must be >= 0");
        r.t_c += s.duration;
        r.action += s.action();
        r.measures.spread += s.measures.spread * s.duration;
        r.measures.mean_excess += std::max(0.0, s.measures.mean_excess) * s.duration;
        r.measures.max_span += s.measures.max_span * s.duration;
        if (s.name == "algorithm") r.headline = s.headline;
    }
    if (!(r.t_c > 0.0)) throw DomainError("report-time", "total computation time must be positive");
    r.measures.spread /= r.t_c;
    r.measures.mean_excess /= r.t_c;
    r.measures.max_span /= r.t_c;
    r.stages = std::move(in.stages);
    r.E_c = r.action / r.t_c;
    r.C = classical_complexity(r.model, r.size);
    if (r.C == 0) throw DomainError("report-complexity", "classical complexity must be positive");
    r.ratio = r.action / static_cast<double>(r.C);
    if (!std::isfinite(r.ratio)) throw NumericalContract("report-ratio", "action ratio is not finite");
    return r;
}

struct BoundCheck {
    double spread;
    std::optional<double> t_orthogonal;
    double bound;  // pi / (2 spread), +inf for stationary states
    bool satisfied;
};

inline BoundCheck check_speed_limit(const EvolutionTrace& trace, const StateVector& psi0, const HamiltonianSpec& h) {
    if (h.is_driven()) throw WrongVariant("the speed-limit bound is stated for a fixed spread; driven specs not allowed");
    const double spread = energy_moments(psi0, h).spread;
    const double bound = spread > 0.0 ? std::numbers::pi / (2.0 * spread) : std::numeric_limits<double>::infinity();
    const auto t = first_orthogonality_time(trace);
    return {spread, t, bound, !t || *t >= bound * (1.0 - 1e-6)};
}

struct HypothesisRow {
    ModelId model;
    std::string_view size_name;
    std::uint64_t size;
    double t_c;
    Measure headline;
    double E_c;
    double action;
    std::uint64_t C;
    double ratio;
};

inline std::vector<HypothesisRow> hypothesis_table(const std::vector<ActionReport>& reports) {
    if (reports.empty()) throw DomainError("hypothesis-table", "hypothesis table needs at least one report");
    std::vector<HypothesisRow> rows;
    for (const auto& r : reports)
        rows.push_back({r.model, size_name(r.model), r.size, r.t_c, r.headline, r.E_c, r.action, r.C, r.ratio});
    std::stable_sort(rows.begin(), rows.end(), [](const HypothesisRow& a, const HypothesisRow& b) {
        return std::pair(static_cast<int>(a.model), a.size) < std::pair(static_cast<int>(b.model), b.size);
    });
    return rows;
}

}  // namespace qaction::analysis
