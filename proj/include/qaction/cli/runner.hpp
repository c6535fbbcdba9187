#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "qaction/cli/config.hpp"
#include "qaction/cli/document.hpp"
#include "qaction/experiments.hpp"

namespace qaction::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

inline constexpr const char* kOutputDirEnv = "QACTION_OUTPUT_DIR";

struct Outcome {
    Document doc;
    int status = kExitOk;
};

namespace detail {

// Reference constants that the exact computation reproduces are not flagged.
inline constexpr double kFlagTolerance = 1e-6;

inline bool is_discrepant(const analysis::Discrepancy& x) {
    return !(std::abs(x.measured - x.reference) <= kFlagTolerance * std::abs(x.reference));
}

inline Cell opt_cell(const std::optional<double>& v) { return v ? Cell{*v} : Cell{}; }

inline std::map<std::string, std::string> embedded_config(const ResolvedConfig& rc) {
    auto m = rc.values();
    m.erase("out");
    std::erase_if(m, [](const auto& kv) { return kv.second.empty(); });
    m["model"] = rc.model();
    return m;
}

inline void append_report(Document& d, const std::optional<analysis::ActionReport>& r) {
    for (const char* c : {"total_time", "headline", "E_c", "action", "C", "ratio"}) d.columns.emplace_back(c);
    auto& row = d.rows.back();
    if (!r) {
        row.insert(row.end(), 6, Cell{});
        return;
    }
    row.insert(row.end(), {r->t_c, std::string(analysis::to_string(r->headline)), r->E_c, r->action, r->C, r->ratio});
    for (const auto& x : r->discrepancies)
        if (is_discrepant(x)) d.flags.push_back({x.quantity, x.reference, x.measured});
}

inline const char* kHeadlineNote =
    "E_c is the duration-weighted headline energy; static stages use the initial-state energy spread, "
    "resonant-drive stages the static spectral span";

inline Outcome run_prep(const ResolvedConfig& rc) {
    models::PrepModel m;
    m.n = static_cast<unsigned>(rc.integer("n"));
    m.t_c = rc.number("t_c");
    if (m.n < 1 || m.n > 64) throw ConfigError("n must lie in [1, 64]");
    const std::string& mask = rc.text("mask");
    if (mask == "all") m.flip_mask = m.n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m.n) - 1;
    else if (mask == "checkerboard") m.flip_mask = models::checkerboard_mask(m.n);
    else m.flip_mask = rc.integer("mask");
    const auto run = experiments::run_prep(m);
    Outcome o;
    o.doc.schema = "prep";
    o.doc.columns = {"n", "t_c", "flip_mask", "flips", "rabi_rate", "per_bit_spread", "per_bit_product",
                     "total_product", "expected_total_random"};
    o.doc.rows.push_back({std::uint64_t{m.n}, m.t_c, m.flip_mask, std::uint64_t{m.flips()}, m.rabi_rate(),
                          run.schedule.per_bit_spread, run.per_bit_product, run.schedule.total_spread_time_product,
                          run.expected_total});
    std::optional<analysis::ActionReport> rep;
    if (m.flips() > 0) rep = experiments::prep_report(run);
    append_report(o.doc, rep);
    o.doc.notes.push_back("energy measure: per-bit energy spread, summed over flipped bits");
    return o;
}

inline Outcome run_grover(const ResolvedConfig& rc, models::GroverVariant variant) {
    models::GroverModel m;
    m.N = rc.integer("N");
    m.E = rc.number("E");
    m.target = rc.integer("target");
    m.variant = variant;
    const auto run = experiments::run_grover(m);
    Outcome o;
    o.doc.schema = "grover";
    o.doc.columns = {"variant", "N", "E", "target", "gap", "gap_closed_form", "t_star", "t_closed_form",
                     "peak_probability", "initial_spread", "spread_time_product"};
    o.doc.rows.push_back({std::string(variant == models::GroverVariant::h1 ? "h1" : "h2"), m.N, m.E, m.target,
                          run.gap, run.reduced.gap, run.t_star, run.reduced.flip_time, run.peak, run.initial_spread,
                          run.initial_spread * run.t_star});
    append_report(o.doc, experiments::grover_report(run));
    o.doc.notes.push_back(kHeadlineNote);
    o.doc.notes.push_back("flags compare reference constants with the exact two-level reduction");
    return o;
}

inline Outcome run_directory(ResolvedConfig& rc) {
    const auto N = static_cast<std::size_t>(rc.integer("N"));
    const double e_max = rc.number("E_max");
    const auto seed = rc.integer("seed");
    if (N < 2) throw ConfigError("N must be >= 2");
    const auto m = models::DirectoryModel::equally_spaced(N, e_max, rc.number("epsilon"), seed);
    const std::size_t target = rc.is("target", "middle") ? N / 2 : static_cast<std::size_t>(rc.integer("target"));
    experiments::DriveSettings ds;
    if (!rc.is("horizon", "auto")) ds.horizon = rc.number("horizon");
    ds.steps_per_period = rc.integer("steps_per_period");
    ds.record_every = rc.integer("record_every");
    ds.dominance = rc.number("dominance");
    const auto run = experiments::run_directory(m, target, ds);
    const auto& s = run.scan;
    rc.set("target", std::to_string(target));
    rc.set("horizon", format_double(run.horizon));
    Outcome o;
    o.doc.schema = "directory";
    o.doc.columns = {"N", "E_max", "epsilon", "seed", "target", "drive_frequency", "horizon", "nearest_gap",
                     "discrimination_time", "gap_time_product", "waiting_estimate", "search_estimate",
                     "max_norm_drift"};
    o.doc.rows.push_back({std::uint64_t{N}, e_max, m.epsilon, seed, std::uint64_t{target}, s.drive_frequency,
                          run.horizon, s.nearest_gap, opt_cell(s.discrimination_time), opt_cell(s.gap_time_product),
                          run.waiting_estimate, run.search_estimate, s.max_norm_drift});
    std::optional<analysis::ActionReport> rep;
    if (s.discrimination_time) rep = experiments::directory_report(run);
    else o.doc.notes.push_back("target never reached the dominance ratio within the horizon");
    append_report(o.doc, rep);
    o.doc.notes.push_back(kHeadlineNote);
    o.doc.notes.push_back("dominance ratio " + format_double(s.dominance_threshold));
    for (const auto& w : s.warnings) o.doc.notes.push_back("warning: " + w);
    return o;
}

inline Outcome run_cavity(ResolvedConfig& rc) {
    const auto target = rc.integer("target");
    models::CavityModel m;
    m.omega = rc.number("omega");
    if (rc.is("window", "auto")) {
        m.lo = target > 5 ? target - 4 : 2;
        m.hi = target + 4;
    } else {
        std::tie(m.lo, m.hi) = rc.window("window");
    }
    m.q_max = rc.is("Q", "auto") ? m.hi : rc.integer("Q");
    m.coupling = rc.is("v", "auto") ? experiments::default_cavity_coupling(rc.number("epsilon"), m.omega, m.hi)
                                    : rc.number("v");
    experiments::DriveSettings ds;
    if (!rc.is("horizon", "auto")) ds.horizon = rc.number("horizon");
    ds.steps_per_period = rc.integer("steps_per_period");
    ds.record_every = rc.integer("record_every");
    ds.dominance = rc.number("dominance");
    const auto run = experiments::run_cavity(m, target, ds);
    const auto& s = run.scan;
    rc.set("window", std::to_string(m.lo) + ":" + std::to_string(m.hi));
    rc.set("Q", std::to_string(m.q_max));
    rc.set("v", format_double(m.coupling));
    rc.set("horizon", format_double(s.times.back()));
    Outcome o;
    o.doc.schema = "cavity";
    o.doc.columns = {"target", "factorization", "window_lo", "window_hi", "Q", "omega", "coupling",
                     "drive_frequency", "nearest_gap", "discrimination_time", "gap_time_product",
                     "selection_estimate", "max_norm_drift"};
    o.doc.rows.push_back({target, numtheory::to_string(numtheory::fock_label_from_integer(target)), m.lo, m.hi,
                          m.q_max, m.omega, m.coupling, s.drive_frequency, s.nearest_gap,
                          opt_cell(s.discrimination_time), opt_cell(s.gap_time_product),
                          static_cast<double>(target) / m.omega, s.max_norm_drift});
    std::optional<analysis::ActionReport> rep;
    if (s.discrimination_time) rep = experiments::cavity_report(run);
    else o.doc.notes.push_back("target never reached the dominance ratio within the horizon");
    append_report(o.doc, rep);
    o.doc.notes.push_back(kHeadlineNote);
    o.doc.notes.push_back("the drive couples the vacuum to every window state with equal magnitude");
    for (const auto& w : s.warnings) o.doc.notes.push_back("warning: " + w);
    return o;
}

inline Outcome run_shor(const ResolvedConfig& rc) {
    models::ShorPhaseModel m;
    m.n = static_cast<unsigned>(rc.integer("n"));
    m.omega = rc.number("omega");
    m.alpha = rc.number("alpha");
    const auto run = experiments::run_shor(m);
    const double excess_action = (run.mean_energy - run.ground) * run.t_n;
    Outcome o;
    o.doc.schema = "shor-phase";
    o.doc.columns = {"n", "omega", "alpha", "t_n", "mean_energy", "mean_energy_closed_form", "spread",
                     "fidelity", "mean_excess_action", "mean_excess_action_over_2n"};
    o.doc.rows.push_back({std::uint64_t{m.n}, m.omega, m.alpha, run.t_n, run.mean_energy, run.mean_energy_closed_form,
                          run.spread, run.fidelity, excess_action, excess_action / std::ldexp(1.0, static_cast<int>(m.n))});
    std::optional<analysis::ActionReport> rep;
    if (run.t_n > 0.0) rep = experiments::shor_report(run);
    append_report(o.doc, rep);
    o.doc.notes.push_back(kHeadlineNote);
    if (run.fidelity < 1.0 - 1e-10)
        throw NumericalContract("phase-fidelity", "phase network fidelity " + format_double(run.fidelity) + " < 1 - 1e-10");
    return o;
}

inline Outcome run_bound_suite(const ResolvedConfig& rc) {
    const auto cases = experiments::run_bound_suite(rc.integer("cases"), rc.integer("max_dim"), rc.integer("seed"));
    Outcome o;
    o.doc.schema = "bound-suite";
    o.doc.columns = {"case", "dim", "kind", "spread", "bound", "t_orthogonal", "satisfied"};
    std::uint64_t violations = 0, reached = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        if (!c.check.satisfied) ++violations;
        if (c.check.t_orthogonal) ++reached;
        o.doc.rows.push_back({std::uint64_t{i}, std::uint64_t{c.dim},
                              std::string(c.two_level_superposition ? "eigenpair" : "random"), c.check.spread,
                              c.check.bound, opt_cell(c.check.t_orthogonal), c.check.satisfied});
    }
    o.doc.summary = {{"cases", std::uint64_t{cases.size()}}, {"reached_orthogonality", reached}, {"violations", violations}};
    if (violations > 0) o.status = kExitNumerical;
    return o;
}

inline Outcome run_hypothesis(const ResolvedConfig& rc) {
    experiments::SuiteSettings s;
    s.seed = rc.integer("seed");
    s.prep_n = static_cast<unsigned>(rc.integer("prep_n"));
    s.grover_N = rc.integer("grover_N");
    s.directory_N = rc.integer("directory_N");
    s.cavity_target = rc.integer("cavity_target");
    s.shor_n = static_cast<unsigned>(rc.integer("shor_n"));
    const auto reports = experiments::standard_suite(s);
    Outcome o;
    o.doc.schema = "hypothesis";
    o.doc.columns = {"model", "size_name", "size", "total_time", "headline", "E_c", "action", "C", "ratio"};
    double min_ratio = std::numeric_limits<double>::infinity();
    for (const auto& r : analysis::hypothesis_table(reports)) {
        min_ratio = std::min(min_ratio, r.ratio);
        o.doc.rows.push_back({std::string(analysis::to_string(r.model)), std::string(r.size_name), r.size, r.t_c,
                              std::string(analysis::to_string(r.headline)), r.E_c, r.action, r.C, r.ratio});
    }
    for (const auto& r : reports)
        for (const auto& x : r.discrepancies)
            if (is_discrepant(x))
                o.doc.flags.push_back({std::string(analysis::to_string(r.model)) + ":" + x.quantity, x.reference, x.measured});
    o.doc.summary = {{"rows", std::uint64_t{reports.size()}}, {"min_ratio", min_ratio}};
    o.doc.notes.push_back(kHeadlineNote);
    o.doc.notes.push_back("ratios are reported only: the 'much greater than' relation is asymptotic and is not "
                          "decided at desk scale");
    return o;
}

}  // namespace detail

inline Outcome run_model(ResolvedConfig rc) {
    Outcome o;
    const auto& m = rc.model();
    if (m == "prep") o = detail::run_prep(rc);
    else if (m == "grover-h1") o = detail::run_grover(rc, models::GroverVariant::h1);
    else if (m == "grover-h2") o = detail::run_grover(rc, models::GroverVariant::h2);
    else if (m == "directory") o = detail::run_directory(rc);
    else if (m == "cavity") o = detail::run_cavity(rc);
    else if (m == "shor-phase") o = detail::run_shor(rc);
    else if (m == "bound-suite") o = detail::run_bound_suite(rc);
    else if (m == "hypothesis") o = detail::run_hypothesis(rc);
    else throw ConfigError("unknown model '" + m + "'");
    o.doc.config = detail::embedded_config(rc);
    return o;
}

// Destination: explicit `out`, else $QACTION_OUTPUT_DIR/<schema>.<format>, else stdout.
inline void emit(const Document& d, const std::string& format, const std::string& out, std::ostream& stdout_stream) {
    std::string path = out;
    if (path.empty())
        if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir)
            path = (std::filesystem::path(dir) / (d.schema + "." + format)).string();
    auto write = [&](std::ostream& os) { format == "json" ? write_json(os, d) : write_csv(os, d); };
    if (path.empty()) {
        write(stdout_stream);
        return;
    }
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write output file '" + path + "'");
    write(f);
}

template <class F>
int guarded(F&& body, std::ostream& err) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error [" << e.invariant() << "]: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "config error [" << e.invariant() << "]: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalContract& e) {
        err << "numerical contract violated [" << e.invariant() << "]: " << e.what() << '\n';
        return kExitNumerical;
    }
}

inline int run(const ExperimentConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return guarded(
        [&] {
            const auto rc = resolve(cfg);
            const auto o = run_model(rc);
            emit(o.doc, rc.text("format"), rc.text("out"), out);
            if (o.status == kExitNumerical) err << "numerical contract violated [speed-limit]: bound violations found\n";
            return o.status;
        },
        err);
}

// ----------------------------------------------------------------- sweep

struct SweepConfig {
    ExperimentConfig base;
    std::string param;
    std::vector<std::string> values;
    std::string metric;  // "" = model default
    std::string fit_x;   // value | sqrt | log2 | pow2; "" = model default
    unsigned jobs = 1;
};

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!trim(cur).empty()) out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

inline std::pair<std::string, std::string> sweep_defaults(const std::string& model) {
    if (model == "grover-h1") return {"t_star", "sqrt"};
    if (model == "grover-h2") return {"t_star", "value"};
    if (model == "directory" || model == "cavity") return {"discrimination_time", "value"};
    if (model == "shor-phase") return {"mean_energy", "pow2"};
    if (model == "prep") return {"total_product", "value"};
    throw ConfigError("model '" + model + "' cannot be swept");
}

inline double transform_x(const std::string& fit_x, double v) {
    if (fit_x == "value") return v;
    if (fit_x == "sqrt") return std::sqrt(v);
    if (fit_x == "log2") return std::log2(v);
    if (fit_x == "pow2") return std::ldexp(1.0, static_cast<int>(v));
    throw ConfigError("fit_x must be value, sqrt, log2 or pow2");
}

// Independent cells, optionally run concurrently; rows follow grid order and
// cell i uses seed base+i.
inline Outcome run_sweep(const SweepConfig& sc) {
    if (sc.values.empty()) throw ConfigError("sweep grid is empty");
    if (sc.param.empty()) throw ConfigError("sweep needs a parameter name");
    const auto [metric_default, fit_default] = sweep_defaults(sc.base.model);
    const std::string metric = sc.metric.empty() ? metric_default : sc.metric;
    const std::string fit_x = sc.fit_x.empty() ? fit_default : sc.fit_x;
    transform_x(fit_x, 1.0);
    for (const auto& v : sc.values) parse_number(sc.param, v);

    const auto template_rc = resolve(sc.base);  // validates the template once
    if (!template_rc.values().count(sc.param))
        throw ConfigError("'" + sc.param + "' is not a parameter of model '" + sc.base.model + "'");
    const std::uint64_t base_seed = template_rc.has("seed") ? template_rc.integer("seed") : 0;

    struct CellResult {
        std::optional<double> metric;
        std::string message;
    };
    std::vector<CellResult> results(sc.values.size());
    auto work = [&](std::size_t i) {
        try {
            ExperimentConfig cfg = sc.base;
            cfg.values[sc.param] = sc.values[i];
            cfg.values.erase("out");
            if (template_rc.has("seed")) cfg.values["seed"] = std::to_string(base_seed + i);
            const auto o = run_model(resolve(cfg));
            const Cell& c = o.doc.column_value(0, metric);
            if (const double* d = std::get_if<double>(&c)) results[i].metric = *d;
            else results[i].message = "metric '" + metric + "' unavailable";
        } catch (const Error& e) {
            results[i].message = e.invariant() + ": " + e.what();
        } catch (const std::exception& e) {
            results[i].message = e.what();
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(sc.jobs, static_cast<unsigned>(sc.values.size())));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < sc.values.size();) work(i);
        });
    for (auto& t : pool) t.join();

    Outcome o;
    o.doc.schema = "sweep";
    o.doc.config = detail::embedded_config(template_rc);
    o.doc.config["sweep.param"] = sc.param;
    std::string joined;
    for (const auto& v : sc.values) joined += (joined.empty() ? "" : ",") + v;
    o.doc.config["sweep.values"] = joined;
    o.doc.config["sweep.metric"] = metric;
    o.doc.config["sweep.fit_x"] = fit_x;
    o.doc.columns = {"index", sc.param, "x", "status", metric, "message"};
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < sc.values.size(); ++i) {
        const double v = parse_number(sc.param, sc.values[i]);
        const double x = transform_x(fit_x, v);
        const auto& r = results[i];
        o.doc.rows.push_back({std::uint64_t{i}, v, x, std::string(r.metric ? "ok" : "failed"),
                              r.metric ? Cell{*r.metric} : Cell{}, r.message});
        if (r.metric) {
            xs.push_back(x);
            ys.push_back(*r.metric);
        }
    }
    o.doc.summary = {{"cells", std::uint64_t{sc.values.size()}}, {"ok", std::uint64_t{xs.size()}}};
    if (xs.size() >= 2) {
        const auto fit = stats::fit_through_origin(xs, ys);
        o.doc.summary.emplace_back("slope", fit.slope);
        o.doc.summary.emplace_back("r2", fit.r2);
    } else {
        o.doc.summary.emplace_back("slope", Cell{});
        o.doc.summary.emplace_back("r2", Cell{});
    }
    o.doc.notes.push_back("fit: " + metric + " = slope * x through the origin; r2 about the mean");
    return o;
}

inline int sweep(const SweepConfig& sc, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return guarded(
        [&] {
            const auto o = run_sweep(sc);
            const auto rc = resolve(sc.base);
            emit(o.doc, rc.text("format"), rc.text("out"), out);
            return o.status;
        },
        err);
}

}  // namespace qaction::cli
