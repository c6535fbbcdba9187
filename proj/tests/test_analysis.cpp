#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qaction/qaction.hpp"

using namespace qaction;
using namespace qaction::analysis;
using std::numbers::pi;

TEST(ClassicalComplexity, PerModelCounts) {
    EXPECT_EQ(classical_complexity(ModelId::grover_h1, 1024), 10u);
    EXPECT_EQ(classical_complexity(ModelId::grover_h2, 1000), 10u);
    EXPECT_EQ(classical_complexity(ModelId::directory, 64), 64u);
    EXPECT_EQ(classical_complexity(ModelId::cavity, 30), 30u);
    EXPECT_EQ(classical_complexity(ModelId::shor_phase, 5), 32u);
    EXPECT_EQ(classical_complexity(ModelId::prep, 8), 8u);
}

TEST(ClassicalComplexity, UnknownModelRejected) {
    EXPECT_THROW(parse_model_id("telephone"), DomainError);
    EXPECT_EQ(parse_model_id("shor-phase"), ModelId::shor_phase);
}

// ------------------------------------------------------------------ reports

TEST(ActionReport, GroverSixteenAlgorithmOnly) {
    const auto run = experiments::run_grover({16, 1.0, models::GroverVariant::h1, 0});
    const auto r = experiments::grover_report(run, true);
    // rank-two oracle: spread of |in> is E a sqrt(1 - a^2) with a = 1/4
    const double spread = 0.25 * std::sqrt(15.0 / 16.0);
    ASSERT_EQ(r.stages.size(), 1u);
    EXPECT_NEAR(r.t_c, 2.0 * pi, 1e-7);
    EXPECT_NEAR(r.E_c, spread, 1e-12);
    EXPECT_NEAR(r.action, spread * 2.0 * pi, 1e-7);
    EXPECT_EQ(r.C, 4u);
    EXPECT_NEAR(r.ratio, r.action / 4.0, 1e-15);
    EXPECT_EQ(r.headline, Measure::spread);
}

TEST(ActionReport, GroverFlagsReferenceConstants) {
    const auto r = experiments::grover_report(experiments::run_grover({64, 1.0, models::GroverVariant::h2, 0}));
    ASSERT_EQ(r.discrepancies.size(), 2u);
    EXPECT_EQ(r.discrepancies[0].quantity, "gap");
    EXPECT_EQ(r.discrepancies[1].quantity, "flip_time");
    EXPECT_NEAR(r.discrepancies[1].reference, pi / 4.0, 1e-15);
    EXPECT_GT(r.discrepancies[1].ratio(), 1.8);
}

TEST(ActionReport, PhaseShiftMeanExcess) {
    const auto run = experiments::run_shor({4, 1.0, pi});
    const auto r = experiments::shor_report(run, Measure::mean_excess, true);
    EXPECT_NEAR(r.action, 7.5 * pi, 1e-12);
    EXPECT_NEAR(r.action, 23.6, 0.05);
    EXPECT_EQ(r.C, 16u);
    EXPECT_NEAR(r.ratio, 7.5 * pi / 16.0, 1e-12);
    EXPECT_NEAR(r.ratio, 1.47, 0.005);
    EXPECT_EQ(r.headline, Measure::mean_excess);
}

TEST(ActionReport, PrepAllFlipped) {
    for (unsigned n : {1u, 5u, 12u}) {
        const models::PrepModel m{n, (std::uint64_t{1} << n) - 1, 0.7};
        const auto r = experiments::prep_report(experiments::run_prep(m));
        EXPECT_NEAR(r.action, n * pi / 2.0, 1e-12);
        EXPECT_EQ(r.C, n);
        EXPECT_NEAR(r.ratio, pi / 2.0, 1e-12);
    }
}

TEST(ActionReport, StagesAddUp) {
    const auto run = experiments::run_grover({256, 1.0, models::GroverVariant::h1, 0});
    const auto r = experiments::grover_report(run);
    ASSERT_EQ(r.stages.size(), 3u);
    double t = 0.0, a = 0.0;
    for (const auto& s : r.stages) t += s.duration, a += s.action();
    EXPECT_NEAR(r.t_c, t, 1e-12);
    EXPECT_NEAR(r.action, a, 1e-12);
    EXPECT_NEAR(r.E_c, a / t, 1e-12);
}

TEST(ActionReport, RejectsDegenerateInput) {
    EXPECT_THROW(make_action_report({ModelId::prep, 3, {}, {}, std::nullopt, {}}), DomainError);
    Stage s;
    s.name = "algorithm";
    s.duration = 1.0;
    s.trace_valid = false;
    EXPECT_THROW(make_action_report({ModelId::prep, 3, {}, {s}, std::nullopt, {}}), InvalidTrace);
    s.trace_valid = true;
    s.duration = 0.0;
    EXPECT_THROW(make_action_report({ModelId::prep, 3, {}, {s}, std::nullopt, {}}), DomainError);
}

// ------------------------------------------------------------- bound checks

TEST(CheckSpeedLimit, EigenstateSatisfiedWithoutCrossing) {
    const auto h = HamiltonianSpec::diagonal(RVec{{0.0, 1.0, 3.0}});
    const auto psi = StateVector::basis_state(3, 2);
    const auto b = check_speed_limit(evolve_static(psi, h, uniform_times(20.0, 100)), psi, h);
    EXPECT_TRUE(b.satisfied);
    EXPECT_FALSE(b.t_orthogonal.has_value());
    EXPECT_EQ(b.spread, 0.0);
}

TEST(CheckSpeedLimit, EqualSuperpositionSaturates) {
    const double delta = 0.9;
    const auto h = HamiltonianSpec::diagonal(RVec{{0.0, delta}});
    const StateVector psi(Vec{{1.0, 1.0}}, Basis::computational);
    const auto b = check_speed_limit(evolve_static(psi, h, uniform_times(8.0, 41)), psi, h);
    ASSERT_TRUE(b.t_orthogonal.has_value());
    EXPECT_NEAR(b.bound, pi / delta, 1e-14);
    EXPECT_NEAR(*b.t_orthogonal, pi / delta, 1e-5);
    EXPECT_TRUE(b.satisfied);
}

TEST(CheckSpeedLimit, RejectsDrivenSpec) {
    const auto d = HamiltonianSpec::driven(HamiltonianSpec::diagonal(RVec{{0.0, 1.0}}),
                                           HamiltonianSpec::diagonal(RVec{{0.0, 0.0}}), 1.0);
    const auto psi = StateVector::basis_state(2, 0);
    EXPECT_THROW(check_speed_limit(EvolutionTrace{}, psi, d), WrongVariant);
}

TEST(CheckSpeedLimit, RandomSuiteHasNoViolations) {
    const auto cases = experiments::run_bound_suite(40, 24, 99);
    std::size_t reached = 0;
    for (const auto& c : cases) {
        EXPECT_TRUE(c.check.satisfied);
        if (c.check.t_orthogonal) ++reached;
    }
    EXPECT_GE(reached, 20u);
}

// ---------------------------------------------------------- hypothesis table

TEST(HypothesisTable, RejectsEmpty) { EXPECT_THROW(hypothesis_table({}), DomainError); }

TEST(HypothesisTable, StandardSuiteRows) {
    const auto reports = experiments::standard_suite();
    const auto rows = hypothesis_table(reports);
    ASSERT_EQ(rows.size(), 5u);
    for (const auto& r : rows) {
        EXPECT_GE(r.ratio, 0.5) << to_string(r.model);
        EXPECT_TRUE(std::isfinite(r.ratio));
    }
    for (std::size_t i = 1; i < rows.size(); ++i)
        EXPECT_LE(static_cast<int>(rows[i - 1].model), static_cast<int>(rows[i].model));
}

TEST(HypothesisTable, OrderedByModelThenSize) {
    std::vector<ActionReport> reports;
    for (std::uint64_t N : {256u, 16u, 64u})
        reports.push_back(experiments::grover_report(experiments::run_grover({N, 1.0, models::GroverVariant::h1, 0})));
    reports.push_back(experiments::prep_report(experiments::run_prep({4, 0b1111, 1.0})));
    const auto rows = hypothesis_table(reports);
    EXPECT_EQ(rows[0].model, ModelId::prep);
    EXPECT_EQ(rows[1].size, 16u);
    EXPECT_EQ(rows[2].size, 64u);
    EXPECT_EQ(rows[3].size, 256u);
}

TEST(HypothesisTable, GroverRatioRoughlyConstant) {
    std::vector<double> ratios;
    for (std::uint64_t N : {16u, 256u, 4096u})
        ratios.push_back(experiments::grover_report(experiments::run_grover({N, 1.0, models::GroverVariant::h1, 0})).ratio);
    EXPECT_LT(stats::relative_spread(ratios), 0.25);
}

// -------------------------------------------------------------- properties

TEST(AnalysisProperty, SpreadNeverExceedsSpan) {
    for (const auto& r : experiments::standard_suite()) {
        EXPECT_LE(r.measures.spread, r.measures.max_span + 1e-12) << to_string(r.model);
        EXPECT_GE(r.measures.spread, 0.0);
        EXPECT_GE(r.measures.mean_excess, 0.0);
        EXPECT_GT(r.ratio, 0.0);
    }
}

TEST(AnalysisProperty, StaticSpreadBoundedBySpan) {
    std::mt19937_64 rng(61);
    for (int rep = 0; rep < 30; ++rep) {
        const auto h = HamiltonianSpec::dense(oracle::random_hermitian(7, rng));
        const StateVector psi(oracle::random_vector(7, rng), Basis::computational);
        const auto s = static_stage("algorithm", psi, h, 1.0);
        EXPECT_LE(s.measures.spread, 0.5 * s.measures.max_span + 1e-12);
    }
}

TEST(AnalysisProperty, GroverActionIndependentOfN) {
    std::vector<double> products;
    for (std::uint64_t N = 64; N <= 4096; N *= 4) {
        const auto run = experiments::run_grover({N, 1.0, models::GroverVariant::h1, 0});
        products.push_back(run.initial_spread * run.t_star);
    }
    EXPECT_LT(stats::relative_spread(products), 0.05);
}

// -------------------------------------------------------------------- stats

TEST(Stats, FitThroughOrigin) {
    const std::vector<double> x{1, 2, 3, 4}, y{2, 4, 6, 8};
    const auto f = stats::fit_through_origin(x, y);
    EXPECT_DOUBLE_EQ(f.slope, 2.0);
    EXPECT_DOUBLE_EQ(f.r2, 1.0);
    const std::vector<double> noisy{2.1, 3.9, 6.2, 7.8};
    EXPECT_LT(stats::fit_through_origin(x, noisy).r2, 1.0);
    EXPECT_GT(stats::fit_through_origin(x, noisy).r2, 0.98);
}

TEST(Stats, SpreadAndVariation) {
    const std::vector<double> v{2.0, 2.0, 3.0};
    EXPECT_DOUBLE_EQ(stats::relative_spread(v), 0.5);
    EXPECT_NEAR(stats::coefficient_of_variation(v), std::sqrt(1.0 / 3.0) / (7.0 / 3.0), 1e-15);
}
