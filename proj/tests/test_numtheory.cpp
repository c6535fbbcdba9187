#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "qaction/numtheory.hpp"

using namespace qaction;
using namespace qaction::numtheory;

namespace {

// Independent oracle: primality by checking every smaller divisor.
bool naive_prime(Int n) {
    if (n < 2) return false;
    for (Int d = 2; d < n; ++d)
        if (n % d == 0) return false;
    return true;
}

FockLabel label(std::initializer_list<std::pair<Int, unsigned>> f) { return FockLabel{{f.begin(), f.end()}}; }

}  // namespace

TEST(PrimesUpTo, SmallBounds) {
    EXPECT_EQ(primes_up_to(2), (std::vector<Int>{2}));
    EXPECT_EQ(primes_up_to(13), (std::vector<Int>{2, 3, 5, 7, 11, 13}));
    EXPECT_EQ(primes_up_to(30), (std::vector<Int>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
}

TEST(PrimesUpTo, MatchesNaiveOracle) {
    std::vector<Int> expected;
    for (Int n = 2; n <= 600; ++n)
        if (naive_prime(n)) expected.push_back(n);
    EXPECT_EQ(primes_up_to(600), expected);
}

TEST(PrimesUpTo, RejectsSmallBound) {
    EXPECT_THROW(primes_up_to(1), DomainError);
    EXPECT_THROW(primes_up_to(0), DomainError);
}

TEST(FockLabelFromInteger, Examples) {
    EXPECT_TRUE(fock_label_from_integer(1).is_vacuum());
    EXPECT_EQ(fock_label_from_integer(12), label({{2, 2}, {3, 1}}));
    EXPECT_EQ(fock_label_from_integer(97), label({{97, 1}}));
    EXPECT_EQ(fock_label_from_integer(1024), label({{2, 10}}));
    EXPECT_EQ(fock_label_from_integer(999983ull * 999983ull), label({{999983, 2}}));
    EXPECT_THROW(fock_label_from_integer(0), DomainError);
}

TEST(IntegerFromFockLabel, Examples) {
    EXPECT_EQ(integer_from_fock_label(FockLabel{}), 1u);
    EXPECT_EQ(integer_from_fock_label(label({{2, 2}, {3, 1}})), 12u);
    EXPECT_EQ(integer_from_fock_label(label({{2, 10}})), 1024u);
}

TEST(IntegerFromFockLabel, DetectsOverflow) {
    EXPECT_EQ(integer_from_fock_label(label({{2, 63}})), Int{1} << 63);
    EXPECT_THROW(integer_from_fock_label(label({{2, 64}})), Overflow);
    EXPECT_THROW(integer_from_fock_label(label({{3, 20}, {5, 20}})), Overflow);
}

TEST(IntegerFromFockLabel, RejectsMalformedLabels) {
    EXPECT_THROW(integer_from_fock_label(label({{3, 1}, {2, 1}})), DomainError);
    EXPECT_THROW(integer_from_fock_label(label({{2, 0}})), DomainError);
}

TEST(CavityEnergy, Examples) {
    EXPECT_EQ(cavity_energy(1, 1.0), 0.0);
    EXPECT_NEAR(cavity_energy(12, 1.0), 2.0 * std::log(2.0) + std::log(3.0), 1e-15);
    EXPECT_NEAR(cavity_energy(12, 1.0), std::log(12.0), 1e-14);
    for (unsigned k = 1; k < 40; ++k)
        EXPECT_NEAR(cavity_energy(Int{1} << k, 2.5), 2.5 * k * std::log(2.0), 1e-12 * k);
    EXPECT_THROW(cavity_energy(0, 1.0), DomainError);
}

TEST(FockLabelToString, Format) {
    EXPECT_EQ(to_string(fock_label_from_integer(1)), "1");
    EXPECT_EQ(to_string(fock_label_from_integer(12)), "2^2*3");
    EXPECT_EQ(to_string(fock_label_from_integer(30)), "2*3*5");
}

TEST(LargestPrimeFactor, Values) {
    EXPECT_EQ(largest_prime_factor(1), 1u);
    EXPECT_EQ(largest_prime_factor(12), 3u);
    EXPECT_EQ(largest_prime_factor(97), 97u);
}

// -------------------------------------------------------------- properties

TEST(NumtheoryProperty, FactorsArePrimeAndIncreasing) {
    for (Int n = 2; n <= 3000; ++n) {
        const auto l = fock_label_from_integer(n);
        Int last = 1;
        for (const auto& [q, m] : l.factors) {
            EXPECT_TRUE(naive_prime(q)) << n;
            EXPECT_GT(q, last);
            EXPECT_GE(m, 1u);
            last = q;
        }
    }
}

TEST(NumtheoryProperty, BijectionUpToOneMillion) {
    for (Int n = 1; n <= 1'000'000; ++n) ASSERT_EQ(integer_from_fock_label(fock_label_from_integer(n)), n);
}

TEST(NumtheoryProperty, ModeSumMatchesLogarithm) {
    for (Int n = 2; n <= 1'000'000; n += 7) {
        double e = 0.0;
        for (const auto& [q, m] : fock_label_from_integer(n).factors) e += m * std::log(static_cast<double>(q));
        ASSERT_LE(std::abs(e - std::log(static_cast<double>(n))), 1e-12 * std::log(static_cast<double>(n))) << n;
    }
}

TEST(NumtheoryProperty, SpectrumOrderedByLabel) {
    double prev = cavity_energy(1, 1.0);
    for (Int n = 2; n <= 100'000; ++n) {
        const double e = cavity_energy(n, 1.0);
        ASSERT_GT(e, prev) << n;
        prev = e;
    }
}
