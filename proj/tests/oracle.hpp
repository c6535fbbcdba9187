#pragma once

// Independent reference computations for the tests. The propagator comes from
// Eigen's Pade scaling-and-squaring matrix exponential, not an eigensolve.

#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "qaction/state.hpp"

namespace oracle {

using qaction::cplx;
using qaction::Mat;
using qaction::Vec;

inline Mat propagator(const Mat& h, double t) {
    const Mat a = (cplx(0.0, -t) * h).eval();
    return a.exp();
}

inline Vec evolve(const Mat& h, const Vec& psi, double t) { return propagator(h, t) * psi; }

inline Mat random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Mat a(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = g(rng);
            const double im = g(rng);
            a(i, j) = cplx(re, im);
        }
    return 0.5 * (a + a.adjoint());
}

inline Vec random_vector(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = g(rng);
        const double im = g(rng);
        v(i) = cplx(re, im);
    }
    return v / v.norm();
}

// Dense H1/H2 built element by element from the defining outer products.
inline Mat grover_dense(Eigen::Index N, Eigen::Index x, double E, bool h2) {
    const double a = 1.0 / std::sqrt(static_cast<double>(N));
    Mat h(N, N);
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index j = 0; j < N; ++j) {
            const double xx = (i == x && j == x) ? 1.0 : 0.0;
            const double xin = i == x ? a : 0.0;  // |x><in|
            const double inx = j == x ? a : 0.0;  // |in><x|
            if (!h2) h(i, j) = E * (xx + a * a);
            else h(i, j) = cplx(0.0, E) * (xin - inx);
        }
    return h;
}

}  // namespace oracle
