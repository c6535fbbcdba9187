#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qaction/hamiltonian.hpp"

namespace qaction {

inline constexpr std::size_t kDefaultFullSpaceCap = 16384;

// <bra| exp(-iHt) |ket> as a finite exponential sum:  constant + sum_j w_j e^{-i l_j t}.
// Evaluating it costs O(#terms), independent of the Hilbert-space dimension.
class OverlapSeries {
public:
    OverlapSeries() = default;
    OverlapSeries(RVec frequencies, Vec weights, cplx constant)
        : freq_(std::move(frequencies)), w_(std::move(weights)), c0_(constant) {}

    cplx operator()(double t) const {
        cplx acc = c0_;
        for (Eigen::Index j = 0; j < freq_.size(); ++j) acc += w_(j) * std::polar(1.0, -freq_(j) * t);
        return acc;
    }

private:
    RVec freq_;
    Vec w_;
    cplx c0_{0.0, 0.0};
};

// Exact spectral decomposition of a static Hamiltonian.
//
// Diagonal specs keep the identity eigenbasis implicitly, dense specs go through
// a full Hermitian eigensolve, and rank-two projectors are diagonalised on their
// range with the orthogonal complement carrying eigenvalue 0. All three give
// exp(-iHt) to roundoff; none uses a truncated series.
class Spectrum {
public:
    enum class Kind { diagonal, dense, low_rank };

    static Spectrum of(const HamiltonianSpec& h, std::size_t cap = kDefaultFullSpaceCap) {
        if (h.is_driven()) throw WrongVariant("static evolution needs a static Hamiltonian");
        if (h.dim() > cap)
            throw OverCap("dim " + std::to_string(h.dim()) + " exceeds the full-space cap " + std::to_string(cap) +
                          "; use the reduced two-dimensional engine for this model");
        Spectrum s;
        s.dim_ = h.dim();
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Diagonal>) {
                    s.kind_ = Kind::diagonal;
                    s.values_ = v.energies;
                } else if constexpr (std::is_same_v<T, DenseHermitian>) {
                    s.kind_ = Kind::dense;
                    Eigen::SelfAdjointEigenSolver<Mat> es(v.matrix);
                    if (es.info() != Eigen::Success) throw NumericalContract("eigensolver", "dense eigensolver failed");
                    s.values_ = es.eigenvalues();
                    s.vectors_ = es.eigenvectors();
                } else if constexpr (std::is_same_v<T, RankTwoProjector>) {
                    s.kind_ = Kind::low_rank;
                    s.init_low_rank(h, v);
                }
            },
            h.variant());
        return s;
    }

    Kind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }

    // Explicitly stored eigenvalues (for low-rank specs the implicit zero
    // eigenvalue of the complement is not listed).
    const RVec& eigenvalues() const { return values_; }
    const Mat& eigenvectors() const { return vectors_; }
    bool has_null_complement() const {
        return kind_ == Kind::low_rank && static_cast<std::size_t>(values_.size()) < dim_;
    }

    double min_eigenvalue() const {
        double m = values_.minCoeff();
        return has_null_complement() ? std::min(m, 0.0) : m;
    }
    double max_eigenvalue() const {
        double m = values_.maxCoeff();
        return has_null_complement() ? std::max(m, 0.0) : m;
    }

    Vec evolve(const Vec& psi, double t) const {
        check_len(psi);
        const Vec phases = phase_vector(t);
        switch (kind_) {
            case Kind::diagonal: return phases.cwiseProduct(psi);
            case Kind::dense: return vectors_ * phases.cwiseProduct(vectors_.adjoint() * psi);
            case Kind::low_rank: {
                const Vec c = vectors_.adjoint() * psi;
                return psi + vectors_ * (phases.array() - cplx(1.0, 0.0)).matrix().cwiseProduct(c);
            }
        }
        return psi;
    }

    OverlapSeries overlap_series(const Vec& bra, const Vec& ket) const {
        check_len(bra);
        check_len(ket);
        switch (kind_) {
            case Kind::diagonal: return {values_, bra.conjugate().cwiseProduct(ket), cplx(0.0, 0.0)};
            case Kind::dense:
                return {values_, (vectors_.adjoint() * bra).conjugate().cwiseProduct(vectors_.adjoint() * ket),
                        cplx(0.0, 0.0)};
            case Kind::low_rank: {
                const Vec w = (vectors_.adjoint() * bra).conjugate().cwiseProduct(vectors_.adjoint() * ket);
                return {values_, w, bra.dot(ket) - w.sum()};
            }
        }
        return {};
    }

private:
    Spectrum() = default;

    Vec phase_vector(double t) const {
        Vec p(values_.size());
        for (Eigen::Index j = 0; j < values_.size(); ++j) p(j) = std::polar(1.0, -values_(j) * t);
        return p;
    }

    void check_len(const Vec& x) const {
        if (static_cast<std::size_t>(x.size()) != dim_) throw DimensionMismatch("vector length != spectrum dim");
    }

    void init_low_rank(const HamiltonianSpec& h, const RankTwoProjector& p) {
        // Orthonormal basis of span{u, v}, Gram-Schmidt with one reorthogonalisation pass.
        std::vector<Vec> basis;
        for (const Vec* x : {&p.u, &p.v}) {
            Vec w = *x;
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& q : basis) w -= q * q.dot(w);
            const double n = w.norm();
            if (n > 1e-12 * std::max(1.0, x->norm())) basis.push_back(w / n);
        }
        const auto k = static_cast<Eigen::Index>(basis.size());
        if (k == 0) {
            values_ = RVec::Zero(1);
            vectors_ = Mat::Zero(static_cast<Eigen::Index>(dim_), 1);
            vectors_(0, 0) = 1.0;
            return;
        }
        Mat q(static_cast<Eigen::Index>(dim_), k);
        for (Eigen::Index j = 0; j < k; ++j) q.col(j) = basis[static_cast<std::size_t>(j)];
        Mat block(k, k);
        for (Eigen::Index j = 0; j < k; ++j) {
            const Vec hq = h.apply(q.col(j));
            for (Eigen::Index i = 0; i < k; ++i) block(i, j) = q.col(i).dot(hq);
        }
        block = (0.5 * (block + block.adjoint())).eval();
        Eigen::SelfAdjointEigenSolver<Mat> es(block);
        values_ = es.eigenvalues();
        vectors_ = q * es.eigenvectors();
    }

    Kind kind_ = Kind::diagonal;
    std::size_t dim_ = 0;
    RVec values_;
    Mat vectors_;
};

}  // namespace qaction
