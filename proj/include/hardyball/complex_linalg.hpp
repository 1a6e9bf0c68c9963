#pragma once

// Complex scalar and dense-matrix substrate: principal-branch powers, Hermitian
// matrices, numerical rank, rank-one factorization and unitary completion.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hardyball/errors.hpp"

namespace hardyball {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

struct TolerancePolicy {
    double tol_rank = 1e-9;  ///< relative singular-value cutoff
    double tol_eq = 1e-8;    ///< entrywise equality
    double tol_herm = 1e-10; ///< Hermitian symmetry slack

    void validate() const {
        auto ok = [](double v) { return std::isfinite(v) && v > 0.0 && v < 1.0; };
        if (!ok(tol_rank) || !ok(tol_eq) || !ok(tol_herm))
            throw ContractError("tolerances must lie strictly inside (0, 1)");
    }

    friend bool operator==(const TolerancePolicy&, const TolerancePolicy&) = default;
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Log z with imaginary part in (-pi, pi].
inline Complex principal_log(Complex z) {
    if (!is_finite(z))
        throw DomainError("principal_log: non-finite argument");
    if (z == Complex(0.0, 0.0))
        throw DomainError("principal_log: zero has no logarithm");
    // A signed zero imaginary part would put negative reals at -pi.
    if (z.imag() == 0.0)
        z = Complex(z.real(), 0.0);
    return {std::log(std::abs(z)), std::arg(z)};
}

/// z^t = exp(t Log z), restricted to the right half plane where z^t w^t = (zw)^t.
inline Complex principal_power(Complex z, double t) {
    if (!(z.real() > 0.0))
        throw DomainError("principal_power: argument must have positive real part");
    if (!std::isfinite(t))
        throw DomainError("principal_power: non-finite exponent");
    return std::exp(t * principal_log(z));
}

/// <x, y> = sum x_i conj(y_i), linear in the first slot.
inline Complex inner(const CVector& x, const CVector& y) {
    if (x.size() != y.size())
        throw ContractError("inner: dimension mismatch");
    // Eigen's dot conjugates its left operand.
    return y.dot(x);
}

inline double max_abs(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Square complex matrix validated to be Hermitian up to a relative slack.
class HermitianMatrix {
public:
    HermitianMatrix(CMatrix entries, double tol_herm) : m_(std::move(entries)) {
        if (m_.rows() == 0 || m_.rows() != m_.cols())
            throw ContractError("HermitianMatrix: must be square and non-empty");
        for (Eigen::Index i = 0; i < m_.size(); ++i)
            if (!is_finite(m_.data()[i]))
                throw ContractError("HermitianMatrix: non-finite entry");
        const double scale = std::max(1.0, max_abs(m_));
        const double defect = max_abs(m_ - m_.adjoint());
        if (defect > tol_herm * scale)
            throw ContractError("HermitianMatrix: asymmetry " + std::to_string(defect) + " exceeds slack");
    }

    Eigen::Index size() const { return m_.rows(); }
    const CMatrix& entries() const { return m_; }
    Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

    Eigen::VectorXd singular_values() const {
        Eigen::JacobiSVD<CMatrix> svd(m_);
        return svd.singularValues();
    }

    /// Ascending real eigenvalues of the Hermitian part.
    Eigen::VectorXd eigenvalues() const {
        CMatrix sym = 0.5 * (m_ + m_.adjoint());
        Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
        return es.eigenvalues();
    }

private:
    CMatrix m_;
};

/// Count of singular values above tol_rank times the largest one.
inline int numerical_rank(const HermitianMatrix& m, const TolerancePolicy& tol) {
    const Eigen::VectorXd sv = m.singular_values();
    const double largest = sv.size() ? sv.maxCoeff() : 0.0;
    if (largest == 0.0)
        return 0;
    int rank = 0;
    for (double s : sv)
        if (s > tol.tol_rank * largest)
            ++rank;
    return rank;
}

/// Returns f with M = f f^*, normalized so f[0] = sqrt(M[0][0]) > 0.
inline std::vector<Complex> rank1_factor(const HermitianMatrix& m, const TolerancePolicy& tol) {
    const int rank = numerical_rank(m, tol);
    if (rank != 1)
        throw NotRankOne(rank);
    const auto n = m.size();
    for (Eigen::Index i = 0; i < n; ++i)
        if (!(m(i, i).real() > 0.0))
            throw NotPositive("rank1_factor: diagonal entry " + std::to_string(i) + " is not positive");

    std::vector<Complex> f(static_cast<std::size_t>(n));
    const double f0 = std::sqrt(m(0, 0).real());
    f[0] = f0;
    for (Eigen::Index j = 1; j < n; ++j)
        f[static_cast<std::size_t>(j)] = std::conj(m(0, j)) / f0;
    return f;
}

/// Largest entrywise deviation of f f^* from M, relative to max(1, max|M|).
inline double rank1_residual(const HermitianMatrix& m, std::span<const Complex> f) {
    const auto n = m.size();
    if (static_cast<Eigen::Index>(f.size()) != n)
        throw ContractError("rank1_residual: factor length mismatch");
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            worst = std::max(worst, std::abs(m(i, j) - f[static_cast<std::size_t>(i)] * std::conj(f[static_cast<std::size_t>(j)])));
    return worst / std::max(1.0, max_abs(m.entries()));
}

/// max |(U U^* - I)_{ij}|
inline double unitarity_defect(const CMatrix& u) {
    return max_abs(u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols()));
}

/// Unitary factor of the polar decomposition, the closest unitary in Frobenius norm.
inline CMatrix nearest_unitary(const CMatrix& m) {
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

/// Unitary U on C^d with U s_i = t_i, given that the two families share a Gram matrix.
///
/// span(sources) is orthonormalized by column-pivoted Householder QR; the same
/// triangular factor carries the targets to a compatible orthonormal basis of
/// span(targets). Orthogonal complements come from Householder QR and are mapped
/// basis-to-basis in pivot order, so the completion is deterministic.
inline CMatrix unitary_extension(std::span<const CVector> sources, std::span<const CVector> targets,
                                 const TolerancePolicy& tol) {
    if (sources.size() != targets.size())
        throw ContractError("unitary_extension: source/target count mismatch");
    if (sources.empty())
        throw ContractError("unitary_extension: need at least one vector to fix the dimension");
    const Eigen::Index d = sources.front().size();
    const auto k = static_cast<Eigen::Index>(sources.size());
    CMatrix s(d, k), t(d, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        const auto& sj = sources[static_cast<std::size_t>(j)];
        const auto& tj = targets[static_cast<std::size_t>(j)];
        if (sj.size() != d || tj.size() != d)
            throw ContractError("unitary_extension: dimension mismatch");
        s.col(j) = sj;
        t.col(j) = tj;
    }

    const double gram_gap = max_abs(s.adjoint() * s - t.adjoint() * t);
    if (gram_gap > tol.tol_eq)
        throw NotIsometricData("unitary_extension: inner products differ by " + std::to_string(gram_gap));

    Eigen::ColPivHouseholderQR<CMatrix> qr(s);
    qr.setThreshold(tol.tol_rank);
    const Eigen::Index r = s.isZero(0.0) ? 0 : qr.rank();

    CMatrix u = CMatrix::Identity(d, d);
    if (r > 0) {
        const CMatrix q_full = qr.householderQ() * CMatrix::Identity(d, d);
        const CMatrix r11 = qr.matrixR().topLeftCorner(r, r).template triangularView<Eigen::Upper>();
        const CMatrix tp = (t * qr.colsPermutation()).leftCols(r);
        const CMatrix basis_s = q_full.leftCols(r);
        // X R11 = T P  =>  X = T P R11^{-1}
        const CMatrix basis_t = r11.transpose().template triangularView<Eigen::Lower>().solve(tp.transpose()).transpose();

        CMatrix span_map = basis_t * basis_s.adjoint();
        if (r < d) {
            const CMatrix q_t = Eigen::HouseholderQR<CMatrix>(basis_t).householderQ() * CMatrix::Identity(d, d);
            span_map += q_t.rightCols(d - r) * q_full.rightCols(d - r).adjoint();
        }
        u = nearest_unitary(span_map);
    }

    const double action_gap = max_abs(u * s - t);
    if (action_gap > tol.tol_eq)
        throw NotIsometricData("unitary_extension: extension misses targets by " + std::to_string(action_gap));
    if (unitarity_defect(u) > tol.tol_eq)
        throw NotIsometricData("unitary_extension: completion is not unitary");
    return u;
}

}  // namespace hardyball
