#pragma once

// Points of the unit ball B_d in C^d, its biholomorphic automorphisms in the
// canonical form U o phi_a, the pseudo-hyperbolic metric of the disk and
// recovery of disk automorphisms from point pairs.

#include <cmath>
#include <complex>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hardyball/complex_linalg.hpp"

namespace hardyball {

/// Points with norm above 1 - kBoundaryMargin are treated as boundary-degenerate.
inline constexpr double kBoundaryMargin = 1e-12;

class BallPoint {
public:
    explicit BallPoint(CVector coords) : x_(std::move(coords)) {
        if (x_.size() < 1)
            throw ContractError("BallPoint: dimension must be at least 1");
        for (Eigen::Index i = 0; i < x_.size(); ++i)
            if (!is_finite(x_(i)))
                throw DomainError("BallPoint: non-finite coordinate");
        if (!(x_.norm() < 1.0 - kBoundaryMargin))
            throw DomainError("BallPoint: norm " + std::to_string(x_.norm()) + " is not inside the ball");
    }
    BallPoint(std::initializer_list<Complex> coords) : BallPoint(from_list(coords)) {}

    static BallPoint origin(Eigen::Index d) { return BallPoint(CVector::Zero(d)); }

    const CVector& coords() const { return x_; }
    Eigen::Index dim() const { return x_.size(); }
    double norm() const { return x_.norm(); }
    double norm2() const { return x_.squaredNorm(); }
    Complex operator[](Eigen::Index i) const { return x_(i); }

    friend bool operator==(const BallPoint& a, const BallPoint& b) { return a.x_ == b.x_; }

private:
    static CVector from_list(std::initializer_list<Complex> coords) {
        CVector v(static_cast<Eigen::Index>(coords.size()));
        Eigen::Index i = 0;
        for (Complex c : coords)
            v(i++) = c;
        return v;
    }

    CVector x_;
};

inline Complex inner(const BallPoint& x, const BallPoint& y) { return inner(x.coords(), y.coords()); }

namespace detail {

// phi_a(x) = (a - P_a x - s_a Q_a x) / (1 - <x, a>), phi_0 = id by convention.
inline CVector involution_raw(const CVector& a, const CVector& x) {
    const double a2 = a.squaredNorm();
    if (a2 == 0.0)
        return x;
    const Complex xa = inner(x, a);
    const CVector px = (xa / a2) * a;
    const CVector qx = x - px;
    const double s = std::sqrt(1.0 - a2);
    return (a - px - s * qx) / (1.0 - xa);
}

}  // namespace detail

/// Phi(x) = unitary * phi_base(x).
class BallAutomorphism {
public:
    BallAutomorphism(CMatrix unitary, BallPoint base, const TolerancePolicy& tol = {})
        : u_(std::move(unitary)), a_(std::move(base)) {
        if (u_.rows() != u_.cols() || u_.rows() != a_.dim())
            throw ContractError("BallAutomorphism: unitary and base dimensions disagree");
        if (unitarity_defect(u_) > tol.tol_eq)
            throw ContractError("BallAutomorphism: matrix is not unitary");
    }

    static BallAutomorphism identity(Eigen::Index d) {
        return {CMatrix::Identity(d, d), BallPoint::origin(d)};
    }
    static BallAutomorphism from_unitary(CMatrix u, const TolerancePolicy& tol = {}) {
        const auto d = u.rows();
        return {std::move(u), BallPoint::origin(d), tol};
    }

    const CMatrix& unitary() const { return u_; }
    const BallPoint& base() const { return a_; }
    Eigen::Index dim() const { return a_.dim(); }
    /// True when the involution factor is trivial and the map is linear.
    bool identity_involution() const { return a_.norm2() == 0.0; }

    CVector apply_raw(const CVector& x) const { return u_ * detail::involution_raw(a_.coords(), x); }
    CVector apply_inverse_raw(const CVector& y) const {
        return detail::involution_raw(a_.coords(), u_.adjoint() * y);
    }

private:
    CMatrix u_;
    BallPoint a_;
};

/// Standard Moebius involution exchanging a and 0.
inline BallAutomorphism involution_at(const BallPoint& a) {
    return {CMatrix::Identity(a.dim(), a.dim()), a};
}

namespace detail {

inline BallPoint checked_image(CVector y) {
    for (Eigen::Index i = 0; i < y.size(); ++i)
        if (!is_finite(y(i)))
            throw NumericalBreakdown("automorphism produced a non-finite value");
    if (!(y.norm() < 1.0 - kBoundaryMargin))
        throw NumericalBreakdown("automorphism image within the boundary guard");
    return BallPoint(std::move(y));
}

inline void check_dims(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b)
        throw ContractError(std::string(what) + ": dimension mismatch");
}

}  // namespace detail

inline BallPoint apply(const BallAutomorphism& phi, const BallPoint& x) {
    detail::check_dims(phi.dim(), x.dim(), "apply");
    return detail::checked_image(phi.apply_raw(x.coords()));
}

inline BallPoint apply_inverse(const BallAutomorphism& phi, const BallPoint& y) {
    detail::check_dims(phi.dim(), y.dim(), "apply_inverse");
    return detail::checked_image(phi.apply_inverse_raw(y.coords()));
}

/// (U phi_a)^{-1} = phi_a U^* = U^* phi_{Ua}.
inline BallAutomorphism inverse(const BallAutomorphism& phi) {
    return {phi.unitary().adjoint(), BallPoint(phi.unitary() * phi.base().coords())};
}

/// Canonical form of phi o psi.
///
/// The new base is a' = (phi o psi)^{-1}(0); the map phi o psi o phi_{a'} fixes
/// the origin, hence is unitary, and its columns are read off at 0.5 e_j.
inline BallAutomorphism compose(const BallAutomorphism& phi, const BallAutomorphism& psi,
                                const TolerancePolicy& tol = {}) {
    detail::check_dims(phi.dim(), psi.dim(), "compose");
    const Eigen::Index d = phi.dim();
    const BallPoint base = detail::checked_image(psi.apply_inverse_raw(phi.base().coords()));

    constexpr double probe = 0.5;
    CMatrix u(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const CVector e = probe * CVector::Unit(d, j);
        u.col(j) = phi.apply_raw(psi.apply_raw(detail::involution_raw(base.coords(), e))) / probe;
    }
    if (unitarity_defect(u) > tol.tol_eq)
        throw NumericalBreakdown("compose: origin-fixing part is not unitary to tolerance");
    return {nearest_unitary(u), base, tol};
}

/// |LHS - RHS| of 1 - <phi x, phi y> = (1 - |a|^2)(1 - <x,y>) / ((1 - <x,a>)(1 - <a,y>)),
/// where a = phi.base() is the point sent to the origin.
inline double rudin_identity_residual(const BallAutomorphism& phi, const BallPoint& x, const BallPoint& y) {
    detail::check_dims(phi.dim(), x.dim(), "rudin_identity_residual");
    detail::check_dims(phi.dim(), y.dim(), "rudin_identity_residual");
    const CVector& a = phi.base().coords();
    const Complex lhs = 1.0 - inner(phi.apply_raw(x.coords()), phi.apply_raw(y.coords()));
    const Complex rhs = (1.0 - a.squaredNorm()) * (1.0 - inner(x, y)) /
                        ((1.0 - inner(x.coords(), a)) * (1.0 - inner(a, y.coords())));
    return std::abs(lhs - rhs);
}

/// delta(x, y) = |1 - <x,y>|^2 / ((1 - |x|^2)(1 - |y|^2)); invariant under Aut(B_d).
inline double delta_invariant(const BallPoint& x, const BallPoint& y) {
    detail::check_dims(x.dim(), y.dim(), "delta_invariant");
    return std::norm(1.0 - inner(x, y)) / ((1.0 - x.norm2()) * (1.0 - y.norm2()));
}

inline void check_in_disk(Complex z, const char* what) {
    if (!is_finite(z) || !(std::abs(z) < 1.0 - kBoundaryMargin))
        throw DomainError(std::string(what) + ": point is not inside the unit disk");
}

/// rho(x, y) = |x - y| / |1 - conj(x) y|
inline double pseudo_hyperbolic(Complex x, Complex y) {
    check_in_disk(x, "pseudo_hyperbolic");
    check_in_disk(y, "pseudo_hyperbolic");
    return std::abs(x - y) / std::abs(1.0 - std::conj(x) * y);
}

/// z -> rotation * (z - b) / (1 - conj(b) z), |rotation| = 1, |b| < 1.
struct DiskAutomorphism {
    Complex rotation{1.0, 0.0};
    Complex b{0.0, 0.0};

    double theta() const { return std::arg(rotation); }
    Complex operator()(Complex z) const { return rotation * (z - b) / (1.0 - std::conj(b) * z); }
};

struct MobiusFit {
    std::optional<DiskAutomorphism> map;
    /// Exactly one distinct pair was supplied: the fit is unique only up to a post-rotation.
    bool rotation_free = false;
    /// Indices (i, j) of the first pair violating rho-preservation, or (i, i) for a pair the fit misses.
    std::optional<std::pair<std::size_t, std::size_t>> violating;
    double max_residual = 0.0;

    bool ok() const { return map.has_value(); }
};

namespace detail {

// 2x2 coefficient matrices [[p, q], [r, s]] for z -> (p z + q) / (r z + s).
using Mobius2 = Eigen::Matrix2cd;

inline Mobius2 translation_to_origin(Complex c) {
    Mobius2 m;
    m << 1.0, -c, -std::conj(c), 1.0;
    return m;
}

inline Mobius2 translation_from_origin(Complex c) {
    Mobius2 m;
    m << 1.0, c, std::conj(c), 1.0;
    return m;
}

}  // namespace detail

/// Disk automorphism mapping each x_i to y_i, if the pairs are rho-consistent.
inline MobiusFit mobius_fit(std::span<const std::pair<Complex, Complex>> pairs, const TolerancePolicy& tol = {}) {
    if (pairs.empty())
        throw ContractError("mobius_fit: need at least one pair");
    std::vector<std::size_t> distinct;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        check_in_disk(pairs[i].first, "mobius_fit");
        check_in_disk(pairs[i].second, "mobius_fit");
        bool dup = false;
        for (std::size_t j : distinct) {
            if (std::abs(pairs[i].first - pairs[j].first) < kBoundaryMargin) {
                if (std::abs(pairs[i].second - pairs[j].second) > tol.tol_eq)
                    throw InconsistentData("mobius_fit: source " + std::to_string(i) + " repeats with a different image");
                dup = true;
                break;
            }
        }
        if (!dup)
            distinct.push_back(i);
    }

    MobiusFit fit;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            const double gap = std::abs(pseudo_hyperbolic(pairs[i].first, pairs[j].first) -
                                        pseudo_hyperbolic(pairs[i].second, pairs[j].second));
            fit.max_residual = std::max(fit.max_residual, gap);
            if (gap > tol.tol_eq && !fit.violating)
                fit.violating = std::make_pair(i, j);
        }
    if (fit.violating)
        return fit;

    const auto [x1, y1] = pairs[distinct[0]];
    Complex rotation{1.0, 0.0};
    if (distinct.size() == 1) {
        fit.rotation_free = true;
    } else {
        const auto [x2, y2] = pairs[distinct[1]];
        const Complex mx = (x2 - x1) / (1.0 - std::conj(x1) * x2);
        const Complex my = (y2 - y1) / (1.0 - std::conj(y1) * y2);
        rotation = my / mx;
        rotation /= std::abs(rotation);
    }

    Eigen::Matrix2cd rot;
    rot << rotation, 0.0, 0.0, 1.0;
    const Eigen::Matrix2cd m = detail::translation_from_origin(y1) * rot * detail::translation_to_origin(x1);
    // (p z + q)/(r z + s) = (p/s) (z + q/p) / (1 + (r/s) z)
    DiskAutomorphism phi;
    phi.b = -m(0, 1) / m(0, 0);
    phi.rotation = m(0, 0) / m(1, 1);
    phi.rotation /= std::abs(phi.rotation);

    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double miss = std::abs(phi(pairs[i].first) - pairs[i].second);
        fit.max_residual = std::max(fit.max_residual, miss);
        if (miss > tol.tol_eq) {
            fit.violating = std::make_pair(i, i);
            return fit;
        }
    }
    fit.map = phi;
    return fit;
}

}  // namespace hardyball
