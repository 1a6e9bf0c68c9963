#pragma once

// Seeded generators for ball points, unitaries and automorphisms. Every random
// draw in the library, tools and tests goes through an explicitly seeded Rng.

#include <cmath>
#include <cstdint>
#include <random>

#include "hardyball/ball_geometry.hpp"

namespace hardyball {

using Rng = std::mt19937_64;

inline CVector random_gaussian_vector(Rng& rng, Eigen::Index d) {
    std::normal_distribution<double> n(0.0, 1.0);
    CVector v(d);
    for (Eigen::Index i = 0; i < d; ++i)
        v(i) = Complex(n(rng), n(rng));
    return v;
}

/// Uniform in the ball of radius max_radius (volume measure on C^d = R^{2d}).
inline BallPoint random_ball_point(Rng& rng, Eigen::Index d, double max_radius = 0.9) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    CVector v = random_gaussian_vector(rng, d);
    const double r = max_radius * std::pow(u(rng), 1.0 / (2.0 * static_cast<double>(d)));
    return BallPoint(v.normalized() * r);
}

inline Complex random_disk_point(Rng& rng, double max_radius = 0.9) {
    return random_ball_point(rng, 1, max_radius)[0];
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of diag(R) removed.
inline CMatrix random_unitary(Rng& rng, Eigen::Index d) {
    CMatrix g(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
        g.col(j) = random_gaussian_vector(rng, d);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
    const CMatrix r = qr.matrixQR();
    for (Eigen::Index j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        if (std::abs(rjj) > 0.0)
            q.col(j) *= rjj / std::abs(rjj);
    }
    return nearest_unitary(q);
}

inline BallAutomorphism random_automorphism(Rng& rng, Eigen::Index d, double max_base = 0.7) {
    return {random_unitary(rng, d), random_ball_point(rng, d, max_base)};
}

inline DiskAutomorphism random_disk_automorphism(Rng& rng, double max_b = 0.7) {
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    return {std::polar(1.0, angle(rng)), random_disk_point(rng, max_b)};
}

}  // namespace hardyball
