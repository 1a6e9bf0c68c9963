#pragma once

// Seeded invariant suites behind `hardyball selftest`. Each suite draws its
// cases from the shared generator and reports the worst residual it saw.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hardyball/classification.hpp"
#include "hardyball/random.hpp"

namespace hardyball::selftest {

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    double max_residual = 0.0;
    double threshold = 0.0;
    bool pass = true;
};

/// (a, x) -> phi_a(x); replaceable so a harness can inject a broken convention.
using InvolutionFn = std::function<CVector(const CVector&, const CVector&)>;

inline InvolutionFn standard_involution() { return detail::involution_raw; }

inline SuiteResult finish(SuiteResult r) {
    r.pass = r.max_residual <= r.threshold;
    return r;
}

inline Eigen::Index dim_for_case(std::size_t i) { return static_cast<Eigen::Index>(1 + i % 4); }

inline SuiteResult rudin_identity(Rng& rng, std::size_t cases, const InvolutionFn& involution = standard_involution()) {
    SuiteResult r{"rudin_identity", cases, 0.0, 1e-11};
    for (std::size_t i = 0; i < cases; ++i) {
        const auto d = dim_for_case(i);
        const CVector a = random_ball_point(rng, d).coords();
        const CVector x = random_ball_point(rng, d).coords();
        const CVector y = random_ball_point(rng, d).coords();
        const Complex lhs = 1.0 - inner(involution(a, x), involution(a, y));
        const Complex rhs = (1.0 - a.squaredNorm()) * (1.0 - inner(x, y)) / ((1.0 - inner(x, a)) * (1.0 - inner(a, y)));
        r.max_residual = std::max(r.max_residual, std::abs(lhs - rhs));
    }
    return finish(r);
}

inline SuiteResult involution_property(Rng& rng, std::size_t cases) {
    SuiteResult r{"involution", cases, 0.0, 1e-10};
    for (std::size_t i = 0; i < cases; ++i) {
        const auto d = dim_for_case(i);
        const BallAutomorphism phi = involution_at(random_ball_point(rng, d));
        const BallPoint x = random_ball_point(rng, d);
        r.max_residual = std::max(r.max_residual, (apply(phi, apply(phi, x)).coords() - x.coords()).norm());
        r.max_residual = std::max(r.max_residual, apply(phi, phi.base()).norm());
    }
    return finish(r);
}

/// k(Phi x, Phi y) f(x)^t conj(f(y)^t) = k(x, y) with f(x) = sqrt(1 - |a|^2) / (1 - <x, a>).
inline SuiteResult automorphism_covariance(Rng& rng, std::size_t cases) {
    SuiteResult r{"automorphism_covariance", cases, 0.0, 1e-10};
    const double ts[] = {0.5, 1.0, 2.0, 3.0};
    for (std::size_t i = 0; i < cases; ++i) {
        const auto d = dim_for_case(i);
        const KernelSpaceSpec space{static_cast<int>(d), ts[i % 4], {}};
        const BallAutomorphism phi = random_automorphism(rng, d);
        const BallPoint x = random_ball_point(rng, d, 0.8);
        const BallPoint y = random_ball_point(rng, d, 0.8);
        const CVector& a = phi.base().coords();
        auto factor = [&](const BallPoint& p) {
            return principal_power(std::sqrt(1.0 - a.squaredNorm()) / (1.0 - inner(p.coords(), a)), space.t);
        };
        const Complex k = kernel_eval(x, y, space);
        const Complex moved = kernel_eval(apply(phi, x), apply(phi, y), space) * factor(x) * std::conj(factor(y));
        r.max_residual = std::max(r.max_residual, std::abs(moved - k) / std::abs(k));
    }
    return finish(r);
}

/// B = Phi(A): isometry_test on the induced map and congruence_test both succeed.
inline SuiteResult congruent_implies_isometric(Rng& rng, std::size_t cases) {
    SuiteResult r{"congruent_implies_isometric", cases, 0.0, 1e-8};
    const double ts[] = {0.5, 1.0, 2.0};
    for (std::size_t i = 0; i < cases; ++i) {
        const auto d = static_cast<Eigen::Index>(1 + i % 3);
        const std::size_t n = 2 + i % 5;
        const BallAutomorphism phi = random_automorphism(rng, d);
        std::vector<BallPoint> a, b;
        for (std::size_t k = 0; k < n; ++k) {
            a.push_back(random_ball_point(rng, d, 0.8));
            b.push_back(apply(phi, a.back()));
        }
        const KernelSpaceSpec space{static_cast<int>(d), ts[i % 3], {}};
        const IsometryOutcome iso = isometry_test(PointMap::identity(a, b), space);
        const CongruenceVerdict cong = congruence_test(a, b, space.tol);
        if (!iso || !cong) {
            r.max_residual = std::numeric_limits<double>::infinity();
            continue;
        }
        r.max_residual = std::max({r.max_residual, iso.witness->residual, cong.max_action_error});
    }
    return finish(r);
}

/// Counterexample maps induce isometries that do not extend to automorphisms.
inline SuiteResult counterexample_pipeline(Rng& rng, std::size_t cases) {
    SuiteResult r{"counterexample", cases, 0.0, 1e-10};
    std::uniform_real_distribution<double> tdist(2.05, 8.0);
    for (std::size_t i = 0; i < cases; ++i) {
        const double t = tdist(rng);
        const int d = static_cast<int>(1 + i % 3);
        const Counterexample ce = counterexample_construct(t, d);
        const KernelSpaceSpec space{d, t, {}};
        const HermitianMatrix ratio = ratio_matrix(ce.map, space);
        const double off_ones = max_abs(ratio.entries() - CMatrix::Ones(3, 3));
        const bool isometric = static_cast<bool>(isometry_test(ce.map, space));
        const bool extends = static_cast<bool>(congruence_for_assignment(ce.map, space.tol));
        r.max_residual = std::max(r.max_residual, (isometric && !extends) ? off_ones : std::numeric_limits<double>::infinity());
    }
    return finish(r);
}

/// g_t injective for t <= 2 (minimum separation must stay positive), collisions for t > 2.
inline SuiteResult branch_injectivity(Rng& rng, std::size_t cases) {
    SuiteResult r{"branch_injectivity", cases, 0.0, 1e-13};
    if (cases == 0)
        return finish(r);
    const double inj[] = {0.5, 1.0, 2.0};
    for (double t : inj) {
        const auto bc = branch_collision(t, std::nullopt, {cases, rng(), 1e-3});
        if (!(bc.min_separation > 1e-12))
            r.max_residual = std::numeric_limits<double>::infinity();
    }
    const double col[] = {2.5, 3.0, 4.0, 6.0};
    for (double t : col) {
        const auto bc = branch_collision(t);
        const bool shape_ok = bc.z != bc.w && std::abs(bc.z) == std::abs(bc.w);
        r.max_residual = std::max(r.max_residual, shape_ok ? std::abs(bc.gz - bc.gw) : std::numeric_limits<double>::infinity());
    }
    return finish(r);
}

inline SuiteResult schwarz_pick(Rng& rng, std::size_t cases) {
    SuiteResult r{"schwarz_pick", cases, 0.0, 1e-12};
    for (std::size_t i = 0; i < cases; ++i) {
        const DiskAutomorphism phi = random_disk_automorphism(rng);
        const Complex x = random_disk_point(rng, 0.8), y = random_disk_point(rng, 0.8);
        const double rho = pseudo_hyperbolic(x, y);
        r.max_residual = std::max(r.max_residual, std::abs(pseudo_hyperbolic(phi(x), phi(y)) - rho));
        const double contracted = pseudo_hyperbolic(x * x / 2.0, y * y / 2.0);
        r.max_residual = std::max(r.max_residual, contracted - rho);
    }
    return finish(r);
}

/// Binomial weights reproduce the H_1^t kernel within the reported bound.
inline SuiteResult weighted_kernel(Rng& rng, std::size_t cases) {
    SuiteResult r{"weighted_kernel", cases, 0.0, 0.0};
    const double ts[] = {0.5, 1.0, 2.0, 3.0};
    for (std::size_t i = 0; i < cases; ++i) {
        const double t = ts[i % 4];
        const WeightSequence w = WeightSequence::binomial(t);
        const Complex x = random_disk_point(rng, 0.6), z = random_disk_point(rng, 0.6);
        const WeightedKernelValue v = weighted_kernel_eval(x, z, w);
        const Complex exact = kernel_eval(BallPoint{z}, BallPoint{x}, {1, t, {}});
        r.max_residual = std::max(r.max_residual, std::abs(v.value - exact) - v.tail_bound);
    }
    return finish(r);
}

/// verdict(w, u) = equivalent(eps, M) iff verdict(u, w) = equivalent(1/M, 1/eps).
inline SuiteResult hardy_symmetry(Rng& rng, std::size_t cases) {
    SuiteResult r{"hardy_symmetry", cases, 0.0, 1e-12};
    std::uniform_real_distribution<double> amp(0.1, 0.9);
    std::uniform_real_distribution<double> scale(0.5, 3.0);
    for (std::size_t i = 0; i < cases; ++i) {
        const double a = amp(rng), c = scale(rng);
        std::vector<double> wv(257), uv(257);
        for (std::size_t n = 0; n <= 256; ++n) {
            wv[n] = c * (1.0 + a * std::sin(static_cast<double>(n)));
            uv[n] = 1.0 + 0.5 * a * std::cos(static_cast<double>(n));
        }
        const auto w = WeightSequence::custom(wv), u = WeightSequence::custom(uv);
        const auto fwd = hardy_equivalence(w, u), back = hardy_equivalence(u, w);
        if (fwd.kind != back.kind) {
            r.max_residual = std::numeric_limits<double>::infinity();
            continue;
        }
        r.max_residual = std::max({r.max_residual, std::abs(back.epsilon * fwd.bound - 1.0),
                                   std::abs(back.bound * fwd.epsilon - 1.0)});
    }
    return finish(r);
}

inline std::vector<SuiteResult> run_all(std::uint64_t seed, std::size_t cases) {
    Rng rng(seed);
    std::vector<SuiteResult> out;
    out.push_back(rudin_identity(rng, cases));
    out.push_back(involution_property(rng, cases));
    out.push_back(automorphism_covariance(rng, cases));
    out.push_back(congruent_implies_isometric(rng, cases));
    out.push_back(counterexample_pipeline(rng, cases));
    out.push_back(branch_injectivity(rng, cases));
    out.push_back(schwarz_pick(rng, cases));
    out.push_back(weighted_kernel(rng, cases));
    out.push_back(hardy_symmetry(rng, cases));
    return out;
}

}  // namespace hardyball::selftest
