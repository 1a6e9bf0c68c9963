#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/rational.hpp>

#include "hardyball/classification.hpp"
#include "hardyball/random.hpp"

using namespace hardyball;
using Kind = HardyEquivalenceVerdict::Kind;

namespace {

WeightSequence custom_from(std::size_t horizon, double (*f)(double)) {
    std::vector<double> v(horizon + 1);
    for (std::size_t n = 0; n <= horizon; ++n)
        v[n] = f(static_cast<double>(n));
    return WeightSequence::custom(std::move(v));
}

}  // namespace

TEST(HardyEquivalence, ConstantRatioIsIsometric) {
    const auto v = hardy_equivalence(WeightSequence::constant(1.0), WeightSequence::constant(2.0));
    EXPECT_EQ(v.kind, Kind::isometric);
    EXPECT_EQ(v.c, 0.5);
    EXPECT_FALSE(v.horizon_limited);
    EXPECT_EQ(v.horizon, 256u);
    for (double c : {0.5, 1.0, 3.0}) {
        const auto fwd = hardy_equivalence(WeightSequence::constant(c), WeightSequence::constant(1.0));
        EXPECT_EQ(fwd.kind, Kind::isometric);
        EXPECT_EQ(fwd.c, c);
    }
}

TEST(HardyEquivalence, BoundedRatioIsEquivalent) {
    const auto u = custom_from(256, [](double n) { return (n + 2.0) / (n + 1.0); });
    const auto v = hardy_equivalence(WeightSequence::constant(1.0), u);
    EXPECT_EQ(v.kind, Kind::equivalent);
    EXPECT_GE(v.epsilon, 0.5);
    EXPECT_LE(v.bound, 1.0);
    EXPECT_EQ(v.epsilon, 0.5);
    EXPECT_TRUE(v.horizon_limited);
}

TEST(HardyEquivalence, UnboundedRatioIsInequivalent) {
    const auto u = custom_from(256, [](double n) { return 1.0 / (n + 1.0); });
    const auto v = hardy_equivalence(WeightSequence::constant(1.0), u);
    EXPECT_EQ(v.kind, Kind::inequivalent);
    ASSERT_TRUE(v.witness_index.has_value());
    EXPECT_EQ(*v.witness_index, 256u);
    EXPECT_TRUE(v.horizon_limited);

    const auto tagged = hardy_equivalence(WeightSequence::constant(1.0), WeightSequence::power(1.0));
    EXPECT_EQ(tagged.kind, Kind::inequivalent);
    EXPECT_FALSE(tagged.horizon_limited);
}

TEST(HardyEquivalence, TaggedFamilies) {
    const auto b1 = hardy_equivalence(WeightSequence::binomial(1.0), WeightSequence::constant(1.0));
    EXPECT_EQ(b1.kind, Kind::isometric);
    EXPECT_EQ(b1.c, 1.0);

    // binom(n+t-1, n)^{-1} ~ Gamma(t) n^{1-t}; equal exponents for power:-1 and binom:2.
    const auto b2 = hardy_equivalence(WeightSequence::binomial(2.0), WeightSequence::power(-1.0));
    EXPECT_EQ(b2.kind, Kind::isometric);

    const auto b3 = hardy_equivalence(WeightSequence::binomial(3.0), WeightSequence::power(-2.0));
    EXPECT_EQ(b3.kind, Kind::equivalent);
    EXPECT_FALSE(b3.horizon_limited);
    EXPECT_LE(b3.epsilon, 1.0);
    EXPECT_GE(b3.bound, 2.0);

    EXPECT_EQ(hardy_equivalence(WeightSequence::power(0.5), WeightSequence::power(1.0)).kind, Kind::inequivalent);
}

TEST(HardyEquivalence, HorizonTruncatesToMinimum) {
    const auto v = hardy_equivalence(WeightSequence::constant(1.0, 10), WeightSequence::constant(1.0, 40));
    EXPECT_EQ(v.horizon, 10u);
}

TEST(HardyEquivalence, SymmetricUnderInversion) {
    Rng rng(301);
    std::uniform_real_distribution<double> amp(0.05, 0.3), scale(0.5, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double a = amp(rng), c = scale(rng);
        std::vector<double> wv(257), uv(257);
        for (std::size_t n = 0; n <= 256; ++n) {
            wv[n] = c * (1.0 + a * std::sin(static_cast<double>(n) * 0.7));
            uv[n] = 1.0 + 0.5 * a * std::cos(static_cast<double>(n));
        }
        const auto w = WeightSequence::custom(wv), u = WeightSequence::custom(uv);
        const auto fwd = hardy_equivalence(w, u), back = hardy_equivalence(u, w);
        ASSERT_EQ(fwd.kind, Kind::equivalent);
        ASSERT_EQ(back.kind, Kind::equivalent);
        EXPECT_NEAR(back.epsilon, 1.0 / fwd.bound, 1e-12 * back.epsilon);
        EXPECT_NEAR(back.bound, 1.0 / fwd.epsilon, 1e-12 * back.bound);
    }
}

TEST(HardyEquivalence, DecayingRatioWitnessesMinimum) {
    const auto v = hardy_equivalence(WeightSequence::power(-1.0), WeightSequence::constant(1.0));
    EXPECT_EQ(v.kind, Kind::inequivalent);
    EXPECT_EQ(*v.witness_index, 256u);
}

TEST(HardyIsomorphismTest, IdenticalWeights) {
    const auto w = WeightSequence::power(1.5, 50);
    const HardyIsomorphism iso = build_hardy_isomorphism(w, w);
    EXPECT_TRUE(iso.isometric);
    ASSERT_EQ(iso.alpha.size(), 51u);
    for (double a : iso.alpha)
        EXPECT_EQ(a, 1.0);
}

TEST(HardyIsomorphismTest, IsometricModeUsesSquareRoot) {
    const auto w = WeightSequence::constant(2.0), u = WeightSequence::constant(1.0);
    const HardyIsomorphism iso = build_hardy_isomorphism(w, u);
    EXPECT_TRUE(iso.isometric);
    for (std::size_t n = 0; n < iso.alpha.size(); ++n) {
        EXPECT_EQ(iso.alpha[n], std::sqrt(2.0));
        // |T z^n|_u = alpha sqrt(u_n) = sqrt(w_n) = |z^n|_w
        EXPECT_NEAR(iso.alpha[n] * std::sqrt(u[n]), std::sqrt(w[n]), 1e-15);
    }
    EXPECT_LT(isomorphism_residual(iso, w, u), 1e-15);
}

TEST(HardyIsomorphismTest, EquivalentModeCarriesKernels) {
    std::vector<double> uv(257);
    for (std::size_t n = 0; n <= 256; ++n)
        uv[n] = static_cast<double>(n + 1) / static_cast<double>(n + 2);
    const auto w = WeightSequence::constant(1.0), u = WeightSequence::custom(uv);
    const HardyIsomorphism iso = build_hardy_isomorphism(w, u);
    EXPECT_FALSE(iso.isometric);
    EXPECT_LT(isomorphism_residual(iso, w, u), 1e-15);
    const Complex s(0.4, -0.3);
    const auto mapped = mapped_kernel_coefficients(iso, w, s);
    const auto target = kernel_coefficients(u, s, 256);
    for (std::size_t n = 0; n <= 256; ++n)
        EXPECT_LE(std::abs(mapped[n] - target[n]), 1e-15 * (1.0 + std::abs(target[n])));
}

TEST(HardyIsomorphismTest, RationalKernelIdentityIsExact) {
    using Q = boost::rational<long long>;
    std::vector<Q> w, u;
    for (long long n = 0; n <= 256; ++n) {
        w.emplace_back(1);
        u.emplace_back(n + 1, n + 2);
    }
    const auto alpha = diagonal_isomorphism_coefficients<Q>(w, u);
    for (long long n = 0; n <= 256; ++n)
        EXPECT_EQ(alpha[static_cast<std::size_t>(n)], Q(n + 2, n + 1));
    EXPECT_TRUE(kernel_coefficients_match<Q>(alpha, w, u));
    std::vector<Q> off(alpha);
    off[17] += Q(1, 1000000);
    EXPECT_FALSE(kernel_coefficients_match<Q>(off, w, u));
}

TEST(HardyIsomorphismTest, RefusesInequivalent) {
    EXPECT_THROW(build_hardy_isomorphism(WeightSequence::constant(1.0), WeightSequence::power(1.0)), Refusal);
}

TEST(RotationCompositionTest, IdentityAndUnimodular) {
    const auto w = WeightSequence::power(1.0, 64);
    const RotationDiagonal id = rotation_composition(0.0, w, w);
    for (Complex c : id.diagonal)
        EXPECT_EQ(c, Complex(1.0, 0.0));
    const RotationDiagonal r = rotation_composition(1.234, w, w);
    for (std::size_t n = 0; n < r.diagonal.size(); ++n) {
        EXPECT_NEAR(std::abs(r.diagonal[n]), 1.0, 1e-15);
        EXPECT_EQ(r.norm_profile[n], 1.0);
    }
    EXPECT_TRUE(r.isomorphism());
}

TEST(RotationCompositionTest, DecayingProfileIsNotAnIsomorphism) {
    std::vector<double> uv(257);
    for (std::size_t n = 0; n <= 256; ++n)
        uv[n] = 1.0 / static_cast<double>(n + 1);
    const auto w = WeightSequence::constant(1.0), u = WeightSequence::custom(uv);
    const RotationDiagonal r = rotation_composition(std::numbers::pi / 3, w, u);
    for (std::size_t n = 0; n <= 256; ++n)
        EXPECT_NEAR(r.norm_profile[n], std::sqrt(1.0 / static_cast<double>(n + 1)), 1e-15);
    EXPECT_TRUE(r.bounded);
    EXPECT_FALSE(r.bounded_below);
    EXPECT_FALSE(r.isomorphism());
    EXPECT_TRUE(r.horizon_limited);
}

TEST(RotationCompositionTest, VerdictIsRotationInvariant) {
    const std::pair<WeightSequence, WeightSequence> pairs[] = {
        {WeightSequence::constant(1.0), WeightSequence::constant(3.0)},
        {WeightSequence::binomial(3.0), WeightSequence::power(-2.0)},
        {WeightSequence::constant(1.0), WeightSequence::power(1.0)},
        {WeightSequence::power(2.0), WeightSequence::power(0.5)},
    };
    for (const auto& [w, u] : pairs) {
        const RotationDiagonal base = rotation_composition(0.3, w, u);
        for (double s : {-2.0, 0.1, 1.0, 3.14159, 10.0}) {
            const RotationDiagonal moved = rotation_composition(0.3 + s, w, u);
            EXPECT_EQ(moved.isomorphism(), base.isomorphism());
            EXPECT_EQ(moved.norm_profile, base.norm_profile);
        }
    }
}
