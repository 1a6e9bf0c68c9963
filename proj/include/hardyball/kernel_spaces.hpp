#pragma once

// Reproducing kernels of H_d^t on the ball and of weighted Hardy spaces on the
// disk, Gram matrices of finite point sets, and weight-sequence models.

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "hardyball/ball_geometry.hpp"

namespace hardyball {

/// The space H_d^t with kernel (1 - <x,y>)^{-t}.
struct KernelSpaceSpec {
    int d = 1;
    double t = 1.0;
    TolerancePolicy tol{};

    void validate() const {
        if (d < 1)
            throw ContractError("KernelSpaceSpec: d must be at least 1");
        if (!(t > 0.0) || !std::isfinite(t))
            throw ContractError("KernelSpaceSpec: t must be positive");
        tol.validate();
    }
};

inline Complex kernel_eval(const BallPoint& x, const BallPoint& y, const KernelSpaceSpec& space) {
    if (x.dim() != space.d || y.dim() != space.d)
        throw ContractError("kernel_eval: point dimension differs from the space");
    return 1.0 / principal_power(1.0 - inner(x, y), space.t);
}

struct GramMatrix {
    std::vector<BallPoint> points;
    KernelSpaceSpec space;
    HermitianMatrix matrix;
};

/// Two points closer than this are considered the same point.
inline constexpr double kDuplicateThreshold = 1e-12;

inline void require_distinct(std::span<const BallPoint> points) {
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if ((points[i].coords() - points[j].coords()).norm() < kDuplicateThreshold)
                throw DuplicatePoints(i, j);
}

inline GramMatrix gram(std::span<const BallPoint> points, const KernelSpaceSpec& space) {
    space.validate();
    if (points.empty())
        throw ContractError("gram: empty point set");
    require_distinct(points);
    const auto n = static_cast<Eigen::Index>(points.size());
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& xi = points[static_cast<std::size_t>(i)];
        m(i, i) = kernel_eval(xi, xi, space).real();
        for (Eigen::Index j = i + 1; j < n; ++j) {
            m(i, j) = kernel_eval(xi, points[static_cast<std::size_t>(j)], space);
            m(j, i) = std::conj(m(i, j));
        }
    }
    return {std::vector<BallPoint>(points.begin(), points.end()), space, HermitianMatrix(std::move(m), space.tol.tol_herm)};
}

enum class WeightFamily { constant, power, binomial, custom };

inline const char* to_string(WeightFamily f) {
    switch (f) {
    case WeightFamily::constant: return "const";
    case WeightFamily::power: return "power";
    case WeightFamily::binomial: return "binom";
    case WeightFamily::custom: return "custom";
    }
    return "?";
}

/// w_n ~ coefficient * n^exponent as n -> infinity.
struct WeightAsymptotics {
    double coefficient;
    double exponent;
};

/// Positive weights w_0..w_N of a weighted Hardy space, optionally tagged with a closed form:
/// constant c (w_n = c), power s (w_n = (n+1)^s), binomial t (w_n = 1 / binom(n+t-1, n)).
class WeightSequence {
public:
    static constexpr std::size_t kDefaultHorizon = 256;

    static WeightSequence constant(double c, std::size_t horizon = kDefaultHorizon) {
        if (!(c > 0.0) || !std::isfinite(c))
            throw DomainError("constant weights must be positive");
        return {WeightFamily::constant, c, horizon};
    }
    static WeightSequence power(double s, std::size_t horizon = kDefaultHorizon) {
        if (!std::isfinite(s))
            throw DomainError("power exponent must be finite");
        return {WeightFamily::power, s, horizon};
    }
    static WeightSequence binomial(double t, std::size_t horizon = kDefaultHorizon) {
        if (!(t > 0.0) || !std::isfinite(t))
            throw DomainError("binomial weight parameter must be positive");
        return {WeightFamily::binomial, t, horizon};
    }
    static WeightSequence custom(std::vector<double> values) {
        if (values.size() < 2)
            throw DomainError("custom weights need a horizon of at least 1");
        for (std::size_t n = 0; n < values.size(); ++n)
            if (!(values[n] > 0.0) || !std::isfinite(values[n]))
                throw DomainError("weight w_" + std::to_string(n) + " is not a positive finite number");
        WeightSequence w;
        w.family_ = WeightFamily::custom;
        w.values_ = std::move(values);
        return w;
    }

    /// Closed-form value at index n; custom sequences return the stored value.
    static double closed_form(WeightFamily family, double param, std::size_t n) {
        const double dn = static_cast<double>(n);
        switch (family) {
        case WeightFamily::constant: return param;
        case WeightFamily::power: return std::pow(dn + 1.0, param);
        case WeightFamily::binomial: {
            // binom(n+t-1, n) = prod_{k=1..n} (k + t - 1) / k
            double c = 1.0;
            for (std::size_t k = 1; k <= n; ++k)
                c *= (static_cast<double>(k) + param - 1.0) / static_cast<double>(k);
            return 1.0 / c;
        }
        case WeightFamily::custom: break;
        }
        throw ContractError("closed_form: custom weights have no closed form");
    }

    std::size_t horizon() const { return values_.size() - 1; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t n) const { return values_.at(n); }
    WeightFamily family() const { return family_; }
    double parameter() const { return param_; }
    bool tagged() const { return family_ != WeightFamily::custom; }

    std::optional<WeightAsymptotics> asymptotics() const {
        switch (family_) {
        case WeightFamily::constant: return WeightAsymptotics{param_, 0.0};
        case WeightFamily::power: return WeightAsymptotics{1.0, param_};
        case WeightFamily::binomial: return WeightAsymptotics{std::tgamma(param_), 1.0 - param_};
        case WeightFamily::custom: break;
        }
        return std::nullopt;
    }

    /// The stored values agree with the tag's closed form, relative tolerance rel.
    bool matches_closed_form(double rel = 1e-12) const {
        if (!tagged())
            return true;
        for (std::size_t n = 0; n < values_.size(); ++n) {
            const double expect = closed_form(family_, param_, n);
            if (std::abs(values_[n] - expect) > rel * expect)
                return false;
        }
        return true;
    }

    std::string describe() const {
        if (!tagged())
            return "custom";
        std::ostringstream os;
        os << to_string(family_) << ':' << param_;
        return os.str();
    }

private:
    WeightSequence() = default;
    WeightSequence(WeightFamily f, double param, std::size_t horizon) : family_(f), param_(param) {
        if (horizon < 1)
            throw DomainError("weight horizon must be at least 1");
        values_.resize(horizon + 1);
        if (f == WeightFamily::binomial) {
            double c = 1.0;
            values_[0] = 1.0;
            for (std::size_t k = 1; k <= horizon; ++k) {
                c *= (static_cast<double>(k) + param - 1.0) / static_cast<double>(k);
                values_[k] = 1.0 / c;
            }
        } else {
            for (std::size_t n = 0; n <= horizon; ++n)
                values_[n] = closed_form(f, param, n);
        }
        for (double v : values_)
            if (!(v > 0.0) || !std::isfinite(v))
                throw DomainError("weight family " + describe() + " leaves the positive finite range within the horizon");
    }

    WeightFamily family_ = WeightFamily::custom;
    double param_ = 0.0;
    std::vector<double> values_;
};

struct RadiusGuardResult {
    bool pass = true;
    /// Verdict follows from the closed form rather than the finite data.
    bool certified = false;
    std::optional<std::size_t> violating_index;
};

/// Does sum w_n^{-1} z^n have radius of convergence at least 1?
///
/// Tagged families are certified analytically. Custom arrays use the root-test
/// proxy w_n^{-1/n} <= 1 + slack over the upper half of the horizon, which is
/// only as good as the horizon.
inline RadiusGuardResult radius_guard(const WeightSequence& w, double slack = 0.1) {
    if (w.tagged())
        return {true, true, std::nullopt};
    const std::size_t N = w.horizon();
    for (std::size_t n = std::max<std::size_t>(1, N / 2); n <= N; ++n)
        if (std::pow(w[n], -1.0 / static_cast<double>(n)) > 1.0 + slack)
            return {false, false, n};
    return {true, false, std::nullopt};
}

struct WeightedKernelValue {
    Complex value;
    /// Bound on |value - k_x(z)|: geometric truncation estimate plus accumulated rounding.
    double tail_bound = 0.0;
    /// tail_bound >= tol_eq
    bool truncation_dominated = false;
};

/// Partial sum of k_x(z) = sum_n w_n^{-1} (conj(x) z)^n over the weight horizon.
inline WeightedKernelValue weighted_kernel_eval(Complex x, Complex z, const WeightSequence& w,
                                                const TolerancePolicy& tol = {}) {
    check_in_disk(x, "weighted_kernel_eval");
    check_in_disk(z, "weighted_kernel_eval");
    if (const auto guard = radius_guard(w); !guard.pass)
        throw NotAFunctionSpace("sum w_n^{-1} z^n has radius of convergence below 1 (index " +
                                std::to_string(*guard.violating_index) + ")");

    const std::size_t N = w.horizon();
    const Complex u = std::conj(x) * z;
    Complex sum{0.0, 0.0};
    Complex term_power{1.0, 0.0};
    double abs_sum = 0.0;
    for (std::size_t n = 0; n <= N; ++n) {
        const Complex term = term_power / w[n];
        sum += term;
        abs_sum += std::abs(term);
        term_power *= u;
    }

    double root_max = 0.0;
    for (std::size_t n = std::max<std::size_t>(1, N / 2); n <= N; ++n)
        root_max = std::max(root_max, std::pow(w[n], -1.0 / static_cast<double>(n)));
    const double q = root_max * std::abs(u);
    double truncation = std::numeric_limits<double>::infinity();
    if (q < 1.0)
        truncation = std::pow(q, static_cast<double>(N + 1)) / (1.0 - q);
    const double rounding = 2.0 * static_cast<double>(N + 2) * std::numeric_limits<double>::epsilon() * abs_sum;

    WeightedKernelValue out;
    out.value = sum;
    out.tail_bound = truncation + rounding;
    out.truncation_dominated = !(out.tail_bound < tol.tol_eq);
    return out;
}

}  // namespace hardyball
