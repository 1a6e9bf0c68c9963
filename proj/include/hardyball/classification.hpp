#pragma once

// Decision procedures: isometry of kernel subspaces H_A -> H_B induced by point
// maps, congruence of finite sets under Aut(B_d), the branch collision behind
// the t > 2 counterexamples, and weighted Hardy space equivalence.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hardyball/ball_geometry.hpp"
#include "hardyball/kernel_spaces.hpp"
#include "hardyball/random.hpp"

namespace hardyball {

/// Default upper bound on the number of points for assignment searches.
inline constexpr std::size_t kDefaultSearchCap = 9;

/// A bijection sources[i] -> targets[assignment[i]].
class PointMap {
public:
    PointMap(std::vector<BallPoint> sources, std::vector<BallPoint> targets, std::vector<std::size_t> assignment)
        : src_(std::move(sources)), dst_(std::move(targets)), sigma_(std::move(assignment)) {
        if (src_.empty())
            throw ContractError("PointMap: empty point set");
        if (src_.size() != dst_.size() || sigma_.size() != src_.size())
            throw ContractError("PointMap: sources, targets and assignment must have equal length");
        const auto d = src_.front().dim();
        for (const auto& p : src_)
            if (p.dim() != d)
                throw ContractError("PointMap: mixed dimensions");
        for (const auto& p : dst_)
            if (p.dim() != d)
                throw ContractError("PointMap: mixed dimensions");
        std::vector<bool> hit(sigma_.size(), false);
        for (std::size_t s : sigma_) {
            if (s >= sigma_.size() || hit[s])
                throw ContractError("PointMap: assignment is not a permutation");
            hit[s] = true;
        }
        require_distinct(src_);
        require_distinct(dst_);
    }

    static PointMap identity(std::vector<BallPoint> sources, std::vector<BallPoint> targets) {
        std::vector<std::size_t> sigma(sources.size());
        std::iota(sigma.begin(), sigma.end(), std::size_t{0});
        return {std::move(sources), std::move(targets), std::move(sigma)};
    }

    std::size_t size() const { return src_.size(); }
    Eigen::Index dim() const { return src_.front().dim(); }
    const std::vector<BallPoint>& sources() const { return src_; }
    const std::vector<BallPoint>& targets() const { return dst_; }
    const std::vector<std::size_t>& assignment() const { return sigma_; }
    const BallPoint& source(std::size_t i) const { return src_.at(i); }
    const BallPoint& image(std::size_t i) const { return dst_.at(sigma_.at(i)); }

private:
    std::vector<BallPoint> src_;
    std::vector<BallPoint> dst_;
    std::vector<std::size_t> sigma_;
};

/// The factors f(x_i) with k(x_i, x_j) = f(x_i) conj(f(x_j)) k(phi x_i, phi x_j).
struct IsometryWitness {
    PointMap map;
    std::vector<Complex> factors;
    /// Relative reconstruction error of the ratio matrix by f f^*.
    double residual = 0.0;
};

struct IsometryOutcome {
    std::optional<IsometryWitness> witness;
    /// Numerical rank of the last ratio matrix examined (0 when none was formed).
    int rank = 0;
    std::size_t assignments_tested = 0;
    std::string reason;

    explicit operator bool() const { return witness.has_value(); }
};

/// R[i][j] = k(a_i, a_j) / k(phi a_i, phi a_j)
inline HermitianMatrix ratio_matrix(const PointMap& map, const KernelSpaceSpec& space) {
    space.validate();
    const auto n = static_cast<Eigen::Index>(map.size());
    CMatrix r(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        r(i, i) = (kernel_eval(map.source(ui), map.source(ui), space) / kernel_eval(map.image(ui), map.image(ui), space)).real();
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            r(i, j) = kernel_eval(map.source(ui), map.source(uj), space) / kernel_eval(map.image(ui), map.image(uj), space);
            r(j, i) = std::conj(r(i, j));
        }
    }
    return {std::move(r), space.tol.tol_herm};
}

/// Does the point map induce an isometric isomorphism H_A -> H_B?
/// Equivalent to the ratio matrix being rank one with positive diagonal.
inline IsometryOutcome isometry_test(const PointMap& map, const KernelSpaceSpec& space) {
    if (map.dim() != space.d)
        throw ContractError("isometry_test: point dimension differs from the space");
    const HermitianMatrix r = ratio_matrix(map, space);
    IsometryOutcome out;
    out.assignments_tested = 1;
    out.rank = numerical_rank(r, space.tol);
    if (out.rank != 1) {
        out.reason = "ratio matrix has numerical rank " + std::to_string(out.rank);
        return out;
    }
    std::vector<Complex> f = rank1_factor(r, space.tol);
    const double residual = rank1_residual(r, f);
    if (residual > space.tol.tol_eq) {
        out.reason = "rank-one reconstruction residual " + std::to_string(residual) + " exceeds tolerance";
        return out;
    }
    out.witness = IsometryWitness{map, std::move(f), residual};
    return out;
}

namespace detail {

inline Eigen::MatrixXd delta_matrix(std::span<const BallPoint> pts) {
    const auto n = static_cast<Eigen::Index>(pts.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = delta_invariant(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
    return m;
}

inline void check_search_input(std::span<const BallPoint> a, std::span<const BallPoint> b, std::size_t cap) {
    if (a.empty())
        throw ContractError("assignment search: empty point set");
    if (a.size() > cap)
        throw CapExceeded(a.size(), cap);
    const auto d = a.front().dim();
    for (const auto& p : a)
        if (p.dim() != d)
            throw ContractError("assignment search: mixed dimensions");
    for (const auto& p : b)
        if (p.dim() != d)
            throw ContractError("assignment search: mixed dimensions");
    require_distinct(a);
    require_distinct(b);
}

}  // namespace detail

/// Visits, in lexicographic order, every bijection A -> B whose pairwise delta
/// invariants agree; stops when the visitor returns true. Returns the number visited.
///
/// |k(x,y)|^2 / (k(x,x) k(y,y)) = delta(x,y)^{-t}, and the left side is preserved by
/// any isometry induced by a point map, so no isometric (a fortiori no congruent)
/// assignment is ever pruned, for any t > 0.
inline std::size_t for_each_candidate_assignment(std::span<const BallPoint> a, std::span<const BallPoint> b,
                                                 const TolerancePolicy& tol,
                                                 const std::function<bool(const std::vector<std::size_t>&)>& visit) {
    const std::size_t n = a.size();
    const Eigen::MatrixXd da = detail::delta_matrix(a);
    const Eigen::MatrixXd db = detail::delta_matrix(b);
    const double slack = std::sqrt(tol.tol_eq);

    std::vector<std::size_t> sigma(n);
    std::vector<bool> used(n, false);
    std::size_t visited = 0;
    bool stop = false;

    std::function<void(std::size_t)> extend = [&](std::size_t i) {
        if (i == n) {
            ++visited;
            stop = visit(sigma);
            return;
        }
        for (std::size_t c = 0; c < n && !stop; ++c) {
            if (used[c])
                continue;
            bool fits = true;
            for (std::size_t j = 0; j < i && fits; ++j) {
                const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
                const double x = da(ii, jj);
                const double y = db(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(sigma[j]));
                fits = std::abs(x - y) <= slack * std::max(x, y);
            }
            if (!fits)
                continue;
            used[c] = true;
            sigma[i] = c;
            extend(i + 1);
            used[c] = false;
        }
    };
    extend(0);
    return visited;
}

/// First assignment (lexicographic over pruned candidates) inducing an isometry.
inline IsometryOutcome isometry_search(const std::vector<BallPoint>& a, const std::vector<BallPoint>& b,
                                       const KernelSpaceSpec& space, std::size_t cap = kDefaultSearchCap) {
    space.validate();
    if (a.size() != b.size()) {
        IsometryOutcome out;
        out.reason = "point sets have different sizes (" + std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")";
        return out;
    }
    detail::check_search_input(a, b, cap);
    IsometryOutcome found;
    int last_rank = 0;
    const std::size_t visited = for_each_candidate_assignment(a, b, space.tol, [&](const std::vector<std::size_t>& sigma) {
        IsometryOutcome o = isometry_test(PointMap(a, b, sigma), space);
        last_rank = o.rank;
        if (o) {
            found = std::move(o);
            return true;
        }
        return false;
    });
    found.assignments_tested = visited;
    if (!found) {
        found.rank = last_rank;
        found.reason = visited == 0 ? "no assignment matches the pairwise delta invariants"
                                    : "none of " + std::to_string(visited) + " candidate assignments induces an isometry";
    }
    return found;
}

struct CongruenceVerdict {
    bool congruent = false;
    std::optional<BallAutomorphism> witness;
    std::optional<std::vector<std::size_t>> assignment;
    std::string refusal_reason;
    std::size_t assignments_tested = 0;
    /// max_i |witness(a_i) - b_sigma(i)|
    double max_action_error = 0.0;
    /// max |U U^* - I| of the witness's unitary factor
    double unitarity_defect = 0.0;

    explicit operator bool() const { return congruent; }
};

/// Does this particular correspondence extend to an automorphism of the ball?
///
/// Moves a = A[0] and its partner to the origin by involutions psi, theta, checks
/// that the moved configurations share all Hermitian inner products, extends by a
/// unitary U and returns theta^{-1} o U o psi^{-1}.
inline CongruenceVerdict congruence_for_assignment(const PointMap& map, const TolerancePolicy& tol = {}) {
    tol.validate();
    CongruenceVerdict v;
    v.assignments_tested = 1;
    v.assignment = map.assignment();
    const std::size_t n = map.size();

    const BallAutomorphism psi = involution_at(map.source(0));
    const BallAutomorphism theta = involution_at(map.image(0));
    std::vector<CVector> moved_a, moved_b;
    moved_a.reserve(n);
    moved_b.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        moved_a.push_back(psi.apply_inverse_raw(map.source(i).coords()));
        moved_b.push_back(theta.apply_raw(map.image(i).coords()));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double gap = std::abs(inner(moved_a[i], moved_a[j]) - inner(moved_b[i], moved_b[j]));
            if (gap > tol.tol_eq) {
                v.refusal_reason = "inner products of pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                   ") differ by " + std::to_string(gap) + " after moving to the origin";
                return v;
            }
        }

    try {
        const CMatrix u = unitary_extension(moved_a, moved_b, tol);
        BallAutomorphism w = compose(inverse(theta), compose(BallAutomorphism::from_unitary(u, tol), inverse(psi), tol), tol);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            err = std::max(err, (w.apply_raw(map.source(i).coords()) - map.image(i).coords()).norm());
        v.max_action_error = err;
        v.unitarity_defect = unitarity_defect(w.unitary());
        if (err > tol.tol_eq) {
            v.refusal_reason = "recovered automorphism misses a target by " + std::to_string(err);
            return v;
        }
        v.witness = std::move(w);
        v.congruent = true;
    } catch (const NotIsometricData& e) {
        v.refusal_reason = e.what();
    } catch (const NumericalBreakdown& e) {
        v.refusal_reason = e.what();
    }
    return v;
}

/// Is there an automorphism of B_d carrying the set A onto the set B?
inline CongruenceVerdict congruence_test(const std::vector<BallPoint>& a, const std::vector<BallPoint>& b,
                                         const TolerancePolicy& tol = {}, std::size_t cap = kDefaultSearchCap) {
    tol.validate();
    if (a.size() != b.size()) {
        CongruenceVerdict v;
        v.refusal_reason = "point sets have different sizes";
        return v;
    }
    detail::check_search_input(a, b, cap);
    CongruenceVerdict found;
    std::string last_reason;
    const std::size_t visited = for_each_candidate_assignment(a, b, tol, [&](const std::vector<std::size_t>& sigma) {
        CongruenceVerdict v = congruence_for_assignment(PointMap(a, b, sigma), tol);
        if (v) {
            found = std::move(v);
            return true;
        }
        last_reason = std::move(v.refusal_reason);
        return false;
    });
    found.assignments_tested = visited;
    if (!found) {
        found.refusal_reason = visited == 0
                                   ? "no bijection matches the pairwise delta invariants"
                                   : "no bijection survived (" + std::to_string(visited) + " tested; last: " + last_reason + ")";
    }
    return found;
}

/// g_t(z) = (1 - z)^t on the principal branch.
inline Complex branch_map(Complex z, double t) { return principal_power(1.0 - z, t); }

struct BranchCollision {
    bool injective = false;
    double t = 0.0;
    // Collision data (t > 2).
    Complex z{}, w{};
    Complex gz{}, gw{};
    double radius = 0.0;
    // Spot-check data (t <= 2).
    double min_separation = 0.0;
    std::size_t pairs_checked = 0;
};

struct BranchCheckOptions {
    std::size_t samples = 10000;
    std::uint64_t seed = 0x5eedULL;
    double min_distance = 1e-3;
};

/// Injectivity of g_t on D \ {0}: injective for t <= 2 (spot-checked), an explicit
/// collision z, w = conj(z) with |z| = |w| for t > 2.
///
/// The collision is z = 1 - r e^{i pi/t}, so t Arg(1 - z) = pi; it lies in the disk
/// iff 0 < r < 2 cos(pi/t). The default radius is min(0.8, cos(pi/t)).
inline BranchCollision branch_collision(double t, std::optional<double> radius = std::nullopt,
                                        const BranchCheckOptions& opts = {}) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw DomainError("branch_collision: t must be positive");
    BranchCollision out;
    out.t = t;
    if (t <= 2.0) {
        out.injective = true;
        Rng rng(opts.seed);
        double best = std::numeric_limits<double>::infinity();
        while (out.pairs_checked < opts.samples) {
            const Complex z = random_disk_point(rng, 0.999);
            const Complex w = random_disk_point(rng, 0.999);
            if (z == Complex{} || w == Complex{} || std::abs(z - w) <= opts.min_distance)
                continue;
            best = std::min(best, std::abs(branch_map(z, t) - branch_map(w, t)));
            ++out.pairs_checked;
        }
        out.min_separation = out.pairs_checked ? best : 0.0;
        return out;
    }
    const double c = std::cos(std::numbers::pi / t);
    const double r = radius.value_or(std::min(0.8, c));
    if (!(r > 0.0) || !(r < 2.0 * c))
        throw DomainError("branch_collision: radius must lie in (0, 2 cos(pi/t))");
    out.radius = r;
    out.z = 1.0 - std::polar(r, std::numbers::pi / t);
    out.w = std::conj(out.z);
    out.gz = branch_map(out.z, t);
    out.gw = branch_map(out.w, t);
    return out;
}

struct Counterexample {
    std::vector<BallPoint> a;
    std::vector<BallPoint> b;
    PointMap map;
    Complex z, w;
};

/// A = {0, z/sqrt|z| e1, sqrt|z| e1}, B = {0, w/sqrt|w| e1, sqrt|w| e1} with the map 0 -> 0, a_i -> b_i.
/// The ratio matrix of the map is all ones, yet <a1, a2> = z != w = <b1, b2>.
inline Counterexample counterexample_construct(double t, int d, std::optional<double> radius = std::nullopt) {
    if (d < 1)
        throw ContractError("counterexample_construct: d must be at least 1");
    if (!(t > 2.0))
        throw Refusal("no counterexample for t <= 2: every isometry induced by a point map extends to a ball automorphism");
    const BranchCollision bc = branch_collision(t, radius);
    auto along_e1 = [d](Complex c) {
        CVector v = CVector::Zero(d);
        v(0) = c;
        return BallPoint(std::move(v));
    };
    const double sz = std::sqrt(std::abs(bc.z));
    const double sw = std::sqrt(std::abs(bc.w));
    std::vector<BallPoint> a{BallPoint::origin(d), along_e1(bc.z / sz), along_e1(sz)};
    std::vector<BallPoint> b{BallPoint::origin(d), along_e1(bc.w / sw), along_e1(sw)};
    PointMap map = PointMap::identity(a, b);
    return {std::move(a), std::move(b), std::move(map), bc.z, bc.w};
}

// ---------------------------------------------------------------------------
// Weighted Hardy spaces

struct HardyEquivalenceVerdict {
    enum class Kind { isometric, equivalent, inequivalent };

    Kind kind = Kind::equivalent;
    double c = 0.0;        ///< isometric: w_n / u_n
    double epsilon = 0.0;  ///< lower bound on w_n / u_n
    double bound = 0.0;    ///< upper bound M on w_n / u_n
    std::optional<std::size_t> witness_index;
    /// Decided from the finite data only; closed-form pairs are certified.
    bool horizon_limited = true;
    std::size_t horizon = 0;

    bool affirmative() const { return kind != Kind::inequivalent; }
};

inline const char* to_string(HardyEquivalenceVerdict::Kind k) {
    switch (k) {
    case HardyEquivalenceVerdict::Kind::isometric: return "isometric";
    case HardyEquivalenceVerdict::Kind::equivalent: return "equivalent";
    case HardyEquivalenceVerdict::Kind::inequivalent: return "inequivalent";
    }
    return "?";
}

/// Least-squares slope of log(r_n) against log(n+1) over the last quarter of the horizon
/// above which a custom ratio is deemed unbounded.
inline constexpr double kRatioTrendThreshold = 0.25;

namespace detail {

inline double last_quarter_loglog_slope(std::span<const double> r) {
    const std::size_t N = r.size() - 1;
    const std::size_t start = N - N / 4;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double m = 0;
    for (std::size_t n = start; n <= N; ++n) {
        const double x = std::log(static_cast<double>(n) + 1.0);
        const double y = std::log(r[n]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        m += 1;
    }
    const double den = m * sxx - sx * sx;
    return den > 0 ? (m * sxy - sx * sy) / den : 0.0;
}

// Direction of w_n/u_n: +1 unbounded above, -1 decaying to zero, 0 bounded both ways.
struct RatioTrend {
    int direction = 0;
    bool certified = false;
    std::optional<double> limit;
};

inline RatioTrend ratio_trend(const WeightSequence& w, const WeightSequence& u, std::span<const double> r) {
    if (w.tagged() && u.tagged()) {
        const auto aw = *w.asymptotics();
        const auto au = *u.asymptotics();
        const double gap = aw.exponent - au.exponent;
        if (std::abs(gap) > 1e-12)
            return {gap > 0 ? 1 : -1, true, std::nullopt};
        return {0, true, aw.coefficient / au.coefficient};
    }
    const double slope = last_quarter_loglog_slope(r);
    if (slope > kRatioTrendThreshold)
        return {1, false, std::nullopt};
    if (slope < -kRatioTrendThreshold)
        return {-1, false, std::nullopt};
    return {0, false, std::nullopt};
}

inline std::vector<double> weight_ratios(const WeightSequence& w, const WeightSequence& u) {
    const std::size_t N = std::min(w.horizon(), u.horizon());
    std::vector<double> r(N + 1);
    for (std::size_t n = 0; n <= N; ++n)
        r[n] = w[n] / u[n];
    return r;
}

}  // namespace detail

/// Compares w_n / u_n over the common horizon: constant ratio c gives an isometric
/// isomorphism, ratio bounded in [epsilon, M] an isomorphism, unbounded ratio none.
inline HardyEquivalenceVerdict hardy_equivalence(const WeightSequence& w, const WeightSequence& u,
                                                 const TolerancePolicy& tol = {}) {
    tol.validate();
    const std::vector<double> r = detail::weight_ratios(w, u);
    const auto [lo_it, hi_it] = std::minmax_element(r.begin(), r.end());
    const double lo = *lo_it, hi = *hi_it;
    const detail::RatioTrend trend = detail::ratio_trend(w, u, r);

    HardyEquivalenceVerdict v;
    v.horizon = r.size() - 1;
    v.horizon_limited = !trend.certified;
    if (trend.direction != 0) {
        v.kind = HardyEquivalenceVerdict::Kind::inequivalent;
        v.witness_index = static_cast<std::size_t>((trend.direction > 0 ? hi_it : lo_it) - r.begin());
        v.epsilon = lo;
        v.bound = hi;
        return v;
    }
    const bool flat = hi <= lo * (1.0 + tol.tol_eq);
    const bool limit_agrees = !trend.limit || std::abs(*trend.limit - lo) <= tol.tol_eq * lo;
    if (flat && limit_agrees) {
        v.kind = HardyEquivalenceVerdict::Kind::isometric;
        v.c = lo == hi ? lo : std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
        v.epsilon = lo;
        v.bound = hi;
        return v;
    }
    v.kind = HardyEquivalenceVerdict::Kind::equivalent;
    v.epsilon = trend.limit ? std::min(lo, *trend.limit) : lo;
    v.bound = trend.limit ? std::max(hi, *trend.limit) : hi;
    return v;
}

/// alpha_n = w_n / u_n, the diagonal of T z^n = alpha_n z^n carrying k^w_s to k^u_s.
template <class Scalar>
std::vector<Scalar> diagonal_isomorphism_coefficients(std::span<const Scalar> w, std::span<const Scalar> u) {
    if (w.size() != u.size())
        throw ContractError("diagonal_isomorphism_coefficients: length mismatch");
    std::vector<Scalar> alpha;
    alpha.reserve(w.size());
    for (std::size_t n = 0; n < w.size(); ++n)
        alpha.push_back(w[n] / u[n]);
    return alpha;
}

/// Coefficientwise T(k^w_s) = k^u_s, i.e. alpha_n / w_n == 1 / u_n, compared exactly.
template <class Scalar>
bool kernel_coefficients_match(std::span<const Scalar> alpha, std::span<const Scalar> w, std::span<const Scalar> u) {
    if (alpha.size() != w.size() || w.size() != u.size())
        return false;
    for (std::size_t n = 0; n < w.size(); ++n)
        if (!(alpha[n] / w[n] == Scalar(1) / u[n]))
            return false;
    return true;
}

struct HardyIsomorphism {
    std::vector<double> alpha;
    /// alpha = sqrt(c): T is an isometry rather than a kernel-preserving isomorphism.
    bool isometric = false;
    HardyEquivalenceVerdict verdict;
};

inline HardyIsomorphism build_hardy_isomorphism(const WeightSequence& w, const WeightSequence& u,
                                                const TolerancePolicy& tol = {}) {
    HardyIsomorphism iso;
    iso.verdict = hardy_equivalence(w, u, tol);
    if (!iso.verdict.affirmative())
        throw Refusal("weights are inequivalent: w_n / u_n is unbounded over the horizon (index " +
                      std::to_string(iso.verdict.witness_index.value_or(0)) + ")");
    const std::size_t N = iso.verdict.horizon;
    if (iso.verdict.kind == HardyEquivalenceVerdict::Kind::isometric) {
        iso.isometric = true;
        iso.alpha.assign(N + 1, std::sqrt(iso.verdict.c));
    } else {
        iso.alpha = diagonal_isomorphism_coefficients<double>(w.values().first(N + 1), u.values().first(N + 1));
    }
    return iso;
}

/// Coefficients of T(k^w_s): alpha_n conj(s)^n / w_n.
inline std::vector<Complex> mapped_kernel_coefficients(const HardyIsomorphism& iso, const WeightSequence& w, Complex s) {
    std::vector<Complex> c(iso.alpha.size());
    Complex p{1.0, 0.0};
    for (std::size_t n = 0; n < c.size(); ++n) {
        c[n] = iso.alpha[n] * p / w[n];
        p *= std::conj(s);
    }
    return c;
}

/// Coefficients of the truncated kernel k^u_s: conj(s)^n / u_n.
inline std::vector<Complex> kernel_coefficients(const WeightSequence& u, Complex s, std::size_t horizon) {
    std::vector<Complex> c(horizon + 1);
    Complex p{1.0, 0.0};
    for (std::size_t n = 0; n <= horizon; ++n) {
        c[n] = p / u[n];
        p *= std::conj(s);
    }
    return c;
}

/// Relative defect of the identity the construction guarantees: alpha_n u_n / w_n = 1 for
/// the kernel-preserving map, alpha_n^2 u_n / w_n = 1 (norms of monomials) for the isometric one.
inline double isomorphism_residual(const HardyIsomorphism& iso, const WeightSequence& w, const WeightSequence& u) {
    double worst = 0.0;
    for (std::size_t n = 0; n < iso.alpha.size(); ++n) {
        const double a = iso.isometric ? iso.alpha[n] * iso.alpha[n] : iso.alpha[n];
        worst = std::max(worst, std::abs(a * u[n] / w[n] - 1.0));
    }
    return worst;
}

/// C_phi for phi(z) = e^{i theta} z between truncations of H_w and H_u, diagonal on monomials.
struct RotationDiagonal {
    std::vector<Complex> diagonal;
    /// |C_phi z^n|_u / |z^n|_w = sqrt(u_n / w_n)
    std::vector<double> norm_profile;
    double lower = 0.0;
    double upper = 0.0;
    bool bounded = true;
    bool bounded_below = true;
    bool horizon_limited = true;

    bool isomorphism() const { return bounded && bounded_below; }
};

inline RotationDiagonal rotation_composition(double theta, const WeightSequence& w, const WeightSequence& u) {
    const std::vector<double> r = detail::weight_ratios(w, u);
    RotationDiagonal out;
    out.diagonal.resize(r.size());
    out.norm_profile.resize(r.size());
    for (std::size_t n = 0; n < r.size(); ++n) {
        out.diagonal[n] = std::polar(1.0, static_cast<double>(n) * theta);
        out.norm_profile[n] = std::sqrt(u[n] / w[n]);
    }
    const auto [lo, hi] = std::minmax_element(out.norm_profile.begin(), out.norm_profile.end());
    out.lower = *lo;
    out.upper = *hi;
    const detail::RatioTrend trend = detail::ratio_trend(w, u, r);
    // profile^2 = 1 / ratio
    out.bounded = trend.direction >= 0;
    out.bounded_below = trend.direction <= 0;
    out.horizon_limited = !trend.certified;
    return out;
}

}  // namespace hardyball
