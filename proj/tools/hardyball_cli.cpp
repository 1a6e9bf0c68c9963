// hardyball: command-line front end.
//
// Exit codes: 0 affirmative verdict, 1 negative verdict, 2 error or refusal.
// stdout carries exactly one JSON document whenever a verdict was reached;
// diagnostics go to stderr.

#include <cstdint>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hardyball/hardyball.hpp"
#include "hardyball/io.hpp"
#include "hardyball/selftest.hpp"

namespace hb = hardyball;
using hb::io::json;

namespace {

enum ExitCode : int { kAffirmative = 0, kNegative = 1, kError = 2 };

std::vector<std::size_t> parse_assignment(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == 0 || pos != item.size())
            throw hb::io::DocumentError("--assignment: \"" + item + "\" is not a non-negative integer");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

hb::io::PointSetDocument load_points(const std::string& path) {
    return hb::io::PointSetDocument::from_json(hb::io::read_json_file(path));
}

json factors_json(const std::vector<hb::Complex>& f) {
    json a = json::array();
    for (auto z : f)
        a.push_back(hb::io::to_json(z));
    return a;
}

double finite_or_max(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::max(); }

void emit(const hb::io::VerdictDocument& doc) { std::cout << doc.to_json().dump(2) << '\n'; }

struct GramArgs {
    std::string points;
    double t = 1.0;
    double tol = hb::TolerancePolicy{}.tol_eq;
};

int run_gram(const GramArgs& args) {
    const auto doc = load_points(args.points);
    hb::KernelSpaceSpec space{doc.d, args.t, {}};
    space.tol.tol_eq = args.tol;
    const hb::GramMatrix g = hb::gram(doc.points, space);
    const json out{{"command", "gram"},
                   {"d", doc.d},
                   {"t", args.t},
                   {"matrix", hb::io::to_json(g.matrix.entries())},
                   {"min_eigenvalue", g.matrix.eigenvalues()(0)},
                   {"tolerances", hb::io::to_json(space.tol)}};
    std::cout << out.dump(2) << '\n';
    return kAffirmative;
}

struct PairArgs {
    std::string a, b;
    double t = 1.0;
    std::string assignment;
    bool search = false;
    std::size_t cap = hb::kDefaultSearchCap;
    double tol = hb::TolerancePolicy{}.tol_eq;
};

int run_isometry(const PairArgs& args) {
    const auto da = load_points(args.a);
    const auto db = load_points(args.b);
    if (da.d != db.d)
        throw hb::ContractError("point sets live in different dimensions (" + std::to_string(da.d) + " vs " + std::to_string(db.d) + ")");
    hb::KernelSpaceSpec space{da.d, args.t, {}};
    space.tol.tol_eq = args.tol;
    space.validate();

    hb::io::VerdictDocument doc;
    doc.command = "isometry";
    doc.tolerances = space.tol;
    doc.details = {{"t", args.t}, {"d", da.d}, {"search", args.search}};

    hb::IsometryOutcome outcome;
    if (da.points.size() != db.points.size()) {
        outcome.reason = "point sets have different sizes";
    } else if (args.search) {
        outcome = hb::isometry_search(da.points, db.points, space, args.cap);
    } else {
        const hb::PointMap map = args.assignment.empty()
                                     ? hb::PointMap::identity(da.points, db.points)
                                     : hb::PointMap(da.points, db.points, parse_assignment(args.assignment));
        outcome = hb::isometry_test(map, space);
    }
    doc.details["rank"] = outcome.rank;
    doc.details["assignments_tested"] = outcome.assignments_tested;
    if (outcome) {
        const auto& w = *outcome.witness;
        doc.verdict = "isometric";
        doc.witness = json{{"assignment", w.map.assignment()}, {"factors", factors_json(w.factors)}};
        doc.residuals["reconstruction"] = w.residual;
        emit(doc);
        return kAffirmative;
    }
    doc.verdict = "not_isometric";
    doc.details["reason"] = outcome.reason;
    emit(doc);
    return kNegative;
}

int run_congruence(const PairArgs& args) {
    const auto da = load_points(args.a);
    const auto db = load_points(args.b);
    if (da.d != db.d)
        throw hb::ContractError("point sets live in different dimensions (" + std::to_string(da.d) + " vs " + std::to_string(db.d) + ")");
    hb::TolerancePolicy tol;
    tol.tol_eq = args.tol;
    tol.validate();

    hb::io::VerdictDocument doc;
    doc.command = "congruence";
    doc.tolerances = tol;
    doc.details = {{"d", da.d}, {"mode", args.assignment.empty() ? "search" : "assignment"}};

    hb::CongruenceVerdict v;
    if (da.points.size() != db.points.size()) {
        v.refusal_reason = "point sets have different sizes";
    } else if (args.assignment.empty()) {
        v = hb::congruence_test(da.points, db.points, tol, args.cap);
    } else {
        v = hb::congruence_for_assignment(hb::PointMap(da.points, db.points, parse_assignment(args.assignment)), tol);
    }
    doc.details["assignments_tested"] = v.assignments_tested;
    if (v) {
        doc.verdict = "congruent";
        doc.witness = json{{"assignment", *v.assignment}, {"automorphism", hb::io::to_json(*v.witness)}};
        doc.residuals["max_action_error"] = v.max_action_error;
        doc.residuals["unitarity_defect"] = v.unitarity_defect;
        emit(doc);
        return kAffirmative;
    }
    doc.verdict = "not_congruent";
    doc.details["reason"] = v.refusal_reason;
    emit(doc);
    return kNegative;
}

struct CounterexampleArgs {
    double t = 3.0;
    int d = 1;
    std::string out_a, out_b;
    std::optional<double> radius;
};

int run_counterexample(const CounterexampleArgs& args) {
    const hb::Counterexample ce = hb::counterexample_construct(args.t, args.d, args.radius);
    hb::io::write_json_file(args.out_a, hb::io::PointSetDocument{args.d, ce.a}.to_json());
    hb::io::write_json_file(args.out_b, hb::io::PointSetDocument{args.d, ce.b}.to_json());

    const hb::KernelSpaceSpec space{args.d, args.t, {}};
    const hb::HermitianMatrix ratio = hb::ratio_matrix(ce.map, space);
    const hb::IsometryOutcome iso = hb::isometry_test(ce.map, space);
    const hb::CongruenceVerdict extends = hb::congruence_for_assignment(ce.map, space.tol);
    const hb::CongruenceVerdict as_sets = hb::congruence_test(ce.a, ce.b, space.tol);
    const bool ok = static_cast<bool>(iso) && !extends;

    hb::io::VerdictDocument doc;
    doc.command = "counterexample";
    doc.verdict = ok ? "isometric_not_congruent" : "self_check_failed";
    doc.tolerances = space.tol;
    doc.residuals["ratio_matrix_vs_ones"] = hb::max_abs(ratio.entries() - hb::CMatrix::Ones(3, 3));
    if (iso)
        doc.residuals["isometry_reconstruction"] = iso.witness->residual;
    doc.details = {{"t", args.t},
                   {"d", args.d},
                   {"z", hb::io::to_json(ce.z)},
                   {"w", hb::io::to_json(ce.w)},
                   {"isometric", static_cast<bool>(iso)},
                   {"congruent", static_cast<bool>(extends)},
                   {"congruence_reason", extends.refusal_reason},
                   {"sets_congruent_under_other_assignment", static_cast<bool>(as_sets)},
                   {"files", {args.out_a, args.out_b}}};
    emit(doc);
    if (!ok)
        std::cerr << "counterexample self-check failed\n";
    return ok ? kAffirmative : kError;
}

struct HardyArgs {
    std::string w, u;
    std::size_t horizon = hb::WeightSequence::kDefaultHorizon;
};

int run_hardy(const HardyArgs& args) {
    if (args.horizon < 1)
        throw hb::ContractError("--horizon must be at least 1");
    const hb::WeightSequence w = hb::io::parse_weight_spec(args.w, args.horizon);
    const hb::WeightSequence u = hb::io::parse_weight_spec(args.u, args.horizon);
    const hb::HardyEquivalenceVerdict v = hb::hardy_equivalence(w, u);

    hb::io::VerdictDocument doc;
    doc.command = "hardy";
    doc.verdict = hb::to_string(v.kind);
    doc.details = {{"w", args.w},
                   {"u", args.u},
                   {"horizon", v.horizon},
                   {"horizon_limited", v.horizon_limited},
                   {"epsilon", v.epsilon},
                   {"M", v.bound},
                   {"radius_guard_w", hb::radius_guard(w).pass},
                   {"radius_guard_u", hb::radius_guard(u).pass}};
    if (v.kind == hb::HardyEquivalenceVerdict::Kind::isometric)
        doc.details["c"] = v.c;
    if (v.witness_index)
        doc.details["witness_index"] = *v.witness_index;
    if (!v.affirmative()) {
        emit(doc);
        return kNegative;
    }
    const hb::HardyIsomorphism iso = hb::build_hardy_isomorphism(w, u);
    doc.witness = json{{"alpha", iso.alpha}, {"isometric", iso.isometric}};
    doc.residuals["isomorphism_identity"] = hb::isomorphism_residual(iso, w, u);
    emit(doc);
    return kAffirmative;
}

struct SelftestArgs {
    std::uint64_t seed = 20240611;
    std::size_t cases = 200;
};

int run_selftest(const SelftestArgs& args) {
    const auto suites = hb::selftest::run_all(args.seed, args.cases);
    hb::io::VerdictDocument doc;
    doc.command = "selftest";
    bool all = true;
    json list = json::array();
    for (const auto& s : suites) {
        all = all && s.pass;
        doc.residuals[s.name] = finite_or_max(s.max_residual);
        list.push_back({{"suite", s.name}, {"cases", s.cases}, {"max_residual", finite_or_max(s.max_residual)},
                        {"threshold", s.threshold}, {"pass", s.pass}});
    }
    doc.verdict = all ? "pass" : "fail";
    doc.details = {{"seed", args.seed}, {"cases", args.cases}, {"suites", list}};
    emit(doc);
    return all ? kAffirmative : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Isometry, congruence and equivalence decisions for kernel spaces on the complex ball"};
    app.require_subcommand(1);

    GramArgs gram_args;
    auto* gram = app.add_subcommand("gram", "Gram matrix of a point set in H_d^t");
    gram->add_option("--points", gram_args.points, "point set JSON")->required();
    gram->add_option("--t", gram_args.t, "kernel exponent t > 0")->required();
    gram->add_option("--tol", gram_args.tol, "entrywise equality tolerance");

    PairArgs iso_args;
    auto* isometry = app.add_subcommand("isometry", "does a point map induce an isometry H_A -> H_B");
    isometry->add_option("--A", iso_args.a, "source point set JSON")->required();
    isometry->add_option("--B", iso_args.b, "target point set JSON")->required();
    isometry->add_option("--t", iso_args.t, "kernel exponent t > 0")->required();
    isometry->add_option("--assignment", iso_args.assignment, "comma-separated permutation, e.g. 0,2,1");
    isometry->add_flag("--search", iso_args.search, "search all assignments");
    isometry->add_option("--cap", iso_args.cap, "maximum point count for --search");
    isometry->add_option("--tol", iso_args.tol, "entrywise equality tolerance");

    PairArgs cong_args;
    auto* congruence = app.add_subcommand("congruence", "is there a ball automorphism carrying A onto B");
    congruence->add_option("--A", cong_args.a, "source point set JSON")->required();
    congruence->add_option("--B", cong_args.b, "target point set JSON")->required();
    congruence->add_option("--assignment", cong_args.assignment, "test only this correspondence, e.g. 0,2,1");
    congruence->add_option("--cap", cong_args.cap, "maximum point count for the assignment search");
    congruence->add_option("--tol", cong_args.tol, "entrywise equality tolerance");

    CounterexampleArgs ce_args;
    double ce_radius = 0.0;
    auto* counter = app.add_subcommand("counterexample", "isometric but non-extendable point maps for t > 2");
    counter->add_option("--t", ce_args.t, "kernel exponent t > 2")->required();
    counter->add_option("--d", ce_args.d, "ambient dimension")->required();
    counter->add_option("--out-A", ce_args.out_a, "output file for A")->required();
    counter->add_option("--out-B", ce_args.out_b, "output file for B")->required();
    auto* radius_opt = counter->add_option("--r", ce_radius, "collision radius in (0, 2cos(pi/t))");

    HardyArgs hardy_args;
    auto* hardy = app.add_subcommand("hardy", "equivalence of weighted Hardy spaces");
    hardy->add_option("--w", hardy_args.w, "weights: const:c | power:s | binom:t | file:path.json")->required();
    hardy->add_option("--u", hardy_args.u, "weights: const:c | power:s | binom:t | file:path.json")->required();
    hardy->add_option("--horizon", hardy_args.horizon, "truncation horizon N");

    SelftestArgs st_args;
    auto* selftest = app.add_subcommand("selftest", "run the seeded invariant suites");
    selftest->add_option("--seed", st_args.seed, "generator seed");
    selftest->add_option("--cases", st_args.cases, "cases per suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kError;
    }

    try {
        if (*gram)
            return run_gram(gram_args);
        if (*isometry)
            return run_isometry(iso_args);
        if (*congruence)
            return run_congruence(cong_args);
        if (*counter) {
            if (*radius_opt)
                ce_args.radius = ce_radius;
            return run_counterexample(ce_args);
        }
        if (*hardy)
            return run_hardy(hardy_args);
        if (*selftest)
            return run_selftest(st_args);
    } catch (const hb::CapExceeded& e) {
        std::cerr << "error: " << e.what() << " (search cap " << e.cap() << ")\n";
        return kError;
    } catch (const hb::Refusal& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
