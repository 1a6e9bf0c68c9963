#pragma once

// JSON documents exchanged by the command-line tool. Complex numbers are
// [re, im] pairs; reals use nlohmann's shortest round-trip formatting.

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardyball/classification.hpp"

namespace hardyball::io {

using nlohmann::json;

/// Malformed or semantically invalid input document.
class DocumentError : public Error {
public:
    using Error::Error;
};

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw DocumentError("expected a complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const CVector& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        a.push_back(to_json(v(i)));
    return a;
}

inline json to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json to_json(const TolerancePolicy& tol) {
    return {{"tol_rank", tol.tol_rank}, {"tol_eq", tol.tol_eq}, {"tol_herm", tol.tol_herm}};
}

inline TolerancePolicy tolerances_from_json(const json& j) {
    try {
        TolerancePolicy tol{j.at("tol_rank").get<double>(), j.at("tol_eq").get<double>(), j.at("tol_herm").get<double>()};
        tol.validate();
        return tol;
    } catch (const json::exception& e) {
        throw DocumentError(std::string("tolerances: ") + e.what());
    }
}

inline json to_json(const BallAutomorphism& phi) {
    return {{"unitary", to_json(phi.unitary())}, {"base", to_json(phi.base().coords())}};
}

/// {"d": d, "points": [[[re, im], ...], ...]}
struct PointSetDocument {
    int d = 1;
    std::vector<BallPoint> points;

    json to_json() const {
        json pts = json::array();
        for (const auto& p : points)
            pts.push_back(io::to_json(p.coords()));
        return {{"d", d}, {"points", std::move(pts)}};
    }

    static PointSetDocument from_json(const json& j) {
        if (!j.is_object() || !j.contains("d") || !j.contains("points"))
            throw DocumentError("point set document needs fields \"d\" and \"points\"");
        if (!j["d"].is_number_integer() || j["d"].get<long long>() < 1)
            throw DocumentError("\"d\" must be a positive integer");
        if (!j["points"].is_array())
            throw DocumentError("\"points\" must be an array");
        PointSetDocument doc;
        doc.d = j["d"].get<int>();
        std::size_t idx = 0;
        for (const auto& p : j["points"]) {
            if (!p.is_array() || p.size() != static_cast<std::size_t>(doc.d))
                throw DocumentError("point " + std::to_string(idx) + " does not have " + std::to_string(doc.d) + " coordinates");
            CVector v(doc.d);
            for (int i = 0; i < doc.d; ++i)
                v(i) = complex_from_json(p[static_cast<std::size_t>(i)]);
            try {
                doc.points.emplace_back(std::move(v));
            } catch (const DomainError& e) {
                throw DocumentError("point " + std::to_string(idx) + ": " + e.what());
            }
            ++idx;
        }
        return doc;
    }

    friend bool operator==(const PointSetDocument&, const PointSetDocument&) = default;
};

struct VerdictDocument {
    std::string command;
    std::string verdict;
    std::optional<json> witness;
    std::map<std::string, double> residuals;
    TolerancePolicy tolerances;
    json details = json::object();

    json to_json() const {
        json j{{"command", command},
               {"verdict", verdict},
               {"witness", witness ? *witness : json(nullptr)},
               {"residuals", residuals},
               {"tolerances", io::to_json(tolerances)},
               {"details", details}};
        return j;
    }

    static VerdictDocument from_json(const json& j) {
        try {
            VerdictDocument doc;
            doc.command = j.at("command").get<std::string>();
            doc.verdict = j.at("verdict").get<std::string>();
            if (!j.at("witness").is_null())
                doc.witness = j.at("witness");
            doc.residuals = j.at("residuals").get<std::map<std::string, double>>();
            doc.tolerances = tolerances_from_json(j.at("tolerances"));
            doc.details = j.value("details", json::object());
            return doc;
        } catch (const json::exception& e) {
            throw DocumentError(std::string("verdict document: ") + e.what());
        }
    }

    friend bool operator==(const VerdictDocument&, const VerdictDocument&) = default;
};

inline json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw DocumentError(origin + ": " + e.what());
    }
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DocumentError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out)
        throw DocumentError("cannot write " + path);
    out << j.dump(2) << '\n';
}

/// Weight specifications: "const:c", "power:s", "binom:t" or "file:path.json", where the
/// file holds a JSON array of weights or an object {"weights": [...]}.
inline WeightSequence parse_weight_spec(const std::string& spec, std::size_t horizon) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw DocumentError("weight spec \"" + spec + "\" must look like family:value");
    const std::string family = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    if (family == "file") {
        const json j = read_json_file(arg);
        const json& arr = j.is_object() ? j.value("weights", json()) : j;
        if (!arr.is_array())
            throw DocumentError(arg + ": expected an array of weights");
        std::vector<double> values;
        for (const auto& v : arr) {
            if (!v.is_number())
                throw DocumentError(arg + ": weights must be numbers");
            values.push_back(v.get<double>());
        }
        if (values.size() > horizon + 1)
            values.resize(horizon + 1);
        return WeightSequence::custom(std::move(values));
    }
    double value = 0.0;
    std::istringstream is(arg);
    is.imbue(std::locale::classic());
    if (!(is >> value) || !is.eof())
        throw DocumentError("weight spec \"" + spec + "\": cannot parse \"" + arg + "\" as a number");
    if (family == "const")
        return WeightSequence::constant(value, horizon);
    if (family == "power")
        return WeightSequence::power(value, horizon);
    if (family == "binom")
        return WeightSequence::binomial(value, horizon);
    throw DocumentError("unknown weight family \"" + family + "\"");
}

}  // namespace hardyball::io
