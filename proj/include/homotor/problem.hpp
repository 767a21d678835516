#ifndef HOMOTOR_PROBLEM_HPP
#define HOMOTOR_PROBLEM_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "error.hpp"
#include "field.hpp"
#include "monomial.hpp"
#include "report.hpp"
#include "spectral.hpp"

namespace homotor {

using ordered_json = nlohmann::ordered_json;

struct NamedIdeal {
    std::string name;
    MonomialIdeal ideal;
    std::vector<std::vector<int>> generators;  // as written in the file
};

struct ProblemFile {
    std::int64_t characteristic = 32003;
    std::vector<std::string> variables;
    std::vector<NamedIdeal> ideals;
    std::optional<std::string> module;
    std::optional<std::vector<std::vector<int>>> grading;
    std::optional<Multidegree> box;

    std::size_t nvars() const { return variables.size(); }

    const NamedIdeal& find(const std::string& name) const {
        for (const auto& i : ideals)
            if (i.name == name) return i;
        throw Error(ErrorCode::ValidationError, "unknown ideal '" + name + "'");
    }
    /// Every ideal except the module, in file order.
    std::vector<NamedIdeal> family() const {
        std::vector<NamedIdeal> out;
        for (const auto& i : ideals)
            if (!module || i.name != *module) out.push_back(i);
        return out;
    }
    std::optional<MonomialIdeal> module_ideal() const {
        if (!module) return std::nullopt;
        return find(*module).ideal;
    }
};

namespace detail {

inline std::size_t line_of(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

inline std::vector<int> int_vector(const ordered_json& j, const std::string& field) {
    if (!j.is_array()) throw Error(ErrorCode::ValidationError, field + ": expected an array of integers");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw Error(ErrorCode::ValidationError, field + ": expected integers");
        out.push_back(v.get<int>());
    }
    return out;
}

}  // namespace detail

inline ProblemFile problem_from_json(const ordered_json& j) {
    if (!j.is_object()) throw Error(ErrorCode::ValidationError, "problem must be a JSON object");
    ProblemFile p;
    if (j.contains("characteristic")) {
        if (!j["characteristic"].is_number_integer()) throw Error(ErrorCode::ValidationError, "characteristic: expected an integer");
        p.characteristic = j["characteristic"].get<std::int64_t>();
    }
    if (!is_prime(p.characteristic))
        throw Error(ErrorCode::ValidationError, "characteristic " + std::to_string(p.characteristic) + " is not prime");
    if (!j.contains("variables") || !j["variables"].is_array() || j["variables"].empty())
        throw Error(ErrorCode::ValidationError, "variables: expected a nonempty list of names");
    for (const auto& v : j["variables"]) {
        if (!v.is_string()) throw Error(ErrorCode::ValidationError, "variables: expected strings");
        p.variables.push_back(v.get<std::string>());
    }
    std::size_t n = p.variables.size();
    if (n > 16) throw Error(ErrorCode::ValidationError, "at most 16 variables are supported");
    if (!j.contains("ideals") || !j["ideals"].is_object() || j["ideals"].empty())
        throw Error(ErrorCode::ValidationError, "ideals: expected an object of named generator lists");
    for (const auto& [name, gens] : j["ideals"].items()) {
        if (!gens.is_array()) throw Error(ErrorCode::ValidationError, "ideal '" + name + "': expected a list of exponent vectors");
        NamedIdeal ni;
        ni.name = name;
        std::vector<Multidegree> ds;
        for (const auto& g : gens) {
            auto v = detail::int_vector(g, "ideal '" + name + "'");
            if (v.size() != n)
                throw Error(ErrorCode::ValidationError, "ideal '" + name + "': exponent vector of length " + std::to_string(v.size()) +
                                                            ", expected " + std::to_string(n));
            if (std::any_of(v.begin(), v.end(), [](int e) { return e < 0; }))
                throw Error(ErrorCode::ValidationError, "ideal '" + name + "': negative exponent");
            ni.generators.push_back(v);
            ds.emplace_back(v);
        }
        ni.ideal = MonomialIdeal(n, ds);
        p.ideals.push_back(std::move(ni));
    }
    if (j.contains("module") && !j["module"].is_null()) {
        if (!j["module"].is_string()) throw Error(ErrorCode::ValidationError, "module: expected an ideal name");
        p.module = j["module"].get<std::string>();
        p.find(*p.module);
    }
    if (j.contains("grading") && !j["grading"].is_null()) {
        if (!j["grading"].is_array()) throw Error(ErrorCode::ValidationError, "grading: expected a matrix");
        std::vector<std::vector<int>> rows;
        for (const auto& r : j["grading"]) {
            auto v = detail::int_vector(r, "grading");
            if (v.size() != n) throw Error(ErrorCode::ValidationError, "grading: row length must equal the variable count");
            rows.push_back(v);
        }
        p.grading = rows;
    }
    if (j.contains("box") && !j["box"].is_null()) {
        auto v = detail::int_vector(j["box"], "box");
        if (v.size() != n || std::any_of(v.begin(), v.end(), [](int e) { return e < 0; }))
            throw Error(ErrorCode::ValidationError, "box: expected " + std::to_string(n) + " nonnegative integers");
        p.box = Multidegree(v);
    }
    if (p.family().empty()) throw Error(ErrorCode::ValidationError, "no ideals besides the module");
    return p;
}

inline ProblemFile parse_problem_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(detail::line_of(text, e.byte)) + ": " + e.what());
    }
    return problem_from_json(j);
}

inline ProblemFile parse_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem_text(ss.str());
}

struct RandomParams {
    std::size_t nvars = 3;
    std::size_t nideals = 3;
    std::size_t max_gens = 2;
    int max_exp = 2;
};

/// Deterministic family of proper nonzero monomial ideals.
inline std::vector<MonomialIdeal> random_instance(std::uint64_t seed, const RandomParams& params) {
    if (params.nvars < 1 || params.nvars > 4 || params.nideals < 1 || params.nideals > 4 || params.max_gens < 1 ||
        params.max_gens > 3 || params.max_exp < 1 || params.max_exp > 2)
        throw Error(ErrorCode::ParamOutOfRange, "random parameters must lie in vars 1..4, ideals 1..4, gens 1..3, exponent 1..2");
    std::mt19937_64 rng(seed);
    auto draw = [&](std::uint64_t lo, std::uint64_t hi) { return lo + rng() % (hi - lo + 1); };
    std::vector<MonomialIdeal> out;
    for (std::size_t i = 0; i < params.nideals; ++i) {
        std::size_t count = draw(1, params.max_gens);
        std::vector<Multidegree> gens;
        while (gens.size() < count) {
            std::vector<int> e(params.nvars);
            for (auto& x : e) x = static_cast<int>(draw(0, static_cast<std::uint64_t>(params.max_exp)));
            Multidegree d(e);
            if (!d.is_zero()) gens.push_back(d);
        }
        out.emplace_back(params.nvars, gens);
    }
    return out;
}

inline std::vector<MonomialIdeal> family_ideals(const std::vector<NamedIdeal>& f) {
    std::vector<MonomialIdeal> out;
    for (const auto& n : f) out.push_back(n.ideal);
    return out;
}

// JSON rendering

inline ordered_json degree_json(const Multidegree& g) { return ordered_json(g.exponents()); }

inline ordered_json ideal_json(const MonomialIdeal& I) {
    ordered_json a = ordered_json::array();
    for (const auto& g : I.generators()) a.push_back(degree_json(g));
    return a;
}

/// Nonzero entries as {"i", "degree", "dim"} records sorted by index, then degree.
inline ordered_json table_json(const HomologyTable& t) {
    ordered_json a = ordered_json::array();
    for (int i = t.lo(); i <= t.hi(); ++i)
        for (std::size_t k = 0; k < t.box().size(); ++k)
            if (std::size_t d = t.at_flat(i, k)) a.push_back({{"i", i}, {"degree", degree_json(t.box().at(k))}, {"dim", d}});
    return a;
}

inline ordered_json page_json(const PageTable& t) {
    ordered_json a = ordered_json::array();
    for (const auto& [pq, d] : t) a.push_back({{"p", pq.first}, {"q", pq.second}, {"dim", d}});
    return a;
}

inline ordered_json pages_json(const SpectralPages& s) {
    ordered_json o;
    ordered_json pg = ordered_json::array();
    for (std::size_t r = 0; r < s.pages.size(); ++r) pg.push_back({{"r", r + 1}, {"entries", page_json(s.pages[r])}});
    o["pages"] = pg;
    o["e_infinity"] = page_json(s.e_infinity);
    ordered_json ab = ordered_json::array();
    for (const auto& row : s.abutment)
        ab.push_back({{"degree", row.degree}, {"e_infinity_sum", row.e_infinity_sum}, {"homology", row.homology}});
    o["abutment"] = ab;
    o["complete"] = s.complete;
    o["recurrence_ok"] = s.recurrence_ok;
    return o;
}

inline const char* assertion_status(const Assertion& a) {
    if (a.skipped) return "skipped";
    if (a.informational) return a.passed ? "info-holds" : "info-fails";
    return a.passed ? "pass" : "fail";
}

inline ordered_json report_json(const CheckReport& r) {
    ordered_json o;
    ordered_json flags = ordered_json::object();
    for (const auto& [k, v] : r.flags) flags[k] = v;
    ordered_json values = ordered_json::object();
    for (const auto& [k, v] : r.values) values[k] = v;
    ordered_json as = ordered_json::array();
    for (const auto& a : r.assertions) {
        ordered_json w = ordered_json::array();
        for (const auto& x : a.witnesses)
            w.push_back({{"degree", degree_json(x.degree)}, {"index", x.index}, {"expected", x.expected}, {"actual", x.actual}, {"note", x.note}});
        as.push_back({{"name", a.name}, {"status", assertion_status(a)}, {"detail", a.detail}, {"witnesses", w}});
    }
    o["flags"] = flags;
    o["values"] = values;
    o["assertions"] = as;
    return o;
}

}  // namespace homotor

#endif
