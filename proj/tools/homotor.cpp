#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "homotor/homotor.hpp"
#include "homotor/problem.hpp"

using namespace homotor;

namespace {

struct Options {
    std::string command;
    std::string problem;
    std::optional<std::int64_t> field;
    std::string box;
    std::string degree;
    std::string subset;
    std::string module;
    std::string kind;
    bool strong = false;
    std::uint64_t seed = 1;
    std::size_t trials = 20;
    std::size_t p = 0;
    std::string json_out;
};

const std::vector<std::string> commands = {"tor",      "tor1-oracle", "betti",   "indep", "scomplex", "pcomplex",        "verify",
                                           "spectral", "support",     "rigidity", "a8",   "equiv-exactness", "selftest"};

std::vector<int> parse_list(const std::string& s, const std::string& flag) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, flag + ": cannot read '" + item + "' as an integer");
        }
    }
    return out;
}

Multidegree parse_degree(const std::string& s, std::size_t n, const std::string& flag) {
    auto v = parse_list(s, flag);
    if (v.size() != n) throw Error(ErrorCode::LengthMismatch, flag + " needs " + std::to_string(n) + " entries");
    for (int e : v)
        if (e < 0) throw Error(ErrorCode::InvalidArgument, flag + " entries must be nonnegative");
    return Multidegree(v);
}

struct Context {
    ProblemFile problem;
    PrimeField field;
    std::vector<NamedIdeal> family;
    std::optional<MonomialIdeal> module;
    std::optional<Multidegree> box;
};

Context load(const Options& o) {
    if (o.problem.empty()) throw Error(ErrorCode::ParseError, "command '" + o.command + "' needs a problem file");
    Context c{parse_problem(o.problem), PrimeField(), {}, std::nullopt, std::nullopt};
    if (o.field && !is_prime(*o.field)) throw Error(ErrorCode::ValidationError, "--field " + std::to_string(*o.field) + " is not prime");
    c.field = PrimeField(o.field ? *o.field : c.problem.characteristic);
    if (!o.module.empty()) {
        c.problem.find(o.module);
        c.problem.module = o.module;
    }
    c.family = c.problem.family();
    c.module = c.problem.module_ideal();
    if (!o.subset.empty()) {
        std::vector<NamedIdeal> sel;
        for (int i : parse_list(o.subset, "--subset")) {
            if (i < 1 || static_cast<std::size_t>(i) > c.family.size())
                throw Error(ErrorCode::InvalidArgument, "--subset index " + std::to_string(i) + " out of range");
            sel.push_back(c.family[static_cast<std::size_t>(i - 1)]);
        }
        c.family = sel;
    }
    if (!o.box.empty()) c.box = parse_degree(o.box, c.problem.nvars(), "--box");
    else if (c.problem.box) c.box = c.problem.box;
    return c;
}

ordered_json inputs_json(const Context& c) {
    ordered_json in;
    in["characteristic"] = c.field.characteristic();
    in["variables"] = c.problem.variables;
    ordered_json ideals = ordered_json::object();
    for (const auto& i : c.problem.ideals) ideals[i.name] = ideal_json(i.ideal);
    in["ideals"] = ideals;
    ordered_json fam = ordered_json::array();
    for (const auto& i : c.family) fam.push_back(i.name);
    in["family"] = fam;
    in["module"] = c.problem.module ? ordered_json(*c.problem.module) : ordered_json(nullptr);
    return in;
}

Multidegree box_or(const Context& c, const Multidegree& stable) {
    if (!c.box) return stable;
    if (!stable.divides(*c.box)) throw Error(ErrorCode::BoxTooSmall, "box " + c.box->str() + " is below the stability box " + stable.str());
    return *c.box;
}

void attach(ordered_json& out, const CheckReport& r, bool& passed) {
    auto j = report_json(r);
    out["result"]["flags"] = j["flags"];
    out["result"]["values"] = j["values"];
    out["assertions"] = j["assertions"];
    passed = r.ok();
}

ordered_json run_selftest(const Options& o, bool& passed) {
    ordered_json out;
    out["command"] = "selftest";
    PrimeField f(o.field ? *o.field : 32003);
    RandomParams params;
    out["inputs"] = {{"seed", o.seed}, {"trials", o.trials}, {"characteristic", f.characteristic()},
                     {"params", {{"nvars", params.nvars}, {"nideals", params.nideals}, {"max_gens", params.max_gens}, {"max_exp", params.max_exp}}}};
    const std::vector<std::string> checks = {"tor1_oracle", "rigidity", "intersection", "exactness_equivalences", "identities"};
    std::vector<std::size_t> fails(checks.size(), 0);
    ordered_json failures = ordered_json::array();
    for (std::size_t t = 0; t < o.trials; ++t) {
        std::uint64_t seed = o.seed + t;
        auto fam = random_instance(seed, params);
        std::vector<bool> ok(checks.size(), true);
        Multidegree b = multi_tor_complex(fam).stable_box();
        TorTable tor = multi_tor(fam, std::nullopt, f, b);
        TorTable oracle = tor1_oracle(fam, f, b);
        for (std::size_t k = 0; k < tor.box().size(); ++k) ok[0] = ok[0] && tor.at_flat(1, k) == oracle.at_flat(1, k);
        ok[1] = rigidity_check(fam, f).ok();
        ok[2] = intersection_check(fam, f).ok();
        ok[3] = exactness_equivalences(fam, f).ok();
        ok[4] = verify_identities(fam, f).ok();
        for (std::size_t c = 0; c < checks.size(); ++c)
            if (!ok[c]) {
                ++fails[c];
                ordered_json fj = ordered_json::array();
                for (const auto& I : fam) fj.push_back(ideal_json(I));
                failures.push_back({{"seed", seed}, {"check", checks[c]}, {"family", fj}});
            }
    }
    ordered_json summary = ordered_json::array();
    passed = true;
    for (std::size_t c = 0; c < checks.size(); ++c) {
        summary.push_back({{"check", checks[c]}, {"trials", o.trials}, {"failures", fails[c]}});
        passed = passed && fails[c] == 0;
    }
    out["result"] = {{"summary", summary}, {"failures", failures}};
    out["passed"] = passed;
    return out;
}

ordered_json run(const Options& o, bool& passed) {
    passed = true;
    if (o.command == "selftest") return run_selftest(o, passed);
    Context c = load(o);
    const PrimeField& f = c.field;
    auto fam = family_ideals(c.family);
    ordered_json out;
    out["command"] = o.command;
    out["inputs"] = inputs_json(c);
    out["box"] = nullptr;
    out["result"] = ordered_json::object();
    out["assertions"] = ordered_json::array();

    if (o.command == "tor") {
        Multidegree b = box_or(c, multi_tor_complex(fam, c.module).stable_box());
        out["box"] = degree_json(b);
        TorTable tor = multi_tor(fam, c.module, f, b);
        out["result"]["tor"] = table_json(tor);
        if (c.problem.grading) {
            // box cells only; a cell on the box boundary stands for everything above it
            GradingMap gm(c.problem.nvars(), *c.problem.grading);
            ordered_json coarse = ordered_json::array();
            for (int i = tor.lo(); i <= tor.hi(); ++i) {
                auto img = project(support_region(tor, i), gm);
                if (!img.empty()) coarse.push_back({{"i", i}, {"degrees", img}});
            }
            out["result"]["coarse_support"] = coarse;
        }
    } else if (o.command == "tor1-oracle") {
        Multidegree b = box_or(c, multi_tor_complex(fam).stable_box());
        out["box"] = degree_json(b);
        TorTable tor = multi_tor(fam, std::nullopt, f, b);
        TorTable oracle = tor1_oracle(fam, f, b);
        CheckReport r;
        auto& a = r.add("tor1_matches_oracle");
        compare_dims(a, tor.box(), {1}, [&](int, const Multidegree& g) { return static_cast<long>(oracle.at(1, g)); },
                     [&](int, const Multidegree& g) { return static_cast<long>(tor.at(1, g)); }, "Tor_1");
        out["result"]["oracle"] = table_json(oracle);
        out["result"]["tor1"] = table_json(tor);
        attach(out, r, passed);
    } else if (o.command == "betti") {
        ordered_json arr = ordered_json::array();
        for (const auto& ni : c.family) {
            BettiTable b = betti_table(ni.ideal, f);
            arr.push_back({{"ideal", ni.name}, {"pd", b.pd}, {"depth", b.depth}, {"dim", b.dim}, {"cohen_macaulay", b.is_cm},
                           {"box", degree_json(b.betti.bound())}, {"betti", table_json(b.betti)}});
        }
        out["result"]["quotients"] = arr;
    } else if (o.command == "indep") {
        attach(out, independence(fam, f, o.strong), passed);
    } else if (o.command == "scomplex" || o.command == "pcomplex") {
        ComplexVariant v = ComplexVariant::quotient;
        if (o.kind == "tilde") v = ComplexVariant::tilde;
        else if (!o.kind.empty() && o.kind != "quotient") throw Error(ErrorCode::InvalidKind, "--kind must be quotient or tilde");
        GradedComplex g = o.command == "scomplex" ? build_s_complex(fam, v).underlying : build_p_complex(fam, v).underlying;
        Multidegree b = box_or(c, g.stable_box());
        out["box"] = degree_json(b);
        ordered_json ranks = ordered_json::array();
        for (int i = g.lo(); i <= g.hi(); ++i) ranks.push_back({{"i", i}, {"rank", g.rank_of(i)}});
        out["result"]["variant"] = complex_variant_name(v);
        out["result"]["orientation"] = g.is_chain() ? "chain" : "cochain";
        out["result"]["terms"] = ranks;
        out["result"]["homology"] = table_json(module_homology_table(g, f, b));
    } else if (o.command == "verify") {
        attach(out, verify_identities(fam, f), passed);
    } else if (o.command == "spectral") {
        std::string kind = o.kind.empty() ? "interior" : o.kind;
        FilteredComplex fc;
        if (kind == "sum_to_product" || kind == "product_to_sum") {
            fc = mv_double_complex(parse_mv_kind(kind), fam, c.module);
        } else {
            std::vector<GradedComplex> res;
            for (const auto& I : fam) res.push_back(taylor_resolution(I));
            fc = filtered_complex(tensor(res), parse_filtration_kind(kind));
        }
        std::vector<Multidegree> degrees;
        if (!o.degree.empty()) degrees.push_back(parse_degree(o.degree, c.problem.nvars(), "--degree"));
        else {
            DegreeBox db(box_or(c, fc.box()));
            for (std::size_t k = 0; k < db.size(); ++k) degrees.push_back(db.at(k));
        }
        CheckReport r;
        auto& conv = r.add("abutment_matches_homology");
        auto& rec = r.add("page_recurrence");
        ordered_json arr = ordered_json::array();
        for (const auto& g : degrees) {
            SpectralPages sp = pages(fc.at(g, f), f);
            for (const auto& row : sp.abutment)
                if (row.e_infinity_sum != row.homology)
                    conv.fail({g, row.degree, static_cast<long>(row.homology), static_cast<long>(row.e_infinity_sum), "E^inf sum"});
            if (!sp.recurrence_ok) rec.fail({g, 0, 1, 0, "dim E^{r+1} != dim E^r - ranks"});
            if (sp.pages.empty() || sp.pages[0].empty()) continue;
            ordered_json e = pages_json(sp);
            e["degree"] = degree_json(g);
            arr.push_back(e);
        }
        out["result"]["kind"] = kind;
        out["result"]["degrees"] = arr;
        attach(out, r, passed);
    } else if (o.command == "support") {
        std::vector<std::vector<std::size_t>> parts;
        for (const auto& ni : c.family) {
            std::vector<std::size_t> vars;
            for (const auto& g : ni.ideal.generators()) {
                if (g.total() != 1) throw Error(ErrorCode::ValidationError, "ideal '" + ni.name + "' is not generated by variables");
                for (std::size_t k = 0; k < g.size(); ++k)
                    if (g[k]) vars.push_back(k);
            }
            parts.push_back(vars);
        }
        std::size_t p = o.p ? o.p : parts.size();
        attach(out, support_union_check(parts, c.problem.nvars(), c.module, p, f), passed);
        out["result"]["p"] = p;
    } else if (o.command == "rigidity") {
        attach(out, rigidity_check(fam, f, o.strong), passed);
    } else if (o.command == "a8") {
        attach(out, intersection_check(fam, f), passed);
    } else if (o.command == "equiv-exactness") {
        attach(out, exactness_equivalences(fam, f), passed);
    } else {
        throw Error(ErrorCode::UnknownCommand, "unknown command '" + o.command + "'");
    }
    out["passed"] = passed;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multigraded Tor, Mayer-Vietoris complexes and spectral sequences over monomial ideals"};
    Options o;
    app.add_option("command", o.command, "One of: tor, tor1-oracle, betti, indep, scomplex, pcomplex, verify, spectral, support, rigidity, a8, equiv-exactness, selftest")->required();
    app.add_option("problem", o.problem, "Problem file (JSON)");
    app.add_option("--field", o.field, "Prime characteristic overriding the problem file");
    app.add_option("--box", o.box, "Degree box a,b,.. (must contain the stability box)");
    app.add_option("--degree", o.degree, "Single degree for the spectral command");
    app.add_flag("--strong", o.strong, "Strong mode for indep; all sub-families for rigidity");
    app.add_option("--subset", o.subset, "1-based indices of the family to use");
    app.add_option("--module", o.module, "Name of the ideal I_M used as coefficient R/I_M");
    app.add_option("--kind", o.kind, "Complex variant or spectral sequence kind");
    app.add_option("--seed", o.seed, "Seed for selftest");
    app.add_option("--trials", o.trials, "Number of selftest trials");
    app.add_option("--p", o.p, "Sub-family size bound for the support command");
    app.add_option("--json", o.json_out, "Also write the report to this file");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto start = std::chrono::steady_clock::now();
    int status = 0;
    ordered_json report;
    try {
        if (std::find(commands.begin(), commands.end(), o.command) == commands.end())
            throw Error(ErrorCode::UnknownCommand, "unknown command '" + o.command + "'");
        bool passed = true;
        report = run(o, passed);
        status = passed ? 0 : 1;
    } catch (const Error& e) {
        report = {{"command", o.command}, {"error", {{"code", error_code_name(e.code())}, {"message", e.what()}}}};
        std::cerr << e.what() << "\n";
        status = 2;
    }
    std::string text = report.dump(2);
    std::cout << text << "\n";
    if (!o.json_out.empty()) {
        std::ofstream js(o.json_out);
        js << text << "\n";
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cerr << "elapsed_ms " << ms << "\n";
    return status;
}
