#ifndef HOMOTOR_TORLAB_HPP
#define HOMOTOR_TORLAB_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "gcomplex.hpp"
#include "monomial.hpp"
#include "multicomplex.hpp"
#include "report.hpp"
#include "spectral.hpp"
#include "subsets.hpp"

namespace homotor {

/// Total complex of the tensor product of Taylor resolutions, optionally tensored with R/I_M.
inline GradedComplex multi_tor_complex(const std::vector<MonomialIdeal>& ideals, const std::optional<MonomialIdeal>& M = std::nullopt) {
    detail::require_proper(ideals);
    std::vector<GradedComplex> res;
    for (const auto& I : ideals) res.push_back(taylor_resolution(I));
    GradedComplex c = totalize(tensor(res));
    if (M) {
        if (M->variables() != ideals[0].variables()) throw Error(ErrorCode::LengthMismatch, "coefficient over a different ring");
        c = with_coefficient(c, *M);
    }
    return c;
}

inline TorTable multi_tor(const std::vector<MonomialIdeal>& ideals, const std::optional<MonomialIdeal>& M, const PrimeField& f,
                          const std::optional<Multidegree>& box = std::nullopt) {
    return module_homology_table(multi_tor_complex(ideals, M), f, box);
}

inline TorTable multi_tor(const std::vector<MonomialIdeal>& ideals, const PrimeField& f) {
    return multi_tor(ideals, std::nullopt, f);
}

/// Stability box of the multiple Tor complex of a family.
inline Multidegree tor_box(const std::vector<MonomialIdeal>& ideals, const std::optional<MonomialIdeal>& M = std::nullopt) {
    detail::require_proper(ideals);
    std::size_t n = ideals[0].variables();
    std::vector<int> d(n, 0);
    for (const auto& I : ideals)
        for (std::size_t k = 0; k < n; ++k) d[k] += I.max_exponent(k);
    if (M)
        for (std::size_t k = 0; k < n; ++k) d[k] += M->max_exponent(k);
    return Multidegree(d);
}

/// dim of (kernel of the sum map on the ideals containing g) modulo the span of e_i - e_j with g in I_i I_j.
inline TorTable tor1_oracle(const std::vector<MonomialIdeal>& ideals, const PrimeField& f,
                            const std::optional<Multidegree>& box = std::nullopt) {
    detail::require_proper(ideals);
    Multidegree b = box ? *box : multi_tor_complex(ideals).stable_box();
    std::size_t s = ideals.size();
    std::vector<std::vector<MonomialIdeal>> products(s, std::vector<MonomialIdeal>(s));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j) products[i][j] = combine({ideals[i], ideals[j]}, IdealOp::product);
    TorTable t(Orientation::chain, 1, 1, b);
    for (std::size_t k = 0; k < t.box().size(); ++k) {
        Multidegree g = t.box().at(k);
        std::vector<std::size_t> in;
        for (std::size_t i = 0; i < s; ++i)
            if (ideals[i].contains(g)) in.push_back(i);
        std::size_t kernel = in.empty() ? 0 : in.size() - 1;
        std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> trip;
        std::size_t rows = 0;
        for (std::size_t a = 0; a < in.size(); ++a)
            for (std::size_t c = a + 1; c < in.size(); ++c)
                if (products[in[a]][in[c]].contains(g)) {
                    trip.emplace_back(rows, a, 1);
                    trip.emplace_back(rows, c, -1);
                    ++rows;
                }
        std::size_t r = rank(ScalarMatrix::from_triplets(rows, in.size(), trip, f), f);
        t.set(1, k, kernel - r);
    }
    return t;
}

/// Tor_i = 0 for every i > 0 on the stability box.
inline bool tor_independent(const std::vector<MonomialIdeal>& ideals, const PrimeField& f) {
    if (ideals.size() < 2) return true;
    auto t = multi_tor(ideals, f);
    for (int i = 1; i <= t.hi(); ++i)
        if (!t.vanishes(i)) return false;
    return true;
}

inline std::vector<MonomialIdeal> subfamily(const std::vector<MonomialIdeal>& ideals, Mask m) {
    std::vector<MonomialIdeal> out;
    for (auto j : mask_elements(m)) out.push_back(ideals[j]);
    return out;
}

/// Plain mode tests the family. Strong mode tests every subfamily and cross-checks the criterion
/// that each I_j is independent from the sum of any set of ideals with smaller index.
inline CheckReport independence(const std::vector<MonomialIdeal>& ideals, const PrimeField& f, bool strong) {
    detail::require_proper(ideals);
    CheckReport r;
    std::size_t s = ideals.size();
    if (!strong) {
        bool ind = tor_independent(ideals, f);
        r.flag("independent", ind);
        return r;
    }
    bool by_subsets = true;
    Mask full = (Mask{1} << s) - 1;
    for (Mask m = 1; m <= full; ++m) {
        if (popcount(m) < 2) continue;
        bool ind = tor_independent(subfamily(ideals, m), f);
        r.flag("subset " + subset_label(m), ind);
        by_subsets = by_subsets && ind;
    }
    bool by_pairs = true;
    for (Mask m = 1; m <= full; ++m) {
        if (popcount(m) < 2) continue;
        std::size_t top = mask_elements(m).back();
        Mask rest = m & ~(Mask{1} << top);
        MonomialIdeal sum = combine(subfamily(ideals, rest), IdealOp::sum);
        if (!tor_independent({ideals[top], sum}, f)) by_pairs = false;
    }
    r.flag("independent", tor_independent(ideals, f));
    r.flag("strongly_independent", by_subsets);
    r.flag("pairwise_criterion", by_pairs);
    auto& a = r.add("strong_independence_criteria_agree");
    if (by_subsets != by_pairs) a.fail({Multidegree(ideals[0].variables()), 0, by_subsets, by_pairs, "subset test vs sum criterion"});
    return r;
}

inline bool strongly_independent(const std::vector<MonomialIdeal>& ideals, const PrimeField& f) {
    std::size_t s = ideals.size();
    for (Mask m = 1; m < (Mask{1} << s); ++m)
        if (popcount(m) >= 2 && !tor_independent(subfamily(ideals, m), f)) return false;
    return true;
}

struct BettiTable {
    TorTable betti;
    std::size_t pd = 0;
    std::size_t depth = 0;
    std::size_t dim = 0;
    bool is_cm = false;

    std::size_t total(int i) const {
        std::size_t s = 0;
        for (std::size_t k = 0; k < betti.box().size(); ++k) s += betti.at_flat(i, k);
        return s;
    }
};

/// Graded Betti numbers of R/I from Tor(R/I, k) via the Koszul complex on all variables.
inline BettiTable betti_table(const MonomialIdeal& I, const PrimeField& f) {
    if (I.is_unit()) throw Error(ErrorCode::UnitIdeal, "Betti numbers of R/R");
    std::size_t n = I.variables();
    std::vector<Multidegree> vars;
    for (std::size_t k = 0; k < n; ++k) vars.push_back(Multidegree::unit(n, k));
    GradedComplex c = totalize(tensor({taylor_resolution(I), koszul_variables(vars, n)}));
    BettiTable b;
    b.betti = module_homology_table(c, f);
    auto top = b.betti.top();
    b.pd = top ? static_cast<std::size_t>(*top) : 0;
    b.depth = n - b.pd;
    b.dim = quotient_dimension(I).krull_dim;
    b.is_cm = b.depth == b.dim;
    return b;
}

inline std::size_t projective_dimension(const MonomialIdeal& I, const PrimeField& f) { return betti_table(I, f).pd; }

/// Whether a table row has bounded support, i.e. no nonzero cell on an upper face of the box.
inline bool artinian_row(const TorTable& t, int i) {
    const auto& D = t.bound();
    for (std::size_t k = 0; k < t.box().size(); ++k) {
        if (!t.at_flat(i, k)) continue;
        Multidegree g = t.box().at(k);
        for (std::size_t v = 0; v < D.size(); ++v)
            if (g[v] == D[v]) return false;
    }
    return true;
}

/// Rigidity consequences: vanishing propagates upward, vanishing passes to prefix (or all) subfamilies,
/// and eps = dim R + j - sum pd is nonnegative (and zero when Tor_j has finite length).
inline CheckReport rigidity_check(const std::vector<MonomialIdeal>& ideals, const PrimeField& f, bool all_subsets = false) {
    detail::require_proper(ideals);
    CheckReport r;
    std::size_t s = ideals.size();
    std::size_t n = ideals[0].variables();
    TorTable t = multi_tor(ideals, f);
    Multidegree zero(n);

    auto& a = r.add("vanishing_propagates_upward");
    std::optional<int> first_zero;
    for (int i = 0; i <= t.hi(); ++i)
        if (t.vanishes(i)) {
            first_zero = i;
            break;
        }
    if (first_zero)
        for (int i = *first_zero + 1; i <= t.hi(); ++i)
            if (!t.vanishes(i)) a.fail({zero, i, 0, 1, "Tor_" + std::to_string(*first_zero) + " = 0 but Tor_" + std::to_string(i) + " != 0"});

    auto& b = r.add("vanishing_passes_to_subfamilies");
    std::vector<Mask> subs;
    Mask full = (Mask{1} << s) - 1;
    if (all_subsets) {
        for (Mask m = 1; m < full; ++m) subs.push_back(m);
    } else {
        for (std::size_t k = 1; k < s; ++k) subs.push_back((Mask{1} << k) - 1);
    }
    for (Mask m : subs) {
        TorTable ts = multi_tor(subfamily(ideals, m), f);
        for (int i = 0; i <= t.hi(); ++i)
            if (t.vanishes(i) && !ts.vanishes(i)) b.fail({zero, i, 0, 1, "subfamily " + subset_label(m)});
    }

    auto top = t.top();
    long j = top ? *top : 0;
    long sum_pd = 0;
    for (const auto& I : ideals) sum_pd += static_cast<long>(projective_dimension(I, f));
    long eps = static_cast<long>(n) + j - sum_pd;
    r.value("top_index", j);
    r.value("sum_pd", sum_pd);
    r.value("epsilon", eps);
    auto& c = r.add("epsilon_nonnegative");
    if (eps < 0) c.fail({zero, static_cast<int>(j), 0, eps, "dim R + j - sum pd"});
    bool art = top && artinian_row(t, *top);
    r.flag("top_tor_finite_length", art);
    auto& d = r.add("epsilon_bounded_by_dimension", art ? "" : "skipped: top Tor has infinite length");
    if (art && eps != 0) d.fail({zero, static_cast<int>(j), 0, eps, "finite length top Tor forces eps = 0"});
    return r;
}

/// Three conditions on R/I_1, ..., R/I_s that must be simultaneously true or false.
inline CheckReport intersection_check(const std::vector<MonomialIdeal>& ideals, const PrimeField& f) {
    detail::require_proper(ideals);
    CheckReport r;
    MonomialIdeal sum = combine(ideals, IdealOp::sum);
    TorTable t = multi_tor(ideals, f);
    BettiTable bs = betti_table(sum, f);
    std::size_t codim_sum = quotient_dimension(sum).codim;
    std::size_t sum_pd = 0, sum_codim = 0;
    bool all_cm = true;
    for (const auto& I : ideals) {
        auto b = betti_table(I, f);
        sum_pd += b.pd;
        sum_codim += quotient_dimension(I).codim;
        all_cm = all_cm && b.is_cm;
    }
    bool c1 = t.vanishes(1) && bs.is_cm;
    bool c2 = codim_sum == sum_pd;
    bool c3 = sum_codim == codim_sum && all_cm;
    r.flag("tor1_zero_and_sum_cm", c1);
    r.flag("codim_equals_sum_pd", c2);
    r.flag("codims_add_and_all_cm", c3);
    r.value("codim_sum", static_cast<long>(codim_sum));
    r.value("sum_pd", static_cast<long>(sum_pd));
    r.value("sum_codim", static_cast<long>(sum_codim));
    auto& a = r.add("conditions_agree");
    if (!(c1 == c2 && c2 == c3))
        a.fail({Multidegree(ideals[0].variables()), 0, 1, (c1 ? 4 : 0) + (c2 ? 2 : 0) + (c3 ? 1 : 0), "truth triple bits (1,2,3)"});
    return r;
}

}  // namespace homotor

#endif
