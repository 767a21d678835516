#ifndef HOMOTOR_SUMPROD_HPP
#define HOMOTOR_SUMPROD_HPP

#include <algorithm>
#include <cstddef>
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
#include "torlab.hpp"

namespace homotor {

enum class ComplexVariant { quotient, tilde };

inline const char* complex_variant_name(ComplexVariant v) { return v == ComplexVariant::quotient ? "quotient" : "tilde"; }

/// Cochain complex of quotients by sums of sub-families, or its tilde form inside K(1,...,1; R).
struct SumComplex {
    GradedComplex underlying;
    ComplexVariant variant = ComplexVariant::quotient;
    std::size_t n = 0;
};

/// Chain complex of quotients by products of sub-families, or its tilde form.
struct ProductComplex {
    GradedComplex underlying;
    ComplexVariant variant = ComplexVariant::quotient;
    std::size_t n = 0;
};

/// S^0 is R/(I_1...I_n), or R/(I_1 cap ... cap I_n) when intersection_start is set.
inline SumComplex build_s_complex(const std::vector<MonomialIdeal>& ideals, ComplexVariant v = ComplexVariant::quotient,
                                  bool intersection_start = false) {
    detail::require_proper(ideals);
    std::size_t n = ideals.size(), nv = ideals[0].variables();
    MonomialIdeal start = combine(ideals, intersection_start ? IdealOp::intersection : IdealOp::product);
    auto make = [&](Mask I) {
        MonomialIdeal J = I == 0 ? start : detail::combine_subset(ideals, I, IdealOp::sum);
        return v == ComplexVariant::quotient ? Summand::cyclic(J, Multidegree(nv)) : Summand::ideal_part(J, Multidegree(nv));
    };
    return {wedge_complex(n, nv, Orientation::cochain, 0, n, make), v, n};
}

/// S^1 -> ... -> S^n, the sum complex with its degree 0 term removed.
inline GradedComplex s_truncated(const std::vector<MonomialIdeal>& ideals) {
    detail::require_proper(ideals);
    std::size_t n = ideals.size(), nv = ideals[0].variables();
    return wedge_complex(n, nv, Orientation::cochain, 1, n, [&](Mask I) {
        return Summand::cyclic(detail::combine_subset(ideals, I, IdealOp::sum), Multidegree(nv));
    });
}

/// P_0 = 0 (tilde: R), or R/(I_1+...+I_n) (tilde: I_1+...+I_n) when sum_start is set.
inline ProductComplex build_p_complex(const std::vector<MonomialIdeal>& ideals, ComplexVariant v = ComplexVariant::quotient,
                                      bool sum_start = false) {
    detail::require_proper(ideals);
    std::size_t n = ideals.size(), nv = ideals[0].variables();
    MonomialIdeal sum = combine(ideals, IdealOp::sum);
    if (v == ComplexVariant::quotient) {
        return {wedge_complex(n, nv, Orientation::chain, sum_start ? 0 : 1, n,
                              [&](Mask I) {
                                  MonomialIdeal J = I == 0 ? sum : detail::combine_subset(ideals, I, IdealOp::product);
                                  return Summand::cyclic(J, Multidegree(nv));
                              }),
                v, n};
    }
    MonomialIdeal start = sum_start ? sum : MonomialIdeal::unit(nv);
    return {wedge_complex(n, nv, Orientation::chain, 0, n,
                          [&](Mask I) {
                              MonomialIdeal J = I == 0 ? start : detail::combine_subset(ideals, I, IdealOp::product);
                              return Summand::ideal_part(J, Multidegree(nv));
                          }),
            v, n};
}

inline HomologyTable complex_homology_table(const SumComplex& c, const PrimeField& f,
                                            const std::optional<Multidegree>& box = std::nullopt) {
    return module_homology_table(c.underlying, f, box);
}

inline HomologyTable complex_homology_table(const ProductComplex& c, const PrimeField& f,
                                            const std::optional<Multidegree>& box = std::nullopt) {
    return module_homology_table(c.underlying, f, box);
}

/// The augmented interior complex of a sub-family, with the corner term moved to index 0 and
/// tensored with R/I_M. Index h of the table is H_{p, h-1}(M); index 0 is M tensor P_p.
inline GradedComplex augmented_interior_complex(const std::vector<MonomialIdeal>& ideals, Mask subset,
                                                const std::optional<MonomialIdeal>& M = std::nullopt) {
    detail::require_proper(ideals);
    if (subset == 0) throw Error(ErrorCode::EmptySelection, "augmented interior on an empty sub-family");
    if (subset >> ideals.size()) throw Error(ErrorCode::InvalidArgument, "sub-family index out of range");
    std::vector<GradedComplex> res;
    for (auto j : mask_elements(subset)) res.push_back(taylor_resolution(ideals[j]));
    std::size_t p = res.size();
    Multicomplex m = tensor(res);
    RegionSelector all{RegionKind::interior, (Mask{1} << p) - 1, false};
    GradedComplex c = hypercube_augment(m, all).reindexed(-static_cast<int>(p - 1));
    if (M) c = with_coefficient(c, *M);
    return c;
}

inline HomologyTable augmented_interior_H(const std::vector<MonomialIdeal>& ideals, Mask subset,
                                          const std::optional<MonomialIdeal>& M, const PrimeField& f,
                                          const std::optional<Multidegree>& box = std::nullopt) {
    return module_homology_table(augmented_interior_complex(ideals, subset, M), f, box);
}

inline Multidegree common_box(const std::vector<Multidegree>& boxes) {
    Multidegree b = boxes.at(0);
    for (const auto& x : boxes) b = lcm_deg(b, x);
    return b;
}

/// Multiple Tor tables of every sub-family with 1 < size < n.
struct StrictTor {
    std::vector<std::pair<Mask, TorTable>> tables;

    /// Vanishing of Tor_q of every strict sub-family of size p for 0 < q < p + t.
    bool condition_v(int t) const {
        for (const auto& [m, tab] : tables) {
            int p = static_cast<int>(popcount(m));
            for (int q = 1; q < p + t; ++q)
                if (!tab.vanishes(q)) return false;
        }
        return true;
    }
    bool all_independent() const {
        for (const auto& [m, tab] : tables)
            for (int q = 1; q <= tab.hi(); ++q)
                if (!tab.vanishes(q)) return false;
        return true;
    }
    /// Tor-independence of every sub-family of size at most p.
    bool independent_up_to(std::size_t p) const {
        for (const auto& [m, tab] : tables) {
            if (popcount(m) > p) continue;
            for (int q = 1; q <= tab.hi(); ++q)
                if (!tab.vanishes(q)) return false;
        }
        return true;
    }
};

inline StrictTor strict_subfamily_tor(const std::vector<MonomialIdeal>& ideals, const PrimeField& f) {
    StrictTor out;
    std::size_t n = ideals.size();
    for (std::size_t p = 2; p < n; ++p)
        for (Mask m : subsets_of_size(n, p)) out.tables.emplace_back(m, multi_tor(subfamily(ideals, m), f));
    return out;
}

namespace detail {

inline long cell(const HomologyTable& t, int i, const Multidegree& g) { return static_cast<long>(t.at(i, g)); }

inline void euler_check(Assertion& a, const GradedComplex& c, const HomologyTable& h, const DegreeBox& box, const PrimeField& f) {
    for (std::size_t k = 0; k < box.size(); ++k) {
        Multidegree g = box.at(k);
        FiberComplex fc = fiber(c, g, f);
        long chain = 0, hom = 0;
        for (int j = fc.lo; j <= fc.hi(); ++j) {
            long sign = (j % 2 == 0) ? 1 : -1;
            chain += sign * static_cast<long>(fc.dim(j));
            int i = c.is_chain() ? j : -j;
            hom += sign * cell(h, i, g);
        }
        if (chain != hom) a.fail({g, 0, chain, hom, "Euler characteristic"});
    }
}

}  // namespace detail

/// Degreewise checks of the relations between S, P, multiple Tor and the augmented interior complexes.
/// Conclusions whose hypotheses fail are reported as skipped. Literal boundary forms that are false
/// at the ends of their index ranges are reported as informational.
inline CheckReport verify_identities(const std::vector<MonomialIdeal>& ideals, const PrimeField& f) {
    detail::require_proper(ideals);
    CheckReport r;
    const int n = static_cast<int>(ideals.size());
    Mask full = (Mask{1} << n) - 1;

    SumComplex S = build_s_complex(ideals);
    SumComplex St = build_s_complex(ideals, ComplexVariant::tilde);
    GradedComplex Sm = s_truncated(ideals);
    ProductComplex P = build_p_complex(ideals);
    ProductComplex Pt = build_p_complex(ideals, ComplexVariant::tilde);
    GradedComplex T = multi_tor_complex(ideals);
    GradedComplex A = augmented_interior_complex(ideals, full);

    Multidegree B = common_box({S.underlying.stable_box(), St.underlying.stable_box(), Sm.stable_box(), P.underlying.stable_box(),
                                Pt.underlying.stable_box(), T.stable_box(), A.stable_box()});
    DegreeBox box(B);
    HomologyTable hS = module_homology_table(S.underlying, f, B);
    HomologyTable hSt = module_homology_table(St.underlying, f, B);
    HomologyTable hSm = module_homology_table(Sm, f, B);
    HomologyTable hP = module_homology_table(P.underlying, f, B);
    HomologyTable hPt = module_homology_table(Pt.underlying, f, B);
    HomologyTable tor = module_homology_table(T, f, B);
    HomologyTable hA = module_homology_table(A, f, B);
    StrictTor strict = strict_subfamily_tor(ideals, f);

    using detail::cell;
    auto s0 = [&](const Multidegree& g) { return S.underlying.term(0)[0].survives(g) ? 1L : 0L; };
    int top = std::max({tor.hi(), hA.hi(), n}) + 2;

    bool v0 = strict.condition_v(0), v1 = strict.condition_v(1);
    bool strict_ind = strict.all_independent();
    bool full_ind = true;
    for (int i = 1; i <= tor.hi(); ++i) full_ind = full_ind && tor.vanishes(i);
    r.value("n", n);
    for (int t = 0; t <= 3; ++t) r.flag("V" + std::to_string(t), strict.condition_v(t));
    r.flag("strict_subfamilies_independent", strict_ind);
    r.flag("strongly_independent", strict_ind && full_ind);

    compare_dims(r.add("sum_tilde_shift"), box, [&] { std::vector<int> v; for (int i = -1; i <= n + 1; ++i) v.push_back(i); return v; }(),
                 [&](int i, const Multidegree& g) { return cell(hS, i, g); },
                 [&](int i, const Multidegree& g) { return cell(hSt, i + 1, g); }, "H^i(S) vs H^{i+1}(S~)");
    compare_dims(r.add("product_tilde_shift"), box, [&] { std::vector<int> v; for (int i = -1; i <= n + 1; ++i) v.push_back(i); return v; }(),
                 [&](int i, const Multidegree& g) { return cell(hP, i, g); },
                 [&](int i, const Multidegree& g) { return cell(hPt, i - 1, g); }, "H_i(P) vs H_{i-1}(P~)");
    detail::euler_check(r.add("sum_euler_characteristic"), S.underlying, hS, box, f);
    detail::euler_check(r.add("product_euler_characteristic"), P.underlying, hP, box, f);

    auto tor_at = [&](int i, const Multidegree& g) { return i < 0 ? 0L : cell(tor, i, g); };

    // Sum complex against multiple Tor, assuming the V_0 vanishing.
    if (v0) {
        auto& a = r.add("sum_cohomology_matches_tor", "H^i(S) = Tor_{n-i-1} for 2 <= i <= n-2, and H^i(S) = 0 for i in {n-1, n}, i >= 2");
        for (int i = 2; i <= n; ++i)
            for (std::size_t k = 0; k < box.size(); ++k) {
                Multidegree g = box.at(k);
                long e = i <= n - 2 ? tor_at(n - i - 1, g) : 0;
                long v = cell(hS, i, g);
                if (e != v) a.fail({g, i, e, v, "H^i(S)"});
            }
        auto& lit = r.add("sum_cohomology_matches_tor_all_i", "H^i(S) = Tor_{n-i-1} for every i >= 2", true);
        for (int i = 2; i <= n + 1; ++i)
            for (std::size_t k = 0; k < box.size(); ++k) {
                Multidegree g = box.at(k);
                long e = tor_at(n - i - 1, g), v = cell(hS, i, g);
                if (e != v) lit.fail({g, i, e, v, "H^i(S)"});
            }
        auto& seq = r.add("four_term_sequence", "H^1(S) = Tor_{n-2} for n >= 3 and 0 for n <= 2; dim H^0(S) <= dim Tor_{n-1}");
        for (std::size_t k = 0; k < box.size(); ++k) {
            Multidegree g = box.at(k);
            long e1 = n >= 3 ? tor_at(n - 2, g) : 0;
            if (cell(hS, 1, g) != e1) seq.fail({g, 1, e1, cell(hS, 1, g), "H^1(S)"});
            if (cell(hS, 0, g) > tor_at(n - 1, g)) seq.fail({g, 0, tor_at(n - 1, g), cell(hS, 0, g), "H^0(S) exceeds Tor_{n-1}"});
        }
        auto& seqlit = r.add("four_term_sequence_all_n", "dim S^0 - dim H^1(S_-) = dim Tor_{n-1} - dim Tor_{n-2}", true);
        if (v1)
            for (std::size_t k = 0; k < box.size(); ++k) {
                Multidegree g = box.at(k);
                long lhs = s0(g) - cell(hSm, 1, g), rhs = tor_at(n - 1, g) - tor_at(n - 2, g);
                if (lhs != rhs) seqlit.fail({g, 1, rhs, lhs, "S^0 - H^1(S_-)"});
            }
        else
            seqlit.skipped = true;
        auto& intro = r.add("sum_cohomology_shifted_by_one", "H^i(S) = Tor_{n-i} for every i >= 2", true);
        for (int i = 2; i <= n + 1; ++i)
            for (std::size_t k = 0; k < box.size(); ++k) {
                Multidegree g = box.at(k);
                long e = tor_at(n - i, g), v = cell(hS, i, g);
                if (e != v) intro.fail({g, i, e, v, "H^i(S)"});
            }
    } else {
        r.skip("sum_cohomology_matches_tor", "V_0 fails");
        r.skip("four_term_sequence", "V_0 fails");
    }
    if (v1) {
        auto& a = r.add("four_term_sequence_injective", "dim S^0 - dim H^1(S_-) = dim Tor_{n-1} - dim Tor_{n-2} (Tor_{n-2} read as 0 for n = 2)");
        for (std::size_t k = 0; k < box.size(); ++k) {
            Multidegree g = box.at(k);
            long lhs = s0(g) - cell(hSm, 1, g);
            long rhs = tor_at(n - 1, g) - (n >= 3 ? tor_at(n - 2, g) : 0);
            if (lhs != rhs) a.fail({g, 1, rhs, lhs, "S^0 - H^1(S_-)"});
        }
    } else {
        r.skip("four_term_sequence_injective", "V_1 fails");
    }

    // Top Tor against the augmented interior homology.
    {
        auto& sur = r.add("top_tor_surjects", "dim Tor_{n+s} >= dim H_{n,s} when V_{s+1} holds");
        auto& iso = r.add("top_tor_isomorphic", "dim Tor_{n+s} = dim H_{n,s} when V_{s+2} holds");
        for (int s = 0; s <= top; ++s) {
            bool vs1 = strict.condition_v(s + 1), vs2 = strict.condition_v(s + 2);
            for (std::size_t k = 0; k < box.size(); ++k) {
                Multidegree g = box.at(k);
                long t = tor_at(n + s, g), h = cell(hA, s + 1, g);
                if (vs1 && t < h) sur.fail({g, s, h, t, "Tor_{n+s} smaller than H_{n,s}"});
                if (vs2 && t != h) iso.fail({g, s, t, h, "H_{n,s}"});
            }
        }
    }

    if (strict_ind) {
        auto& a = r.add("product_homology_matches_tor", "H_i(P) = Tor_{i-1} for i <= n");
        std::vector<int> idx;
        for (int i = 0; i <= n; ++i) idx.push_back(i);
        compare_dims(a, box, idx, [&](int i, const Multidegree& g) { return tor_at(i - 1, g); },
                     [&](int i, const Multidegree& g) { return cell(hP, i, g); }, "H_i(P)");
        auto& b = r.add("product_vs_sum_homology", "H_i(P) = H^{n-i}(S) for i <= n-2, i != 1");
        auto& lit = r.add("product_vs_sum_homology_all_i", "H_i(P) = H^{n-i}(S) for every i <= n-2", true);
        for (int i = 0; i <= n - 2; ++i)
            for (std::size_t k = 0; k < box.size(); ++k) {
                Multidegree g = box.at(k);
                long e = cell(hS, n - i, g), v = cell(hP, i, g);
                if (e != v) {
                    lit.fail({g, i, e, v, "H_i(P)"});
                    if (i != 1) b.fail({g, i, e, v, "H_i(P)"});
                }
            }
        auto& c = r.add("product_sum_sequence", "H_n(P) = H^0(S); H_{n-1}(P) = H^1(S) for n >= 3; H^1(S) = 0 for n = 2");
        auto& clit = r.add("product_sum_sequence_all_n", "0 -> H_n(P) -> S^0 -> H^1(S_-) -> H_{n-1}(P) -> 0 exact", true);
        for (std::size_t k = 0; k < box.size(); ++k) {
            Multidegree g = box.at(k);
            if (cell(hP, n, g) != cell(hS, 0, g)) c.fail({g, n, cell(hS, 0, g), cell(hP, n, g), "H_n(P)"});
            long e1 = n >= 3 ? cell(hP, n - 1, g) : 0;
            if (cell(hS, 1, g) != e1) c.fail({g, 1, e1, cell(hS, 1, g), "H^1(S)"});
            long lhs = s0(g) - cell(hSm, 1, g), rhs = cell(hP, n, g) - cell(hP, n - 1, g);
            if (lhs != rhs) clit.fail({g, 1, rhs, lhs, "S^0 - H^1(S_-)"});
        }
    } else {
        r.skip("product_homology_matches_tor", "a strict sub-family is not Tor-independent");
        r.skip("product_vs_sum_homology", "a strict sub-family is not Tor-independent");
        r.skip("product_sum_sequence", "a strict sub-family is not Tor-independent");
    }

    {
        auto& a = r.add("partial_product_homology", "Tor_i = H_{i+1}(P) for 1 <= i <= p when sub-families of size <= p are independent");
        for (int p = 1; p < n; ++p) {
            if (!strict.independent_up_to(static_cast<std::size_t>(p))) continue;
            std::vector<int> idx;
            for (int i = 1; i <= p; ++i) idx.push_back(i);
            compare_dims(a, box, idx, [&](int i, const Multidegree& g) { return tor_at(i, g); },
                         [&](int i, const Multidegree& g) { return cell(hP, i + 1, g); }, "p = " + std::to_string(p));
        }
    }

    {
        bool chain_ind = true;
        for (int j = 1; j < n; ++j) {
            MonomialIdeal prod = detail::combine_subset(ideals, (Mask{1} << j) - 1, IdealOp::product);
            chain_ind = chain_ind && tor_independent({ideals[static_cast<std::size_t>(j)], prod}, f);
        }
        r.flag("each_ideal_independent_of_earlier_product", chain_ind);
        auto& a = r.add("augmented_interior_resolves_product", "H_h = 0 for h >= 1 and H_0 = R/(I_1...I_n)");
        auto& b = r.add("augmented_interior_bottom", "H_0 = R/(I_1...I_n)");
        MonomialIdeal prod = combine(ideals, IdealOp::product);
        for (std::size_t k = 0; k < box.size(); ++k) {
            Multidegree g = box.at(k);
            long e = prod.contains(g) ? 0 : 1;
            if (cell(hA, 0, g) != e) b.fail({g, 0, e, cell(hA, 0, g), "H_0"});
        }
        if (chain_ind) {
            for (int h = 1; h <= hA.hi(); ++h)
                for (std::size_t k = 0; k < box.size(); ++k)
                    if (hA.at_flat(h, k)) a.fail({box.at(k), h, 0, cell(hA, h, box.at(k)), "H_h"});
        } else {
            a.skipped = true;
            a.detail = "some I_j is not Tor-independent of the product of the earlier ideals";
        }
    }

    if (strict_ind && full_ind) {
        auto& a = r.add("strong_independence_exactness", "S exact and H_i(P) = 0 for i >= 2");
        for (std::size_t k = 0; k < box.size(); ++k) {
            Multidegree g = box.at(k);
            for (int i = hS.lo(); i <= hS.hi(); ++i)
                if (cell(hS, i, g)) a.fail({g, i, 0, cell(hS, i, g), "H^i(S)"});
            for (int i = 2; i <= hP.hi(); ++i)
                if (cell(hP, i, g)) a.fail({g, i, 0, cell(hP, i, g), "H_i(P)"});
        }
    } else {
        r.skip("strong_independence_exactness", "family is not strongly Tor-independent");
    }
    return r;
}

/// Four exactness properties over every sub-family; (1) must agree with (2)+(3) and with (2)+(4).
inline CheckReport exactness_equivalences(const std::vector<MonomialIdeal>& ideals, const PrimeField& f) {
    detail::require_proper(ideals);
    CheckReport r;
    std::size_t n = ideals.size();
    bool c1 = strongly_independent(ideals, f);
    bool c2 = true, c3 = true, c4 = true;
    std::optional<Mask> w2, w3, w4;
    for (Mask L = 1; L < (Mask{1} << n); ++L) {
        auto fam = subfamily(ideals, L);
        if (c2) {
            std::vector<GradedComplex> res;
            for (const auto& I : fam) res.push_back(taylor_resolution(I));
            FilteredComplex fc = filtered_complex(tensor(res), FiltrationKind::interior_augmented);
            DegreeBox box(fc.box());
            bool ok = true;
            for (std::size_t k = 0; k < box.size() && ok; ++k) {
                SpectralPages sp = pages(fc.at(box.at(k), f), f, 2);
                if (sp.pages.size() < 2) continue;
                for (const auto& [pq, d] : sp.pages[1])
                    if (pq.second >= 0 && d) ok = false;
            }
            if (!ok) {
                c2 = false;
                if (!w2) w2 = L;
            }
        }
        HomologyTable hp = complex_homology_table(build_p_complex(fam), f);
        for (int i = 2; i <= hp.hi(); ++i)
            if (!hp.vanishes(i)) {
                c3 = false;
                if (!w3) w3 = L;
            }
        if (!complex_homology_table(build_s_complex(fam), f).is_zero()) {
            c4 = false;
            if (!w4) w4 = L;
        }
    }
    r.flag("strongly_independent", c1);
    r.flag("augmented_rows_exact", c2);
    r.flag("product_rows_exact", c3);
    r.flag("sum_rows_exact", c4);
    auto label = [](const std::optional<Mask>& w) { return w ? subset_label(*w) : std::string("none"); };
    r.value("first_failing_subfamily_2", w2 ? static_cast<long>(*w2) : 0);
    r.value("first_failing_subfamily_3", w3 ? static_cast<long>(*w3) : 0);
    r.value("first_failing_subfamily_4", w4 ? static_cast<long>(*w4) : 0);
    Multidegree zero(ideals[0].variables());
    auto& a = r.add("strong_iff_augmented_and_product", "failing sub-families: " + label(w2) + ", " + label(w3));
    if (c1 != (c2 && c3)) a.fail({zero, 0, c1, c2 && c3, "(1) vs (2)+(3)"});
    auto& b = r.add("strong_iff_augmented_and_sum", "failing sub-families: " + label(w2) + ", " + label(w4));
    if (c1 != (c2 && c4)) b.fail({zero, 0, c1, c2 && c4, "(1) vs (2)+(4)"});
    return r;
}

}  // namespace homotor

#endif
