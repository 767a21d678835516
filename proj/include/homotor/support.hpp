#ifndef HOMOTOR_SUPPORT_HPP
#define HOMOTOR_SUPPORT_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "gcomplex.hpp"
#include "monomial.hpp"
#include "report.hpp"
#include "spectral.hpp"
#include "subsets.hpp"
#include "torlab.hpp"

namespace homotor {

/// Nonzero degrees of a module, stored as cells of a box. A cell with g_k = D_k stands for every
/// degree whose k-th coordinate is at least D_k.
struct SupportRegion {
    Multidegree box;
    std::set<Multidegree> cells;

    bool contains(const Multidegree& g) const { return cells.count(min_deg(g, box)) > 0; }
    bool empty() const { return cells.empty(); }

    /// Same region described on a larger box.
    SupportRegion rebased(const Multidegree& bigger) const {
        if (!box.divides(bigger)) throw Error(ErrorCode::BoxTooSmall, "cannot rebase " + box.str() + " onto " + bigger.str());
        SupportRegion r{bigger, {}};
        DegreeBox b(bigger);
        for (std::size_t k = 0; k < b.size(); ++k) {
            Multidegree g = b.at(k);
            if (contains(g)) r.cells.insert(g);
        }
        return r;
    }
};

inline SupportRegion empty_region(const Multidegree& box) { return {box, {}}; }

inline SupportRegion region_union(const SupportRegion& a, const SupportRegion& b) {
    Multidegree common = lcm_deg(a.box, b.box);
    SupportRegion r = a.rebased(common);
    for (const auto& c : b.rebased(common).cells) r.cells.insert(c);
    return r;
}

struct RegionComparison {
    bool equal = true;
    Multidegree box;
    std::vector<Multidegree> left_only;
    std::vector<Multidegree> right_only;
};

inline RegionComparison region_compare(const SupportRegion& a, const SupportRegion& b) {
    RegionComparison out;
    out.box = lcm_deg(a.box, b.box);
    SupportRegion ra = a.rebased(out.box), rb = b.rebased(out.box);
    for (const auto& c : ra.cells)
        if (!rb.cells.count(c)) out.left_only.push_back(c);
    for (const auto& c : rb.cells)
        if (!ra.cells.count(c)) out.right_only.push_back(c);
    out.equal = out.left_only.empty() && out.right_only.empty();
    return out;
}

/// Cells where row j (or any row) of the table is nonzero.
inline SupportRegion support_region(const HomologyTable& t, std::optional<int> j = std::nullopt) {
    SupportRegion r{t.bound(), {}};
    for (std::size_t k = 0; k < t.box().size(); ++k) {
        bool nz = false;
        if (j) nz = t.at_flat(*j, k) != 0;
        else
            for (int i = t.lo(); i <= t.hi() && !nz; ++i) nz = t.at_flat(i, k) != 0;
        if (nz) r.cells.insert(t.box().at(k));
    }
    return r;
}

/// Images of the region's cells under a coarse grading.
inline std::set<std::vector<long>> project(const SupportRegion& r, const GradingMap& g) {
    std::set<std::vector<long>> out;
    for (const auto& c : r.cells) out.insert(g.apply(c));
    return out;
}

/// The ideal generated by the listed variables.
inline MonomialIdeal variable_ideal(std::size_t nvars, const std::vector<std::size_t>& vars) {
    return MonomialIdeal::of_variables(nvars, vars);
}

/// Support of Tor(R/I_M, R/I) over all homological indices.
inline SupportRegion tor_support(const MonomialIdeal& I, const std::optional<MonomialIdeal>& M, const PrimeField& f) {
    return support_region(multi_tor({I}, M, f));
}

/// Equality of the union of Tor supports against products and against sums of at most p of the
/// variable ideals B_J, plus the two containments read off the Mayer-Vietoris spectral sequences.
inline CheckReport support_union_check(const std::vector<std::vector<std::size_t>>& partitions, std::size_t nvars,
                                       const std::optional<MonomialIdeal>& M, std::size_t p, const PrimeField& f) {
    std::size_t s = partitions.size();
    if (s == 0) throw Error(ErrorCode::EmptyInput, "no variable sets");
    if (p < 1 || p > s) throw Error(ErrorCode::ParamOutOfRange, "p must lie in 1.." + std::to_string(s));
    Mask seen = 0;
    std::vector<MonomialIdeal> B;
    for (std::size_t i = 0; i < s; ++i) {
        if (partitions[i].empty()) throw Error(ErrorCode::EmptyInput, "variable set " + std::to_string(i + 1) + " is empty");
        for (auto v : partitions[i]) {
            if (v >= nvars) throw Error(ErrorCode::InvalidArgument, "variable index " + std::to_string(v) + " out of range");
            if (seen >> v & 1u) throw Error(ErrorCode::OverlappingPartitions, "variable " + std::to_string(v + 1) + " appears twice");
            seen |= Mask{1} << v;
        }
        B.push_back(variable_ideal(nvars, partitions[i]));
    }
    if (M && M->is_unit()) throw Error(ErrorCode::ZeroModule, "coefficient module is zero");

    CheckReport r;
    SupportRegion prod_union = empty_region(Multidegree(nvars)), sum_union = prod_union;
    for (std::size_t k = 1; k <= p; ++k)
        for (Mask U : subsets_of_size(s, k)) {
            prod_union = region_union(prod_union, tor_support(detail::combine_subset(B, U, IdealOp::product), M, f));
            sum_union = region_union(sum_union, tor_support(detail::combine_subset(B, U, IdealOp::sum), M, f));
        }
    RegionComparison cmp = region_compare(prod_union, sum_union);
    r.value("product_union_cells", static_cast<long>(prod_union.rebased(cmp.box).cells.size()));
    r.value("sum_union_cells", static_cast<long>(sum_union.rebased(cmp.box).cells.size()));
    auto& eq = r.add("support_unions_equal", "box " + cmp.box.str());
    for (const auto& c : cmp.left_only) eq.fail({c, 0, 0, 1, "only in the product union"});
    for (const auto& c : cmp.right_only) eq.fail({c, 0, 1, 0, "only in the sum union"});

    auto& a = r.add("product_support_within_first_page", "sum-to-product sequence over each sub-family");
    auto& b = r.add("sum_support_within_first_page", "product-to-sum sequence over each sub-family");
    auto& c = r.add("spectral_abutments_match_tor");
    for (std::size_t k = 2; k <= s; ++k)
        for (Mask U : subsets_of_size(s, k)) {
            auto fam = subfamily(B, U);
            TorTable tprod = multi_tor({combine(fam, IdealOp::product)}, M, f);
            TorTable tsum = multi_tor({combine(fam, IdealOp::sum)}, M, f);
            for (MVKind kind : {MVKind::sum_to_product, MVKind::product_to_sum}) {
                FilteredComplex fc = mv_double_complex(kind, fam, M);
                Multidegree box = lcm_deg(fc.box(), lcm_deg(tprod.bound(), tsum.bound()));
                DegreeBox db(box);
                const TorTable& target = kind == MVKind::sum_to_product ? tprod : tsum;
                Assertion& contain = kind == MVKind::sum_to_product ? a : b;
                for (std::size_t q = 0; q < db.size(); ++q) {
                    Multidegree g = db.at(q);
                    SpectralPages sp = pages(fc.at(g, f), f);
                    std::size_t e1 = 0, total = 0, tor = 0;
                    if (!sp.pages.empty())
                        for (const auto& [pq, d] : sp.pages[0]) e1 += d;
                    for (const auto& row : sp.abutment) total += row.homology;
                    for (int i = target.lo(); i <= target.hi(); ++i) tor += target.at(i, g);
                    if (total > 0 && e1 == 0) contain.fail({g, 0, 1, 0, "sub-family " + subset_label(U)});
                    if (total != tor)
                        c.fail({g, 0, static_cast<long>(tor), static_cast<long>(total), std::string(kind == MVKind::sum_to_product ? "sum_to_product" : "product_to_sum") + " " + subset_label(U)});
                }
            }
        }
    return r;
}

}  // namespace homotor

#endif
