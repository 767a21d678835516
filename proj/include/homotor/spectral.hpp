#ifndef HOMOTOR_SPECTRAL_HPP
#define HOMOTOR_SPECTRAL_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "gcomplex.hpp"
#include "multicomplex.hpp"

namespace homotor {

/// A fiber complex whose basis vectors carry filtration levels; F_p is spanned by levels <= p.
struct FilteredFiberComplex {
    FiberComplex base;
    std::vector<std::vector<int>> levels;  // per chain index - lo

    const std::vector<int>& levels_at(int i) const {
        static const std::vector<int> empty;
        if (i < base.lo || i > base.hi()) return empty;
        return levels[static_cast<std::size_t>(i - base.lo)];
    }

    void validate(const PrimeField& f) const {
        base.validate(f);
        if (levels.size() != base.dims.size()) throw Error(ErrorCode::LengthMismatch, "filtration level table");
        for (std::size_t k = 0; k < base.dims.size(); ++k) {
            if (levels[k].size() != base.dims[k]) throw Error(ErrorCode::LengthMismatch, "filtration levels per term");
            if (k == 0) continue;
            for (const auto& e : base.diffs[k].entries())
                if (levels[k - 1][e.row] > levels[k][e.col])
                    throw Error(ErrorCode::FiltrationViolation,
                                "differential raises the filtration level at index " + std::to_string(base.lo + static_cast<int>(k)));
        }
    }
};

/// A graded complex with a filtration level on every summand.
struct FilteredComplex {
    GradedComplex complex;
    std::vector<std::vector<int>> levels;  // per index - lo, per summand

    Multidegree box() const { return complex.stable_box(); }

    FilteredFiberComplex at(const Multidegree& g, const PrimeField& f) const {
        if (!complex.is_chain()) throw Error(ErrorCode::InvalidArgument, "filtered complexes are chain complexes");
        auto d = fiber_detail(complex, min_deg(g, box()), f);
        FilteredFiberComplex out;
        out.base = std::move(d.complex);
        out.levels.resize(d.basis.size());
        for (std::size_t k = 0; k < d.basis.size(); ++k)
            for (auto s : d.basis[k]) out.levels[k].push_back(levels[k][s]);
        return out;
    }
};

using PageTable = std::map<std::pair<int, int>, std::size_t>;  // (p, q) -> dim, nonzero only

struct AbutmentRow {
    int degree;
    std::size_t e_infinity_sum;
    std::size_t homology;
};

struct SpectralPages {
    std::vector<PageTable> pages;  // pages[r-1] is E^r
    std::vector<PageTable> ranks;  // ranks[r-1][(p,q)] is the rank of d^r leaving (p,q)
    PageTable e_infinity;
    std::vector<AbutmentRow> abutment;
    bool complete = false;
    bool recurrence_ok = true;

    std::size_t dim(int r, int p, int q) const {
        if (r < 1 || static_cast<std::size_t>(r) > pages.size()) return 0;
        auto it = pages[static_cast<std::size_t>(r - 1)].find({p, q});
        return it == pages[static_cast<std::size_t>(r - 1)].end() ? 0 : it->second;
    }
    std::size_t infinity(int p, int q) const {
        auto it = e_infinity.find({p, q});
        return it == e_infinity.end() ? 0 : it->second;
    }
    bool converged() const {
        return complete && std::all_of(abutment.begin(), abutment.end(),
                                       [](const AbutmentRow& a) { return a.e_infinity_sum == a.homology; });
    }
};

namespace detail {

inline std::vector<std::size_t> indices_where(const std::vector<int>& lv, auto pred) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < lv.size(); ++k)
        if (pred(lv[k])) out.push_back(k);
    return out;
}

/// Vectors (rows, in full coordinates of the source) spanning ker of d restricted to source
/// coordinates with level <= cmax, modulo target coordinates with level <= rmax.
inline DenseMatrix relative_kernel(const DenseMatrix& d, const std::vector<int>& src_lv, const std::vector<int>& tgt_lv,
                                   int cmax, int rmax, const PrimeField& f) {
    auto cols = indices_where(src_lv, [&](int l) { return l <= cmax; });
    auto rows = indices_where(tgt_lv, [&](int l) { return l > rmax; });
    DenseMatrix k;
    if (rows.empty()) {
        k = DenseMatrix(cols.size(), cols.size());
        for (std::size_t i = 0; i < cols.size(); ++i) k(i, i) = 1;
    } else {
        k = kernel_basis(d.submatrix(rows, cols), f);
    }
    DenseMatrix full(k.rows(), src_lv.size());
    for (std::size_t r = 0; r < k.rows(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) full(r, cols[c]) = k(r, c);
    return full;
}

inline std::size_t projected_rank(const DenseMatrix& vecs, const std::vector<int>& lv, int p, const PrimeField& f) {
    auto cols = indices_where(lv, [&](int l) { return l == p; });
    if (cols.empty() || vecs.rows() == 0) return 0;
    return dense_rank(vecs.select_columns(cols), f);
}

inline DenseMatrix stack(const DenseMatrix& a, const DenseMatrix& b, std::size_t cols) {
    DenseMatrix out(0, cols);
    for (std::size_t r = 0; r < a.rows(); ++r) out.append_row(a.row(r));
    for (std::size_t r = 0; r < b.rows(); ++r) out.append_row(b.row(r));
    return out;
}

}  // namespace detail

/// Pages E^r for r = 1 .. span+1 (or up to max_page) by the subspace formula.
inline SpectralPages pages(const FilteredFiberComplex& fc, const PrimeField& f, std::optional<int> max_page = std::nullopt) {
    fc.validate(f);
    const auto& base = fc.base;
    SpectralPages out;
    bool any = false;
    int lmin = 0, lmax = 0;
    for (const auto& lv : fc.levels)
        for (int l : lv) {
            if (!any) lmin = lmax = l;
            lmin = std::min(lmin, l);
            lmax = std::max(lmax, l);
            any = true;
        }
    int last = (lmax - lmin) + 1;
    int upto = max_page ? std::min(*max_page, last) : last;
    out.complete = upto == last;

    std::map<int, DenseMatrix> d;  // d[i] : degree i -> i-1, rows indexed by degree i-1 basis
    for (int i = base.lo; i <= base.hi() + 1; ++i) {
        const ScalarMatrix* m = base.differential(i);
        if (m) d[i] = DenseMatrix::from_sparse(*m);
        else d[i] = DenseMatrix(base.dim(i - 1), base.dim(i));
    }
    d[base.lo] = DenseMatrix(0, base.dim(base.lo));

    auto lv = [&](int i) -> const std::vector<int>& { return fc.levels_at(i); };

    for (int r = 1; r <= upto; ++r) {
        PageTable page, rk;
        for (int i = base.lo; i <= base.hi(); ++i) {
            if (base.dim(i) == 0) continue;
            std::vector<int> ps(lv(i).begin(), lv(i).end());
            std::sort(ps.begin(), ps.end());
            ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
            for (int p : ps) {
                DenseMatrix Z = detail::relative_kernel(d[i], lv(i), lv(i - 1), p, p - r, f);
                std::size_t num = detail::projected_rank(Z, lv(i), p, f);
                std::size_t den = 0;
                if (base.dim(i + 1) > 0) {
                    DenseMatrix K = detail::relative_kernel(d[i + 1], lv(i + 1), lv(i), p + r - 1, p, f);
                    den = detail::projected_rank(apply_rows(d[i + 1], K, f), lv(i), p, f);
                }
                std::size_t dim = num - den;
                if (dim) page[{p, i - p}] = dim;
                if (base.dim(i - 1) > 0 && Z.rows() > 0) {
                    DenseMatrix dZ = apply_rows(d[i], Z, f);
                    DenseMatrix K2 = detail::relative_kernel(d[i], lv(i), lv(i - 1), p - 1, p - r, f);
                    DenseMatrix W = apply_rows(d[i], K2, f);
                    std::size_t a = detail::projected_rank(detail::stack(dZ, W, base.dim(i - 1)), lv(i - 1), p - r, f);
                    std::size_t b = detail::projected_rank(W, lv(i - 1), p - r, f);
                    if (a > b) rk[{p, i - p}] = a - b;
                }
            }
        }
        out.pages.push_back(std::move(page));
        out.ranks.push_back(std::move(rk));
    }

    auto get = [](const PageTable& t, int p, int q) {
        auto it = t.find({p, q});
        return it == t.end() ? std::size_t{0} : it->second;
    };
    for (std::size_t r = 0; r + 1 < out.pages.size(); ++r) {
        int rr = static_cast<int>(r) + 1;
        std::set<std::pair<int, int>> keys;
        for (const auto& [k, v] : out.pages[r]) keys.insert(k);
        for (const auto& [k, v] : out.pages[r + 1]) keys.insert(k);
        for (const auto& [p, q] : keys) {
            std::size_t before = get(out.pages[r], p, q);
            std::size_t lost = get(out.ranks[r], p, q) + get(out.ranks[r], p + rr, q - rr + 1);
            if (before < lost || get(out.pages[r + 1], p, q) != before - lost) out.recurrence_ok = false;
        }
    }

    if (out.complete) {
        out.e_infinity = out.pages.empty() ? PageTable{} : out.pages.back();
        auto h = homology_dims(base, f);
        for (const auto& [i, hd] : h) {
            std::size_t sum = 0;
            for (const auto& [pq, v] : out.e_infinity)
                if (pq.first + pq.second == i) sum += v;
            out.abutment.push_back({i, sum, hd});
        }
    }
    return out;
}

enum class FiltrationKind { kcone, kcone_augmented, interior, interior_augmented };

inline FiltrationKind parse_filtration_kind(const std::string& s) {
    if (s == "kcone") return FiltrationKind::kcone;
    if (s == "kcone_augmented") return FiltrationKind::kcone_augmented;
    if (s == "interior") return FiltrationKind::interior;
    if (s == "interior_augmented") return FiltrationKind::interior_augmented;
    throw Error(ErrorCode::InvalidKind, "unknown filtration kind '" + s + "'");
}

inline const char* filtration_kind_name(FiltrationKind k) {
    switch (k) {
        case FiltrationKind::kcone: return "kcone";
        case FiltrationKind::kcone_augmented: return "kcone_augmented";
        case FiltrationKind::interior: return "interior";
        case FiltrationKind::interior_augmented: return "interior_augmented";
    }
    return "?";
}

namespace detail {

inline FilteredComplex leveled(const Totalization& t, const std::function<int(const MultiIndex&)>& level) {
    FilteredComplex fc;
    fc.complex = t.complex;
    fc.levels.resize(t.origin.size());
    for (std::size_t k = 0; k < t.origin.size(); ++k)
        for (const auto& o : t.origin[k]) fc.levels[k].push_back(level(o.index));
    return fc;
}

inline int support_count(const MultiIndex& q, std::size_t axes) {
    int c = 0;
    for (std::size_t k = 0; k < axes; ++k) c += q[k] != 0;
    return c;
}

}  // namespace detail

/// The filtered total complex behind each of the four multicomplex spectral sequences.
inline FilteredComplex filtered_complex(const Multicomplex& m, FiltrationKind kind) {
    std::size_t n = m.axes();
    switch (kind) {
        case FiltrationKind::kcone:
            return detail::leveled(totalize_with_origins(koszul_cone(m, n)), [](const MultiIndex& q) { return q[0]; });
        case FiltrationKind::kcone_augmented:
            return detail::leveled(totalize_with_origins(koszul_cone(hypercube_extension(m), n)),
                                   [](const MultiIndex& q) { return q[0]; });
        case FiltrationKind::interior:
            return detail::leveled(totalize_with_origins(m), [n](const MultiIndex& q) { return detail::support_count(q, n); });
        case FiltrationKind::interior_augmented:
            return detail::leveled(totalize_with_origins(hypercube_extension(m)),
                                   [n](const MultiIndex& q) { return detail::support_count(q, n); });
    }
    throw Error(ErrorCode::InvalidKind, "unknown filtration kind");
}

inline FilteredFiberComplex build_filtration(const Multicomplex& m, const Multidegree& g, FiltrationKind kind,
                                             const PrimeField& f) {
    return filtered_complex(m, kind).at(g, f);
}

enum class MVKind { sum_to_product, product_to_sum };

inline MVKind parse_mv_kind(const std::string& s) {
    if (s == "sum_to_product") return MVKind::sum_to_product;
    if (s == "product_to_sum") return MVKind::product_to_sum;
    throw Error(ErrorCode::InvalidKind, "unknown Mayer-Vietoris kind '" + s + "'");
}

namespace detail {

inline void require_proper(const std::vector<MonomialIdeal>& ideals) {
    if (ideals.empty()) throw Error(ErrorCode::EmptyInput, "empty ideal family");
    for (std::size_t i = 0; i < ideals.size(); ++i) {
        if (ideals[i].is_unit()) throw Error(ErrorCode::UnitIdeal, "ideal " + std::to_string(i + 1) + " is the unit ideal");
        if (ideals[i].variables() != ideals[0].variables()) throw Error(ErrorCode::LengthMismatch, "ideals over different rings");
    }
}

inline MonomialIdeal combine_subset(const std::vector<MonomialIdeal>& ideals, Mask I, IdealOp op) {
    std::vector<MonomialIdeal> sel;
    for (auto j : mask_elements(I)) sel.push_back(ideals[j]);
    return combine(sel, op);
}

}  // namespace detail

/// S^1 -> ... -> S^n placed at chain positions n-p, or P_n -> ... -> P_1 at positions p.
inline GradedComplex mv_row_complex(MVKind kind, const std::vector<MonomialIdeal>& ideals) {
    detail::require_proper(ideals);
    std::size_t n = ideals.size(), nv = ideals[0].variables();
    if (kind == MVKind::sum_to_product) {
        auto s = wedge_complex(n, nv, Orientation::cochain, 1, n, [&](Mask I) {
            return Summand::cyclic(detail::combine_subset(ideals, I, IdealOp::sum), Multidegree(nv));
        });
        return cochain_as_chain(s, static_cast<int>(n));
    }
    return wedge_complex(n, nv, Orientation::chain, 1, n, [&](Mask I) {
        return Summand::cyclic(detail::combine_subset(ideals, I, IdealOp::product), Multidegree(nv));
    });
}

/// Row complex tensored with a Taylor resolution of M, filtered by the row position.
inline FilteredComplex mv_double_complex(MVKind kind, const std::vector<MonomialIdeal>& ideals,
                                         const std::optional<MonomialIdeal>& M) {
    detail::require_proper(ideals);
    std::size_t nv = ideals[0].variables();
    MonomialIdeal IM = M ? *M : MonomialIdeal::zero(nv);
    if (IM.variables() != nv) throw Error(ErrorCode::LengthMismatch, "coefficient ideal over a different ring");
    GradedComplex row = mv_row_complex(kind, ideals);
    GradedComplex res = taylor_resolution(IM);
    auto t = totalize_with_origins(tensor_with_free(row, res));
    return detail::leveled(t, [](const MultiIndex& q) { return q[0]; });
}

inline SpectralPages mv_double(MVKind kind, const std::vector<MonomialIdeal>& ideals, const std::optional<MonomialIdeal>& M,
                               const Multidegree& g, const PrimeField& f) {
    return pages(mv_double_complex(kind, ideals, M).at(g, f), f);
}

}  // namespace homotor

#endif
