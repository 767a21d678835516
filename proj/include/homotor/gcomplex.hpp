#ifndef HOMOTOR_GCOMPLEX_HPP
#define HOMOTOR_GCOMPLEX_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"
#include "field.hpp"
#include "monomial.hpp"
#include "subsets.hpp"

namespace homotor {

/// free: R(-a). cyclic: (R/J)(-a). ideal: J(-a), a submodule of R(-a).
enum class SummandKind { free_module, cyclic, ideal };

inline const char* summand_kind_name(SummandKind k) {
    switch (k) {
        case SummandKind::free_module: return "free";
        case SummandKind::cyclic: return "cyclic";
        case SummandKind::ideal: return "ideal";
    }
    return "?";
}

struct Summand {
    SummandKind kind = SummandKind::free_module;
    Multidegree shift;
    MonomialIdeal ideal;
    std::string label;

    static Summand free_module(Multidegree shift, std::string label = {}) {
        Summand s;
        s.kind = SummandKind::free_module;
        s.ideal = MonomialIdeal(shift.size());
        s.shift = std::move(shift);
        s.label = std::move(label);
        return s;
    }
    static Summand cyclic(MonomialIdeal J, Multidegree shift, std::string label = {}) {
        Summand s;
        s.kind = SummandKind::cyclic;
        s.ideal = std::move(J);
        s.shift = std::move(shift);
        s.label = std::move(label);
        return s;
    }
    static Summand ideal_part(MonomialIdeal J, Multidegree shift, std::string label = {}) {
        Summand s;
        s.kind = SummandKind::ideal;
        s.ideal = std::move(J);
        s.shift = std::move(shift);
        s.label = std::move(label);
        return s;
    }

    /// Whether this summand has a nonzero graded piece at g.
    bool survives(const Multidegree& g) const {
        if (!shift.divides(g)) return false;
        switch (kind) {
            case SummandKind::free_module: return true;
            case SummandKind::cyclic: return !ideal.contains(g - shift);
            case SummandKind::ideal: return ideal.contains(g - shift);
        }
        return false;
    }
};

/// Checks that the scalar times x^(a_src - a_tgt) is a well-defined map src -> tgt.
inline bool entry_well_defined(const Summand& src, const Summand& tgt) {
    if (src.kind != tgt.kind) return false;
    if (!tgt.shift.divides(src.shift)) return false;
    if (src.kind == SummandKind::free_module) return true;
    return src.ideal.times(src.shift - tgt.shift).subset_of(tgt.ideal);
}

enum class Orientation { chain, cochain };

struct DifferentialEntry {
    std::size_t source;
    std::size_t target;
    std::int64_t coeff;
};

using Term = std::vector<Summand>;

namespace detail {

inline Multidegree summands_box(std::size_t nvars, const std::vector<const Term*>& terms) {
    std::vector<int> d(nvars, 0);
    for (const auto* t : terms)
        for (const auto& s : *t)
            for (std::size_t k = 0; k < nvars; ++k) {
                int v = s.shift[k];
                if (s.kind != SummandKind::free_module) v += s.ideal.max_exponent(k);
                d[k] = std::max(d[k], v);
            }
    return Multidegree(std::move(d));
}

/// Integer composite of two sparse maps, keyed by (source, final target).
inline std::map<std::pair<std::size_t, std::size_t>, std::int64_t> compose_entries(
    const std::vector<DifferentialEntry>& first, const std::vector<DifferentialEntry>& second) {
    std::multimap<std::size_t, const DifferentialEntry*> by_source;
    for (const auto& e : second) by_source.emplace(e.source, &e);
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> out;
    for (const auto& e : first) {
        auto [lo, hi] = by_source.equal_range(e.target);
        for (auto it = lo; it != hi; ++it) out[{e.source, it->second->target}] += e.coeff * it->second->coeff;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

/// Throws CompositionNonzero if a nonzero integer composite src -> tgt is visible in some fiber of the box.
inline void check_composite(const std::map<std::pair<std::size_t, std::size_t>, std::int64_t>& comp, const Term& src,
                            const Term& tgt, const Multidegree& box, const std::string& where) {
    if (comp.empty()) return;
    DegreeBox b(box);
    for (const auto& [st, v] : comp) {
        for (std::size_t i = 0; i < b.size(); ++i) {
            Multidegree g = b.at(i);
            if (src[st.first].survives(g) && tgt[st.second].survives(g))
                throw Error(ErrorCode::CompositionNonzero, "d∘d != 0 " + where + " at degree " + g.str());
        }
    }
}

}  // namespace detail

/// A bounded complex of direct sums of graded summands with scalar differentials.
/// Chain differentials go from index i to i-1, cochain differentials from i to i+1.
class GradedComplex {
public:
    GradedComplex() = default;

    /// out[k] lists the differential entries leaving term lo+k.
    GradedComplex(std::size_t nvars, Orientation o, int lo, std::vector<Term> terms,
                  std::vector<std::vector<DifferentialEntry>> out)
        : nvars_(nvars), orientation_(o), lo_(lo), terms_(std::move(terms)), out_(std::move(out)) {
        if (out_.size() < terms_.size()) out_.resize(terms_.size());
        if (out_.size() != terms_.size()) throw Error(ErrorCode::LengthMismatch, "differential list longer than term list");
        validate();
    }

    std::size_t variables() const { return nvars_; }
    Orientation orientation() const { return orientation_; }
    bool is_chain() const { return orientation_ == Orientation::chain; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
    std::size_t length() const { return terms_.size(); }
    int target_index(int i) const { return is_chain() ? i - 1 : i + 1; }

    const Term& term(int i) const {
        static const Term empty;
        if (i < lo_ || i > hi()) return empty;
        return terms_[static_cast<std::size_t>(i - lo_)];
    }
    const std::vector<DifferentialEntry>& entries(int i) const {
        static const std::vector<DifferentialEntry> empty;
        if (i < lo_ || i > hi()) return empty;
        return out_[static_cast<std::size_t>(i - lo_)];
    }

    SummandKind kind() const {
        for (const auto& t : terms_)
            if (!t.empty()) return t.front().kind;
        return SummandKind::free_module;
    }

    std::size_t rank_of(int i) const { return term(i).size(); }

    /// Moves every term from index i to i + delta.
    GradedComplex reindexed(int delta) const {
        GradedComplex c = *this;
        c.lo_ += delta;
        return c;
    }

    Multidegree stable_box() const {
        std::vector<const Term*> ts;
        for (const auto& t : terms_) ts.push_back(&t);
        return detail::summands_box(nvars_, ts);
    }

private:
    void validate() const {
        SummandKind k = kind();
        for (const auto& t : terms_)
            for (const auto& s : t) {
                if (s.shift.size() != nvars_ || s.ideal.variables() != nvars_)
                    throw Error(ErrorCode::LengthMismatch, "summand " + s.label + " has the wrong variable count");
                if (s.kind != k) throw Error(ErrorCode::MixedKinds, "complex mixes summand kinds");
            }
        for (int i = lo_; i <= hi(); ++i) {
            const auto& src = term(i);
            const auto& tgt = term(target_index(i));
            for (const auto& e : entries(i)) {
                if (e.source >= src.size() || e.target >= tgt.size())
                    throw Error(ErrorCode::InvalidArgument, "differential entry out of range at index " + std::to_string(i));
                if (!entry_well_defined(src[e.source], tgt[e.target]))
                    throw Error(ErrorCode::InvalidArgument, "inhomogeneous or ill-defined entry " + src[e.source].label +
                                                                " -> " + tgt[e.target].label);
            }
        }
        Multidegree box = stable_box();
        for (int i = lo_; i <= hi(); ++i) {
            int j = target_index(i);
            auto comp = detail::compose_entries(entries(i), entries(j));
            detail::check_composite(comp, term(i), term(target_index(j)), box, "from index " + std::to_string(i));
        }
    }

    std::size_t nvars_ = 0;
    Orientation orientation_ = Orientation::chain;
    int lo_ = 0;
    std::vector<Term> terms_;
    std::vector<std::vector<DifferentialEntry>> out_;
};

inline Multidegree stable_box(const GradedComplex& c) { return c.stable_box(); }

/// Fiber together with the surviving summand indices of each term (indexed by complex index - lo).
struct FiberDetail {
    FiberComplex complex;
    std::vector<std::vector<std::size_t>> basis;
};

/// The fiber at g as a chain complex; cochain index i becomes chain index -i.
inline FiberDetail fiber_detail(const GradedComplex& c, const Multidegree& g, const PrimeField& f) {
    if (g.size() != c.variables()) throw Error(ErrorCode::LengthMismatch, "fiber degree " + g.str());
    FiberDetail out;
    std::size_t n = c.length();
    out.basis.resize(n);
    std::vector<std::vector<long>> position(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto& t = c.term(c.lo() + static_cast<int>(k));
        position[k].assign(t.size(), -1);
        for (std::size_t s = 0; s < t.size(); ++s)
            if (t[s].survives(g)) {
                position[k][s] = static_cast<long>(out.basis[k].size());
                out.basis[k].push_back(s);
            }
    }
    auto chain_to_orig = [&](int j) { return c.is_chain() ? j : -j; };
    int flo = c.is_chain() ? c.lo() : -c.hi();
    out.complex.lo = flo;
    out.complex.dims.resize(n);
    out.complex.diffs.resize(n);
    for (std::size_t kk = 0; kk < n; ++kk) {
        int j = flo + static_cast<int>(kk);
        int src = chain_to_orig(j);
        int tgt = chain_to_orig(j - 1);
        std::size_t sk = static_cast<std::size_t>(src - c.lo());
        out.complex.dims[kk] = out.basis[sk].size();
        std::size_t trows = 0;
        std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> trip;
        if (tgt >= c.lo() && tgt <= c.hi()) {
            std::size_t tk = static_cast<std::size_t>(tgt - c.lo());
            trows = out.basis[tk].size();
            for (const auto& e : c.entries(src)) {
                long ps = position[sk][e.source], pt = position[tk][e.target];
                if (ps >= 0 && pt >= 0) trip.emplace_back(static_cast<std::size_t>(pt), static_cast<std::size_t>(ps), e.coeff);
            }
        }
        out.complex.diffs[kk] = ScalarMatrix::from_triplets(trows, out.complex.dims[kk], trip, f);
    }
    return out;
}

inline FiberComplex fiber(const GradedComplex& c, const Multidegree& g, const PrimeField& f) {
    return fiber_detail(c, g, f).complex;
}

/// dim H_i at every degree of a box; lookups outside the box use min(g, box).
class HomologyTable {
public:
    HomologyTable() : box_(Multidegree()) {}
    HomologyTable(Orientation o, int lo, int hi, Multidegree box)
        : orientation_(o), lo_(lo), hi_(std::max(hi, lo - 1)), box_(std::move(box)) {
        dims_.assign(static_cast<std::size_t>(hi_ - lo_ + 1), std::vector<std::size_t>(box_.size(), 0));
    }

    Orientation orientation() const { return orientation_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    const DegreeBox& box() const { return box_; }
    const Multidegree& bound() const { return box_.bound(); }

    std::size_t at(int i, const Multidegree& g) const {
        if (i < lo_ || i > hi_) return 0;
        return dims_[static_cast<std::size_t>(i - lo_)][box_.index(g)];
    }
    std::size_t at_flat(int i, std::size_t flat) const {
        if (i < lo_ || i > hi_) return 0;
        return dims_[static_cast<std::size_t>(i - lo_)][flat];
    }
    void set(int i, std::size_t flat, std::size_t v) { dims_.at(static_cast<std::size_t>(i - lo_)).at(flat) = v; }

    bool vanishes(int i) const {
        if (i < lo_ || i > hi_) return true;
        const auto& row = dims_[static_cast<std::size_t>(i - lo_)];
        return std::all_of(row.begin(), row.end(), [](std::size_t v) { return v == 0; });
    }
    bool is_zero() const {
        for (int i = lo_; i <= hi_; ++i)
            if (!vanishes(i)) return false;
        return true;
    }
    /// Largest index with a nonzero entry, if any.
    std::optional<int> top() const {
        for (int i = hi_; i >= lo_; --i)
            if (!vanishes(i)) return i;
        return std::nullopt;
    }

    /// Same table viewed on a larger box via the min(g, box) rule.
    HomologyTable expanded(const Multidegree& bigger) const {
        if (!bound().divides(bigger)) throw Error(ErrorCode::BoxTooSmall, "cannot shrink a table box");
        HomologyTable t(orientation_, lo_, hi_, bigger);
        for (int i = lo_; i <= hi_; ++i)
            for (std::size_t k = 0; k < t.box().size(); ++k) t.set(i, k, at(i, t.box().at(k)));
        return t;
    }

private:
    Orientation orientation_ = Orientation::chain;
    int lo_ = 0;
    int hi_ = -1;
    DegreeBox box_;
    std::vector<std::vector<std::size_t>> dims_;
};

using TorTable = HomologyTable;

inline HomologyTable module_homology_table(const GradedComplex& c, const PrimeField& f,
                                           const std::optional<Multidegree>& box = std::nullopt) {
    Multidegree stable = c.stable_box();
    Multidegree b = box ? *box : stable;
    if (!stable.divides(b)) throw Error(ErrorCode::BoxTooSmall, "box " + b.str() + " is below the stability box " + stable.str());
    HomologyTable t(c.orientation(), c.lo(), c.hi(), b);
    for (std::size_t k = 0; k < t.box().size(); ++k) {
        auto fc = fiber(c, t.box().at(k), f);
        for (const auto& [j, d] : homology_dims(fc, f)) t.set(c.is_chain() ? j : -j, k, d);
    }
    return t;
}

/// K(1,...,1; R) on n units, over a ring with nvars variables.
inline GradedComplex koszul_units(std::size_t n, Orientation o, std::size_t nvars) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "Koszul complex needs n >= 1");
    std::vector<std::vector<Mask>> subsets(n + 1);
    std::vector<std::map<Mask, std::size_t>> index(n + 1);
    std::vector<Term> terms(n + 1);
    for (std::size_t p = 0; p <= n; ++p) {
        subsets[p] = subsets_of_size(n, p);
        for (std::size_t s = 0; s < subsets[p].size(); ++s) {
            index[p][subsets[p][s]] = s;
            terms[p].push_back(Summand::free_module(Multidegree(nvars), "e" + subset_label(subsets[p][s])));
        }
    }
    std::vector<std::vector<DifferentialEntry>> out(n + 1);
    for (std::size_t p = 0; p <= n; ++p)
        for (std::size_t s = 0; s < subsets[p].size(); ++s) {
            Mask m = subsets[p][s];
            for (std::size_t j = 0; j < n; ++j) {
                bool in = (m >> j) & 1u;
                std::int64_t sign = (rank_in(m, j) % 2) ? -1 : 1;
                if (o == Orientation::chain && in) out[p].push_back({s, index[p - 1][m & ~(Mask{1} << j)], sign});
                if (o == Orientation::cochain && !in) out[p].push_back({s, index[p + 1][m | (Mask{1} << j)], sign});
            }
        }
    return GradedComplex(nvars, o, 0, std::move(terms), std::move(out));
}

/// Koszul complex on the given monomials (chain).
inline GradedComplex koszul_variables(const std::vector<Multidegree>& gens, std::size_t nvars) {
    std::size_t n = gens.size();
    for (const auto& g : gens)
        if (g.size() != nvars) throw Error(ErrorCode::LengthMismatch, "Koszul generator " + g.str());
    std::vector<Term> terms(n + 1);
    std::vector<std::map<Mask, std::size_t>> index(n + 1);
    std::vector<std::vector<Mask>> subsets(n + 1);
    for (std::size_t p = 0; p <= n; ++p) {
        subsets[p] = subsets_of_size(n, p);
        for (std::size_t s = 0; s < subsets[p].size(); ++s) {
            Multidegree shift(nvars);
            for (auto j : mask_elements(subsets[p][s])) shift = shift + gens[j];
            index[p][subsets[p][s]] = s;
            terms[p].push_back(Summand::free_module(shift, "e" + subset_label(subsets[p][s])));
        }
    }
    std::vector<std::vector<DifferentialEntry>> out(n + 1);
    for (std::size_t p = 1; p <= n; ++p)
        for (std::size_t s = 0; s < subsets[p].size(); ++s) {
            Mask m = subsets[p][s];
            for (auto j : mask_elements(m))
                out[p].push_back({s, index[p - 1][m & ~(Mask{1} << j)], (rank_in(m, j) % 2) ? -1 : 1});
        }
    return GradedComplex(nvars, Orientation::chain, 0, std::move(terms), std::move(out));
}

/// Taylor resolution of R/I. The zero ideal gives R in degree 0.
inline GradedComplex taylor_resolution(const MonomialIdeal& I) {
    if (I.is_unit()) throw Error(ErrorCode::UnitIdeal, "Taylor resolution of R/R");
    std::size_t n = I.size();
    std::size_t nvars = I.variables();
    const auto& gens = I.generators();
    std::vector<Term> terms(n + 1);
    std::vector<std::map<Mask, std::size_t>> index(n + 1);
    std::vector<std::vector<Mask>> subsets(n + 1);
    for (std::size_t p = 0; p <= n; ++p) {
        subsets[p] = subsets_of_size(n, p);
        for (std::size_t s = 0; s < subsets[p].size(); ++s) {
            Multidegree shift(nvars);
            for (auto j : mask_elements(subsets[p][s])) shift = lcm_deg(shift, gens[j]);
            index[p][subsets[p][s]] = s;
            terms[p].push_back(Summand::free_module(shift, subset_label(subsets[p][s])));
        }
    }
    std::vector<std::vector<DifferentialEntry>> out(n + 1);
    for (std::size_t p = 1; p <= n; ++p)
        for (std::size_t s = 0; s < subsets[p].size(); ++s) {
            Mask m = subsets[p][s];
            for (auto j : mask_elements(m))
                out[p].push_back({s, index[p - 1][m & ~(Mask{1} << j)], (rank_in(m, j) % 2) ? -1 : 1});
        }
    return GradedComplex(nvars, Orientation::chain, 0, std::move(terms), std::move(out));
}

/// Koszul-signed complex on subsets I of {0..n-1} with pmin <= |I| <= pmax, term index |I|.
/// Chain: e_I -> sum_j (-1)^pos e_{I\j}. Cochain: e_I -> sum_j (-1)^#{i in I, i<j} e_{I+j}.
inline GradedComplex wedge_complex(std::size_t n, std::size_t nvars, Orientation o, std::size_t pmin, std::size_t pmax,
                                   const std::function<Summand(Mask)>& make) {
    pmax = std::min(pmax, n);
    if (pmin > pmax) return GradedComplex(nvars, o, static_cast<int>(pmin), {}, {});
    std::size_t len = pmax - pmin + 1;
    std::vector<Term> terms(len);
    std::vector<std::vector<Mask>> subsets(len);
    std::vector<std::map<Mask, std::size_t>> index(len);
    for (std::size_t p = pmin; p <= pmax; ++p) {
        auto& subs = subsets[p - pmin];
        subs = subsets_of_size(n, p);
        for (std::size_t s = 0; s < subs.size(); ++s) {
            index[p - pmin][subs[s]] = s;
            Summand sm = make(subs[s]);
            if (sm.label.empty()) sm.label = "e" + subset_label(subs[s]);
            terms[p - pmin].push_back(std::move(sm));
        }
    }
    std::vector<std::vector<DifferentialEntry>> out(len);
    for (std::size_t p = pmin; p <= pmax; ++p)
        for (std::size_t s = 0; s < subsets[p - pmin].size(); ++s) {
            Mask m = subsets[p - pmin][s];
            for (std::size_t j = 0; j < n; ++j) {
                bool in = (m >> j) & 1u;
                std::int64_t sign = (rank_in(m, j) % 2) ? -1 : 1;
                if (o == Orientation::chain && in && p > pmin)
                    out[p - pmin].push_back({s, index[p - 1 - pmin].at(m & ~(Mask{1} << j)), sign});
                if (o == Orientation::cochain && !in && p < pmax)
                    out[p - pmin].push_back({s, index[p + 1 - pmin].at(m | (Mask{1} << j)), sign});
            }
        }
    return GradedComplex(nvars, o, static_cast<int>(pmin), std::move(terms), std::move(out));
}

/// Cochain complex viewed as a chain complex with chain index offset - i.
inline GradedComplex cochain_as_chain(const GradedComplex& c, int offset) {
    if (c.is_chain()) throw Error(ErrorCode::InvalidArgument, "expected a cochain complex");
    std::vector<Term> terms;
    std::vector<std::vector<DifferentialEntry>> out;
    for (int i = c.hi(); i >= c.lo(); --i) {
        terms.push_back(c.term(i));
        out.push_back(c.entries(i));
    }
    return GradedComplex(c.variables(), Orientation::chain, offset - c.hi(), std::move(terms), std::move(out));
}

/// c tensored with R/J: every free summand R(-a) becomes (R/J)(-a).
inline GradedComplex with_coefficient(const GradedComplex& c, const MonomialIdeal& J) {
    if (J.is_unit()) throw Error(ErrorCode::UnitIdeal, "coefficient module R/R is zero");
    if (J.is_zero()) return c;
    if (c.kind() != SummandKind::free_module) throw Error(ErrorCode::MixedKinds, "coefficient change needs free summands");
    std::vector<Term> terms;
    std::vector<std::vector<DifferentialEntry>> out;
    for (int i = c.lo(); i <= c.hi(); ++i) {
        Term t;
        for (const auto& s : c.term(i)) t.push_back(Summand::cyclic(J, s.shift, s.label));
        terms.push_back(std::move(t));
        out.push_back(c.entries(i));
    }
    return GradedComplex(c.variables(), c.orientation(), c.lo(), std::move(terms), std::move(out));
}

}  // namespace homotor

#endif
