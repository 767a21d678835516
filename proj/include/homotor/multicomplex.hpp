#ifndef HOMOTOR_MULTICOMPLEX_HPP
#define HOMOTOR_MULTICOMPLEX_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "gcomplex.hpp"
#include "subsets.hpp"

namespace homotor {

using MultiIndex = std::vector<int>;

/// Finite family of terms indexed by integer vectors, with one commuting differential per axis.
/// The axis-k differential goes from q to q - e_k.
class Multicomplex {
public:
    Multicomplex(std::size_t axes, std::size_t nvars) : axes_(axes), nvars_(nvars) {}

    std::size_t axes() const { return axes_; }
    std::size_t variables() const { return nvars_; }
    const std::map<MultiIndex, Term>& terms() const { return terms_; }

    const Term& term(const MultiIndex& q) const {
        static const Term empty;
        auto it = terms_.find(q);
        return it == terms_.end() ? empty : it->second;
    }
    const std::vector<DifferentialEntry>& entries(const MultiIndex& q, std::size_t axis) const {
        static const std::vector<DifferentialEntry> empty;
        auto it = diffs_.find({q, axis});
        return it == diffs_.end() ? empty : it->second;
    }

    void set_term(const MultiIndex& q, Term t) {
        if (q.size() != axes_) throw Error(ErrorCode::LengthMismatch, "multi-index length");
        if (t.empty()) {
            terms_.erase(q);
            return;
        }
        terms_[q] = std::move(t);
    }
    void set_entries(const MultiIndex& q, std::size_t axis, std::vector<DifferentialEntry> e) {
        if (axis >= axes_) throw Error(ErrorCode::InvalidArgument, "axis out of range");
        if (e.empty()) {
            diffs_.erase({q, axis});
            return;
        }
        diffs_[{q, axis}] = std::move(e);
    }

    static MultiIndex step(MultiIndex q, std::size_t axis, int by = -1) {
        q[axis] += by;
        return q;
    }

    Multidegree stable_box() const {
        std::vector<const Term*> ts;
        for (const auto& [q, t] : terms_) ts.push_back(&t);
        return detail::summands_box(nvars_, ts);
    }

    /// Entry ranges, well-definedness and pairwise commutation of the axis differentials.
    void validate() const {
        for (const auto& [key, es] : diffs_) {
            const auto& [q, axis] = key;
            const Term& src = term(q);
            const Term& tgt = term(step(q, axis));
            for (const auto& e : es) {
                if (e.source >= src.size() || e.target >= tgt.size())
                    throw Error(ErrorCode::InvalidArgument, "multicomplex entry out of range");
                if (!entry_well_defined(src[e.source], tgt[e.target]))
                    throw Error(ErrorCode::InvalidArgument, "ill-defined multicomplex entry " + src[e.source].label);
            }
        }
        Multidegree box = stable_box();
        for (const auto& [q, t] : terms_)
            for (std::size_t j = 0; j < axes_; ++j)
                for (std::size_t k = j + 1; k < axes_; ++k) {
                    auto a = detail::compose_entries(entries(q, j), entries(step(q, j), k));
                    auto b = detail::compose_entries(entries(q, k), entries(step(q, k), j));
                    for (const auto& [st, v] : b) a[st] -= v;
                    for (auto it = a.begin(); it != a.end();) it = it->second == 0 ? a.erase(it) : std::next(it);
                    MultiIndex target = step(step(q, j), k);
                    detail::check_composite(a, t, term(target), box, "(axes do not commute)");
                }
    }

private:
    std::size_t axes_;
    std::size_t nvars_;
    std::map<MultiIndex, Term> terms_;
    std::map<std::pair<MultiIndex, std::size_t>, std::vector<DifferentialEntry>> diffs_;
};

/// Tensor product of free chain complexes, one axis per factor, no signs.
inline Multicomplex tensor(const std::vector<GradedComplex>& factors) {
    if (factors.empty()) throw Error(ErrorCode::EmptyInput, "tensor of no factors");
    std::size_t nvars = factors[0].variables();
    for (const auto& f : factors) {
        if (f.variables() != nvars) throw Error(ErrorCode::LengthMismatch, "tensor factors over different rings");
        if (f.kind() != SummandKind::free_module) throw Error(ErrorCode::MixedKinds, "tensor factors must be free");
        if (!f.is_chain()) throw Error(ErrorCode::InvalidArgument, "tensor factors must be chain complexes");
        if (f.lo() < 0) throw Error(ErrorCode::InvalidArgument, "tensor factors must live in nonnegative degrees");
    }
    std::size_t n = factors.size();
    Multicomplex m(n, nvars);
    MultiIndex q(n);
    for (std::size_t k = 0; k < n; ++k) q[k] = factors[k].lo();

    auto tuple_index = [&](const MultiIndex& at, const std::vector<std::size_t>& tup) {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < n; ++k) idx = idx * factors[k].term(at[k]).size() + tup[k];
        return idx;
    };

    bool done = false;
    for (const auto& f : factors)
        if (f.length() == 0) done = true;
    while (!done) {
        std::size_t count = 1;
        for (std::size_t k = 0; k < n; ++k) count *= factors[k].term(q[k]).size();
        if (count > 0) {
            Term t;
            t.reserve(count);
            std::vector<std::size_t> tup(n, 0);
            for (std::size_t c = 0; c < count; ++c) {
                std::size_t rem = c;
                for (std::size_t k = n; k-- > 0;) {
                    std::size_t w = factors[k].term(q[k]).size();
                    tup[k] = rem % w;
                    rem /= w;
                }
                Multidegree shift(nvars);
                std::string label = "(";
                for (std::size_t k = 0; k < n; ++k) {
                    const auto& s = factors[k].term(q[k])[tup[k]];
                    shift = shift + s.shift;
                    label += (k ? "⊗" : "") + s.label;
                }
                t.push_back(Summand::free_module(shift, label + ")"));
            }
            for (std::size_t axis = 0; axis < n; ++axis) {
                MultiIndex tq = Multicomplex::step(q, axis);
                const auto& fe = factors[axis].entries(q[axis]);
                if (fe.empty()) continue;
                std::vector<DifferentialEntry> es;
                for (std::size_t c = 0; c < count; ++c) {
                    std::size_t rem = c;
                    for (std::size_t k = n; k-- > 0;) {
                        std::size_t w = factors[k].term(q[k]).size();
                        tup[k] = rem % w;
                        rem /= w;
                    }
                    for (const auto& e : fe) {
                        if (e.source != tup[axis]) continue;
                        auto tt = tup;
                        tt[axis] = e.target;
                        es.push_back({c, tuple_index(tq, tt), e.coeff});
                    }
                }
                m.set_entries(q, axis, std::move(es));
            }
            m.set_term(q, std::move(t));
        }
        std::size_t k = n;
        while (true) {
            if (k == 0) {
                done = true;
                break;
            }
            --k;
            if (q[k] < factors[k].hi()) {
                ++q[k];
                for (std::size_t j = k + 1; j < n; ++j) q[j] = factors[j].lo();
                break;
            }
        }
    }
    m.validate();
    return m;
}

/// Two-axis multicomplex A ⊗ B for a chain complex A of any summand kind and a free chain complex B.
inline Multicomplex tensor_with_free(const GradedComplex& a, const GradedComplex& b) {
    if (!a.is_chain() || !b.is_chain()) throw Error(ErrorCode::InvalidArgument, "tensor_with_free needs chain complexes");
    if (b.kind() != SummandKind::free_module) throw Error(ErrorCode::MixedKinds, "second factor must be free");
    if (a.variables() != b.variables()) throw Error(ErrorCode::LengthMismatch, "factors over different rings");
    Multicomplex m(2, a.variables());
    for (int i = a.lo(); i <= a.hi(); ++i)
        for (int j = b.lo(); j <= b.hi(); ++j) {
            const auto& ta = a.term(i);
            const auto& tb = b.term(j);
            if (ta.empty() || tb.empty()) continue;
            Term t;
            for (const auto& sa : ta)
                for (const auto& sb : tb) {
                    Summand s = sa;
                    s.shift = sa.shift + sb.shift;
                    s.label = "(" + sa.label + "⊗" + sb.label + ")";
                    t.push_back(std::move(s));
                }
            std::size_t wb = tb.size();
            std::vector<DifferentialEntry> ea, eb;
            for (const auto& e : a.entries(i))
                if (!b.term(j).empty())
                    for (std::size_t s = 0; s < wb; ++s) ea.push_back({e.source * wb + s, e.target * wb + s, e.coeff});
            std::size_t wbt = b.term(j - 1).size();
            for (const auto& e : b.entries(j))
                for (std::size_t s = 0; s < ta.size(); ++s) eb.push_back({s * wb + e.source, s * wbt + e.target, e.coeff});
            m.set_term({i, j}, std::move(t));
            m.set_entries({i, j}, 0, std::move(ea));
            m.set_entries({i, j}, 1, std::move(eb));
        }
    m.validate();
    return m;
}

enum class RegionKind { face, interior, complement };

struct RegionSelector {
    RegionKind kind = RegionKind::face;
    Mask indices = 0;
    bool starred = false;

    Mask effective(std::size_t axes) const {
        Mask full = axes >= 32 ? ~Mask{0} : ((Mask{1} << axes) - 1);
        return starred ? (full & ~indices) : indices;
    }
};

/// Whether q lies in the selected region; only the first `axes` coordinates are tested.
inline bool region_contains(const RegionSelector& s, const MultiIndex& q, std::size_t axes) {
    Mask S = s.effective(axes);
    Mask support = 0;
    for (std::size_t k = 0; k < axes; ++k)
        if (q[k] != 0) support |= Mask{1} << k;
    switch (s.kind) {
        case RegionKind::face: return (support & ~S) == 0;
        case RegionKind::interior: return support == S;
        case RegionKind::complement: return (support & ~S) != 0;
    }
    return false;
}

/// Sub, quotient, or subquotient multicomplex on a face, its interior, or its complement.
inline Multicomplex select(const Multicomplex& m, const RegionSelector& s) {
    Multicomplex out(m.axes(), m.variables());
    for (const auto& [q, t] : m.terms()) {
        if (!region_contains(s, q, m.axes())) continue;
        out.set_term(q, t);
        for (std::size_t a = 0; a < m.axes(); ++a) {
            MultiIndex tq = Multicomplex::step(q, a);
            if (m.term(tq).empty() || !region_contains(s, tq, m.axes())) continue;
            out.set_entries(q, a, m.entries(q, a));
        }
    }
    return out;
}

struct SummandOrigin {
    MultiIndex index;
    std::size_t summand;
};

struct Totalization {
    GradedComplex complex;
    std::vector<std::vector<SummandOrigin>> origin;  // per total index - lo

    const std::vector<SummandOrigin>& origins(int i) const {
        static const std::vector<SummandOrigin> empty;
        if (i < complex.lo() || i > complex.hi()) return empty;
        return origin[static_cast<std::size_t>(i - complex.lo())];
    }
};

/// Total complex with sign (-1)^(q_1+...+q_{k-1}) on axis k.
inline Totalization totalize_with_origins(const Multicomplex& m) {
    Totalization out;
    if (m.terms().empty()) {
        out.complex = GradedComplex(m.variables(), Orientation::chain, 0, {}, {});
        return out;
    }
    auto total = [](const MultiIndex& q) { return std::accumulate(q.begin(), q.end(), 0); };
    int lo = total(m.terms().begin()->first), hi = lo;
    for (const auto& [q, t] : m.terms()) {
        lo = std::min(lo, total(q));
        hi = std::max(hi, total(q));
    }
    std::size_t len = static_cast<std::size_t>(hi - lo + 1);
    std::vector<Term> terms(len);
    out.origin.resize(len);
    std::map<MultiIndex, std::size_t> offset;
    for (const auto& [q, t] : m.terms()) {
        std::size_t k = static_cast<std::size_t>(total(q) - lo);
        offset[q] = terms[k].size();
        for (std::size_t s = 0; s < t.size(); ++s) {
            terms[k].push_back(t[s]);
            out.origin[k].push_back({q, s});
        }
    }
    std::vector<std::vector<DifferentialEntry>> diffs(len);
    for (const auto& [q, t] : m.terms()) {
        std::size_t k = static_cast<std::size_t>(total(q) - lo);
        int prefix = 0;
        for (std::size_t a = 0; a < m.axes(); ++a) {
            std::int64_t sign = (prefix % 2 != 0) ? -1 : 1;
            prefix += q[a];
            const auto& es = m.entries(q, a);
            if (es.empty()) continue;
            MultiIndex tq = Multicomplex::step(q, a);
            std::size_t toff = offset.at(tq);
            for (const auto& e : es) diffs[k].push_back({offset[q] + e.source, toff + e.target, sign * e.coeff});
        }
    }
    out.complex = GradedComplex(m.variables(), Orientation::chain, lo, std::move(terms), std::move(diffs));
    return out;
}

inline GradedComplex totalize(const Multicomplex& m) { return totalize_with_origins(m).complex; }

namespace detail {

/// The composite of axis differentials from e_S down to the origin, last axis applied first.
inline std::vector<DifferentialEntry> corner_map(const Multicomplex& m, Mask S) {
    std::size_t n = m.axes();
    MultiIndex q(n, 0);
    for (auto k : mask_elements(S)) q[k] = 1;
    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> acc;
    for (std::size_t s = 0; s < m.term(q).size(); ++s) acc[{s, s}] = 1;
    auto elems = mask_elements(S);
    for (auto it = elems.rbegin(); it != elems.rend(); ++it) {
        std::map<std::pair<std::size_t, std::size_t>, std::int64_t> next;
        for (const auto& e : m.entries(q, *it))
            for (const auto& [st, v] : acc)
                if (st.second == e.source) next[{st.first, e.target}] += v * e.coeff;
        acc = std::move(next);
        q[*it] = 0;
    }
    std::vector<DifferentialEntry> out;
    for (const auto& [st, v] : acc)
        if (v) out.push_back({st.first, st.second, v});
    return out;
}

inline MultiIndex with_last(const MultiIndex& q, int last) {
    MultiIndex r = q;
    r.push_back(last);
    return r;
}

}  // namespace detail

/// The interior on S with the corner term C_0 attached in total degree |S|-1 by the composite map,
/// as a totalization with origins (the extra cone coordinate is -1 on the corner summands).
inline Totalization hypercube_augment_with_origins(const Multicomplex& m, const RegionSelector& s) {
    if (s.kind != RegionKind::interior) throw Error(ErrorCode::InvalidKind, "hypercube augmentation needs an interior selector");
    std::size_t n = m.axes();
    Mask S = s.effective(n);
    if (S == 0) throw Error(ErrorCode::EmptySelection, "hypercube augmentation on the empty index set");
    Multicomplex inner = select(m, s);
    Multicomplex cone(n + 1, m.variables());
    for (const auto& [q, t] : inner.terms()) {
        cone.set_term(detail::with_last(q, 0), t);
        for (std::size_t a = 0; a < n; ++a) cone.set_entries(detail::with_last(q, 0), a, inner.entries(q, a));
    }
    MultiIndex eS(n, 0);
    for (auto k : mask_elements(S)) eS[k] = 1;
    const Term& c0 = m.term(MultiIndex(n, 0));
    if (!c0.empty()) {
        cone.set_term(detail::with_last(eS, -1), c0);
        if (!inner.term(eS).empty()) cone.set_entries(detail::with_last(eS, 0), n, detail::corner_map(m, S));
    }
    cone.validate();
    return totalize_with_origins(cone);
}

inline GradedComplex hypercube_augment(const Multicomplex& m, const RegionSelector& s) {
    return hypercube_augment_with_origins(m, s).complex;
}

/// The (n+1)-multicomplex with C at cone coordinate 0 and the trivial hypercube on C_0 at -1.
inline Multicomplex hypercube_extension(const Multicomplex& m) {
    std::size_t n = m.axes();
    if (n > max_subset_universe) throw Error(ErrorCode::InvalidArgument, "too many axes");
    Multicomplex h(n + 1, m.variables());
    for (const auto& [q, t] : m.terms()) {
        h.set_term(detail::with_last(q, 0), t);
        for (std::size_t a = 0; a < n; ++a) h.set_entries(detail::with_last(q, 0), a, m.entries(q, a));
    }
    const Term& c0 = m.term(MultiIndex(n, 0));
    if (c0.empty()) return h;
    std::vector<DifferentialEntry> identity;
    for (std::size_t s = 0; s < c0.size(); ++s) identity.push_back({s, s, 1});
    for (Mask J = 0; J < (Mask{1} << n); ++J) {
        MultiIndex eJ(n, 0);
        for (auto k : mask_elements(J)) eJ[k] = 1;
        h.set_term(detail::with_last(eJ, -1), c0);
        for (auto k : mask_elements(J)) h.set_entries(detail::with_last(eJ, -1), k, identity);
        if (!m.term(eJ).empty()) h.set_entries(detail::with_last(eJ, 0), n, J == 0 ? identity : detail::corner_map(m, J));
    }
    h.validate();
    return h;
}

/// Koszul cone: a new axis 0 carrying K(1,...,1) restricted, at each q, to wedges e_I with
/// I inside the zero coordinates of q among the first `face_axes` axes.
inline Multicomplex koszul_cone(const Multicomplex& m, std::size_t face_axes) {
    std::size_t n = m.axes();
    if (face_axes > n) throw Error(ErrorCode::InvalidArgument, "face axes exceed axis count");
    Multicomplex out(n + 1, m.variables());
    auto zero_mask = [&](const MultiIndex& q) {
        Mask z = 0;
        for (std::size_t k = 0; k < face_axes; ++k)
            if (q[k] == 0) z |= Mask{1} << k;
        return z;
    };
    auto key = [](std::size_t p, const MultiIndex& q) {
        MultiIndex r{static_cast<int>(p)};
        r.insert(r.end(), q.begin(), q.end());
        return r;
    };
    std::map<MultiIndex, std::map<Mask, std::size_t>> block;
    std::vector<std::vector<Mask>> subsets(face_axes + 1);
    for (std::size_t p = 0; p <= face_axes; ++p) subsets[p] = subsets_of_size(face_axes, p);
    for (const auto& [q, t] : m.terms()) {
        Mask z = zero_mask(q);
        for (std::size_t p = 0; p <= face_axes; ++p) {
            Term tt;
            auto& offs = block[key(p, q)];
            for (Mask I : subsets[p]) {
                if ((I & ~z) != 0) continue;
                offs[I] = tt.size();
                for (const auto& s : t) {
                    Summand c = s;
                    c.label = "e" + subset_label(I) + "·" + s.label;
                    tt.push_back(std::move(c));
                }
            }
            if (!tt.empty()) out.set_term(key(p, q), std::move(tt));
        }
    }
    for (const auto& [q, t] : m.terms()) {
        std::size_t w = t.size();
        for (std::size_t p = 0; p <= face_axes; ++p) {
            auto it = block.find(key(p, q));
            if (it == block.end() || it->second.empty()) continue;
            const auto& offs = it->second;
            if (p > 0) {
                std::vector<DifferentialEntry> es;
                const auto& toffs = block.at(key(p - 1, q));
                for (const auto& [I, off] : offs)
                    for (auto j : mask_elements(I)) {
                        std::int64_t sign = (rank_in(I, j) % 2) ? -1 : 1;
                        std::size_t toff = toffs.at(I & ~(Mask{1} << j));
                        for (std::size_t s = 0; s < w; ++s) es.push_back({off + s, toff + s, sign});
                    }
                out.set_entries(key(p, q), 0, std::move(es));
            }
            for (std::size_t a = 0; a < n; ++a) {
                const auto& me = m.entries(q, a);
                if (me.empty()) continue;
                MultiIndex tq = Multicomplex::step(q, a);
                const auto& toffs = block.at(key(p, tq));
                std::vector<DifferentialEntry> es;
                for (const auto& [I, off] : offs) {
                    std::size_t toff = toffs.at(I);
                    for (const auto& e : me) es.push_back({off + e.source, toff + e.target, e.coeff});
                }
                out.set_entries(key(p, q), a + 1, std::move(es));
            }
        }
    }
    out.validate();
    return out;
}

}  // namespace homotor

#endif
