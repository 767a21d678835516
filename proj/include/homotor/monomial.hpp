#ifndef HOMOTOR_MONOMIAL_HPP
#define HOMOTOR_MONOMIAL_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace homotor {

/// Exponent vector in N^n.
class Multidegree {
public:
    Multidegree() = default;
    explicit Multidegree(std::size_t n) : e_(n, 0) {}
    Multidegree(std::initializer_list<int> e) : e_(e) { check(); }
    explicit Multidegree(std::vector<int> e) : e_(std::move(e)) { check(); }

    static Multidegree unit(std::size_t n, std::size_t k) {
        Multidegree d(n);
        d.e_.at(k) = 1;
        return d;
    }

    std::size_t size() const { return e_.size(); }
    int operator[](std::size_t k) const { return e_[k]; }
    void set(std::size_t k, int v) {
        if (v < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
        e_.at(k) = v;
    }
    const std::vector<int>& exponents() const { return e_; }
    int total() const {
        int s = 0;
        for (int v : e_) s += v;
        return s;
    }
    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](int v) { return v == 0; });
    }

    /// Componentwise a <= b, i.e. x^a divides x^b.
    bool divides(const Multidegree& b) const {
        same_length(b);
        for (std::size_t k = 0; k < e_.size(); ++k)
            if (e_[k] > b.e_[k]) return false;
        return true;
    }

    void same_length(const Multidegree& b) const {
        if (e_.size() != b.e_.size())
            throw Error(ErrorCode::LengthMismatch, "multidegree lengths " + std::to_string(e_.size()) + " and " +
                                                       std::to_string(b.e_.size()));
    }

    std::string str() const {
        std::ostringstream os;
        os << '(';
        for (std::size_t k = 0; k < e_.size(); ++k) os << (k ? "," : "") << e_[k];
        os << ')';
        return os.str();
    }

    auto operator<=>(const Multidegree&) const = default;

private:
    void check() const {
        for (int v : e_)
            if (v < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
    }
    std::vector<int> e_;
};

inline Multidegree lcm_deg(const Multidegree& a, const Multidegree& b) {
    a.same_length(b);
    std::vector<int> r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = std::max(a[k], b[k]);
    return Multidegree(std::move(r));
}

inline Multidegree min_deg(const Multidegree& a, const Multidegree& b) {
    a.same_length(b);
    std::vector<int> r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = std::min(a[k], b[k]);
    return Multidegree(std::move(r));
}

inline Multidegree operator+(const Multidegree& a, const Multidegree& b) {
    a.same_length(b);
    std::vector<int> r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
    return Multidegree(std::move(r));
}

/// a - b; requires b <= a.
inline Multidegree operator-(const Multidegree& a, const Multidegree& b) {
    if (!b.divides(a)) throw Error(ErrorCode::InvalidArgument, "degree difference " + a.str() + " - " + b.str() + " is negative");
    std::vector<int> r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
    return Multidegree(std::move(r));
}

/// Enumerates all degrees 0 <= g <= bound in lexicographic order.
class DegreeBox {
public:
    explicit DegreeBox(Multidegree bound) : bound_(std::move(bound)) {
        count_ = 1;
        for (std::size_t k = 0; k < bound_.size(); ++k) count_ *= static_cast<std::size_t>(bound_[k] + 1);
    }

    const Multidegree& bound() const { return bound_; }
    std::size_t size() const { return count_; }

    Multidegree at(std::size_t flat) const {
        std::vector<int> e(bound_.size());
        for (std::size_t k = bound_.size(); k-- > 0;) {
            std::size_t w = static_cast<std::size_t>(bound_[k] + 1);
            e[k] = static_cast<int>(flat % w);
            flat /= w;
        }
        return Multidegree(std::move(e));
    }

    /// Flat index of min(g, bound).
    std::size_t index(const Multidegree& g) const {
        bound_.same_length(g);
        std::size_t flat = 0;
        for (std::size_t k = 0; k < bound_.size(); ++k)
            flat = flat * static_cast<std::size_t>(bound_[k] + 1) + static_cast<std::size_t>(std::min(g[k], bound_[k]));
        return flat;
    }

    std::vector<Multidegree> all() const {
        std::vector<Multidegree> out;
        out.reserve(count_);
        for (std::size_t i = 0; i < count_; ++i) out.push_back(at(i));
        return out;
    }

private:
    Multidegree bound_;
    std::size_t count_ = 1;
};

/// Linear map from fine degrees to Z^d.
class GradingMap {
public:
    GradingMap(std::size_t nvars, std::vector<std::vector<int>> rows) : nvars_(nvars), rows_(std::move(rows)) {
        for (const auto& r : rows_)
            if (r.size() != nvars_) throw Error(ErrorCode::LengthMismatch, "grading row length");
    }

    static GradingMap identity(std::size_t n) {
        std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
        for (std::size_t i = 0; i < n; ++i) rows[i][i] = 1;
        return GradingMap(n, rows);
    }

    std::size_t variables() const { return nvars_; }
    std::size_t rank_d() const { return rows_.size(); }
    const std::vector<std::vector<int>>& matrix() const { return rows_; }

    std::vector<long> apply(const Multidegree& a) const {
        if (a.size() != nvars_) throw Error(ErrorCode::LengthMismatch, "grading applied to wrong length");
        std::vector<long> out(rows_.size(), 0);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (std::size_t k = 0; k < nvars_; ++k) out[i] += static_cast<long>(rows_[i][k]) * a[k];
        return out;
    }

private:
    std::size_t nvars_;
    std::vector<std::vector<int>> rows_;
};

enum class IdealOp { sum, product, intersection };

/// Monomial ideal stored by its minimal generators in sorted order.
class MonomialIdeal {
public:
    explicit MonomialIdeal(std::size_t nvars = 0) : n_(nvars) {}
    MonomialIdeal(std::size_t nvars, std::vector<Multidegree> gens) : n_(nvars), gens_(std::move(gens)) {
        for (const auto& g : gens_)
            if (g.size() != n_)
                throw Error(ErrorCode::LengthMismatch, "generator " + g.str() + " in " + std::to_string(n_) + " variables");
        minimalize();
    }

    static MonomialIdeal zero(std::size_t n) { return MonomialIdeal(n); }
    static MonomialIdeal unit(std::size_t n) { return MonomialIdeal(n, {Multidegree(n)}); }
    /// The ideal generated by the listed variables.
    static MonomialIdeal of_variables(std::size_t n, const std::vector<std::size_t>& vars) {
        std::vector<Multidegree> g;
        for (auto v : vars) g.push_back(Multidegree::unit(n, v));
        return MonomialIdeal(n, g);
    }

    std::size_t variables() const { return n_; }
    const std::vector<Multidegree>& generators() const { return gens_; }
    std::size_t size() const { return gens_.size(); }
    bool is_zero() const { return gens_.empty(); }
    bool is_unit() const { return gens_.size() == 1 && gens_[0].is_zero(); }

    bool contains(const Multidegree& g) const {
        if (g.size() != n_) throw Error(ErrorCode::LengthMismatch, "membership of " + g.str());
        for (const auto& h : gens_)
            if (h.divides(g)) return true;
        return false;
    }

    bool subset_of(const MonomialIdeal& o) const {
        for (const auto& g : gens_)
            if (!o.contains(g)) return false;
        return true;
    }

    /// Largest exponent of variable k among generators.
    int max_exponent(std::size_t k) const {
        int m = 0;
        for (const auto& g : gens_) m = std::max(m, g[k]);
        return m;
    }

    /// x^a * I.
    MonomialIdeal times(const Multidegree& a) const {
        std::vector<Multidegree> g;
        for (const auto& h : gens_) g.push_back(h + a);
        return MonomialIdeal(n_, g);
    }

    std::string str() const {
        if (gens_.empty()) return "0";
        std::string s = "<";
        for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? "," : "") + gens_[i].str();
        return s + ">";
    }

    bool operator==(const MonomialIdeal& o) const { return n_ == o.n_ && gens_ == o.gens_; }

private:
    void minimalize() {
        std::sort(gens_.begin(), gens_.end());
        gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
        std::vector<Multidegree> keep;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            bool redundant = false;
            for (std::size_t j = 0; j < gens_.size() && !redundant; ++j)
                if (j != i && gens_[j].divides(gens_[i])) redundant = true;
            if (!redundant) keep.push_back(gens_[i]);
        }
        gens_ = std::move(keep);
    }

    std::size_t n_;
    std::vector<Multidegree> gens_;
};

inline MonomialIdeal combine(const std::vector<MonomialIdeal>& ideals, IdealOp op) {
    if (ideals.empty()) throw Error(ErrorCode::EmptyInput, "combine of an empty list");
    std::size_t n = ideals[0].variables();
    for (const auto& I : ideals)
        if (I.variables() != n) throw Error(ErrorCode::LengthMismatch, "ideals over different rings");
    MonomialIdeal acc = ideals[0];
    for (std::size_t i = 1; i < ideals.size(); ++i) {
        std::vector<Multidegree> g;
        const auto& J = ideals[i];
        switch (op) {
            case IdealOp::sum:
                g = acc.generators();
                g.insert(g.end(), J.generators().begin(), J.generators().end());
                break;
            case IdealOp::product:
                for (const auto& a : acc.generators())
                    for (const auto& b : J.generators()) g.push_back(a + b);
                break;
            case IdealOp::intersection:
                for (const auto& a : acc.generators())
                    for (const auto& b : J.generators()) g.push_back(lcm_deg(a, b));
                break;
        }
        acc = MonomialIdeal(n, g);
    }
    return acc;
}

struct QuotientDimension {
    std::size_t krull_dim;
    std::size_t codim;
};

/// dim R/I = n - minimum vertex cover of the generator supports.
inline QuotientDimension quotient_dimension(const MonomialIdeal& I) {
    if (I.is_unit()) throw Error(ErrorCode::UnitIdeal, "dimension of R/R");
    std::size_t n = I.variables();
    if (n > 16) throw Error(ErrorCode::InvalidArgument, "vertex cover search limited to 16 variables");
    std::vector<std::uint32_t> supports;
    for (const auto& g : I.generators()) {
        std::uint32_t s = 0;
        for (std::size_t k = 0; k < n; ++k)
            if (g[k] > 0) s |= 1u << k;
        supports.push_back(s);
    }
    std::size_t best = n;
    for (std::uint32_t cover = 0; cover < (1u << n); ++cover) {
        auto size = static_cast<std::size_t>(__builtin_popcount(cover));
        if (size >= best) continue;
        bool ok = std::all_of(supports.begin(), supports.end(), [&](std::uint32_t s) { return (s & cover) != 0; });
        if (ok) best = size;
    }
    return {n - best, best};
}

}  // namespace homotor

#endif
