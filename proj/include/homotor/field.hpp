#ifndef HOMOTOR_FIELD_HPP
#define HOMOTOR_FIELD_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"

namespace homotor {

using Scalar = std::uint32_t;

inline bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    if (p < 4) return true;
    if (p % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

/// GF(p) for a prime p below 2^31.
class PrimeField {
public:
    static constexpr std::uint32_t default_characteristic = 32003;

    explicit PrimeField(std::int64_t p = default_characteristic) {
        if (p >= (std::int64_t{1} << 31) || !is_prime(p))
            throw Error(ErrorCode::NotPrime, "characteristic " + std::to_string(p) + " is not a supported prime");
        p_ = static_cast<std::uint32_t>(p);
    }

    std::uint32_t characteristic() const { return p_; }

    Scalar reduce(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<Scalar>(r < 0 ? r + p_ : r);
    }
    Scalar add(Scalar a, Scalar b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + p_ - b; }
    Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
    Scalar mul(Scalar a, Scalar b) const {
        return static_cast<Scalar>(static_cast<std::uint64_t>(a) * b % p_);
    }
    Scalar pow(Scalar a, std::uint64_t e) const {
        Scalar r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    Scalar inv(Scalar a) const {
        if (a == 0) throw Error(ErrorCode::InvalidArgument, "inverse of zero");
        return pow(a, p_ - 2);
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    std::uint32_t p_;
};

struct MatrixEntry {
    std::size_t row;
    std::size_t col;
    Scalar value;
};

/// Sparse matrix over GF(p); entries sorted by (row, col), no duplicates, no zeros.
class ScalarMatrix {
public:
    ScalarMatrix() = default;
    ScalarMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    /// Accumulates integer triplets mod p; repeated positions are summed.
    static ScalarMatrix from_triplets(std::size_t rows, std::size_t cols,
                                      const std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>>& t,
                                      const PrimeField& f) {
        std::map<std::pair<std::size_t, std::size_t>, Scalar> acc;
        for (const auto& [r, c, v] : t) {
            if (r >= rows || c >= cols) throw Error(ErrorCode::InvalidArgument, "matrix entry out of range");
            auto& slot = acc[{r, c}];
            slot = f.add(slot, f.reduce(v));
        }
        ScalarMatrix m(rows, cols);
        for (const auto& [rc, v] : acc)
            if (v != 0) m.entries_.push_back({rc.first, rc.second, v});
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<MatrixEntry>& entries() const { return entries_; }
    std::size_t nonzeros() const { return entries_.size(); }
    bool is_zero() const { return entries_.empty(); }

    ScalarMatrix transpose() const {
        ScalarMatrix t(cols_, rows_);
        t.entries_.reserve(entries_.size());
        for (const auto& e : entries_) t.entries_.push_back({e.col, e.row, e.value});
        std::sort(t.entries_.begin(), t.entries_.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        return t;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<MatrixEntry> entries_;
};

inline ScalarMatrix multiply(const ScalarMatrix& a, const ScalarMatrix& b, const PrimeField& f) {
    if (a.cols() != b.rows()) throw Error(ErrorCode::LengthMismatch, "matrix product shape mismatch");
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> brows(b.rows());
    for (const auto& e : b.entries()) brows[e.row].push_back({e.col, e.value});
    std::map<std::pair<std::size_t, std::size_t>, Scalar> acc;
    for (const auto& e : a.entries())
        for (const auto& [c, v] : brows[e.col]) {
            auto& slot = acc[{e.row, c}];
            slot = f.add(slot, f.mul(e.value, v));
        }
    std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> t;
    for (const auto& [rc, v] : acc)
        if (v) t.emplace_back(rc.first, rc.second, v);
    return ScalarMatrix::from_triplets(a.rows(), b.cols(), t, f);
}

/// Row-major dense matrix over GF(p).
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static DenseMatrix from_sparse(const ScalarMatrix& m) {
        DenseMatrix d(m.rows(), m.cols());
        for (const auto& e : m.entries()) d(e.row, e.col) = e.value;
        return d;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    Scalar operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    void append_row(const std::vector<Scalar>& row) {
        if (rows_ == 0 && a_.empty()) cols_ = row.size();
        if (row.size() != cols_) throw Error(ErrorCode::LengthMismatch, "row length mismatch");
        a_.insert(a_.end(), row.begin(), row.end());
        ++rows_;
    }
    std::vector<Scalar> row(std::size_t r) const {
        return std::vector<Scalar>(a_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                                   a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    }

    /// Keeps the listed rows and columns in the given order.
    DenseMatrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
        DenseMatrix s(rs.size(), cs.size());
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) s(i, j) = (*this)(rs[i], cs[j]);
        return s;
    }
    DenseMatrix select_columns(const std::vector<std::size_t>& cs) const {
        std::vector<std::size_t> rs(rows_);
        for (std::size_t i = 0; i < rows_; ++i) rs[i] = i;
        return submatrix(rs, cs);
    }

    /// In-place reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> rref(const PrimeField& f) {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t piv = rows_;
            for (std::size_t i = r; i < rows_; ++i)
                if ((*this)(i, c)) { piv = i; break; }
            if (piv == rows_) continue;
            if (piv != r)
                for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(r, j), (*this)(piv, j));
            Scalar iv = f.inv((*this)(r, c));
            for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) = f.mul((*this)(r, j), iv);
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r) continue;
                Scalar factor = (*this)(i, c);
                if (!factor) continue;
                for (std::size_t j = c; j < cols_; ++j)
                    (*this)(i, j) = f.sub((*this)(i, j), f.mul(factor, (*this)(r, j)));
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> a_;
};

inline std::size_t dense_rank(DenseMatrix m, const PrimeField& f) { return m.rref(f).size(); }

/// Basis of {x : A x = 0}, one vector per row.
inline DenseMatrix kernel_basis(const DenseMatrix& a, const PrimeField& f) {
    DenseMatrix r = a;
    auto pivots = r.rref(f);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    DenseMatrix k(0, a.cols());
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Scalar> v(a.cols(), 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(r(i, free));
        k.append_row(v);
    }
    return k;
}

/// Applies A to every row vector of `vectors`, giving rows of A v.
inline DenseMatrix apply_rows(const DenseMatrix& a, const DenseMatrix& vectors, const PrimeField& f) {
    DenseMatrix out(vectors.rows(), a.rows());
    for (std::size_t v = 0; v < vectors.rows(); ++v)
        for (std::size_t i = 0; i < a.rows(); ++i) {
            std::uint64_t s = 0;
            for (std::size_t j = 0; j < a.cols(); ++j) {
                Scalar x = vectors(v, j);
                if (x) s = (s + static_cast<std::uint64_t>(a(i, j)) * x) % f.characteristic();
            }
            out(v, i) = static_cast<Scalar>(s);
        }
    return out;
}

namespace detail {

using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;

inline SparseRow axpy_row(const SparseRow& x, Scalar factor, const SparseRow& y, const PrimeField& f) {
    // returns x - factor * y
    SparseRow out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.push_back(x[i++]);
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.push_back({y[j].first, f.neg(f.mul(factor, y[j].second))});
            ++j;
        } else {
            Scalar v = f.sub(x[i].second, f.mul(factor, y[j].second));
            if (v) out.push_back({x[i].first, v});
            ++i;
            ++j;
        }
    }
    return out;
}

inline std::size_t sparse_rank(const ScalarMatrix& m, const PrimeField& f) {
    std::vector<SparseRow> rows(m.rows());
    for (const auto& e : m.entries()) rows[e.row].push_back({e.col, e.value});
    std::vector<SparseRow> pivot_rows(m.cols());
    std::vector<bool> has_pivot(m.cols(), false);
    std::size_t rank = 0;
    for (auto& row : rows) {
        while (!row.empty()) {
            std::size_t lead = row.front().first;
            if (!has_pivot[lead]) {
                Scalar iv = f.inv(row.front().second);
                for (auto& [c, v] : row) v = f.mul(v, iv);
                pivot_rows[lead] = std::move(row);
                has_pivot[lead] = true;
                ++rank;
                break;
            }
            row = axpy_row(row, row.front().second, pivot_rows[lead], f);
        }
    }
    return rank;
}

}  // namespace detail

/// Rank over GF(p). Sparse elimination with lowest-column pivots, dense above 25% fill.
inline std::size_t rank(const ScalarMatrix& m, const PrimeField& f) {
    if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) return 0;
    double density = static_cast<double>(m.nonzeros()) / (static_cast<double>(m.rows()) * static_cast<double>(m.cols()));
    if (density > 0.25) return dense_rank(DenseMatrix::from_sparse(m), f);
    return detail::sparse_rank(m, f);
}

/// A bounded chain complex of finite-dimensional vector spaces.
/// diffs[k] is d_{lo+k} from term lo+k to term lo+k-1 (zero rows for k = 0).
struct FiberComplex {
    int lo = 0;
    std::vector<std::size_t> dims;
    std::vector<ScalarMatrix> diffs;

    int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
    std::size_t dim(int i) const {
        if (i < lo || i > hi()) return 0;
        return dims[static_cast<std::size_t>(i - lo)];
    }
    const ScalarMatrix* differential(int i) const {
        if (i < lo || i > hi()) return nullptr;
        return &diffs[static_cast<std::size_t>(i - lo)];
    }

    void validate(const PrimeField& f) const {
        if (diffs.size() != dims.size()) throw Error(ErrorCode::LengthMismatch, "differential count");
        for (std::size_t k = 0; k < dims.size(); ++k) {
            std::size_t target = k == 0 ? 0 : dims[k - 1];
            if (diffs[k].cols() != dims[k] || diffs[k].rows() != target)
                throw Error(ErrorCode::LengthMismatch, "differential shape at index " + std::to_string(lo + static_cast<int>(k)));
        }
        for (std::size_t k = 1; k < dims.size(); ++k)
            if (!multiply(diffs[k - 1], diffs[k], f).is_zero())
                throw Error(ErrorCode::CompositionNonzero, "d∘d != 0 at index " + std::to_string(lo + static_cast<int>(k)));
    }
};

/// dim H_i for each i in the window, in increasing order.
inline std::vector<std::pair<int, std::size_t>> homology_dims(const FiberComplex& c, const PrimeField& f) {
    c.validate(f);
    std::vector<std::size_t> ranks(c.dims.size() + 1, 0);
    for (std::size_t k = 0; k < c.dims.size(); ++k) ranks[k] = rank(c.diffs[k], f);
    std::vector<std::pair<int, std::size_t>> out;
    for (std::size_t k = 0; k < c.dims.size(); ++k)
        out.emplace_back(c.lo + static_cast<int>(k), c.dims[k] - ranks[k] - ranks[k + 1]);
    return out;
}

}  // namespace homotor

#endif
