#ifndef HOMOTOR_TESTS_HELPERS_HPP
#define HOMOTOR_TESTS_HELPERS_HPP

#include <initializer_list>
#include <vector>

#include "homotor/homotor.hpp"
#include "homotor/problem.hpp"

namespace th {

using namespace homotor;

inline MonomialIdeal ideal(std::size_t n, std::initializer_list<std::vector<int>> gens) {
    std::vector<Multidegree> g;
    for (const auto& v : gens) g.emplace_back(v);
    return MonomialIdeal(n, g);
}

inline MonomialIdeal x1() { return ideal(1, {{1}}); }

inline ScalarMatrix dense(const std::vector<std::vector<std::int64_t>>& rows, const PrimeField& f) {
    std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> t;
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (rows[r][c]) t.emplace_back(r, c, rows[r][c]);
    return ScalarMatrix::from_triplets(rows.size(), cols, t, f);
}

inline std::size_t homology_at(const FiberComplex& c, int i, const PrimeField& f) {
    for (const auto& [j, d] : homology_dims(c, f))
        if (j == i) return d;
    return 0;
}

/// E^1 predicted from direct homology of faces, interiors and augmented interiors, per box degree.
inline std::vector<PageTable> predicted_first_page(const Multicomplex& m, FiltrationKind kind, const Multidegree& box,
                                                  const PrimeField& f) {
    std::size_t n = m.axes();
    DegreeBox b(box);
    std::vector<PageTable> out(b.size());
    auto add = [&](const GradedComplex& c, int p, bool by_total) {
        HomologyTable t = module_homology_table(c, f, box);
        for (int i = t.lo(); i <= t.hi(); ++i)
            for (std::size_t k = 0; k < b.size(); ++k)
                if (std::size_t d = t.at(i, b.at(k))) out[k][{p, by_total ? i - p : i}] += d;
    };
    for (std::size_t p = 0; p <= n; ++p)
        for (Mask J : subsets_of_size(n, p)) {
            int pp = static_cast<int>(p);
            switch (kind) {
                case FiltrationKind::kcone:
                    add(totalize(select(m, {RegionKind::face, J, true})), pp, false);
                    break;
                case FiltrationKind::kcone_augmented:
                    if (p < n) add(totalize(select(m, {RegionKind::face, J, true})), pp, false);
                    break;
                case FiltrationKind::interior:
                    add(totalize(select(m, {RegionKind::interior, J, false})), pp, true);
                    break;
                case FiltrationKind::interior_augmented:
                    if (p > 0) add(hypercube_augment(m, {RegionKind::interior, J, false}), pp, true);
                    break;
            }
        }
    return out;
}

inline PageTable first_page(const FilteredComplex& fc, const Multidegree& g, const PrimeField& f) {
    SpectralPages sp = pages(fc.at(g, f), f, 1);
    return sp.pages.empty() ? PageTable{} : sp.pages[0];
}

}  // namespace th

#endif
