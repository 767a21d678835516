// Acceptance runner: one PASS/FAIL line per criterion. Usage: acceptance [N ...]

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace homotor;
using th::ideal;

namespace {

// All comparisons below are exact dimension equalities over GF(p).
constexpr long kCharacteristic = 32003;
constexpr std::size_t kTolerance = 0;
constexpr std::size_t kMaxWitnesses = 5;

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> witnesses;

    void fail(const std::string& w) {
        pass = false;
        if (witnesses.size() < kMaxWitnesses) witnesses.push_back(w);
    }
};

std::string family_str(const std::vector<MonomialIdeal>& fam) {
    std::string s = "[";
    for (std::size_t i = 0; i < fam.size(); ++i) s += (i ? ", " : "") + fam[i].str();
    return s + "]";
}

std::string mismatch(const std::vector<MonomialIdeal>& fam, const Multidegree& g, int i, long expected, long actual,
                     const std::string& note = {}) {
    std::ostringstream o;
    o << family_str(fam) << " degree " << g.str() << " index " << i << " expected " << expected << " actual " << actual;
    if (!note.empty()) o << " (" << note << ")";
    return o.str();
}

bool same(long a, long b) { return static_cast<std::size_t>(a > b ? a - b : b - a) <= kTolerance; }

long total_homology(const FiberComplex& c, int i) {
    oracle::Chain ch;
    for (int j = c.lo; j <= c.hi(); ++j) {
        ch.dims[j] = c.dim(j);
        const ScalarMatrix* d = c.differential(j);
        if (!d || d->rows() == 0 || d->cols() == 0) continue;
        oracle::Matrix m(d->rows(), std::vector<long>(d->cols(), 0));
        for (const auto& e : d->entries()) m[e.row][e.col] = static_cast<long>(e.value);
        ch.d[j] = m;
    }
    return ch.homology(i, kCharacteristic);
}

std::vector<GradedComplex> resolutions(const std::vector<MonomialIdeal>& fam) {
    std::vector<GradedComplex> res;
    for (const auto& I : fam) res.push_back(taylor_resolution(I));
    return res;
}

RandomParams small_params(std::uint64_t seed, std::size_t min_ideals, std::size_t max_ideals) {
    RandomParams p;
    p.nvars = 1 + seed % 3;
    p.nideals = min_ideals + (seed / 3) % (max_ideals - min_ideals + 1);
    p.max_gens = 1 + (seed / 7) % 3;
    p.max_exp = 2;
    return p;
}

// 1. Tor_1 from the multiple Tor complex against the one-sided oracle.
Outcome tor1_equivalence() {
    PrimeField f(kCharacteristic);
    Outcome out;
    std::size_t cells = 0, families = 0;
    for (std::uint64_t seed = 0; seed < 220; ++seed) {
        auto fam = random_instance(seed, small_params(seed, 2, 3));
        TorTable t = multi_tor(fam, f);
        TorTable o = tor1_oracle(fam, f, t.bound());
        ++families;
        for (std::size_t k = 0; k < t.box().size(); ++k, ++cells) {
            Multidegree g = t.box().at(k);
            long a = static_cast<long>(t.at_flat(1, k)), b = static_cast<long>(o.at(1, g));
            if (!same(a, b)) out.fail(mismatch(fam, g, 1, b, a, "seed " + std::to_string(seed)));
        }
    }
    out.detail = std::to_string(families) + " families, " + std::to_string(cells) + " degrees";
    return out;
}

// 2. Two ideals: Mayer-Vietoris bookkeeping and Tor_1 = (I cap J)/IJ.
Outcome mayer_vietoris_pairs() {
    PrimeField f(kCharacteristic);
    Outcome out;
    std::size_t cells = 0, pairs = 0;
    for (std::uint64_t seed = 1000; seed < 1220; ++seed) {
        RandomParams p{1 + seed % 3, 2, 1 + (seed / 3) % 3, 2};
        auto fam = random_instance(seed, p);
        const auto& I = fam[0];
        const auto& J = fam[1];
        TorTable t = multi_tor(fam, f);
        ++pairs;
        for (std::size_t k = 0; k < t.box().size(); ++k, ++cells) {
            Multidegree g = t.box().at(k);
            long tor1 = static_cast<long>(t.at_flat(1, k));
            long q_prod = oracle::in_product(fam, 3, g) ? 0 : 1;
            long q_i = I.contains(g) ? 0 : 1, q_j = J.contains(g) ? 0 : 1;
            long q_sum = oracle::in_sum(fam, 3, g) ? 0 : 1;
            long alternating = tor1 - q_prod + q_i + q_j - q_sum;
            if (!same(alternating, 0)) out.fail(mismatch(fam, g, 1, 0, alternating, "alternating sum"));
            long meet_over_prod = (I.contains(g) && J.contains(g) ? 1 : 0) - (oracle::in_product(fam, 3, g) ? 1 : 0);
            if (!same(tor1, meet_over_prod)) out.fail(mismatch(fam, g, 1, meet_over_prod, tor1, "(I cap J)/IJ"));
        }
    }
    out.detail = std::to_string(pairs) + " pairs, " + std::to_string(cells) + " degrees";
    return out;
}

void check_convergence(Outcome& out, const FilteredComplex& fc, const std::vector<MonomialIdeal>& fam, const std::string& kind,
                       const PrimeField& f, std::size_t& fibers) {
    DegreeBox box(fc.box());
    for (std::size_t k = 0; k < box.size(); ++k) {
        Multidegree g = box.at(k);
        FilteredFiberComplex ffc = fc.at(g, f);
        SpectralPages sp = pages(ffc, f);
        ++fibers;
        if (!sp.complete) out.fail(mismatch(fam, g, 0, 1, 0, kind + ": pages did not stabilize"));
        std::map<int, long> sums;
        for (const auto& [pq, d] : sp.e_infinity) sums[pq.first + pq.second] += static_cast<long>(d);
        for (int i = ffc.base.lo - 1; i <= ffc.base.hi() + 1; ++i) {
            long h = total_homology(ffc.base, i);
            if (!same(sums[i], h)) out.fail(mismatch(fam, g, i, h, sums[i], kind));
        }
    }
}

// 3. Every spectral sequence converges to the homology of its total fiber.
Outcome spectral_convergence() {
    PrimeField f(kCharacteristic);
    Outcome out;
    std::size_t fibers = 0, instances = 0;
    for (std::uint64_t seed = 2000; seed < 2200; ++seed) {
        auto fam = random_instance(seed, small_params(seed, 1, 3));
        Multicomplex m = tensor(resolutions(fam));
        for (auto kind : {FiltrationKind::kcone, FiltrationKind::kcone_augmented, FiltrationKind::interior,
                          FiltrationKind::interior_augmented})
            check_convergence(out, filtered_complex(m, kind), fam, filtration_kind_name(kind), f, fibers);
        std::optional<MonomialIdeal> M;
        if (seed % 2) M = random_instance(seed + 7, {fam[0].variables(), 1, 2, 2})[0];
        check_convergence(out, mv_double_complex(MVKind::sum_to_product, fam, M), fam, "sum_to_product", f, fibers);
        check_convergence(out, mv_double_complex(MVKind::product_to_sum, fam, M), fam, "product_to_sum", f, fibers);
        ++instances;
    }
    out.detail = std::to_string(instances) + " instances, 6 kinds, " + std::to_string(fibers) + " fibers";
    return out;
}

// 4. First pages equal face, interior and augmented interior homology computed directly.
Outcome first_page_identification() {
    PrimeField f(kCharacteristic);
    Outcome out;
    std::size_t fibers = 0, instances = 0;
    for (std::uint64_t seed = 3000; seed < 3150; ++seed) {
        auto fam = random_instance(seed, small_params(seed, 1, 3));
        Multicomplex m = tensor(resolutions(fam));
        for (auto kind : {FiltrationKind::kcone, FiltrationKind::kcone_augmented, FiltrationKind::interior,
                          FiltrationKind::interior_augmented}) {
            FilteredComplex fc = filtered_complex(m, kind);
            auto predicted = th::predicted_first_page(m, kind, fc.box(), f);
            DegreeBox box(fc.box());
            for (std::size_t k = 0; k < box.size(); ++k, ++fibers) {
                PageTable got = th::first_page(fc, box.at(k), f);
                if (got == predicted[k]) continue;
                std::set<std::pair<int, int>> keys;
                for (const auto& [pq, d] : got) keys.insert(pq);
                for (const auto& [pq, d] : predicted[k]) keys.insert(pq);
                for (const auto& pq : keys) {
                    long a = got.count(pq) ? static_cast<long>(got.at(pq)) : 0;
                    long e = predicted[k].count(pq) ? static_cast<long>(predicted[k].at(pq)) : 0;
                    if (!same(a, e))
                        out.fail(mismatch(fam, box.at(k), pq.first, e, a,
                                          std::string(filtration_kind_name(kind)) + " q=" + std::to_string(pq.second)));
                }
            }
        }
        ++instances;
    }
    out.detail = std::to_string(instances) + " instances, 4 kinds, " + std::to_string(fibers) + " fibers";
    return out;
}

// 5. Sum and product complexes against multiple Tor, as literally stated, plus the shifted convention.
Outcome sum_product_identities() {
    PrimeField f(kCharacteristic);
    Outcome out;
    std::vector<std::vector<MonomialIdeal>> families{
        {ideal(2, {{1, 0}}), ideal(2, {{0, 1}})},
        {ideal(3, {{1, 0, 0}}), ideal(3, {{0, 1, 0}}), ideal(3, {{0, 0, 1}})},
        {ideal(2, {{1, 0}, {0, 1}}), ideal(2, {{1, 0}, {0, 1}})},
        {ideal(3, {{1, 0, 0}, {0, 1, 0}}), ideal(3, {{0, 0, 1}}), ideal(3, {{1, 1, 0}})},
    };
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
            for (int c = 1; c <= 2; ++c) {
                families.push_back({ideal(3, {{a, 0, 0}}), ideal(3, {{0, b, 0}}), ideal(3, {{0, 0, c}})});
                families.push_back({ideal(4, {{a, 0, 0, 0}, {0, b, 0, 0}}), ideal(4, {{0, 0, c, 0}}), ideal(4, {{0, 0, 0, a}})});
            }
    for (std::uint64_t seed = 4000; seed < 5000 && families.size() < 300; ++seed) {
        auto fam = random_instance(seed, small_params(seed, 2, 3));
        if (strict_subfamily_tor(fam, f).all_independent()) families.push_back(fam);
    }
    std::size_t cohom = 0, prod = 0, versus = 0, shifted = 0;
    bool only_boundary = true;
    std::vector<std::string> shifted_witness;
    std::map<int, std::size_t> by_size;
    for (const auto& fam : families) {
        const int n = static_cast<int>(fam.size());
        ++by_size[n];
        SumComplex S = build_s_complex(fam);
        ProductComplex P = build_p_complex(fam);
        GradedComplex T = multi_tor_complex(fam);
        Multidegree B = common_box({S.underlying.stable_box(), P.underlying.stable_box(), T.stable_box()});
        HomologyTable hS = complex_homology_table(S, f, B), hP = complex_homology_table(P, f, B);
        HomologyTable tor = module_homology_table(T, f, B);
        auto tor_at = [&](int i, const Multidegree& g) { return i < 0 ? 0L : static_cast<long>(tor.at(i, g)); };
        bool shifted_failed = false;
        for (const auto& g : hS.box().all()) {
            for (int i = 2; i <= n; ++i) {
                long s = static_cast<long>(hS.at(i, g));
                if (!same(s, tor_at(n - i - 1, g))) {
                    ++cohom;
                    only_boundary = only_boundary && i == n - 1;
                    out.fail(mismatch(fam, g, i, tor_at(n - i - 1, g), s, "H^i(S) vs Tor_{n-i-1}"));
                }
                if (!same(s, tor_at(n - i, g))) {
                    if (!shifted_failed && shifted_witness.size() < 2)
                        shifted_witness.push_back(mismatch(fam, g, i, tor_at(n - i, g), s, "H^i(S) vs Tor_{n-i}"));
                    shifted_failed = true;
                }
            }
            for (int i = 0; i <= n; ++i) {
                long p = static_cast<long>(hP.at(i, g));
                if (!same(p, tor_at(i - 1, g))) {
                    ++prod;
                    out.fail(mismatch(fam, g, i, tor_at(i - 1, g), p, "H_i(P) vs Tor_{i-1}"));
                }
            }
            for (int i = 0; i <= n - 2; ++i) {
                long p = static_cast<long>(hP.at(i, g)), s = static_cast<long>(hS.at(n - i, g));
                if (!same(p, s)) {
                    ++versus;
                    only_boundary = only_boundary && i == 1;
                    out.fail(mismatch(fam, g, i, s, p, "H_i(P) vs H^{n-i}(S)"));
                }
            }
        }
        if (shifted_failed) ++shifted;
    }
    if (shifted == 0) out.fail("the shifted convention H^i(S) = Tor_{n-i} held on every instance");
    std::ostringstream d;
    d << families.size() << " families (";
    for (const auto& [n, c] : by_size) d << (n == by_size.begin()->first ? "" : ", ") << c << " with n=" << n;
    d << "); mismatching degrees: H^i(S)/Tor_{n-i-1} " << cohom << ", H_i(P)/Tor_{i-1} " << prod
      << ", H_i(P)/H^{n-i}(S) " << versus << (only_boundary ? " (all at i = n-1 for S and i = 1 for P vs S)" : " (some away from the boundary)")
      << "; shifted convention failed on " << shifted << " families";
    for (const auto& w : shifted_witness) d << "; shifted-convention witness: " << w;
    out.detail = d.str();
    return out;
}

void set_partitions(std::size_t n, std::size_t next, std::vector<std::vector<std::size_t>>& cur,
                    std::vector<std::vector<std::vector<std::size_t>>>& out) {
    if (next == n) {
        out.push_back(cur);
        return;
    }
    for (std::size_t b = 0; b < cur.size(); ++b) {
        cur[b].push_back(next);
        set_partitions(n, next + 1, cur, out);
        cur[b].pop_back();
    }
    cur.push_back({next});
    set_partitions(n, next + 1, cur, out);
    cur.pop_back();
}

std::vector<std::vector<std::vector<std::size_t>>> partitions_of(std::size_t n) {
    std::vector<std::vector<std::vector<std::size_t>>> out;
    std::vector<std::vector<std::size_t>> cur;
    set_partitions(n, 0, cur, out);
    return out;
}

// 6. Variable ideals on disjoint supports are strongly independent with exact S and augmented P.
Outcome disjoint_variable_families() {
    PrimeField f(kCharacteristic);
    Outcome out;
    std::size_t count = 0;
    for (std::size_t n = 1; n <= 4; ++n)
        for (const auto& part : partitions_of(n)) {
            std::vector<MonomialIdeal> fam;
            for (const auto& block : part) fam.push_back(MonomialIdeal::of_variables(n, block));
            ++count;
            if (!independence(fam, f, true).flag_value("strongly_independent")) out.fail(family_str(fam) + " not strongly independent");
            auto hS = complex_homology_table(build_s_complex(fam), f);
            if (auto t = hS.top()) out.fail(family_str(fam) + " S has cohomology at index " + std::to_string(*t));
            auto hP = complex_homology_table(build_p_complex(fam, ComplexVariant::quotient, true), f);
            if (auto t = hP.top()) out.fail(family_str(fam) + " augmented P has homology at index " + std::to_string(*t));
            Mask full = (Mask{1} << fam.size()) - 1;
            auto hA = augmented_interior_H(fam, full, std::nullopt, f);
            MonomialIdeal prod = combine(fam, IdealOp::product);
            for (const auto& g : hA.box().all()) {
                for (int h = 1; h <= hA.hi(); ++h)
                    if (hA.at(h, g)) out.fail(mismatch(fam, g, h, 0, static_cast<long>(hA.at(h, g)), "augmented interior"));
                long bottom = prod.contains(g) ? 0 : 1;
                if (!same(static_cast<long>(hA.at(0, g)), bottom))
                    out.fail(mismatch(fam, g, 0, bottom, static_cast<long>(hA.at(0, g)), "augmented interior bottom"));
            }
        }
    out.detail = std::to_string(count) + " partitions of 1..4 variables";
    return out;
}

std::string failing_assertions(const CheckReport& r) {
    std::string s;
    for (const auto& a : r.assertions) {
        if (a.informational || a.skipped || a.passed) continue;
        s += " " + a.name;
        if (!a.witnesses.empty()) {
            const auto& w = a.witnesses.front();
            s += "@" + w.degree.str() + "[i=" + std::to_string(w.index) + " expected " + std::to_string(w.expected) + " actual " +
                 std::to_string(w.actual) + "]";
        }
    }
    return s;
}

// 7. Strong independence iff augmented rows exact and product (or sum) rows exact.
Outcome exactness_bi_implications() {
    PrimeField f(kCharacteristic);
    Outcome out;
    std::size_t strong = 0, count = 0;
    for (std::uint64_t seed = 5000; seed < 5600; ++seed) {
        auto fam = random_instance(seed, small_params(seed, 2, 3));
        CheckReport r = exactness_equivalences(fam, f);
        ++count;
        if (r.flag_value("strongly_independent")) ++strong;
        if (!r.ok()) out.fail(family_str(fam) + failing_assertions(r));
    }
    out.detail = std::to_string(count) + " families, " + std::to_string(strong) + " strongly independent";
    return out;
}

// 8. Rigidity: upward and sub-family propagation of vanishing and the sign of epsilon.
Outcome rigidity_suite() {
    PrimeField f(kCharacteristic);
    Outcome out;
    std::size_t count = 0;
    for (std::uint64_t seed = 6000; seed < 6520; ++seed) {
        auto fam = random_instance(seed, small_params(seed, 1, 3));
        CheckReport r = rigidity_check(fam, f);
        ++count;
        if (!r.ok()) out.fail("seed " + std::to_string(seed) + " " + family_str(fam) + failing_assertions(r));
        for (const auto& [k, v] : r.values)
            if (k == "epsilon" && v < 0) out.fail(family_str(fam) + " epsilon " + std::to_string(v));
    }
    out.detail = std::to_string(count) + " instances";
    return out;
}

// 9. The three conditions of the intersection criterion agree.
Outcome intersection_triples() {
    PrimeField f(kCharacteristic);
    Outcome out;
    auto triple = [](const CheckReport& r) {
        return std::vector<bool>{r.flag_value("tor1_zero_and_sum_cm"), r.flag_value("codim_equals_sum_pd"),
                                 r.flag_value("codims_add_and_all_cm")};
    };
    std::size_t positive = 0, count = 0;
    for (std::uint64_t seed = 7000; seed < 7220; ++seed) {
        auto fam = random_instance(seed, small_params(seed, 2, 3));
        CheckReport r = intersection_check(fam, f);
        auto t = triple(r);
        ++count;
        bool uniform = t[0] == t[1] && t[1] == t[2];
        if (!uniform || !r.ok())
            out.fail(family_str(fam) + " triple (" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")");
        if (uniform && t[0]) ++positive;
    }
    auto pos = triple(intersection_check({ideal(2, {{1, 0}}), ideal(2, {{0, 1}})}, f));
    if (pos != std::vector<bool>{true, true, true}) out.fail("[(x), (y)] is not all-true");
    auto neg = triple(intersection_check({ideal(2, {{1, 0}}), ideal(2, {{1, 0}})}, f));
    if (neg != std::vector<bool>{false, false, false}) out.fail("[(x), (x)] is not all-false");
    out.detail = std::to_string(count) + " instances (" + std::to_string(positive) + " all-true) plus 2 curated";
    return out;
}

// 10. Tor support unions over products and sums of variable ideals agree.
Outcome support_unions() {
    PrimeField f(kCharacteristic);
    Outcome out;
    std::size_t checks = 0;
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<std::optional<MonomialIdeal>> modules{std::nullopt};
        for (std::uint64_t q = 0; q < 5; ++q) modules.push_back(random_instance(8000 + 10 * n + q, {n, 1, 2, 2})[0]);
        for (const auto& part : partitions_of(n)) {
            if (part.size() > 3) continue;
            for (std::size_t p = 1; p <= part.size(); ++p)
                for (const auto& M : modules) {
                    CheckReport r = support_union_check(part, n, M, p, f);
                    ++checks;
                    if (!r.ok()) {
                        std::string label = "n=" + std::to_string(n) + " blocks=" + std::to_string(part.size()) + " p=" +
                                            std::to_string(p) + " M=" + (M ? M->str() : std::string("R"));
                        out.fail(label + failing_assertions(r));
                    }
                }
        }
    }
    out.detail = std::to_string(checks) + " checks over partitions with at most 3 blocks and 20 random quotients";
    return out;
}

// 11. Tables on D + 2 are the min(g, D) pullbacks of tables on D.
Outcome stability_boxes() {
    PrimeField f(kCharacteristic);
    Outcome out;
    std::size_t count = 0, cells = 0;
    for (std::uint64_t seed = 9000; seed < 9400; ++seed) {
        auto fam = random_instance(seed, small_params(seed, 1, 3));
        GradedComplex c = [&]() -> GradedComplex {
            switch (seed % 8) {
                case 0: return taylor_resolution(fam[0]);
                case 1: return totalize(tensor(resolutions(fam)));
                case 2: return build_s_complex(fam).underlying;
                case 3: return build_s_complex(fam, ComplexVariant::tilde).underlying;
                case 4: return build_p_complex(fam).underlying;
                case 5: return build_p_complex(fam, ComplexVariant::tilde).underlying;
                case 6: return multi_tor_complex(fam, random_instance(seed + 1, {fam[0].variables(), 1, 2, 2})[0]);
                default: return augmented_interior_complex(fam, (Mask{1} << fam.size()) - 1, fam.back());
            }
        }();
        ++count;
        Multidegree D = c.stable_box();
        std::vector<int> plus(D.exponents());
        for (auto& e : plus) e += 2;
        Multidegree D2(plus);
        HomologyTable small = module_homology_table(c, f, D).expanded(D2);
        HomologyTable big = module_homology_table(c, f, D2);
        for (std::size_t k = 0; k < big.box().size(); ++k, ++cells)
            for (int i = big.lo(); i <= big.hi(); ++i) {
                long a = static_cast<long>(big.at_flat(i, k)), e = static_cast<long>(small.at_flat(i, k));
                if (!same(a, e)) out.fail(mismatch(fam, big.box().at(k), i, e, a, "complex kind " + std::to_string(seed % 8)));
            }
    }
    out.detail = std::to_string(count) + " complexes, " + std::to_string(cells) + " degrees";
    return out;
}

struct Criterion {
    int number;
    const char* title;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> all{
        {1, "Tor_1 oracle equivalence", tor1_equivalence},
        {2, "two-ideal Mayer-Vietoris", mayer_vietoris_pairs},
        {3, "spectral convergence", spectral_convergence},
        {4, "first page identification", first_page_identification},
        {5, "sum and product complexes against Tor", sum_product_identities},
        {6, "disjoint variable families", disjoint_variable_families},
        {7, "exactness bi-implications", exactness_bi_implications},
        {8, "rigidity", rigidity_suite},
        {9, "intersection criterion triples", intersection_triples},
        {10, "support unions", support_unions},
        {11, "stability boxes", stability_boxes},
    };
    std::vector<int> wanted;
    for (int a = 1; a < argc; ++a) {
        char* end = nullptr;
        long v = std::strtol(argv[a], &end, 10);
        if (*end || v < 1 || v > static_cast<long>(all.size())) {
            std::cerr << "usage: acceptance [1-" << all.size() << " ...]\n";
            return 2;
        }
        wanted.push_back(static_cast<int>(v));
    }
    if (wanted.empty())
        for (const auto& c : all) wanted.push_back(c.number);

    bool ok = true;
    for (int w : wanted) {
        const Criterion& c = all[static_cast<std::size_t>(w - 1)];
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("error: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << " C" << c.number << " " << c.title << ": " << o.detail << "\n";
        for (const auto& wit : o.witnesses) std::cout << "    witness: " << wit << "\n";
        std::cerr << "C" << c.number << " took " << secs << " s\n";
        ok = ok && o.pass;
    }
    return ok ? 0 : 1;
}
