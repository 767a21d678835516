#include "catch_amalgamated.hpp"
#include "helpers.hpp"

using namespace homotor;
using th::ideal;

namespace {

FilteredFiberComplex two_term(std::int64_t d, int src_level, int tgt_level, const PrimeField& f) {
    FilteredFiberComplex c;
    c.base = FiberComplex{0, {1, 1}, {ScalarMatrix(0, 1), th::dense({{d}}, f)}};
    c.levels = {{tgt_level}, {src_level}};
    return c;
}

std::size_t total(const PageTable& t) {
    std::size_t s = 0;
    for (const auto& [k, v] : t) s += v;
    return s;
}

}  // namespace

TEST_CASE("zero differential degenerates at the first page", "[spectral]") {
    PrimeField f;
    FilteredFiberComplex c;
    c.base = FiberComplex{0, {2, 1}, {ScalarMatrix(0, 2), ScalarMatrix(2, 1)}};
    c.levels = {{0, 1}, {1}};
    auto sp = pages(c, f);
    CHECK(sp.pages.front() == sp.e_infinity);
    CHECK(sp.dim(1, 0, 0) == 1);
    CHECK(sp.dim(1, 1, -1) == 1);
    CHECK(sp.dim(1, 1, 0) == 1);
    CHECK(sp.converged());
}

TEST_CASE("an isomorphism across two filtration levels dies at the second page", "[spectral]") {
    PrimeField f;
    auto sp = pages(two_term(1, 1, 0, f), f);
    CHECK(sp.dim(1, 1, 0) == 1);
    CHECK(sp.dim(1, 0, 0) == 1);
    REQUIRE(sp.ranks.size() >= 1);
    CHECK(sp.ranks[0].at({1, 0}) == 1);
    CHECK(sp.pages[1].empty());
    CHECK(sp.e_infinity.empty());
    CHECK(sp.recurrence_ok);
    CHECK(sp.converged());
}

TEST_CASE("the same isomorphism inside one level dies at the first page", "[spectral]") {
    PrimeField f;
    auto sp = pages(two_term(1, 0, 0, f), f);
    CHECK(sp.pages[0].empty());
    CHECK(sp.converged());
}

TEST_CASE("a differential raising the level is rejected", "[spectral]") {
    PrimeField f;
    CHECK_THROWS_AS(pages(two_term(1, 0, 1, f), f), Error);
}

TEST_CASE("filtration kinds parse", "[spectral]") {
    CHECK(parse_filtration_kind("kcone_augmented") == FiltrationKind::kcone_augmented);
    CHECK(std::string(filtration_kind_name(FiltrationKind::interior)) == "interior");
    CHECK_THROWS_AS(parse_filtration_kind("columns"), Error);
    CHECK(parse_mv_kind("product_to_sum") == MVKind::product_to_sum);
    CHECK_THROWS_AS(parse_mv_kind("sum"), Error);
}

TEST_CASE("interior filtration of res(R/(x)) tensor res(R/(y))", "[spectral]") {
    PrimeField f;
    Multicomplex m = tensor({taylor_resolution(ideal(2, {{1, 0}})), taylor_resolution(ideal(2, {{0, 1}}))});
    FilteredComplex fc = filtered_complex(m, FiltrationKind::interior);
    auto predicted = th::predicted_first_page(m, FiltrationKind::interior, fc.box(), f);
    DegreeBox box(fc.box());
    for (std::size_t k = 0; k < box.size(); ++k) CHECK(th::first_page(fc, box.at(k), f) == predicted[k]);
    // at (1,1) each of R, R(-x), R(-y), R(-xy) survives in a separate interior
    auto sp = pages(fc.at({1, 1}, f), f);
    CHECK(sp.dim(1, 0, 0) == 1);
    CHECK(sp.dim(1, 1, 0) == 2);
    CHECK(sp.dim(1, 2, 0) == 1);
    CHECK(sp.converged());
    CHECK(sp.e_infinity.empty());
}

TEST_CASE("Koszul cone on one axis degenerates at the second page", "[spectral]") {
    PrimeField f;
    Multicomplex m = tensor({taylor_resolution(ideal(1, {{2}}))});
    FilteredComplex fc = filtered_complex(m, FiltrationKind::kcone);
    for (int g = 0; g <= 3; ++g) {
        auto sp = pages(fc.at({g}, f), f);
        REQUIRE(sp.pages.size() >= 2);
        CHECK(sp.pages[1] == sp.e_infinity);
        CHECK(sp.converged());
    }
    // at degree 0 the first page still carries R/(x^2) and the corner copy of R
    auto sp0 = pages(fc.at({0}, f), f);
    CHECK(total(sp0.pages[0]) == 2);
    CHECK(sp0.e_infinity.empty());
}

TEST_CASE("augmented interior filtration of (x),(x) abuts to Tor", "[spectral]") {
    PrimeField f;
    std::vector<MonomialIdeal> fam{ideal(2, {{1, 0}}), ideal(2, {{1, 0}})};
    Multicomplex m = tensor({taylor_resolution(fam[0]), taylor_resolution(fam[1])});
    FilteredComplex fc = filtered_complex(m, FiltrationKind::interior_augmented);
    TorTable tor = multi_tor(fam, f);
    for (Multidegree g : {Multidegree{2, 0}, Multidegree{1, 0}, Multidegree{1, 3}}) {
        auto sp = pages(fc.at(g, f), f);
        CHECK(sp.converged());
        for (const auto& row : sp.abutment) CHECK(row.homology == tor.at(row.degree, g));
    }
}

TEST_CASE("first pages agree with direct face and interior homology", "[spectral]") {
    PrimeField f;
    std::vector<std::vector<MonomialIdeal>> families{
        {ideal(2, {{1, 0}, {0, 1}}), ideal(2, {{1, 0}})},
        {ideal(2, {{1, 1}}), ideal(2, {{2, 0}, {0, 1}}), ideal(2, {{1, 0}})},
        {ideal(1, {{1}}), ideal(1, {{2}})},
    };
    for (const auto& fam : families) {
        std::vector<GradedComplex> res;
        for (const auto& I : fam) res.push_back(taylor_resolution(I));
        Multicomplex m = tensor(res);
        for (auto kind : {FiltrationKind::kcone, FiltrationKind::kcone_augmented, FiltrationKind::interior,
                          FiltrationKind::interior_augmented}) {
            FilteredComplex fc = filtered_complex(m, kind);
            auto predicted = th::predicted_first_page(m, kind, fc.box(), f);
            DegreeBox box(fc.box());
            for (std::size_t k = 0; k < box.size(); ++k) {
                INFO(filtration_kind_name(kind) << " at " << box.at(k).str());
                CHECK(th::first_page(fc, box.at(k), f) == predicted[k]);
                CHECK(pages(fc.at(box.at(k), f), f).converged());
            }
        }
    }
}

TEST_CASE("product-to-sum sequence for (x),(y)", "[spectral]") {
    PrimeField f;
    std::vector<MonomialIdeal> fam{ideal(2, {{1, 0}}), ideal(2, {{0, 1}})};
    FilteredComplex fc = mv_double_complex(MVKind::product_to_sum, fam, std::nullopt);
    for (const auto& g : DegreeBox({2, 2}).all()) {
        auto sp = pages(fc.at(g, f), f);
        CHECK(sp.converged());
        std::size_t r_xy = (g[0] >= 1 && g[1] >= 1) ? 0 : 1;
        std::size_t r_x = g[0] == 0 ? 1 : 0, r_y = g[1] == 0 ? 1 : 0;
        CHECK(sp.dim(1, 2, 0) == r_xy);
        CHECK(sp.dim(1, 1, 0) == r_x + r_y);
        for (const auto& row : sp.abutment) {
            std::size_t expected = (row.degree == 1 && g == Multidegree{0, 0}) ? 1 : 0;
            CHECK(row.homology == expected);
        }
    }
}

TEST_CASE("sum-to-product sequence for (x),(x) in one variable", "[spectral]") {
    PrimeField f;
    std::vector<MonomialIdeal> fam{th::x1(), th::x1()};
    FilteredComplex fc = mv_double_complex(MVKind::sum_to_product, fam, std::nullopt);
    MonomialIdeal prod = combine(fam, IdealOp::product), meet = combine(fam, IdealOp::intersection);
    TorTable tor = multi_tor(fam, f);
    for (int g = 0; g <= 3; ++g) {
        auto sp = pages(fc.at({g}, f), f);
        CHECK(sp.converged());
        std::size_t h = 0;
        for (const auto& row : sp.abutment) h += row.homology;
        std::size_t quotient_meet = meet.contains({g}) ? 0 : 1;
        CHECK(h == quotient_meet);
        long lhs = static_cast<long>(tor.at(1, {g}));
        long rhs = (prod.contains({g}) ? 0L : 1L) - static_cast<long>(quotient_meet);
        CHECK(lhs == rhs);
    }
    CHECK(tor.at(1, {1}) == 1);
}

TEST_CASE("Mayer-Vietoris builders reject bad input", "[spectral]") {
    CHECK_THROWS_AS(mv_row_complex(MVKind::sum_to_product, {}), Error);
    CHECK_THROWS_AS(mv_row_complex(MVKind::product_to_sum, {MonomialIdeal::unit(1)}), Error);
}
