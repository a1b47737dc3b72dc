#include <doctest.h>

#include "skewlab/dynamics.hpp"
#include "skewlab/errors.hpp"
#include "support/gen.hpp"

using namespace skewlab;

namespace {

SkewProduct squares() { return SkewProduct(Poly({0.0, 0.0, 1.0}), BiPoly({{0.0, 0.0, 1.0}})); }

// q = w^4 + 4(2 - z), p = (z^2 + a)^2 + b
SkewProduct degree4(double a, double b) {
    Poly p({a * a + b, 0.0, 2.0 * a, 0.0, 1.0});
    BiPoly q({{8.0, 0.0, 0.0, 0.0, 1.0}, {-4.0, 0.0, 0.0, 0.0, 0.0}});
    return SkewProduct(p, q);
}

}  // namespace

TEST_CASE("iterating the product of squares") {
    auto x = iterate(squares(), {0.5, 0.5}, 3);
    REQUIRE(x);
    CHECK(x->z == Complex(1.0 / 256));
    CHECK(x->w == Complex(1.0 / 256));
    auto same = iterate(squares(), {0.5, 0.25}, 0);
    CHECK(same->w == Complex(0.25));
    CHECK_FALSE(iterate(squares(), {3.0, 0.0}, 10));
}

TEST_CASE("mismatched degrees are rejected") {
    BiPoly q({{0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}});  // z w^3 + w
    CHECK_THROWS_AS(SkewProduct(Poly({0.0, 0.0, 1.0}), q), DegreeMismatch);
    CHECK_THROWS_AS(SkewProduct(Poly({0.0, 1.0}), BiPoly({{0.0, 1.0}})), DegreeMismatch);
    CHECK_THROWS_AS(SkewProduct(Poly({0.0, 0.0, 2.0}), BiPoly({{0.0, 0.0, 1.0}})), DegreeMismatch);
}

TEST_CASE("iterates compose and split into base and fiber") {
    gen::Rng rng(3);
    auto f = degree4(-1.9, -1.95);
    for (int t = 0; t < 500; ++t) {
        Point2 x{rng.complex_in_box(1.5), rng.complex_in_box(1.0)};
        int m = rng.integer(0, 4), n = rng.integer(0, 4);
        auto lhs = iterate(f, x, m + n);
        auto mid = iterate(f, x, m);
        if (!lhs || !mid) continue;
        auto rhs = iterate(f, *mid, n);
        REQUIRE(rhs);
        CHECK(std::abs(lhs->z - rhs->z) <= 1e-9 * (1 + std::abs(lhs->z)));
        CHECK(std::abs(lhs->w - rhs->w) <= 1e-9 * (1 + std::abs(lhs->w)));
        Complex z = x.z;
        for (int k = 0; k < m + n; ++k) z = f.base()(z);
        CHECK(lhs->z == z);
        CHECK(fiber_composition(f, x.z, x.w, m + n) == lhs->w);
    }
}

TEST_CASE("escape time drops by one along the orbit") {
    gen::Rng rng(8);
    auto f = degree4(-1.9, -1.95);
    for (int t = 0; t < 10000; ++t) {
        Point2 x{rng.complex_in_box(2.5), rng.complex_in_box(2.5)};
        auto e0 = escape_time(f, x, 60);
        auto e1 = escape_time(f, f(x), 60);
        if (e0 && *e0 > 0) {
            REQUIRE(e1);
            CHECK(*e0 == 1 + *e1);
        }
        if (!e0) CHECK_FALSE(e1);
    }
}

TEST_CASE("orbit records the escape step and the last window") {
    auto o = orbit(squares(), {0.5, 1.5}, 100, 4);
    REQUIRE(o.escaped_at);
    CHECK(o.points.size() <= 4);
    CHECK(std::abs(o.points.back().w) > squares().fiber_radius());
    CHECK_FALSE(o.base_escaped_at);
    auto b = orbit(squares(), {0.5, 0.5}, 10, 4);
    CHECK_FALSE(b.escaped_at);
    CHECK(b.first == 7);
    CHECK(b.points.size() == 4);
}

TEST_CASE("one step of the degree-4 family from the fixed base point") {
    auto f = degree4(-2.0, -2.0);
    CHECK(f.base()(2.0) == Complex(2.0));
    CHECK(f.base()(0.0) == Complex(2.0));
    CHECK(fiber_composition(f, 2.0, 0.5, 1) == Complex(1.0 / 16));
    CHECK(std::abs(fiber_composition(f, 2.0, 0.5, 2) - std::pow(1.0 / 16, 4)) < 1e-18);
    CHECK(fiber_composition(f, 2.0, 0.5, 0) == Complex(0.5));
    auto x = iterate(f, {1.9, 0.0}, 1);
    CHECK(x->w == Complex(4.0 * (2.0 - 1.9)));
    auto y = iterate(SkewProduct(Poly({-1.0, 0.0, 1.0}), BiPoly({{0.0, 0.0, 1.0}})), {0.0, 0.5}, 2);
    CHECK(y->z == Complex(0.0));
    CHECK(y->w == Complex(1.0 / 16));
}

TEST_CASE("outside the disk of radius 5/2 the degree-4 fiber expands by 7") {
    gen::Rng rng(99);
    auto f = degree4(-2.0, -2.0);
    for (int t = 0; t < 10000; ++t) {
        Complex z = 2.0 + rng.complex_in_disk(5.0);
        Complex w = std::polar(2.5 * (1.0 + rng.uniform(0.0, 1.0)), rng.uniform(0.0, 6.3));
        CHECK(std::abs(f.fiber()(z, w)) >= 7.0 * std::abs(w));
    }
}

TEST_CASE("critical points of the degree-4 fiber are a triple zero") {
    auto f = degree4(-2.0, -2.0);
    auto c = critical_points_over(f, 0.3);
    REQUIRE(c.size() == 1);
    CHECK(c[0].multiplicity == 3);
    CHECK(std::abs(c[0].value) < 1e-12);
    BiPoly deg({{0.0, 1.0, 1.0}});  // w^2 + w: critical point -1/2
    auto g = SkewProduct(Poly({0.0, 0.0, 1.0}), deg);
    auto cg = critical_points_over(g, 1.0);
    REQUIRE(cg.size() == 1);
    CHECK(std::abs(cg[0].value + 0.5) < 1e-12);
    // w^3 - 3 z w over z^3
    BiPoly cubic({{0.0, 0.0, 0.0, 1.0}, {0.0, -3.0, 0.0, 0.0}});
    auto h = SkewProduct(Poly::monomial(3), cubic);
    auto ch = critical_points_over(h, 1.0);
    REQUIRE(ch.size() == 2);
    CHECK(std::abs(std::abs(ch[0].value) - 1.0) < 1e-12);
    CHECK(std::abs(ch[0].value + ch[1].value) < 1e-12);
}

TEST_CASE("regularity of the top-degree part") {
    CHECK(is_regular(squares()).regular);
    CHECK(is_regular(degree4(-2, -2)).regular);
    // z w^2 + 1 over z^2: the w^2 coefficient vanishes at z = 0
    BiPoly bad({{1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}});
    auto r = is_regular(SkewProduct(Poly({0.0, 0.0, 1.0}), bad));
    CHECK_FALSE(r.regular);
    BiPoly mixed({{0.0, 0.0, 1.0}, {0.0, 1.0, 0.0}});  // w^2 + z w
    CHECK(is_regular(SkewProduct(Poly({0.0, 0.0, 1.0}), mixed)).regular);
}
