#include <doctest.h>
#include <quadmath.h>

#include <cmath>
#include <functional>
#include <memory>

#include "skewlab/errors.hpp"
#include "skewlab/hp.hpp"
#include "skewlab/interval.hpp"
#include "skewlab/numeric.hpp"
#include "support/gen.hpp"

using namespace skewlab;

TEST_CASE("poly_eval at simple points") {
    CHECK(std::abs(poly_eval(Poly({1.0, 0.0, 1.0}), Complex(0, 1))) == 0.0);
    CHECK(std::abs(poly_eval(Poly({-2.0, 0.0, 1.0}), std::sqrt(2.0))) < 1e-15);
    auto [v, d] = poly_eval_d(Poly({1.0, 2.0, 3.0}), 2.0);
    CHECK(v.real() == 17.0);
    CHECK(d.real() == 14.0);
}

TEST_CASE("the Chebyshev square and the parabolic parameter") {
    Poly cheb({2.0, 0.0, -4.0, 0.0, 1.0});  // (z^2 - 2)^2 - 2
    CHECK(poly_eval(cheb, 0.0) == Complex(2.0));
    CHECK(poly_eval(cheb, 2.0) == Complex(2.0));
    Poly para({0.25 * 0.25 + 0.25, 0.0, 0.5, 0.0, 1.0});
    CHECK(std::abs(poly_eval(para, 0.5) - 0.5) < 1e-15);
    auto r = poly_roots(cheb - Poly({0.0, 1.0}));
    double best = 1.0;
    for (auto x : r) best = std::min(best, std::abs(x.value - 2.0));
    CHECK(best < 1e-12);
    auto golden = poly_roots(Poly({-1.0, -1.0, 1.0}));
    REQUIRE(golden.size() == 2);
    double hi = std::max(golden[0].value.real(), golden[1].value.real());
    double lo = std::min(golden[0].value.real(), golden[1].value.real());
    CHECK(hi == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-14));
    CHECK(lo == doctest::Approx((1 - std::sqrt(5.0)) / 2).epsilon(1e-14));
}

TEST_CASE("poly_eval matches a power-sum oracle") {
    gen::Rng rng(11);
    for (int t = 0; t < 2000; ++t) {
        int deg = rng.integer(0, 10);
        std::vector<Complex> c;
        for (int k = 0; k <= deg; ++k) c.push_back(rng.complex_in_box(2.0));
        Complex z = rng.complex_in_box(1.5);
        // long double power sum
        std::complex<long double> acc = 0, pw = 1;
        long double scale = 0, apw = 1;
        for (int k = 0; k <= deg; ++k) {
            acc += std::complex<long double>(c[k]) * pw;
            scale += std::abs(std::complex<long double>(c[k])) * apw;
            pw *= std::complex<long double>(z);
            apw *= std::abs(z);
        }
        Complex got = poly_eval(Poly(c), z);
        CHECK(std::abs(std::complex<long double>(got) - acc) <= 1e-13L * (1 + scale));
    }
}

TEST_CASE("roots of z^4 - 1 and of a double root") {
    auto r = poly_roots(Poly({-1.0, 0.0, 0.0, 0.0, 1.0}));
    REQUIRE(r.size() == 4);
    for (Complex want : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
        double best = 1.0;
        for (auto x : r) best = std::min(best, std::abs(x.value - want));
        CHECK(best < 1e-12);
    }
    auto dbl = poly_roots(Poly({1.0, -2.0, 1.0}));
    REQUIRE(dbl.size() == 1);
    CHECK(dbl[0].multiplicity == 2);
    CHECK(std::abs(dbl[0].value - 1.0) < 1e-7);
}

TEST_CASE("roots of monomials and constants") {
    auto r = poly_roots(Poly({0.0, 0.0, 0.0, 4.0}));
    REQUIRE(r.size() == 1);
    CHECK(r[0].multiplicity == 3);
    CHECK(std::abs(r[0].value) == 0.0);
    CHECK(poly_roots(Poly({3.0})).empty());
    CHECK_THROWS_AS(poly_roots(Poly({0.0})), DomainError);
}

TEST_CASE("monic polynomial is reconstructed from its roots") {
    gen::Rng rng(5);
    for (int t = 0; t < 500; ++t) {
        int deg = rng.integer(1, 8);
        std::vector<Complex> c;
        for (int k = 0; k < deg; ++k) c.push_back(rng.complex_in_box(1.0));
        c.push_back(1.0);
        Poly p(c);
        auto roots = expand_roots(poly_roots(p));
        REQUIRE(static_cast<int>(roots.size()) == deg);
        Poly rebuilt({1.0});
        for (auto z : roots) rebuilt = rebuilt * Poly({-z, 1.0});
        for (int k = 0; k <= deg; ++k) CHECK(std::abs(rebuilt.coeff(k) - p.coeff(k)) < 1e-8);
    }
}

TEST_CASE("poly compose and derivative") {
    Poly p({-1.0, 0.0, 1.0});
    Poly pp = p.compose(p);
    CHECK(pp.degree() == 4);
    for (Complex z : {Complex(0.3, 0.1), Complex(-1.2, 0.5)}) CHECK(std::abs(pp(z) - p(p(z))) < 1e-14);
    CHECK(p.derivative().coeff(1) == Complex(2.0));
}

TEST_CASE("interval operations enclose exact results") {
    auto s = sqrt(RealInterval(4.0, 9.0));
    CHECK(s.lo() <= 2.0);
    CHECK(s.hi() >= 3.0);
    auto d = RealInterval(1.0, 2.0) - RealInterval(1.0, 2.0);
    CHECK(d.lo() <= -1.0);
    CHECK(d.hi() >= 1.0);
    CHECK_THROWS_AS(sqrt(RealInterval(-1.0, 1.0)), DomainError);
    CHECK_THROWS_AS(RealInterval(1.0) / RealInterval(-1.0, 1.0), DomainError);
    auto five = RealInterval(2.0) + RealInterval(3.0);
    CHECK(five.contains(5.0));
    CHECK(five.width() < 1e-14);
    auto lhs = pow(RealInterval(64.0), 3) * (RealInterval(0.0, 1e-7) + RealInterval(4.0) * RealInterval(0.0, 1e-9) / RealInterval(63.0));
    CHECK(lhs.hi() < 0.0263);
    auto root6 = sqrt(RealInterval(6.0)) / RealInterval(10.0);
    CHECK(root6.contains(0.24494897427831780982));
    CHECK(abs(RealInterval(-3.0, 2.0)).hi() == 3.0);
    auto t = RealInterval(0.1) * RealInterval(3.0);
    CHECK(t.lo() < t.hi());
}

namespace {

// random expression tree evaluated both in interval arithmetic and in quad
struct Node {
    int op = 0;  // 0 leaf, 1 +, 2 -, 3 *, 4 /, 5 sqrt
    double leaf = 0.0;
    std::unique_ptr<Node> a, b;
};

std::unique_ptr<Node> random_tree(gen::Rng& rng, int depth) {
    auto n = std::make_unique<Node>();
    if (depth == 0 || rng.integer(0, 3) == 0) {
        n->leaf = rng.uniform(-10.0, 10.0);
        return n;
    }
    n->op = rng.integer(1, 5);
    n->a = random_tree(rng, depth - 1);
    if (n->op != 5) n->b = random_tree(rng, depth - 1);
    return n;
}

// returns false when the expression leaves the domain
bool eval(const Node& n, RealInterval& iv, __float128& q) {
    if (n.op == 0) {
        iv = RealInterval(n.leaf);
        q = n.leaf;
        return true;
    }
    RealInterval ia, ib;
    __float128 qa, qb = 0;
    if (!eval(*n.a, ia, qa)) return false;
    if (n.b && !eval(*n.b, ib, qb)) return false;
    switch (n.op) {
        case 1: iv = ia + ib; q = qa + qb; break;
        case 2: iv = ia - ib; q = qa - qb; break;
        case 3: iv = ia * ib; q = qa * qb; break;
        case 4:
            if (ib.contains_zero()) return false;
            iv = ia / ib;
            q = qa / qb;
            break;
        default:
            if (ia.lo() < 0.0) return false;
            iv = sqrt(ia);
            q = sqrtq(qa);
    }
    return std::isfinite(iv.lo()) && std::isfinite(iv.hi());
}

}  // namespace

TEST_CASE("interval evaluation contains the high-precision value") {
    gen::Rng rng(1234);
    int evaluated = 0;
    for (int t = 0; t < 10000; ++t) {
        auto tree = random_tree(rng, 5);
        RealInterval iv;
        __float128 q;
        if (!eval(*tree, iv, q)) continue;
        ++evaluated;
        CHECK(static_cast<__float128>(iv.lo()) <= q);
        CHECK(q <= static_cast<__float128>(iv.hi()));
    }
    CHECK(evaluated > 5000);
}

TEST_CASE("quad complex square root") {
    HpComplex z(-3, 4);
    HpComplex r = hp_sqrt(z);
    HpComplex back = r * r;
    CHECK(static_cast<double>(hp_abs(back.re + 3)) < 1e-30);
    CHECK(static_cast<double>(hp_abs(back.im - 4)) < 1e-30);
    CHECK(static_cast<double>(r.re) > 0.0);
    HpComplex neg = hp_sqrt(HpComplex(-4, 0));
    CHECK(static_cast<double>(neg.im) == doctest::Approx(2.0));
}
