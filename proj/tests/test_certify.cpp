#include <doctest.h>

#include <omp.h>

#include <cmath>

#include "skewlab/certify.hpp"
#include "skewlab/errors.hpp"
#include "support/gen.hpp"

using namespace skewlab;

namespace {

const ExampleInstance& example() {
    static const ExampleInstance ex = construct_example(8);
    return ex;
}

double delta_for(const ExampleInstance& ex, int N) { return 0.5 * escape_delta_bound(N, ex.epsilon); }

}  // namespace

TEST_CASE("fiber escape at z = 2 is the plain quartic") {
    auto rep = check_fiber_escape(Region::disk(2.0, 1e-12));
    CHECK(rep.pass);
    CHECK(rep.margin == doctest::Approx(39.0625 - 17.5).epsilon(1e-9));
    CHECK(rep.value("grid_min") == doctest::Approx(39.0625 - 17.5).epsilon(1e-9));
}

TEST_CASE("fiber escape margin at the worst corner |2 - z| = 5") {
    auto rep = check_fiber_escape(Region::disk(2.0, 5.0));
    CHECK(rep.pass);
    CHECK(std::abs(rep.margin - 1.5625) < 1e-9);
    auto k = check_fiber_escape(Region::box(-2.5, 2.5, -0.25, 0.25));
    CHECK(k.pass);
    CHECK(k.margin == doctest::Approx(39.0625 - 4 * std::hypot(4.5, 0.25) - 17.5).epsilon(1e-12));
}

TEST_CASE("fiber escape rejects regions leaving |2 - z| <= 5") {
    CHECK_THROWS_AS(check_fiber_escape(Region::box(0.0, 9.5, -1.0, 1.0)), PreconditionViolation);
    CHECK_THROWS_AS(check_fiber_escape(Region::disk(2.0, 5.001)), PreconditionViolation);
    CHECK_THROWS_AS(Region::disk(0.0, 0.0), DomainError);
}

TEST_CASE("fiber escape grid never beats the interval bound") {
    gen::Rng rng(21);
    for (int k = 0; k < 100; ++k) {
        Complex c = 2.0 + rng.complex_in_disk(3.0);
        double room = 5.0 - std::abs(c - 2.0);
        auto rep = check_fiber_escape(Region::disk(c, rng.uniform(0.01, room)));
        REQUIRE(rep.pass);
        CHECK(rep.value("grid_min") >= rep.margin);
    }
}

TEST_CASE("escape constant examples") {
    auto ok = check_escape_constant(3, 9e-7, 1e-9);
    CHECK(ok.pass);
    CHECK(ok.value("lhs_hi") == doctest::Approx(262144 * (9e-7 + 4e-9 / 63)).epsilon(1e-12));
    CHECK(ok.value("lhs_hi") == doctest::Approx(0.23597).epsilon(1e-4));
    auto bad = check_escape_constant(3, 1e-6, 1e-9);
    CHECK_FALSE(bad.pass);
    CHECK(bad.value("lhs_hi") == doctest::Approx(0.26216).epsilon(1e-4));
    auto zero = check_escape_constant(3, 0.0, 0.0);
    CHECK(zero.pass);
    CHECK(zero.margin == doctest::Approx(std::sqrt(6.0) / 10).epsilon(1e-12));
    CHECK_THROWS_AS(check_escape_constant(0, 0.0, 0.0), PreconditionViolation);
}

TEST_CASE("escape constant is monotone in delta and eps") {
    gen::Rng rng(22);
    int passed = 0;
    for (int k = 0; k < 1000; ++k) {
        int N = rng.integer(1, 5);
        double delta = rng.uniform(0.0, 2.0) * std::sqrt(6.0) / 10 / std::pow(64.0, N);
        double eps = rng.uniform(0.0, 1e-3) / std::pow(64.0, N);
        if (!check_escape_constant(N, delta, eps).pass) continue;
        ++passed;
        CHECK(check_escape_constant(N, delta * rng.uniform(0, 1), eps * rng.uniform(0, 1)).pass);
    }
    CHECK(passed > 100);
}

TEST_CASE("escape delta bound sits on the pass/fail boundary") {
    for (int N = 1; N <= 4; ++N) {
        double b = escape_delta_bound(N, 1e-9);
        CHECK(check_escape_constant(N, b * (1 - 1e-9), 1e-9).pass);
        CHECK_FALSE(check_escape_constant(N, b * (1 + 1e-9), 1e-9).pass);
    }
}

TEST_CASE("contraction chains at r = 1/32, delta' = 0.2, eps = 0.02") {
    auto rep = check_contract(1.0 / 32, 0.2, 0.02);
    CHECK(rep.pass);
    CHECK(std::abs(rep.value("v_margin") - 0.0995) < 1e-9);
    CHECK(std::abs(rep.value("u_margin") - 0.10449375) < 1e-9);
    CHECK(std::abs(rep.margin - 0.0995) < 1e-9);
    CHECK(rep.value("grid_u") >= rep.value("u_margin"));
    CHECK(rep.value("grid_v") >= rep.value("v_margin"));
}

TEST_CASE("contraction chains at delta' = 0.24, eps = 0.03") {
    auto rep = check_contract(1.0 / 32, 0.24, 0.03);
    CHECK(rep.pass);
    CHECK(rep.value("v_margin") == doctest::Approx(0.24 - 0.148824).epsilon(1e-9));
    CHECK(rep.value("u_margin") == doctest::Approx(0.25 - (0.01442401 + 0.0144 + 0.125)).epsilon(1e-9));
}

TEST_CASE("contraction preconditions are strict") {
    CHECK_THROWS_AS(check_contract(7.0 / 128, 0.2, 0.02), PreconditionViolation);
    CHECK_THROWS_AS(check_contract(1.0 / 32, 0.25, 0.02), PreconditionViolation);
    CHECK_THROWS_AS(check_contract(1.0 / 32, 0.2, 0.0251), PreconditionViolation);
    CHECK_THROWS_AS(check_contract(0.0, 0.2, 0.0), PreconditionViolation);
}

TEST_CASE("contraction grid respects the interval chains") {
    gen::Rng rng(23);
    for (int k = 0; k < 200; ++k) {
        double r = rng.uniform(1e-4, 7.0 / 128 * 0.999);
        double d = rng.uniform(1e-3, 0.2499);
        double e = rng.uniform(0.0, d / 8);
        auto rep = check_contract(r, d, e, 9);
        if (rep.value("v_margin") > 0 && rep.value("u_margin") > 0) {
            CHECK(rep.pass);
            CHECK(rep.value("grid_u") >= rep.value("u_margin"));
            CHECK(rep.value("grid_v") >= rep.value("v_margin"));
        } else {
            CHECK_FALSE(rep.pass);
        }
    }
}

TEST_CASE("angle arithmetic is exact") {
    CHECK(Rational(4) * Rational(3, 64) == Rational(3, 16));
    CHECK(Rational(4) * Rational(13, 64) == Rational(13, 16));
    CHECK(mod1(Rational(4) * Rational(51, 64)) == Rational(3, 16));
    CHECK(mod1(Rational(-13, 16)) == Rational(3, 16));
    CHECK(Rational(3, 16) < Rational(13, 64));

    AngleIntervalSet s;
    s.add(Rational(3, 16), Rational(13, 16));
    s.add(Rational(3, 64), Rational(13, 64));
    REQUIRE(s.intervals().size() == 1);
    CHECK(s.intervals()[0].lo == Rational(3, 64));
    CHECK(s.intervals()[0].hi == Rational(13, 16));

    AngleIntervalSet t;
    t.add(Rational(1, 4), Rational(1, 2));
    t.add(Rational(1, 2), Rational(3, 4));
    CHECK(t.intervals().size() == 2);
    CHECK_FALSE(t.covers(Rational(1, 3), Rational(2, 3)));

    AngleIntervalSet w;
    w.add(Rational(-1, 8), Rational(1, 8));
    CHECK(w.intervals().size() == 2);
    CHECK(w.covers(Rational(15, 16), Rational(31, 32)));
}

TEST_CASE("angle combinatorics cover [4^-J, 1 - 4^-J]") {
    auto rep = check_angle_combinatorics();
    CHECK(rep.pass);
    CHECK(rep.value("images_ok") == 1.0);
    CHECK(rep.value("slack") == std::ldexp(1.0, -22));
    for (int J = 1; J <= 25; ++J) CHECK(check_angle_combinatorics(J).pass);
    CHECK_THROWS_AS(check_angle_combinatorics(0), PreconditionViolation);
}

TEST_CASE("K box of the Chebyshev-like map and of the example") {
    const GridSpec g = GridSpec::box(-3, 3, -3, 3, 513, 513);
    auto cheb = check_k_box(biquad_poly({-2, -2}), 0.0, g);
    CHECK(cheb.pass);
    CHECK(cheb.value("max_re") <= 2.0 + g.pixel_diagonal());
    CHECK(cheb.value("max_im") <= g.pixel_diagonal());

    auto info = check_k_box(biquad_poly({0, -1}), 0.25, g);
    CHECK(info.value("max_re") < 2.5);

    auto rep = check_k_box(example(), g);
    CHECK(rep.pass);
    CHECK(rep.value("eps_n") == example().epsilon);
    CHECK(rep.value("eps_n") <= 0.25);
}

TEST_CASE("reach-left samples") {
    const Poly p = biquad_poly({-2, -2});
    auto trivial = check_reach_left(p, BaseSample::from_points({Complex(0.5, 0.0)}), 1.0 / 32, 4);
    CHECK(trivial.pass);
    CHECK(trivial.value("N_obs") == 0);

    auto rep = check_reach_left(example(), 1.0 / 32, 64);
    CHECK(rep.pass);
    CHECK(rep.value("considered") > 0);
    CHECK(rep.value("N_obs") >= 1);
    CHECK(rep.params.N == rep.value("N_obs") + 1);

    auto vacuous = check_reach_left(p, BaseSample::from_points({Complex(1.9, 0.0), Complex(2.1, 0.0)}), 0.5, 4);
    CHECK(vacuous.pass);
    CHECK(vacuous.value("considered") == 0);

    auto stuck = check_reach_left(p, BaseSample::from_points({Complex(1.5, 0.0)}), 0.1, 1);
    CHECK_FALSE(stuck.pass);
    CHECK(stuck.value("unreached") == 1);
    CHECK_THROWS_AS(check_reach_left(p, BaseSample::from_points({Complex(0.0)}), 0.0, 4), PreconditionViolation);
}

TEST_CASE("escape over the sampled Julia set of the example") {
    const auto& ex = example();
    int N = static_cast<int>(check_reach_left(ex, 1.0 / 32, 64).value("N_obs")) + 1;
    double delta = delta_for(ex, N);
    REQUIRE(delta > 0);
    auto rep = check_escape_empirical(ex, 1.0 / 32, delta, N);
    CHECK(rep.pass);
    CHECK(rep.value("counterexamples") == 0);
    CHECK(rep.value("induction_fail") == 0);
    CHECK_THROWS_AS(check_escape_empirical(ex, 1.0 / 32, 1e-3, N), PreconditionViolation);
}

TEST_CASE("critical strip misses K_z off beta and lies in K_beta") {
    const auto& ex = example();
    double delta = delta_for(ex, 3);
    omp_set_num_threads(1);
    auto one = check_critical_disjoint(ex, delta);
    omp_set_num_threads(2);
    auto two = check_critical_disjoint(ex, delta);
    CHECK(one.pass);
    CHECK(one.value("off_bounded") == 0);
    CHECK(one.value("beta_bounded") == one.value("beta_total"));
    CHECK(one.margin == two.margin);
    CHECK(one.evidence == two.evidence);
    CHECK_THROWS_AS(check_critical_disjoint(ex, 0.25), PreconditionViolation);
}

TEST_CASE("full certificate of the degree-4 example") {
    auto c = full_certificate(8);
    for (const auto& r : c.reports) INFO(r.lemma_id << ": " << r.evidence);
    CHECK(c.constructed);
    CHECK(c.pass);
    CHECK(c.failing.empty());
    for (const auto& r : c.reports) {
        CHECK(r.pass == (r.margin > 0));
        CHECK(r.params.n == 8);
    }
    for (std::size_t i = 1; i < c.reports.size(); ++i) CHECK(c.reports[i - 1].lemma_id < c.reports[i].lemma_id);
    CHECK(c.reports.size() == 12);
}

TEST_CASE("full certificate below acceptance names the failing checks") {
    auto c = full_certificate(1);
    CHECK(c.constructed);
    CHECK_FALSE(c.pass);
    CHECK_FALSE(c.failing.empty());
    bool contract = false;
    for (const auto& id : c.failing) contract = contract || id == "contract";
    CHECK(contract);

    CertificateConfig cfg;
    cfg.example.eta = 0.0;
    auto u = full_certificate(8, cfg);
    CHECK_FALSE(u.constructed);
    REQUIRE(u.failing.size() == 1);
    CHECK(u.failing[0] == "construct_example");
}
