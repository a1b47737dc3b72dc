#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "skewlab/certify.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/interval.hpp"

namespace skewlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// [x, x + a few ulps] for a computed upper bound
RealInterval upper(double x) { return RealInterval(x) + RealInterval(0.0, 4.0 * std::abs(x) * 2.3e-16); }

Complex q4(Complex z, Complex w) {
    Complex w2 = w * w;
    return w2 * w2 + 4.0 * (2.0 - z);
}

}  // namespace

LemmaReport check_fiber_escape(const Region& z_region) {
    z_region.validate();
    double rmax = z_region.max_distance(2.0);
    if (!(rmax <= 5.0)) {
        std::ostringstream os;
        os << "fiber escape needs the region inside |2 - z| <= 5, got max |2 - z| = " << rmax;
        throw PreconditionViolation(os.str());
    }
    LemmaReport rep;
    rep.lemma_id = "fiber_escape";

    const RealInterval W(2.5), R = upper(rmax);
    RealInterval w4 = pow(W, 4);
    // |q_z(w)| >= |w|^4 - 4|2 - z| >= 7|w| at |w| = 5/2, increasing in |w| since 4|w|^3 > 7
    RealInterval chain = w4 - RealInterval(4.0) * R - RealInterval(7.0) * W;
    RealInterval slope = RealInterval(4.0) * pow(W, 3) - RealInterval(7.0);
    RealInterval gap = w4 - RealInterval(4.0) * R - RealInterval(17.5);
    bool analytic = chain.lo() >= 0.0 && slope.positive();

    double grid_min = kInf, ratio_min = kInf;
    for (Complex z : z_region.samples(10)) {
        for (int t = 0; t < 100; ++t) {
            Complex w = std::polar(2.5, 2.0 * M_PI * (t + 0.5) / 100.0);
            double a = std::abs(q4(z, w));
            grid_min = std::min(grid_min, a - 17.5);
            ratio_min = std::min(ratio_min, a - 7.0 * 2.5);
        }
    }
    bool grid_ok = grid_min >= gap.lo() && ratio_min >= 0.0;

    std::ostringstream ev;
    ev << "max|2-z| = " << rmax << "; |w|^4 - 4|2-z| - 7|w| at 5/2 in " << chain << "; d/d|w| in " << slope
       << "; inf |q| - 35/2 >= " << gap.lo() << "; grid min over 10^4 samples " << grid_min;
    if (!grid_ok) ev << " (grid below the analytic bound)";
    rep.evidence = ev.str();
    rep.values = {{"max_dist", rmax}, {"chain_lo", chain.lo()}, {"grid_min", grid_min}};
    rep.set_margin(analytic && grid_ok ? gap.lo() : std::min(gap.lo(), -std::abs(gap.lo())));
    return rep;
}

LemmaReport check_escape_constant(int N, double delta, double eps_n) {
    if (N < 1) throw PreconditionViolation("escape constant needs N >= 1");
    if (!(delta >= 0.0) || !(eps_n >= 0.0)) throw DomainError("delta and eps must be non-negative");
    LemmaReport rep;
    rep.lemma_id = "escape_constant";
    rep.params.N = N;
    rep.params.delta = delta;
    rep.params.eps_n = eps_n;
    RealInterval lhs = pow(RealInterval(64.0), N) *
                       (RealInterval(delta) + RealInterval(4.0) * RealInterval(eps_n) / RealInterval(63.0));
    RealInterval rhs = sqrt(RealInterval(6.0)) / RealInterval(10.0);
    std::ostringstream ev;
    ev << "64^N (delta + 4 eps/63) in " << lhs << " vs sqrt(6)/10 in " << rhs;
    rep.evidence = ev.str();
    rep.values = {{"lhs_hi", lhs.hi()}, {"rhs_lo", rhs.lo()}};
    rep.set_margin(rhs.lo() - lhs.hi());
    return rep;
}

double escape_delta_bound(int N, double eps_n) {
    if (N < 1) throw PreconditionViolation("escape constant needs N >= 1");
    return std::sqrt(6.0) / 10.0 / std::pow(64.0, N) - 4.0 * eps_n / 63.0;
}

LemmaReport check_contract(double r, double delta_prime, double eps_n, int grid_n) {
    std::ostringstream pre;
    if (!(r > 0.0 && r < 7.0 / 128)) pre << "r = " << r << " must lie in (0, 7/128); ";
    if (!(delta_prime > 0.0 && delta_prime < 0.25)) pre << "delta' = " << delta_prime << " must lie in (0, 1/4); ";
    if (!(eps_n >= 0.0 && eps_n <= delta_prime / 8)) pre << "eps = " << eps_n << " must lie in [0, delta'/8]";
    if (!pre.str().empty()) throw PreconditionViolation("contraction: " + pre.str());
    if (grid_n < 2) throw DomainError("contraction grid needs at least 2 points per side");

    LemmaReport rep;
    rep.lemma_id = "contract";
    rep.params.r = r;
    rep.params.delta_prime = delta_prime;
    rep.params.eps_n = eps_n;

    const RealInterval d(delta_prime), q(1.0 / 16), four(4.0);
    RealInterval uv = q + square(d);
    RealInterval v_bound = four * uv * RealInterval(0.25) * d + four * RealInterval(eps_n);
    RealInterval u_bound = square(uv) + four * square(d) / RealInterval(16.0) + four * RealInterval(r);
    RealInterval v_gap = d - v_bound, u_gap = RealInterval(0.25) - u_bound;

    std::vector<Complex> zs;
    double ymax = std::min(eps_n, r);
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 5; ++j) {
            Complex z(2.0 - r + 2.0 * r * i / 8, -ymax + 2.0 * ymax * j / 4);
            if (std::abs(z - 2.0) <= r) zs.push_back(z);
        }
    double grid_u = kInf, grid_v = kInf;
    for (Complex z : zs)
        for (int j = 0; j < grid_n; ++j)
            for (int i = 0; i < grid_n; ++i) {
                Complex w(-0.25 + 0.5 * i / (grid_n - 1), -delta_prime + 2.0 * delta_prime * j / (grid_n - 1));
                Complex img = q4(z, w);
                grid_u = std::min(grid_u, 0.25 - std::abs(img.real()));
                grid_v = std::min(grid_v, delta_prime - std::abs(img.imag()));
            }
    bool grid_ok = grid_u > 0.0 && grid_v > 0.0 && grid_u >= u_gap.lo() && grid_v >= v_gap.lo();

    std::ostringstream ev;
    ev << "|v1| <= " << v_bound << " < " << delta_prime << "; |u1| <= " << u_bound << " < 1/4; grid over "
       << zs.size() << " base points x " << grid_n << "^2 strip points: min gaps u " << grid_u << ", v " << grid_v;
    if (!grid_ok) ev << " (grid counterexample)";
    rep.evidence = ev.str();
    rep.values = {{"v_margin", v_gap.lo()}, {"u_margin", u_gap.lo()}, {"grid_u", grid_u}, {"grid_v", grid_v}};
    double m = std::min(v_gap.lo(), u_gap.lo());
    rep.set_margin(grid_ok ? m : std::min(m, -std::abs(m)));
    return rep;
}

}  // namespace skewlab
