#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "skewlab/errors.hpp"
#include "skewlab/family.hpp"

namespace skewlab {

namespace {

constexpr hpreal kEscape = 1e30Q;

struct CycleInfo {
    bool found = false;
    int period = 0;
    hpreal multiplier = 0;
    std::vector<hpreal> points;
};

CycleInfo attracting_cycle(const BiquadParams& p, hpreal x, int maxiter) {
    CycleInfo out;
    for (int k = 0; k < maxiter / 2; ++k) {
        x = biquad_eval(p, x);
        if (fabsq(x) > kEscape) return out;
    }
    hpreal y = x;
    for (int per = 1; per <= 64; ++per) {
        y = biquad_eval(p, y);
        if (fabsq(y - x) <= 1e-25Q * (1 + fabsq(x))) {
            out.period = per;
            break;
        }
    }
    if (out.period == 0) return out;
    out.multiplier = 1;
    hpreal z = x;
    for (int k = 0; k < out.period; ++k) {
        out.points.push_back(z);
        out.multiplier *= biquad_deriv(p, z);
        z = biquad_eval(p, z);
    }
    out.found = fabsq(out.multiplier) < 1;
    return out;
}

int escape_step(const BiquadParams& p, hpreal x, hpreal radius, int maxiter) {
    for (int k = 0; k <= maxiter; ++k) {
        if (fabsq(x) > radius) return k;
        x = biquad_eval(p, x);
    }
    return -1;
}

std::vector<HpComplex> preimages(const BiquadParams& p, HpComplex y) {
    HpComplex s = hp_sqrt(y - HpComplex(p.b));
    HpComplex u1 = hp_sqrt(HpComplex(-p.a) + s), u2 = hp_sqrt(HpComplex(-p.a) - s);
    return {u1, -u1, u2, -u2};
}

}  // namespace

ExampleInstance construct_example(int n, const ExampleOptions& opt) {
    const SuperattractingParam sp = superattracting_param(n, opt.cap);
    const BiquadParams base = sp.params;
    const hpreal radius = static_cast<hpreal>(default_base_radius(biquad_poly(base)));

    auto try_eta = [&](hpreal eta, CycleInfo& cyc, int& esc) {
        BiquadParams p{base.a, base.b + eta};
        cyc = attracting_cycle(p, sqrtq(-p.a), opt.maxiter);
        esc = escape_step(p, 0, radius, opt.maxiter);
        return p;
    };

    hpreal eta = opt.eta ? hpreal(*opt.eta) : hpreal(opt.eta_start);
    CycleInfo cyc;
    int esc = -1;
    BiquadParams params;
    if (opt.eta) {
        params = try_eta(eta, cyc, esc);
        if (!cyc.found || cyc.period != n + 1)
            throw PerturbationTooLarge("attracting cycle of period " + std::to_string(n + 1) + " lost at eta = " +
                                       std::to_string(*opt.eta));
    } else {
        int halvings = 0;
        for (;; ++halvings, eta /= 2) {
            if (halvings > 400) throw PerturbationTooLarge("no admissible eta found after 400 halvings");
            params = try_eta(eta, cyc, esc);
            if (cyc.found && cyc.period == n + 1) break;
        }
    }
    if (!(biquad_eval(params, hpreal(0)) - beta_fixed(params).beta > 1e-28Q))
        throw PerturbationTooSmall("p(0) does not exceed beta; the parameters stay in the connectedness locus");
    if (esc < 0)
        throw PerturbationTooSmall("critical point 0 does not escape within " + std::to_string(opt.maxiter) +
                                   " iterations");

    ExampleInstance ex;
    ex.n = n;
    ex.unperturbed = base;
    ex.params = params;
    ex.eta = eta;
    const Poly p = biquad_poly(params);
    ex.f = degree4_skew(p);
    BetaResult beta = beta_fixed(params);
    ex.beta = beta.beta;
    ex.beta_d = static_cast<double>(beta.beta);
    ex.zero_escape_step = esc;
    ex.cycle_period = cyc.period;
    ex.cycle_multiplier = static_cast<double>(cyc.multiplier);
    for (hpreal c : cyc.points) ex.cycle.emplace_back(static_cast<double>(c), 0.0);

    // alpha: attracting fixed point of w^4 + 4(2 - beta)
    const Complex c = 4.0 * (2.0 - ex.beta_d);
    Complex w = 0.0;
    for (int k = 0; k < 200; ++k) w = std::pow(w, 4) + c;
    for (int k = 0; k < 20; ++k) {
        Complex g = std::pow(w, 4) + c - w, dg = 4.0 * std::pow(w, 3) - 1.0;
        if (dg == Complex(0.0)) break;
        w -= g / dg;
    }
    ex.alpha = w;

    // critical orbits from the quad-precision iteration
    {
        CriticalOrbitInfo zero;
        zero.point = 0.0;
        zero.multiplicity = 1;
        zero.escaped = true;
        zero.escape_step = esc;
        ex.base_critical.push_back(zero);
        for (double sgn : {-1.0, 1.0}) {
            CriticalOrbitInfo ci;
            ci.point = Complex(sgn * static_cast<double>(sqrtq(-params.a)), 0.0);
            ci.attracting = true;
            ci.period = cyc.period;
            ci.multiplier = ex.cycle_multiplier;
            ci.cycle = ex.cycle;
            ex.base_critical.push_back(ci);
        }
    }

    // preimage tree of beta; next[] points at the parent, duplicates dropped
    double eps = 0.0;
    {
        std::vector<HpComplex> nodes{HpComplex(ex.beta)};
        std::vector<std::size_t> parent{0};
        std::map<std::pair<double, double>, std::size_t> seen{{{ex.beta_d, 0.0}, 0}};
        std::size_t lo = 0, hi = 1;
        for (int d = 0; d < opt.tree_depth; ++d) {
            for (std::size_t k = lo; k < hi; ++k)
                for (const auto& x : preimages(params, nodes[k])) {
                    Complex c = x.to_complex();
                    if (!seen.emplace(std::make_pair(c.real(), c.imag()), nodes.size()).second) continue;
                    nodes.push_back(x);
                    parent.push_back(k);
                    eps = std::max(eps, static_cast<double>(fabsq(x.im)));
                }
            lo = hi;
            hi = nodes.size();
        }
        std::vector<Complex> pts;
        for (const auto& x : nodes) pts.push_back(x.to_complex());
        ex.tree = BaseSample::from_points(std::move(pts));
        ex.tree.next = std::move(parent);
    }

    // backward walk: points[i] is a preimage of points[i - 1]
    {
        std::mt19937_64 rng(opt.seed);
        std::vector<Complex> pts;
        pts.reserve(opt.walk_size);
        HpComplex z(ex.beta);
        pts.push_back(z.to_complex());
        for (std::size_t i = 1; i < opt.walk_size; ++i) {
            z = preimages(params, z)[rng() & 3];
            pts.push_back(z.to_complex());
            eps = std::max(eps, std::abs(pts.back().imag()));
        }
        ex.walk = BaseSample::from_points(std::move(pts));
        ex.walk.next[0] = 0;
        for (std::size_t i = 1; i < ex.walk.size(); ++i) ex.walk.next[i] = i - 1;
    }
    ex.epsilon = eps;
    return ex;
}

}  // namespace skewlab
