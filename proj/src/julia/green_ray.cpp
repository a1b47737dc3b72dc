#include <cmath>
#include <numbers>

#include "skewlab/errors.hpp"
#include "skewlab/julia.hpp"

namespace skewlab {

double green_potential(const Poly& p, Complex z, int maxiter) {
    const double d = p.degree();
    const double bailout = 1e40;
    double scale = 1.0;
    for (int n = 0; n < maxiter; ++n) {
        double a = std::abs(z);
        if (a > bailout) return scale * std::log(a);
        z = p(z);
        scale /= d;
    }
    return 0.0;
}

namespace {

using u128 = unsigned __int128;

// frac(d^m * num / den) as a double
double angle_frac(std::uint64_t num, std::uint64_t den, unsigned d, int m) {
    u128 x = num % den;
    for (int i = 0; i < m; ++i) x = (x * d) % den;
    return static_cast<double>(x) / static_cast<double>(den);
}

}  // namespace

RayTrace trace_external_ray(const Poly& p, RayAngle theta, const RayOptions& opt) {
    if (theta.den == 0 || theta.den > (std::uint64_t{1} << 32) || theta.num >= theta.den)
        throw DomainError("ray angle must be num/den in [0, 1) with den <= 2^32");
    if (!p.is_monic()) throw DomainError("external rays need a monic polynomial");
    const int d = p.degree();
    const Complex shift = p.coeff(d - 1) / static_cast<double>(d);
    const double L = std::log(1e8);  // target modulus e^L
    const double g0 = std::log(4.0 * default_base_radius(p));

    // trace far enough to pass below the escaping critical points that are
    // resolvable in double, so that a crash into one is seen
    double g_floor = 0.0;
    for (const auto& c : poly_roots(p.derivative())) {
        double gc = green_potential(p, c.value);
        if (gc > 1e-9 && (g_floor == 0.0 || gc < g_floor)) g_floor = gc;
    }
    g_floor *= 0.5;

    RayTrace out;
    Complex z = std::exp(Complex(g0, 2.0 * std::numbers::pi * static_cast<double>(theta.num) / theta.den)) - shift;
    double last_step = std::abs(z);
    const int levels = opt.max_depth * opt.sharpness;
    for (int k = 0; k <= levels; ++k) {
        double g = g0 * std::pow(static_cast<double>(d), -static_cast<double>(k) / opt.sharpness);
        int m = std::max(0, static_cast<int>(std::ceil(std::log(L / g) / std::log(static_cast<double>(d)))));
        double amp = g * std::pow(static_cast<double>(d), m);
        double ang = 2.0 * std::numbers::pi * angle_frac(theta.num, theta.den, d, m);
        Complex target = std::exp(Complex(amp, ang)) - shift;

        Complex x = z;
        bool ok = false;
        for (int it = 0; it < 64; ++it) {
            Complex v = x, dv = 1.0;
            for (int i = 0; i < m; ++i) {
                auto [pv, pd] = poly_eval_d(p, v);
                dv *= pd;
                v = pv;
            }
            if (m == 0) v = x;
            Complex step = (v - target) / dv;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            x -= step;
            if (std::abs(step) <= 1e-14 * (1.0 + std::abs(x))) {
                ok = true;
                break;
            }
        }
        double moved = std::abs(x - z);
        if (!ok || (k > 0 && moved > 8.0 * last_step + 1e-12)) {
            out.blocked = true;
            out.stop_potential = out.potentials.empty() ? g0 : out.potentials.back();
            return out;
        }
        if (k > 0) last_step = moved;
        z = x;
        out.points.push_back(z);
        out.potentials.push_back(g);

        const int nw = opt.land_window;
        if (static_cast<int>(out.points.size()) >= nw && (g_floor == 0.0 || g < g_floor)) {
            double diam = 0.0;
            for (int a = 0; a < nw; ++a)
                for (int b = a + 1; b < nw; ++b)
                    diam = std::max(diam, std::abs(out.points[out.points.size() - 1 - a] -
                                                   out.points[out.points.size() - 1 - b]));
            if (diam < opt.land_tol) {
                out.landed = true;
                out.landing = z;
                out.stop_potential = g;
                return out;
            }
        }
    }
    out.stop_potential = out.potentials.back();
    return out;
}

}  // namespace skewlab
