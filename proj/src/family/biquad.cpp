#include <omp.h>
#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "skewlab/errors.hpp"
#include "skewlab/family.hpp"

namespace skewlab {

Poly biquad_poly(const BiquadParams& p) {
    return Poly::from_real({static_cast<double>(p.a * p.a + p.b), 0.0, static_cast<double>(2 * p.a), 0.0, 1.0});
}

hpreal biquad_eval(const BiquadParams& p, hpreal x) {
    hpreal s = x * x + p.a;
    return s * s + p.b;
}

HpComplex biquad_eval(const BiquadParams& p, HpComplex z) {
    HpComplex s = z * z + HpComplex(p.a);
    return s * s + HpComplex(p.b);
}

hpreal biquad_deriv(const BiquadParams& p, hpreal x) { return 4 * x * (x * x + p.a); }

SkewProduct degree4_skew(const Poly& base) {
    BiPoly q({{8.0, 0.0, 0.0, 0.0, 1.0}, {-4.0, 0.0, 0.0, 0.0, 0.0}});
    return SkewProduct(base, q, default_base_radius(base), 2.5);
}

BiquadParams per1_curve(double t) {
    if (!(t >= kPer1Min * (1 - 1e-15) && t <= kPer1Max * (1 + 1e-15)))
        throw RangeError("t outside [4^(-1/3), 4^(1/3)]");
    hpreal th = t;
    return {1 / (2 * th) - th * th / 4, th / 2 - 1 / (4 * th * th)};
}

namespace {

const hpreal kCurveEnd = -cbrtq(2.0Q) / 4;

void check_curve_range(hpreal x, const char* name) {
    if (!(x >= -2 - 1e-15Q && x <= kCurveEnd + 1e-15Q))
        throw RangeError(std::string(name) + " outside [-2, -2^(1/3)/4]");
}

}  // namespace

hpreal preper11_b(hpreal a) {
    check_curve_range(a, "a");
    return -a * a + sqrtq(fmaxq(-2 * a, 0));
}

hpreal preper21_a(hpreal b) {
    check_curve_range(b, "b");
    return -b * b + sqrtq(fmaxq(-2 * b, 0));
}

hpreal preper21_rejected_g(hpreal b) {
    check_curve_range(b, "b");
    hpreal a = -b * b - sqrtq(-2 * b);
    // p(x) - x = x^4 + 2a x^2 - x + a^2 + b, divided by (x + b)
    hpreal r = -b;
    hpreal q3 = 1, q2 = r * q3, q1 = 2 * a + r * q2, q0 = -1 + r * q1;
    return ((q3 * r + q2) * r + q1) * r + q0;
}

BetaResult beta_fixed(const BiquadParams& p) {
    Poly g = biquad_poly(p) - Poly({0.0, 1.0});
    bool found = false;
    BetaResult best;
    for (const auto& root : poly_roots(g)) {
        double re = root.value.real();
        if (std::abs(root.value.imag()) > 1e-6 * (1.0 + std::abs(re))) continue;
        hpreal x = re;
        for (int it = 0; it < 400; ++it) {
            hpreal v = biquad_eval(p, x) - x, d = biquad_deriv(p, x) - 1;
            if (v == 0 || d == 0) break;
            hpreal step = v / d;
            x -= step;
            if (fabsq(step) < 1e-33Q * (1 + fabsq(x))) break;
        }
        hpreal res = fabsq(biquad_eval(p, x) - x);
        if (!(res <= 1e-24Q * (1 + x * x * x * x))) continue;
        if (!found || x > best.beta) {
            best.beta = x;
            found = true;
        }
    }
    if (!found) throw NoRealFixedPoint("p(x) - x has no real root");
    best.multiplier = biquad_deriv(p, best.beta);
    best.is_repelling = fabsq(best.multiplier) > 1 + 1e-9Q;
    return best;
}

const char* to_string(LocusLabel l) {
    switch (l) {
        case LocusLabel::Connected: return "Connected";
        case LocusLabel::Escaping: return "Escaping";
        case LocusLabel::BoundaryWithinTol: return "BoundaryWithinTol";
        default: return "Inconclusive";
    }
}

LocusClass classify_params(const BiquadParams& p, int maxiter, double tol) {
    LocusClass out;
    if (p.a < 0) {
        std::optional<BetaResult> beta;
        try {
            beta = beta_fixed(p);
        } catch (const NoRealFixedPoint&) {
        }
        if (beta) {
            out.fast_path = true;
            double top = static_cast<double>(beta->beta - biquad_eval(p, hpreal(0)));  // beta - p(0)
            double low = static_cast<double>(p.b + beta->beta);                         // b + beta
            const double s = std::sqrt(-p.a_d());
            if (top < -tol) out.escaping.push_back(0.0);
            if (low < -tol) {
                out.escaping.push_back(-s);
                out.escaping.push_back(s);
            }
            if (!out.escaping.empty()) {
                out.label = LocusLabel::Escaping;
                return out;
            }
            bool near_top = std::abs(top) <= tol, near_low = std::abs(low) <= tol;
            // a single marginal criterion is a boundary crossing; both marginal
            // is the corner (-2, -2) where the two curves meet inside C
            out.label = (near_top != near_low) ? LocusLabel::BoundaryWithinTol : LocusLabel::Connected;
            return out;
        }
    }
    auto res = connectivity_test(biquad_poly(p), maxiter);
    if (res.verdict == Connectivity::Connected) out.label = LocusLabel::Connected;
    else if (res.verdict == Connectivity::Inconclusive) out.label = LocusLabel::Inconclusive;
    else {
        out.label = LocusLabel::Escaping;
        for (std::size_t k = 0; k < res.critical_points.size(); ++k)
            if (res.escaped[k]) out.escaping.push_back(res.critical_points[k]);
    }
    return out;
}

std::vector<LocusLabel> classify_grid(const GridSpec& grid, int maxiter, double tol) {
    grid.validate();
    std::vector<LocusLabel> out(grid.size());
    const long long n = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long long id = 0; id < n; ++id) {
        Complex c = grid.pixel(static_cast<int>(id % grid.nx), static_cast<int>(id / grid.nx));
        out[id] = classify_params({c.real(), c.imag()}, maxiter, tol).label;
    }
    return out;
}

std::vector<LocusLabel> classify_grid_reference(const GridSpec& grid, int maxiter, double tol) {
    grid.validate();
    std::vector<LocusLabel> out;
    out.reserve(grid.size());
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            Complex c = grid.pixel(i, j);
            out.push_back(classify_params({c.real(), c.imag()}, maxiter, tol).label);
        }
    return out;
}

namespace {

// p(b) - x_{n-1} with x_0 = sqrt(-a), x_k the right preimage of x_{k-1}
hpreal kneading(hpreal a, int n) {
    BiquadParams p{a, preper11_b(a)};
    hpreal x = sqrtq(-a);
    for (int k = 1; k < n; ++k) x = sqrtq(sqrtq(x - p.b) - a);
    return biquad_eval(p, p.b) - x;
}

hpreal forward_residual(const BiquadParams& p, int n) {
    hpreal s = sqrtq(-p.a), x = s;
    for (int k = 0; k <= n; ++k) x = biquad_eval(p, x);
    return fabsq(x - s);
}

}  // namespace

SuperattractingParam superattracting_param(int n, int cap) {
    if (n < 1 || n > cap) throw DomainError("n must lie in [1, " + std::to_string(cap) + "]");
    // b < 0 on this stretch of Preper_(1)1, which keeps the preimage branch real
    const hpreal lo = -2, hi = -cbrtq(2.0Q);
    constexpr int kSamples = 1 << 10;
    std::vector<hpreal> as(kSamples + 1), hs(kSamples + 1);
    for (int k = 0; k <= kSamples; ++k) {
        as[k] = lo + (hi - lo) * k / kSamples;
        hs[k] = kneading(as[k], n);
    }
    int bracket = -1;
    for (int k = 0; k < kSamples && bracket < 0; ++k)
        if ((hs[k] <= 0) != (hs[k + 1] <= 0)) bracket = k;
    if (bracket < 0) {
        std::ostringstream msg;
        msg << "no sign change of the kneading residual on [-2, -2^(1/3)] for n = " << n << "; samples:";
        for (int k = 0; k <= kSamples; k += 128)
            msg << ' ' << static_cast<double>(as[k]) << ':' << static_cast<double>(hs[k]);
        throw NotBracketed(msg.str());
    }
    hpreal a0 = as[bracket], a1 = as[bracket + 1], h0 = hs[bracket];
    for (int it = 0; it < 200 && a1 - a0 > 1e-33Q * fabsq(a0); ++it) {
        hpreal m = (a0 + a1) / 2, hm = kneading(m, n);
        if (hm == 0) {
            a0 = a1 = m;
            break;
        }
        if ((hm <= 0) == (h0 <= 0)) {
            a0 = m;
            h0 = hm;
        } else {
            a1 = m;
        }
    }
    SuperattractingParam out;
    out.n = n;
    hpreal a = (a0 + a1) / 2;
    out.params = {a, preper11_b(a)};
    out.residual = forward_residual(out.params, n);
    hpreal da = 1e-20Q * (1 + fabsq(a));
    BiquadParams shifted{a + da, preper11_b(a + da)};
    out.conditioning = static_cast<double>(fabsq(forward_residual(shifted, n) - out.residual) / da);
    return out;
}

SkewProduct product_preset(const Poly& p, const Poly& qw) {
    if (p.degree() != qw.degree()) throw DegreeMismatch("deg p differs from deg q");
    return SkewProduct(p, BiPoly({qw.coeffs()}));
}

SkewProduct sumi_preset(double R, double eps, int n) {
    if (!(R > 0.0) || eps < 0.0 || n < 1) throw DomainError("sumi preset needs R > 0, eps >= 0, n >= 1");
    Poly pr({-R, 0.0, 1.0});
    Poly p = pr;
    for (int k = 1; k < n; ++k) p = pr.compose(p);
    Poly h({-1.0 + eps + eps * eps, -2.0 * eps, 1.0});  // (w - eps)^2 - 1 + eps
    Poly hn = h;
    for (int k = 1; k < n; ++k) hn = h.compose(hn);
    const int d = 1 << n;
    Poly t = hn - Poly::monomial(d);
    const double sr = std::sqrt(R);
    std::vector<std::vector<Complex>> c(2, std::vector<Complex>(d + 1, 0.0));
    for (int k = 0; k < d; ++k) {
        c[0][k] = 0.5 * t.coeff(k);
        c[1][k] = t.coeff(k) / (2 * sr);
    }
    c[0][d] = 1.0;
    return SkewProduct(p, BiPoly(c));
}

}  // namespace skewlab
