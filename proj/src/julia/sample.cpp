#include <cmath>

#include "skewlab/errors.hpp"
#include "skewlab/julia.hpp"

namespace skewlab {

const char* to_string(Connectivity c) {
    switch (c) {
        case Connectivity::Connected: return "Connected";
        case Connectivity::Disconnected: return "Disconnected";
        default: return "Inconclusive";
    }
}

ConnectivityResult connectivity_test(const Poly& p, int maxiter, double radius) {
    const double r = radius > 0.0 ? radius : default_base_radius(p);
    ConnectivityResult out;
    bool any_escape = false, any_unsure = false;
    for (const auto& c : poly_roots(p.derivative())) {
        Complex z = c.value;
        bool esc = false;
        for (int n = 0; n < maxiter; ++n) {
            if (std::abs(z) > r) {
                esc = true;
                break;
            }
            z = p(z);
        }
        if (!esc && std::abs(z) > r) esc = true;
        if (!esc && std::abs(z) > r * (1.0 - 1e-6)) any_unsure = true;
        any_escape = any_escape || esc;
        out.critical_points.push_back(c.value);
        out.escaped.push_back(esc);
    }
    out.verdict = any_escape ? Connectivity::Disconnected
                             : (any_unsure ? Connectivity::Inconclusive : Connectivity::Connected);
    return out;
}

BaseSample BaseSample::from_points(std::vector<Complex> pts) {
    BaseSample s;
    s.next.assign(pts.size(), kNone);
    s.points = std::move(pts);
    return s;
}

std::vector<Complex> BaseSample::orbit(const Poly& p, std::size_t i, int len) const {
    std::vector<Complex> out;
    out.reserve(len + 1);
    std::size_t k = i;
    Complex z = points.at(i);
    out.push_back(z);
    for (int n = 0; n < len; ++n) {
        if (k != kNone && next[k] != kNone) {
            k = next[k];
            z = points[k];
        } else {
            k = kNone;
            z = p(z);
            if (std::abs(z) > kEscapeSentinel) {
                out.push_back(z);
                break;
            }
        }
        out.push_back(z);
    }
    return out;
}

std::vector<bool> BaseSample::seed_fixed() const {
    std::vector<bool> out(points.size(), false);
    if (points.empty() || next.empty() || next[0] != 0) return out;
    out[0] = true;
    for (std::size_t i = 1; i < points.size(); ++i)
        out[i] = points[i] == points[0] && next[i] != kNone && next[i] < i && out[next[i]];
    return out;
}

Complex repelling_fixed_point(const Poly& p) {
    Poly g = p - Poly({0.0, 1.0});
    Complex best = 0.0;
    double best_mult = 1.0;
    for (const auto& r : poly_roots(g)) {
        Complex z = r.value;
        for (int k = 0; k < 8; ++k) {
            auto [v, d] = poly_eval_d(g, z);
            if (d == Complex(0.0)) break;
            z -= v / d;
        }
        double m = std::abs(poly_eval_d(p, z).second);
        if (m > best_mult) {
            best_mult = m;
            best = z;
        }
    }
    if (best_mult <= 1.0) throw DomainError("no repelling fixed point");
    return best;
}

BaseSample julia_walk(const Poly& p, std::size_t count, std::uint64_t seed) {
    if (count == 0) throw DomainError("empty walk");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, p.degree() - 1);
    BaseSample s;
    s.points.push_back(repelling_fixed_point(p));
    s.next.push_back(0);
    while (s.points.size() < count) {
        Poly g = p - Poly({s.points.back()});
        auto roots = expand_roots(poly_roots(g));
        Complex z = roots.at(static_cast<std::size_t>(pick(rng)) % roots.size());
        s.next.push_back(s.points.size() - 1);
        s.points.push_back(z);
    }
    return s;
}

}  // namespace skewlab

namespace skewlab {

std::vector<CriticalOrbitInfo> base_critical_orbits(const Poly& p, int maxiter) {
    const double radius = default_base_radius(p);
    std::vector<CriticalOrbitInfo> out;
    for (const auto& c : poly_roots(p.derivative())) {
        CriticalOrbitInfo info;
        info.point = c.value;
        info.multiplicity = c.multiplicity;
        Complex z = c.value;
        for (int k = 0; k <= maxiter; ++k) {
            if (std::abs(z) > radius) {
                info.escaped = true;
                info.escape_step = k;
                break;
            }
            if (k < maxiter) z = p(z);
        }
        if (!info.escaped) {
            for (int period = 1; period <= 64 && !info.attracting; ++period) {
                Complex y = z;
                for (int k = 0; k < period; ++k) y = p(y);
                if (std::abs(y - z) > 1e-9 * (1.0 + std::abs(z))) continue;
                // polish the cycle point and read off the multiplier
                Complex x = z;
                for (int it = 0; it < 30; ++it) {
                    Complex v = x, d = 1.0;
                    for (int k = 0; k < period; ++k) {
                        auto [pv, pd] = poly_eval_d(p, v);
                        d *= pd;
                        v = pv;
                    }
                    if (d == Complex(1.0)) break;
                    Complex step = (v - x) / (d - 1.0);
                    x -= step;
                    if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
                }
                Complex v = x, d = 1.0;
                std::vector<Complex> cyc;
                for (int k = 0; k < period; ++k) {
                    cyc.push_back(v);
                    auto [pv, pd] = poly_eval_d(p, v);
                    d *= pd;
                    v = pv;
                }
                info.period = period;
                info.multiplier = d;
                info.cycle = cyc;
                info.attracting = std::abs(d) < 1.0 - 1e-6 && std::abs(x - z) < 1e-6;
                break;
            }
        }
        out.push_back(info);
    }
    return out;
}

}  // namespace skewlab
