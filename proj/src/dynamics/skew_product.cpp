#include <algorithm>
#include <cmath>

#include "skewlab/dynamics.hpp"
#include "skewlab/errors.hpp"

namespace skewlab {

double default_base_radius(const Poly& p) {
    double a = 0.0;
    for (int k = 0; k < p.degree(); ++k) a += std::abs(p.coeff(k));
    return std::max(2.0, a + 2.0);
}

double default_fiber_radius(const BiPoly& q, double base_radius) {
    const int d = q.degree_w();
    double lead = std::abs(q.coeff(0, d)), rest = 0.0;
    for (int j = 1; j <= q.degree_z(); ++j) lead -= std::abs(q.coeff(j, d)) * std::pow(base_radius, j);
    for (int k = 0; k < d; ++k)
        for (int j = 0; j <= q.degree_z(); ++j) rest += std::abs(q.coeff(j, k)) * std::pow(base_radius, j);
    if (lead <= 0.0) return 1e6;
    return std::max(2.0, (rest + 2.0) / lead);
}

namespace {

void validate(const Poly& base, const BiPoly& fiber) {
    const int d = base.degree();
    if (d < 2) throw DegreeMismatch("base degree must be at least 2");
    if (!base.is_monic()) throw DegreeMismatch("base polynomial must be monic");
    if (fiber.degree_w() != d)
        throw DegreeMismatch("fiber degree in w (" + std::to_string(fiber.degree_w()) +
                             ") differs from base degree (" + std::to_string(d) + ")");
}

}  // namespace

SkewProduct::SkewProduct(Poly base, BiPoly fiber) : base_(std::move(base)), fiber_(std::move(fiber)) {
    validate(base_, fiber_);
    base_radius_ = default_base_radius(base_);
    fiber_radius_ = default_fiber_radius(fiber_, base_radius_);
}

SkewProduct::SkewProduct(Poly base, BiPoly fiber, double base_radius, double fiber_radius)
    : base_(std::move(base)), fiber_(std::move(fiber)), base_radius_(base_radius), fiber_radius_(fiber_radius) {
    validate(base_, fiber_);
    if (!(base_radius > 0.0) || !(fiber_radius > 0.0)) throw DomainError("escape radii must be positive");
}

std::optional<Point2> iterate(const SkewProduct& f, Point2 x, int n) {
    if (n < 0) throw DomainError("negative iteration count");
    for (int k = 0; k < n; ++k) {
        x = f(x);
        if (!(std::abs(x.z) <= kEscapeSentinel) || !(std::abs(x.w) <= kEscapeSentinel)) return std::nullopt;
    }
    return x;
}

std::optional<int> escape_time(const SkewProduct& f, Point2 x, int maxiter) {
    for (int k = 0; k <= maxiter; ++k) {
        if (f.escaped(x)) return k;
        if (k < maxiter) x = f(x);
    }
    return std::nullopt;
}

Orbit orbit(const SkewProduct& f, Point2 x, int n, int window) {
    Orbit o;
    std::vector<Point2> ring;
    ring.reserve(std::min(n + 1, window));
    for (int k = 0; k <= n; ++k) {
        if (static_cast<int>(ring.size()) < window) ring.push_back(x);
        else ring[k % window] = x;
        if (f.escaped(x)) {
            o.escaped_at = k;
            if (std::abs(x.z) > f.base_radius()) o.base_escaped_at = k;
            n = k;
            break;
        }
        if (k < n) x = f(x);
    }
    int count = static_cast<int>(ring.size());
    o.first = n + 1 - count;
    o.points.resize(count);
    for (int i = 0; i < count; ++i) o.points[i] = ring[(o.first + i) % window];
    return o;
}

Complex fiber_composition(const SkewProduct& f, Complex z, Complex w, int k) {
    for (int i = 0; i < k; ++i) {
        w = f.fiber()(z, w);
        z = f.base()(z);
    }
    return w;
}

std::vector<Root> critical_points_over(const SkewProduct& f, Complex z, double tol) {
    Poly dq = f.fiber().in_w(z).derivative();
    if (dq.degree() == 0 && dq.coeff(0) == Complex(0.0))
        throw DegenerateFiber("dq/dw vanishes identically over this base point");
    if (dq.degree() == 0) return {};
    return poly_roots(dq, tol);
}

Regularity is_regular(const SkewProduct& f) {
    const int d = f.degree();
    const BiPoly& q = f.fiber();
    const int dq = q.degree_total();
    Regularity r;
    if (dq > d) return r;  // top part (0, q_D) vanishes on {z = 0}
    // top parts: z^d and q_d(z, w); the only candidate common zero is [0 : 1],
    // and Res_z(z^d, q_d(z, 1)) = q_d(0, 1)^d.
    double scale = 0.0;
    for (int j = 0; j <= d; ++j) scale = std::max(scale, std::abs(q.coeff(j, d - j)));
    if (scale == 0.0) return r;
    r.margin = std::pow(std::abs(q.coeff(0, d)) / scale, d);
    r.regular = r.margin > 1e-12;
    return r;
}

}  // namespace skewlab
