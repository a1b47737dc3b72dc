#pragma once

#include <optional>
#include <vector>

#include "skewlab/numeric.hpp"

namespace skewlab {

struct Point2 {
    Complex z, w;
};

inline double distance(const Point2& a, const Point2& b) {
    return std::sqrt(std::norm(a.z - b.z) + std::norm(a.w - b.w));
}

// f(z, w) = (p(z), q(z, w)) with deg p = deg_w q = d >= 2, p monic.
class SkewProduct {
public:
    SkewProduct(Poly base, BiPoly fiber);
    // explicit escape radii; both must be trapping on the sets of interest
    SkewProduct(Poly base, BiPoly fiber, double base_radius, double fiber_radius);

    int degree() const { return base_.degree(); }
    const Poly& base() const { return base_; }
    const BiPoly& fiber() const { return fiber_; }
    double base_radius() const { return base_radius_; }
    double fiber_radius() const { return fiber_radius_; }

    Point2 operator()(const Point2& x) const { return {base_(x.z), fiber_(x.z, x.w)}; }
    bool escaped(const Point2& x) const {
        return std::abs(x.z) > base_radius_ || std::abs(x.w) > fiber_radius_;
    }

private:
    Poly base_;
    BiPoly fiber_;
    double base_radius_, fiber_radius_;
};

// Safe radius beyond which the base orbit escapes.
double default_base_radius(const Poly& p);
// Safe radius beyond which the fiber orbit escapes while the base stays in D(0, base_radius).
double default_fiber_radius(const BiPoly& q, double base_radius);

inline constexpr double kEscapeSentinel = 1e10;

// n steps of f; nullopt once |z| or |w| exceeds the escape sentinel.
std::optional<Point2> iterate(const SkewProduct& f, Point2 x, int n);

// first n with f^n(x) outside the escape radii, or nullopt within maxiter
std::optional<int> escape_time(const SkewProduct& f, Point2 x, int maxiter);

struct Orbit {
    std::vector<Point2> points;   // last `window` points, f^first .. f^(first+size-1)
    int first = 0;
    std::optional<int> escaped_at;
    std::optional<int> base_escaped_at;
};

Orbit orbit(const SkewProduct& f, Point2 x, int n, int window = 4096);

// Q_z^k(w) = q_{p^{k-1}(z)} o ... o q_z (w)
Complex fiber_composition(const SkewProduct& f, Complex z, Complex w, int k);

// roots of dq/dw (z, .)
std::vector<Root> critical_points_over(const SkewProduct& f, Complex z, double tol = 1e-12);

struct Regularity {
    bool regular = false;
    // |resultant| of the top-degree homogeneous parts after normalising
    // the coefficients to unit max
    double margin = 0.0;
};

// f extends holomorphically to P^2 iff the top homogeneous parts have
// no common zero other than the origin.
Regularity is_regular(const SkewProduct& f);

}  // namespace skewlab
