#pragma once

#include <ostream>

namespace skewlab {

// Closed real interval with outward rounding after every operation:
// one ulp outward plus a relative widening of 4 machine epsilons.
class RealInterval {
public:
    RealInterval() = default;
    RealInterval(double x) : lo_(x), hi_(x) {}  // NOLINT: exact point
    RealInterval(double lo, double hi);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return 0.5 * (lo_ + hi_); }
    double width() const { return hi_ - lo_; }
    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains_zero() const { return contains(0.0); }
    bool positive() const { return lo_ > 0.0; }
    bool negative() const { return hi_ < 0.0; }

    friend RealInterval operator+(const RealInterval& a, const RealInterval& b);
    friend RealInterval operator-(const RealInterval& a, const RealInterval& b);
    friend RealInterval operator-(const RealInterval& a);
    friend RealInterval operator*(const RealInterval& a, const RealInterval& b);
    friend RealInterval operator/(const RealInterval& a, const RealInterval& b);

    RealInterval& operator+=(const RealInterval& o) { return *this = *this + o; }
    RealInterval& operator-=(const RealInterval& o) { return *this = *this - o; }
    RealInterval& operator*=(const RealInterval& o) { return *this = *this * o; }

private:
    static RealInterval widened(double lo, double hi);
    double lo_ = 0.0, hi_ = 0.0;
};

RealInterval sqrt(const RealInterval& x);
RealInterval square(const RealInterval& x);
RealInterval pow(const RealInterval& x, int n);
RealInterval abs(const RealInterval& x);
RealInterval hull(const RealInterval& a, const RealInterval& b);
// sqrt(x^2 + y^2)
RealInterval hypot(const RealInterval& x, const RealInterval& y);

std::ostream& operator<<(std::ostream& os, const RealInterval& x);

}  // namespace skewlab
