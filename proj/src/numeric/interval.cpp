#include "skewlab/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skewlab/errors.hpp"

namespace skewlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
}  // namespace

RealInterval::RealInterval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi) throw DomainError("invalid interval bounds");
}

RealInterval RealInterval::widened(double lo, double hi) {
    if (std::isnan(lo) || std::isnan(hi)) throw DomainError("NaN in interval arithmetic");
    double pad = 2.0 * kEps * (hi - lo);
    return RealInterval(std::nextafter(lo - pad, -kInf), std::nextafter(hi + pad, kInf));
}

RealInterval operator+(const RealInterval& a, const RealInterval& b) {
    return RealInterval::widened(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

RealInterval operator-(const RealInterval& a, const RealInterval& b) {
    return RealInterval::widened(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

RealInterval operator-(const RealInterval& a) { return RealInterval(-a.hi_, -a.lo_); }

RealInterval operator*(const RealInterval& a, const RealInterval& b) {
    double p[] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
    return RealInterval::widened(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

RealInterval operator/(const RealInterval& a, const RealInterval& b) {
    if (b.contains_zero()) throw DomainError("interval division by an interval containing 0");
    double p[] = {a.lo_ / b.lo_, a.lo_ / b.hi_, a.hi_ / b.lo_, a.hi_ / b.hi_};
    return RealInterval::widened(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

RealInterval sqrt(const RealInterval& x) {
    if (x.lo() < 0.0) throw DomainError("interval sqrt of negative values");
    double lo = std::sqrt(x.lo()), hi = std::sqrt(x.hi());
    RealInterval r = RealInterval(lo) + RealInterval(0.0, hi - lo);
    return RealInterval(std::max(0.0, r.lo()), r.hi());
}

RealInterval square(const RealInterval& x) {
    RealInterval a = abs(x);
    return RealInterval(std::max(0.0, (a * a).lo()), (a * a).hi());
}

RealInterval pow(const RealInterval& x, int n) {
    if (n < 0) return RealInterval(1.0) / pow(x, -n);
    if (n == 0) return RealInterval(1.0);
    if (n % 2 == 0) return pow(square(x), n / 2);
    return x * pow(x, n - 1);
}

RealInterval abs(const RealInterval& x) {
    if (x.lo() >= 0.0) return x;
    if (x.hi() <= 0.0) return -x;
    return RealInterval(0.0, std::max(-x.lo(), x.hi()));
}

RealInterval hull(const RealInterval& a, const RealInterval& b) {
    return RealInterval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

RealInterval hypot(const RealInterval& x, const RealInterval& y) { return sqrt(square(x) + square(y)); }

std::ostream& operator<<(std::ostream& os, const RealInterval& x) {
    return os << '[' << x.lo() << ", " << x.hi() << ']';
}

}  // namespace skewlab
