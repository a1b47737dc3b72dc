#include "skewlab/hp.hpp"

#include <quadmath.h>

#include <vector>

namespace skewlab {

hpreal hp_sqrt(hpreal x) { return sqrtq(x); }
hpreal hp_abs(hpreal x) { return fabsq(x); }
hpreal hp_cbrt(hpreal x) { return cbrtq(x); }

hpreal hp_from_string(const std::string& s) { return strtoflt128(s.c_str(), nullptr); }

std::string hp_to_string(hpreal x, int digits) {
    std::vector<char> buf(128);
    quadmath_snprintf(buf.data(), buf.size(), "%.*Qg", digits, x);
    return std::string(buf.data());
}

hpreal HpComplex::abs() const { return hypotq(re, im); }

HpComplex hp_sqrt(HpComplex z) {
    if (z.im == 0) {
        if (z.re >= 0) return {sqrtq(z.re), 0};
        return {0, sqrtq(-z.re)};
    }
    hpreal m = z.abs();
    if (z.re >= 0) {
        hpreal r = sqrtq((m + z.re) / 2);
        return {r, z.im / (2 * r)};
    }
    hpreal i = sqrtq((m - z.re) / 2);
    if (z.im < 0) i = -i;
    return {z.im / (2 * i), i};
}

}  // namespace skewlab
