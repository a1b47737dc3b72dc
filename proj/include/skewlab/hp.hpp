#pragma once

// Quad precision (GCC __float128) scalar and complex helpers for the
// base dynamics of the example family, where double is too coarse.

#include <string>

#include "skewlab/numeric.hpp"

namespace skewlab {

using hpreal = __float128;

hpreal hp_sqrt(hpreal x);
hpreal hp_abs(hpreal x);
hpreal hp_cbrt(hpreal x);
hpreal hp_from_string(const std::string& s);
std::string hp_to_string(hpreal x, int digits = 36);

struct HpComplex {
    hpreal re = 0, im = 0;

    HpComplex() = default;
    HpComplex(hpreal r, hpreal i = 0) : re(r), im(i) {}  // NOLINT
    explicit HpComplex(Complex c) : re(c.real()), im(c.imag()) {}

    Complex to_complex() const { return {static_cast<double>(re), static_cast<double>(im)}; }
    hpreal norm() const { return re * re + im * im; }
    hpreal abs() const;

    friend HpComplex operator+(HpComplex a, HpComplex b) { return {a.re + b.re, a.im + b.im}; }
    friend HpComplex operator-(HpComplex a, HpComplex b) { return {a.re - b.re, a.im - b.im}; }
    friend HpComplex operator-(HpComplex a) { return {-a.re, -a.im}; }
    friend HpComplex operator*(HpComplex a, HpComplex b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend HpComplex operator/(HpComplex a, HpComplex b) {
        hpreal d = b.norm();
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
};

// principal branch
HpComplex hp_sqrt(HpComplex z);

}  // namespace skewlab
