#include "skewlab/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "skewlab/errors.hpp"

namespace skewlab {

Poly::Poly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(0.0);
    trim();
}

Poly Poly::from_real(const std::vector<double>& coeffs) {
    return Poly(std::vector<Complex>(coeffs.begin(), coeffs.end()));
}

Poly Poly::monomial(int degree, Complex coeff) {
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1, 0.0);
    c.back() = coeff;
    return Poly(std::move(c));
}

void Poly::trim() {
    while (c_.size() > 1 && c_.back() == Complex(0.0)) c_.pop_back();
}

Complex Poly::operator()(Complex z) const { return poly_eval(*this, z); }

Poly Poly::derivative() const {
    if (c_.size() == 1) return Poly();
    std::vector<Complex> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
    return Poly(std::move(d));
}

Poly Poly::compose(const Poly& inner) const {
    Poly out({c_.back()});
    for (int k = degree() - 1; k >= 0; --k) out = out * inner + Poly({c_[k]});
    return out;
}

double Poly::coeff_abs_sum() const {
    double s = 0.0;
    for (auto c : c_) s += std::abs(c);
    return s;
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Complex> c(std::max(a.c_.size(), b.c_.size()), 0.0);
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-1.0) * b; }

Poly operator*(const Poly& a, const Poly& b) {
    std::vector<Complex> c(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
}

Poly operator*(Complex s, const Poly& a) {
    std::vector<Complex> c = a.c_;
    for (auto& x : c) x *= s;
    return Poly(std::move(c));
}

Complex poly_eval(const Poly& p, Complex z) {
    const auto& c = p.coeffs();
    Complex acc = c.back();
    for (int k = p.degree() - 1; k >= 0; --k) acc = acc * z + c[k];
    return acc;
}

std::pair<Complex, Complex> poly_eval_d(const Poly& p, Complex z) {
    const auto& c = p.coeffs();
    Complex v = c.back(), d = 0.0;
    for (int k = p.degree() - 1; k >= 0; --k) {
        d = d * z + v;
        v = v * z + c[k];
    }
    return {v, d};
}

namespace {

// rounding-noise level of Horner evaluation at z
double eval_noise(const std::vector<Complex>& c, Complex z) {
    double az = std::abs(z), s = 0.0, pw = 1.0;
    for (auto ck : c) {
        s += std::abs(ck) * pw;
        pw *= az;
    }
    return 64.0 * std::numeric_limits<double>::epsilon() * s * static_cast<double>(c.size());
}

}  // namespace

std::vector<Root> poly_roots(const Poly& p, double tol, int max_iter) {
    if (p.degree() == 0) {
        if (p.coeff(0) == Complex(0.0)) throw DomainError("poly_roots of the zero polynomial");
        return {};
    }
    std::vector<Root> out;
    // exact zero roots
    int zeros = 0;
    while (p.coeff(zeros) == Complex(0.0)) ++zeros;
    if (zeros > 0) out.push_back({0.0, zeros});
    std::vector<Complex> c(p.coeffs().begin() + zeros, p.coeffs().end());
    const Complex lead = c.back();
    for (auto& x : c) x /= lead;
    const int n = static_cast<int>(c.size()) - 1;
    if (n == 0) return out;
    Poly q(c);

    double radius = 0.0;
    for (int k = 1; k <= n; ++k) radius = std::max(radius, std::pow(std::abs(c[n - k]), 1.0 / k));
    radius = std::max(radius, 1e-3);
    std::vector<Complex> z(n);
    for (int k = 0; k < n; ++k)
        z[k] = std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);

    std::vector<bool> done(n, false);
    for (int it = 0; it < max_iter; ++it) {
        bool all = true;
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            auto [v, d] = poly_eval_d(q, z[i]);
            if (v == Complex(0.0)) {
                done[i] = true;
                continue;
            }
            Complex s = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) s += 1.0 / (z[i] - z[j]);
            Complex ratio = v / d;
            Complex w = ratio / (1.0 - ratio * s);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
            z[i] -= w;
            if (std::abs(w) <= tol * std::max(1.0, std::abs(z[i]))) done[i] = true;
            else all = false;
        }
        if (all) break;
    }
    for (int i = 0; i < n; ++i) {
        if (done[i]) continue;
        // multiple roots stall at the noise floor
        if (std::abs(q(z[i])) > eval_noise(c, z[i]) * 1e3)
            throw NonConvergence("Aberth iteration did not converge");
    }

    // cluster
    const double merge = 1e3 * tol;
    std::vector<int> group(n, -1);
    std::vector<Root> roots;
    for (int i = 0; i < n; ++i) {
        if (group[i] >= 0) continue;
        group[i] = static_cast<int>(roots.size());
        Complex sum = z[i];
        int m = 1;
        for (int j = i + 1; j < n; ++j) {
            if (group[j] >= 0) continue;
            double dist = std::abs(z[i] - z[j]);
            double scale = std::max(1.0, std::abs(z[i]));
            bool close = dist < merge * scale;
            if (!close && dist < 1e-4 * scale) {
                Complex mid = 0.5 * (z[i] + z[j]);
                double noise = eval_noise(c, mid) * 1e3;
                close = std::abs(q(z[i])) <= noise && std::abs(q(z[j])) <= noise &&
                        std::abs(q(mid)) <= noise;
            }
            if (close) {
                group[j] = group[i];
                sum += z[j];
                ++m;
            }
        }
        roots.push_back({sum / static_cast<double>(m), m});
    }
    for (auto& r : roots) {
        if (r.multiplicity != 1) continue;
        for (int k = 0; k < 3; ++k) {
            auto [v, d] = poly_eval_d(q, r.value);
            if (d == Complex(0.0)) break;
            Complex step = v / d;
            if (std::abs(step) > 1e-6 * std::max(1.0, std::abs(r.value))) break;
            r.value -= step;
        }
    }
    out.insert(out.end(), roots.begin(), roots.end());
    return out;
}

std::vector<Complex> expand_roots(const std::vector<Root>& roots) {
    std::vector<Complex> out;
    for (const auto& r : roots)
        for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.value);
    return out;
}

BiPoly::BiPoly(std::vector<std::vector<Complex>> coeffs) : c_(std::move(coeffs)) {
    std::size_t width = 0;
    for (const auto& row : c_) width = std::max(width, row.size());
    for (auto& row : c_) row.resize(width, 0.0);
}

Complex BiPoly::coeff(int j, int k) const {
    if (j < 0 || k < 0 || j >= static_cast<int>(c_.size())) return 0.0;
    if (k >= static_cast<int>(c_[j].size())) return 0.0;
    return c_[j][k];
}

void BiPoly::set(int j, int k, Complex v) {
    if (j >= static_cast<int>(c_.size())) c_.resize(j + 1);
    std::size_t width = std::max<std::size_t>(c_.empty() ? 0 : c_[0].size(), k + 1);
    for (auto& row : c_) row.resize(width, 0.0);
    c_[j][k] = v;
}

int BiPoly::degree_z() const {
    int d = 0;
    for (int j = 0; j < static_cast<int>(c_.size()); ++j)
        for (auto v : c_[j])
            if (v != Complex(0.0)) d = std::max(d, j);
    return d;
}

int BiPoly::degree_w() const {
    int d = 0;
    for (const auto& row : c_)
        for (int k = 0; k < static_cast<int>(row.size()); ++k)
            if (row[k] != Complex(0.0)) d = std::max(d, k);
    return d;
}

int BiPoly::degree_total() const {
    int d = 0;
    for (int j = 0; j < static_cast<int>(c_.size()); ++j)
        for (int k = 0; k < static_cast<int>(c_[j].size()); ++k)
            if (c_[j][k] != Complex(0.0)) d = std::max(d, j + k);
    return d;
}

Poly BiPoly::in_w(Complex z) const {
    int dw = degree_w();
    std::vector<Complex> out(dw + 1, 0.0);
    Complex zp = 1.0;
    for (const auto& row : c_) {
        for (int k = 0; k <= dw && k < static_cast<int>(row.size()); ++k) out[k] += row[k] * zp;
        zp *= z;
    }
    return Poly(std::move(out));
}

Complex BiPoly::operator()(Complex z, Complex w) const {
    Complex acc = 0.0;
    for (auto j = c_.size(); j-- > 0;) {
        const auto& row = c_[j];
        Complex r = 0.0;
        for (auto k = row.size(); k-- > 0;) r = r * w + row[k];
        acc = acc * z + r;
    }
    return acc;
}

Complex BiPoly::d_dw(Complex z, Complex w) const {
    Complex acc = 0.0;
    for (auto j = c_.size(); j-- > 0;) {
        const auto& row = c_[j];
        Complex r = 0.0;
        for (auto k = row.size(); k-- > 1;) r = r * w + static_cast<double>(k) * row[k];
        acc = acc * z + r;
    }
    return acc;
}

Complex BiPoly::d_dz(Complex z, Complex w) const {
    Complex acc = 0.0, zp = 1.0;
    for (std::size_t j = 1; j < c_.size(); ++j) {
        Complex r = 0.0;
        for (auto k = c_[j].size(); k-- > 0;) r = r * w + c_[j][k];
        acc += static_cast<double>(j) * zp * r;
        zp *= z;
    }
    return acc;
}

double BiPoly::coeff_abs_sum() const {
    double s = 0.0;
    for (const auto& row : c_)
        for (auto v : row) s += std::abs(v);
    return s;
}

}  // namespace skewlab
