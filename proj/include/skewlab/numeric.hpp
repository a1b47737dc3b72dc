#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace skewlab {

using Complex = std::complex<double>;

// Univariate polynomial, coefficients lowest degree first.
class Poly {
public:
    Poly() : c_{Complex(0.0)} {}
    explicit Poly(std::vector<Complex> coeffs);
    Poly(std::initializer_list<Complex> coeffs) : Poly(std::vector<Complex>(coeffs)) {}

    static Poly from_real(const std::vector<double>& coeffs);
    static Poly monomial(int degree, Complex coeff = 1.0);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Complex>& coeffs() const { return c_; }
    Complex coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Complex(0.0); }
    Complex leading() const { return c_.back(); }
    bool is_monic(double tol = 1e-12) const { return std::abs(leading() - 1.0) <= tol; }

    Complex operator()(Complex z) const;
    Poly derivative() const;
    // this(inner(z))
    Poly compose(const Poly& inner) const;
    double coeff_abs_sum() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Complex s, const Poly& a);

private:
    void trim();
    std::vector<Complex> c_;
};

Complex poly_eval(const Poly& p, Complex z);
// value and first derivative by a single Horner pass
std::pair<Complex, Complex> poly_eval_d(const Poly& p, Complex z);

struct Root {
    Complex value;
    int multiplicity = 1;
};

// Aberth-Ehrlich iteration. Roots closer than 1e3*tol are merged.
std::vector<Root> poly_roots(const Poly& p, double tol = 1e-12, int max_iter = 5000);
// Roots listed with repetition, for reconstruction.
std::vector<Complex> expand_roots(const std::vector<Root>& roots);

// Polynomial in (z, w): sum c[j][k] z^j w^k.
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(std::vector<std::vector<Complex>> coeffs);

    // c(j, k) is the coefficient of z^j w^k
    Complex coeff(int j, int k) const;
    void set(int j, int k, Complex v);

    int degree_z() const;
    int degree_w() const;
    int degree_total() const;

    Complex operator()(Complex z, Complex w) const;
    Complex d_dw(Complex z, Complex w) const;
    Complex d_dz(Complex z, Complex w) const;
    // as a polynomial in w with z frozen
    Poly in_w(Complex z) const;
    double coeff_abs_sum() const;

    const std::vector<std::vector<Complex>>& coeffs() const { return c_; }

private:
    std::vector<std::vector<Complex>> c_;  // c_[j][k]
};

}  // namespace skewlab
