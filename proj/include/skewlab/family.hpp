#pragma once

// The real biquadratic family p_{a,b}(z) = (z^2 + a)^2 + b, the degree-4
// example f_n(z, w) = (p_n(z), w^4 + 4(2 - z)) and preset skew products.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skewlab/dynamics.hpp"
#include "skewlab/hp.hpp"
#include "skewlab/julia.hpp"

namespace skewlab {

struct BiquadParams {
    hpreal a = 0, b = 0;

    BiquadParams() = default;
    BiquadParams(hpreal a_, hpreal b_) : a(a_), b(b_) {}
    double a_d() const { return static_cast<double>(a); }
    double b_d() const { return static_cast<double>(b); }
};

Poly biquad_poly(const BiquadParams& p);
hpreal biquad_eval(const BiquadParams& p, hpreal x);
HpComplex biquad_eval(const BiquadParams& p, HpComplex z);
hpreal biquad_deriv(const BiquadParams& p, hpreal x);

// degree-4 skew product over p_{a,b} with fiber w^4 + 4(2 - z); fiber
// escape radius 5/2
SkewProduct degree4_skew(const Poly& base);

// Per_1^+(1): parabolic fixed point with multiplier 1
BiquadParams per1_curve(double t);
constexpr double kPer1Min = 0.62996052494743658238;  // 4^(-1/3)
constexpr double kPer1Max = 1.58740105196819947475;  // 4^(1/3)
// Preper_(1)1 (p(0) = beta) and Preper_(2)1 (p(b) = -beta)
hpreal preper11_b(hpreal a);
hpreal preper21_a(hpreal b);
// On the rejected branch a = -b^2 - sqrt(-2b): p(x) - x = (x + b) g(x). Returns g(-b).
hpreal preper21_rejected_g(hpreal b);

struct BetaResult {
    hpreal beta = 0;
    hpreal multiplier = 0;
    bool is_repelling = false;
};

BetaResult beta_fixed(const BiquadParams& p);

enum class LocusLabel { Connected, Escaping, BoundaryWithinTol, Inconclusive };
const char* to_string(LocusLabel l);

struct LocusClass {
    LocusLabel label = LocusLabel::Inconclusive;
    std::vector<Complex> escaping;  // nonempty iff label == Escaping
    bool fast_path = false;
};

LocusClass classify_params(const BiquadParams& p, int maxiter = 2000, double tol = 1e-9);

// (a, b) plane, pixel centres are parameters; row-major labels
std::vector<LocusLabel> classify_grid(const GridSpec& grid, int maxiter = 2000, double tol = 1e-9);
std::vector<LocusLabel> classify_grid_reference(const GridSpec& grid, int maxiter = 2000, double tol = 1e-9);

struct SuperattractingParam {
    int n = 0;
    BiquadParams params;
    hpreal residual = 0;  // |p^{n+1}(sqrt(-a)) - sqrt(-a)|
    double conditioning = 0.0;  // |d residual / da| estimate
};

// On Preper_(1)1, the parameter where sqrt(-a) returns to itself after n+1 steps
SuperattractingParam superattracting_param(int n, int cap = 8);

struct ExampleOptions {
    std::optional<double> eta;     // fixed perturbation; default: halve from eta_start
    double eta_start = 1e-3;
    int maxiter = 4000;
    std::size_t walk_size = 1 << 14;
    std::uint64_t seed = 1;
    int tree_depth = 6;
    int cap = 8;
};

struct ExampleInstance {
    int n = 0;
    BiquadParams unperturbed;
    BiquadParams params;
    hpreal eta = 0;
    SkewProduct f = degree4_skew(Poly::monomial(4));
    hpreal beta = 0;
    double beta_d = 0.0;
    Complex alpha = 0.0;
    double epsilon = 0.0;          // max |Im| over the sampled Julia set
    int zero_escape_step = 0;
    int cycle_period = 0;
    double cycle_multiplier = 0.0;
    std::vector<Complex> cycle;
    std::vector<CriticalOrbitInfo> base_critical;  // from the quad-precision orbits
    BaseSample walk;               // backward walk from beta
    BaseSample tree;               // preimages of beta up to tree_depth levels
};

ExampleInstance construct_example(int n, const ExampleOptions& opt = {});

SkewProduct product_preset(const Poly& p, const Poly& qw);
SkewProduct sumi_preset(double R, double eps, int n);

}  // namespace skewlab
