#pragma once

// Interval-arithmetic checks of the inequality chains behind the degree-4
// example, grid corroboration of each chain and the end-to-end certificate.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "skewlab/family.hpp"
#include "skewlab/invariant.hpp"
#include "skewlab/julia.hpp"

namespace skewlab {

struct Region {
    enum class Kind { Disk, Box, Strip };

    Kind kind = Kind::Disk;
    Complex center = 0.0;  // Disk
    double radius = 0.0;   // Disk
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;  // Box
    double half_width = 0.25, height = 0.0;                 // Strip: |x| <= half_width, |y| <= height

    static Region disk(Complex c, double r);
    static Region box(double xmin, double xmax, double ymin, double ymax);
    static Region strip(double height, double half_width = 0.25);

    void validate() const;
    bool contains(Complex z) const;
    // max |z - c| over the region
    double max_distance(Complex c) const;
    // n x n sample points including the boundary
    std::vector<Complex> samples(int n) const;
};

struct LemmaParams {
    int n = 0;
    double r = 0.0;
    double delta = 0.0;
    double delta_prime = 0.0;
    double eps_n = 0.0;
    int N = 0;
};

struct LemmaReport {
    std::string lemma_id;
    LemmaParams params;
    double margin = 0.0;
    bool pass = false;  // margin > 0
    std::string evidence;
    std::vector<std::pair<std::string, double>> values;

    void set_margin(double m) {
        margin = m;
        pass = m > 0.0;
    }
    double value(const std::string& key) const;
};

using Rational = boost::rational<std::int64_t>;

// Open intervals of R/Z with rational endpoints in [0, 1], kept sorted and
// merged. An interval wrapping through 0 is stored as two pieces.
class AngleIntervalSet {
public:
    struct Interval {
        Rational lo, hi;
    };

    void add(Rational lo, Rational hi);
    const std::vector<Interval>& intervals() const { return iv_; }
    // closed [lo, hi] inside one merged open interval
    bool covers(Rational lo, Rational hi) const;
    // smallest distance from [lo, hi] to the ends of its covering interval, or -1
    Rational cover_slack(Rational lo, Rational hi) const;

private:
    std::vector<Interval> iv_;
};

Rational mod1(Rational t);

// |w|^4 - 4|2 - z| >= 7|w| on |w| >= 5/2 for z in the region
LemmaReport check_fiber_escape(const Region& z_region);

// Bounded pixels of p inside [-5/2, 5/2] x [-eps, eps] up to one pixel, and eps <= 1/4
LemmaReport check_k_box(const Poly& p, double eps_n, const GridSpec& grid, int maxiter = 2000);
LemmaReport check_k_box(const ExampleInstance& ex, const GridSpec& grid, int maxiter = 2000);

// Every sample outside B(2, r) has some j < N_max with Re p^j(z) <= 1.
// Records N_obs (the largest first such j) as value "N_obs".
LemmaReport check_reach_left(const Poly& p, const BaseSample& base, double r, int N_max);
LemmaReport check_reach_left(const ExampleInstance& ex, double r, int N_max);

// 64^N (delta + 4 eps / 63) < sqrt(6) / 10
LemmaReport check_escape_constant(int N, double delta, double eps_n);
// largest delta passing the constant check (may be <= 0)
double escape_delta_bound(int N, double eps_n);

// Q_z^N maps the w-grid in {|Im w| < delta, |Re w| <= 5/2} outside D(0, 5/2)
// for sampled z outside B(2, r); also checks |v_{k+1}| < 64 |v_k| + 4 eps.
LemmaReport check_escape_empirical(const ExampleInstance& ex, double r, double delta, int N,
                                   std::size_t max_base = 256, int nu = 41, int nv = 6);

// q_z(S(0,1/4,delta')) inside int S for z in B(2, r) with |Im z| <= eps
LemmaReport check_contract(double r, double delta_prime, double eps_n, int grid_n = 41);

// quadrupling of (3/64,13/64), (51/64,61/64) and coverage of [4^-J, 1 - 4^-J]
LemmaReport check_angle_combinatorics(int J = 10);

// Fibers of K_z over samples z != beta miss the strip S(0,1/4,delta); at beta
// the strip is bounded.
LemmaReport check_critical_disjoint(const ExampleInstance& ex, double delta, int nu = 64, int nv = 8,
                                    int maxiter = 200, std::size_t max_walk = 512);

struct CertificateConfig {
    double r = 1.0 / 32;
    double delta_prime = 0.2;
    int J = 10;
    int N_max = 64;
    ExampleOptions example;
    GridSpec k_box_grid = GridSpec::box(-3.0, 3.0, -3.0, 3.0, 513, 513);
    int k_box_maxiter = 2000;
    AxiomAOptions axiom;
    AccumulationParams accumulation;
    double component_pixel = 5.0 / 512;
    double saddle_tol = 1e-8;
    double label_fraction = 0.99;
};

struct Certificate {
    int n = 0;
    bool constructed = false;
    ExampleInstance instance;
    double delta = 0.0;
    int N = 0;
    std::vector<LemmaReport> reports;  // sorted by lemma id
    std::vector<std::string> failing;
    bool pass = false;
};

Certificate full_certificate(int n, const CertificateConfig& cfg = {});

// smallest n in [1, n_max] whose certificate passes; the last certificate if none
Certificate search_certificate(int n_max, const CertificateConfig& cfg, std::vector<Certificate>* tried = nullptr);

}  // namespace skewlab
