#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "skewlab/dynamics.hpp"
#include "skewlab/numeric.hpp"

namespace skewlab {

// Pixel (i, j) centre: x = xmin + (i + 1/2) dx, y = ymax - (j + 1/2) dy.
// Row 0 is the top row.
struct GridSpec {
    Complex center = 0.0;
    double half_width = 2.0;
    double half_height = 2.0;
    int nx = 256, ny = 256;

    GridSpec() = default;
    // square pixels
    GridSpec(Complex center, double half_width, int nx, int ny);
    static GridSpec box(double xmin, double xmax, double ymin, double ymax, int nx, int ny);

    double xmin() const { return center.real() - half_width; }
    double xmax() const { return center.real() + half_width; }
    double ymin() const { return center.imag() - half_height; }
    double ymax() const { return center.imag() + half_height; }
    double dx() const { return 2.0 * half_width / nx; }
    double dy() const { return 2.0 * half_height / ny; }
    double pixel_diagonal() const { return std::hypot(dx(), dy()); }
    Complex pixel(int i, int j) const {
        return {xmin() + (i + 0.5) * dx(), ymax() - (j + 0.5) * dy()};
    }
    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    void validate() const;
};

struct EscapeGrid {
    static constexpr std::uint32_t kBounded = std::numeric_limits<std::uint32_t>::max();

    GridSpec grid;
    int maxiter = 0;
    std::vector<std::uint32_t> iters;  // row-major, kBounded for orbits that stayed bounded

    std::uint32_t at(int i, int j) const { return iters[static_cast<std::size_t>(j) * grid.nx + i]; }
    bool bounded(int i, int j) const { return at(i, j) == kBounded; }
    std::size_t count_bounded() const;
};

// Per-pixel escape iteration of p with radius R (default: safe radius of p).
EscapeGrid filled_julia_base(const Poly& p, const GridSpec& grid, int maxiter, double radius = 0.0);
EscapeGrid filled_julia_base_reference(const Poly& p, const GridSpec& grid, int maxiter, double radius = 0.0);

// Fiber K_z: pixels are w, the base follows z, p(z), ...
EscapeGrid fiber_filled_julia(const SkewProduct& f, Complex z, const GridSpec& grid, int maxiter);
// Fiber over a prescribed base orbit (base_orbit[k] = p^k(z)); the base orbit
// must have at least maxiter + 1 entries unless it escapes earlier.
EscapeGrid fiber_filled_julia(const SkewProduct& f, const std::vector<Complex>& base_orbit,
                             const GridSpec& grid, int maxiter);
EscapeGrid fiber_filled_julia_reference(const SkewProduct& f, const std::vector<Complex>& base_orbit,
                                       const GridSpec& grid, int maxiter);

// bounded pixels with a non-bounded 4-neighbour
std::vector<Complex> boundary_extract(const EscapeGrid& g);
std::vector<Complex> bounded_pixels(const EscapeGrid& g);

// Connected components (4-adjacency) of the bounded pixel set.
int bounded_component_count(const EscapeGrid& g);

double green_potential(const Poly& p, Complex z, int maxiter = 10000);

struct RayAngle {
    std::uint64_t num = 0, den = 1;  // theta = num / den, den <= 2^32
};

struct RayTrace {
    std::vector<Complex> points;
    std::vector<double> potentials;
    bool landed = false;
    Complex landing = 0.0;
    bool blocked = false;
    double stop_potential = 0.0;  // potential of the last good point
};

struct RayOptions {
    int sharpness = 8;     // sub-steps per d-fold drop of potential
    int max_depth = 48;    // d-fold drops
    double land_tol = 1e-6;
    int land_window = 8;
};

RayTrace trace_external_ray(const Poly& p, RayAngle theta, const RayOptions& opt = {});

double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b);
double hausdorff(const std::vector<Point2>& a, const std::vector<Point2>& b);
double min_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);
double min_distance(const std::vector<Point2>& a, const std::vector<Point2>& b);
// brute-force serial versions
double hausdorff_reference(const std::vector<Complex>& a, const std::vector<Complex>& b);
double hausdorff_reference(const std::vector<Point2>& a, const std::vector<Point2>& b);
double min_distance_reference(const std::vector<Complex>& a, const std::vector<Complex>& b);
double min_distance_reference(const std::vector<Point2>& a, const std::vector<Point2>& b);
// largest distance from a point of a to the set b
double directed_hausdorff(const std::vector<Point2>& a, const std::vector<Point2>& b);

std::vector<Complex> dedup(const std::vector<Complex>& pts, double eps);
std::vector<Point2> dedup(const std::vector<Point2>& pts, double eps);

enum class Connectivity { Connected, Disconnected, Inconclusive };
const char* to_string(Connectivity c);

struct ConnectivityResult {
    Connectivity verdict = Connectivity::Inconclusive;
    std::vector<Complex> critical_points;
    std::vector<bool> escaped;
};

ConnectivityResult connectivity_test(const Poly& p, int maxiter = 2000, double radius = 0.0);

// Sample of the base Julia set from a backward random walk started at a
// repelling fixed point. next[i] is the index of p(points[i]) (points[0] is
// the seed and maps to itself), so base orbits of samples are exact reads.
struct BaseSample {
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    std::vector<Complex> points;
    std::vector<std::size_t> next;

    std::size_t size() const { return points.size(); }
    static BaseSample from_points(std::vector<Complex> pts);
    // p^0(z_i), ..., p^len(z_i): table reads where available, else iteration of p
    std::vector<Complex> orbit(const Poly& p, std::size_t i, int len) const;
    // true when the orbit of sample i never leaves the seed point
    std::vector<bool> seed_fixed() const;
};

BaseSample julia_walk(const Poly& p, std::size_t count, std::uint64_t seed);
// repelling fixed point with the largest multiplier
Complex repelling_fixed_point(const Poly& p);

}  // namespace skewlab

namespace skewlab {

// Fate of one critical point of a base polynomial.
struct CriticalOrbitInfo {
    Complex point;
    int multiplicity = 1;
    bool escaped = false;
    int escape_step = -1;
    bool attracting = false;        // converges to an attracting cycle
    int period = 0;                 // of that cycle
    Complex multiplier = 0.0;
    std::vector<Complex> cycle;
};

std::vector<CriticalOrbitInfo> base_critical_orbits(const Poly& p, int maxiter = 4000);

}  // namespace skewlab
