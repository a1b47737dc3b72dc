#pragma once

// Saddle sets, stable-set labels of the critical locus, postcritical and
// J_2 samples, accumulation-set estimators and unstable arcs.

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "skewlab/dynamics.hpp"
#include "skewlab/julia.hpp"

namespace skewlab {

struct SaddlePoint {
    Point2 location;
    int period = 1;
    Complex base_multiplier = 0.0;   // (p^period)'(z)
    Complex fiber_multiplier = 0.0;  // d/dw Q_z^period (w)
    int component_index = 0;         // 1-based
    int cycle_index = 0;             // points of one cycle share it
};

struct SaddleSetEstimate {
    std::vector<SaddlePoint> saddles;
    int component_count = 0;
    int cycle_count = 0;
    double cluster_eps = 0.01;

    std::vector<Point2> component_points(int index) const;
};

inline constexpr int kMaxSaddlePeriod = 3;

// Saddle cycles of exact period <= max_period. Components are single-linkage
// clusters at 10 * cluster_eps, merged along cycles.
SaddleSetEstimate find_saddles(const SkewProduct& f, int max_period = 1, double cluster_eps = 0.01);

// A critical point (z, w) of the fiber map over base sample base_index.
struct CriticalSample {
    std::size_t base_index = 0;
    Point2 point;
};

std::vector<CriticalSample> critical_samples(const SkewProduct& f, const BaseSample& base);

struct StableClassification {
    static constexpr int kUnresolved = -1;

    std::vector<int> labels;                   // 0 escaped, i >= 1 captured by component i
    std::vector<std::optional<int>> entry_time;  // escape time or start of the capture window
    int horizon = 0;
    double tol = 0.0;

    int count(int label) const;
};

// Capture by component i: the vertical distance |w_k - w_s| to a saddle s of
// component i stays below tol for `window` consecutive steps.
StableClassification classify_critical(const SkewProduct& f, const SaddleSetEstimate& saddles, const BaseSample& base,
                                       const std::vector<CriticalSample>& samples, int T = 2000, double tol = 1e-6,
                                       int window = 32);
StableClassification classify_critical_reference(const SkewProduct& f, const SaddleSetEstimate& saddles,
                                                 const BaseSample& base, const std::vector<CriticalSample>& samples,
                                                 int T = 2000, double tol = 1e-6, int window = 32);

// f^n(critical points over the given base points), 1 <= n <= n_max; orbits are
// cut at escape
std::vector<Point2> postcritical_sample(const SkewProduct& f, const BaseSample& base,
                                        const std::vector<std::size_t>& indices, int n_max);

struct J2Sample {
    std::vector<Point2> points;
    std::vector<std::size_t> fibers;  // base indices that produced a boundary
    std::size_t skipped = 0;          // fibers with an empty boundary
};

J2Sample j2_sample(const SkewProduct& f, const BaseSample& base, const std::vector<std::size_t>& indices,
                   const GridSpec& fiber_grid, int maxiter);
// J_z boundary over one base point, base orbit read from the sample table
std::vector<Complex> fiber_julia(const SkewProduct& f, const BaseSample& base, std::size_t index,
                                 const GridSpec& fiber_grid, int maxiter);

enum class Verdict { Pass, Fail, Inconclusive };
const char* to_string(Verdict v);

struct AxiomAOptions {
    GridSpec fiber_grid{0.0, 2.5, 128, 128};
    int maxiter = 200;
    int postcritical_steps = 16;
    std::size_t max_fibers = 64;  // fibers sampled for J_2 in each margin
    int base_maxiter = 4000;
};

struct AxiomAReport {
    Verdict verdict = Verdict::Inconclusive;
    bool base_hyperbolic = false;
    double margin_J = 0.0;
    double margin_A = std::numeric_limits<double>::infinity();  // no attracting cycle: vacuous
    double resolution = 0.0;    // margins at or below this are not resolved
    std::vector<CriticalOrbitInfo> base_critical;
    std::string detail;
};

// base_critical overrides the double-precision base critical orbit analysis
AxiomAReport axiom_a_check(const SkewProduct& f, const BaseSample& base_julia, const AxiomAOptions& opt = {},
                           const std::vector<CriticalOrbitInfo>* base_critical = nullptr);

enum class AccumulationKind { Pointwise, Componentwise, Full };
const char* to_string(AccumulationKind k);
AccumulationKind parse_accumulation_kind(const std::string& s);

struct AccumulationParams {
    int n_skip = 4;
    int n_tail = 32;
    double cluster_eps = 0.01;
    int horizon = 2000;  // orbits bounded this long count as non-escaping
};

struct Cluster {
    Point2 center;
    std::size_t count = 0;
};

struct AccumulationEstimate {
    AccumulationKind kind = AccumulationKind::Pointwise;
    AccumulationParams params;
    std::vector<Cluster> clusters;
    std::size_t contributing_samples = 0;
    std::size_t base_components = 0;  // Componentwise only
    double component_pixel = 0.0;     // Componentwise only

    std::vector<Point2> points() const;
};

// Leader clustering in a fixed (lexicographic) order of the points.
std::vector<Cluster> cluster_points(std::vector<Point2> pts, double eps);

// Pixel components of the base sample at 2-pixel adjacency.
std::vector<int> base_components(const BaseSample& base, double pixel, std::size_t* count = nullptr);

// Pointwise: window tails of orbits that stay bounded through the horizon.
// Full: bounded iterates in the window [n_skip, n_skip + n_tail] of all samples.
// Componentwise: base pixel components split by stable label; a piece with
// a non-escaping sample contributes the bounded window iterates of all its
// samples, a piece inside C_0 contributes nothing.
AccumulationEstimate estimate_accumulation(const SkewProduct& f, AccumulationKind kind, const BaseSample& base,
                                           const std::vector<CriticalSample>& samples, const AccumulationParams& params,
                                           const StableClassification* labels = nullptr, double component_pixel = 0.0);

struct UnstableArc {
    SaddlePoint anchor;
    Complex direction = 0.0;  // tangent (1, s)
    std::vector<Point2> points;
    int growth_iters = 0;
};

// One-sided arc of W^u from the saddle: the seed segment of length seed_len
// along (1, s), pushed forward growth_iters times by f^period with
// refinement to keep consecutive points within max_step. side = -1 grows
// the opposite half.
UnstableArc unstable_arc(const SkewProduct& f, const SaddlePoint& saddle, double seed_len, int growth_iters,
                         double max_step = 1e-3, std::size_t max_points = 200000, int side = 1);

// distance from x to the polyline
double polyline_distance(const std::vector<Point2>& line, const Point2& x);

}  // namespace skewlab
