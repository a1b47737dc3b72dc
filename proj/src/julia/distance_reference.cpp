#include <cmath>
#include <limits>

#include "skewlab/errors.hpp"
#include "skewlab/julia.hpp"

namespace skewlab {

namespace {

double dist(Complex a, Complex b) { return std::abs(a - b); }
double dist(const Point2& a, const Point2& b) { return distance(a, b); }

template <class T>
double directed_ref(const std::vector<T>& a, const std::vector<T>& b) {
    double worst = 0.0;
    for (const auto& x : a) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& y : b) best = std::min(best, dist(x, y));
        worst = std::max(worst, best);
    }
    return worst;
}

template <class T>
double haus_ref(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.empty() || b.empty()) throw EmptyCloud("hausdorff of an empty cloud");
    return std::max(directed_ref(a, b), directed_ref(b, a));
}

template <class T>
double min_ref(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.empty() || b.empty()) throw EmptyCloud("min_distance of an empty cloud");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& x : a)
        for (const auto& y : b) best = std::min(best, dist(x, y));
    return best;
}

}  // namespace

double hausdorff_reference(const std::vector<Complex>& a, const std::vector<Complex>& b) { return haus_ref(a, b); }
double hausdorff_reference(const std::vector<Point2>& a, const std::vector<Point2>& b) { return haus_ref(a, b); }
double min_distance_reference(const std::vector<Complex>& a, const std::vector<Complex>& b) { return min_ref(a, b); }
double min_distance_reference(const std::vector<Point2>& a, const std::vector<Point2>& b) { return min_ref(a, b); }

}  // namespace skewlab
