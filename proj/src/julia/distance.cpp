#include <omp.h>

#include <cmath>
#include <unordered_map>

#include "kdtree.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/julia.hpp"

namespace skewlab {

namespace {

std::array<double, 2> vec(Complex z) { return {z.real(), z.imag()}; }
std::array<double, 4> vec(const Point2& p) { return {p.z.real(), p.z.imag(), p.w.real(), p.w.imag()}; }

template <int D, class T>
std::vector<std::array<double, D>> vecs(const std::vector<T>& pts) {
    std::vector<std::array<double, D>> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(vec(p));
    return out;
}

template <int D, class T>
double directed(const std::vector<T>& a, const std::vector<T>& b) {
    detail::KdTree<D> tree(vecs<D>(b));
    double worst = 0.0;
    const long long n = static_cast<long long>(a.size());
#pragma omp parallel for reduction(max : worst) schedule(static)
    for (long long i = 0; i < n; ++i) worst = std::max(worst, tree.nearest2(vec(a[i])));
    return std::sqrt(worst);
}

template <int D, class T>
double closest(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.empty() || b.empty()) throw EmptyCloud("min_distance of an empty cloud");
    const auto& small = a.size() < b.size() ? a : b;
    const auto& large = a.size() < b.size() ? b : a;
    detail::KdTree<D> tree(vecs<D>(large));
    double best = std::numeric_limits<double>::infinity();
    const long long n = static_cast<long long>(small.size());
#pragma omp parallel for reduction(min : best) schedule(static)
    for (long long i = 0; i < n; ++i) best = std::min(best, tree.nearest2(vec(small[i])));
    return std::sqrt(best);
}

template <int D, class T>
double haus(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.empty() || b.empty()) throw EmptyCloud("hausdorff of an empty cloud");
    return std::max(directed<D>(a, b), directed<D>(b, a));
}

}  // namespace

double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) { return haus<2>(a, b); }
double hausdorff(const std::vector<Point2>& a, const std::vector<Point2>& b) { return haus<4>(a, b); }
double min_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) { return closest<2>(a, b); }
double min_distance(const std::vector<Point2>& a, const std::vector<Point2>& b) { return closest<4>(a, b); }

double directed_hausdorff(const std::vector<Point2>& a, const std::vector<Point2>& b) {
    if (a.empty() || b.empty()) throw EmptyCloud("directed hausdorff of an empty cloud");
    return directed<4>(a, b);
}

namespace {

template <class T, class Key>
std::vector<T> dedup_impl(const std::vector<T>& pts, double eps, Key key) {
    if (!(eps > 0.0)) return pts;
    std::unordered_map<std::string, char> seen;
    std::vector<T> out;
    for (const auto& p : pts)
        if (seen.emplace(key(p), 0).second) out.push_back(p);
    return out;
}

std::string cell(double x, double eps) { return std::to_string(static_cast<long long>(std::floor(x / eps))); }

}  // namespace

// one representative per eps-cell
std::vector<Complex> dedup(const std::vector<Complex>& pts, double eps) {
    return dedup_impl(pts, eps, [eps](Complex z) { return cell(z.real(), eps) + ',' + cell(z.imag(), eps); });
}

std::vector<Point2> dedup(const std::vector<Point2>& pts, double eps) {
    return dedup_impl(pts, eps, [eps](const Point2& p) {
        return cell(p.z.real(), eps) + ',' + cell(p.z.imag(), eps) + ',' + cell(p.w.real(), eps) + ',' +
               cell(p.w.imag(), eps);
    });
}

}  // namespace skewlab
