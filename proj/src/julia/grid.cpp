#include <algorithm>
#include <cmath>
#include <numeric>

#include "pixel_kernels.hpp"
#include "skewlab/errors.hpp"

namespace skewlab {

GridSpec::GridSpec(Complex c, double hw, int nx_, int ny_)
    : center(c), half_width(hw), half_height(hw * ny_ / std::max(nx_, 1)), nx(nx_), ny(ny_) {
    validate();
}

GridSpec GridSpec::box(double xmin, double xmax, double ymin, double ymax, int nx, int ny) {
    GridSpec g;
    g.center = {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
    g.half_width = 0.5 * (xmax - xmin);
    g.half_height = 0.5 * (ymax - ymin);
    g.nx = nx;
    g.ny = ny;
    g.validate();
    return g;
}

void GridSpec::validate() const {
    if (nx < 2 || ny < 2) throw DomainError("grid needs at least 2x2 pixels");
    if (!(half_width > 0.0) || !(half_height > 0.0)) throw DomainError("grid extent must be positive");
}

std::size_t EscapeGrid::count_bounded() const {
    return static_cast<std::size_t>(std::count(iters.begin(), iters.end(), kBounded));
}

namespace detail {

FiberPlan make_fiber_plan(const SkewProduct& f, const std::vector<Complex>& base_orbit, int maxiter) {
    FiberPlan plan;
    plan.maxiter = maxiter;
    plan.r2 = f.fiber_radius() * f.fiber_radius();
    for (int k = 0; k < maxiter; ++k) {
        if (k >= static_cast<int>(base_orbit.size()))
            throw DomainError("base orbit shorter than maxiter");
        if (std::abs(base_orbit[k]) > f.base_radius()) {
            plan.base_escape = k;
            break;
        }
        plan.maps.push_back(f.fiber().in_w(base_orbit[k]).coeffs());
        // keep the full w-degree so Horner above sees a fixed layout
        plan.maps.back().resize(f.degree() + 1, 0.0);
    }
    if (plan.base_escape < 0 && maxiter < static_cast<int>(base_orbit.size()) &&
        std::abs(base_orbit[maxiter]) > f.base_radius())
        plan.base_escape = maxiter;
    return plan;
}

}  // namespace detail

std::vector<Complex> bounded_pixels(const EscapeGrid& g) {
    std::vector<Complex> out;
    for (int j = 0; j < g.grid.ny; ++j)
        for (int i = 0; i < g.grid.nx; ++i)
            if (g.bounded(i, j)) out.push_back(g.grid.pixel(i, j));
    return out;
}

std::vector<Complex> boundary_extract(const EscapeGrid& g) {
    const int nx = g.grid.nx, ny = g.grid.ny;
    std::vector<Complex> out;
    bool any = false;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            if (!g.bounded(i, j)) continue;
            any = true;
            bool edge = (i > 0 && !g.bounded(i - 1, j)) || (i + 1 < nx && !g.bounded(i + 1, j)) ||
                        (j > 0 && !g.bounded(i, j - 1)) || (j + 1 < ny && !g.bounded(i, j + 1));
            if (edge) out.push_back(g.grid.pixel(i, j));
        }
    }
    if (!any) throw EmptyBoundary("no bounded pixels");
    if (out.empty()) throw EmptyBoundary("bounded set has no interior-exterior transition on the grid");
    return out;
}

int bounded_component_count(const EscapeGrid& g) {
    const int nx = g.grid.nx, ny = g.grid.ny;
    std::vector<int> parent(g.grid.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            if (!g.bounded(i, j)) continue;
            int id = j * nx + i;
            if (i > 0 && g.bounded(i - 1, j)) parent[find(id)] = find(id - 1);
            if (j > 0 && g.bounded(i, j - 1)) parent[find(id)] = find(id - nx);
        }
    int n = 0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (g.bounded(i, j) && find(j * nx + i) == j * nx + i) ++n;
    return n;
}

}  // namespace skewlab
