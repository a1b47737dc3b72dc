#include "pixel_kernels.hpp"
#include "skewlab/errors.hpp"

namespace skewlab {

EscapeGrid filled_julia_base_reference(const Poly& p, const GridSpec& grid, int maxiter, double radius) {
    grid.validate();
    const double r = radius > 0.0 ? radius : default_base_radius(p);
    EscapeGrid out{grid, maxiter, std::vector<std::uint32_t>(grid.size())};
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            out.iters[static_cast<std::size_t>(j) * grid.nx + i] =
                detail::base_escape(p.coeffs(), grid.pixel(i, j), maxiter, r * r);
    return out;
}

EscapeGrid fiber_filled_julia_reference(const SkewProduct& f, const std::vector<Complex>& base_orbit,
                                       const GridSpec& grid, int maxiter) {
    grid.validate();
    auto plan = detail::make_fiber_plan(f, base_orbit, maxiter);
    EscapeGrid out{grid, maxiter, std::vector<std::uint32_t>(grid.size())};
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            out.iters[static_cast<std::size_t>(j) * grid.nx + i] = detail::fiber_escape(plan, grid.pixel(i, j));
    return out;
}

}  // namespace skewlab
