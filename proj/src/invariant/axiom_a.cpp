#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "base_cursor.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/invariant.hpp"

namespace skewlab {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        default: return "INCONCLUSIVE";
    }
}

std::vector<Complex> fiber_julia(const SkewProduct& f, const BaseSample& base, std::size_t index,
                                 const GridSpec& fiber_grid, int maxiter) {
    auto orbit = base.orbit(f.base(), index, maxiter);
    return boundary_extract(fiber_filled_julia(f, orbit, fiber_grid, maxiter));
}

J2Sample j2_sample(const SkewProduct& f, const BaseSample& base, const std::vector<std::size_t>& indices,
                   const GridSpec& fiber_grid, int maxiter) {
    if (base.size() == 0 || indices.empty()) throw EmptyCloud("j2_sample needs base samples");
    J2Sample out;
    for (std::size_t i : indices) {
        try {
            for (Complex w : fiber_julia(f, base, i, fiber_grid, maxiter)) out.points.push_back({base.points[i], w});
            out.fibers.push_back(i);
        } catch (const EmptyBoundary&) {
            ++out.skipped;
        }
    }
    return out;
}

namespace {

struct Margin {
    double value = std::numeric_limits<double>::infinity();
    std::size_t postcritical = 0, fibers = 0, skipped = 0;
};

// postcritical points over `starts` against J_2 over the fibers those
// orbits visit
Margin disjointness_margin(const SkewProduct& f, const BaseSample& base, const std::vector<std::size_t>& starts,
                           const AxiomAOptions& opt) {
    Margin m;
    std::vector<std::pair<std::size_t, Point2>> orbit_pts;
    std::set<std::size_t> visited;
    for (std::size_t i : starts) {
        for (const auto& r : critical_points_over(f, base.points[i])) {
            detail::BaseCursor cur(base, f.base(), i);
            Complex w = r.value;
            for (int n = 1; n <= opt.postcritical_steps; ++n) {
                w = f.fiber()(cur.z(), w);
                cur.step();
                if (cur.index() == BaseSample::kNone) break;
                Point2 x{cur.z(), w};
                if (f.escaped(x)) break;
                orbit_pts.push_back({cur.index(), x});
                visited.insert(cur.index());
            }
        }
    }
    // at most max_fibers fibers, evenly spread over the visited ones
    std::set<std::size_t> fibers;
    {
        std::vector<std::size_t> v(visited.begin(), visited.end());
        const std::size_t keep = std::min(v.size(), std::max<std::size_t>(1, opt.max_fibers));
        for (std::size_t k = 0; k < keep; ++k) fibers.insert(v[k * v.size() / keep]);
    }
    std::vector<Point2> post;
    for (const auto& [idx, x] : orbit_pts)
        if (fibers.count(idx)) post.push_back(x);
    m.postcritical = post.size();
    if (post.empty()) return m;
    auto j2 = j2_sample(f, base, {fibers.begin(), fibers.end()}, opt.fiber_grid, opt.maxiter);
    m.fibers = j2.fibers.size();
    m.skipped = j2.skipped;
    if (!j2.points.empty()) m.value = min_distance(post, j2.points);
    return m;
}

}  // namespace

AxiomAReport axiom_a_check(const SkewProduct& f, const BaseSample& base_julia, const AxiomAOptions& opt,
                           const std::vector<CriticalOrbitInfo>* base_critical) {
    if (!is_regular(f).regular) throw PreconditionViolation("axiom_a_check needs a regular skew product");
    if (base_julia.size() == 0) throw EmptyCloud("axiom_a_check needs base Julia samples");
    AxiomAReport rep;
    rep.resolution = opt.fiber_grid.pixel_diagonal();
    rep.base_critical = base_critical ? *base_critical : base_critical_orbits(f.base(), opt.base_maxiter);
    std::ostringstream detail;

    bool resolved = true;
    rep.base_hyperbolic = true;
    for (const auto& c : rep.base_critical) {
        if (c.escaped || c.attracting) continue;
        rep.base_hyperbolic = false;
        resolved = false;
        detail << "critical point " << c.point.real() << (c.point.imag() < 0 ? "" : "+") << c.point.imag()
               << "i neither escapes nor converges to an attracting cycle; ";
    }
    if (!resolved) {
        rep.verdict = Verdict::Inconclusive;
        rep.margin_J = std::numeric_limits<double>::quiet_NaN();
        rep.margin_A = std::numeric_limits<double>::quiet_NaN();
        rep.detail = detail.str();
        return rep;
    }

    // (b) over J_p
    std::vector<std::size_t> starts(base_julia.size());
    for (std::size_t i = 0; i < starts.size(); ++i) starts[i] = i;
    Margin mj = disjointness_margin(f, base_julia, starts, opt);
    rep.margin_J = mj.value;
    detail << "J: " << mj.postcritical << " postcritical points over " << mj.fibers << " fibers (" << mj.skipped
           << " empty); ";

    // (c) over the attracting cycles of p
    std::vector<Complex> cyc_pts;
    std::vector<std::size_t> cyc_next;
    for (const auto& c : rep.base_critical) {
        if (!c.attracting) continue;
        bool dup = false;
        for (Complex z : cyc_pts)
            for (Complex y : c.cycle) dup |= std::abs(y - z) < 1e-6;
        if (dup) continue;
        std::size_t first = cyc_pts.size();
        for (std::size_t k = 0; k < c.cycle.size(); ++k) {
            cyc_pts.push_back(c.cycle[k]);
            cyc_next.push_back(first + (k + 1) % c.cycle.size());
        }
    }
    if (!cyc_pts.empty()) {
        BaseSample cyc = BaseSample::from_points(cyc_pts);
        cyc.next = cyc_next;
        std::vector<std::size_t> all(cyc.size());
        for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
        Margin ma = disjointness_margin(f, cyc, all, opt);
        rep.margin_A = ma.value;
        detail << "A: " << ma.postcritical << " postcritical points over " << ma.fibers << " fibers (" << ma.skipped
               << " empty)";
    } else {
        detail << "A: no attracting cycle";
    }

    rep.verdict = (rep.margin_J > rep.resolution && rep.margin_A > rep.resolution) ? Verdict::Pass : Verdict::Fail;
    rep.detail = detail.str();
    return rep;
}

}  // namespace skewlab
