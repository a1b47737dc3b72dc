#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "../invariant/base_cursor.hpp"
#include "skewlab/certify.hpp"
#include "skewlab/errors.hpp"

namespace skewlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_point(Complex z) {
    std::ostringstream os;
    os.precision(17);
    os << '(' << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
    return os.str();
}

// evenly spaced indices of [0, n), at most m of them
std::vector<std::size_t> spread(std::size_t n, std::size_t m) {
    std::vector<std::size_t> out;
    if (n == 0 || m == 0) return out;
    if (n <= m) {
        for (std::size_t i = 0; i < n; ++i) out.push_back(i);
        return out;
    }
    for (std::size_t k = 0; k < m; ++k) out.push_back(k * n / m);
    return out;
}

struct ReachStats {
    std::size_t considered = 0, excluded = 0, unreached = 0;
    int n_obs = 0;
    Complex witness = 0.0;
};

void reach_scan(const Poly& p, const BaseSample& base, double r, int N_max, ReachStats& st) {
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (std::abs(base.points[i] - 2.0) <= r) {
            ++st.excluded;
            continue;
        }
        ++st.considered;
        detail::BaseCursor cur(base, p, i);
        int found = -1;
        for (int j = 0; j < N_max; ++j, cur.step()) {
            if (cur.z().real() <= 1.0) {
                found = j;
                break;
            }
        }
        if (found < 0) {
            if (st.unreached++ == 0) st.witness = base.points[i];
        } else {
            st.n_obs = std::max(st.n_obs, found);
        }
    }
}

LemmaReport reach_report(const ReachStats& st, double r, int N_max) {
    LemmaReport rep;
    rep.lemma_id = "reach_left";
    rep.params.r = r;
    rep.params.N = st.n_obs + 1;
    std::ostringstream ev;
    if (st.considered == 0) {
        ev << "vacuous: no samples outside B(2," << r << ") (" << st.excluded << " excluded)";
        rep.set_margin(N_max);
    } else if (st.unreached > 0) {
        ev << st.unreached << " of " << st.considered << " samples never reach Re z <= 1 within " << N_max
           << " steps, e.g. z = " << fmt_point(st.witness);
        rep.set_margin(-static_cast<double>(st.unreached));
    } else {
        ev << st.considered << " samples outside B(2," << r << "), " << st.excluded << " inside; N_obs = " << st.n_obs
           << " <= N_max - 1 = " << N_max - 1;
        rep.set_margin(N_max - st.n_obs);
    }
    rep.values = {{"N_obs", static_cast<double>(st.n_obs)},
                  {"considered", static_cast<double>(st.considered)},
                  {"excluded", static_cast<double>(st.excluded)},
                  {"unreached", static_cast<double>(st.unreached)}};
    rep.evidence = ev.str();
    return rep;
}

void check_reach_args(double r, int N_max) {
    if (!(r > 0.0)) throw PreconditionViolation("reach-left radius r must be positive");
    if (N_max < 1) throw PreconditionViolation("reach-left needs N_max >= 1");
}

}  // namespace

LemmaReport check_k_box(const Poly& p, double eps_n, const GridSpec& grid, int maxiter) {
    grid.validate();
    LemmaReport rep;
    rep.lemma_id = "k_box";
    rep.params.eps_n = eps_n;
    EscapeGrid g = filled_julia_base(p, grid, maxiter);
    double max_re = 0.0, max_im = 0.0;
    std::size_t count = 0;
    for (Complex z : bounded_pixels(g)) {
        ++count;
        max_re = std::max(max_re, std::abs(z.real()));
        max_im = std::max(max_im, std::abs(z.imag()));
    }
    const double tol = grid.pixel_diagonal();
    double x_gap = 2.5 + tol - max_re, y_gap = eps_n + tol - max_im, e_gap = 0.25 - eps_n;
    std::ostringstream ev;
    ev << count << " bounded pixels; max |Re| = " << max_re << ", max |Im| = " << max_im << " (pixel " << tol
       << "); eps_n = " << eps_n << (e_gap > 0 ? " <= 1/4" : " > 1/4");
    if (count == 0) ev << "; empty bounded set";
    rep.evidence = ev.str();
    rep.values = {{"bounded", static_cast<double>(count)},
                  {"max_re", max_re},
                  {"max_im", max_im},
                  {"eps_n", eps_n},
                  {"pixel", tol}};
    rep.set_margin(std::min({x_gap, y_gap, e_gap}));
    return rep;
}

LemmaReport check_k_box(const ExampleInstance& ex, const GridSpec& grid, int maxiter) {
    auto rep = check_k_box(ex.f.base(), ex.epsilon, grid, maxiter);
    rep.params.n = ex.n;
    return rep;
}

LemmaReport check_reach_left(const Poly& p, const BaseSample& base, double r, int N_max) {
    check_reach_args(r, N_max);
    ReachStats st;
    reach_scan(p, base, r, N_max, st);
    return reach_report(st, r, N_max);
}

LemmaReport check_reach_left(const ExampleInstance& ex, double r, int N_max) {
    check_reach_args(r, N_max);
    ReachStats st;
    reach_scan(ex.f.base(), ex.walk, r, N_max, st);
    reach_scan(ex.f.base(), ex.tree, r, N_max, st);
    auto rep = reach_report(st, r, N_max);
    rep.params.n = ex.n;
    rep.params.eps_n = ex.epsilon;
    return rep;
}

LemmaReport check_escape_empirical(const ExampleInstance& ex, double r, double delta, int N, std::size_t max_base,
                                   int nu, int nv) {
    auto constant = check_escape_constant(N, delta, ex.epsilon);
    if (!constant.pass)
        throw PreconditionViolation("escape constant fails for these (N, delta, eps): " + constant.evidence);
    if (!(r > 0.0) || !(delta > 0.0)) throw PreconditionViolation("escape check needs r > 0 and delta > 0");
    if (nu < 2 || nv < 2) throw DomainError("escape w-grid needs at least 2 points per side");

    LemmaReport rep;
    rep.lemma_id = "escape_empirical";
    rep.params = {ex.n, r, delta, 0.0, ex.epsilon, N};

    const double vcap = std::sqrt(6.0) / 10.0, eps = ex.epsilon;
    const int halfv = nv / 2;
    std::vector<Complex> ws;
    for (int i = 0; i < nu; ++i)
        for (int k = 0; k < halfv; ++k) {
            double u = -2.5 + 5.0 * i / (nu - 1), v = delta * (k + 1) / (halfv + 1);
            ws.emplace_back(u, v);
            ws.emplace_back(u, -v);
        }

    std::size_t zcount = 0, tested = 0, induction_checks = 0, induction_fail = 0, fast_path = 0, hits = 0;
    double min_abs = kInf;
    Complex wit_z = 0.0, wit_w = 0.0;
    for (const BaseSample* base : {&ex.walk, &ex.tree}) {
        std::vector<std::size_t> outside;
        for (std::size_t i = 0; i < base->size(); ++i)
            if (std::abs(base->points[i] - 2.0) > r) outside.push_back(i);
        for (std::size_t k : spread(outside.size(), max_base)) {
            std::size_t i = outside[k];
            auto zs = base->orbit(ex.f.base(), i, N);
            ++zcount;
            for (Complex w0 : ws) {
                ++tested;
                Complex w = w0;
                bool outside_disk = false;
                for (int s = 0; s < N && s + 1 < static_cast<int>(zs.size()); ++s) {
                    bool regime = std::abs(w.real()) <= 2.5 && std::abs(w.imag()) < vcap;
                    Complex next = ex.f.fiber()(zs[s], w);
                    if (regime && !outside_disk) {
                        ++induction_checks;
                        if (!(std::abs(next.imag()) < 64.0 * std::abs(w.imag()) + 4.0 * eps)) ++induction_fail;
                    }
                    w = next;
                    if (!outside_disk && std::abs(w) > 2.5) {
                        outside_disk = true;
                        if (std::abs(w.real()) > 2.5) ++fast_path;
                    }
                    if (std::abs(w) > kEscapeSentinel) break;
                }
                double a = std::min(std::abs(w), kEscapeSentinel);
                if (a < min_abs) min_abs = a;
                if (!(a > 2.5)) {
                    if (hits++ == 0) {
                        wit_z = base->points[i];
                        wit_w = w0;
                    }
                }
            }
        }
    }

    std::ostringstream ev;
    ev << zcount << " base points outside B(2," << r << ") x " << ws.size() << " w-grid points; min |Q^N(w)| = "
       << min_abs << "; induction checked " << induction_checks << " steps, " << induction_fail << " violations; "
       << fast_path << " orbits left through |Re w| > 5/2";
    if (hits > 0) ev << "; counterexample z = " << fmt_point(wit_z) << ", w = " << fmt_point(wit_w);
    rep.evidence = ev.str();
    rep.values = {{"min_abs", min_abs},
                  {"tested", static_cast<double>(tested)},
                  {"counterexamples", static_cast<double>(hits)},
                  {"induction_fail", static_cast<double>(induction_fail)}};
    if (zcount == 0) {
        rep.evidence = "vacuous: no base samples outside B(2,r)";
        rep.set_margin(kInf);
    } else if (hits > 0 || induction_fail > 0) {
        rep.set_margin(-static_cast<double>(hits + induction_fail));
    } else {
        rep.set_margin(min_abs - 2.5);
    }
    return rep;
}

LemmaReport check_critical_disjoint(const ExampleInstance& ex, double delta, int nu, int nv, int maxiter,
                                    std::size_t max_walk) {
    if (!(delta > 0.0 && delta < 0.25)) throw PreconditionViolation("critical strip height must lie in (0, 1/4)");
    if (nu < 1 || nv < 1 || maxiter < 1) throw DomainError("strip grid and maxiter must be positive");
    LemmaReport rep;
    rep.lemma_id = "critical_disjoint";
    rep.params.n = ex.n;
    rep.params.delta = delta;
    rep.params.eps_n = ex.epsilon;
    const GridSpec strip = GridSpec::box(-0.25, 0.25, -delta, delta, nu, nv);
    const Complex beta(ex.beta_d, 0.0);

    std::size_t fibers = 0, off_bad = 0, bad_fibers = 0;
    int latest = 0;
    Complex wit = 0.0;
    auto scan = [&](const BaseSample& base, const std::vector<std::size_t>& idx) {
        for (std::size_t i : idx) {
            if (base.points[i] == beta) continue;
            ++fibers;
            EscapeGrid g = fiber_filled_julia(ex.f, base.orbit(ex.f.base(), i, maxiter), strip, maxiter);
            std::size_t b = g.count_bounded();
            if (b > 0) {
                if (bad_fibers++ == 0) wit = base.points[i];
                off_bad += b;
            }
            for (auto it : g.iters)
                if (it != EscapeGrid::kBounded) latest = std::max(latest, static_cast<int>(it));
        }
    };
    std::vector<std::size_t> all_tree(ex.tree.size());
    for (std::size_t i = 0; i < all_tree.size(); ++i) all_tree[i] = i;
    scan(ex.tree, all_tree);
    scan(ex.walk, spread(ex.walk.size(), max_walk));

    std::vector<Complex> fixed(static_cast<std::size_t>(maxiter) + 1, beta);
    EscapeGrid gb = fiber_filled_julia(ex.f, fixed, strip, maxiter);
    std::size_t on_bounded = gb.count_bounded(), on_total = gb.grid.size();

    std::ostringstream ev;
    ev << "strip |Re w| <= 1/4, |Im w| <= " << delta << " on a " << nu << "x" << nv << " grid; " << fibers
       << " fibers over z != beta: " << bad_fibers << " with bounded strip pixels";
    if (bad_fibers > 0) ev << " (" << off_bad << " pixels, e.g. z = " << fmt_point(wit) << ")";
    ev << ", latest escape at step " << latest << " of " << maxiter << "; beta fiber: " << on_bounded << "/"
       << on_total << " strip pixels bounded";
    rep.evidence = ev.str();
    rep.values = {{"fibers", static_cast<double>(fibers)},
                  {"off_bounded", static_cast<double>(off_bad)},
                  {"beta_bounded", static_cast<double>(on_bounded)},
                  {"beta_total", static_cast<double>(on_total)},
                  {"latest_escape", static_cast<double>(latest)}};
    std::size_t bad = off_bad + (on_total - on_bounded);
    if (bad > 0)
        rep.set_margin(-static_cast<double>(bad));
    else
        rep.set_margin(static_cast<double>(maxiter - latest) / maxiter);
    return rep;
}

}  // namespace skewlab
