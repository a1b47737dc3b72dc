#include <algorithm>
#include <cmath>
#include <numeric>

#include "skewlab/errors.hpp"
#include "skewlab/invariant.hpp"

namespace skewlab {

namespace {

struct Jet {
    Complex lambda = 1.0, mu = 1.0, c = 0.0;  // D f^k = [[lambda, 0], [c, mu]]
};

Jet cycle_jet(const SkewProduct& f, Point2 x, int k) {
    Jet j;
    for (int s = 0; s < k; ++s) {
        Complex pz = f.base().derivative()(x.z);
        Complex qz = f.fiber().d_dz(x.z, x.w), qw = f.fiber().d_dw(x.z, x.w);
        j.c = qz * j.lambda + qw * j.c;
        j.lambda *= pz;
        j.mu *= qw;
        x = f(x);
    }
    return j;
}

Complex polish_base(const Poly& p, Complex z, int k) {
    for (int it = 0; it < 50; ++it) {
        Complex v = z, d = 1.0;
        for (int s = 0; s < k; ++s) {
            auto [pv, pd] = poly_eval_d(p, v);
            d *= pd;
            v = pv;
        }
        if (d == Complex(1.0)) break;
        Complex step = (v - z) / (d - 1.0);
        z -= step;
        if (std::abs(step) < 1e-16 * (1.0 + std::abs(z))) break;
    }
    return z;
}

int minimal_period(const SkewProduct& f, Point2 x, int k, double tol) {
    Point2 y = x;
    for (int j = 1; j <= k; ++j) {
        y = f(y);
        if (distance(y, x) < tol * (1.0 + std::abs(x.z) + std::abs(x.w))) return j;
    }
    return 0;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
    void unite(int a, int b) {
        a = find(a), b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

bool lex_less(const Point2& a, const Point2& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    if (a.z.imag() != b.z.imag()) return a.z.imag() < b.z.imag();
    if (a.w.real() != b.w.real()) return a.w.real() < b.w.real();
    return a.w.imag() < b.w.imag();
}

}  // namespace

std::vector<Point2> SaddleSetEstimate::component_points(int index) const {
    std::vector<Point2> out;
    for (const auto& s : saddles)
        if (s.component_index == index) out.push_back(s.location);
    return out;
}

SaddleSetEstimate find_saddles(const SkewProduct& f, int max_period, double cluster_eps) {
    if (max_period < 1 || max_period > kMaxSaddlePeriod)
        throw DegreeOverflow("max_period must lie in [1, " + std::to_string(kMaxSaddlePeriod) + "]");
    const Poly& p = f.base();
    SaddleSetEstimate est;
    est.cluster_eps = cluster_eps;
    std::vector<std::vector<Point2>> cycles;
    std::vector<Jet> jets;
    std::vector<int> periods;

    Poly pk = p;
    for (int k = 1; k <= max_period; ++k) {
        if (k > 1) pk = p.compose(pk);
        for (const auto& r : poly_roots(pk - Poly({0.0, 1.0}))) {
            Complex z = polish_base(p, r.value, k);
            Complex base_mult = 1.0;
            {
                Complex v = z;
                for (int s = 0; s < k; ++s) {
                    base_mult *= p.derivative()(v);
                    v = p(v);
                }
            }
            if (!(std::abs(base_mult) > 1.0 + 1e-9)) continue;
            // Q_z^k as a polynomial in w
            Poly Q = Poly({0.0, 1.0});
            Complex zs = z;
            for (int s = 0; s < k; ++s) {
                Q = f.fiber().in_w(zs).compose(Q);
                zs = p(zs);
            }
            for (const auto& wr : poly_roots(Q - Poly({0.0, 1.0}))) {
                Complex w = wr.value;
                for (int it = 0; it < 50; ++it) {
                    auto [v, d] = poly_eval_d(Q, w);
                    if (d == Complex(1.0)) break;
                    Complex step = (v - w) / (d - 1.0);
                    w -= step;
                    if (std::abs(step) < 1e-16 * (1.0 + std::abs(w))) break;
                }
                Point2 x{z, w};
                if (minimal_period(f, x, k, 1e-9) != k) continue;
                Jet jet = cycle_jet(f, x, k);
                if (!(std::abs(jet.mu) < 1.0 - 1e-9)) continue;
                bool known = false;
                for (const auto& cyc : cycles)
                    for (const auto& y : cyc) known |= distance(x, y) < 1e-8 * (1.0 + std::abs(z) + std::abs(w));
                if (known) continue;
                std::vector<Point2> cyc{x};
                for (int s = 1; s < k; ++s) cyc.push_back(f(cyc.back()));
                cycles.push_back(std::move(cyc));
                jets.push_back(jet);
                periods.push_back(k);
            }
        }
    }

    // stable order: cycles by their lexicographically smallest point
    std::vector<std::size_t> order(cycles.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto key = [&](std::size_t c) { return *std::min_element(cycles[c].begin(), cycles[c].end(), lex_less); };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lex_less(key(a), key(b)); });
    for (std::size_t ci = 0; ci < order.size(); ++ci) {
        std::size_t c = order[ci];
        auto pts = cycles[c];
        std::rotate(pts.begin(), std::min_element(pts.begin(), pts.end(), lex_less), pts.end());
        for (const auto& x : pts) {
            SaddlePoint s;
            s.location = x;
            s.period = periods[c];
            s.base_multiplier = jets[c].lambda;
            s.fiber_multiplier = jets[c].mu;
            s.cycle_index = static_cast<int>(ci);
            est.saddles.push_back(s);
        }
    }
    est.cycle_count = static_cast<int>(order.size());

    const std::size_t n = est.saddles.size();
    UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (est.saddles[i].cycle_index == est.saddles[j].cycle_index ||
                distance(est.saddles[i].location, est.saddles[j].location) <= 10.0 * cluster_eps)
                uf.unite(static_cast<int>(i), static_cast<int>(j));
    std::vector<int> label(n, 0);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        int r = uf.find(static_cast<int>(i));
        if (label[r] == 0) label[r] = ++next;
        est.saddles[i].component_index = label[r];
    }
    est.component_count = next;
    return est;
}

double polyline_distance(const std::vector<Point2>& line, const Point2& x) {
    if (line.empty()) throw EmptyCloud("empty polyline");
    double best = distance(line.front(), x);
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
        const Point2& a = line[i];
        const Point2& b = line[i + 1];
        Complex dz = b.z - a.z, dw = b.w - a.w;
        double len2 = std::norm(dz) + std::norm(dw);
        double t = 0.0;
        if (len2 > 0.0) t = std::clamp((std::real(std::conj(dz) * (x.z - a.z)) + std::real(std::conj(dw) * (x.w - a.w))) / len2, 0.0, 1.0);
        best = std::min(best, distance(Point2{a.z + t * dz, a.w + t * dw}, x));
    }
    return best;
}

UnstableArc unstable_arc(const SkewProduct& f, const SaddlePoint& saddle, double seed_len, int growth_iters,
                         double max_step, std::size_t max_points, int side) {
    if (!(seed_len > 0.0) || growth_iters < 0 || !(max_step > 0.0))
        throw DomainError("unstable_arc needs seed_len > 0, growth_iters >= 0, max_step > 0");
    const int k = saddle.period;
    Jet jet = cycle_jet(f, saddle.location, k);
    if (std::abs(jet.lambda - jet.mu) < 1e-8) throw ResonanceError("|lambda_base - dq/dw| < 1e-8 at the saddle");
    UnstableArc arc;
    arc.anchor = saddle;
    arc.direction = jet.c / (jet.lambda - jet.mu);
    arc.growth_iters = growth_iters;

    const double u = (side < 0 ? -1.0 : 1.0) * seed_len / std::hypot(1.0, std::abs(arc.direction));
    const Point2 x0 = saddle.location;
    auto image = [&](double t) -> std::optional<Point2> {
        Point2 x{x0.z + t * u, x0.w + t * u * arc.direction};
        for (int g = 0; g < growth_iters * k; ++g) {
            x = f(x);
            if (f.escaped(x)) return std::nullopt;
        }
        return x;
    };

    std::vector<double> ts;
    std::vector<Point2> pts;
    const int seed_points = 17;
    for (int j = 0; j < seed_points; ++j) {
        double t = static_cast<double>(j) / (seed_points - 1);
        auto y = image(t);
        if (!y) break;
        ts.push_back(t);
        pts.push_back(*y);
    }
    // refine until consecutive points are max_step apart; a midpoint that
    // escapes cuts the arc there
    for (int pass = 0; pass < 64 && !ts.empty(); ++pass) {
        std::vector<double> nts{ts.front()};
        std::vector<Point2> npts{pts.front()};
        bool refined = false, cut = false;
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
            if (distance(pts[i], pts[i + 1]) > max_step && npts.size() + (ts.size() - i) < max_points &&
                ts[i + 1] - ts[i] > 1e-15) {
                double tm = 0.5 * (ts[i] + ts[i + 1]);
                auto y = image(tm);
                if (!y) {
                    cut = true;
                    break;
                }
                nts.push_back(tm);
                npts.push_back(*y);
                refined = true;
            }
            nts.push_back(ts[i + 1]);
            npts.push_back(pts[i + 1]);
        }
        ts = std::move(nts);
        pts = std::move(npts);
        if (!refined && !cut) break;
    }
    arc.points = std::move(pts);
    return arc;
}

}  // namespace skewlab
