#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <unordered_map>

#include "base_cursor.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/invariant.hpp"

namespace skewlab {

const char* to_string(AccumulationKind k) {
    switch (k) {
        case AccumulationKind::Pointwise: return "pt";
        case AccumulationKind::Componentwise: return "cc";
        default: return "full";
    }
}

AccumulationKind parse_accumulation_kind(const std::string& s) {
    if (s == "pt" || s == "pointwise") return AccumulationKind::Pointwise;
    if (s == "cc" || s == "componentwise") return AccumulationKind::Componentwise;
    if (s == "full") return AccumulationKind::Full;
    throw ConfigError("unknown accumulation kind '" + s + "' (expected pt, cc or full)");
}

std::vector<Point2> AccumulationEstimate::points() const {
    std::vector<Point2> out;
    out.reserve(clusters.size());
    for (const auto& c : clusters) out.push_back(c.center);
    return out;
}

namespace {

using Cell = std::array<long long, 4>;

struct CellHash {
    std::size_t operator()(const Cell& c) const {
        std::size_t h = 1469598103934665603ull;
        for (long long v : c) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
        return h;
    }
};

Cell cell_of(const Point2& p, double eps) {
    return {static_cast<long long>(std::floor(p.z.real() / eps)), static_cast<long long>(std::floor(p.z.imag() / eps)),
            static_cast<long long>(std::floor(p.w.real() / eps)), static_cast<long long>(std::floor(p.w.imag() / eps))};
}

bool lex_less(const Point2& a, const Point2& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    if (a.z.imag() != b.z.imag()) return a.z.imag() < b.z.imag();
    if (a.w.real() != b.w.real()) return a.w.real() < b.w.real();
    return a.w.imag() < b.w.imag();
}

struct SampleTail {
    std::vector<Point2> window;
    bool escaped = false;  // within the horizon
};

SampleTail sample_tail(const SkewProduct& f, const BaseSample& base, const CriticalSample& s,
                       const AccumulationParams& prm) {
    SampleTail out;
    detail::BaseCursor cur(base, f.base(), s.base_index);
    Complex w = s.point.w;
    const int last = std::max(prm.horizon, prm.n_skip + prm.n_tail);
    for (int n = 0; n <= last; ++n) {
        Point2 x{cur.z(), w};
        if (f.escaped(x)) {
            out.escaped = n <= prm.horizon;
            break;
        }
        if (n >= prm.n_skip && n <= prm.n_skip + prm.n_tail) out.window.push_back(x);
        if (n == last) break;
        w = f.fiber()(cur.z(), w);
        cur.step();
    }
    return out;
}

}  // namespace

std::vector<Cluster> cluster_points(std::vector<Point2> pts, double eps) {
    if (!(eps > 0.0)) throw DomainError("cluster_eps must be positive");
    std::sort(pts.begin(), pts.end(), lex_less);
    std::vector<Cluster> out;
    std::unordered_map<Cell, std::vector<std::size_t>, CellHash> grid;
    for (const auto& p : pts) {
        Cell c = cell_of(p, eps);
        std::size_t best = out.size();
        for (int k = 0; k < 81; ++k) {
            Cell n = c;
            int r = k;
            for (int d = 0; d < 4; ++d, r /= 3) n[d] += r % 3 - 1;
            auto it = grid.find(n);
            if (it == grid.end()) continue;
            for (std::size_t id : it->second)
                if (id < best && distance(out[id].center, p) <= eps) best = id;
        }
        if (best < out.size()) {
            ++out[best].count;
        } else {
            grid[c].push_back(out.size());
            out.push_back({p, 1});
        }
    }
    return out;
}

AccumulationEstimate estimate_accumulation(const SkewProduct& f, AccumulationKind kind, const BaseSample& base,
                                           const std::vector<CriticalSample>& samples, const AccumulationParams& params,
                                           const StableClassification* labels, double component_pixel) {
    if (params.n_skip < 0 || params.n_tail < 0 || params.horizon < 0)
        throw DomainError("accumulation window parameters must be non-negative");
    AccumulationEstimate est;
    est.kind = kind;
    est.params = params;

    std::vector<int> piece;
    if (kind == AccumulationKind::Componentwise) {
        if (!labels || labels->labels.size() != samples.size())
            throw PreconditionViolation("componentwise estimate needs stable labels for every sample");
        if (!(component_pixel > 0.0)) throw PreconditionViolation("componentwise estimate needs a component pixel");
        est.component_pixel = component_pixel;
        auto comp = base_components(base, component_pixel, &est.base_components);
        std::map<std::pair<int, int>, int> ids;
        piece.resize(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) {
            auto key = std::make_pair(comp[samples[i].base_index], labels->labels[i]);
            piece[i] = ids.emplace(key, static_cast<int>(ids.size())).first->second;
        }
    }

    std::vector<SampleTail> tails(samples.size());
    const long long n = static_cast<long long>(samples.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (long long i = 0; i < n; ++i) tails[i] = sample_tail(f, base, samples[i], params);

    std::vector<bool> use(samples.size(), false);
    switch (kind) {
        case AccumulationKind::Pointwise:
            for (std::size_t i = 0; i < samples.size(); ++i) use[i] = !tails[i].escaped;
            break;
        case AccumulationKind::Full:
            use.assign(samples.size(), true);
            break;
        case AccumulationKind::Componentwise: {
            std::vector<bool> active(*std::max_element(piece.begin(), piece.end()) + 1, false);
            for (std::size_t i = 0; i < samples.size(); ++i)
                if (!tails[i].escaped) active[piece[i]] = true;
            for (std::size_t i = 0; i < samples.size(); ++i) use[i] = active[piece[i]];
            break;
        }
    }
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!use[i] || tails[i].window.empty()) continue;
        ++est.contributing_samples;
        pts.insert(pts.end(), tails[i].window.begin(), tails[i].window.end());
    }
    est.clusters = cluster_points(std::move(pts), params.cluster_eps);
    return est;
}

}  // namespace skewlab
