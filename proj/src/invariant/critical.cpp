#include <omp.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "base_cursor.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/invariant.hpp"

namespace skewlab {

int StableClassification::count(int label) const {
    return static_cast<int>(std::count(labels.begin(), labels.end(), label));
}

std::vector<CriticalSample> critical_samples(const SkewProduct& f, const BaseSample& base) {
    std::vector<std::vector<CriticalSample>> per(base.size());
    const long long n = static_cast<long long>(base.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (long long i = 0; i < n; ++i) {
        Complex z = base.points[i];
        for (const auto& r : critical_points_over(f, z))
            per[i].push_back({static_cast<std::size_t>(i), Point2{z, r.value}});
    }
    std::vector<CriticalSample> out;
    for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
    return out;
}

namespace {

struct Label {
    int label = StableClassification::kUnresolved;
    std::optional<int> entry;
};

Label classify_one(const SkewProduct& f, const std::vector<std::vector<Complex>>& comp_w, const BaseSample& base,
                   const CriticalSample& s, int T, double tol, int window) {
    detail::BaseCursor cur(base, f.base(), s.base_index);
    Complex w = s.point.w;
    std::vector<int> run(comp_w.size(), 0);
    for (int n = 0; n <= T; ++n) {
        Point2 x{cur.z(), w};
        if (f.escaped(x)) return {0, n};
        for (std::size_t c = 0; c < comp_w.size(); ++c) {
            double d = std::numeric_limits<double>::infinity();
            for (Complex sw : comp_w[c]) d = std::min(d, std::abs(w - sw));
            run[c] = d < tol ? run[c] + 1 : 0;
        }
        for (std::size_t c = 0; c < comp_w.size(); ++c)
            if (run[c] >= window) return {static_cast<int>(c) + 1, n - window + 1};
        if (n == T) break;
        w = f.fiber()(cur.z(), w);
        cur.step();
    }
    return {};
}

std::vector<std::vector<Complex>> component_fibers(const SaddleSetEstimate& saddles) {
    std::vector<std::vector<Complex>> out(saddles.component_count);
    for (const auto& s : saddles.saddles) out.at(s.component_index - 1).push_back(s.location.w);
    return out;
}

}  // namespace

StableClassification classify_critical(const SkewProduct& f, const SaddleSetEstimate& saddles, const BaseSample& base,
                                       const std::vector<CriticalSample>& samples, int T, double tol, int window) {
    StableClassification out;
    out.horizon = T;
    out.tol = tol;
    out.labels.resize(samples.size());
    out.entry_time.resize(samples.size());
    const auto comp_w = component_fibers(saddles);
    const long long n = static_cast<long long>(samples.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (long long i = 0; i < n; ++i) {
        Label l = classify_one(f, comp_w, base, samples[i], T, tol, window);
        out.labels[i] = l.label;
        out.entry_time[i] = l.entry;
    }
    return out;
}

StableClassification classify_critical_reference(const SkewProduct& f, const SaddleSetEstimate& saddles,
                                                 const BaseSample& base, const std::vector<CriticalSample>& samples,
                                                 int T, double tol, int window) {
    StableClassification out;
    out.horizon = T;
    out.tol = tol;
    const auto comp_w = component_fibers(saddles);
    for (const auto& s : samples) {
        Label l = classify_one(f, comp_w, base, s, T, tol, window);
        out.labels.push_back(l.label);
        out.entry_time.push_back(l.entry);
    }
    return out;
}

std::vector<Point2> postcritical_sample(const SkewProduct& f, const BaseSample& base,
                                        const std::vector<std::size_t>& indices, int n_max) {
    if (n_max < 1) throw DomainError("postcritical_sample needs n_max >= 1");
    std::vector<Point2> out;
    for (std::size_t i : indices) {
        for (const auto& r : critical_points_over(f, base.points.at(i))) {
            detail::BaseCursor cur(base, f.base(), i);
            Complex w = r.value;
            for (int n = 1; n <= n_max; ++n) {
                w = f.fiber()(cur.z(), w);
                cur.step();
                Point2 x{cur.z(), w};
                if (f.escaped(x)) break;
                out.push_back(x);
            }
        }
    }
    return out;
}

std::vector<int> base_components(const BaseSample& base, double pixel, std::size_t* count) {
    if (!(pixel > 0.0)) throw DomainError("component pixel must be positive");
    const std::size_t n = base.size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto unite = [&](int a, int b) {
        a = find(a), b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    // occupied pixels; samples sharing a pixel are joined through it
    std::map<std::pair<long long, long long>, int> cell;
    for (std::size_t i = 0; i < n; ++i) {
        std::pair<long long, long long> key{static_cast<long long>(std::floor(base.points[i].real() / pixel)),
                                            static_cast<long long>(std::floor(base.points[i].imag() / pixel))};
        auto [it, fresh] = cell.emplace(key, static_cast<int>(i));
        if (!fresh) unite(it->second, static_cast<int>(i));
    }
    for (const auto& [key, rep] : cell)
        for (long long dx = -2; dx <= 2; ++dx)
            for (long long dy = -2; dy <= 2; ++dy) {
                auto it = cell.find({key.first + dx, key.second + dy});
                if (it != cell.end()) unite(rep, it->second);
            }
    std::vector<int> out(n);
    std::map<int, int> ids;
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, fresh] = ids.emplace(find(static_cast<int>(i)), static_cast<int>(ids.size()));
        out[i] = it->second;
    }
    if (count) *count = ids.size();
    return out;
}

}  // namespace skewlab
