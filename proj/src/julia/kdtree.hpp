#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <vector>

namespace skewlab::detail {

template <int D>
class KdTree {
public:
    using Vec = std::array<double, D>;

    explicit KdTree(std::vector<Vec> pts) : pts_(std::move(pts)), idx_(pts_.size()) {
        std::iota(idx_.begin(), idx_.end(), std::size_t{0});
        build(0, idx_.size(), 0);
    }

    // squared distance to the nearest point
    double nearest2(const Vec& q) const {
        double best = std::numeric_limits<double>::infinity();
        if (!idx_.empty()) search(0, idx_.size(), 0, q, best);
        return best;
    }

private:
    static double dist2(const Vec& a, const Vec& b) {
        double s = 0.0;
        for (int k = 0; k < D; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
        return s;
    }

    void build(std::size_t lo, std::size_t hi, int axis) {
        if (hi - lo <= kLeaf) return;
        std::size_t mid = lo + (hi - lo) / 2;
        std::nth_element(idx_.begin() + lo, idx_.begin() + mid, idx_.begin() + hi,
                         [&](std::size_t a, std::size_t b) { return pts_[a][axis] < pts_[b][axis]; });
        build(lo, mid, (axis + 1) % D);
        build(mid + 1, hi, (axis + 1) % D);
    }

    void search(std::size_t lo, std::size_t hi, int axis, const Vec& q, double& best) const {
        if (hi - lo <= kLeaf) {
            for (std::size_t i = lo; i < hi; ++i) best = std::min(best, dist2(pts_[idx_[i]], q));
            return;
        }
        std::size_t mid = lo + (hi - lo) / 2;
        const Vec& m = pts_[idx_[mid]];
        best = std::min(best, dist2(m, q));
        double diff = q[axis] - m[axis];
        int next = (axis + 1) % D;
        if (diff < 0) {
            search(lo, mid, next, q, best);
            if (diff * diff < best) search(mid + 1, hi, next, q, best);
        } else {
            search(mid + 1, hi, next, q, best);
            if (diff * diff < best) search(lo, mid, next, q, best);
        }
    }

    static constexpr std::size_t kLeaf = 8;
    std::vector<Vec> pts_;
    std::vector<std::size_t> idx_;
};

}  // namespace skewlab::detail
