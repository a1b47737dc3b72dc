#pragma once

#include "skewlab/julia.hpp"

namespace skewlab::detail {

// Walks a base orbit through the sample's next table, falling back to
// iterating p once the table runs out.
class BaseCursor {
public:
    BaseCursor(const BaseSample& base, const Poly& p, std::size_t index)
        : base_(base), p_(p), k_(index), z_(base.points.at(index)) {}

    Complex z() const { return z_; }
    std::size_t index() const { return k_; }
    void step() {
        if (k_ != BaseSample::kNone && base_.next[k_] != BaseSample::kNone) {
            k_ = base_.next[k_];
            z_ = base_.points[k_];
        } else {
            k_ = BaseSample::kNone;
            z_ = p_(z_);
        }
    }

private:
    const BaseSample& base_;
    const Poly& p_;
    std::size_t k_;
    Complex z_;
};

}  // namespace skewlab::detail
