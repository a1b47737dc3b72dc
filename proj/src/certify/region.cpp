#include <algorithm>
#include <cmath>

#include "skewlab/certify.hpp"
#include "skewlab/errors.hpp"

namespace skewlab {

Region Region::disk(Complex c, double r) {
    Region g;
    g.kind = Kind::Disk;
    g.center = c;
    g.radius = r;
    g.validate();
    return g;
}

Region Region::box(double xmin, double xmax, double ymin, double ymax) {
    Region g;
    g.kind = Kind::Box;
    g.xmin = xmin;
    g.xmax = xmax;
    g.ymin = ymin;
    g.ymax = ymax;
    g.validate();
    return g;
}

Region Region::strip(double height, double half_width) {
    Region g;
    g.kind = Kind::Strip;
    g.height = height;
    g.half_width = half_width;
    g.validate();
    return g;
}

void Region::validate() const {
    bool ok = true;
    switch (kind) {
        case Kind::Disk: ok = std::isfinite(radius) && radius > 0.0 && std::isfinite(std::abs(center)); break;
        case Kind::Box: ok = std::isfinite(xmax - xmin) && std::isfinite(ymax - ymin) && xmax > xmin && ymax > ymin; break;
        case Kind::Strip: ok = std::isfinite(height) && std::isfinite(half_width) && height > 0.0 && half_width > 0.0; break;
    }
    if (!ok) throw DomainError("region extents must be positive and finite");
}

bool Region::contains(Complex z) const {
    switch (kind) {
        case Kind::Disk: return std::abs(z - center) <= radius;
        case Kind::Box: return z.real() >= xmin && z.real() <= xmax && z.imag() >= ymin && z.imag() <= ymax;
        case Kind::Strip: return std::abs(z.real()) <= half_width && std::abs(z.imag()) <= height;
    }
    return false;
}

double Region::max_distance(Complex c) const {
    if (kind == Kind::Disk) return std::abs(c - center) + radius;
    double x0 = kind == Kind::Box ? xmin : -half_width, x1 = kind == Kind::Box ? xmax : half_width;
    double y0 = kind == Kind::Box ? ymin : -height, y1 = kind == Kind::Box ? ymax : height;
    double best = 0.0;
    for (double x : {x0, x1})
        for (double y : {y0, y1}) best = std::max(best, std::abs(Complex(x, y) - c));
    return best;
}

std::vector<Complex> Region::samples(int n) const {
    std::vector<Complex> out;
    if (n < 2) n = 2;
    out.reserve(static_cast<std::size_t>(n) * n);
    if (kind == Kind::Disk) {
        // rings of radius k r / (n-1), n points each
        for (int k = 0; k < n; ++k) {
            double rho = radius * k / (n - 1);
            for (int t = 0; t < n; ++t) out.push_back(center + std::polar(rho, 2.0 * M_PI * t / n));
        }
        return out;
    }
    double x0 = kind == Kind::Box ? xmin : -half_width, x1 = kind == Kind::Box ? xmax : half_width;
    double y0 = kind == Kind::Box ? ymin : -height, y1 = kind == Kind::Box ? ymax : height;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            out.emplace_back(x0 + (x1 - x0) * i / (n - 1), y0 + (y1 - y0) * j / (n - 1));
    return out;
}

double LemmaReport::value(const std::string& key) const {
    for (const auto& [k, v] : values)
        if (k == key) return v;
    throw DomainError("report " + lemma_id + " has no value " + key);
}

}  // namespace skewlab
