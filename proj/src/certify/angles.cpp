#include <algorithm>
#include <sstream>

#include "skewlab/certify.hpp"
#include "skewlab/errors.hpp"

namespace skewlab {

namespace {

std::int64_t floor_div(std::int64_t num, std::int64_t den) {
    std::int64_t q = num / den;
    if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
    return q;
}

std::string str(const Rational& q) {
    std::ostringstream os;
    os << q.numerator() << '/' << q.denominator();
    return os.str();
}

}  // namespace

Rational mod1(Rational t) { return t - Rational(floor_div(t.numerator(), t.denominator())); }

void AngleIntervalSet::add(Rational lo, Rational hi) {
    if (!(lo < hi)) throw DomainError("angle interval needs lo < hi");
    if (hi - lo >= Rational(1)) throw DomainError("angle interval longer than the circle");
    Rational a = mod1(lo);
    Rational b = a + (hi - lo);
    if (b > Rational(1)) {
        iv_.push_back({a, Rational(1)});
        iv_.push_back({Rational(0), b - Rational(1)});
    } else {
        iv_.push_back({a, b});
    }
    std::sort(iv_.begin(), iv_.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    std::vector<Interval> merged;
    for (const auto& x : iv_) {
        // open intervals sharing only an endpoint stay apart
        if (!merged.empty() && x.lo < merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, x.hi);
        else
            merged.push_back(x);
    }
    iv_ = std::move(merged);
}

bool AngleIntervalSet::covers(Rational lo, Rational hi) const { return cover_slack(lo, hi) > Rational(0); }

Rational AngleIntervalSet::cover_slack(Rational lo, Rational hi) const {
    for (const auto& x : iv_)
        if (x.lo < lo && hi < x.hi) return std::min(lo - x.lo, x.hi - hi);
    return Rational(-1);
}

LemmaReport check_angle_combinatorics(int J) {
    if (J < 1 || J > 25) throw PreconditionViolation("angle coverage depth J must lie in [1, 25]");
    LemmaReport rep;
    rep.lemma_id = "angle_combinatorics";
    std::ostringstream ev;

    const Rational t_lo(3, 16), t_hi(13, 16);
    bool images_ok = true;
    for (auto [lo, hi] : {std::pair{Rational(3, 64), Rational(13, 64)}, std::pair{Rational(51, 64), Rational(61, 64)}}) {
        Rational len = Rational(4) * (hi - lo);
        Rational a = mod1(Rational(4) * lo);
        Rational b = a + len;
        bool ok = len < Rational(1) && a >= t_lo && b <= t_hi;
        images_ok = images_ok && ok;
        ev << "4*(" << str(lo) << "," << str(hi) << ") = (" << str(a) << "," << str(b) << ") mod 1"
           << (ok ? " inside " : " NOT inside ") << "(3/16,13/16); ";
    }

    AngleIntervalSet set;
    std::int64_t pw = 16;
    for (int j = 2; j <= J + 1; ++j, pw *= 4) {
        set.add(Rational(3, pw), Rational(13, pw));
        set.add(Rational(-13, pw), Rational(-3, pw));
    }
    std::int64_t edge_den = 1;
    for (int k = 0; k < J; ++k) edge_den *= 4;
    Rational lo(1, edge_den), hi = Rational(1) - lo;
    Rational slack = set.cover_slack(lo, hi);
    ev << set.intervals().size() << " merged interval(s) for j = 2.." << J + 1 << "; [" << str(lo) << ", "
       << str(hi) << "] " << (slack > Rational(0) ? "covered with slack " + str(slack) : "NOT covered");

    rep.values = {{"J", static_cast<double>(J)},
                  {"slack", boost::rational_cast<double>(slack)},
                  {"images_ok", images_ok ? 1.0 : 0.0}};
    rep.evidence = ev.str();
    rep.set_margin(images_ok ? boost::rational_cast<double>(slack) : -1.0);
    return rep;
}

}  // namespace skewlab
