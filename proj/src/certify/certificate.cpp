#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "skewlab/certify.hpp"
#include "skewlab/errors.hpp"

namespace skewlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

LemmaReport not_run(const std::string& id, const std::string& why) {
    LemmaReport r;
    r.lemma_id = id;
    r.evidence = why;
    r.margin = kNaN;
    r.pass = false;
    return r;
}

template <class F>
LemmaReport guarded(const std::string& id, F&& run) {
    try {
        return run();
    } catch (const PreconditionViolation& e) {
        return not_run(id, std::string("precondition: ") + e.what());
    } catch (const DomainError& e) {
        return not_run(id, std::string("domain: ") + e.what());
    }
}

LemmaReport axiom_report(const AxiomAReport& a) {
    LemmaReport r;
    r.lemma_id = "axiom_a";
    std::ostringstream ev;
    ev << to_string(a.verdict) << "; base hyperbolic " << (a.base_hyperbolic ? "yes" : "no") << "; margin_J "
       << a.margin_J << ", margin_A " << a.margin_A << ", resolution " << a.resolution << "; " << a.detail;
    r.evidence = ev.str();
    r.values = {{"margin_J", a.margin_J}, {"margin_A", a.margin_A}, {"resolution", a.resolution}};
    r.set_margin(std::min(a.margin_J, a.margin_A) - a.resolution);
    if (a.verdict != Verdict::Pass) r.pass = false;
    return r;
}

}  // namespace

Certificate full_certificate(int n, const CertificateConfig& cfg) {
    Certificate c;
    c.n = n;
    auto finish = [&c] {
        for (auto& r : c.reports) r.params.n = c.n;
        std::stable_sort(c.reports.begin(), c.reports.end(),
                         [](const LemmaReport& a, const LemmaReport& b) { return a.lemma_id < b.lemma_id; });
        c.failing.clear();
        for (const auto& r : c.reports)
            if (!r.pass) c.failing.push_back(r.lemma_id);
        c.pass = c.failing.empty();
        return c;
    };

    try {
        c.instance = construct_example(n, cfg.example);
        c.constructed = true;
    } catch (const Error& e) {
        c.reports.push_back(not_run("construct_example", e.what()));
        return finish();
    }
    const ExampleInstance& ex = c.instance;
    const double eps = ex.epsilon;

    c.reports.push_back(guarded("fiber_escape", [&] {
        return check_fiber_escape(Region::box(-2.5, 2.5, -std::max(eps, 1e-300), std::max(eps, 1e-300)));
    }));
    c.reports.push_back(check_k_box(ex, cfg.k_box_grid, cfg.k_box_maxiter));

    auto reach = check_reach_left(ex, cfg.r, cfg.N_max);
    c.reports.push_back(reach);
    c.N = static_cast<int>(reach.value("N_obs")) + 1;
    double bound = escape_delta_bound(c.N, eps);
    c.delta = bound > 0.0 ? 0.5 * bound : 0.0;

    auto constant = check_escape_constant(c.N, c.delta, eps);
    constant.params.r = cfg.r;
    c.reports.push_back(constant);

    LemmaReport empirical = constant.pass ? guarded("escape_empirical", [&] {
        return check_escape_empirical(ex, cfg.r, c.delta, c.N);
    })
                                          : not_run("escape_empirical", "escape constant failed");
    c.reports.push_back(empirical);

    auto contract = guarded("contract", [&] { return check_contract(cfg.r, cfg.delta_prime, eps); });
    contract.params.r = cfg.r;
    contract.params.delta_prime = cfg.delta_prime;
    contract.params.eps_n = eps;
    c.reports.push_back(contract);

    c.reports.push_back(check_angle_combinatorics(cfg.J));

    if (contract.pass && empirical.pass)
        c.reports.push_back(guarded("critical_disjoint", [&] { return check_critical_disjoint(ex, c.delta); }));
    else
        c.reports.push_back(not_run("critical_disjoint", "contraction or escape check failed"));

    c.reports.push_back(guarded("axiom_a", [&] {
        return axiom_report(axiom_a_check(ex.f, ex.tree, cfg.axiom, &ex.base_critical));
    }));

    // single saddle at (beta, alpha)
    const double ceps = cfg.accumulation.cluster_eps;
    auto sad = find_saddles(ex.f, 1, ceps);
    const Point2 target{Complex(ex.beta_d, 0.0), ex.alpha};
    {
        LemmaReport r;
        r.lemma_id = "saddle_set";
        std::ostringstream ev;
        ev << sad.saddles.size() << " saddle(s) in " << sad.component_count << " component(s)";
        if (sad.saddles.size() == 1 && sad.component_count == 1) {
            const auto& s = sad.saddles[0];
            double d = distance(s.location, target);
            double lam = std::abs(s.base_multiplier), mu = std::abs(s.fiber_multiplier);
            ev << "; distance to (beta, alpha) " << d << ", |lambda| " << lam << ", |mu| " << mu;
            r.values = {{"distance", d}, {"lambda", lam}, {"mu", mu}};
            r.set_margin(std::min({cfg.saddle_tol - d, lam - 1.0, 1.0 - mu}));
        } else {
            r.set_margin(-1.0);
        }
        r.evidence = ev.str();
        c.reports.push_back(r);
    }

    auto samples = critical_samples(ex.f, ex.walk);
    auto cls = classify_critical(ex.f, sad, ex.walk, samples);
    {
        LemmaReport r;
        r.lemma_id = "critical_labels";
        std::size_t at_beta = 0, beta_one = 0, others = 0, others_zero = 0, unresolved = 0;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            int l = cls.labels[i];
            if (samples[i].point.z == target.z) {
                ++at_beta;
                beta_one += l == 1 && std::abs(samples[i].point.w) < 1e-12;
            } else if (l == StableClassification::kUnresolved) {
                ++unresolved;
            } else {
                ++others;
                others_zero += l == 0;
            }
        }
        double frac = others ? static_cast<double>(others_zero) / others : 0.0;
        std::ostringstream ev;
        ev << beta_one << "/" << at_beta << " samples over beta labelled 1 at w = 0; " << others_zero << "/" << others
           << " other resolved samples labelled 0 (" << unresolved << " unresolved)";
        r.evidence = ev.str();
        r.values = {{"beta_samples", static_cast<double>(at_beta)}, {"zero_fraction", frac}};
        bool beta_ok = at_beta > 0 && beta_one == at_beta;
        r.set_margin(beta_ok && others > 0 ? frac - cfg.label_fraction + 1e-12 : -1.0);
        c.reports.push_back(r);
    }

    {
        LemmaReport r;
        r.lemma_id = "accumulation";
        const auto& prm = cfg.accumulation;
        auto pt = estimate_accumulation(ex.f, AccumulationKind::Pointwise, ex.walk, samples, prm);
        auto cc = estimate_accumulation(ex.f, AccumulationKind::Componentwise, ex.walk, samples, prm, &cls,
                                        cfg.component_pixel);
        auto full = estimate_accumulation(ex.f, AccumulationKind::Full, ex.walk, samples, prm);
        std::ostringstream ev;
        ev << "clusters pt " << pt.clusters.size() << ", cc " << cc.clusters.size() << ", full "
           << full.clusters.size();
        if (pt.clusters.empty() || cc.clusters.empty() || full.clusters.empty()) {
            ev << "; empty estimate";
            r.set_margin(-1.0);
        } else {
            double d_pt = hausdorff(pt.points(), std::vector<Point2>{target});
            double d_cc = hausdorff(pt.points(), cc.points());
            double far = 0.0;
            for (const auto& cl : full.clusters) far = std::max(far, distance(cl.center, target));
            ev << "; d_H(A_pt, saddle) " << d_pt << ", d_H(A_pt, A_cc) " << d_cc << ", farthest full cluster " << far;
            r.values = {{"d_pt", d_pt}, {"d_cc", d_cc}, {"far", far}};
            r.set_margin(std::min({5 * ceps - d_pt, 5 * ceps - d_cc, far - 10 * ceps}));
        }
        r.evidence = ev.str();
        c.reports.push_back(r);
    }
    return finish();
}

Certificate search_certificate(int n_max, const CertificateConfig& cfg, std::vector<Certificate>* tried) {
    if (n_max < 1) throw DomainError("certificate search needs n_max >= 1");
    Certificate last;
    for (int n = 1; n <= n_max; ++n) {
        last = full_certificate(n, cfg);
        if (tried) tried->push_back(last);
        if (last.pass) break;
    }
    return last;
}

}  // namespace skewlab
