#include <omp.h>

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "skewlab/certify.hpp"
#include "skewlab/errors.hpp"
#include "skewlab/family.hpp"
#include "skewlab/invariant.hpp"
#include "skewlab/io.hpp"
#include "skewlab/julia.hpp"

using namespace skewlab;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2 };

struct Command {
    CLI::App* app = nullptr;
    std::string config_path;
    std::map<std::string, std::string> slots;  // flag values by config key
    std::string z, query, input;
    int node = -1;
};

std::string flag_name(const std::string& key) {
    std::string f = key;
    for (auto& c : f)
        if (c == '_') c = '-';
    return "--" + f;
}

void add_keys(Command& c, std::initializer_list<const char*> keys) {
    for (const char* k : keys) c.app->add_option(flag_name(k), c.slots[k]);
}

void add_common(Command& c) {
    c.app->add_option("--config", c.config_path, "key = value configuration file");
    add_keys(c, {"out", "threads", "maxiter"});
}

void add_grid(Command& c) { add_keys(c, {"nx", "ny", "xmin", "xmax", "ymin", "ymax"}); }

void add_family(Command& c) {
    add_keys(c, {"family", "n", "eta", "a", "b", "poly", "fiber", "sumi_r", "sumi_eps", "walk_size", "seed"});
}

struct Run {
    Config cfg;
    KeyValues given;  // keys set by the file or a flag
    OutputSet out;
    int threads = 1;
};

Run prepare(const Command& c) {
    Run r;
    KeyValues file;
    if (!c.config_path.empty()) {
        std::string text = read_file(c.config_path);
        file = parse_key_values(text);
        r.out.add_input("config", text);
    }
    KeyValues flags;
    for (const auto& [k, v] : c.slots)
        if (c.app->count(flag_name(k)) > 0) flags[k] = v;
    r.cfg = load_config(file, flags);
    r.given = file;
    for (const auto& [k, v] : flags) r.given[k] = v;
    r.threads = resolve_threads(r.cfg.threads);
    omp_set_num_threads(r.threads);
    return r;
}

GridSpec grid_of(const Config& cfg) { return GridSpec::box(cfg.xmin, cfg.xmax, cfg.ymin, cfg.ymax, cfg.nx, cfg.ny); }

Poly base_poly(const Config& cfg) { return cfg.poly.empty() ? biquad_poly({cfg.a, cfg.b}) : parse_poly(cfg.poly); }

ExampleOptions example_options(const Config& cfg) {
    ExampleOptions o;
    o.eta = cfg.eta;
    o.walk_size = cfg.walk_size;
    o.seed = cfg.seed;
    return o;
}

struct Family {
    SkewProduct f;
    BaseSample base;
    std::optional<ExampleInstance> instance;
};

Family make_family(const Config& cfg) {
    if (cfg.family == "example") {
        auto ex = construct_example(cfg.n, example_options(cfg));
        return {ex.f, ex.walk, ex};
    }
    SkewProduct f = degree4_skew(Poly::monomial(4));
    if (cfg.family == "biquad")
        f = degree4_skew(biquad_poly({cfg.a, cfg.b}));
    else if (cfg.family == "product")
        f = product_preset(cfg.poly.empty() ? parse_poly("-1,0,1") : parse_poly(cfg.poly), parse_poly(cfg.fiber));
    else
        f = sumi_preset(cfg.sumi_r, cfg.sumi_eps, cfg.n);
    return {f, julia_walk(f.base(), cfg.walk_size, cfg.seed), std::nullopt};
}

Complex parse_complex(const std::string& s) {
    auto comma = s.find(',');
    try {
        std::size_t p1 = 0, p2 = 0;
        std::string re = comma == std::string::npos ? s : s.substr(0, comma);
        std::string im = comma == std::string::npos ? "0" : s.substr(comma + 1);
        double x = std::stod(re, &p1), y = std::stod(im, &p2);
        if (p1 != re.size() || p2 != im.size()) throw ConfigError("");
        return {x, y};
    } catch (const std::exception&) {
        throw ConfigError("expected re,im but got '" + s + "'");
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int finish(Run& r, const std::string& command, std::chrono::steady_clock::time_point t0, int code) {
    auto files = r.out.commit(r.cfg.out, command, r.cfg.to_json(), r.threads, seconds_since(t0));
    for (const auto& f : files) std::cerr << "wrote " << r.cfg.out << "/" << f << '\n';
    return code;
}

int cmd_render_base(const Command& c) {
    auto t0 = std::chrono::steady_clock::now();
    Run r = prepare(c);
    GridSpec g = grid_of(r.cfg);
    auto grid = filled_julia_base(base_poly(r.cfg), g, r.cfg.maxiter);
    r.out.add("base.ppm", ppm_bytes(g.nx, g.ny, escape_colors(grid)));
    r.out.add("base.grid", grid_bytes(grid));
    std::cout << grid.count_bounded() << " bounded pixels of " << g.size() << '\n';
    return finish(r, "render-base", t0, kOk);
}

int cmd_render_fiber(const Command& c) {
    auto t0 = std::chrono::steady_clock::now();
    Run r = prepare(c);
    GridSpec g = grid_of(r.cfg);
    Family fam = make_family(r.cfg);
    EscapeGrid grid;
    if (c.node >= 0) {
        if (!fam.instance) throw ConfigError("--node needs family = example");
        const auto& tree = fam.instance->tree;
        if (static_cast<std::size_t>(c.node) >= tree.size())
            throw ConfigError("--node exceeds the preimage tree size " + std::to_string(tree.size()));
        grid = fiber_filled_julia(fam.f, tree.orbit(fam.f.base(), c.node, r.cfg.maxiter), g, r.cfg.maxiter);
    } else {
        grid = fiber_filled_julia(fam.f, c.z.empty() ? Complex(0.0) : parse_complex(c.z), g, r.cfg.maxiter);
    }
    r.out.add("fiber.ppm", ppm_bytes(g.nx, g.ny, escape_colors(grid)));
    r.out.add("fiber.grid", grid_bytes(grid));
    std::cout << grid.count_bounded() << " bounded pixels, " << bounded_component_count(grid) << " component(s)\n";
    return finish(r, "render-fiber", t0, kOk);
}

int cmd_param_space(const Command& c) {
    auto t0 = std::chrono::steady_clock::now();
    Run r = prepare(c);
    if (!c.query.empty()) {
        Complex q = parse_complex(c.query);
        auto cls = classify_params({q.real(), q.imag()}, r.cfg.maxiter, r.cfg.tol);
        Json j = {{"a", q.real()}, {"b", q.imag()}, {"label", to_string(cls.label)}};
        Json esc = Json::array();
        for (auto z : cls.escaping) esc.push_back(complex_json(z));
        j["escaping"] = esc;
        std::cout << to_string(cls.label) << '\n';
        r.out.add("query.json", j.dump(2) + "\n");
        return finish(r, "param-space", t0, kOk);
    }
    GridSpec g = grid_of(r.cfg);
    auto labels = classify_grid(g, r.cfg.maxiter, r.cfg.tol);
    r.out.add("params.ppm", ppm_bytes(g.nx, g.ny, locus_colors(labels)));

    std::ostringstream csv;
    csv.precision(17);
    csv << "curve,a,b\n";
    auto inside = [&](double a, double b) { return a >= g.xmin() && a <= g.xmax() && b >= g.ymin() && b <= g.ymax(); };
    const int samples = 4 * std::max(g.nx, g.ny);
    for (int k = 0; k <= samples; ++k) {
        double t = kPer1Min + (kPer1Max - kPer1Min) * k / samples;
        auto p = per1_curve(t);
        if (inside(p.a_d(), p.b_d())) csv << "per1," << p.a_d() << ',' << p.b_d() << '\n';
    }
    const double hi = -std::cbrt(2.0) / 4;
    for (int k = 0; k <= samples; ++k) {
        double s = -2.0 + (hi + 2.0) * k / samples;
        double b11 = static_cast<double>(preper11_b(s));
        if (inside(s, b11)) csv << "preper11," << s << ',' << b11 << '\n';
        double a21 = static_cast<double>(preper21_a(s));
        if (inside(a21, s)) csv << "preper21," << a21 << ',' << s << '\n';
    }
    r.out.add("curves.csv", csv.str());
    std::size_t counts[4] = {0, 0, 0, 0};
    for (auto l : labels) ++counts[static_cast<int>(l)];
    std::cout << "connected " << counts[0] << ", escaping " << counts[1] << ", boundary " << counts[2]
              << ", inconclusive " << counts[3] << '\n';
    return finish(r, "param-space", t0, kOk);
}

int cmd_construct(const Command& c) {
    auto t0 = std::chrono::steady_clock::now();
    Run r = prepare(c);
    auto ex = construct_example(r.cfg.n, example_options(r.cfg));
    r.out.add("example.json", to_json(ex).dump(2) + "\n");
    r.out.add("walk.csv", csv_points(ex.walk.points));
    r.out.add("tree.csv", csv_points(ex.tree.points));
    std::cout << "n = " << ex.n << ", eta = " << hp_to_string(ex.eta, 6) << ", eps_n = " << ex.epsilon
              << ", beta = " << hp_to_string(ex.beta, 20) << '\n';
    return finish(r, "construct-example", t0, kOk);
}

CertificateConfig certificate_config(const Config& cfg) {
    CertificateConfig cc;
    cc.r = cfg.r;
    cc.delta_prime = cfg.delta_prime;
    cc.J = cfg.J;
    cc.example = example_options(cfg);
    cc.accumulation.cluster_eps = cfg.cluster_eps;
    cc.accumulation.n_skip = cfg.n_skip;
    cc.accumulation.n_tail = cfg.n_tail;
    cc.accumulation.horizon = cfg.horizon;
    return cc;
}

void print_certificate(const Certificate& c) {
    std::cout << "n = " << c.n << ": " << (c.pass ? "PASS" : "FAIL");
    if (!c.failing.empty()) {
        std::cout << " (failing:";
        for (const auto& id : c.failing) std::cout << ' ' << id;
        std::cout << ')';
    }
    std::cout << '\n';
    for (const auto& rep : c.reports)
        std::cout << "  " << std::left << std::setw(20) << rep.lemma_id << (rep.pass ? "pass" : "FAIL") << "  margin "
                  << rep.margin << '\n';
}

int cmd_verify(const Command& c) {
    auto t0 = std::chrono::steady_clock::now();
    Run r = prepare(c);
    auto cc = certificate_config(r.cfg);
    std::vector<Certificate> tried;
    Certificate last;
    if (r.given.count("n")) {
        last = full_certificate(r.cfg.n, cc);
        tried.push_back(last);
    } else {
        last = search_certificate(r.cfg.n_max, cc, &tried);
    }
    Json all = Json::array();
    for (const auto& t : tried) {
        print_certificate(t);
        all.push_back(to_json(t));
    }
    Json j = {{"verdict", last.pass ? "PASS" : "FAIL"}, {"n", last.n}, {"failing", last.failing}, {"certificates", all}};
    r.out.add("verify.json", j.dump(2) + "\n");
    return finish(r, "verify", t0, last.pass ? kOk : kFail);
}

int cmd_saddles(const Command& c) {
    auto t0 = std::chrono::steady_clock::now();
    Run r = prepare(c);
    Family fam = make_family(r.cfg);
    auto est = find_saddles(fam.f, r.cfg.period, r.cfg.cluster_eps);
    r.out.add("saddles.json", to_json(est).dump(2) + "\n");
    std::cout << est.saddles.size() << " saddle point(s), " << est.cycle_count << " cycle(s), " << est.component_count
              << " component(s)\n";
    return finish(r, "saddles", t0, kOk);
}

int cmd_classify(const Command& c) {
    auto t0 = std::chrono::steady_clock::now();
    Run r = prepare(c);
    Family fam = make_family(r.cfg);
    auto est = find_saddles(fam.f, r.cfg.period, r.cfg.cluster_eps);
    auto samples = critical_samples(fam.f, fam.base);
    auto cls = classify_critical(fam.f, est, fam.base, samples, r.cfg.horizon);
    std::ostringstream csv;
    csv.precision(17);
    csv << "z_re,z_im,w_re,w_im,label,entry\n";
    std::map<int, int> counts;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& p = samples[i].point;
        csv << p.z.real() << ',' << p.z.imag() << ',' << p.w.real() << ',' << p.w.imag() << ',' << cls.labels[i] << ','
            << (cls.entry_time[i] ? std::to_string(*cls.entry_time[i]) : "") << '\n';
        ++counts[cls.labels[i]];
    }
    Json cj = Json::object();
    for (const auto& [l, n] : counts) {
        cj[std::to_string(l)] = n;
        std::cout << "label " << l << ": " << n << '\n';
    }
    Json j = {{"horizon", cls.horizon}, {"tol", cls.tol}, {"samples", samples.size()}, {"counts", cj},
              {"saddles", to_json(est)}};
    r.out.add("labels.json", j.dump(2) + "\n");
    r.out.add("labels.csv", csv.str());
    return finish(r, "classify-critical", t0, kOk);
}

int cmd_accumulate(const Command& c) {
    auto t0 = std::chrono::steady_clock::now();
    Run r = prepare(c);
    AccumulationKind kind = parse_accumulation_kind(r.cfg.kind);
    Family fam = make_family(r.cfg);
    AccumulationParams prm;
    prm.cluster_eps = r.cfg.cluster_eps;
    prm.n_skip = r.cfg.n_skip;
    prm.n_tail = r.cfg.n_tail;
    prm.horizon = r.cfg.horizon;
    auto samples = critical_samples(fam.f, fam.base);
    std::optional<StableClassification> cls;
    if (kind == AccumulationKind::Componentwise) {
        auto est = find_saddles(fam.f, r.cfg.period, r.cfg.cluster_eps);
        cls = classify_critical(fam.f, est, fam.base, samples, r.cfg.horizon);
    }
    double pixel = 5.0 / 512;
    auto acc = estimate_accumulation(fam.f, kind, fam.base, samples, prm, cls ? &*cls : nullptr, pixel);
    r.out.add("accumulation.json", to_json(acc, cls ? &*cls : nullptr).dump(2) + "\n");
    r.out.add("cloud.csv", csv_points(acc.points()));
    std::cout << to_string(kind) << ": " << acc.clusters.size() << " cluster(s) from " << acc.contributing_samples
              << " sample(s)\n";
    return finish(r, "accumulate", t0, kOk);
}

int cmd_trace_ray(const Command& c, const std::string& theta) {
    auto t0 = std::chrono::steady_clock::now();
    Run r = prepare(c);
    RayAngle a = parse_angle(theta);
    auto ray = trace_external_ray(base_poly(r.cfg), a);
    Json j = {{"theta", theta},
              {"landed", ray.landed},
              {"landing", complex_json(ray.landing)},
              {"blocked", ray.blocked},
              {"stop_potential", ray.stop_potential},
              {"points", ray.points.size()}};
    r.out.add("ray.json", j.dump(2) + "\n");
    r.out.add("ray.csv", csv_points(ray.points));
    if (ray.landed)
        std::cout << "landed at " << ray.landing.real() << (ray.landing.imag() < 0 ? "" : "+") << ray.landing.imag()
                  << "i\n";
    else
        std::cout << (ray.blocked ? "blocked" : "not landed") << " at potential " << ray.stop_potential << '\n';
    return finish(r, "trace-ray", t0, kOk);
}

int cmd_report(const Command& c) {
    auto t0 = std::chrono::steady_clock::now();
    Run r = prepare(c);
    if (c.input.empty()) throw ConfigError("report needs --in <verify.json>");
    Json j;
    try {
        j = Json::parse(read_file(c.input));
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("malformed report: ") + e.what());
    }
    r.out.add_input("report", j.dump());
    std::ostringstream os;
    try {
        for (const auto& cert : j.at("certificates")) {
            os << "n = " << cert.at("n").get<int>() << ": " << (cert.at("pass").get<bool>() ? "PASS" : "FAIL") << '\n';
            for (const auto& rep : cert.at("reports")) {
                os << "  " << std::left << std::setw(20) << rep.at("lemma_id").get<std::string>()
                   << (rep.at("pass").get<bool>() ? "pass" : "FAIL") << "  margin " << rep.at("margin").dump() << '\n'
                   << "    " << rep.at("evidence").at("text").get<std::string>() << '\n';
            }
        }
        os << "verdict " << j.at("verdict").get<std::string>() << '\n';
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("malformed report: ") + e.what());
    }
    std::cout << os.str();
    r.out.add("report.txt", os.str());
    return finish(r, "report", t0, j.at("verdict") == "PASS" ? kOk : kFail);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skewlab: polynomial skew products and the degree-4 example"};
    app.require_subcommand(1);

    std::map<std::string, Command> cmds;
    auto make = [&](const std::string& name, const std::string& help) -> Command& {
        Command& c = cmds[name];
        c.app = app.add_subcommand(name, help);
        add_common(c);
        return c;
    };

    auto& rb = make("render-base", "escape-time image of a base polynomial");
    add_grid(rb);
    add_keys(rb, {"a", "b", "poly"});

    auto& rf = make("render-fiber", "filled fiber Julia set K_z");
    add_grid(rf);
    add_family(rf);
    rf.app->add_option("--z", rf.z, "base point re,im");
    rf.app->add_option("--node", rf.node, "preimage-tree node of the example");

    auto& ps = make("param-space", "classification of the (a, b) plane");
    add_grid(ps);
    add_keys(ps, {"tol"});
    ps.app->add_option("--query", ps.query, "classify one parameter a,b");

    auto& ce = make("construct-example", "perturbed parameter of the degree-4 example");
    add_keys(ce, {"n", "eta", "walk_size", "seed"});

    auto& ve = make("verify", "certificate of the degree-4 example");
    add_keys(ve, {"n", "n_max", "eta", "r", "delta_prime", "j", "walk_size", "seed", "cluster_eps", "n_skip", "n_tail",
                  "horizon"});

    auto& sa = make("saddles", "saddle periodic points");
    add_family(sa);
    add_keys(sa, {"period", "cluster_eps"});

    auto& cc = make("classify-critical", "stable-set labels of the critical samples");
    add_family(cc);
    add_keys(cc, {"period", "cluster_eps", "horizon"});

    auto& ac = make("accumulate", "accumulation-set estimates");
    add_family(ac);
    add_keys(ac, {"kind", "period", "cluster_eps", "n_skip", "n_tail", "horizon"});

    auto& tr = make("trace-ray", "external ray of a base polynomial");
    add_keys(tr, {"a", "b", "poly"});
    std::string theta = "0";
    tr.app->add_option("--theta", theta, "angle p/q");

    auto& re = make("report", "print a verify.json report");
    re.app->add_option("--in", re.input, "verify.json to summarise");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (rb.app->parsed()) return cmd_render_base(rb);
        if (rf.app->parsed()) return cmd_render_fiber(rf);
        if (ps.app->parsed()) return cmd_param_space(ps);
        if (ce.app->parsed()) return cmd_construct(ce);
        if (ve.app->parsed()) return cmd_verify(ve);
        if (sa.app->parsed()) return cmd_saddles(sa);
        if (cc.app->parsed()) return cmd_classify(cc);
        if (ac.app->parsed()) return cmd_accumulate(ac);
        if (tr.app->parsed()) return cmd_trace_ray(tr, theta);
        if (re.app->parsed()) return cmd_report(re);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFail;
    }
    return kUsage;
}
