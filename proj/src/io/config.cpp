#include <omp.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "skewlab/errors.hpp"
#include "skewlab/io.hpp"

namespace skewlab {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_int(const std::string& key, const std::string& v) {
    T out{};
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError(key + ": expected an integer, got '" + v + "'");
    return out;
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (v.empty() || pos != v.size() || !std::isfinite(out))
        throw ConfigError(key + ": expected a finite number, got '" + v + "'");
    return out;
}

}  // namespace

KeyValues parse_key_values(const std::string& text) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
        kv[key] = value;
    }
    return kv;
}

const std::vector<std::string>& Config::keys() {
    static const std::vector<std::string> k = {
        "nx",    "ny",        "xmin",      "xmax",      "ymin",  "ymax",     "maxiter",  "tol",
        "threads", "out",     "n",         "eta",       "r",     "delta_prime", "j",     "n_max",
        "family", "a",        "b",         "poly",      "fiber", "sumi_r",   "sumi_eps", "walk_size",
        "seed",  "kind",      "cluster_eps", "n_skip",  "n_tail", "horizon", "period"};
    return k;
}

void Config::set(const std::string& key, const std::string& v) {
    if (key == "nx") nx = parse_int<int>(key, v);
    else if (key == "ny") ny = parse_int<int>(key, v);
    else if (key == "xmin") xmin = parse_double(key, v);
    else if (key == "xmax") xmax = parse_double(key, v);
    else if (key == "ymin") ymin = parse_double(key, v);
    else if (key == "ymax") ymax = parse_double(key, v);
    else if (key == "maxiter") maxiter = parse_int<int>(key, v);
    else if (key == "tol") tol = parse_double(key, v);
    else if (key == "threads") threads = parse_int<int>(key, v);
    else if (key == "out") out = v;
    else if (key == "n") n = parse_int<int>(key, v);
    else if (key == "eta") eta = parse_double(key, v);
    else if (key == "r") r = parse_double(key, v);
    else if (key == "delta_prime") delta_prime = parse_double(key, v);
    else if (key == "j") J = parse_int<int>(key, v);
    else if (key == "n_max") n_max = parse_int<int>(key, v);
    else if (key == "family") family = v;
    else if (key == "a") a = parse_double(key, v);
    else if (key == "b") b = parse_double(key, v);
    else if (key == "poly") poly = v;
    else if (key == "fiber") fiber = v;
    else if (key == "sumi_r") sumi_r = parse_double(key, v);
    else if (key == "sumi_eps") sumi_eps = parse_double(key, v);
    else if (key == "walk_size") walk_size = parse_int<std::size_t>(key, v);
    else if (key == "seed") seed = parse_int<std::uint64_t>(key, v);
    else if (key == "kind") kind = v;
    else if (key == "cluster_eps") cluster_eps = parse_double(key, v);
    else if (key == "n_skip") n_skip = parse_int<int>(key, v);
    else if (key == "n_tail") n_tail = parse_int<int>(key, v);
    else if (key == "horizon") horizon = parse_int<int>(key, v);
    else if (key == "period") period = parse_int<int>(key, v);
    else throw ConfigError("unknown config key '" + key + "'");
}

void Config::validate() const {
    std::ostringstream bad;
    auto need = [&bad](bool ok, const char* what) {
        if (!ok) bad << what << "; ";
    };
    need(nx > 0 && ny > 0 && nx <= 16384 && ny <= 16384, "nx, ny must lie in [1, 16384]");
    need(xmax > xmin && ymax > ymin, "bounds need xmin < xmax and ymin < ymax");
    need(maxiter > 0, "maxiter must be positive");
    need(tol > 0, "tol must be positive");
    need(!threads || *threads > 0, "threads must be positive");
    need(!out.empty(), "out must name a directory");
    need(n >= 1, "n must be positive");
    need(!eta || *eta >= 0, "eta must be non-negative");
    need(r > 0, "r must be positive");
    need(delta_prime > 0, "delta_prime must be positive");
    need(J >= 1, "J must be positive");
    need(n_max >= 1, "n_max must be positive");
    need(family == "example" || family == "biquad" || family == "product" || family == "sumi",
         "family must be example, biquad, product or sumi");
    need(sumi_r > 0 && sumi_eps > 0, "sumi_r and sumi_eps must be positive");
    need(walk_size > 0, "walk_size must be positive");
    need(cluster_eps > 0, "cluster_eps must be positive");
    need(n_skip >= 0 && n_tail > 0 && horizon > 0, "n_skip >= 0, n_tail and horizon positive");
    need(period >= 1 && period <= kMaxSaddlePeriod, "period must lie in [1, 3]");
    if (!bad.str().empty()) throw ConfigError("invalid config: " + bad.str());
    parse_accumulation_kind(kind);
}

Json Config::to_json() const {
    Json j;
    j["nx"] = nx;
    j["ny"] = ny;
    j["xmin"] = xmin;
    j["xmax"] = xmax;
    j["ymin"] = ymin;
    j["ymax"] = ymax;
    j["maxiter"] = maxiter;
    j["tol"] = tol;
    j["threads"] = threads ? Json(*threads) : Json(nullptr);
    j["out"] = out;
    j["n"] = n;
    j["eta"] = eta ? Json(*eta) : Json(nullptr);
    j["r"] = r;
    j["delta_prime"] = delta_prime;
    j["j"] = J;
    j["n_max"] = n_max;
    j["family"] = family;
    j["a"] = a;
    j["b"] = b;
    j["poly"] = poly;
    j["fiber"] = fiber;
    j["sumi_r"] = sumi_r;
    j["sumi_eps"] = sumi_eps;
    j["walk_size"] = walk_size;
    j["seed"] = seed;
    j["kind"] = kind;
    j["cluster_eps"] = cluster_eps;
    j["n_skip"] = n_skip;
    j["n_tail"] = n_tail;
    j["horizon"] = horizon;
    j["period"] = period;
    return j;
}

Config load_config(const KeyValues& file, const KeyValues& overrides) {
    Config c;
    for (const auto& [k, v] : file) c.set(k, v);
    for (const auto& [k, v] : overrides) c.set(k, v);
    c.validate();
    return c;
}

Poly parse_poly(const std::string& spec) {
    std::string s;
    for (char ch : spec)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw ConfigError("empty polynomial spec");
    if (s[0] == 'z') {
        std::size_t i = 1;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == 1) throw ConfigError("polynomial spec '" + spec + "': expected z<degree>");
        int d = parse_int<int>("poly", s.substr(1, i - 1));
        if (d < 1 || d > 64) throw ConfigError("polynomial degree out of range in '" + spec + "'");
        Poly p = Poly::monomial(d);
        if (i < s.size()) {
            if (s[i] != '+' && s[i] != '-') throw ConfigError("polynomial spec '" + spec + "': expected +c or -c");
            double c = parse_double("poly", s.substr(i + 1));
            p = p + Poly({s[i] == '-' ? -c : c});
        }
        return p;
    }
    std::vector<double> coeffs;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) coeffs.push_back(parse_double("poly", item));
    if (coeffs.empty()) throw ConfigError("empty polynomial spec");
    return Poly::from_real(coeffs);
}

RayAngle parse_angle(const std::string& s) {
    auto slash = s.find('/');
    RayAngle t;
    if (slash == std::string::npos) {
        t.num = parse_int<std::uint64_t>("theta", s);
        t.den = 1;
    } else {
        t.num = parse_int<std::uint64_t>("theta", s.substr(0, slash));
        t.den = parse_int<std::uint64_t>("theta", s.substr(slash + 1));
    }
    if (t.den == 0 || t.den > (std::uint64_t{1} << 32)) throw ConfigError("angle denominator must lie in [1, 2^32]");
    return t;
}

int resolve_threads(const std::optional<int>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("SKEWLAB_THREADS")) {
        int v = parse_int<int>("SKEWLAB_THREADS", env);
        if (v < 1) throw ConfigError("SKEWLAB_THREADS must be positive");
        return v;
    }
    return omp_get_max_threads();
}

}  // namespace skewlab
