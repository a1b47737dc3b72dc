#pragma once

// File formats, key = value configuration and run manifests.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "skewlab/certify.hpp"
#include "skewlab/family.hpp"
#include "skewlab/invariant.hpp"
#include "skewlab/julia.hpp"

namespace skewlab {

using Json = nlohmann::ordered_json;
using Rgb = std::array<std::uint8_t, 3>;

namespace palette {
inline constexpr Rgb kConnected{0, 0, 0};
inline constexpr Rgb kEscaping{255, 255, 255};
inline constexpr Rgb kBoundary{255, 0, 0};
inline constexpr Rgb kInconclusive{128, 128, 128};
}  // namespace palette

// binary PPM (P6)
std::string ppm_bytes(int nx, int ny, const std::vector<Rgb>& pixels);
struct PpmImage {
    int nx = 0, ny = 0;
    std::vector<Rgb> pixels;
};
PpmImage parse_ppm(const std::string& bytes);

// bounded black, escaping white, bounded pixels with an escaping 4-neighbour red
std::vector<Rgb> escape_colors(const EscapeGrid& g);
std::vector<Rgb> locus_colors(const std::vector<LocusLabel>& labels);

// header nx, ny (u32 LE) and xmin, xmax, ymin, ymax (f64 LE), then the
// row-major u32 iteration counts, 0xFFFFFFFF for bounded pixels
std::string grid_bytes(const EscapeGrid& g);
EscapeGrid parse_grid(const std::string& bytes);

std::string csv_points(const std::vector<Complex>& pts);
std::string csv_points(const std::vector<Point2>& pts);

Json complex_json(Complex z);
Json to_json(const LemmaReport& r);
Json to_json(const Certificate& c);
Json to_json(const SaddleSetEstimate& s);
Json to_json(const AccumulationEstimate& e, const StableClassification* labels = nullptr);
Json to_json(const ExampleInstance& ex);

// Key = value text with '#' comments. Keys are lower case.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(const std::string& text);

struct Config {
    int nx = 512, ny = 512;
    double xmin = -3.0, xmax = 3.0, ymin = -3.0, ymax = 3.0;
    int maxiter = 2000;
    double tol = 1e-9;
    std::optional<int> threads;
    std::string out = "out";

    // instance
    int n = 8;
    std::optional<double> eta;
    double r = 1.0 / 32;
    double delta_prime = 0.2;
    int J = 10;
    int n_max = 8;

    // families and estimators
    std::string family = "example";  // example | biquad | product | sumi
    double a = -2.0, b = -2.0;
    std::string poly;   // base polynomial spec for product / render-base
    std::string fiber = "0,0,1";  // fiber polynomial in w for product
    double sumi_r = 4.0, sumi_eps = 0.01;
    std::size_t walk_size = 1 << 14;
    std::uint64_t seed = 1;
    std::string kind = "pt";
    double cluster_eps = 0.01;
    int n_skip = 4, n_tail = 32, horizon = 2000;
    int period = 1;

    static const std::vector<std::string>& keys();
    void set(const std::string& key, const std::string& value);
    void validate() const;
    Json to_json() const;
};

// defaults, then the file, then overrides; throws ConfigError
Config load_config(const KeyValues& file, const KeyValues& overrides);

// "z4" -> z^4, "z2-1" style monomial plus constant, or comma separated
// real coefficients lowest degree first
Poly parse_poly(const std::string& spec);
// "p/q" or an integer
RayAngle parse_angle(const std::string& s);

// worker threads: flag, else SKEWLAB_THREADS, else the OpenMP default
int resolve_threads(const std::optional<int>& flag);

std::string sha256_hex(const std::string& bytes);

// Collects output files in memory and writes them with a manifest in one pass.
class OutputSet {
public:
    void add(const std::string& name, std::string bytes);
    void add_input(const std::string& name, const std::string& bytes);
    const std::map<std::string, std::string>& files() const { return files_; }

    // writes every file and manifest.json into dir; returns the file list
    std::vector<std::string> commit(const std::string& dir, const std::string& command, const Json& config,
                                    int threads, double wall_time) const;

private:
    std::map<std::string, std::string> files_;
    std::map<std::string, std::string> inputs_;
};

std::string read_file(const std::string& path);

}  // namespace skewlab
