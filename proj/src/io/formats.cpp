#include <bit>
#include <cmath>
#include <cstring>
#include <sstream>

#include "skewlab/errors.hpp"
#include "skewlab/io.hpp"

namespace skewlab {

static_assert(std::endian::native == std::endian::little, "grid format writes native little-endian words");

namespace {

template <class T>
void put(std::string& out, T v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.append(buf, sizeof(T));
}

template <class T>
T get(const std::string& in, std::size_t& pos) {
    if (pos + sizeof(T) > in.size()) throw IoError("truncated grid file");
    T v;
    std::memcpy(&v, in.data() + pos, sizeof(T));
    pos += sizeof(T);
    return v;
}

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json point_json(const Point2& p) { return {{"z", complex_json(p.z)}, {"w", complex_json(p.w)}}; }

}  // namespace

std::string ppm_bytes(int nx, int ny, const std::vector<Rgb>& pixels) {
    if (nx <= 0 || ny <= 0 || pixels.size() != static_cast<std::size_t>(nx) * ny)
        throw IoError("pixel count does not match the image size");
    std::string out = "P6\n" + std::to_string(nx) + " " + std::to_string(ny) + "\n255\n";
    out.reserve(out.size() + pixels.size() * 3);
    for (const auto& p : pixels) out.append(reinterpret_cast<const char*>(p.data()), 3);
    return out;
}

PpmImage parse_ppm(const std::string& bytes) {
    std::istringstream in(bytes);
    std::string magic;
    int maxval = 0;
    PpmImage img;
    in >> magic >> img.nx >> img.ny >> maxval;
    if (magic != "P6" || img.nx <= 0 || img.ny <= 0 || maxval != 255) throw IoError("not an 8-bit P6 image");
    in.get();
    std::size_t off = static_cast<std::size_t>(in.tellg());
    std::size_t n = static_cast<std::size_t>(img.nx) * img.ny;
    if (bytes.size() != off + 3 * n) throw IoError("P6 pixel data has the wrong length");
    img.pixels.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        for (int c = 0; c < 3; ++c) img.pixels[i][c] = static_cast<std::uint8_t>(bytes[off + 3 * i + c]);
    return img;
}

std::vector<Rgb> escape_colors(const EscapeGrid& g) {
    const int nx = g.grid.nx, ny = g.grid.ny;
    std::vector<Rgb> px(g.grid.size(), palette::kEscaping);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            if (!g.bounded(i, j)) continue;
            bool edge = (i > 0 && !g.bounded(i - 1, j)) || (i + 1 < nx && !g.bounded(i + 1, j)) ||
                        (j > 0 && !g.bounded(i, j - 1)) || (j + 1 < ny && !g.bounded(i, j + 1));
            px[static_cast<std::size_t>(j) * nx + i] = edge ? palette::kBoundary : palette::kConnected;
        }
    return px;
}

std::vector<Rgb> locus_colors(const std::vector<LocusLabel>& labels) {
    std::vector<Rgb> px;
    px.reserve(labels.size());
    for (auto l : labels) {
        switch (l) {
            case LocusLabel::Connected: px.push_back(palette::kConnected); break;
            case LocusLabel::Escaping: px.push_back(palette::kEscaping); break;
            case LocusLabel::BoundaryWithinTol: px.push_back(palette::kBoundary); break;
            case LocusLabel::Inconclusive: px.push_back(palette::kInconclusive); break;
        }
    }
    return px;
}

std::string grid_bytes(const EscapeGrid& g) {
    std::string out;
    out.reserve(40 + 4 * g.iters.size());
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.grid.nx));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(g.grid.ny));
    for (double v : {g.grid.xmin(), g.grid.xmax(), g.grid.ymin(), g.grid.ymax()}) put<double>(out, v);
    for (auto it : g.iters) put<std::uint32_t>(out, it);
    return out;
}

EscapeGrid parse_grid(const std::string& bytes) {
    std::size_t pos = 0;
    int nx = static_cast<int>(get<std::uint32_t>(bytes, pos));
    int ny = static_cast<int>(get<std::uint32_t>(bytes, pos));
    double x0 = get<double>(bytes, pos), x1 = get<double>(bytes, pos);
    double y0 = get<double>(bytes, pos), y1 = get<double>(bytes, pos);
    EscapeGrid g;
    g.grid = GridSpec::box(x0, x1, y0, y1, nx, ny);
    g.grid.validate();
    if (bytes.size() != pos + 4 * g.grid.size()) throw IoError("grid data has the wrong length");
    g.iters.resize(g.grid.size());
    for (auto& it : g.iters) it = get<std::uint32_t>(bytes, pos);
    return g;
}

std::string csv_points(const std::vector<Complex>& pts) {
    std::ostringstream os;
    os.precision(17);
    os << "re,im\n";
    for (auto z : pts) os << z.real() << ',' << z.imag() << '\n';
    return os.str();
}

std::string csv_points(const std::vector<Point2>& pts) {
    std::ostringstream os;
    os.precision(17);
    os << "z_re,z_im,w_re,w_im\n";
    for (const auto& p : pts) os << p.z.real() << ',' << p.z.imag() << ',' << p.w.real() << ',' << p.w.imag() << '\n';
    return os.str();
}

Json complex_json(Complex z) { return Json::array({number(z.real()), number(z.imag())}); }

Json to_json(const LemmaReport& r) {
    Json values = Json::object();
    for (const auto& [k, v] : r.values) values[k] = number(v);
    return {{"lemma_id", r.lemma_id},
            {"params",
             {{"n", r.params.n},
              {"r", r.params.r},
              {"delta", r.params.delta},
              {"delta_prime", r.params.delta_prime},
              {"eps_n", r.params.eps_n},
              {"N", r.params.N}}},
            {"margin", number(r.margin)},
            {"pass", r.pass},
            {"evidence", {{"text", r.evidence}, {"values", values}}}};
}

Json to_json(const Certificate& c) {
    Json reports = Json::array();
    for (const auto& r : c.reports) reports.push_back(to_json(r));
    Json j = {{"n", c.n}, {"pass", c.pass}, {"failing", c.failing}, {"constructed", c.constructed}};
    if (c.constructed) {
        j["delta"] = c.delta;
        j["N"] = c.N;
        j["instance"] = to_json(c.instance);
    }
    j["reports"] = reports;
    return j;
}

Json to_json(const SaddleSetEstimate& s) {
    Json sad = Json::array();
    for (const auto& p : s.saddles)
        sad.push_back({{"location", point_json(p.location)},
                       {"period", p.period},
                       {"base_multiplier", complex_json(p.base_multiplier)},
                       {"fiber_multiplier", complex_json(p.fiber_multiplier)},
                       {"component", p.component_index},
                       {"cycle", p.cycle_index}});
    return {{"component_count", s.component_count},
            {"cycle_count", s.cycle_count},
            {"cluster_eps", s.cluster_eps},
            {"saddles", sad}};
}

Json to_json(const AccumulationEstimate& e, const StableClassification* labels) {
    Json cl = Json::array();
    for (const auto& c : e.clusters)
        cl.push_back({{"center_z", complex_json(c.center.z)}, {"center_w", complex_json(c.center.w)}, {"count", c.count}});
    Json j = {{"kind", to_string(e.kind)},
              {"params",
               {{"n_skip", e.params.n_skip},
                {"n_tail", e.params.n_tail},
                {"cluster_eps", e.params.cluster_eps},
                {"horizon", e.params.horizon}}},
              {"contributing_samples", e.contributing_samples},
              {"clusters", cl}};
    if (e.kind == AccumulationKind::Componentwise) {
        j["base_components"] = e.base_components;
        j["component_pixel"] = e.component_pixel;
    }
    if (labels) {
        std::map<int, int> counts;
        for (int l : labels->labels) ++counts[l];
        Json lj = Json::object();
        for (const auto& [l, c] : counts) lj[std::to_string(l)] = c;
        j["labels"] = lj;
    } else {
        j["labels"] = nullptr;
    }
    return j;
}

Json to_json(const ExampleInstance& ex) {
    Json cycle = Json::array();
    for (auto z : ex.cycle) cycle.push_back(complex_json(z));
    return {{"n", ex.n},
            {"a", hp_to_string(ex.params.a)},
            {"b", hp_to_string(ex.params.b)},
            {"b_unperturbed", hp_to_string(ex.unperturbed.b)},
            {"eta", hp_to_string(ex.eta)},
            {"beta", hp_to_string(ex.beta)},
            {"alpha", complex_json(ex.alpha)},
            {"eps_n", ex.epsilon},
            {"zero_escape_step", ex.zero_escape_step},
            {"cycle_period", ex.cycle_period},
            {"cycle_multiplier", ex.cycle_multiplier},
            {"cycle", cycle},
            {"walk_size", ex.walk.size()},
            {"tree_size", ex.tree.size()}};
}

}  // namespace skewlab
