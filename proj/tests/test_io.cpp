#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <limits>
#include <map>

#include "skewlab/errors.hpp"
#include "skewlab/io.hpp"
#include "support/gen.hpp"

using namespace skewlab;

TEST_CASE("PPM bytes round trip") {
    std::vector<Rgb> px = {palette::kConnected, palette::kEscaping, palette::kBoundary,
                           palette::kInconclusive, palette::kConnected, palette::kBoundary};
    auto bytes = ppm_bytes(3, 2, px);
    CHECK(bytes.substr(0, 11) == "P6\n3 2\n255\n");
    CHECK(bytes.size() == 11 + 18);
    auto img = parse_ppm(bytes);
    CHECK(img.nx == 3);
    CHECK(img.ny == 2);
    CHECK(img.pixels == px);
    CHECK_THROWS_AS(ppm_bytes(2, 2, px), IoError);
    CHECK_THROWS_AS(parse_ppm("P3\n1 1\n255\n"), IoError);
}

TEST_CASE("escape colors mark the boundary of the bounded set") {
    GridSpec g(0.0, 2.0, 33, 33);
    auto e = filled_julia_base(Poly::monomial(4), g, 100);
    auto px = escape_colors(e);
    std::size_t black = 0, red = 0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const auto& c = px[static_cast<std::size_t>(j) * g.nx + i];
            if (!e.bounded(i, j)) CHECK(c == palette::kEscaping);
            black += c == palette::kConnected;
            red += c == palette::kBoundary;
        }
    CHECK(black + red == e.count_bounded());
    CHECK(red == boundary_extract(e).size());
}

TEST_CASE("locus palette") {
    auto px = locus_colors({LocusLabel::Connected, LocusLabel::Escaping, LocusLabel::BoundaryWithinTol,
                            LocusLabel::Inconclusive});
    CHECK(px[0] == palette::kConnected);
    CHECK(px[1] == palette::kEscaping);
    CHECK(px[2] == palette::kBoundary);
    CHECK(px[3] == palette::kInconclusive);
}

TEST_CASE("binary grid layout and round trip") {
    GridSpec g = GridSpec::box(-3, 3, -1, 1, 7, 5);
    auto e = filled_julia_base(Poly({-1.0, 0.0, 1.0}), g, 50);
    auto bytes = grid_bytes(e);
    CHECK(bytes.size() == 8 + 32 + 4 * 35);
    std::uint32_t nx = 0;
    double xmin = 0;
    std::memcpy(&nx, bytes.data(), 4);
    std::memcpy(&xmin, bytes.data() + 8, 8);
    CHECK(nx == 7);
    CHECK(xmin == -3.0);
    auto back = parse_grid(bytes);
    CHECK(back.iters == e.iters);
    CHECK(back.grid.nx == 7);
    CHECK(back.grid.ymax() == doctest::Approx(1.0));
    CHECK_THROWS_AS(parse_grid(bytes.substr(0, 20)), IoError);
    CHECK_THROWS_AS(parse_grid(bytes + "x"), IoError);
}

TEST_CASE("CSV point clouds") {
    auto s = csv_points(std::vector<Complex>{{1.5, -2.0}});
    CHECK(s == "re,im\n1.5,-2\n");
    auto t = csv_points(std::vector<Point2>{{{1.0, 0.0}, {0.0, 0.25}}});
    CHECK(t == "z_re,z_im,w_re,w_im\n1,0,0,0.25\n");
}

TEST_CASE("key value parsing") {
    auto kv = parse_key_values("# comment\nNX = 64 \n\nkind=full # trailing\nout = a b\n");
    CHECK(kv.size() == 3);
    CHECK(kv["nx"] == "64");
    CHECK(kv["kind"] == "full");
    CHECK(kv["out"] == "a b");
    CHECK_THROWS_AS(parse_key_values("nx 64\n"), ConfigError);
    CHECK_THROWS_AS(parse_key_values("= 3\n"), ConfigError);
}

TEST_CASE("config layering and validation") {
    auto c = load_config({{"nx", "64"}, {"kind", "full"}}, {{"kind", "cc"}});
    CHECK(c.nx == 64);
    CHECK(c.kind == "cc");
    CHECK(c.ny == 512);
    CHECK_FALSE(c.eta.has_value());
    CHECK_THROWS_AS(load_config({{"xmin", "1"}, {"xmax", "1"}}, {}), ConfigError);
    CHECK_THROWS_AS(load_config({{"nx", "-4"}}, {}), ConfigError);
    CHECK_THROWS_AS(load_config({{"nx", "4.5"}}, {}), ConfigError);
    CHECK_THROWS_AS(load_config({{"tol", "abc"}}, {}), ConfigError);
    CHECK_THROWS_AS(load_config({{"bogus", "1"}}, {}), ConfigError);
    CHECK_THROWS_AS(load_config({}, {{"kind", "bogus"}}), ConfigError);
    CHECK_THROWS_AS(load_config({{"family", "cubic"}}, {}), ConfigError);
    CHECK_THROWS_AS(load_config({{"threads", "0"}}, {}), ConfigError);
    auto j = c.to_json();
    for (const auto& k : Config::keys()) CHECK(j.contains(k));
    CHECK(j["nx"] == 64);
    CHECK(j["kind"] == "cc");
}

TEST_CASE("every config key can be set from text") {
    const std::map<std::string, std::string> sample = {
        {"nx", "8"},      {"ny", "8"},          {"xmin", "-1"},    {"xmax", "1"},       {"ymin", "-1"},
        {"ymax", "1"},    {"maxiter", "10"},    {"tol", "1e-6"},   {"threads", "2"},    {"out", "d"},
        {"n", "3"},       {"eta", "1e-9"},      {"r", "0.01"},     {"delta_prime", "0.1"}, {"j", "5"},
        {"n_max", "4"},   {"family", "sumi"},   {"a", "-1"},       {"b", "0.5"},        {"poly", "z2-1"},
        {"fiber", "0,0,1"}, {"sumi_r", "3"},    {"sumi_eps", "0.1"}, {"walk_size", "99"}, {"seed", "7"},
        {"kind", "full"}, {"cluster_eps", "0.02"}, {"n_skip", "1"}, {"n_tail", "5"},     {"horizon", "9"},
        {"period", "2"}};
    CHECK(sample.size() == Config::keys().size());
    for (const auto& k : Config::keys()) REQUIRE(sample.count(k));
    auto c = load_config(sample, {});
    CHECK(c.J == 5);
    CHECK(c.threads == 2);
    CHECK(*c.eta == 1e-9);
    CHECK(c.walk_size == 99);
    CHECK(c.period == 2);
}

TEST_CASE("polynomial and angle specs") {
    Poly z4 = parse_poly("z4");
    CHECK(z4.degree() == 4);
    CHECK(z4(Complex(2.0)) == Complex(16.0));
    Poly q = parse_poly("z2-1");
    CHECK(q(Complex(3.0)) == Complex(8.0));
    Poly r = parse_poly("2, 0, 1");
    CHECK(r(Complex(1.0)) == Complex(3.0));
    CHECK_THROWS_AS(parse_poly("w3"), ConfigError);
    CHECK_THROWS_AS(parse_poly("z"), ConfigError);
    CHECK_THROWS_AS(parse_poly("1,x"), ConfigError);
    auto a = parse_angle("3/16");
    CHECK(a.num == 3);
    CHECK(a.den == 16);
    CHECK(parse_angle("0").den == 1);
    CHECK_THROWS_AS(parse_angle("1/0"), ConfigError);
    CHECK_THROWS_AS(parse_angle("a/b"), ConfigError);
}

TEST_CASE("thread count resolution") {
    CHECK(resolve_threads(3) == 3);
    setenv("SKEWLAB_THREADS", "5", 1);
    CHECK(resolve_threads(std::nullopt) == 5);
    CHECK(resolve_threads(2) == 2);
    setenv("SKEWLAB_THREADS", "zero", 1);
    CHECK_THROWS_AS(resolve_threads(std::nullopt), ConfigError);
    unsetenv("SKEWLAB_THREADS");
    CHECK(resolve_threads(std::nullopt) >= 1);
}

TEST_CASE("sha256 of known strings") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("output set writes every file and a manifest") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "skewlab_io_test";
    fs::remove_all(dir);
    OutputSet out;
    out.add("a.txt", "hello\n");
    out.add("b.bin", std::string("\0\1\2", 3));
    out.add_input("config", "nx = 4\n");
    CHECK_THROWS_AS(out.add("manifest.json", "{}"), IoError);
    auto names = out.commit(dir.string(), "test", Json{{"nx", 4}}, 2, 0.5);
    CHECK(names == std::vector<std::string>{"a.txt", "b.bin", "manifest.json"});
    CHECK(read_file((dir / "a.txt").string()) == "hello\n");
    auto m = Json::parse(read_file((dir / "manifest.json").string()));
    CHECK(m["command"] == "test");
    CHECK(m["threads"] == 2);
    CHECK(m["outputs"].size() == 2);
    CHECK(m["outputs"][0]["sha256"] == sha256_hex("hello\n"));
    CHECK(m["inputs"]["config"] == sha256_hex("nx = 4\n"));
    CHECK(m["timing"]["wall_time_s"] == 0.5);
    fs::remove_all(dir);
    CHECK_THROWS_AS(read_file((dir / "missing").string()), IoError);
}

TEST_CASE("report JSON carries the fixed fields") {
    auto rep = check_contract(1.0 / 32, 0.2, 0.02);
    auto j = to_json(rep);
    CHECK(j["lemma_id"] == "contract");
    CHECK(j["pass"] == true);
    CHECK(j["margin"].get<double>() == rep.margin);
    CHECK(j["params"]["delta_prime"] == 0.2);
    CHECK(j["evidence"]["values"]["u_margin"].get<double>() == rep.value("u_margin"));
    CHECK(j.dump() == to_json(check_contract(1.0 / 32, 0.2, 0.02)).dump());

    LemmaReport nan_rep;
    nan_rep.lemma_id = "x";
    nan_rep.margin = std::numeric_limits<double>::quiet_NaN();
    CHECK(to_json(nan_rep)["margin"].is_null());
}

TEST_CASE("accumulation JSON lists clusters") {
    AccumulationEstimate e;
    e.kind = AccumulationKind::Full;
    e.clusters.push_back({{Complex(1, 2), Complex(3, 4)}, 5});
    StableClassification cls;
    cls.labels = {0, 0, 1, -1};
    auto j = to_json(e, &cls);
    CHECK(j["kind"] == "full");
    CHECK(j["clusters"][0]["center_z"][1] == 2.0);
    CHECK(j["clusters"][0]["center_w"][0] == 3.0);
    CHECK(j["clusters"][0]["count"] == 5);
    CHECK(j["labels"]["0"] == 2);
    CHECK(j["labels"]["-1"] == 1);
    CHECK(to_json(e)["labels"].is_null());
}
