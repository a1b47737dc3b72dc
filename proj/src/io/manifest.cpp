#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "skewlab/errors.hpp"
#include "skewlab/io.hpp"

namespace skewlab {

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw IoError("sha256 digest failed");
    std::string out;
    char hex[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(hex, sizeof hex, "%02x", md[i]);
        out += hex;
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void OutputSet::add(const std::string& name, std::string bytes) {
    if (name == "manifest.json") throw IoError("manifest.json is reserved");
    files_[name] = std::move(bytes);
}

void OutputSet::add_input(const std::string& name, const std::string& bytes) { inputs_[name] = sha256_hex(bytes); }

std::vector<std::string> OutputSet::commit(const std::string& dir, const std::string& command, const Json& config,
                                           int threads, double wall_time) const {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir + ": " + ec.message());

    Json outputs = Json::array();
    std::vector<std::string> names;
    for (const auto& [name, bytes] : files_) {
        std::ofstream out(fs::path(dir) / name, std::ios::binary);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw IoError("cannot write " + name + " in " + dir);
        outputs.push_back({{"name", name}, {"bytes", bytes.size()}, {"sha256", sha256_hex(bytes)}});
        names.push_back(name);
    }
    Json inputs = Json::object();
    for (const auto& [k, v] : inputs_) inputs[k] = v;
    Json manifest = {{"command", command},
                     {"config", config},
                     {"threads", threads},
                     {"inputs", inputs},
                     {"outputs", outputs},
                     {"timing", {{"wall_time_s", wall_time}}}};
    std::ofstream m(fs::path(dir) / "manifest.json", std::ios::binary);
    m << manifest.dump(2) << '\n';
    if (!m) throw IoError("cannot write manifest.json in " + dir);
    names.push_back("manifest.json");
    return names;
}

}  // namespace skewlab
