#include "cnet/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "cnet/error.hpp"

namespace cnet {

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open " + path + " for digest");
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    char out[17];
    std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(h));
    return out;
}

void write_manifest(const std::string& primary_output, const std::string& subcommand,
                    const std::vector<std::string>& argv, std::uint64_t seed,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs) {
    nlohmann::json j;
    j["tool_version"] = kToolVersion;
    j["subcommand"] = subcommand;
    j["argv"] = argv;
    j["seed"] = seed;
    j["timestamp_unix"] =
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
    for (const auto& p : inputs) j["inputs"].push_back({{"path", p}, {"digest", file_digest(p)}});
    for (const auto& p : outputs) j["outputs"].push_back({{"path", p}, {"digest", file_digest(p)}});

    std::ofstream out(primary_output + ".manifest.json");
    if (!out) throw input_error("cannot write manifest for " + primary_output);
    out << j.dump(2) << '\n';
}

} // namespace cnet
