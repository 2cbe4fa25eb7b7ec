#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cnet {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a over the file bytes, hex-encoded
std::string file_digest(const std::string& path);

// One manifest per artifact-producing command: tool version, argv, seeds,
// input/output digests, timestamp. Written next to the primary output as
// <output>.manifest.json.
void write_manifest(const std::string& primary_output, const std::string& subcommand,
                    const std::vector<std::string>& argv, std::uint64_t seed,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs);

struct PipelineOptions {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    int threads = 1;
    // subset of {"stylized", "agent", "real"}; empty = all
    std::vector<std::string> families;
    bool standardize = true;
};

// generate -> induce -> sample -> featurize -> analyze -> plot; every step
// skips work whose outputs already exist on disk.
int run_pipeline(const PipelineOptions& opts);

void plot_scatter(const std::string& scatter_csv, const std::string& out_svg);

} // namespace cnet
