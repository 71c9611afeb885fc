// manifest.hpp — per-run manifest: config echo, tool + frozen-constant
// versions, timestamps, and a digest of every emitted file. Written last and
// atomically (tmp + rename).

#pragma once

#include <map>
#include <string>
#include <vector>

namespace mblab {

inline constexpr const char* kToolVersion = "0.1.0";

struct Manifest {
    std::string command;
    std::map<std::string, std::string> config;
    unsigned long long seed = 0;
    std::string started_utc, finished_utc;
    std::vector<std::string> files;  // paths relative to the run directory
    bool pass = false;
    int exit_status = 0;
};

std::string utc_now_iso8601();

// Digests each listed file inside out_dir and writes out_dir/run_manifest.json.
void write_manifest(const std::string& out_dir, const Manifest& m);

}  // namespace mblab
