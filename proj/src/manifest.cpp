#include "mblab/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "mblab/frozen.hpp"
#include "mblab/sha256.hpp"

namespace mblab {

std::string utc_now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const std::string& out_dir, const Manifest& m) {
    nlohmann::json j;
    j["command"] = m.command;
    j["config"] = m.config;
    j["seed"] = m.seed;
    j["tool_version"] = kToolVersion;
    j["frozen_constants_version"] = frozen::kVersion;
    j["started_utc"] = m.started_utc;
    j["finished_utc"] = m.finished_utc;
    j["pass"] = m.pass;
    j["exit_status"] = m.exit_status;
    nlohmann::json files = nlohmann::json::array();
    for (const auto& rel : m.files) {
        const std::string full = out_dir + "/" + rel;
        nlohmann::json f;
        f["path"] = rel;
        f["sha256"] = sha256_file_hex(full);
        f["bytes"] = std::filesystem::file_size(full);
        files.push_back(f);
    }
    j["outputs"] = files;

    const std::string tmp = out_dir + "/run_manifest.json.tmp";
    const std::string final_path = out_dir + "/run_manifest.json";
    {
        std::ofstream out(tmp, std::ios::binary);
        out << j.dump(2) << "\n";
    }
    std::filesystem::rename(tmp, final_path);
}

}  // namespace mblab
