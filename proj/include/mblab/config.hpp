// config.hpp — flat key=value run configuration with strict schema validation.
// Chosen flat (no nesting) so manifests diff cleanly.

#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mblab {

// Schema violations map to exit status 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class RunConfig {
  public:
    RunConfig() = default;

    static RunConfig from_file(const std::string& path);
    static RunConfig from_text(const std::string& text);

    // "key=value" command-line override
    void apply_override(const std::string& kv);

    // throws ConfigError naming the first unknown key
    void validate_keys(const std::set<std::string>& allowed) const;

    bool has(const std::string& key) const { return kv_.count(key) > 0; }
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& fallback) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

}  // namespace mblab
