// runner.hpp — experiment orchestration behind the mb-lab CLI. Exit-status
// contract: 0 all pass-criteria met, 1 a numeric criterion failed, 2 usage or
// schema error.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mblab {

struct RunOptions {
    std::string command;               // lemmas|resonance|growth|solve|crosscheck|report
    std::string config_path;           // optional
    std::string out_dir;               // defaults to $MB_LAB_OUT or ./out
    std::uint64_t seed = 42;
    bool seed_given = false;
    std::vector<std::string> overrides;  // key=value
};

int run_command(const RunOptions& opt);

}  // namespace mblab
