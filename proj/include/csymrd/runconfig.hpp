#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace csymrd {

// Fully resolved run description: flags > config file > defaults. Unknown
// flags and unknown config keys are rejected with UsageError.
struct RunConfig {
    std::string command;                 // "certify", "exact eval", ...
    nlohmann::ordered_json settings;     // resolved key/value map
    std::uint64_t seed = 0;
    std::string out_path;                // empty = stdout

    double num(const std::string& key) const;
    double num_or(const std::string& key, double fallback) const;
    bool has(const std::string& key) const;
    std::string str_or(const std::string& key,
                       const std::string& fallback) const;
    int int_or(const std::string& key, int fallback) const;
};

RunConfig parse_config(const std::vector<std::string>& args);

// Runs the command and writes its artifact to `out` (or the --out file).
// Returns the process exit code: 0 ok, 1 verdict/residual failure.
int execute(const RunConfig& cfg, std::ostream& out);

// argv-level entry point used by the binary and the tests; maps UsageError to
// exit code 2 and module errors to a single-line machine-readable record.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// 17-significant-digit, locale-independent formatting used by every artifact
std::string fmt17(double x);

} // namespace csymrd
