#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bootlab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kOutputDirEnv = "BOOTLAB_OUTPUT_DIR";

struct ExperimentConfig {
    std::string command;
    std::map<std::string, std::string> params;  // comma lists kept as written
    bool quick = false;

    bool has(const std::string& key) const { return params.count(key) != 0; }
    std::string text(const std::string& key, const std::string& fallback = "") const;
    long long integer(const std::string& key, long long fallback = 0) const;
    double real(const std::string& key, double fallback = 0.0) const;
    std::vector<double> reals(const std::string& key) const;
    std::vector<long long> integers(const std::string& key) const;

    // key=value lines, sorted by key, suitable as a config file.
    std::string to_text() const;
};

// Parses `command --key value ...` (program name excluded). A flat key=value
// file may come from --config or from `file`; flags override file entries.
ExperimentConfig parse_config(const std::vector<std::string>& args,
                              const std::optional<std::filesystem::path>& file = std::nullopt);

int run_command(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

// parse_config + run_command with exit-code mapping.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bootlab
