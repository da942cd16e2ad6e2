#ifndef PATHENS_CLI_HPP
#define PATHENS_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace pathens::cli {

/// Invalid or inconsistent configuration; mapped to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string command;
    std::filesystem::path config_path;
    std::filesystem::path out_dir = ".";
    std::optional<std::uint64_t> seed_override;
    std::string format = "json";
};

/// Executes one configured experiment and writes its report files into
/// out_dir. Identical options produce byte-identical outputs. Returns the
/// report JSON (also written to disk).
nlohmann::json run(const Options& options);

/// Full argv entry point: parses flags, runs, maps failures to exit codes
/// (0 success, 2 config error, 3 runtime error).
int main_entry(int argc, char** argv);

} // namespace pathens::cli

#endif
