#pragma once

// Batch front end: one subcommand per invocation, JSON in, JSON report (or
// SVG) out. Exit codes: 0 ok, 2 well-formed but invalid input, 1 malformed
// input or internal error.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace btoric::cli {

inline constexpr const char* kToolName = "btoric";
inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr const char* kSchemaVersion = "1.0";

const std::vector<std::string>& commands();

struct Options {
    std::string command;
    std::optional<double> tolerance;
    // Comma-separated values, or start:stop:ratio.
    std::optional<std::string> epsilon_ladder;
    std::string format = "json";
    std::string schema_version = kSchemaVersion;
};

struct Outcome {
    int exit_code = 1;
    std::string output;
};

Outcome run(const Options& opts, std::string_view input);

// Report for failures that happen before a command runs (unreadable input, bad flags).
Outcome failure(const Options& opts, std::string_view input, const std::string& message);

std::string sha256_hex(std::string_view data);

}  // namespace btoric::cli
