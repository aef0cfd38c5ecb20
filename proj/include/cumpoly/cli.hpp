#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cumpoly::cli
{

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

// Runs the command line `args` (without the program name). Results go to
// `out`; diagnostics go to `err` as one JSON line.
int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err);

// Text renderings derived from the canonical JSON document.
std::string render_pretty(const nlohmann::json &doc);
std::string render_csv(const nlohmann::json &doc);

} // namespace cumpoly::cli
