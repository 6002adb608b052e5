#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "manifest.hpp"

namespace commlab::cli {

/// Runs one subcommand from its resolved parameters. Parameters are exactly
/// what the manifest records, so a replay takes the same path as the
/// original invocation.
using CommandFn = void (*)(const json& params, Inputs& inputs, Artifacts& out);

CommandFn find_command(std::string_view name);

/// "0..9", "3,5,8" or a mix such as "0..4,10".
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

/// Runs the command, then writes manifest.json beside its outputs.
json execute(std::string_view subcommand, const json& params, Artifacts& out);

}  // namespace commlab::cli
