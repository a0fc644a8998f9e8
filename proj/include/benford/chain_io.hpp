#pragma once

#include <filesystem>
#include <string_view>

#include <json.hpp>

#include "benford/chains.hpp"

namespace benford {

/// Parses a chain spec:
///   { "base": 10, "links": [ { "family": "exponential", "power": 1 }, ... ] }
/// "base" defaults to 10 and "power" to 1. Throws InputError naming the
/// offending link index.
ChainSpec parse_chain_spec(std::string_view text);
ChainSpec load_chain_spec(const std::filesystem::path& path);

nlohmann::json chain_to_json(const ChainSpec& chain);

}  // namespace benford
