#include "benford/chain_io.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "benford/errors.hpp"

namespace benford {

namespace {

std::string link_label(std::size_t index) { return "links[" + std::to_string(index) + "]"; }

}  // namespace

ChainSpec parse_chain_spec(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("chain spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("chain spec must be a JSON object");

  int base = 10;
  if (doc.contains("base")) {
    const auto& b = doc["base"];
    if (!b.is_number_integer() || b.get<long long>() < 2 || b.get<long long>() > 1'000'000) {
      throw InputError("chain spec: \"base\" must be an integer >= 2");
    }
    base = b.get<int>();
  }

  if (!doc.contains("links") || !doc["links"].is_array()) {
    throw InputError("chain spec: \"links\" must be an array");
  }
  std::vector<ChainLink> links;
  const auto& raw_links = doc["links"];
  for (std::size_t i = 0; i < raw_links.size(); ++i) {
    const auto& raw = raw_links[i];
    if (!raw.is_object()) throw InputError(link_label(i) + ": must be an object");
    if (!raw.contains("family") || !raw["family"].is_string()) {
      throw InputError(link_label(i) + ": missing string field \"family\"");
    }
    const auto name = raw["family"].get<std::string>();
    const auto id = parse_family_name(name);
    if (!id) throw InputError(link_label(i) + ": unknown family \"" + name + "\"");

    long power = 1;
    if (raw.contains("power")) {
      if (!raw["power"].is_number_integer()) {
        throw InputError(link_label(i) + ": \"power\" must be an integer");
      }
      power = raw["power"].get<long>();
    }
    links.push_back({ScaleFamily::from_id(*id, base), power});
  }
  return ChainSpec::make(base, std::move(links));
}

ChainSpec load_chain_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open chain spec " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_chain_spec(buffer.str());
}

nlohmann::json chain_to_json(const ChainSpec& chain) {
  nlohmann::json links = nlohmann::json::array();
  for (const auto& link : chain.links()) {
    links.push_back({{"family", std::string(link.family.name())}, {"power", link.power}});
  }
  return {{"base", chain.base()}, {"links", links}};
}

}  // namespace benford
