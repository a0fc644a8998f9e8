#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <string_view>

#include "benford/conformance.hpp"
#include "benford/errors.hpp"

namespace benford {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\"");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\"");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || end != cell.data() + cell.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

CsvColumn read_csv_column(const std::filesystem::path& path, const ColumnSelector& column,
                          bool has_header) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());

  if (std::holds_alternative<std::string>(column) && !has_header) {
    throw InputError("selecting a column by name requires a header row");
  }

  std::optional<std::size_t> index;
  if (const auto* i = std::get_if<std::size_t>(&column)) index = *i;

  CsvColumn result;
  bool header_pending = has_header;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto cells = split(line);
    if (header_pending) {
      header_pending = false;
      if (!index) {
        const auto& name = std::get<std::string>(column);
        for (std::size_t c = 0; c < cells.size(); ++c) {
          if (cells[c] == name) index = c;
        }
        if (!index) throw InputError("column \"" + name + "\" not found in header");
      }
      continue;
    }
    const auto value = *index < cells.size() ? parse_number(cells[*index]) : std::nullopt;
    if (value) {
      result.values.push_back(*value);
    } else {
      ++result.non_numeric;
    }
  }
  return result;
}

}  // namespace benford
