#include "grid.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lzep::cli {
namespace {

double parse_number(std::string_view text, std::string_view whole) {
  // from_chars for double is not available in every libstdc++ we target.
  std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("bad number '" + s + "' in grid '" + std::string(whole) + "'");
  }
  return v;
}

long parse_count(std::string_view text, std::string_view whole) {
  long count = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), count);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || count < 1 || count > 10'000'000) {
    throw std::invalid_argument("bad point count '" + std::string(text) + "' in grid '" + std::string(whole) + "'");
  }
  return count;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  const std::string_view whole = text;
  bool log_scale = false;
  if (text.substr(0, 4) == "log:") {
    log_scale = true;
    text.remove_prefix(4);
  }
  std::vector<std::string_view> parts;
  for (std::size_t pos = 0;;) {
    const std::size_t next = text.find(':', pos);
    parts.push_back(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  if (parts.size() == 1 && !log_scale) return {parse_number(parts[0], whole)};
  if (parts.size() != 3) {
    throw std::invalid_argument("grid '" + std::string(whole) + "' is not [log:]start:stop:count");
  }
  const double start = parse_number(parts[0], whole);
  const double stop = parse_number(parts[1], whole);
  const long count = parse_count(parts[2], whole);
  if (log_scale && !(start > 0.0 && stop > 0.0)) {
    throw std::invalid_argument("log grid '" + std::string(whole) + "' needs positive endpoints");
  }
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    const double f = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    grid[i] = log_scale ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                        : start + f * (stop - start);
  }
  grid.front() = start;
  if (count > 1) grid.back() = stop;
  return grid;
}

}  // namespace lzep::cli
