#pragma once

#include <string_view>
#include <vector>

namespace lzep::cli {

/// "x", "start:stop:count" or "log:start:stop:count". Endpoints are exact.
/// Throws std::invalid_argument on malformed input.
std::vector<double> parse_grid(std::string_view text);

}  // namespace lzep::cli
