#include "output.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace lzep::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  return fmt::format("{:.17g}", v);
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::logic_error("CsvTable: row width does not match header");
  rows_.push_back(std::move(cells));
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

nlohmann::json number_json(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << doc.dump(2) << '\n';
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace lzep::cli
