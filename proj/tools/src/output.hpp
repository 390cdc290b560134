#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace lzep::cli {

/// 17 significant digits: round-trips every double.
std::string format_number(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> cells);
  std::size_t rows() const noexcept { return rows_.size(); }
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Non-finite numbers become null.
nlohmann::json number_json(double v);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace lzep::cli
