#pragma once

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace mbkdv {

/// Column of a plot projection; `log` applies the natural logarithm.
struct PlotColumn {
  std::string column;
  bool log = false;
};

/// Named CSV payload. Cells are kept as text so labels and exact values survive.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  /// Projection used by emit_plot_data; empty means every column as is.
  std::vector<PlotColumn> plot;

  void add_row(std::vector<std::string> row);
  std::string to_csv() const;
};

struct Report {
  nlohmann::json metadata = nlohmann::json::object();
  std::map<std::string, Table> tables;
  nlohmann::json summary = nlohmann::json::object();
};

/// Whitespace-delimited numeric columns with a one-line '#' header.
std::string emit_plot_data(const Report& report, const std::string& table_name);

/// Writes summary.json plus <table>.csv and <table>.dat for every table.
void write_report(const Report& report, const std::filesystem::path& dir);

/// Shortest text that round-trips the double.
std::string format_number(double x);

}  // namespace mbkdv
