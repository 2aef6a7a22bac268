#include "mbkdv/report.hpp"

#include "mbkdv/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mbkdv {

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) throw Error(ErrorCode::DimensionMismatch, "row width does not match header");
  rows.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(columns);
  for (const auto& r : rows) line(r);
  return out.str();
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

double parse_cell(const std::string& cell, const std::string& column) {
  if (cell == "inf") return INFINITY;
  if (cell == "-inf") return -INFINITY;
  if (cell == "nan") return NAN;
  double v = 0.0;
  auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
    throw Error(ErrorCode::ConfigInvalid, "column '" + column + "' holds non-numeric cell '" + cell + "'");
  return v;
}

}  // namespace

std::string emit_plot_data(const Report& report, const std::string& table_name) {
  auto it = report.tables.find(table_name);
  if (it == report.tables.end()) throw Error(ErrorCode::UnknownTable, "no table named '" + table_name + "'");
  const Table& t = it->second;

  std::vector<PlotColumn> plot = t.plot;
  if (plot.empty())
    for (const auto& c : t.columns) plot.push_back({c, false});
  std::vector<std::size_t> index;
  for (const auto& pc : plot) {
    std::size_t k = 0;
    while (k < t.columns.size() && t.columns[k] != pc.column) ++k;
    if (k == t.columns.size()) throw Error(ErrorCode::UnknownTable, "table lacks column '" + pc.column + "'");
    index.push_back(k);
  }

  std::ostringstream out;
  out << '#';
  for (const auto& pc : plot) out << ' ' << (pc.log ? "log_" + pc.column : pc.column);
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < plot.size(); ++i) {
      double v = parse_cell(row[index[i]], plot[i].column);
      if (plot[i].log) v = std::log(v);
      out << (i ? " " : "") << format_number(v);
    }
    out << '\n';
  }
  return out.str();
}

void write_report(const Report& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw Error(ErrorCode::ConfigInvalid, "cannot write " + (dir / name).string());
    f << body;
  };
  nlohmann::json doc;
  doc["metadata"] = report.metadata;
  doc["summary"] = report.summary;
  doc["tables"] = nlohmann::json::array();
  for (const auto& [name, table] : report.tables) doc["tables"].push_back(name);
  write("summary.json", doc.dump(2) + "\n");
  for (const auto& [name, table] : report.tables) {
    write(name + ".csv", table.to_csv());
    write(name + ".dat", emit_plot_data(report, name));
  }
}

}  // namespace mbkdv
