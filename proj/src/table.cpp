#include "fshell/table.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace fshell {

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, res.ptr);
}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::logic_error("row has " + std::to_string(row.size()) + " cells, table has " +
                           std::to_string(columns.size()) + " columns");
  rows.push_back(std::move(row));
}

namespace {

struct CellWriter {
  std::string& out;
  void operator()(double v) const { out += format_real(v); }
  void operator()(std::int64_t v) const { out += std::to_string(v); }
  void operator()(const std::string& s) const { out += s; }
};

}  // namespace

std::string ResultTable::to_csv() const {
  std::string out;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (j) out += ',';
    out += columns[j];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      std::visit(CellWriter{out}, row[j]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace fshell
