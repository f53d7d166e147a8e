#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace fshell {

// 17 significant digits, '.' separator, locale-independent.
std::string format_real(double v);

using Cell = std::variant<double, std::int64_t, std::string>;

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;  // warnings for stderr, not part of the CSV

  void add_row(std::vector<Cell> row);
  std::string to_csv() const;
};

}  // namespace fshell
