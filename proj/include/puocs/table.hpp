#ifndef PUOCS_TABLE_HPP
#define PUOCS_TABLE_HPP

// Fixed-column tables emitted as csv or JSON Lines. Numbers are printed
// with %.*g in the C locale, so output does not depend on the environment.

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace puocs {

enum class OutputFormat { csv, json };

using Cell = std::variant<std::string, double, long>;

class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    /// Throws std::invalid_argument when the row width does not match.
    void add_row(std::vector<Cell> row);

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const { return rows_; }

    void write(std::ostream& out, OutputFormat format, int precision) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

/// %.{precision}g; "nan", "inf", "-inf" for nonfinite values.
std::string format_number(double value, int precision);

}  // namespace puocs

#endif  // PUOCS_TABLE_HPP
