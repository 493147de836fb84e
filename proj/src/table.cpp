#include "puocs/table.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace puocs {

namespace {

std::string json_string(const std::string& s)
{
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + "\"";
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string format_number(double value, int precision)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    return buf;
}

void Table::add_row(std::vector<Cell> row)
{
    if (row.size() != columns_.size()) {
        throw std::invalid_argument("table row width does not match header");
    }
    rows_.push_back(std::move(row));
}

void Table::write(std::ostream& out, OutputFormat format, int precision) const
{
    auto render = [&](const Cell& cell, bool json) -> std::string {
        if (const auto* s = std::get_if<std::string>(&cell)) {
            return json ? json_string(*s) : csv_field(*s);
        }
        if (const auto* n = std::get_if<long>(&cell)) {
            return std::to_string(*n);
        }
        const double v = std::get<double>(cell);
        if (json && !std::isfinite(v)) {
            return "null";
        }
        return format_number(v, precision);
    };

    if (format == OutputFormat::csv) {
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            out << (c ? "," : "") << csv_field(columns_[c]);
        }
        out << '\n';
        for (const auto& row : rows_) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                out << (c ? "," : "") << render(row[c], false);
            }
            out << '\n';
        }
        return;
    }
    for (const auto& row : rows_) {
        out << '{';
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << json_string(columns_[c]) << ':' << render(row[c], true);
        }
        out << "}\n";
    }
}

}  // namespace puocs
