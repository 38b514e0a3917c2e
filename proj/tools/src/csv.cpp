#include "csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace rbinom::cli {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::ostream& out, std::vector<std::string> columns) : out_(out), width_(columns.size()) {
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<std::optional<double>>& cells) {
    if (cells.size() != width_) throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        if (cells[i]) out_ << format_number(*cells[i]);
    }
    out_ << '\n';
}

}  // namespace rbinom::cli
