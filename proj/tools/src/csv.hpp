#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace rbinom::cli {

/// 17 significant digits, "." decimal, locale independent.
std::string format_number(double v);

/// Comma-separated rows with a fixed header; empty optional -> empty cell.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, std::vector<std::string> columns);
    void row(const std::vector<std::optional<double>>& cells);

private:
    std::ostream& out_;
    std::size_t width_;
};

}  // namespace rbinom::cli
