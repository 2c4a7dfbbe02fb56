#include "wva/format.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace wva {

std::string format_double(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("cannot serialize non-finite value");
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
    return std::string(buf, end);
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) row += ',';
        const std::string& cell = cells[i];
        if (cell.find_first_of(",\"\n") != std::string::npos) {
            row += '"';
            for (char c : cell) {
                if (c == '"') row += '"';
                row += c;
            }
            row += '"';
        } else {
            row += cell;
        }
    }
    row += '\n';
    return row;
}

}  // namespace wva
