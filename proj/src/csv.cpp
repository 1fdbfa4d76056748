#include "pbfv/csv.hpp"

#include <charconv>
#include <stdexcept>

namespace pbfv {

std::string format_number(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return {buf, ptr};
}

std::string format_shortest(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return {buf, ptr};
}

void write_csv_row(std::ostream& os, std::initializer_list<double> values) {
    bool first = true;
    for (double x : values) {
        if (!first) os << ',';
        os << format_number(x);
        first = false;
    }
    os << '\n';
}

}  // namespace pbfv
