#pragma once

#include <initializer_list>
#include <ostream>
#include <string>

namespace pbfv {

// 17 significant digits, independent of the global locale.
std::string format_number(double x);
// Shortest round-trip form, used in file names.
std::string format_shortest(double x);

void write_csv_row(std::ostream& os, std::initializer_list<double> values);

}  // namespace pbfv
