#pragma once

#include <string>
#include <vector>

namespace wva {

/// Shortest decimal that round-trips to the same double (up to 17 significant
/// digits).  Integers render without a trailing ".0" ("3", "0.5", "1e-05").
std::string format_double(double value);

/// One CSV row; cells containing comma/quote/newline are quoted.
std::string csv_row(const std::vector<std::string>& cells);

}  // namespace wva
