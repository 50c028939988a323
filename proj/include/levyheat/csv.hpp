#pragma once

#include <string>

namespace levyheat {

/// Shortest decimal text that round-trips to the same double; always uses '.'
/// regardless of locale.
std::string format_double(double value);

}  // namespace levyheat
