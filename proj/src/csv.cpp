#include "levyheat/csv.hpp"

#include <array>
#include <charconv>

namespace levyheat {

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), result.ptr);
}

}  // namespace levyheat
