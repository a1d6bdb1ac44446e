#include "biset/budget.hpp"

#include <cctype>
#include <stdexcept>

namespace biset {

  std::chrono::seconds parse_duration(std::string const& text) {
    std::size_t pos = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (pos == 0 || pos > 9) {
      throw std::invalid_argument("bad duration '" + text + "'");
    }
    long long   value = std::stoll(text.substr(0, pos));
    std::string unit  = text.substr(pos);
    if (unit.empty() || unit == "s") {
      return std::chrono::seconds(value);
    }
    if (unit == "m") {
      return std::chrono::minutes(value);
    }
    if (unit == "h") {
      return std::chrono::hours(value);
    }
    throw std::invalid_argument("bad duration unit in '" + text + "'");
  }

}  // namespace biset
