#ifndef BISET_BUDGET_HPP_
#define BISET_BUDGET_HPP_

#include <chrono>
#include <optional>
#include <string>

namespace biset {

  //! Wall-clock allowance for long searches.  A default-constructed budget
  //! never expires.
  class Budget {
   public:
    using clock = std::chrono::steady_clock;

    Budget() = default;
    explicit Budget(clock::duration allowance) : deadline_(clock::now() + allowance) {}

    static Budget unlimited() {
      return Budget();
    }

    bool expired() const {
      return deadline_.has_value() && clock::now() > *deadline_;
    }
    bool limited() const noexcept {
      return deadline_.has_value();
    }

   private:
    std::optional<clock::time_point> deadline_;
  };

  //! Parses "90", "90s", "15m", "2h" (seconds when no unit is given).
  std::chrono::seconds parse_duration(std::string const& text);

}  // namespace biset

#endif  // BISET_BUDGET_HPP_
