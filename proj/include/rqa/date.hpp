#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace rqa {

// Proleptic Gregorian calendar date. Only what daily market data needs:
// ISO-8601 parsing/formatting, ordering, and a serial day number for plotting.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  friend auto operator<=>(const Date&, const Date&) = default;

  static bool is_leap(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  }

  static int days_in_month(int y, int m) {
    static constexpr int lengths[12] = {31, 28, 31, 30, 31, 30,
                                        31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[m - 1];
  }

  bool valid() const {
    return month >= 1 && month <= 12 && day >= 1 &&
           day <= days_in_month(year, month);
  }

  // Days since 1970-01-01 (Howard Hinnant's civil-days algorithm).
  std::int64_t serial() const {
    std::int64_t y = year - (month <= 2);
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy =
        (153u * (static_cast<unsigned>(month) + (month > 2 ? -3 : 9)) + 2) / 5 +
        static_cast<unsigned>(day) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
  }

  std::string to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
  }

  // Strict "YYYY-MM-DD". Returns nullopt on any deviation.
  static std::optional<Date> parse(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return {};
    auto number = [&](int from, int to, int& out) {
      auto [p, ec] =
          std::from_chars(text.data() + from, text.data() + to, out);
      return ec == std::errc{} && p == text.data() + to;
    };
    Date d;
    if (!number(0, 4, d.year) || !number(5, 7, d.month) ||
        !number(8, 10, d.day))
      return {};
    if (!d.valid()) return {};
    return d;
  }
};

}  // namespace rqa
