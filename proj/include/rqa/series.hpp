#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rqa/date.hpp"
#include "rqa/errors.hpp"

namespace rqa {

// Daily scalar observations. Dates strictly increasing, values finite,
// dates and values of equal length >= 2.
struct TimeSeries {
  std::vector<Date> dates;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }

  void check() const {
    if (values.size() != dates.size())
      throw Error("dates and values differ in length");
    if (values.size() < 2) throw Error("series needs at least 2 points");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(values[i]))
        throw Error("non-finite value at index " + std::to_string(i));
      if (i > 0 && !(dates[i - 1] < dates[i]))
        throw Error("dates not strictly increasing at index " +
                    std::to_string(i));
    }
  }

  // Synthetic series helper: consecutive calendar days from `start`.
  static TimeSeries from_values(std::vector<double> values,
                                Date start = {2000, 1, 3}) {
    TimeSeries ts;
    ts.values = std::move(values);
    ts.dates.reserve(ts.values.size());
    Date d = start;
    for (std::size_t i = 0; i < ts.values.size(); ++i) {
      ts.dates.push_back(d);
      d.day += 1;
      if (d.day > Date::days_in_month(d.year, d.month)) {
        d.day = 1;
        d.month += 1;
        if (d.month > 12) {
          d.month = 1;
          d.year += 1;
        }
      }
    }
    return ts;
  }
};

}  // namespace rqa
