#pragma once

#include <cstdio>
#include <fstream>
#include <string>

#include "rqa/segmentation.hpp"

namespace rqa {

namespace detail {

inline std::string json_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

}  // namespace detail

// Fixed-schema report serialization; reals carry 15 significant digits and
// absent crisis statistics become null.
inline std::string segment_report_to_json(const SegmentReport& report) {
  std::string out = "{\n  \"periods\": [";
  for (std::size_t i = 0; i < report.periods.size(); ++i) {
    const Period& p = report.periods[i];
    out += i ? ",\n    " : "\n    ";
    out += "{\"kind\": \"";
    out += period_kind_name(p.kind);
    out += "\", \"start\": \"" + p.start_date.to_string() + "\", \"end\": \"" +
           p.end_date.to_string() + "\"}";
  }
  out += report.periods.empty() ? "],\n" : "\n  ],\n";

  out += "  \"lam_normal_band\": {\"low\": " + detail::json_num(report.band_low) +
         ", \"high\": " + detail::json_num(report.band_high) + "},\n";

  auto field = [&](const char* name, const std::optional<double>& v) {
    out += std::string("  \"") + name + "\": " +
           (v ? detail::json_num(*v) : "null") + ",\n";
  };
  field("lam_at_crisis_start", report.lam_at_crisis_start);
  field("lam_minimum", report.lam_minimum);
  field("lam_drop", report.lam_drop);
  field("lam_drop_pct", report.lam_drop_pct);
  out += "  \"crisis_time_days\": " +
         (report.crisis_time_days ? std::to_string(*report.crisis_time_days)
                                  : std::string("null")) +
         "\n}\n";
  return out;
}

inline void write_segment_report_json(const SegmentReport& report,
                                      const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << segment_report_to_json(report);
  if (!out) throw IoError("failed while writing " + path);
}

}  // namespace rqa
