#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "rqa/measures.hpp"
#include "support/oracle.hpp"

namespace testsup {

struct TempDir {
  std::filesystem::path path;

  TempDir() {
    std::mt19937_64 rng(std::random_device{}());
    path = std::filesystem::temp_directory_path() /
           ("rqa_test_" + std::to_string(rng()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << content;
}

// Integer-ratio measures must agree bit for bit; ENTR and TREND within
// 1e-12 (different but equivalent float paths).
inline void require_matches_oracle(const rqa::MeasureSet& ms,
                                   const oracle::Measures& om) {
  auto exact = [](const char* name, const std::optional<double>& a,
                  const std::optional<double>& b) {
    INFO("measure " << name);
    REQUIRE(a.has_value() == b.has_value());
    if (a) REQUIRE(*a == *b);
  };
  auto approx = [](const char* name, const std::optional<double>& a,
                   const std::optional<double>& b) {
    INFO("measure " << name);
    REQUIRE(a.has_value() == b.has_value());
    if (a) REQUIRE_THAT(*a, Catch::Matchers::WithinAbs(*b, 1e-12));
  };
  exact("rr", ms.rr, om.rr);
  exact("det", ms.det, om.det);
  exact("l", ms.l_mean, om.l_mean);
  exact("lmax", ms.l_max, om.l_max);
  exact("div", ms.div, om.div);
  approx("entr", ms.entr, om.entr);
  approx("trend", ms.trend, om.trend);
  exact("lam", ms.lam, om.lam);
  exact("tt", ms.tt, om.tt);
  exact("t1", ms.t1, om.t1);
  exact("t2", ms.t2, om.t2);
}

}  // namespace testsup
