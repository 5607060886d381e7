#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace rqa {

// Verbosity from RQA_LOG: 0 silent, 1 run metadata (default), 2 debug.
// Everything goes to stderr so output artifacts stay byte-reproducible.
inline int log_level() {
  static const int level = [] {
    const char* env = std::getenv("RQA_LOG");
    return env ? std::atoi(env) : 1;
  }();
  return level;
}

inline void log_info(const std::string& msg) {
  if (log_level() >= 1) std::fprintf(stderr, "rqa: %s\n", msg.c_str());
}

inline void log_debug(const std::string& msg) {
  if (log_level() >= 2) std::fprintf(stderr, "rqa: %s\n", msg.c_str());
}

}  // namespace rqa
