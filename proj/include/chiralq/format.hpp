#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace chiralq {

// 17 significant digits: enough for bit-exact double round trips.
inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string join17(const std::vector<double>& values, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += fmt17(values[i]);
  }
  return out;
}

}  // namespace chiralq
