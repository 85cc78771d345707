#ifndef ADIAGAP_FORMAT_HPP
#define ADIAGAP_FORMAT_HPP

#include <cstdio>
#include <string>

namespace adiagap {

// 17 significant digits round-trip a double exactly, keeping CSV baselines
// byte-stable across platforms.
inline std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace adiagap

#endif  // ADIAGAP_FORMAT_HPP
