#include <cinttypes>
#include <cstdio>

#include "twistlab/common.hpp"

namespace twistlab {

std::string fmt_sci(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.11e", x);
  return buf;
}

std::string fmt_sci(cxd x) { return fmt_sci(x.real()) + "," + fmt_sci(x.imag()); }

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace twistlab
