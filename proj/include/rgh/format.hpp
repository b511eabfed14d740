#ifndef RGH_FORMAT_HPP
#define RGH_FORMAT_HPP

#include <charconv>
#include <string>

namespace rgh {

// Shortest round-trip decimal form; deterministic and locale-independent,
// which keeps CSV artifacts byte-stable.
inline std::string format_double(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace rgh

#endif
