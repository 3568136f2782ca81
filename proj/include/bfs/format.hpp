#pragma once

#include <charconv>
#include <string>

namespace bfs {

/// Shortest decimal representation that round-trips to the same double.
/// Used for all text output so identical runs produce identical bytes.
inline std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace bfs
