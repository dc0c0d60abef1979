#pragma once

#include <iostream>
#include <mutex>
#include <string_view>

namespace sps::log {

namespace detail {
struct Sink {
  std::ostream* stream = &std::clog;
  std::mutex mutex;
};

inline Sink& sink() {
  static Sink s;
  return s;
}
}  // namespace detail

/// Redirect diagnostics; nullptr silences them.
inline void set_stream(std::ostream* os) {
  auto& s = detail::sink();
  std::lock_guard lock(s.mutex);
  s.stream = os;
}

inline void write(std::string_view level, std::string_view message) {
  auto& s = detail::sink();
  std::lock_guard lock(s.mutex);
  if (s.stream) *s.stream << "[sps " << level << "] " << message << '\n';
}

inline void info(std::string_view message) { write("info", message); }
inline void warn(std::string_view message) { write("warn", message); }

}  // namespace sps::log
