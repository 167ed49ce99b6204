// Shared error type and small numeric helpers.
#pragma once

#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace palign {

enum class ErrorCode {
  InvalidArgument,  // bad parameters or malformed input
  ResourceLimit,    // enumeration/search budget exhausted
  VerifyFailed,     // a verification suite reported failure
  Io,               // file read/write problem
  Internal          // broken internal assumption
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

inline std::string strprintf(const char* fmt, ...) {
  va_list ap;
  va_start(ap, fmt);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return std::string(buf);
}

// Shortest-width formatting with 17 significant digits: enough to round-trip
// any double exactly, which the CSV and JSON emitters rely on.
inline std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf);
}

inline double sq(double x) { return x * x; }

}  // namespace palign
