#pragma once

#include <stdexcept>
#include <string>

namespace srt {

enum class ErrorCode {
  Validation,      // container or request invariant violated
  Domain,          // argument outside the mathematical domain of an operator
  Unsupported,     // valid but not implemented (dimension, filter order)
  Geometry,        // method incompatible with the scan geometry
  Io,              // file could not be opened / written
  MalformedHeader, // header text could not be parsed
  Version,         // recognised tag, unknown version
  HeaderTag,       // wrong file kind (e.g. SRTVOL read as SRTDAT)
  Truncated,       // payload shorter than the header promises
  NonFinite,       // NaN or Inf in a payload or input
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for failures of the filesystem or file contents, as opposed to
  /// bad arguments.
  bool is_io() const noexcept;

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool cond, ErrorCode code, const char* what) {
  if (!cond) fail(code, what);
}

}  // namespace srt
