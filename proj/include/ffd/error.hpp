#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ffd {

enum class ErrorCode {
  argument,
  resource,
  degeneracy,
  spectral_structure,
  consistency,
  unsupported,
  io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
  throw Error(code, detail);
}

}  // namespace ffd
