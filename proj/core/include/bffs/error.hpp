#pragma once

#include <stdexcept>
#include <string>

namespace bffs {

enum class ErrorCode {
  invalid_schedule,
  overflow,
  invalid_distribution,
  distribution_error,
  invalid_payload,
  invalid_histogram,
  parse_error,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bffs
