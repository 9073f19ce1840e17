#pragma once

#include <stdexcept>
#include <string>

namespace spinboson {

// Failure classes map one-to-one onto process exit codes so batch drivers
// can tell a bad config from a numerical breakdown without parsing text.
enum class ErrorCode : int {
  config = 2,        // malformed, unknown, or contradictory configuration
  precondition = 3,  // well-formed input outside an operation's domain
  numeric = 4,       // singular resolvent, lost hermiticity, tolerance not met
  resource = 5,      // dimension or iteration budget exceeded
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  int exit_code() const noexcept { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorCode::config, w) {}
};

struct PreconditionError : Error {
  explicit PreconditionError(const std::string& w)
      : Error(ErrorCode::precondition, w) {}
};

struct NumericError : Error {
  explicit NumericError(const std::string& w) : Error(ErrorCode::numeric, w) {}
};

struct ResourceError : Error {
  explicit ResourceError(const std::string& w)
      : Error(ErrorCode::resource, w) {}
};

}  // namespace spinboson
