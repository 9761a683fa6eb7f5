#pragma once

#include <stdexcept>
#include <string>

namespace cohest {

// Exit codes used by the CLI: 0 ok, 2 config error, 3 data error, 4 cap exceeded.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kDataError = 3,
  kCapExceeded = 4,
};

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what, int code) : std::runtime_error(what), code_(code) {}
  int exit_code() const { return code_; }

private:
  int code_;
};

class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error(what, kConfigError) {}
};

class DataError : public Error {
public:
  explicit DataError(const std::string& what) : Error(what, kDataError) {}
};

class CapExceededError : public Error {
public:
  explicit CapExceededError(const std::string& what) : Error(what, kCapExceeded) {}
};

// Fit inputs that never rise above the 2^-n offset carry no decay signal; this is
// reported distinctly from other data errors so callers can suggest remedies.
class SpamDominatedError : public DataError {
public:
  explicit SpamDominatedError(const std::string& what) : DataError(what) {}
};

}  // namespace cohest
