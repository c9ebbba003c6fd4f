#pragma once

#include <stdexcept>
#include <string>

namespace galoscope {

// Every error carries the stage that raised it so pipeline failures are
// attributable ("tracker: step underflow at s=0.93" rather than a bare what()).

class Error : public std::runtime_error {
public:
  Error(std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

private:
  std::string stage_;
};

// Malformed input: bad expression text, unknown identifiers, schema violations,
// unusable configuration. CLI exit code 3.
class InputError : public Error {
public:
  using Error::Error;
};

// Numerical failure: path tracking broke down, endpoint matching was ambiguous,
// a certification failed. CLI exit code 2.
class NumericError : public Error {
public:
  using Error::Error;
};

}  // namespace galoscope
