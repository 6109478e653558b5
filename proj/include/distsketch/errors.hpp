#pragma once

#include <stdexcept>
#include <string>

namespace distsketch {

/// Invalid parameters or incompatible objects (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Bad input samples or streams (CLI exit code 3).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or corrupted summary file (CLI exit code 3).
class FormatError : public DataError {
 public:
  explicit FormatError(const std::string& what) : DataError(what) {}
};

}  // namespace distsketch
