#pragma once

#include <stdexcept>
#include <string>

namespace fgiqa {

// Malformed data: mismatched dimensions, undersized planes, non-finite values.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Parameter values outside their documented domain.
class InvalidConfig : public std::invalid_argument {
 public:
  explicit InvalidConfig(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace fgiqa
