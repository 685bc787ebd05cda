#pragma once

#include <stdexcept>
#include <string>

namespace arrows {

/// Thrown when predict/observe are called out of their strict alternation.
class protocol_error : public std::logic_error {
 public:
  explicit protocol_error(const std::string& what) : std::logic_error(what) {}
};

/// Thrown when a forecaster is driven past its declared horizon.
class horizon_error : public std::logic_error {
 public:
  explicit horizon_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace arrows
