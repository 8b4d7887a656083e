#include "saddle/errors.hpp"

namespace saddle {

ConfigError::ConfigError(std::vector<std::string> v)
    : std::runtime_error([&] {
          std::string s = "invalid config:";
          for (const auto& x : v) s += "\n  " + x;
          return s;
      }()),
      violations(std::move(v)) {}

}  // namespace saddle
