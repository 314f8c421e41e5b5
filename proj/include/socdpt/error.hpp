#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace socdpt {

/// Invalid user-facing input. `kind` and `key` form the machine-readable
/// trailer printed by the CLI, e.g. `missing_key=gs_n`.
class ParameterError : public std::invalid_argument {
 public:
  ParameterError(std::string kind, std::string key, const std::string& what)
      : std::invalid_argument(what), kind_(std::move(kind)), key_(std::move(key)) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::string& key() const noexcept { return key_; }
  std::string trailer() const { return kind_ + "=" + key_; }

 private:
  std::string kind_;
  std::string key_;
};

inline ParameterError invalid_value(const std::string& key, const std::string& why) {
  return ParameterError("invalid_key", key, key + ": " + why);
}

}  // namespace socdpt
