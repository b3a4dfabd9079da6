#ifndef VSPECTRA_CONFIG_HPP
#define VSPECTRA_CONFIG_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "vspectra/model.hpp"

namespace vspectra {

/// Parse error with the 1-based line number of the offending input line.
class ConfigError : public std::runtime_error {
public:
  ConfigError(int line, const std::string& message)
      : std::runtime_error("config line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// Flat sectioned key=value text config:
///
///   [model]
///   alpha = 2.0
///   pressure = power:1,1
///
/// '#' and ';' start comments. Keys are unique per section (duplicates are
/// a parse error so typos do not silently win).
class Config {
public:
  static Config parse_string(const std::string& text);
  static Config parse_file(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  int get_int_or(const std::string& section, const std::string& key,
                 int fallback) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;

  // canonical serialization (sorted sections/keys); used for config echo
  // and run-directory hashing
  std::string echo() const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

// reads [model]; throws ConfigError / std::invalid_argument on bad values
ModelParams model_from_config(const Config& cfg);

// "power:c,g" | "affine:c,p0" | "table:r1:p1,r2:p2,..."
PressureLaw parse_pressure_spec(const std::string& spec);

}  // namespace vspectra

#endif
