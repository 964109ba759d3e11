#pragma once

// Plain-text configuration: one `key = value` pair per line, dotted keys
// for sections (params.omega32 = 5.0), '#' starts a comment.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vsr {

class KeyValueConfig {
 public:
  /// Throws ConfigError on malformed lines or duplicate keys.
  static KeyValueConfig parse(std::string_view text, std::string source = "<string>");
  /// Throws ConfigError if the file cannot be read.
  static KeyValueConfig load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& key) const;

  void set(const std::string& key, std::string value) { entries_[key] = std::move(value); }

  /// Throws ConfigError naming the first key not in `allowed`.
  void require_known_keys(const std::vector<std::string_view>& allowed) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }
  const std::string& source() const { return source_; }

 private:
  std::map<std::string, std::string> entries_;
  std::string source_;
};

/// Parses a double using the C locale; accepts a fraction "a/b".
double parse_number(std::string_view text);

/// Parses a comma-separated list of numbers.
std::vector<double> parse_number_list(std::string_view text);

}  // namespace vsr
