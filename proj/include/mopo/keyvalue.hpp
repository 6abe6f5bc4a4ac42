#pragma once

// Line-oriented `key = value` files shared by material and scenario inputs.

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mopo {

class KeyValueFile {
 public:
  /// Throws ConfigError with `source:line` context on malformed input.
  static KeyValueFile parse(std::string_view text, std::string source = "<string>");
  static KeyValueFile load(const std::filesystem::path& path);

  [[nodiscard]] bool has(std::string_view key) const;
  [[nodiscard]] const std::string& get(std::string_view key) const;
  [[nodiscard]] double get_double(std::string_view key) const;
  [[nodiscard]] int get_int(std::string_view key) const;
  [[nodiscard]] std::vector<double> get_doubles(std::string_view key) const;
  [[nodiscard]] std::vector<std::string> get_list(std::string_view key) const;

  /// Inserts or replaces a value (used for command-line overrides).
  void set(std::string key, std::string value);

  /// Throws ConfigError naming the first key not in `known`.
  void require_known(const std::vector<std::string_view>& known) const;

  [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }
  [[nodiscard]] const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::vector<std::pair<std::string, std::string>> entries_;
};

double parse_double(std::string_view text, std::string_view what);
std::vector<std::string> split_list(std::string_view text);

}  // namespace mopo
