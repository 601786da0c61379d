#pragma once

#include <map>
#include <string>
#include <vector>

namespace renn {

/// Flat key-value configuration: one `key = value` pair per line, `#`
/// comments, blank lines ignored.
class Config {
 public:
  Config() = default;
  static Config parse_file(const std::string& path);
  static Config parse_text(const std::string& text);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  void set(const std::string& key, const std::string& value) {
    values_[key] = value;
  }

  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  std::size_t get_size(const std::string& key, std::size_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  /// "2,3,4" -> {2,3,4}
  std::vector<std::size_t> get_size_list(
      const std::string& key, const std::vector<std::size_t>& fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace renn
