#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace wrist {

/// Flat key = value configuration text. Lines starting with '#' and blank
/// lines are skipped; later keys override earlier ones.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig read_file(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;

  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  std::string to_text() const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace wrist
