#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mcplan {

// Line-oriented "key = value" files with optional [section] headers and
// '#' comments. Keys are unique per section; values keep interior spaces.
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_string(std::string_view text,
                                 std::string origin = "<string>");

  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section,
                         const std::string& key) const;
  std::int64_t get_int(const std::string& section, const std::string& key) const;
  std::uint64_t get_u64(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;
  std::vector<double> get_doubles(const std::string& section,
                                  const std::string& key) const;
  std::vector<std::int64_t> get_ints(const std::string& section,
                                     const std::string& key) const;

  std::optional<std::string> find(const std::string& section,
                                  const std::string& key) const;

  // Section names beginning with the given prefix, in file order.
  std::vector<std::string> sections_with_prefix(const std::string& prefix) const;

  // Keys of one section, in file order.
  std::vector<std::string> keys(const std::string& section) const;

  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
  // section -> key -> value; "" is the top-level section
  std::map<std::string, std::map<std::string, std::string>> values_;
  std::vector<std::string> section_order_;
  std::map<std::string, std::vector<std::string>> key_order_;

  [[noreturn]] void missing(const std::string& section,
                            const std::string& key) const;
};

}  // namespace mcplan
