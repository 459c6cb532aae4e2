#include "mcplan/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "mcplan/mdp.hpp"

namespace mcplan {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path);
}

ConfigFile ConfigFile::parse_string(std::string_view text, std::string origin) {
  ConfigFile cfg;
  cfg.origin_ = std::move(origin);
  cfg.section_order_.push_back("");
  cfg.values_[""];

  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;

    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(cfg.origin_ + ":" + std::to_string(line_no) +
                          ": malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!cfg.values_.count(section)) {
        cfg.values_[section];
        cfg.section_order_.push_back(section);
      }
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(cfg.origin_ + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty())
      throw ConfigError(cfg.origin_ + ":" + std::to_string(line_no) +
                        ": empty key");
    auto& sec = cfg.values_[section];
    if (sec.count(key))
      throw ConfigError(cfg.origin_ + ":" + std::to_string(line_no) +
                        ": duplicate key '" + key + "'");
    sec[key] = value;
    cfg.key_order_[section].push_back(key);
  }
  return cfg;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  auto it = values_.find(section);
  return it != values_.end() && it->second.count(key) > 0;
}

std::optional<std::string> ConfigFile::find(const std::string& section,
                                            const std::string& key) const {
  auto it = values_.find(section);
  if (it == values_.end()) return std::nullopt;
  auto kit = it->second.find(key);
  if (kit == it->second.end()) return std::nullopt;
  return kit->second;
}

void ConfigFile::missing(const std::string& section,
                         const std::string& key) const {
  std::string where = section.empty() ? key : ("[" + section + "] " + key);
  throw ConfigError(origin_ + ": missing key '" + where + "'");
}

std::string ConfigFile::get_string(const std::string& section,
                                   const std::string& key) const {
  auto v = find(section, key);
  if (!v) missing(section, key);
  return *v;
}

std::int64_t ConfigFile::get_int(const std::string& section,
                                 const std::string& key) const {
  std::string v = get_string(section, key);
  try {
    std::size_t used = 0;
    std::int64_t out = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ": key '" + key + "' is not an integer: " + v);
  }
}

std::uint64_t ConfigFile::get_u64(const std::string& section,
                                  const std::string& key) const {
  std::string v = get_string(section, key);
  try {
    std::size_t used = 0;
    std::uint64_t out = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ": key '" + key + "' is not an unsigned integer: " + v);
  }
}

double ConfigFile::get_double(const std::string& section,
                              const std::string& key) const {
  std::string v = get_string(section, key);
  try {
    std::size_t used = 0;
    double out = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ": key '" + key + "' is not a number: " + v);
  }
}

std::vector<double> ConfigFile::get_doubles(const std::string& section,
                                            const std::string& key) const {
  std::vector<double> out;
  for (const auto& tok : split_ws(get_string(section, key))) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ConfigError(origin_ + ": key '" + key + "' has a non-numeric entry: " + tok);
    }
  }
  return out;
}

std::vector<std::int64_t> ConfigFile::get_ints(const std::string& section,
                                               const std::string& key) const {
  std::vector<std::int64_t> out;
  for (const auto& tok : split_ws(get_string(section, key))) {
    try {
      out.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      throw ConfigError(origin_ + ": key '" + key + "' has a non-integer entry: " + tok);
    }
  }
  return out;
}

std::vector<std::string> ConfigFile::sections_with_prefix(
    const std::string& prefix) const {
  std::vector<std::string> out;
  for (const auto& name : section_order_) {
    if (name.size() >= prefix.size() && name.compare(0, prefix.size(), prefix) == 0)
      out.push_back(name);
  }
  return out;
}

std::vector<std::string> ConfigFile::keys(const std::string& section) const {
  auto it = key_order_.find(section);
  return it == key_order_.end() ? std::vector<std::string>{} : it->second;
}

}  // namespace mcplan
