#include "mcoac/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "mcoac/errors.hpp"

namespace mcoac {

namespace {

std::string trim(const std::string& s) {
  const auto begin = std::find_if_not(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
  const auto end = std::find_if_not(s.rbegin(), s.rend(), [](unsigned char c) { return std::isspace(c); }).base();
  return begin < end ? std::string(begin, end) : std::string();
}

const char* type_name(ConfigFile::Type t) {
  switch (t) {
    case ConfigFile::Type::kInt: return "int";
    case ConfigFile::Type::kUint: return "uint";
    case ConfigFile::Type::kFloat: return "float";
    case ConfigFile::Type::kBool: return "bool";
    case ConfigFile::Type::kString: return "string";
    case ConfigFile::Type::kInts: return "ints";
    case ConfigFile::Type::kFloats: return "floats";
  }
  return "?";
}

ConfigFile::Type parse_type(const std::string& name, const std::string& path) {
  using T = ConfigFile::Type;
  static const std::pair<const char*, T> kTypes[] = {{"int", T::kInt},       {"uint", T::kUint},
                                                     {"float", T::kFloat},   {"bool", T::kBool},
                                                     {"string", T::kString}, {"ints", T::kInts},
                                                     {"floats", T::kFloats}};
  for (const auto& [n, t] : kTypes) {
    if (name == n) return t;
  }
  throw ConfigError(path, fmt::format("unknown type '{}'", name));
}

std::int64_t to_int(const std::string& text, const std::string& path) {
  std::int64_t v = 0;
  const auto s = trim(text);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError(path, fmt::format("'{}' is not an integer", s));
  }
  return v;
}

double to_float(const std::string& text, const std::string& path) {
  const auto s = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(path, fmt::format("'{}' is not a number", s));
  }
  if (used != s.size() || !std::isfinite(v)) throw ConfigError(path, fmt::format("'{}' is not a finite number", s));
  return v;
}

std::vector<std::string> split_list(const std::string& raw) {
  std::vector<std::string> items;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!trim(item).empty()) items.push_back(trim(item));
  }
  return items;
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in) {
  ConfigFile cfg;
  std::string section;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(fmt::format("line {}", line_no), "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    const auto colon = line.find(':');
    if (eq == std::string::npos || colon == std::string::npos || colon > eq) {
      throw ConfigError(fmt::format("line {}", line_no), "expected 'key:type = value'");
    }
    const std::string key = trim(line.substr(0, colon));
    const std::string path = section.empty() ? key : section + "." + key;
    const Type type = parse_type(trim(line.substr(colon + 1, eq - colon - 1)), path);
    Entry entry{type, trim(line.substr(eq + 1)), line_no};
    if (!cfg.entries_.emplace(path, entry).second) throw ConfigError(path, "duplicate key");

    // Validate the literal now so errors point at the file.
    switch (type) {
      case Type::kInt: to_int(entry.raw, path); break;
      case Type::kUint:
        if (to_int(entry.raw, path) < 0) throw ConfigError(path, "must be non-negative");
        break;
      case Type::kFloat: to_float(entry.raw, path); break;
      case Type::kBool:
        if (entry.raw != "true" && entry.raw != "false") throw ConfigError(path, "expected true or false");
        break;
      case Type::kString: break;
      case Type::kInts:
        for (const auto& item : split_list(entry.raw)) to_int(item, path);
        break;
      case Type::kFloats:
        for (const auto& item : split_list(entry.raw)) to_float(item, path);
        break;
    }
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", fmt::format("cannot open '{}'", path));
  return parse(in);
}

const ConfigFile::Entry* ConfigFile::find(const std::string& path, Type expected) const {
  const auto it = entries_.find(path);
  if (it == entries_.end()) return nullptr;
  const Type got = it->second.type;
  const bool ok = got == expected || (expected == Type::kFloat && (got == Type::kInt || got == Type::kUint)) ||
                  (expected == Type::kUint && got == Type::kInt) || (expected == Type::kInt && got == Type::kUint) ||
                  (expected == Type::kFloats && got == Type::kInts);
  if (!ok) {
    throw ConfigError(path, fmt::format("expected type {}, found {}", type_name(expected), type_name(got)));
  }
  return &it->second;
}

std::int64_t ConfigFile::get_int(const std::string& path, std::int64_t fallback) const {
  const Entry* e = find(path, Type::kInt);
  return e != nullptr ? to_int(e->raw, path) : fallback;
}

std::uint64_t ConfigFile::get_uint(const std::string& path, std::uint64_t fallback) const {
  const Entry* e = find(path, Type::kUint);
  if (e == nullptr) return fallback;
  const auto s = trim(e->raw);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError(path, "not an unsigned integer");
  return v;
}

double ConfigFile::get_float(const std::string& path, double fallback) const {
  const Entry* e = find(path, Type::kFloat);
  return e != nullptr ? to_float(e->raw, path) : fallback;
}

bool ConfigFile::get_bool(const std::string& path, bool fallback) const {
  const Entry* e = find(path, Type::kBool);
  return e != nullptr ? e->raw == "true" : fallback;
}

std::string ConfigFile::get_string(const std::string& path, const std::string& fallback) const {
  const Entry* e = find(path, Type::kString);
  return e != nullptr ? e->raw : fallback;
}

std::vector<std::int64_t> ConfigFile::get_ints(const std::string& path,
                                               const std::vector<std::int64_t>& fallback) const {
  const Entry* e = find(path, Type::kInts);
  if (e == nullptr) return fallback;
  std::vector<std::int64_t> out;
  for (const auto& item : split_list(e->raw)) out.push_back(to_int(item, path));
  return out;
}

std::vector<double> ConfigFile::get_floats(const std::string& path, const std::vector<double>& fallback) const {
  const Entry* e = find(path, Type::kFloats);
  if (e == nullptr) return fallback;
  std::vector<double> out;
  for (const auto& item : split_list(e->raw)) out.push_back(to_float(item, path));
  return out;
}

void ConfigFile::reject_unknown(const std::set<std::string>& known) const {
  for (const auto& [path, entry] : entries_) {
    if (known.count(path) == 0) throw ConfigError(path, fmt::format("unknown key (line {})", entry.line));
  }
}

}  // namespace mcoac
