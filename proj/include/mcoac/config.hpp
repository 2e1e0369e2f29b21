#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace mcoac {

// Sectioned key-value text with explicit types:
//
//   # comment
//   version:int = 1
//   [topology]
//   cell_count:int = 7
//   isd_m:float = 50
//   placement:string = boundary
//   grid:floats = 0.5, 0.7, 0.9
//
// Types: int, uint, float, bool, string, ints, floats. Keys inside a section
// are addressed as "section.key".
class ConfigFile {
 public:
  enum class Type { kInt, kUint, kFloat, kBool, kString, kInts, kFloats };

  struct Entry {
    Type type = Type::kString;
    std::string raw;
    int line = 0;
  };

  static ConfigFile parse(std::istream& in);
  static ConfigFile load(const std::string& path);

  bool has(const std::string& path) const { return entries_.count(path) != 0; }
  const std::map<std::string, Entry>& entries() const noexcept { return entries_; }

  std::int64_t get_int(const std::string& path, std::int64_t fallback) const;
  std::uint64_t get_uint(const std::string& path, std::uint64_t fallback) const;
  double get_float(const std::string& path, double fallback) const;
  bool get_bool(const std::string& path, bool fallback) const;
  std::string get_string(const std::string& path, const std::string& fallback) const;
  std::vector<std::int64_t> get_ints(const std::string& path, const std::vector<std::int64_t>& fallback) const;
  std::vector<double> get_floats(const std::string& path, const std::vector<double>& fallback) const;

  /// Throws ConfigError naming the first key not in `known`.
  void reject_unknown(const std::set<std::string>& known) const;

 private:
  const Entry* find(const std::string& path, Type expected) const;

  std::map<std::string, Entry> entries_;
};

}  // namespace mcoac
