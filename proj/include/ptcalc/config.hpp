#pragma once

// Run configuration: JSON file keys and command-line flags share one record.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptcalc/error.hpp"
#include "ptcalc/report.hpp"

namespace ptcalc {

inline constexpr std::array<std::string_view, 5> kCommands{"verify", "product", "dihedral-demo", "decompose", "regress"};

struct RunConfig {
  std::string command;
  std::string group;
  std::string subgroup;
  std::vector<std::string> reps;
  std::string signature;
  std::optional<long long> p, s1, s2;
  std::string out;
  std::string format = "json";
  std::string fixtures;  // directory used by regress
  int verbosity = 0;

  bool operator==(const RunConfig&) const = default;
};

namespace detail {

/// Splits on any of `seps` outside parentheses and brackets; trims pieces and
/// drops empty ones.
inline std::vector<std::string> split_top_level(std::string_view s, std::string_view seps) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  auto flush = [&] {
    const std::size_t a = cur.find_first_not_of(" \t"), b = cur.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(cur.substr(a, b - a + 1));
    cur.clear();
  };
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth == 0 && seps.find(c) != std::string_view::npos) flush();
    else cur += c;
  }
  flush();
  return out;
}

inline std::optional<long long> optional_int(const Json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  const Json& v = j[key];
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_string()) {
    try {
      std::size_t used = 0;
      const long long x = std::stoll(v.get<std::string>(), &used);
      if (used == v.get<std::string>().size()) return x;
    } catch (const std::exception&) {
    }
  }
  throw InputError(std::string("config key '") + key + "' must be an integer");
}

inline std::string optional_string(const Json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return {};
  if (!j[key].is_string()) throw InputError(std::string("config key '") + key + "' must be a string");
  return j[key].get<std::string>();
}

}  // namespace detail

inline void validate_config(const RunConfig& c) {
  bool known = false;
  for (auto k : kCommands) known = known || c.command == k;
  if (!known) throw InputError("unknown command '" + c.command + "'");
  if (c.format != "json" && c.format != "text") throw InputError("format must be json or text, got '" + c.format + "'");
}

/// Keys other than the run keys (for example a fixture's "expect" block) are ignored.
inline RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  RunConfig c;
  c.command = detail::optional_string(j, "command");
  c.group = detail::optional_string(j, "group");
  c.subgroup = detail::optional_string(j, "subgroup");
  if (j.contains("reps")) {
    const Json& r = j["reps"];
    if (r.is_string()) c.reps = detail::split_top_level(r.get<std::string>(), ";,");
    else if (r.is_array())
      for (const auto& x : r) {
        if (!x.is_string()) throw InputError("config key 'reps' must list strings");
        c.reps.push_back(x.get<std::string>());
      }
    else throw InputError("config key 'reps' must be a string or a list of strings");
  }
  c.signature = detail::optional_string(j, "signature");
  c.p = detail::optional_int(j, "p");
  c.s1 = detail::optional_int(j, "s1");
  c.s2 = detail::optional_int(j, "s2");
  c.out = detail::optional_string(j, "out");
  if (j.contains("format")) c.format = detail::optional_string(j, "format");
  c.fixtures = detail::optional_string(j, "fixtures");
  if (auto v = detail::optional_int(j, "verbosity")) c.verbosity = static_cast<int>(*v);
  return c;
}

/// Only set fields are written, so the output re-parses to an equal config.
inline Json config_to_json(const RunConfig& c) {
  Json j = Json::object();
  j["command"] = c.command;
  if (!c.group.empty()) j["group"] = c.group;
  if (!c.subgroup.empty()) j["subgroup"] = c.subgroup;
  if (!c.reps.empty()) j["reps"] = c.reps;
  if (!c.signature.empty()) j["signature"] = c.signature;
  if (c.p) j["p"] = *c.p;
  if (c.s1) j["s1"] = *c.s1;
  if (c.s2) j["s2"] = *c.s2;
  if (!c.out.empty()) j["out"] = c.out;
  if (c.format != "json") j["format"] = c.format;
  if (!c.fixtures.empty()) j["fixtures"] = c.fixtures;
  if (c.verbosity != 0) j["verbosity"] = c.verbosity;
  return j;
}

/// Fields set in `flags` replace those from the file.
inline RunConfig merge_config(RunConfig file, const RunConfig& flags) {
  if (!flags.command.empty()) file.command = flags.command;
  if (!flags.group.empty()) file.group = flags.group;
  if (!flags.subgroup.empty()) file.subgroup = flags.subgroup;
  if (!flags.reps.empty()) file.reps = flags.reps;
  if (!flags.signature.empty()) file.signature = flags.signature;
  if (flags.p) file.p = flags.p;
  if (flags.s1) file.s1 = flags.s1;
  if (flags.s2) file.s2 = flags.s2;
  if (!flags.out.empty()) file.out = flags.out;
  if (flags.format != "json") file.format = flags.format;
  if (!flags.fixtures.empty()) file.fixtures = flags.fixtures;
  if (flags.verbosity != 0) file.verbosity = flags.verbosity;
  return file;
}

}  // namespace ptcalc
