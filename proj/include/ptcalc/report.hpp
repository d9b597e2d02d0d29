#pragma once

// Machine-readable run reports: checks with exact values as decimal strings,
// matrix dumps, a text summary and a small JSON-schema validator.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ptcalc/exact.hpp"
#include "ptcalc/matrix.hpp"

namespace ptcalc {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0.0";
inline constexpr const char* kToolName = "ptcalc";
inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr const char* kScopeNote =
    "Combinatorial shadows only: coefficients, exponents, genera, dimensions, character identities and "
    "correspondence matrices are verified exactly. Isomorphisms of polarized abelian varieties and Prym "
    "identifications as complex tori are not checked.";

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
  Json values = Json::object();
  Json witnesses = Json::array();
};

struct Report {
  std::string command;
  Json input = Json::object();
  Json results = Json::object();
  std::vector<Check> checks;
  Json matrices = Json::array();
  std::string error;  // set on input errors
  double elapsed_ms = 0;

  Check& add(std::string name, bool passed, std::string detail = {}) {
    checks.push_back({std::move(name), passed, std::move(detail)});
    return checks.back();
  }
  std::size_t failed() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
  }
  bool passed() const { return error.empty() && failed() == 0; }
  int exit_code() const { return !error.empty() ? 2 : failed() == 0 ? 0 : 1; }
};

inline Json str(const Integer& x) { return x.str(); }
inline Json str(const Rational& x) { return x.str(); }
template <class T>
Json str_list(const std::vector<T>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(x.str());
  return a;
}
inline Json str_count(std::size_t n) { return std::to_string(n); }

inline Json matrix_json(const std::string& name, const IntMatrix& M) {
  Json rows = Json::array(), sums = Json::array();
  for (const auto& r : M.rows()) rows.push_back(r);
  for (std::size_t i = 0; i < M.size(); ++i) sums.push_back(M.row_sum(i).str());
  return Json{{"name", name}, {"size", std::to_string(M.size())}, {"labels", M.labels()}, {"rows", rows},
              {"row_sums", sums}};
}

/// Row-major dump with row labels and the row sum appended after '|'.
inline std::string emit_matrix(const IntMatrix& M, const std::string& title = {}) {
  std::vector<std::vector<std::string>> cells = M.rows();
  std::size_t lw = 0, cw = 1;
  for (const auto& l : M.labels()) lw = std::max(lw, l.size());
  for (const auto& r : cells)
    for (const auto& c : r) cw = std::max(cw, c.size());
  std::ostringstream out;
  if (!title.empty()) out << "# " << title << " (" << M.size() << "x" << M.size() << ")\n";
  for (std::size_t i = 0; i < M.size(); ++i) {
    out << M.labels()[i] << std::string(lw - M.labels()[i].size(), ' ') << " :";
    for (const auto& c : cells[i]) out << ' ' << std::string(cw - c.size(), ' ') << c;
    out << " | " << M.row_sum(i).str() << '\n';
  }
  return out.str();
}

/// Same dump from the JSON matrix section of a report.
inline std::string emit_matrix(const Json& section) {
  const auto& labels = section.at("labels");
  const auto& rows = section.at("rows");
  std::size_t lw = 0, cw = 1;
  for (const auto& l : labels) lw = std::max(lw, l.get<std::string>().size());
  for (const auto& r : rows)
    for (const auto& c : r) cw = std::max(cw, c.get<std::string>().size());
  std::ostringstream out;
  out << "# " << section.at("name").get<std::string>() << " (" << rows.size() << "x" << rows.size() << ")\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string l = labels[i].get<std::string>();
    out << l << std::string(lw - l.size(), ' ') << " :";
    for (const auto& c : rows[i]) {
      const std::string s = c.get<std::string>();
      out << ' ' << std::string(cw - s.size(), ' ') << s;
    }
    out << " | " << section.at("row_sums")[i].get<std::string>() << '\n';
  }
  return out.str();
}

inline Json to_json(const Report& r, bool with_timing = true) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"values", c.values},
                      {"witnesses", c.witnesses}});
  const std::size_t failed = r.failed();
  const char* status = !r.error.empty() ? "input-error" : failed == 0 ? "pass" : "fail";
  Json j{{"schema_version", kSchemaVersion},
         {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
         {"command", r.command},
         {"input", r.input},
         {"results", r.results},
         {"checks", checks},
         {"matrices", r.matrices},
         {"summary",
          {{"checks", std::to_string(r.checks.size())},
           {"passed", std::to_string(r.checks.size() - failed)},
           {"failed", std::to_string(failed)},
           {"status", status},
           {"exit_code", r.exit_code()}}},
         {"scope", kScopeNote}};
  if (!r.error.empty()) j["error"] = r.error;
  if (with_timing) j["timing"] = {{"elapsed_ms", r.elapsed_ms}};
  return j;
}

inline std::string text_summary(const Report& r, bool with_matrices = false) {
  std::ostringstream out;
  out << kToolName << " " << kToolVersion << " -- " << r.command << "\n";
  if (!r.error.empty()) {
    out << "input error: " << r.error << "\n";
    return out.str();
  }
  for (const auto& [k, v] : r.results.items()) out << "  " << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  for (const auto& c : r.checks) {
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) out << " -- " << c.detail;
    out << "\n";
  }
  if (with_matrices)
    for (const auto& m : r.matrices) out << emit_matrix(m);
  const std::size_t f = r.failed();
  out << (f == 0 ? "all " : "") << r.checks.size() - f << "/" << r.checks.size() << " checks passed\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Schema validation: type, enum, required, properties, additionalProperties,
// items. Enough for the shipped schemas.

namespace detail {

inline bool json_has_type(const Json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "null") return v.is_null();
  return false;
}

inline void validate_at(const Json& v, const Json& schema, const std::string& path, std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    const Json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) ok = json_has_type(v, t.get<std::string>());
    else
      for (const auto& x : t) ok = ok || json_has_type(v, x.get<std::string>());
    if (!ok) {
      errors.push_back(path + ": expected type " + t.dump());
      return;
    }
  }
  if (schema.contains("enum")) {
    const auto& e = schema["enum"];
    if (std::find(e.begin(), e.end(), v) == e.end()) errors.push_back(path + ": value " + v.dump() + " not in enum");
  }
  if (v.is_object()) {
    if (schema.contains("required"))
      for (const auto& k : schema["required"])
        if (!v.contains(k.get<std::string>())) errors.push_back(path + ": missing required key " + k.get<std::string>());
    const Json props = schema.value("properties", Json::object());
    for (const auto& [k, sub] : v.items()) {
      if (props.contains(k)) validate_at(sub, props[k], path + "/" + k, errors);
      else if (schema.contains("additionalProperties")) {
        const Json& ap = schema["additionalProperties"];
        if (ap.is_boolean() && !ap.get<bool>()) errors.push_back(path + ": unexpected key " + k);
        else if (ap.is_object()) validate_at(sub, ap, path + "/" + k, errors);
      }
    }
  }
  if (v.is_array() && schema.contains("items")) {
    std::size_t i = 0;
    for (const auto& x : v) validate_at(x, schema["items"], path + "/" + std::to_string(i++), errors);
  }
}

}  // namespace detail

/// Returns the list of violations; empty means valid.
inline std::vector<std::string> validate_json(const Json& instance, const Json& schema) {
  std::vector<std::string> errors;
  detail::validate_at(instance, schema, "", errors);
  return errors;
}

}  // namespace ptcalc
