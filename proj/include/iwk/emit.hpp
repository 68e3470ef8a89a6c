// Output helpers: aligned text tables, JSON documents with schema round-trip,
// and DOT graphs ranked by length.
#pragma once

#include "iwk/admissible.hpp"

#include <functional>

namespace iwk::emit {

using nlohmann::json;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render() const {
    std::vector<std::size_t> width(header.size(), 0);
    auto measure = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], display_width(r[i]));
    };
    measure(header);
    for (const auto& r : rows) measure(r);
    std::string out;
    auto line = [&](const std::vector<std::string>& r) {
      std::string s;
      for (std::size_t i = 0; i < r.size(); ++i) {
        s += r[i];
        if (i + 1 < r.size()) s += std::string(width[i] - display_width(r[i]) + 2, ' ');
      }
      out += s + "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
  }

  /// Code points, counting UTF-8 continuation bytes as zero width.
  static std::size_t display_width(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s)
      if ((c & 0xC0) != 0x80) ++n;
    return n;
  }
};

inline std::string bool_str(bool b) { return b ? "yes" : "no"; }

inline std::string vec_str(const std::vector<Int>& v) { return "(" + join(v) + ")"; }

inline std::string set_str(const std::vector<int>& v) {
  std::vector<std::string> parts;
  for (int s : v) parts.push_back(generator_label(s));
  return "{" + join(parts, ",") + "}";
}

// --- JSON values -------------------------------------------------------------

inline json rat_json(const Rat& r) { return to_string(r); }

inline Rat rat_from_json(const json& j) {
  if (!j.is_string()) throw Error("SCHEMA", "rational must be a string");
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    const Int num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den.is_zero()) throw Error("SCHEMA", "zero denominator");
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw Error("SCHEMA", "malformed rational '" + s + "'");
  }
}

inline json rat_vec_json(const RatCoWeight& v) {
  json a = json::array();
  for (const Rat& r : v.coords) a.push_back(rat_json(r));
  return a;
}

inline json int_vec_json(const std::vector<Int>& v) { return detail::int_vec_json(v); }

// --- schemas -----------------------------------------------------------------
// A schema validates a document and rebuilds it from parsed values; a document
// round-trips when the rebuilt value equals the original.

using Schema = std::function<json(const json&)>;

inline Schema integer() {
  return [](const json& j) -> json {
    if (!j.is_number_integer() && !j.is_string()) throw Error("SCHEMA", "expected integer");
    return detail::int_json(detail::json_int(j, "value"));
  };
}

inline Schema natural() {
  return [](const json& j) -> json {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
      throw Error("SCHEMA", "expected nonnegative integer");
    return j.get<std::uint64_t>();
  };
}

inline Schema boolean() {
  return [](const json& j) -> json {
    if (!j.is_boolean()) throw Error("SCHEMA", "expected boolean");
    return j.get<bool>();
  };
}

inline Schema string() {
  return [](const json& j) -> json {
    if (!j.is_string()) throw Error("SCHEMA", "expected string");
    return j.get<std::string>();
  };
}

inline Schema rational() {
  return [](const json& j) -> json { return rat_json(rat_from_json(j)); };
}

inline Schema nullable(Schema s) {
  return [s](const json& j) -> json { return j.is_null() ? json(nullptr) : s(j); };
}

inline Schema array_of(Schema s) {
  return [s](const json& j) -> json {
    if (!j.is_array()) throw Error("SCHEMA", "expected array");
    json out = json::array();
    for (const auto& v : j) out.push_back(s(v));
    return out;
  };
}

inline Schema object(std::vector<std::pair<std::string, Schema>> fields) {
  return [fields](const json& j) -> json {
    if (!j.is_object()) throw Error("SCHEMA", "expected object");
    if (j.size() != fields.size()) throw Error("SCHEMA", "unexpected number of fields");
    json out = json::object();
    for (const auto& [k, s] : fields) {
      if (!j.contains(k)) throw Error("SCHEMA", "missing field '" + k + "'");
      try {
        out[k] = s(j.at(k));
      } catch (const Error& e) {
        throw Error("SCHEMA", k + ": " + e.what());
      }
    }
    return out;
  };
}

inline Schema element(const DatumPtr& d) {
  return [d](const json& j) -> json { return element_to_json(element_from_json(d, j)); };
}

inline Schema ints() { return array_of(integer()); }
inline Schema rats() { return array_of(rational()); }
inline Schema naturals() { return array_of(natural()); }

/// Schema of the JSON document emitted by each CLI command.
inline Schema command_schema(const std::string& command, const DatumPtr& d) {
  if (command == "presets") return array_of(string());
  if (command == "adm" || command == "adm-k" || command == "ekor") return array_of(element(d));
  if (command == "tau") return element(d);
  if (command == "bgmu")
    return array_of(object({{"kottwitz", ints()}, {"newton", rats()}, {"basic", boolean()}, {"witness", element(d)}}));
  if (command == "newton")
    return object({{"element", element(d)}, {"length", natural()}, {"nu", rats()}, {"nu_dom", rats()},
                   {"period", natural()}, {"kottwitz", ints()}, {"straight", boolean()}, {"basic", boolean()}});
  if (command == "straight")
    return array_of(object({{"element", element(d)}, {"length", natural()}, {"newton", rats()}, {"kottwitz", ints()}}));
  if (command == "strata")
    return array_of(object({{"element", element(d)}, {"length", natural()}, {"supp_sigma", naturals()},
                            {"basic", boolean()}, {"ekor", boolean()}, {"kr", boolean()}, {"omega_class", ints()}}));
  if (command == "components")
    return object({{"pi1_sigma", string()},
                   {"factors", array_of(object({{"nodes", naturals()}, {"compact_type", boolean()},
                                                {"mu_central", boolean()}}))},
                   {"orbit_parahorics", array_of(object({{"generators", naturals()}, {"finite", boolean()}}))},
                   {"classes", array_of(object({{"newton", rats()}, {"kottwitz", ints()}, {"count", nullable(integer())},
                                                {"symbolic", string()}, {"status", string()}}))}});
  if (command == "levi")
    return array_of(object({{"newton", rats()}, {"kottwitz", ints()}, {"J", naturals()}, {"pi1_M", string()},
                            {"members", array_of(object({{"x", ints()}, {"mu_x", ints()},
                                                         {"weakly_dominant", boolean()}}))}}));
  if (command == "path") {
    Schema move = object({{"alpha", ints()}, {"r", natural()}, {"from", ints()}, {"to", ints()}});
    return array_of(object({{"from", ints()}, {"to", ints()}, {"moves", nullable(array_of(move))}}));
  }
  if (command == "poset")
    return object({{"nodes", array_of(element(d))}, {"basic", array_of(boolean())},
                   {"covers", array_of(array_of(natural()))}});
  if (command == "oracle")
    return object({{"suite", string()}, {"checked", natural()},
                   {"mismatches", array_of(object({{"input", string()}, {"main", string()}, {"oracle", string()}}))}});
  throw Error("USAGE", "no schema for command '" + command + "'");
}

inline bool round_trips(const std::string& command, const DatumPtr& d, const json& doc) {
  return command_schema(command, d)(doc) == doc;
}

// --- DOT -----------------------------------------------------------------------

/// Graph ranked by length; node IDs are canonical labels, filled when flagged.
inline std::string dot(const std::vector<IwElement>& nodes, const std::vector<std::pair<std::size_t, std::size_t>>& covers,
                       const std::vector<bool>& filled) {
  std::string out = "digraph closure {\n  rankdir=BT;\n  node [shape=box];\n";
  std::map<std::int64_t, std::vector<std::size_t>> ranks;
  for (std::size_t i = 0; i < nodes.size(); ++i) ranks[length(nodes[i])].push_back(i);
  std::vector<std::string> ids;
  for (const auto& x : nodes) ids.push_back("\"" + element_label(x) + "\"");
  for (std::size_t i = 0; i < nodes.size(); ++i)
    out += "  " + ids[i] + (filled[i] ? " [style=filled, fillcolor=lightgray];\n" : " [style=solid];\n");
  for (const auto& [l, members] : ranks) {
    out += "  { rank=same;";
    for (std::size_t i : members) out += " " + ids[i] + ";";
    out += " }\n";
  }
  for (const auto& [lo, hi] : covers) out += "  " + ids[lo] + " -> " + ids[hi] + ";\n";
  return out + "}\n";
}

}  // namespace iwk::emit
