#pragma once

// JSON file formats:
//   solution:   {"size": n, "sigma": [[...], ...], "label": "..."}
//   family:     {"group": "6", "j": [0, 2, 2, 5, 2, 2]}  (entries are element
//               indices or coordinate arrays)
//   dense brace {"size": N, "add": [[...]], "mul": [[...]]}
// Malformed input raises StructuralError; well-formed input that violates
// the axioms raises VerificationError.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ybe/a2family.hpp"
#include "ybe/brace.hpp"
#include "ybe/error.hpp"
#include "ybe/solution.hpp"

namespace ybe {

  using json = nlohmann::json;

  inline json read_json_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw StructuralError("cannot open '" + path + "'");
    }
    try {
      return json::parse(in);
    } catch (json::parse_error const& e) {
      throw StructuralError("'" + path + "' is not valid JSON: " + e.what());
    }
  }

  inline void write_json_file(std::string const& path, json const& j) {
    std::ofstream out(path);
    if (!out) {
      throw StructuralError("cannot write '" + path + "'");
    }
    out << j.dump(2) << '\n';
  }

  namespace detail {
    inline std::size_t require_size(json const& j, char const* key) {
      if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer() || j[key].get<std::int64_t>() < 1) {
        throw StructuralError(std::string("field '") + key + "' must be a positive integer");
      }
      return j[key].get<std::size_t>();
    }

    inline std::vector<std::size_t> require_square(json const& j, char const* key, std::size_t n) {
      if (!j.contains(key) || !j[key].is_array() || j[key].size() != n) {
        throw StructuralError(std::string("field '") + key + "' must be an array of " + std::to_string(n)
                              + " rows");
      }
      std::vector<std::size_t> flat;
      flat.reserve(n * n);
      for (auto const& row : j[key]) {
        if (!row.is_array() || row.size() != n) {
          throw StructuralError(std::string("every row of '") + key + "' must have " + std::to_string(n)
                                + " entries");
        }
        for (auto const& v : row) {
          if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || v.get<std::size_t>() >= n) {
            throw StructuralError(std::string("entries of '") + key + "' must lie in [0, "
                                  + std::to_string(n) + ")");
          }
          flat.push_back(v.get<std::size_t>());
        }
      }
      return flat;
    }

    template <typename T>
    json rows_of(std::span<const T> flat, std::size_t n) {
      json rows = json::array();
      for (std::size_t x = 0; x < n; ++x) {
        json row = json::array();
        for (std::size_t y = 0; y < n; ++y) {
          row.push_back(flat[x * n + y]);
        }
        rows.push_back(std::move(row));
      }
      return rows;
    }
  }  // namespace detail

  inline json solution_to_json(SolutionTable const& s) {
    json j;
    j["size"] = s.size();
    j["sigma"] = detail::rows_of(s.table(), s.size());
    if (!s.label().empty()) {
      j["label"] = s.label();
    }
    return j;
  }

  /// Raw table without validation, for diagnostics.
  inline std::vector<point_t> sigma_table_from_json(json const& j, std::size_t& n) {
    n = detail::require_size(j, "size");
    auto flat = detail::require_square(j, "sigma", n);
    return std::vector<point_t>(flat.begin(), flat.end());
  }

  inline SolutionTable solution_from_json(json const& j) {
    std::size_t n = 0;
    auto table = sigma_table_from_json(j, n);
    std::string label;
    if (j.contains("label")) {
      if (!j["label"].is_string()) {
        throw StructuralError("field 'label' must be a string");
      }
      label = j["label"].get<std::string>();
    }
    return SolutionTable::from_sigma(n, std::move(table), std::move(label));
  }

  inline json family_to_json(JFamily const& jf) {
    json j;
    j["group"] = jf.group.literal();
    j["j"] = jf.j;
    return j;
  }

  inline JFamily family_from_json(json const& j) {
    if (!j.is_object() || !j.contains("group") || !j["group"].is_string()) {
      throw StructuralError("field 'group' must be a group literal string");
    }
    if (!j.contains("j") || !j["j"].is_array()) {
      throw StructuralError("field 'j' must be an array");
    }
    JFamily jf{AbGroup::parse(j["group"].get<std::string>()), {}};
    for (auto const& v : j["j"]) {
      if (v.is_number_integer()) {
        auto idx = v.get<std::int64_t>();
        if (idx < 0 || static_cast<std::size_t>(idx) >= jf.group.order()) {
          throw StructuralError("family entry " + std::to_string(idx) + " is not an element index");
        }
        jf.j.push_back(static_cast<std::size_t>(idx));
      } else if (v.is_array()) {
        std::vector<std::int64_t> coords;
        for (auto const& c : v) {
          if (!c.is_number_integer()) {
            throw StructuralError("family coordinates must be integers");
          }
          coords.push_back(c.get<std::int64_t>());
        }
        jf.j.push_back(jf.group.index(jf.group.reduce(coords)));
      } else {
        throw StructuralError("family entries must be indices or coordinate arrays");
      }
    }
    validate(jf);
    return jf;
  }

  inline json brace_to_json(DenseBrace const& b) {
    json j;
    j["size"] = b.size();
    j["add"] = detail::rows_of(b.add_table(), b.size());
    j["mul"] = detail::rows_of(b.mul_table(), b.size());
    return j;
  }

  /// Parses the tables; the brace axioms are not checked here.
  inline DenseBrace brace_from_json(json const& j) {
    std::size_t n = detail::require_size(j, "size");
    if (n > dense_threshold) {
      throw BoundError("dense brace of order " + std::to_string(n) + " exceeds "
                       + std::to_string(dense_threshold));
    }
    auto add = detail::require_square(j, "add", n);
    auto mul = detail::require_square(j, "mul", n);
    return DenseBrace(n, std::move(add), std::move(mul));
  }

  /// Parses a comma-separated list of integers such as "0,2,2,5".
  inline std::vector<std::int64_t> parse_int_list(std::string const& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(item, &used);
      } catch (std::exception const&) {
        throw StructuralError("bad integer '" + item + "' in list '" + text + "'");
      }
      while (used < item.size() && item[used] == ' ') {
        ++used;
      }
      if (used != item.size()) {
        throw StructuralError("bad integer '" + item + "' in list '" + text + "'");
      }
      out.push_back(v);
    }
    return out;
  }

}  // namespace ybe
