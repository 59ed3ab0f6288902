#pragma once

// Manifest ingestion: a manifest is a JSON array of named inputs, each
// either a full presentation (with an optional block of expected results to
// enforce) or a name-only stub that carries metadata such as a minimal
// polynomial.  Stubs exist so a manifest can list a complete battery while
// only some rows have machine-checkable presentations.

#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "haken/error.hpp"
#include "haken/json_io.hpp"
#include "haken/presentation.hpp"

namespace haken {

struct ManifestEntry {
  std::string name;
  std::optional<std::string> text;     // presentation source, absent for stubs
  Grammar grammar = Grammar::compact;
  bool grammar_given = false;
  ordered_json expected;               // object; empty when none given
  std::optional<std::string> minpoly;  // univariate polynomial text
  std::string note;

  bool is_stub() const { return !text.has_value(); }

  Presentation parse() const {
    if (!text) {
      throw Error("manifest entry '" + name +
                  "' is a name-only stub without a presentation");
    }
    return grammar_given ? parse_presentation(*text, grammar)
                         : parse_presentation_auto(*text);
  }
};

// The closed vocabulary for expected blocks; anything else is a manifest
// authoring error and refuses to load.
inline std::set<std::string> const& expected_keys() {
  static std::set<std::string> const keys{
      "h1_rank", "h1_torsion", "dinfty", "a5_kernel_count", "kernel_b1"};
  return keys;
}

inline ManifestEntry manifest_entry_from_json(ordered_json const& row) {
  if (!row.is_object()) throw Error("manifest rows must be JSON objects");
  ManifestEntry e;
  if (!row.contains("name") || !row["name"].is_string()) {
    throw Error("manifest row is missing a string 'name'");
  }
  e.name = row["name"].get<std::string>();
  if (row.contains("presentation") && !row["presentation"].is_null()) {
    e.text = row["presentation"].get<std::string>();
  }
  if (row.contains("grammar")) {
    std::string g = row["grammar"].get<std::string>();
    if (g == "compact") {
      e.grammar = Grammar::compact;
    } else if (g == "product") {
      e.grammar = Grammar::product;
    } else {
      throw Error("manifest entry '" + e.name + "' has unknown grammar '" + g + "'");
    }
    e.grammar_given = true;
  }
  if (row.contains("expected")) {
    if (!row["expected"].is_object()) {
      throw Error("manifest entry '" + e.name + "': 'expected' must be an object");
    }
    for (auto it = row["expected"].begin(); it != row["expected"].end(); ++it) {
      if (!expected_keys().count(it.key())) {
        throw Error("manifest entry '" + e.name + "': unknown expected key '" +
                    it.key() + "'");
      }
    }
    e.expected = row["expected"];
  }
  if (row.contains("minpoly") && !row["minpoly"].is_null()) {
    e.minpoly = row["minpoly"].get<std::string>();
  }
  if (row.contains("note") && row["note"].is_string()) {
    e.note = row["note"].get<std::string>();
  }
  if (e.text) e.parse();  // invariant: a supplied presentation parses
  return e;
}

inline std::vector<ManifestEntry> load_manifest(std::string const& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest: " + path);
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (nlohmann::json::parse_error const& e) {
    throw Error("manifest " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_array()) throw Error("manifest must be a JSON array");
  std::vector<ManifestEntry> out;
  std::set<std::string> seen;
  for (auto const& row : doc) {
    ManifestEntry e = manifest_entry_from_json(row);
    if (!seen.insert(e.name).second) {
      throw Error("manifest has duplicate entry name '" + e.name + "'");
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline ManifestEntry find_entry(std::vector<ManifestEntry> const& entries,
                                std::string const& name) {
  for (auto const& e : entries) {
    if (e.name == name) return e;
  }
  throw Error("manifest has no entry named '" + name + "'");
}

// Compare an expected block against computed values; each mismatch becomes a
// structured row.  Only keys present in both participate (a command checks
// the keys it can compute).
inline ordered_json expected_mismatches(ordered_json const& expected,
                                        ordered_json const& actual) {
  ordered_json diffs = ordered_json::array();
  if (!expected.is_object()) return diffs;
  for (auto it = expected.begin(); it != expected.end(); ++it) {
    if (!actual.contains(it.key())) continue;
    if (actual[it.key()] != it.value()) {
      diffs.push_back(ordered_json{{"key", it.key()},
                                   {"expected", it.value()},
                                   {"actual", actual[it.key()]}});
    }
  }
  return diffs;
}

}  // namespace haken
