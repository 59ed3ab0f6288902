#pragma once

// JSON serialization for every report the toolkit emits, plus the report
// envelope (tool version, input hash, timing, cache provenance) and the
// content-addressed result cache.  All serializers use ordered JSON and
// canonical orderings computed upstream, so a report is byte-identical
// across runs and thread counts; the "timing" block is the one documented
// exception and consumers diffing reports must strip it.

#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "haken/charcount.hpp"
#include "haken/coset.hpp"
#include "haken/error.hpp"
#include "haken/groebner.hpp"
#include "haken/homology.hpp"
#include "haken/int_matrix.hpp"
#include "haken/newton.hpp"
#include "haken/presentation.hpp"
#include "haken/quotients.hpp"
#include "haken/trace_poly.hpp"

namespace haken {

using ordered_json = nlohmann::ordered_json;

inline constexpr char const* tool_name = "haken";
inline constexpr char const* tool_version = "1.0.0";
inline constexpr int report_schema_version = 1;

// --- small utilities -------------------------------------------------------

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

// Words render in the compact style of print_presentation: "ab^-1a".
inline std::string word_string(Presentation const& p, Word const& w) {
  std::string out;
  for (int L : w.letters) {
    out += p.generators[static_cast<std::size_t>(letter_index(L))].name;
    if (L < 0) out += "^-1";
  }
  return out;
}

// --- serializers -----------------------------------------------------------
//
// Integers that can exceed 64 bits (matrix entries, torsion, homology class
// coordinates, primes) serialize as decimal strings; structurally bounded
// integers (ranks, counts, indices) stay JSON numbers.

inline ordered_json json_mpz_vector(std::vector<mpz_class> const& v) {
  ordered_json out = ordered_json::array();
  for (auto const& x : v) out.push_back(x.get_str());
  return out;
}

inline ordered_json json_int_mat(IntMat const& m) {
  ordered_json rows = ordered_json::array();
  for (long i = 0; i < m.rows; ++i) {
    ordered_json row = ordered_json::array();
    for (long j = 0; j < m.cols; ++j) row.push_back(m.at(i, j).get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ordered_json json_presentation(Presentation const& p) {
  ordered_json gens = ordered_json::array();
  for (auto const& g : p.generators) gens.push_back(g.name);
  ordered_json rels = ordered_json::array();
  for (auto const& r : p.relators) rels.push_back(word_string(p, r));
  return ordered_json{{"generators", std::move(gens)},
                      {"relators", std::move(rels)},
                      {"text", print_presentation(p)}};
}

inline ordered_json json_h1(H1Summary const& s) {
  ordered_json torsion = ordered_json::array();
  for (auto const& t : s.torsion) torsion.push_back(t.get_str());
  return ordered_json{{"rank", s.rank}, {"torsion", std::move(torsion)}};
}

inline ordered_json json_dinfty(DInftyVerdict const& v) {
  ordered_json cert = ordered_json::array();
  for (auto const& iso : v.certificate) {
    cert.push_back(ordered_json{{"sign", iso.sign},
                                {"translation", std::to_string(iso.translation)}});
  }
  ordered_json signs = ordered_json::array();
  for (auto const& row : v.sign_table) {
    signs.push_back(ordered_json{{"signs", row.signs},
                                 {"admissible", row.admissible},
                                 {"has_reflection", row.has_reflection},
                                 {"kernel_rank", row.kernel_rank},
                                 {"fixed_rank", row.fixed_rank},
                                 {"infinite_image", row.infinite_image}});
  }
  ordered_json covers = ordered_json::array();
  for (auto const& row : v.double_covers) {
    covers.push_back(ordered_json{{"signs", row.signs}, {"b1", row.b1}});
  }
  ordered_json pairs = ordered_json::array();
  for (auto const& row : v.pair_assignments) {
    pairs.push_back(ordered_json{{"assignment", row.assignment},
                                 {"relators_hold", row.relators_hold},
                                 {"infinite_image", row.infinite_image}});
  }
  return ordered_json{{"positive", v.positive},
                      {"certificate", std::move(cert)},
                      {"sign_table", std::move(signs)},
                      {"double_covers", std::move(covers)},
                      {"pair_assignments", std::move(pairs)}};
}

inline ordered_json json_property_h(PropertyHReport const& rep,
                                    std::vector<IntMat> const& deck_matrices) {
  ordered_json out;
  out["found"] = rep.found;
  out["cover_index"] = rep.cover.table.size;
  out["cover_b1"] = rep.cover_b1;
  ordered_json mats = ordered_json::array();
  for (auto const& m : deck_matrices) mats.push_back(json_int_mat(m));
  out["deck_matrices"] = std::move(mats);
  if (rep.found) {
    out["certificate"] = ordered_json{
        {"vector", json_mpz_vector(rep.certificate.vector)},
        {"signs", rep.certificate.signs}};
    out["all_plus_one"] = rep.all_plus_one;
    if (!rep.note.empty()) out["note"] = rep.note;
  }
  ordered_json table = ordered_json::array();
  for (auto const& row : rep.sign_table) {
    table.push_back(
        ordered_json{{"signs", row.signs}, {"fixed_rank", row.fixed_rank}});
  }
  out["sign_table"] = std::move(table);
  return out;
}

inline ordered_json json_charcount(CharacterCount const& c) {
  ordered_json out{{"q", c.q}, {"tuple_count", c.tuple_count}};
  if (c.orbit_count) {
    out["orbit_count"] = *c.orbit_count;
  } else {
    out["orbit_count"] = nullptr;
  }
  return out;
}

inline ordered_json json_growth(GrowthProbe const& g) {
  ordered_json levels = ordered_json::array();
  for (auto const& level : g.levels) {
    levels.push_back(
        ordered_json{{"q", level.q}, {"tuple_count", level.tuple_count}});
  }
  return ordered_json{{"prime", g.prime},
                      {"levels", std::move(levels)},
                      {"verdict", to_string(g.verdict)},
                      {"heuristic", g.heuristic}};
}

inline ordered_json json_trace_ideal(TraceIdeal const& ideal) {
  ordered_json gens = ordered_json::array();
  for (auto const& g : ideal.generators) gens.push_back(g.to_string());
  return ordered_json{{"variables", ordered_json::array({"x", "y", "z"})},
                      {"generators", std::move(gens)}};
}

inline ordered_json json_groebner(GroebnerBasis const& gb) {
  ordered_json polys = ordered_json::array();
  for (auto const& p : gb.polys) polys.push_back(p.to_string());
  return ordered_json{{"monomial_order", gb.monomial_order},
                      {"basis", std::move(polys)}};
}

inline std::string rational_string(mpq_class const& r) {
  return r.get_den() == 1 ? r.get_num().get_str()
                          : r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline ordered_json json_newton(NewtonPolygonReport const& r) {
  ordered_json slopes = ordered_json::array();
  for (auto const& s : r.slopes) {
    slopes.push_back(ordered_json{{"slope", rational_string(s.slope)},
                                  {"multiplicity", s.multiplicity}});
  }
  return ordered_json{
      {"p", r.p},
      {"slopes", std::move(slopes)},
      {"zero_root_multiplicity", r.zero_root_multiplicity},
      {"has_negative_valuation_root", r.has_negative_valuation_root}};
}

inline ordered_json json_integrality(IntegralityCertificate const& c) {
  ordered_json out;
  out["verdict"] = to_string(c.verdict);
  out["declared_irreducible"] = c.declared_irreducible;
  out["primes"] = json_mpz_vector(c.primes);
  ordered_json reports = ordered_json::array();
  for (auto const& r : c.reports) reports.push_back(json_newton(r));
  out["newton_reports"] = std::move(reports);
  if (c.squarefree_witness_prime) {
    out["squarefree_witness_prime"] = *c.squarefree_witness_prime;
  } else {
    out["squarefree_witness_prime"] = nullptr;
  }
  return out;
}

inline ordered_json json_fingerprint(QuotientFingerprint const& fp) {
  ordered_json counts = ordered_json::array();
  for (auto const& [name, classes, kernels] : fp.counts) {
    counts.push_back(ordered_json::array({name, classes, kernels}));
  }
  return ordered_json{{"order_bound", fp.order_bound},
                      {"counts", std::move(counts)},
                      {"hash", hex64(fp.hash)}};
}

// --- report envelope -------------------------------------------------------

inline ordered_json make_report(std::string const& command,
                                ordered_json input,
                                ordered_json params,
                                ordered_json result) {
  ordered_json report;
  report["tool"] = ordered_json{{"name", tool_name},
                                {"version", tool_version},
                                {"schema", report_schema_version}};
  report["command"] = command;
  report["input"] = std::move(input);
  report["params"] = std::move(params);
  report["result"] = std::move(result);
  return report;
}

// The one non-deterministic block; appended last so everything before it is
// byte-stable for fixed inputs.
inline void attach_timing(ordered_json& report, double seconds,
                          std::string const& cache_state) {
  report["timing"] =
      ordered_json{{"seconds", seconds}, {"cache", cache_state}};
}

// --- text rendering --------------------------------------------------------

namespace detail {

inline bool scalar_array(ordered_json const& a) {
  for (auto const& v : a) {
    if (v.is_object() || v.is_array()) return false;
  }
  return true;
}

inline void render_text(ordered_json const& v, std::string const& prefix,
                        std::string& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
      render_text(it.value(), key, out);
    }
  } else if (v.is_array()) {
    if (scalar_array(v)) {
      out += prefix + ": " + v.dump() + "\n";
    } else {
      long i = 0;
      for (auto const& item : v) {
        render_text(item, prefix + "[" + std::to_string(i++) + "]", out);
      }
      if (i == 0) out += prefix + ": []\n";
    }
  } else if (v.is_string()) {
    out += prefix + ": " + v.get<std::string>() + "\n";
  } else {
    out += prefix + ": " + v.dump() + "\n";
  }
}

}  // namespace detail

inline std::string render_report(ordered_json const& report,
                                 std::string const& format) {
  if (format == "json") return report.dump(2) + "\n";
  if (format != "text") throw Error("unknown format: " + format);
  std::string out;
  detail::render_text(report, "", out);
  return out;
}

// --- result cache ----------------------------------------------------------
//
// Content-addressed: the key hashes the canonical input, the command, its
// parameters, and the tool version, so stale entries can never be confused
// with current ones.  Writes go through a temp file and an atomic rename.

struct CacheKey {
  std::string hex;
};

inline CacheKey cache_key(std::string const& canonical_input,
                          std::string const& command,
                          ordered_json const& params) {
  std::string blob = canonical_input;
  blob += '\n';
  blob += command;
  blob += '\n';
  blob += params.dump();
  blob += '\n';
  blob += tool_version;
  return CacheKey{hex64(fnv1a64(blob))};
}

inline std::optional<ordered_json> cache_load(std::string const& dir,
                                              CacheKey const& key) {
  if (dir.empty()) return std::nullopt;
  std::filesystem::path path = std::filesystem::path(dir) / (key.hex + ".json");
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    ordered_json v = ordered_json::parse(in);
    return v;
  } catch (nlohmann::json::parse_error const&) {
    return std::nullopt;  // treat a torn entry as a miss
  }
}

inline void cache_store(std::string const& dir, CacheKey const& key,
                        ordered_json const& result) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  std::filesystem::path final_path =
      std::filesystem::path(dir) / (key.hex + ".json");
  std::filesystem::path tmp_path =
      final_path.string() + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp_path);
    out << result.dump(2) << "\n";
  }
  std::filesystem::rename(tmp_path, final_path);
}

}  // namespace haken
