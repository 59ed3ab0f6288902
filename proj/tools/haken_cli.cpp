// haken: command-line driver for the certificate toolkit.
//
// Subcommands are thin orchestration over the header library: parse, h1,
// covers, dinfty, dihedral, quotients, property-h, ideal, charcount, growth,
// integrality, fingerprint, verify-appendix.  Every run prints one report
// (JSON by default, `--format text` for humans) whose content is
// deterministic for fixed inputs — byte-identical across runs and thread
// counts — except for the trailing "timing" block.
//
// Exit codes: 0 success, 1 error, 2 manifest expected-block mismatch.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "haken/charcount.hpp"
#include "haken/coset.hpp"
#include "haken/error.hpp"
#include "haken/finite_group.hpp"
#include "haken/groebner.hpp"
#include "haken/homology.hpp"
#include "haken/json_io.hpp"
#include "haken/manifest.hpp"
#include "haken/newton.hpp"
#include "haken/presentation.hpp"
#include "haken/quotients.hpp"
#include "haken/trace_poly.hpp"

namespace {

using haken::ordered_json;

struct GlobalOptions {
  std::string format = "json";
  std::string cache_dir;
  std::string manifest_path;
  int threads = 1;
  long max_cosets = 200000;
  std::uint64_t budget = 0;  // 0 = per-command default
  std::uint64_t seed = 0;    // reserved for randomized harnesses; no effect here
};

struct InputSelection {
  std::string text;
  std::string entry;
  std::string grammar = "auto";
};

struct ResolvedInput {
  haken::ManifestEntry entry;  // synthesized for --text inputs
  ordered_json descriptor;
};

haken::Grammar grammar_from_flag(std::string const& g, std::string const& text) {
  if (g == "compact") return haken::Grammar::compact;
  if (g == "product") return haken::Grammar::product;
  if (g == "auto") {
    return text.rfind("Group<", 0) == 0 ? haken::Grammar::product
                                        : haken::Grammar::compact;
  }
  throw haken::Error("unknown grammar '" + g + "' (compact, product, auto)");
}

void add_input_options(CLI::App* cmd, InputSelection& sel) {
  auto* text = cmd->add_option("--text", sel.text, "presentation text");
  auto* entry =
      cmd->add_option("--entry", sel.entry, "manifest entry name (needs --manifest)");
  cmd->add_option("--grammar", sel.grammar,
                  "presentation grammar: compact, product, auto");
  text->excludes(entry);
}

ResolvedInput resolve_input(GlobalOptions const& global, InputSelection const& sel,
                            bool presentation_required = true) {
  ResolvedInput out;
  if (!sel.entry.empty()) {
    if (global.manifest_path.empty()) {
      throw haken::Error("--entry requires --manifest");
    }
    out.entry = haken::find_entry(haken::load_manifest(global.manifest_path),
                                  sel.entry);
  } else if (!sel.text.empty()) {
    out.entry.name = "(inline)";
    out.entry.text = sel.text;
    out.entry.grammar = grammar_from_flag(sel.grammar, sel.text);
    out.entry.grammar_given = true;
  } else if (presentation_required) {
    throw haken::Error("no input: pass --text or --entry");
  }
  out.descriptor["name"] = out.entry.name.empty() ? "(none)" : out.entry.name;
  if (out.entry.text) {
    haken::Presentation p = out.entry.parse();
    std::string canonical = haken::print_presentation(p);
    out.descriptor["presentation"] = canonical;
    out.descriptor["hash"] = haken::hex64(haken::fnv1a64(canonical));
  } else if (presentation_required) {
    out.entry.parse();  // throws the stub diagnostic
  }
  return out;
}

// The curated target-group library, addressable by name.
std::vector<haken::FiniteGroupModel> target_library() {
  std::vector<haken::FiniteGroupModel> lib = haken::catalog_up_to(15);
  lib.push_back(haken::sym(4));
  lib.push_back(haken::sl2_model(3));
  lib.push_back(haken::alt(5));
  lib.push_back(haken::sl2_model(5));
  lib.push_back(haken::psl2_model(7));
  lib.push_back(haken::sl2_model(7));
  return lib;
}

haken::FiniteGroupModel resolve_target(std::string const& name) {
  std::string known;
  for (auto const& T : target_library()) {
    if (T.name == name) return T;
    if (!known.empty()) known += ", ";
    known += T.name;
  }
  throw haken::Error("unknown target group '" + name + "'; known targets: " + known);
}

// Shared command plumbing: compute (or fetch from cache) the result block,
// enforce the manifest expected block, assemble and print the report.
int run_command(GlobalOptions const& global, std::string const& command,
                ResolvedInput const& input, ordered_json params,
                ordered_json const& expected,
                std::function<ordered_json()> const& compute,
                std::function<ordered_json(ordered_json const&)> const& comparable =
                    nullptr) {
  auto t0 = std::chrono::steady_clock::now();
  haken::CacheKey key =
      haken::cache_key(input.descriptor.dump(), command, params);
  std::string cache_state = global.cache_dir.empty() ? "off" : "miss";
  ordered_json result;
  if (auto hit = haken::cache_load(global.cache_dir, key)) {
    result = std::move(*hit);
    cache_state = "hit";
  } else {
    result = compute();
    haken::cache_store(global.cache_dir, key, result);
  }

  int exit_code = 0;
  ordered_json report =
      haken::make_report(command, input.descriptor, std::move(params), result);
  if (expected.is_object() && !expected.empty() && comparable) {
    ordered_json diffs =
        haken::expected_mismatches(expected, comparable(result));
    report["expected"] = expected;
    report["mismatches"] = diffs;
    if (!diffs.empty()) exit_code = 2;
  }
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  haken::attach_timing(report, seconds, cache_state);
  std::cout << haken::render_report(report, global.format);
  return exit_code;
}

long torsion_to_long(std::string const& s) { return std::stol(s); }

ordered_json h1_comparable(ordered_json const& result) {
  ordered_json torsion = ordered_json::array();
  for (auto const& t : result["torsion"]) {
    torsion.push_back(torsion_to_long(t.get<std::string>()));
  }
  return ordered_json{{"h1_rank", result["rank"]},
                      {"h1_torsion", std::move(torsion)}};
}

ordered_json quotient_comparable(ordered_json const& result) {
  ordered_json out = ordered_json::object();
  for (auto const& row : result["targets"]) {
    if (row["target"] == "A5") out["a5_kernel_count"] = row["kernels"];
  }
  return out;
}

ordered_json appendix_comparable(ordered_json const& result) {
  ordered_json out = ordered_json::object();
  for (auto const& row : result["targets"]) {
    if (row["target"] != "A5") continue;
    out["a5_kernel_count"] = row["kernel_count"];
    ordered_json const& multiset = row["b1_multiset"];
    if (!multiset.empty()) {
      bool all_same = true;
      for (auto const& b : multiset) {
        if (b != multiset[0]) all_same = false;
      }
      if (all_same) {
        out["kernel_b1"] = multiset[0];
      } else {
        out["kernel_b1"] = multiset;
      }
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certificate toolkit for finitely presented groups"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--format", global.format, "report format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--cache-dir", global.cache_dir,
                 "directory for the content-addressed result cache");
  app.add_option("--manifest", global.manifest_path, "manifest JSON path");
  app.add_option("--threads", global.threads, "worker threads for enumerations")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-cosets", global.max_cosets,
                 "safety cap on coset-table size");
  app.add_option("--budget", global.budget,
                 "search/reduction budget override (0 = command default)");
  app.add_option("--seed", global.seed,
                 "seed for randomized harnesses (reports do not depend on it)");

  std::function<int()> runner;

  // ---- parse --------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("parse", "parse and canonicalize a presentation");
    auto sel = std::make_shared<InputSelection>();
    add_input_options(cmd, *sel);
    cmd->callback([&, sel] {
      runner = [&, sel] {
        ResolvedInput in = resolve_input(global, *sel);
        haken::Presentation p = in.entry.parse();
        return run_command(global, "parse", in, ordered_json::object(), {}, [&] {
          ordered_json result = haken::json_presentation(p);
          result["generator_count"] = p.generator_count();
          result["relator_count"] = static_cast<long>(p.relators.size());
          return result;
        });
      };
    });
  }

  // ---- h1 -----------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("h1", "integral first homology (rank and torsion)");
    auto sel = std::make_shared<InputSelection>();
    add_input_options(cmd, *sel);
    cmd->callback([&, sel] {
      runner = [&, sel] {
        ResolvedInput in = resolve_input(global, *sel);
        haken::Presentation p = in.entry.parse();
        return run_command(
            global, "h1", in, ordered_json::object(), in.entry.expected,
            [&] { return haken::json_h1(haken::abelianization(p)); },
            h1_comparable);
      };
    });
  }

  // ---- covers -------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "covers", "low-index subgroups and the Betti numbers of their covers");
    auto sel = std::make_shared<InputSelection>();
    auto max_index = std::make_shared<int>(6);
    add_input_options(cmd, *sel);
    cmd->add_option("--max-index", *max_index, "largest index to enumerate");
    cmd->callback([&, sel, max_index] {
      runner = [&, sel, max_index] {
        ResolvedInput in = resolve_input(global, *sel);
        haken::Presentation p = in.entry.parse();
        if (*max_index > global.max_cosets) {
          throw haken::Error("--max-index exceeds --max-cosets");
        }
        ordered_json params{{"max_index", *max_index}};
        return run_command(global, "covers", in, params, {}, [&] {
          std::uint64_t budget = global.budget ? global.budget : 50000000ull;
          auto records = haken::low_index_subgroups(p, *max_index, budget);
          ordered_json rows = ordered_json::array();
          for (auto const& rec : records) {
            rows.push_back(ordered_json{
                {"index", rec.table.size},
                {"normal", rec.normal},
                {"b1", haken::b1(haken::reidemeister_schreier(rec))}});
          }
          return ordered_json{{"max_index", *max_index},
                              {"count", static_cast<long>(records.size())},
                              {"covers", std::move(rows)}};
        });
      };
    });
  }

  // ---- dinfty -------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "dinfty", "decide surjection onto the infinite dihedral group");
    auto sel = std::make_shared<InputSelection>();
    add_input_options(cmd, *sel);
    cmd->callback([&, sel] {
      runner = [&, sel] {
        ResolvedInput in = resolve_input(global, *sel);
        haken::Presentation p = in.entry.parse();
        return run_command(
            global, "dinfty", in, ordered_json::object(), in.entry.expected,
            [&] { return haken::json_dinfty(haken::infinite_dihedral_decide(p)); },
            [](ordered_json const& result) {
              return ordered_json{
                  {"dinfty", result["positive"].get<bool>() ? "positive" : "negative"}};
            });
      };
    });
  }

  // ---- dihedral -----------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "dihedral", "finite dihedral quotient spectrum D_2k for 2 <= k <= k_max");
    auto sel = std::make_shared<InputSelection>();
    auto k_max = std::make_shared<long>(12);
    add_input_options(cmd, *sel);
    cmd->add_option("--k-max", *k_max, "largest k to probe");
    cmd->callback([&, sel, k_max] {
      runner = [&, sel, k_max] {
        ResolvedInput in = resolve_input(global, *sel);
        haken::Presentation p = in.entry.parse();
        ordered_json params{{"k_max", *k_max}};
        return run_command(global, "dihedral", in, params, {}, [&] {
          std::uint64_t budget = global.budget ? global.budget : 10000000ull;
          return ordered_json{
              {"k_max", *k_max},
              {"spectrum", haken::dihedral_spectrum(p, *k_max, budget)}};
        });
      };
    });
  }

  // ---- quotients ----------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "quotients", "epimorphism classes and kernels onto the target library");
    auto sel = std::make_shared<InputSelection>();
    auto order_bound = std::make_shared<int>(15);
    add_input_options(cmd, *sel);
    cmd->add_option("--order-bound", *order_bound, "largest target order");
    cmd->callback([&, sel, order_bound] {
      runner = [&, sel, order_bound] {
        ResolvedInput in = resolve_input(global, *sel);
        haken::Presentation p = in.entry.parse();
        ordered_json params{{"order_bound", *order_bound}};
        return run_command(
            global, "quotients", in, params, in.entry.expected,
            [&] {
              std::uint64_t budget = global.budget ? global.budget : 10000000ull;
              ordered_json rows = ordered_json::array();
              for (auto const& T : haken::fingerprint_targets(*order_bound)) {
                haken::EpimorphismReport rep =
                    haken::enumerate_epimorphisms(p, T, budget);
                rows.push_back(
                    ordered_json{{"target", T.name},
                                 {"classes", static_cast<long>(rep.classes.size())},
                                 {"kernels", rep.kernel_count}});
              }
              return ordered_json{{"order_bound", *order_bound},
                                  {"targets", std::move(rows)}};
            },
            quotient_comparable);
      };
    });
  }

  // ---- property-h ---------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "property-h",
        "sign-fixed homology class certificates on kernels of epimorphisms");
    auto sel = std::make_shared<InputSelection>();
    auto target = std::make_shared<std::string>();
    add_input_options(cmd, *sel);
    cmd->add_option("--target", *target, "target group name, e.g. Z/2")->required();
    cmd->callback([&, sel, target] {
      runner = [&, sel, target] {
        ResolvedInput in = resolve_input(global, *sel);
        haken::Presentation p = in.entry.parse();
        haken::FiniteGroupModel T = resolve_target(*target);
        if (T.order > global.max_cosets) {
          throw haken::Error("target order exceeds --max-cosets");
        }
        ordered_json params{{"target", *target}};
        return run_command(global, "property-h", in, params, {}, [&] {
          std::uint64_t budget = global.budget ? global.budget : 10000000ull;
          haken::EpimorphismReport epis =
              haken::enumerate_epimorphisms(p, T, budget);
          ordered_json rows = ordered_json::array();
          bool any_found = false;
          for (auto const& tuple : epis.classes) {
            haken::PropertyHReport rep =
                haken::property_h_certificate(p, T, tuple);
            std::vector<haken::Word> gens;
            for (int g = 0; g < p.generator_count(); ++g) {
              gens.push_back(haken::Word({haken::generator_letter(g)}));
            }
            haken::DeckAction deck =
                haken::deck_action_matrices(rep.cover, gens);
            any_found = any_found || rep.found;
            rows.push_back(ordered_json{
                {"images", tuple},
                {"report", haken::json_property_h(rep, deck.matrices)}});
          }
          return ordered_json{{"target", T.name},
                              {"epimorphism_classes", std::move(rows)},
                              {"any_found", any_found}};
        });
      };
    });
  }

  // ---- ideal --------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "ideal", "trace-coordinate ideal of the character variety (2 generators)");
    auto sel = std::make_shared<InputSelection>();
    auto with_dimension = std::make_shared<bool>(false);
    add_input_options(cmd, *sel);
    cmd->add_flag("--dimension", *with_dimension,
                  "also compute a reduced basis and the ideal dimension");
    cmd->callback([&, sel, with_dimension] {
      runner = [&, sel, with_dimension] {
        ResolvedInput in = resolve_input(global, *sel);
        haken::Presentation p = in.entry.parse();
        ordered_json params{{"dimension", *with_dimension}};
        return run_command(global, "ideal", in, params, {}, [&] {
          haken::TraceIdeal ideal = haken::character_ideal_2gen(p);
          ordered_json result = haken::json_trace_ideal(ideal);
          if (*with_dimension) {
            std::uint64_t budget =
                global.budget ? global.budget : haken::default_basis_budget;
            haken::GroebnerBasis gb = haken::groebner_basis(ideal, budget);
            result["groebner"] = haken::json_groebner(gb);
            result["dimension"] = haken::groebner_dimension(gb);
          }
          return result;
        });
      };
    });
  }

  // ---- charcount ----------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "charcount", "count SL2 character tuples over a finite field");
    auto sel = std::make_shared<InputSelection>();
    auto prime = std::make_shared<long>(0);
    auto k = std::make_shared<int>(1);
    auto orbits = std::make_shared<bool>(false);
    add_input_options(cmd, *sel);
    cmd->add_option("--p", *prime, "field characteristic")->required();
    cmd->add_option("--k", *k, "extension degree (q = p^k)");
    cmd->add_flag("--orbits", *orbits, "also count conjugation orbits");
    cmd->callback([&, sel, prime, k, orbits] {
      runner = [&, sel, prime, k, orbits] {
        ResolvedInput in = resolve_input(global, *sel);
        haken::Presentation p = in.entry.parse();
        ordered_json params{{"p", *prime}, {"k", *k}, {"orbits", *orbits}};
        return run_command(global, "charcount", in, params, {}, [&] {
          std::uint64_t budget =
              global.budget ? global.budget : haken::default_charcount_budget;
          return haken::json_charcount(haken::count_characters_fq(
              p, *prime, *k, *orbits, budget, global.threads));
        });
      };
    });
  }

  // ---- growth -------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "growth", "character counts across field extensions with a growth verdict");
    auto sel = std::make_shared<InputSelection>();
    auto prime = std::make_shared<long>(0);
    auto k_max = std::make_shared<int>(3);
    add_input_options(cmd, *sel);
    cmd->add_option("--p", *prime, "field characteristic")->required();
    cmd->add_option("--k-max", *k_max, "largest extension degree");
    cmd->callback([&, sel, prime, k_max] {
      runner = [&, sel, prime, k_max] {
        ResolvedInput in = resolve_input(global, *sel);
        haken::Presentation p = in.entry.parse();
        ordered_json params{{"p", *prime}, {"k_max", *k_max}};
        return run_command(global, "growth", in, params, {}, [&] {
          std::uint64_t budget =
              global.budget ? global.budget : haken::default_charcount_budget;
          return haken::json_growth(haken::curve_growth_probe(
              p, *prime, *k_max, budget, global.threads));
        });
      };
    });
  }

  // ---- integrality --------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "integrality", "algebraic-integer certificate for a minimal polynomial");
    auto poly = std::make_shared<std::string>();
    auto entry = std::make_shared<std::string>();
    auto irreducible = std::make_shared<bool>(true);
    auto* poly_opt = cmd->add_option("--poly", *poly, "univariate polynomial text");
    auto* entry_opt = cmd->add_option(
        "--entry", *entry, "manifest entry carrying a 'minpoly' (needs --manifest)");
    poly_opt->excludes(entry_opt);
    cmd->add_option("--irreducible", *irreducible,
                    "caller's assertion that the input is irreducible");
    cmd->callback([&, poly, entry, irreducible] {
      runner = [&, poly, entry, irreducible] {
        std::string text = *poly;
        ResolvedInput in;
        if (!entry->empty()) {
          if (global.manifest_path.empty()) {
            throw haken::Error("--entry requires --manifest");
          }
          in.entry = haken::find_entry(haken::load_manifest(global.manifest_path),
                                       *entry);
          if (!in.entry.minpoly) {
            throw haken::Error("manifest entry '" + *entry +
                               "' carries no 'minpoly'");
          }
          text = *in.entry.minpoly;
          in.descriptor["name"] = in.entry.name;
        } else if (text.empty()) {
          throw haken::Error("no input: pass --poly or --entry");
        } else {
          in.descriptor["name"] = "(inline)";
        }
        haken::UnivariatePoly f = haken::parse_univariate(text);
        std::string canonical = haken::univariate_to_string(f);
        in.descriptor["polynomial"] = canonical;
        in.descriptor["hash"] = haken::hex64(haken::fnv1a64(canonical));
        ordered_json params{{"declared_irreducible", *irreducible}};
        return run_command(global, "integrality", in, params, {}, [&] {
          return haken::json_integrality(
              haken::integrality_certificate(f, *irreducible));
        });
      };
    });
  }

  // ---- fingerprint --------------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "fingerprint", "compare finite-quotient fingerprints of two presentations");
    auto text_a = std::make_shared<std::string>();
    auto text_b = std::make_shared<std::string>();
    auto entry_a = std::make_shared<std::string>();
    auto entry_b = std::make_shared<std::string>();
    auto order_bound = std::make_shared<int>(15);
    cmd->add_option("--text-a", *text_a, "first presentation text");
    cmd->add_option("--text-b", *text_b, "second presentation text");
    cmd->add_option("--entry-a", *entry_a, "first manifest entry name");
    cmd->add_option("--entry-b", *entry_b, "second manifest entry name");
    cmd->add_option("--order-bound", *order_bound, "largest quotient order probed");
    cmd->callback([&, text_a, text_b, entry_a, entry_b, order_bound] {
      runner = [&, text_a, text_b, entry_a, entry_b, order_bound] {
        auto resolve_one = [&](std::string const& text, std::string const& entry) {
          InputSelection sel;
          sel.text = text;
          sel.entry = entry;
          return resolve_input(global, sel);
        };
        ResolvedInput a = resolve_one(*text_a, *entry_a);
        ResolvedInput b = resolve_one(*text_b, *entry_b);
        ResolvedInput combined;
        combined.descriptor["a"] = a.descriptor;
        combined.descriptor["b"] = b.descriptor;
        ordered_json params{{"order_bound", *order_bound}};
        return run_command(global, "fingerprint", combined, params, {}, [&] {
          std::uint64_t budget = global.budget ? global.budget : 10000000ull;
          haken::QuotientFingerprint fa =
              haken::quotient_fingerprint(a.entry.parse(), *order_bound, budget);
          haken::QuotientFingerprint fb =
              haken::quotient_fingerprint(b.entry.parse(), *order_bound, budget);
          return ordered_json{{"a", haken::json_fingerprint(fa)},
                              {"b", haken::json_fingerprint(fb)},
                              {"equal", fa == fb}};
        });
      };
    });
  }

  // ---- verify-appendix ----------------------------------------------------
  {
    auto* cmd = app.add_subcommand(
        "verify-appendix",
        "Betti-gap verification over kernels of epimorphisms onto the target "
        "library (requires trivial integral H1)");
    auto sel = std::make_shared<InputSelection>();
    auto order_bound = std::make_shared<int>(60);
    add_input_options(cmd, *sel);
    cmd->add_option("--order-bound", *order_bound, "largest target order");
    cmd->callback([&, sel, order_bound] {
      runner = [&, sel, order_bound] {
        ResolvedInput in = resolve_input(global, *sel);
        haken::Presentation p = in.entry.parse();
        ordered_json params{{"order_bound", *order_bound}};
        return run_command(
            global, "verify-appendix", in, params, in.entry.expected,
            [&] {
              std::uint64_t budget = global.budget ? global.budget : 10000000ull;
              // checked up front so the hypothesis failure is not silently
              // converted into a vacuous PASS
              haken::H1Summary base = haken::abelianization(p);
              if (base.rank != 0 || !base.torsion.empty()) {
                throw haken::HypothesisFailed(
                    "Betti-gap verification requires trivial integral H1");
              }
              std::vector<haken::FiniteGroupModel> targets =
                  haken::fingerprint_targets(*order_bound);
              ordered_json library = ordered_json::array();
              for (auto const& T : targets) library.push_back(T.name);

              std::vector<haken::SubgroupRecord> covers;
              struct Row {
                std::string target;
                long classes = 0;
                std::vector<std::size_t> cover_slots;
              };
              std::vector<Row> rows;
              for (auto const& T : targets) {
                if (T.order > global.max_cosets) {
                  throw haken::Error("target order exceeds --max-cosets");
                }
                haken::EpimorphismReport rep =
                    haken::enumerate_epimorphisms(p, T, budget);
                Row row;
                row.target = T.name;
                row.classes = static_cast<long>(rep.classes.size());
                std::map<int, std::size_t> kernel_slot;
                for (std::size_t i = 0; i < rep.classes.size(); ++i) {
                  if (kernel_slot.count(rep.kernel_ids[i])) continue;
                  covers.push_back(
                      haken::kernel_table(p, T, rep.classes[i]));
                  kernel_slot[rep.kernel_ids[i]] = covers.size() - 1;
                  row.cover_slots.push_back(covers.size() - 1);
                }
                rows.push_back(std::move(row));
              }
              haken::BettiGapReport gap = haken::betti_gap_check(
                  p, covers, haken::GapMode::integral);
              ordered_json target_rows = ordered_json::array();
              for (auto const& row : rows) {
                ordered_json multiset = ordered_json::array();
                for (std::size_t slot : row.cover_slots) {
                  multiset.push_back(gap.cover_b1[slot]);
                }
                target_rows.push_back(ordered_json{
                    {"target", row.target},
                    {"classes", row.classes},
                    {"kernel_count", static_cast<long>(row.cover_slots.size())},
                    {"b1_multiset", std::move(multiset)}});
              }
              ordered_json gap_json{
                  {"verdict",
                   gap.verdict == haken::GapVerdict::pass ? "PASS" : "VIOLATION"},
                  {"cover_b1", gap.cover_b1}};
              if (gap.verdict != haken::GapVerdict::pass) {
                gap_json["offending"] = gap.offending;
              }
              return ordered_json{
                  {"order_bound", *order_bound},
                  {"library", std::move(library)},
                  {"library_note",
                   "kernels of epimorphisms onto a curated library of groups "
                   "of order <= bound; not a complete normal-subgroup "
                   "enumeration for arbitrary orders"},
                  {"targets", std::move(target_rows)},
                  {"betti_gap", std::move(gap_json)}};
            },
            appendix_comparable);
      };
    });
  }

  // global flags may appear before or after the subcommand
  for (CLI::App* sub : app.get_subcommands([](CLI::App const*) { return true; })) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    return app.exit(e);
  }

  try {
    return runner ? runner() : 1;
  } catch (haken::Error const& e) {
    ordered_json report;
    report["tool"] = ordered_json{{"name", haken::tool_name},
                                  {"version", haken::tool_version},
                                  {"schema", haken::report_schema_version}};
    report["error"] = e.what();
    std::cout << haken::render_report(report, global.format);
    return 1;
  } catch (std::exception const& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
