#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "haken/error.hpp"
#include "haken/word.hpp"

namespace haken {

struct GeneratorSymbol {
  std::string name;
  int index = 0;

  bool operator==(GeneratorSymbol const&) const = default;
};

struct Presentation {
  std::vector<GeneratorSymbol> generators;
  std::vector<Word> relators;

  int generator_count() const { return static_cast<int>(generators.size()); }

  // Index of the named generator, or -1.
  int find_generator(std::string_view name) const {
    for (auto const& g : generators) {
      if (g.name == name) return g.index;
    }
    return -1;
  }

  bool operator==(Presentation const&) const = default;
};

namespace detail {

inline bool valid_generator_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) {
    return false;
  }
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace detail

// Validates names and letters, then stores relators freely and cyclically
// reduced (normal closure is unchanged by either reduction).
inline Presentation make_presentation(std::vector<std::string> const& names,
                                      std::vector<std::vector<int>> const& relators) {
  Presentation p;
  for (auto const& name : names) {
    if (!detail::valid_generator_name(name)) {
      throw Error("invalid generator name: \"" + name + "\"");
    }
    if (p.find_generator(name) >= 0) {
      throw Error("duplicate generator name: \"" + name + "\"");
    }
    p.generators.push_back({name, static_cast<int>(p.generators.size())});
  }
  for (auto const& raw : relators) {
    for (int L : raw) {
      if (L == 0 || letter_index(L) >= p.generator_count()) {
        throw Error("relator letter out of range: " + std::to_string(L));
      }
    }
    p.relators.push_back(cyclically_reduce(Word(raw)));
  }
  return p;
}

enum class Grammar { compact, product };

namespace detail {

// Shared recursive-descent state for both presentation grammars.
struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  void expect(char c, std::string const& what) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) {
      throw SyntaxError(pos, what);
    }
    ++pos;
  }

  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect_keyword(std::string_view kw) {
    skip_ws();
    if (text.substr(pos, kw.size()) != kw) {
      throw SyntaxError(pos, "keyword \"" + std::string(kw) + "\"");
    }
    pos += kw.size();
  }

  // Maximal letters/digits run starting with a letter.
  std::string name_token() {
    skip_ws();
    std::size_t start = pos;
    if (pos >= text.size() ||
        !std::isalpha(static_cast<unsigned char>(text[pos]))) {
      throw SyntaxError(pos, "generator name");
    }
    while (pos < text.size() &&
           std::isalnum(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    return std::string(text.substr(start, pos - start));
  }

  // Longest declared generator name starting at the current position, or -1.
  // Compact relators juxtapose letters, so names are matched greedily against
  // the declared list rather than tokenized.
  int greedy_generator(Presentation const& p) {
    skip_ws();
    int best = -1;
    std::size_t best_len = 0;
    for (auto const& g : p.generators) {
      if (g.name.size() > best_len &&
          text.substr(pos, g.name.size()) == g.name) {
        best = g.index;
        best_len = g.name.size();
      }
    }
    if (best >= 0) pos += best_len;
    return best;
  }

  // Signed nonzero integer after '^'.
  int exponent() {
    skip_ws();
    std::size_t start = pos;
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw SyntaxError(pos, "integer exponent");
    }
    long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1000000) throw SyntaxError(start, "exponent within +-1000000");
      ++pos;
    }
    if (v == 0) throw SyntaxError(start, "nonzero exponent");
    return static_cast<int>(neg ? -v : v);
  }

  void append_power(std::vector<int>& letters, int gen_index, int exp) {
    int letter = generator_letter(gen_index);
    if (exp < 0) letter = -letter;
    for (int i = 0; i < std::abs(exp); ++i) letters.push_back(letter);
  }

  std::vector<std::string> generator_list() {
    std::vector<std::string> names;
    names.push_back(name_token());
    while (accept(',')) names.push_back(name_token());
    return names;
  }

  // Compact relator: juxtaposed (possibly multi-character) generator names,
  // each optionally followed by ^k.
  std::vector<int> compact_relator(Presentation const& p) {
    std::vector<int> letters;
    while (true) {
      char c = peek();
      if (c == ',' || c == '>' || c == '\0') break;
      int gen = greedy_generator(p);
      if (gen < 0) {
        if (std::isalpha(static_cast<unsigned char>(c))) {
          throw UnknownGenerator(name_token());
        }
        throw SyntaxError(pos, "generator name");
      }
      int exp = accept('^') ? exponent() : 1;
      append_power(letters, gen, exp);
    }
    if (letters.empty()) throw SyntaxError(pos, "nonempty relator");
    return letters;
  }

  // Product relator: '*'-separated terms name(^k)?.
  std::vector<int> product_relator(Presentation const& p) {
    std::vector<int> letters;
    while (true) {
      std::string name = name_token();
      int gen = p.find_generator(name);
      if (gen < 0) throw UnknownGenerator(name);
      int exp = accept('^') ? exponent() : 1;
      append_power(letters, gen, exp);
      if (!accept('*')) break;
    }
    return letters;
  }

  Presentation run(Grammar grammar) {
    if (grammar == Grammar::product) expect_keyword("Group");
    expect('<', "'<'");
    Presentation p = make_presentation(generator_list(), {});
    expect('|', "'|'");
    std::vector<std::vector<int>> relators;
    if (!accept('>')) {
      do {
        relators.push_back(grammar == Grammar::compact ? compact_relator(p)
                                                       : product_relator(p));
      } while (accept(','));
      expect('>', "',' or '>'");
    }
    skip_ws();
    if (pos != text.size()) {
      throw SyntaxError(pos, "end of input");
    }
    std::vector<std::string> names;
    for (auto const& g : p.generators) names.push_back(g.name);
    return make_presentation(names, relators);
  }
};

}  // namespace detail

// Parses either grammar:
//   compact:  <a,b | a^2, abab>
//   product:  Group<a,b,c | a*c*b^-1, b*b>
// Errors: SyntaxError(position, expected), UnknownGenerator(name).
inline Presentation parse_presentation(std::string_view text, Grammar grammar) {
  if (text.empty()) throw SyntaxError(0, "nonempty presentation text");
  detail::Parser parser{text};
  return parser.run(grammar);
}

// Dispatches on a leading "Group" keyword.
inline Presentation parse_presentation_auto(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  bool product = text.substr(i, 5) == "Group";
  return parse_presentation(text, product ? Grammar::product : Grammar::compact);
}

// Canonical printed form: generators comma-separated, powers expanded, inverse
// letters written name^-1.  Relators that reduced to the empty word are
// omitted (they carry no information and have no printable form).
inline std::string print_presentation(Presentation const& p,
                                      Grammar grammar = Grammar::compact) {
  std::string out;
  bool product = grammar == Grammar::product;
  if (product) out += "Group";
  out += '<';
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    if (i) out += ',';
    out += p.generators[i].name;
  }
  out += '|';
  bool first_relator = true;
  for (auto const& r : p.relators) {
    if (r.empty()) continue;
    if (!first_relator) out += ',';
    first_relator = false;
    for (std::size_t j = 0; j < r.letters.size(); ++j) {
      int L = r.letters[j];
      if (product && j) out += '*';
      out += p.generators[static_cast<std::size_t>(letter_index(L))].name;
      if (L < 0) out += "^-1";
    }
  }
  out += '>';
  return out;
}

// Built-in presentations of the infinite dihedral group.  The two are
// Tietze-equivalent; both ship because different detectors are most natural
// on different forms.
//
// Two reflections of the integer line.
inline Presentation dinfty_reflections() {
  return parse_presentation("<a,b|a^2,b^2>", Grammar::compact);
}

// Reflection a and translation b with a b a^-1 = b^-1.
inline Presentation dinfty_semidirect() {
  return parse_presentation("<a,b|a^2,a b a^-1 b>", Grammar::compact);
}

}  // namespace haken
