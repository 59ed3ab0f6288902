#pragma once

#include <compare>
#include <concepts>
#include <cstdlib>
#include <vector>

namespace haken {

// A word over a generating set.  Letter +i (i >= 1) stands for generator i-1,
// letter -i for its inverse.  The zero value is not a letter.
struct Word {
  std::vector<int> letters;

  Word() = default;
  explicit Word(std::vector<int> ls) : letters(std::move(ls)) {}

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }
  bool operator==(Word const&) const = default;
  auto operator<=>(Word const&) const = default;
};

inline int generator_letter(int index) { return index + 1; }
inline int letter_index(int letter) { return std::abs(letter) - 1; }

// Cancels adjacent inverse pairs until none remain.  A single left-to-right
// stack pass suffices and is confluent: the result does not depend on the
// order cancellations are applied in.
inline Word free_reduce(std::vector<int> const& raw) {
  std::vector<int> out;
  out.reserve(raw.size());
  for (int L : raw) {
    if (!out.empty() && out.back() == -L) {
      out.pop_back();
    } else {
      out.push_back(L);
    }
  }
  return Word(std::move(out));
}

inline Word free_reduce(Word const& w) { return free_reduce(w.letters); }

// Freely reduces, then strips matching first/last letters.  Normal closures
// (and trace functions) only see the cyclic class, so relators are stored in
// this form.
inline Word cyclically_reduce(Word const& w) {
  Word r = free_reduce(w.letters);
  std::size_t i = 0;
  std::size_t j = r.letters.size();
  while (j >= i + 2 && r.letters[i] == -r.letters[j - 1]) {
    ++i;
    --j;
  }
  return Word(std::vector<int>(r.letters.begin() + static_cast<std::ptrdiff_t>(i),
                               r.letters.begin() + static_cast<std::ptrdiff_t>(j)));
}

inline Word inverse(Word const& w) {
  std::vector<int> out(w.letters.rbegin(), w.letters.rend());
  for (int& L : out) L = -L;
  return Word(std::move(out));
}

inline Word concat(Word const& u, Word const& v) {
  std::vector<int> out = u.letters;
  out.insert(out.end(), v.letters.begin(), v.letters.end());
  return free_reduce(out);
}

inline Word power(Word const& w, int k) {
  Word base = k < 0 ? inverse(w) : w;
  int n = std::abs(k);
  Word acc;
  for (int i = 0; i < n; ++i) acc = concat(acc, base);
  return acc;
}

// An abstract group the library can evaluate words in: an element type plus
// identity / multiply / invert.
template <typename C>
concept GroupCarrier = requires(C const& G, typename C::Element const& x) {
  typename C::Element;
  { G.identity() } -> std::same_as<typename C::Element>;
  { G.multiply(x, x) } -> std::same_as<typename C::Element>;
  { G.invert(x) } -> std::same_as<typename C::Element>;
};

// Left-action convention used throughout: the image of w = w1 w2 ... wk is
// img(w1)∘img(w2)∘...∘img(wk), where ∘ composes maps acting on the left (the
// right factor applies first).  Every carrier implements multiply(x, y) = x∘y.
template <GroupCarrier C>
typename C::Element evaluate_word(C const& G, Word const& w,
                                  std::vector<typename C::Element> const& images) {
  typename C::Element acc = G.identity();
  for (int L : w.letters) {
    auto const& img = images.at(static_cast<std::size_t>(letter_index(L)));
    acc = G.multiply(acc, L > 0 ? img : G.invert(img));
  }
  return acc;
}

// Symmetric group on `degree` 0-based points; an element maps point i to e[i].
struct PermGroup {
  int degree = 0;

  using Element = std::vector<int>;

  explicit PermGroup(int d = 0) : degree(d) {}

  Element identity() const {
    Element e(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) e[static_cast<std::size_t>(i)] = i;
    return e;
  }

  // (a∘b)[i] = a[b[i]]: b applies first.
  Element multiply(Element const& a, Element const& b) const {
    Element r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      r[i] = a[static_cast<std::size_t>(b[i])];
    }
    return r;
  }

  Element invert(Element const& a) const {
    Element r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      r[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
    }
    return r;
  }
};

// Builds a permutation from disjoint-cycle notation over 1-based points, e.g.
// {{1,2},{3,4}}; points not mentioned are fixed.
inline PermGroup::Element perm_from_cycles(int degree,
                                           std::vector<std::vector<int>> const& cycles) {
  PermGroup::Element e = PermGroup(degree).identity();
  for (auto const& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int from = cyc[i] - 1;
      int to = cyc[(i + 1) % cyc.size()] - 1;
      e[static_cast<std::size_t>(from)] = to;
    }
  }
  return e;
}

}  // namespace haken
