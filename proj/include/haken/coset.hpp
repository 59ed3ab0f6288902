#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "haken/error.hpp"
#include "haken/presentation.hpp"
#include "haken/word.hpp"

namespace haken {

// Complete coset table: action[g] and inverse_action[g] are mutually inverse
// permutations of {0..size-1}.  Coset 0 is the subgroup itself.  (Serialized
// form is 1-based; in-memory everything is 0-based.)
struct CosetTable {
  int size = 0;
  std::vector<std::vector<int>> action;          // [generator][coset]
  std::vector<std::vector<int>> inverse_action;  // [generator][coset]
  Presentation base;

  int apply(int coset, int letter) const {
    std::size_t g = static_cast<std::size_t>(letter_index(letter));
    return letter > 0 ? action[g][static_cast<std::size_t>(coset)]
                      : inverse_action[g][static_cast<std::size_t>(coset)];
  }

  int apply_word(int coset, Word const& w) const {
    for (int L : w.letters) coset = apply(coset, L);
    return coset;
  }

  bool operator==(CosetTable const&) const = default;
};

struct SubgroupRecord {
  CosetTable table;
  bool normal = false;
  std::vector<Word> transversal;  // prefix-closed Schreier representatives
};

namespace detail {

// Todd-Coxeter working state: growing tables with a union-find over cosets so
// coincidences can be folded in lazily.  The surviving representative of a
// merge is always the smaller index, which keeps the "first free number wins"
// discipline deterministic.
struct TCEngine {
  Presentation const& p;
  std::int64_t max_cosets;
  int gens;
  std::vector<std::vector<int>> fwd, bwd;  // [generator][coset], -1 undefined
  std::vector<int> parent;
  std::int64_t alive = 0;
  std::deque<std::pair<int, int>> pending;

  TCEngine(Presentation const& pres, std::int64_t cap)
      : p(pres),
        max_cosets(cap),
        gens(pres.generator_count()),
        fwd(static_cast<std::size_t>(gens)),
        bwd(static_cast<std::size_t>(gens)) {}

  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }

  int new_coset() {
    if (alive + 1 > max_cosets) throw CosetOverflow(max_cosets);
    int id = static_cast<int>(parent.size());
    parent.push_back(id);
    for (int g = 0; g < gens; ++g) {
      fwd[static_cast<std::size_t>(g)].push_back(-1);
      bwd[static_cast<std::size_t>(g)].push_back(-1);
    }
    ++alive;
    return id;
  }

  // Defined image of root coset c under a signed letter, or -1.
  int get(int c, int letter) {
    std::size_t g = static_cast<std::size_t>(letter_index(letter));
    int v = letter > 0 ? fwd[g][static_cast<std::size_t>(c)]
                       : bwd[g][static_cast<std::size_t>(c)];
    return v < 0 ? -1 : find(v);
  }

  // Record c . letter = d (roots).  Conflicting prior entries become queued
  // coincidences instead of overwrites.
  void set_edge(int c, int letter, int d) {
    if (letter < 0) {
      std::swap(c, d);
      letter = -letter;
    }
    std::size_t g = static_cast<std::size_t>(letter_index(letter));
    int& f = fwd[g][static_cast<std::size_t>(c)];
    if (f < 0) {
      f = d;
    } else if (find(f) != d) {
      pending.push_back({find(f), d});
    }
    int& b = bwd[g][static_cast<std::size_t>(d)];
    if (b < 0) {
      b = c;
    } else if (find(b) != c) {
      pending.push_back({find(b), c});
    }
  }

  void process_pending() {
    while (!pending.empty()) {
      auto [x, y] = pending.front();
      pending.pop_front();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (x > y) std::swap(x, y);
      parent[static_cast<std::size_t>(y)] = x;
      --alive;
      // fold y's edges into x
      for (int g = 0; g < gens; ++g) {
        int ty = fwd[static_cast<std::size_t>(g)][static_cast<std::size_t>(y)];
        if (ty >= 0) {
          fwd[static_cast<std::size_t>(g)][static_cast<std::size_t>(y)] = -1;
          set_edge(x, generator_letter(g), find(ty));
        }
        int by = bwd[static_cast<std::size_t>(g)][static_cast<std::size_t>(y)];
        if (by >= 0) {
          bwd[static_cast<std::size_t>(g)][static_cast<std::size_t>(y)] = -1;
          set_edge(find(by), generator_letter(g), x);
        }
      }
    }
  }

  // HLT scan: trace w from c toward c from both ends, defining cosets to
  // close the gap.
  void scan_and_fill(int c, Word const& w) {
    if (w.empty()) return;
    while (true) {
      c = find(c);
      int f = c;
      std::size_t fi = 0;
      int b = c;
      std::size_t bi = w.size();
      while (fi < bi) {
        int nxt = get(f, w.letters[fi]);
        if (nxt < 0) break;
        f = nxt;
        ++fi;
      }
      if (fi == bi) {
        if (f != b) {
          pending.push_back({f, b});
          process_pending();
        }
        return;
      }
      while (bi > fi) {
        int prv = get(b, -w.letters[bi - 1]);
        if (prv < 0) break;
        b = prv;
        --bi;
      }
      if (fi == bi) {
        if (f != b) {
          pending.push_back({f, b});
          process_pending();
        }
        return;
      }
      if (fi + 1 == bi) {
        set_edge(f, w.letters[fi], b);
        process_pending();
        return;
      }
      int n = new_coset();
      set_edge(f, w.letters[fi], n);
      process_pending();
    }
  }

  CosetTable compress() {
    std::vector<int> relabel(parent.size(), -1);
    int n = 0;
    for (std::size_t i = 0; i < parent.size(); ++i) {
      if (find(static_cast<int>(i)) == static_cast<int>(i)) {
        relabel[i] = n++;
      }
    }
    CosetTable t;
    t.size = n;
    t.base = p;
    t.action.assign(static_cast<std::size_t>(gens), std::vector<int>(static_cast<std::size_t>(n), -1));
    t.inverse_action.assign(static_cast<std::size_t>(gens), std::vector<int>(static_cast<std::size_t>(n), -1));
    for (std::size_t i = 0; i < parent.size(); ++i) {
      if (relabel[i] < 0) continue;
      for (int g = 0; g < gens; ++g) {
        int img = fwd[static_cast<std::size_t>(g)][i];
        if (img >= 0) {
          t.action[static_cast<std::size_t>(g)][static_cast<std::size_t>(relabel[i])] =
              relabel[static_cast<std::size_t>(find(img))];
        }
      }
    }
    for (int g = 0; g < gens; ++g) {
      for (int i = 0; i < n; ++i) {
        int img = t.action[static_cast<std::size_t>(g)][static_cast<std::size_t>(i)];
        if (img < 0) throw Error("internal: incomplete coset table after enumeration");
        t.inverse_action[static_cast<std::size_t>(g)][static_cast<std::size_t>(img)] = i;
      }
    }
    return t;
  }
};

}  // namespace detail

// Todd-Coxeter enumeration of the cosets of <subgroup_gens> by HLT-style
// relator filling.  Deterministic: cosets are numbered first-free, scans run
// in index order, and a coincidence keeps the smaller number.
inline CosetTable todd_coxeter(Presentation const& p,
                               std::vector<Word> const& subgroup_gens,
                               std::int64_t max_cosets = 200000) {
  for (auto const& w : subgroup_gens) {
    for (int L : w.letters) {
      if (letter_index(L) >= p.generator_count()) {
        throw Error("subgroup generator uses letter out of range");
      }
    }
  }
  detail::TCEngine e(p, max_cosets);
  e.new_coset();
  for (auto const& h : subgroup_gens) e.scan_and_fill(0, free_reduce(h));
  for (int i = 0; i < static_cast<int>(e.parent.size()); ++i) {
    if (e.find(i) != i) continue;
    for (auto const& r : p.relators) {
      e.scan_and_fill(i, r);
      if (e.find(i) != i) break;
    }
    if (e.find(i) != i) continue;
    for (int g = 0; g < p.generator_count(); ++g) {
      if (e.find(i) != i) break;
      if (e.get(i, generator_letter(g)) < 0) {
        int n = e.new_coset();
        e.set_edge(i, generator_letter(g), n);
        e.process_pending();
      }
    }
  }
  return e.compress();
}

// Prefix-closed Schreier transversal from a breadth-first spanning tree of
// the coset graph (letters tried in the order +1..+g, -1..-g).
inline std::vector<Word> schreier_transversal(CosetTable const& t,
                                              std::vector<int> const& letter_order) {
  std::vector<Word> reps(static_cast<std::size_t>(t.size));
  std::vector<bool> seen(static_cast<std::size_t>(t.size), false);
  seen[0] = true;
  std::deque<int> queue{0};
  int found = 1;
  while (!queue.empty() && found < t.size) {
    int c = queue.front();
    queue.pop_front();
    for (int L : letter_order) {
      int d = t.apply(c, L);
      if (!seen[static_cast<std::size_t>(d)]) {
        seen[static_cast<std::size_t>(d)] = true;
        ++found;
        std::vector<int> w = reps[static_cast<std::size_t>(c)].letters;
        w.push_back(L);
        reps[static_cast<std::size_t>(d)] = Word(std::move(w));
        queue.push_back(d);
      }
    }
  }
  return reps;
}

inline std::vector<int> default_letter_order(int gens) {
  std::vector<int> order;
  for (int g = 0; g < gens; ++g) order.push_back(generator_letter(g));
  for (int g = 0; g < gens; ++g) order.push_back(-generator_letter(g));
  return order;
}

// The Schreier generators of the subgroup: one per non-tree edge of the coset
// graph.  Kept in a bundle because rewriting (and the deck action downstream)
// needs the edge <-> generator correspondence, not just the presentation.
struct SchreierData {
  Presentation presentation;                 // on generators x1, x2, ...
  std::vector<std::pair<int, int>> edges;    // subgroup gen -> (coset, ambient gen)
  std::vector<Word> generator_words;         // subgroup gen -> ambient word
  std::map<std::pair<int, int>, int> edge_to_gen;  // complement of tree edges
};

namespace detail {

// Rewrites an ambient word starting at `start` into Schreier generators.
inline std::vector<int> schreier_rewrite(CosetTable const& t, SchreierData const& sd,
                                         int start, Word const& w, int* end_coset) {
  std::vector<int> out;
  int c = start;
  for (int L : w.letters) {
    if (L > 0) {
      auto it = sd.edge_to_gen.find({c, letter_index(L)});
      if (it != sd.edge_to_gen.end()) out.push_back(generator_letter(it->second));
      c = t.apply(c, L);
    } else {
      int p = t.apply(c, L);
      auto it = sd.edge_to_gen.find({p, letter_index(L)});
      if (it != sd.edge_to_gen.end()) out.push_back(-generator_letter(it->second));
      c = p;
    }
  }
  if (end_coset) *end_coset = c;
  return out;
}

}  // namespace detail

inline SchreierData schreier_data(SubgroupRecord const& rec) {
  CosetTable const& t = rec.table;
  int gens = t.base.generator_count();
  // Tree edges, recovered from the prefix-closed transversal: the last letter
  // of each representative is the tree edge into that coset.
  std::vector<std::vector<bool>> is_tree(static_cast<std::size_t>(gens),
                                         std::vector<bool>(static_cast<std::size_t>(t.size), false));
  for (int c = 1; c < t.size; ++c) {
    Word const& rep = rec.transversal[static_cast<std::size_t>(c)];
    if (rep.empty()) throw Error("internal: transversal not prefix-closed");
    int L = rep.letters.back();
    int parent = t.apply(c, -L);
    if (L > 0) {
      is_tree[static_cast<std::size_t>(letter_index(L))][static_cast<std::size_t>(parent)] = true;
    } else {
      is_tree[static_cast<std::size_t>(letter_index(L))][static_cast<std::size_t>(c)] = true;
    }
  }
  SchreierData sd;
  std::vector<std::string> names;
  for (int c = 0; c < t.size; ++c) {
    for (int g = 0; g < gens; ++g) {
      if (is_tree[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)]) continue;
      int idx = static_cast<int>(sd.edges.size());
      sd.edges.push_back({c, g});
      sd.edge_to_gen[{c, g}] = idx;
      names.push_back("x" + std::to_string(idx + 1));
      // t_c * g * t_{c.g}^-1
      Word w = concat(rec.transversal[static_cast<std::size_t>(c)], Word({generator_letter(g)}));
      w = concat(w, inverse(rec.transversal[static_cast<std::size_t>(t.apply(c, generator_letter(g)))]));
      sd.generator_words.push_back(w);
    }
  }
  std::vector<std::vector<int>> relators;
  for (int c = 0; c < t.size; ++c) {
    for (auto const& r : t.base.relators) {
      int end = 0;
      relators.push_back(detail::schreier_rewrite(t, sd, c, r, &end));
      if (end != c) throw Error("internal: relator trace left its coset");
    }
  }
  sd.presentation = make_presentation(names, relators);
  return sd;
}

// Subgroup presentation on Schreier generators: exactly n*g - (n-1)
// generators and n * (ambient relator count) relators for index n.
inline Presentation reidemeister_schreier(SubgroupRecord const& rec) {
  return schreier_data(rec).presentation;
}

namespace detail {

inline bool acts_trivially_everywhere(CosetTable const& t, Word const& w) {
  for (int c = 0; c < t.size; ++c) {
    if (t.apply_word(c, w) != c) return false;
  }
  return true;
}

}  // namespace detail

// A subgroup is normal iff every Schreier generator acts trivially on every
// coset (point stabilizer of coset 0 = kernel of the action).
inline bool is_normal_subgroup(SubgroupRecord const& rec) {
  SchreierData sd = schreier_data(rec);
  for (auto const& w : sd.generator_words) {
    if (!detail::acts_trivially_everywhere(rec.table, w)) return false;
  }
  return true;
}

inline SubgroupRecord make_subgroup_record(CosetTable table) {
  SubgroupRecord rec;
  rec.table = std::move(table);
  rec.transversal = schreier_transversal(
      rec.table, default_letter_order(rec.table.base.generator_count()));
  rec.normal = is_normal_subgroup(rec);
  return rec;
}

// g h g^-1 written in the Schreier generators of a normal subgroup.
inline Word conjugation_rewrite(SubgroupRecord const& rec, Word const& g,
                                Word const& h) {
  if (!rec.normal) throw NotNormal();
  SchreierData sd = schreier_data(rec);
  Word ambient;
  for (int L : h.letters) {
    Word const& gw = sd.generator_words.at(static_cast<std::size_t>(letter_index(L)));
    ambient = concat(ambient, L > 0 ? gw : inverse(gw));
  }
  Word conj = concat(concat(g, ambient), inverse(g));
  int end = 0;
  std::vector<int> out = detail::schreier_rewrite(rec.table, sd, 0, conj, &end);
  if (end != 0) throw Error("conjugation_rewrite: word does not lie in the subgroup");
  return free_reduce(out);
}

// Variant that reuses a precomputed SchreierData (the deck-action loop calls
// this once per Schreier generator).
inline Word conjugation_rewrite(SubgroupRecord const& rec, SchreierData const& sd,
                                Word const& g, Word const& h) {
  if (!rec.normal) throw NotNormal();
  Word ambient;
  for (int L : h.letters) {
    Word const& gw = sd.generator_words.at(static_cast<std::size_t>(letter_index(L)));
    ambient = concat(ambient, L > 0 ? gw : inverse(gw));
  }
  Word conj = concat(concat(g, ambient), inverse(g));
  int end = 0;
  std::vector<int> out = detail::schreier_rewrite(rec.table, sd, 0, conj, &end);
  if (end != 0) throw Error("conjugation_rewrite: word does not lie in the subgroup");
  return free_reduce(out);
}

// Kernel of the homomorphism sending generators to `images`: cosets are the
// image-subgroup elements discovered breadth first from the identity.
template <GroupCarrier C>
SubgroupRecord kernel_table(Presentation const& p, C const& G,
                            std::vector<typename C::Element> const& images) {
  if (static_cast<int>(images.size()) != p.generator_count()) {
    throw Error("kernel_table: one image per generator required");
  }
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    if (evaluate_word(G, p.relators[i], images) != G.identity()) {
      throw NotAHomomorphism(static_cast<int>(i));
    }
  }
  std::vector<typename C::Element> elements{G.identity()};
  std::map<typename C::Element, int> index{{G.identity(), 0}};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (auto const& img : images) {
      typename C::Element next = G.multiply(elements[head], img);
      if (index.emplace(next, static_cast<int>(elements.size())).second) {
        elements.push_back(next);
      }
    }
  }
  int n = static_cast<int>(elements.size());
  CosetTable t;
  t.size = n;
  t.base = p;
  t.action.assign(static_cast<std::size_t>(p.generator_count()),
                  std::vector<int>(static_cast<std::size_t>(n)));
  t.inverse_action = t.action;
  for (int g = 0; g < p.generator_count(); ++g) {
    for (int c = 0; c < n; ++c) {
      int d = index.at(G.multiply(elements[static_cast<std::size_t>(c)],
                                  images[static_cast<std::size_t>(g)]));
      t.action[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)] = d;
      t.inverse_action[static_cast<std::size_t>(g)][static_cast<std::size_t>(d)] = c;
    }
  }
  SubgroupRecord rec;
  rec.table = std::move(t);
  rec.transversal = schreier_transversal(
      rec.table, default_letter_order(p.generator_count()));
  rec.normal = true;  // cosets are image elements, so the stabilizer of 0 is the kernel
  return rec;
}

namespace detail {

// Backtracking state for the low-index search over standardized partial
// tables.  Every write goes through the trail so choices undo cleanly.
struct LowIndexSearch {
  Presentation const& p;
  int max_index;
  int gens;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  int n = 1;  // cosets 0..n-1 are in use
  std::vector<std::vector<int>> fwd, bwd;
  std::vector<std::pair<int, int>> trail;  // (generator, coset) of fwd writes
  std::vector<CosetTable> complete;

  LowIndexSearch(Presentation const& pres, int max_idx, std::uint64_t node_budget)
      : p(pres),
        max_index(max_idx),
        gens(pres.generator_count()),
        budget(node_budget),
        fwd(static_cast<std::size_t>(gens), std::vector<int>(static_cast<std::size_t>(max_idx), -1)),
        bwd(static_cast<std::size_t>(gens), std::vector<int>(static_cast<std::size_t>(max_idx), -1)) {}

  int get(int c, int letter) const {
    std::size_t g = static_cast<std::size_t>(letter_index(letter));
    return letter > 0 ? fwd[g][static_cast<std::size_t>(c)]
                      : bwd[g][static_cast<std::size_t>(c)];
  }

  // Attempts c . g = d; false on conflict with existing entries.
  bool assign(int c, int g, int d) {
    if (++nodes > budget) throw SearchBudgetExceeded(budget);
    int& f = fwd[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)];
    int& b = bwd[static_cast<std::size_t>(g)][static_cast<std::size_t>(d)];
    if (f >= 0) return f == d;
    if (b >= 0) return b == c;
    f = d;
    b = c;
    trail.push_back({g, c});
    return true;
  }

  void rewind(std::size_t mark) {
    while (trail.size() > mark) {
      auto [g, c] = trail.back();
      trail.pop_back();
      int d = fwd[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)];
      fwd[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)] = -1;
      bwd[static_cast<std::size_t>(g)][static_cast<std::size_t>(d)] = -1;
    }
  }

  // Scans every relator at every coset, applying forced deductions, until a
  // fixpoint; false on contradiction.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int c = 0; c < n; ++c) {
        for (auto const& r : p.relators) {
          if (r.empty()) continue;
          int f = c;
          std::size_t fi = 0;
          int b = c;
          std::size_t bi = r.size();
          while (fi < bi) {
            int nxt = get(f, r.letters[fi]);
            if (nxt < 0) break;
            f = nxt;
            ++fi;
          }
          while (bi > fi) {
            int prv = get(b, -r.letters[bi - 1]);
            if (prv < 0) break;
            b = prv;
            --bi;
          }
          if (fi == bi) {
            if (f != b) return false;
          } else if (fi + 1 == bi) {
            int L = r.letters[fi];
            bool ok = L > 0 ? assign(f, letter_index(L), b)
                            : assign(b, letter_index(L), f);
            if (!ok) return false;
            changed = true;
          }
        }
      }
    }
    return true;
  }

  void emit() {
    CosetTable t;
    t.size = n;
    t.base = p;
    t.action.assign(static_cast<std::size_t>(gens), std::vector<int>(static_cast<std::size_t>(n)));
    t.inverse_action = t.action;
    for (int g = 0; g < gens; ++g) {
      for (int c = 0; c < n; ++c) {
        t.action[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)] =
            fwd[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)];
        t.inverse_action[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)] =
            bwd[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)];
      }
    }
    complete.push_back(std::move(t));
  }

  void search() {
    if (!propagate()) return;
    // first undefined slot, row major
    int sc = -1, sg = -1;
    for (int c = 0; c < n && sc < 0; ++c) {
      for (int g = 0; g < gens; ++g) {
        if (fwd[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)] < 0) {
          sc = c;
          sg = g;
          break;
        }
      }
    }
    if (sc < 0) {
      emit();
      return;
    }
    // existing cosets first, then one fresh coset: tables stay standardized
    for (int d = 0; d <= n && d <= max_index - 1; ++d) {
      bool fresh = d == n;
      if (fresh && n >= max_index) break;
      std::size_t mark = trail.size();
      if (fresh) ++n;
      if (assign(sc, sg, d)) {
        search();
      }
      rewind(mark);
      if (fresh) --n;
    }
  }
};

// Renumbers a complete table in first-visit order scanning from `root`
// (generators ascending), returning the flattened action for lexicographic
// comparison.
inline std::vector<int> rerooted_flat(CosetTable const& t, int root) {
  std::vector<int> order{root};
  std::vector<int> newname(static_cast<std::size_t>(t.size), -1);
  newname[static_cast<std::size_t>(root)] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (int g = 0; g < t.base.generator_count(); ++g) {
      int d = t.action[static_cast<std::size_t>(g)][static_cast<std::size_t>(order[head])];
      if (newname[static_cast<std::size_t>(d)] < 0) {
        newname[static_cast<std::size_t>(d)] = static_cast<int>(order.size());
        order.push_back(d);
      }
    }
  }
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(t.size) * static_cast<std::size_t>(t.base.generator_count()));
  for (int c = 0; c < t.size; ++c) {
    for (int g = 0; g < t.base.generator_count(); ++g) {
      flat.push_back(newname[static_cast<std::size_t>(
          t.action[static_cast<std::size_t>(g)][static_cast<std::size_t>(order[static_cast<std::size_t>(c)])])]);
    }
  }
  return flat;
}

inline CosetTable table_from_flat(Presentation const& p, int size,
                                  std::vector<int> const& flat) {
  CosetTable t;
  t.size = size;
  t.base = p;
  int gens = p.generator_count();
  t.action.assign(static_cast<std::size_t>(gens), std::vector<int>(static_cast<std::size_t>(size)));
  t.inverse_action = t.action;
  for (int c = 0; c < size; ++c) {
    for (int g = 0; g < gens; ++g) {
      int d = flat[static_cast<std::size_t>(c) * static_cast<std::size_t>(gens) + static_cast<std::size_t>(g)];
      t.action[static_cast<std::size_t>(g)][static_cast<std::size_t>(c)] = d;
      t.inverse_action[static_cast<std::size_t>(g)][static_cast<std::size_t>(d)] = c;
    }
  }
  return t;
}

}  // namespace detail

// One representative per conjugacy class of subgroups of index 2..max_index,
// in canonical order (index, then lexicographic flattened table).  The
// representative emitted is the class-canonical table itself.
inline std::vector<SubgroupRecord> low_index_subgroups(
    Presentation const& p, int max_index, std::uint64_t node_budget = 50000000) {
  if (max_index < 2) throw Error("low_index_subgroups requires max_index >= 2");
  detail::LowIndexSearch search(p, max_index, node_budget);
  search.search();
  std::map<std::pair<int, std::vector<int>>, bool> canon;
  for (auto const& t : search.complete) {
    if (t.size < 2) continue;
    std::vector<int> best = detail::rerooted_flat(t, 0);
    for (int r = 1; r < t.size; ++r) {
      std::vector<int> alt = detail::rerooted_flat(t, r);
      if (alt < best) best = std::move(alt);
    }
    canon[{t.size, std::move(best)}] = true;
  }
  std::vector<SubgroupRecord> out;
  for (auto const& [key, unused] : canon) {
    (void)unused;
    out.push_back(make_subgroup_record(detail::table_from_flat(p, key.first, key.second)));
  }
  return out;
}

// Presentation simplification: drop generators declared trivial by a
// length-1 relator, erase their occurrences, reduce, repeat.  generator_map
// sends old indices to new ones (-1 = eliminated).
struct SimplifiedPresentation {
  Presentation presentation;
  std::vector<int> generator_map;
};

inline SimplifiedPresentation eliminate_trivial_generators(Presentation const& p) {
  int gens = p.generator_count();
  std::vector<bool> dead(static_cast<std::size_t>(gens), false);
  std::vector<Word> relators = p.relators;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto const& r : relators) {
      if (r.size() == 1 && !dead[static_cast<std::size_t>(letter_index(r.letters[0]))]) {
        dead[static_cast<std::size_t>(letter_index(r.letters[0]))] = true;
        changed = true;
      }
    }
    if (!changed) continue;
    for (auto& r : relators) {
      std::vector<int> kept;
      for (int L : r.letters) {
        if (!dead[static_cast<std::size_t>(letter_index(L))]) kept.push_back(L);
      }
      r = cyclically_reduce(Word(kept));
    }
  }
  SimplifiedPresentation out;
  out.generator_map.assign(static_cast<std::size_t>(gens), -1);
  std::vector<std::string> names;
  for (int g = 0; g < gens; ++g) {
    if (!dead[static_cast<std::size_t>(g)]) {
      out.generator_map[static_cast<std::size_t>(g)] = static_cast<int>(names.size());
      names.push_back(p.generators[static_cast<std::size_t>(g)].name);
    }
  }
  std::vector<std::vector<int>> new_relators;
  for (auto const& r : relators) {
    if (r.empty()) continue;
    std::vector<int> mapped;
    for (int L : r.letters) {
      int ng = out.generator_map[static_cast<std::size_t>(letter_index(L))];
      mapped.push_back(L > 0 ? generator_letter(ng) : -generator_letter(ng));
    }
    new_relators.push_back(mapped);
  }
  out.presentation = make_presentation(names, new_relators);
  return out;
}

}  // namespace haken
