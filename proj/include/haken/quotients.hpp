#pragma once

// Quotient detectors: exhaustive epimorphism search onto finite table groups,
// dihedral spectra, a complete decision procedure for infinite dihedral
// quotients, and finite-quotient fingerprints.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "haken/coset.hpp"
#include "haken/error.hpp"
#include "haken/finite_group.hpp"
#include "haken/homology.hpp"
#include "haken/int_matrix.hpp"
#include "haken/presentation.hpp"
#include "haken/word.hpp"

namespace haken {

// ---------------------------------------------------------------------------
// Isometries of the integers: t -> sign*t + translation.

struct AffineIsometry {
  int sign = 1;  // +1 translation, -1 reflection
  long translation = 0;

  friend bool operator==(AffineIsometry const&, AffineIsometry const&) = default;
};

// Carrier for evaluate_word; multiply(x, y) = x∘y with y applying first:
// (x∘y)(t) = sign_x*(sign_y*t + c_y) + c_x.
struct AffineGroup {
  using Element = AffineIsometry;

  Element identity() const { return {1, 0}; }
  Element multiply(Element const& x, Element const& y) const {
    return {x.sign * y.sign, x.sign * y.translation + x.translation};
  }
  Element invert(Element const& x) const {
    return {x.sign, -x.sign * x.translation};
  }
};

// ---------------------------------------------------------------------------
// Exhaustive epimorphism enumeration up to conjugacy in the target.

struct EpimorphismReport {
  // Canonical image tuples (lexicographically least conjugate), sorted.
  std::vector<std::vector<int>> classes;
  // kernel_ids[i] identifies the kernel of classes[i]; ids are 0-based in
  // order of first appearance. Distinct classes share an id exactly when
  // their kernels coincide as subgroups of the presented group.
  std::vector<int> kernel_ids;
  long kernel_count = 0;
};

namespace detail {

inline bool generates_whole(FiniteGroupModel const& T, std::vector<int> const& images) {
  std::vector<char> seen(static_cast<std::size_t>(T.order), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  long count = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int g : images) {
      int y = T.multiply(x, g);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == T.order;
}

inline std::vector<int> least_conjugate_tuple(FiniteGroupModel const& T,
                                              std::vector<int> const& images) {
  std::vector<int> best = images;
  std::vector<int> cand(images.size());
  for (int t = 0; t < T.order; ++t) {
    int tinv = T.invert(t);
    for (std::size_t i = 0; i < images.size(); ++i) {
      cand[i] = T.multiply(T.multiply(t, images[i]), tinv);
    }
    if (cand < best) best = cand;
  }
  return best;
}

}  // namespace detail

// All epimorphisms P ->> T up to conjugacy in T, by exhaustive search over
// image tuples. The budget caps the number of tuples examined; the search
// refuses to start when T.order^generators exceeds it.
inline EpimorphismReport enumerate_epimorphisms(Presentation const& P,
                                                FiniteGroupModel const& T,
                                                std::uint64_t budget = 10'000'000) {
  int g = P.generator_count();
  std::uint64_t tuples = 1;
  for (int i = 0; i < g; ++i) {
    if (tuples > budget / static_cast<std::uint64_t>(T.order)) {
      throw SearchBudgetExceeded(budget);
    }
    tuples *= static_cast<std::uint64_t>(T.order);
  }
  if (tuples > budget) throw SearchBudgetExceeded(budget);

  std::set<std::vector<int>> classes;
  std::vector<int> images(static_cast<std::size_t>(g), 0);
  for (std::uint64_t tick = 0; tick < tuples; ++tick) {
    std::uint64_t v = tick;
    for (int i = 0; i < g; ++i) {
      images[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<std::uint64_t>(T.order));
      v /= static_cast<std::uint64_t>(T.order);
    }
    bool ok = true;
    for (auto const& r : P.relators) {
      if (evaluate_word(T, r, images) != 0) {
        ok = false;
        break;
      }
    }
    if (!ok || !detail::generates_whole(T, images)) continue;
    classes.insert(detail::least_conjugate_tuple(T, images));
  }

  EpimorphismReport rep;
  rep.classes.assign(classes.begin(), classes.end());
  std::map<std::vector<std::vector<int>>, int> kernel_index;
  for (auto const& tuple : rep.classes) {
    SubgroupRecord rec = kernel_table(P, T, tuple);
    auto [it, fresh] =
        kernel_index.emplace(rec.table.action, static_cast<int>(kernel_index.size()));
    rep.kernel_ids.push_back(it->second);
    if (fresh) ++rep.kernel_count;
  }
  return rep;
}

// The set of k in 2..k_max such that P surjects the dihedral group of order 2k.
inline std::vector<long> dihedral_spectrum(Presentation const& P, long k_max,
                                           std::uint64_t budget = 10'000'000) {
  if (k_max < 2) throw Error("dihedral spectrum needs k_max >= 2");
  std::vector<long> ks;
  for (long k = 2; k <= k_max; ++k) {
    if (!enumerate_epimorphisms(P, dihedral(k), budget).classes.empty()) {
      ks.push_back(k);
    }
  }
  return ks;
}

// ---------------------------------------------------------------------------
// Complete decision: does the presented group surject the infinite dihedral
// group? Every candidate epimorphism sends generator i to an isometry
// (sign_i, c_i). The signs must kill every relator's sign product; given an
// admissible sign tuple the relators impose integer-linear conditions on the
// c_i, and the image is infinite precisely when the solution lattice is not
// confined to the "common fixed point" sublattice.

struct SignSystemRow {
  std::vector<int> signs;
  bool admissible = false;     // every relator has sign product +1
  bool has_reflection = false; // some generator maps to a reflection
  long kernel_rank = 0;        // rank of the translation solution lattice
  long fixed_rank = 0;         // rank of its finite-image sublattice
  bool infinite_image = false; // kernel_rank > fixed_rank
};

struct DoubleCoverRow {
  std::vector<int> signs;  // the index-2 subgroup as a sign epimorphism
  long b1 = 0;             // first Betti number of that subgroup
};

struct PairAssignmentRow {
  std::string assignment;  // e.g. "(x, xy)"
  bool relators_hold = false;
  bool infinite_image = false;
};

struct DInftyVerdict {
  bool positive = false;
  std::vector<AffineIsometry> certificate;  // per generator; empty if negative
  std::vector<SignSystemRow> sign_table;
  std::vector<DoubleCoverRow> double_covers;
  std::vector<PairAssignmentRow> pair_assignments;  // populated for 2 generators
};

// Soundness check used both internally and by consumers: relators evaluate to
// the identity, some image is a reflection, and the image group is infinite.
inline bool verify_dinfty_certificate(Presentation const& P,
                                      std::vector<AffineIsometry> const& images) {
  if (static_cast<int>(images.size()) != P.generator_count()) return false;
  AffineGroup A;
  for (auto const& r : P.relators) {
    if (!(evaluate_word(A, r, images) == A.identity())) return false;
  }
  bool reflection = false;
  bool infinite = false;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].sign == -1) reflection = true;
    if (images[i].sign == 1 && images[i].translation != 0) infinite = true;
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      if (images[i].sign == -1 && images[j].sign == -1 &&
          images[i].translation != images[j].translation) {
        infinite = true;
      }
    }
  }
  return reflection && infinite;
}

namespace detail {

// Coefficient row of the translation unknowns for one relator under a fixed
// sign tuple: the word r maps to a translation by sum_j prefix_sign * c-part.
inline std::vector<long> relator_translation_row(Word const& r,
                                                 std::vector<int> const& signs) {
  std::vector<long> row(signs.size(), 0);
  long prefix = 1;
  for (int L : r.letters) {
    std::size_t i = static_cast<std::size_t>(letter_index(L));
    // letter +g contributes c_i; letter -g is (sign_i, -sign_i c_i)
    long coeff = L > 0 ? 1 : -signs[i];
    row[i] += prefix * coeff;
    prefix *= signs[i];
  }
  return row;
}

// Functionals that cut out the finite-image (common fixed point) sublattice:
// all reflection centers equal, all pure translations zero.
inline std::vector<std::vector<long>> fixed_point_functionals(
    std::vector<int> const& signs) {
  std::vector<std::vector<long>> rows;
  int first_reflection = -1;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] == -1) {
      if (first_reflection < 0) {
        first_reflection = static_cast<int>(i);
      } else {
        std::vector<long> row(signs.size(), 0);
        row[static_cast<std::size_t>(first_reflection)] = -1;
        row[i] = 1;
        rows.push_back(std::move(row));
      }
    } else {
      std::vector<long> row(signs.size(), 0);
      row[i] = 1;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline IntMat rows_to_mat(std::vector<std::vector<long>> const& rows, int cols) {
  IntMat m(static_cast<int>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < cols; ++j) {
      m.at(static_cast<int>(i), j) = rows[i][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

}  // namespace detail

inline DInftyVerdict infinite_dihedral_decide(Presentation const& P) {
  int g = P.generator_count();
  DInftyVerdict verdict;

  for (unsigned mask = 0; mask < (1u << g); ++mask) {
    SignSystemRow row;
    row.signs.resize(static_cast<std::size_t>(g));
    for (int j = 0; j < g; ++j) {
      row.signs[static_cast<std::size_t>(j)] =
          (mask >> (g - 1 - j)) & 1u ? -1 : 1;
    }
    row.has_reflection =
        std::any_of(row.signs.begin(), row.signs.end(), [](int s) { return s < 0; });
    row.admissible = true;
    for (auto const& r : P.relators) {
      long prod = 1;
      for (int L : r.letters) prod *= row.signs[static_cast<std::size_t>(letter_index(L))];
      if (prod != 1) {
        row.admissible = false;
        break;
      }
    }
    if (row.admissible) {
      std::vector<std::vector<long>> sys;
      for (auto const& r : P.relators) {
        sys.push_back(detail::relator_translation_row(r, row.signs));
      }
      IntMat W = detail::rows_to_mat(sys, g);
      auto fixed = detail::fixed_point_functionals(row.signs);
      std::vector<std::vector<long>> stacked = sys;
      stacked.insert(stacked.end(), fixed.begin(), fixed.end());
      IntMat WF = detail::rows_to_mat(stacked, g);
      row.kernel_rank = g - smith_normal_form(W).rank;
      row.fixed_rank = g - smith_normal_form(WF).rank;
      row.infinite_image = row.kernel_rank > row.fixed_rank;

      if (row.infinite_image && row.has_reflection && verdict.certificate.empty()) {
        // lex-smallest primitivized Hermite basis row outside the fixed-point
        // sublattice
        IntMat basis = hermite_normal_form(kernel_basis(W));
        std::optional<std::vector<mpz_class>> best;
        for (int i = 0; i < basis.rows; ++i) {
          auto cand = primitivize(matrix_row(basis, i));
          bool outside = false;
          for (auto const& f : fixed) {
            mpz_class dot = 0;
            for (int j = 0; j < g; ++j) {
              dot += f[static_cast<std::size_t>(j)] * cand[static_cast<std::size_t>(j)];
            }
            if (dot != 0) outside = true;
          }
          if (outside && (!best || lex_compare(cand, *best) < 0)) best = cand;
        }
        for (int j = 0; j < g; ++j) {
          verdict.certificate.push_back(
              {row.signs[static_cast<std::size_t>(j)],
               static_cast<long>((*best)[static_cast<std::size_t>(j)].get_si())});
        }
        verdict.positive = true;
      }
    }
    verdict.sign_table.push_back(std::move(row));
  }

  // Evidence: first Betti number of every index-2 subgroup (double covers).
  PermGroup S2{2};
  auto flip = perm_from_cycles(2, {{1, 2}});
  for (unsigned mask = 1; mask < (1u << g); ++mask) {
    std::vector<PermGroup::Element> images;
    std::vector<int> signs(static_cast<std::size_t>(g));
    for (int j = 0; j < g; ++j) {
      bool hit = (mask >> (g - 1 - j)) & 1u;
      signs[static_cast<std::size_t>(j)] = hit ? -1 : 1;
      images.push_back(hit ? flip : S2.identity());
    }
    bool hom = true;
    for (auto const& r : P.relators) {
      if (evaluate_word(S2, r, images) != S2.identity()) hom = false;
    }
    if (!hom) continue;
    SubgroupRecord rec = kernel_table(P, S2, images);
    DoubleCoverRow dc;
    dc.signs = signs;
    dc.b1 = abelianization(reidemeister_schreier(rec)).rank;
    verdict.double_covers.push_back(std::move(dc));
  }

  // Evidence for 2-generator inputs: the four explicit assignments built from
  // x: t -> -t and y: t -> -t + 1.
  if (g == 2) {
    AffineGroup A;
    AffineIsometry x{-1, 0}, y{-1, 1};
    AffineIsometry xy = A.multiply(x, y);
    std::vector<std::pair<std::string, std::vector<AffineIsometry>>> attempts{
        {"(x, y)", {x, y}},
        {"(x, xy)", {x, xy}},
        {"(xy, x)", {xy, x}},
        {"(y, x)", {y, x}}};
    for (auto const& [label, images] : attempts) {
      PairAssignmentRow pr;
      pr.assignment = label;
      pr.relators_hold = true;
      for (auto const& r : P.relators) {
        if (!(evaluate_word(A, r, images) == A.identity())) pr.relators_hold = false;
      }
      pr.infinite_image = pr.relators_hold && verify_dinfty_certificate(P, images);
      verdict.pair_assignments.push_back(std::move(pr));
    }
  }

  return verdict;
}

// ---------------------------------------------------------------------------
// Finite-quotient fingerprints.

struct QuotientFingerprint {
  long order_bound = 0;
  // (target name, epimorphism classes up to conjugacy, distinct kernels)
  std::vector<std::tuple<std::string, long, long>> counts;
  std::string canonical;  // canonical serialization of the counts
  std::uint64_t hash = 0;

  friend bool operator==(QuotientFingerprint const& a, QuotientFingerprint const& b) {
    return a.order_bound == b.order_bound && a.counts == b.counts;
  }
};

// Probe targets for a fingerprint: every group of order <= min(bound, 15),
// then the larger built-in models (pairwise non-isomorphic) up to the bound.
inline std::vector<FiniteGroupModel> fingerprint_targets(int order_bound) {
  if (order_bound < 2) throw Error("fingerprint order bound must be >= 2");
  if (order_bound > 336) throw Error("order bound exceeds the built-in target library");
  std::vector<FiniteGroupModel> targets = catalog_up_to(std::min(order_bound, 15));
  std::vector<FiniteGroupModel> extras;
  if (order_bound >= 24) {
    extras.push_back(sym(4));
    extras.push_back(sl2_model(3));
  }
  if (order_bound >= 60) extras.push_back(alt(5));
  if (order_bound >= 120) extras.push_back(sl2_model(5));
  if (order_bound >= 168) extras.push_back(psl2_model(7));
  if (order_bound >= 336) extras.push_back(sl2_model(7));
  std::sort(extras.begin(), extras.end(),
            [](FiniteGroupModel const& a, FiniteGroupModel const& b) {
              return std::tie(a.order, a.name) < std::tie(b.order, b.name);
            });
  targets.insert(targets.end(), std::make_move_iterator(extras.begin()),
                 std::make_move_iterator(extras.end()));
  return targets;
}

inline QuotientFingerprint quotient_fingerprint(Presentation const& P, int order_bound,
                                                std::uint64_t budget = 10'000'000) {
  QuotientFingerprint fp;
  fp.order_bound = order_bound;
  for (auto const& T : fingerprint_targets(order_bound)) {
    EpimorphismReport rep = enumerate_epimorphisms(P, T, budget);
    fp.counts.emplace_back(T.name, static_cast<long>(rep.classes.size()),
                           rep.kernel_count);
  }
  fp.canonical = "[";
  for (std::size_t i = 0; i < fp.counts.size(); ++i) {
    auto const& [name, classes, kernels] = fp.counts[i];
    if (i) fp.canonical += ",";
    fp.canonical += "[\"" + name + "\"," + std::to_string(classes) + "," +
                    std::to_string(kernels) + "]";
  }
  fp.canonical += "]";
  fp.hash = 14695981039346656037ull;
  for (unsigned char c : fp.canonical) {
    fp.hash ^= c;
    fp.hash *= 1099511628211ull;
  }
  return fp;
}

}  // namespace haken
