#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "haken/coset.hpp"
#include "haken/error.hpp"
#include "haken/int_matrix.hpp"
#include "haken/presentation.hpp"
#include "haken/word.hpp"

namespace haken {

inline std::vector<mpz_class> word_exponents(int generator_count, Word const& w) {
  std::vector<mpz_class> e(static_cast<std::size_t>(generator_count), 0);
  for (int L : w.letters) {
    e[static_cast<std::size_t>(letter_index(L))] += (L > 0 ? 1 : -1);
  }
  return e;
}

// Relator exponent-sum matrix, one row per relator.
inline IntMat exponent_matrix(Presentation const& p) {
  IntMat A(static_cast<long>(p.relators.size()), p.generator_count());
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    auto e = word_exponents(p.generator_count(), p.relators[i]);
    for (int j = 0; j < p.generator_count(); ++j) {
      A.at(static_cast<long>(i), j) = e[static_cast<std::size_t>(j)];
    }
  }
  return A;
}

// First homology of a presentation.  With A = U S V the Smith decomposition
// of the exponent matrix, free_basis_change = V^-1: a generator-coordinate
// row vector e has class coordinates e * V^-1, whose first (matrix rank)
// entries are torsion coordinates and whose trailing `rank` entries are the
// free part in the chosen basis.
struct H1Summary {
  long rank = 0;                    // b1: free rank of H1
  std::vector<mpz_class> torsion;   // invariant factors > 1, each dividing the next
  IntMat free_basis_change;         // unimodular g x g change of coordinates
  IntMat exponent;                  // relator exponent-sum matrix
  SNFResult snf;                    // Smith data of `exponent`

  long generator_count() const { return exponent.cols; }
  long matrix_rank() const { return snf.rank; }

  // g x rank: trailing columns of free_basis_change (projection to the free part).
  IntMat free_block() const {
    IntMat B(exponent.cols, rank);
    for (long i = 0; i < exponent.cols; ++i) {
      for (long j = 0; j < rank; ++j) {
        B.at(i, j) = free_basis_change.at(i, snf.rank + j);
      }
    }
    return B;
  }

  // rank x g section: free-coordinate rows back to generator coordinates
  // (right inverse of free_block: section * free_block = identity).
  IntMat section() const {
    IntMat P(rank, exponent.cols);
    for (long i = 0; i < rank; ++i) {
      for (long j = 0; j < exponent.cols; ++j) {
        P.at(i, j) = snf.V.at(snf.rank + i, j);
      }
    }
    return P;
  }

  std::vector<mpz_class> free_coordinates(std::vector<mpz_class> const& gen_coords) const {
    if (static_cast<long>(gen_coords.size()) != exponent.cols) {
      throw DimensionMismatch("free_coordinates: expected one entry per generator");
    }
    std::vector<mpz_class> out(static_cast<std::size_t>(rank), 0);
    for (long j = 0; j < rank; ++j) {
      for (long i = 0; i < exponent.cols; ++i) {
        out[static_cast<std::size_t>(j)] +=
            gen_coords[static_cast<std::size_t>(i)] * free_basis_change.at(i, snf.rank + j);
      }
    }
    return out;
  }
};

inline H1Summary abelianization(Presentation const& p) {
  H1Summary s;
  s.exponent = exponent_matrix(p);
  s.snf = smith_normal_form(s.exponent);
  s.rank = s.exponent.cols - s.snf.rank;
  for (auto const& d : s.snf.divisors) {
    if (d > 1) s.torsion.push_back(d);
  }
  s.free_basis_change = s.snf.Vinv;
  return s;
}

// First Betti number alone.  Goes through the fraction-free rank rather than
// a full Smith reduction, so it stays cheap on the large relation matrices of
// finite-index covers.
inline long b1(Presentation const& p) {
  IntMat A = exponent_matrix(p);
  return A.cols - rank(A);
}

// dim H1 tensor F_p = (generators) - rank_p(exponent matrix).
inline long h1_mod_p(Presentation const& p, long prime) {
  IntMat A = exponent_matrix(p);
  return A.cols - rank_mod_p(A, prime);
}

// Conjugation action of deck representatives on the free part of H1 of a
// normal finite-index subgroup.  The matrix M for representative t acts on
// free-coordinate row vectors by v -> v * M; equivalently M^T acts on column
// vectors.  Conjugation by subgroup elements is trivial on H1, so the choice
// of coset representative does not matter.
struct DeckAction {
  SubgroupRecord const* record = nullptr;
  H1Summary cover_h1;
  std::vector<IntMat> matrices;  // one per requested representative
};

inline DeckAction deck_action_matrices(SubgroupRecord const& rec,
                                       std::vector<Word> const& deck_reps) {
  if (!rec.normal) throw NotNormal();
  SchreierData sd = schreier_data(rec);
  DeckAction out;
  out.record = &rec;
  out.cover_h1 = abelianization(sd.presentation);
  long k = out.cover_h1.generator_count();
  IntMat B = out.cover_h1.free_block();
  IntMat P = out.cover_h1.section();
  for (auto const& t : deck_reps) {
    IntMat C(k, k);
    for (long i = 0; i < k; ++i) {
      Word image = conjugation_rewrite(
          rec, sd, t, Word({generator_letter(static_cast<int>(i))}));
      auto e = word_exponents(static_cast<int>(k), image);
      for (long j = 0; j < k; ++j) {
        C.at(i, j) = e[static_cast<std::size_t>(j)];
      }
    }
    out.matrices.push_back(mul(P, mul(C, B)));
  }
  return out;
}

// A nonzero primitive vector v with M_i^T v = signs[i] * v for every supplied
// matrix (equivalently v * M_i = signs[i] * v on row vectors).
struct SignFixedClass {
  std::vector<mpz_class> vector;
  std::vector<int> signs;  // entries +1 / -1, one per matrix
};

struct SignFixedEntry {
  std::vector<int> signs;
  long fixed_rank = 0;  // rank of the common eigenspace lattice
};

namespace detail {

inline void check_square_same(std::vector<IntMat> const& mats) {
  if (mats.empty()) throw DimensionMismatch("sign-fixed search needs at least one matrix");
  long d = mats.front().rows;
  for (auto const& m : mats) {
    if (m.rows != d || m.cols != d) {
      throw DimensionMismatch("sign-fixed search needs square matrices of equal size");
    }
  }
}

// Stacked (M_i^T - eps_i I), whose right kernel is the common eigenspace.
inline IntMat sign_stack(std::vector<IntMat> const& mats, std::vector<int> const& signs) {
  long d = mats.front().rows;
  long k = static_cast<long>(mats.size());
  IntMat S(k * d, d);
  for (long m = 0; m < k; ++m) {
    for (long i = 0; i < d; ++i) {
      for (long j = 0; j < d; ++j) {
        S.at(m * d + i, j) = mats[static_cast<std::size_t>(m)].at(j, i);
      }
      S.at(m * d + i, i) -= signs[static_cast<std::size_t>(m)];
    }
  }
  return S;
}

inline std::vector<int> signs_for_mask(std::size_t k, std::uint64_t mask) {
  std::vector<int> signs(k);
  for (std::size_t j = 0; j < k; ++j) {
    signs[j] = (mask >> (k - 1 - j)) & 1u ? -1 : +1;
  }
  return signs;
}

}  // namespace detail

// Every sign tuple with the rank of its fixed lattice, in lexicographic
// order (+1 before -1).  No consistency pruning is needed: a common
// eigenvector can only carry a sign assignment that is multiplicative on the
// subgroup generated by the matrices, because the signs are determined by
// the matrices' action on the vector itself.
inline std::vector<SignFixedEntry> sign_fixed_table(std::vector<IntMat> const& mats) {
  detail::check_square_same(mats);
  std::size_t k = mats.size();
  std::vector<SignFixedEntry> table;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    SignFixedEntry e;
    e.signs = detail::signs_for_mask(k, mask);
    if (mats.front().rows == 0) {
      e.fixed_rank = 0;
    } else {
      e.fixed_rank = kernel_basis(detail::sign_stack(mats, e.signs)).rows;
    }
    table.push_back(std::move(e));
  }
  return table;
}

// Deterministic certificate: the lexicographically first sign tuple (+1
// before -1) whose fixed lattice is nonzero, with the lex-smallest row of the
// Hermite basis of that lattice (saturated, so every Hermite row is
// primitive).  Empty optional = no tuple admits a nonzero vector.
inline std::optional<SignFixedClass> sign_fixed_class(std::vector<IntMat> const& mats) {
  detail::check_square_same(mats);
  if (mats.front().rows == 0) return std::nullopt;
  std::size_t k = mats.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<int> signs = detail::signs_for_mask(k, mask);
    IntMat kernel = kernel_basis(detail::sign_stack(mats, signs));
    if (kernel.rows == 0) continue;
    IntMat h = hermite_normal_form(kernel);
    long best = 0;
    for (long r = 1; r < h.rows; ++r) {
      if (lex_compare(matrix_row(h, r), matrix_row(h, best)) < 0) best = r;
    }
    SignFixedClass cls;
    cls.vector = primitivize(matrix_row(h, best));
    cls.signs = std::move(signs);
    return cls;
  }
  return std::nullopt;
}

// Full sign-fixed-certificate pipeline for one epimorphism: build the kernel
// cover, act by the ambient generators (their cosets generate the deck
// group), and search for a sign-fixed class.
struct PropertyHReport {
  bool found = false;
  SignFixedClass certificate;       // meaningful when found
  bool all_plus_one = false;        // certificate signs all +1 (transfer case)
  std::string note;                 // consistency note for the transfer case
  SubgroupRecord cover;
  long cover_b1 = 0;
  std::vector<SignFixedEntry> sign_table;
};

template <GroupCarrier C>
PropertyHReport property_h_certificate(Presentation const& p, C const& G,
                                       std::vector<typename C::Element> const& images) {
  PropertyHReport rep;
  rep.cover = kernel_table(p, G, images);
  std::vector<Word> reps;
  for (int g = 0; g < p.generator_count(); ++g) {
    reps.push_back(Word({generator_letter(g)}));
  }
  DeckAction deck = deck_action_matrices(rep.cover, reps);
  rep.cover_b1 = deck.cover_h1.rank;
  if (rep.cover_b1 == 0) return rep;
  rep.sign_table = sign_fixed_table(deck.matrices);
  auto cls = sign_fixed_class(deck.matrices);
  if (!cls) return rep;
  rep.found = true;
  rep.certificate = *cls;
  rep.all_plus_one = true;
  for (int s : rep.certificate.signs) {
    if (s != +1) rep.all_plus_one = false;
  }
  if (rep.all_plus_one) {
    rep.note =
        "all deck signs +1: the class comes from the base through transfer, "
        "so the base group cannot have first Betti number zero";
  }
  return rep;
}

// Betti-number gap checks for regular covers of homology-sphere-like groups:
// in integral mode no cover may have b1 in {1,2,3}; in mod-2 mode no cover
// may have b1 = 1.
enum class GapMode { integral, mod2 };
enum class GapVerdict { pass, violation };

struct BettiGapReport {
  GapVerdict verdict = GapVerdict::pass;
  std::vector<long> cover_b1;
  int offending = -1;  // index into `covers` of the first violation
};

inline BettiGapReport betti_gap_check(Presentation const& p,
                                      std::vector<SubgroupRecord> const& covers,
                                      GapMode mode) {
  if (mode == GapMode::integral) {
    H1Summary s = abelianization(p);
    if (s.rank != 0 || !s.torsion.empty()) {
      throw HypothesisFailed("integral Betti gap requires trivial H1 of the base");
    }
  } else {
    if (h1_mod_p(p, 2) != 0) {
      throw HypothesisFailed("mod-2 Betti gap requires trivial H1 tensor F_2 of the base");
    }
  }
  BettiGapReport rep;
  for (std::size_t i = 0; i < covers.size(); ++i) {
    if (!(covers[i].table.base == p)) {
      throw Error("betti_gap_check: cover does not belong to the given presentation");
    }
    if (!covers[i].normal) {
      throw HypothesisFailed("Betti gap statements apply to regular covers only");
    }
    long b = b1(reidemeister_schreier(covers[i]));
    rep.cover_b1.push_back(b);
    bool bad = mode == GapMode::integral ? (b >= 1 && b <= 3) : (b == 1);
    if (bad && rep.verdict == GapVerdict::pass) {
      rep.verdict = GapVerdict::violation;
      rep.offending = static_cast<int>(i);
    }
  }
  return rep;
}

}  // namespace haken
