#pragma once

// Character counting over finite fields: exhaustive enumeration of SL2(F_q)
// representation tuples of a presentation, identified either by their trace
// tuples (cheap, field-extension monotone) or by exact conjugation orbits
// (small q).  A growth probe compares tuple counts along the extension tower
// F_p < F_{p^2} < ... as heuristic evidence for a positive-dimensional
// character variety; its verdicts are labeled heuristic and never feed a
// certificate.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "haken/error.hpp"
#include "haken/finite_field.hpp"
#include "haken/presentation.hpp"
#include "haken/word.hpp"

namespace haken {

struct CharacterCount {
  long q = 0;            // field size p^k
  long tuple_count = 0;  // distinct trace tuples over all representations
  std::optional<long> orbit_count;  // exact conjugation orbits, on request
};

inline constexpr std::uint64_t default_charcount_budget = 100'000'000;

namespace detail {

// Trace tuples: (tr a) for one generator, (tr a, tr b, tr ab) for two,
// (tr a, tr b, tr c, tr ab, tr ac, tr bc, tr abc) for three; unused slots
// stay -1 (field elements encode as non-negative integers).
using TraceKey = std::array<long, 7>;

inline Mat2 field_identity(FiniteField const& F) {
  return Mat2{F.one(), F.zero(), F.zero(), F.one()};
}

inline Mat2 evaluate_word_matrix(FiniteField const& F, Word const& w,
                                 std::array<Mat2, 3> const& gens,
                                 std::array<Mat2, 3> const& invs) {
  Mat2 acc = field_identity(F);
  for (int L : w.letters) {
    acc = mat_mul(F, acc,
                  L > 0 ? gens[static_cast<std::size_t>(letter_index(L))]
                        : invs[static_cast<std::size_t>(letter_index(L))]);
  }
  return acc;
}

inline TraceKey trace_key(FiniteField const& F, int g,
                          std::array<Mat2, 3> const& m) {
  TraceKey key;
  key.fill(-1);
  if (g >= 1) key[0] = mat_trace(F, m[0]);
  if (g >= 2) key[1] = mat_trace(F, m[1]);
  if (g == 2) key[2] = mat_trace(F, mat_mul(F, m[0], m[1]));
  if (g == 3) {
    key[2] = mat_trace(F, m[2]);
    Mat2 const ab = mat_mul(F, m[0], m[1]);
    key[3] = mat_trace(F, ab);
    key[4] = mat_trace(F, mat_mul(F, m[0], m[2]));
    key[5] = mat_trace(F, mat_mul(F, m[1], m[2]));
    key[6] = mat_trace(F, mat_mul(F, ab, m[2]));
  }
  return key;
}

struct ScanResult {
  std::set<TraceKey> tuples;
  std::vector<std::array<int, 3>> reps;
};

// Scans all generator-image tuples whose first image index lies in [lo, hi);
// the partition by first image is also the parallel split.
inline void scan_tuples(Presentation const& p, FiniteField const& F,
                        std::vector<Mat2> const& sl2,
                        std::vector<Mat2> const& sl2_inv, long lo, long hi,
                        bool keep_reps, ScanResult& out) {
  int const g = p.generator_count();
  long const n = static_cast<long>(sl2.size());
  long inner = 1;
  for (int i = 1; i < g; ++i) inner *= n;
  Mat2 const id = field_identity(F);
  std::array<Mat2, 3> mats{id, id, id};
  std::array<Mat2, 3> invs{id, id, id};
  std::array<int, 3> idx{0, 0, 0};
  for (long first = lo; first < hi; ++first) {
    if (g >= 1) {
      idx[0] = static_cast<int>(first);
      mats[0] = sl2[static_cast<std::size_t>(first)];
      invs[0] = sl2_inv[static_cast<std::size_t>(first)];
    }
    for (long rest = 0; rest < inner; ++rest) {
      long code = rest;
      for (int i = 1; i < g; ++i) {
        idx[static_cast<std::size_t>(i)] = static_cast<int>(code % n);
        mats[static_cast<std::size_t>(i)] =
            sl2[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        invs[static_cast<std::size_t>(i)] =
            sl2_inv[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        code /= n;
      }
      bool hom = true;
      for (Word const& r : p.relators) {
        if (!(evaluate_word_matrix(F, r, mats, invs) == id)) {
          hom = false;
          break;
        }
      }
      if (!hom) continue;
      out.tuples.insert(trace_key(F, g, mats));
      if (keep_reps) out.reps.push_back(idx);
    }
  }
}

// Exact simultaneous-conjugation orbits via lexicographically minimal
// conjugate tuples.
inline long orbit_count_of(FiniteField const& F, std::vector<Mat2> const& sl2,
                           std::vector<Mat2> const& sl2_inv,
                           std::vector<std::array<int, 3>> const& reps,
                           int g) {
  std::map<Mat2, int> index;
  for (std::size_t i = 0; i < sl2.size(); ++i) {
    index.emplace(sl2[i], static_cast<int>(i));
  }
  std::set<std::array<int, 3>> canonical;
  for (auto const& rep : reps) {
    std::array<int, 3> best{};
    bool have = false;
    for (std::size_t h = 0; h < sl2.size(); ++h) {
      std::array<int, 3> cand{-1, -1, -1};
      for (int i = 0; i < g; ++i) {
        Mat2 const c = mat_mul(
            F, mat_mul(F, sl2[h], sl2[static_cast<std::size_t>(rep[static_cast<std::size_t>(i)])]),
            sl2_inv[h]);
        cand[static_cast<std::size_t>(i)] = index.at(c);
      }
      if (!have || cand < best) {
        best = cand;
        have = true;
      }
    }
    canonical.insert(best);
  }
  return static_cast<long>(canonical.size());
}

}  // namespace detail

// Exhaustive count over all SL2(F_q)-representation tuples.  The budget caps
// |SL2(q)|^generators (and, when orbits are requested, representations times
// group order); `threads` splits the scan by the first generator's image.
inline CharacterCount count_characters_fq(
    Presentation const& p, FiniteField const& F, bool want_orbits = false,
    std::uint64_t budget = default_charcount_budget, int threads = 1) {
  int const g = p.generator_count();
  if (g > 3) throw UnsupportedGeneratorCount(g, 3);
  std::vector<Mat2> const sl2 = sl2_elements(F);
  long const n = static_cast<long>(sl2.size());
  __int128 total = 1;
  for (int i = 0; i < g; ++i) {
    total *= n;
    if (total > static_cast<__int128>(budget)) {
      throw SearchBudgetExceeded(budget);
    }
  }
  std::vector<Mat2> sl2_inv;
  sl2_inv.reserve(sl2.size());
  for (Mat2 const& m : sl2) sl2_inv.push_back(mat_inv_det1(F, m));

  long const outer = g == 0 ? 1 : n;
  int const nt = static_cast<int>(
      std::max(1L, std::min<long>(static_cast<long>(threads), outer)));
  std::vector<detail::ScanResult> parts(static_cast<std::size_t>(nt));
  if (nt == 1) {
    detail::scan_tuples(p, F, sl2, sl2_inv, 0, outer, want_orbits, parts[0]);
  } else {
    std::vector<std::thread> pool;
    long const chunk = (outer + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
      long const lo = static_cast<long>(t) * chunk;
      long const hi = std::min(outer, lo + chunk);
      if (lo >= hi) continue;
      pool.emplace_back([&p, &F, &sl2, &sl2_inv, &parts, lo, hi, want_orbits,
                         t] {
        detail::scan_tuples(p, F, sl2, sl2_inv, lo, hi, want_orbits,
                            parts[static_cast<std::size_t>(t)]);
      });
    }
    for (std::thread& th : pool) th.join();
  }
  detail::ScanResult all;
  for (detail::ScanResult& part : parts) {
    all.tuples.merge(part.tuples);
    all.reps.insert(all.reps.end(), part.reps.begin(), part.reps.end());
  }
  CharacterCount out;
  out.q = F.q;
  out.tuple_count = static_cast<long>(all.tuples.size());
  if (want_orbits) {
    if (static_cast<__int128>(all.reps.size()) * n >
        static_cast<__int128>(budget)) {
      throw SearchBudgetExceeded(budget);
    }
    out.orbit_count = detail::orbit_count_of(F, sl2, sl2_inv, all.reps, g);
  }
  return out;
}

inline CharacterCount count_characters_fq(
    Presentation const& p, long prime, int k, bool want_orbits = false,
    std::uint64_t budget = default_charcount_budget, int threads = 1) {
  return count_characters_fq(p, FiniteField::make(prime, k), want_orbits,
                             budget, threads);
}

enum class GrowthVerdict {
  positive_dimensional_likely,
  zero_dimensional_likely,
  undetermined,
};

inline char const* to_string(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::positive_dimensional_likely:
      return "POSITIVE-DIMENSIONAL-LIKELY";
    case GrowthVerdict::zero_dimensional_likely:
      return "ZERO-DIMENSIONAL-LIKELY";
    case GrowthVerdict::undetermined:
      return "UNDETERMINED";
  }
  return "UNDETERMINED";
}

struct GrowthProbe {
  long prime = 0;
  std::vector<CharacterCount> levels;  // k = 1 .. k_max
  GrowthVerdict verdict = GrowthVerdict::undetermined;
  // Point-count growth is evidence, not proof: the verdict never feeds a
  // certificate, and serialized output repeats this flag.
  bool heuristic = true;
};

// Tuple counts along F_{p^k}, k = 1..k_max.  POSITIVE-DIMENSIONAL-LIKELY
// when the counts grow strictly and keep at least half of proportional
// growth in q; ZERO-DIMENSIONAL-LIKELY when they stabilize at the base
// count; UNDETERMINED otherwise.
inline GrowthProbe curve_growth_probe(
    Presentation const& p, long prime, int k_max,
    std::uint64_t budget = default_charcount_budget, int threads = 1) {
  if (k_max < 1) throw Error("curve_growth_probe: k_max must be at least 1");
  GrowthProbe out;
  out.prime = prime;
  for (int k = 1; k <= k_max; ++k) {
    out.levels.push_back(
        count_characters_fq(p, prime, k, false, budget, threads));
  }
  long const n1 = out.levels.front().tuple_count;
  long const q1 = out.levels.front().q;
  bool all_equal = true;
  bool strictly_increasing = true;
  bool linear_ok = true;
  for (std::size_t i = 1; i < out.levels.size(); ++i) {
    long const nk = out.levels[i].tuple_count;
    long const qk = out.levels[i].q;
    if (nk != n1) all_equal = false;
    if (nk <= out.levels[i - 1].tuple_count) strictly_increasing = false;
    if (static_cast<__int128>(2) * nk * q1 < static_cast<__int128>(qk) * n1) {
      linear_ok = false;
    }
  }
  if (all_equal) {
    out.verdict = GrowthVerdict::zero_dimensional_likely;
  } else if (strictly_increasing && linear_ok) {
    out.verdict = GrowthVerdict::positive_dimensional_likely;
  } else {
    out.verdict = GrowthVerdict::undetermined;
  }
  return out;
}

}  // namespace haken
