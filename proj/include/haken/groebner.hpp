#pragma once

// Buchberger's algorithm over the trace coordinates, with integer arithmetic
// throughout: S-polynomials use coefficient lcms and reduction is pseudo-
// division followed by taking primitive parts, so the computed basis is a
// Groebner basis of the ideal over Q with denominators cleared.  The only
// monomial order offered is graded reverse lexicographic with x > y > z; the
// Krull dimension read off the leading-term ideal is order-independent.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "haken/error.hpp"
#include "haken/trace_poly.hpp"

namespace haken {

namespace detail {

inline bool monomial_divides(Monomial const& a, Monomial const& b) {
  return a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2];
}

inline Monomial monomial_quotient(Monomial const& num, Monomial const& den) {
  return {num[0] - den[0], num[1] - den[1], num[2] - den[2]};
}

inline Monomial monomial_lcm(Monomial const& a, Monomial const& b) {
  return {std::max(a[0], b[0]), std::max(a[1], b[1]), std::max(a[2], b[2])};
}

inline TracePolynomial monomial_multiple(TracePolynomial const& f,
                                         Monomial const& m,
                                         mpz_class const& c) {
  TracePolynomial r;
  for (auto const& [mf, cf] : f.terms) {
    r.terms.emplace(Monomial{mf[0] + m[0], mf[1] + m[1], mf[2] + m[2]},
                    cf * c);
  }
  return r;
}

// Fraction-free remainder of h modulo the set B: repeatedly cancels the
// leading term against any basis element whose leading monomial divides it,
// scaling the work polynomial (and the remainder gathered so far) by the
// cofactor, then returns the primitive part.  The result is zero exactly
// when h lies in the ideal generated by B over Q -- provided B is a Groebner
// basis; during basis construction it is just some remainder.
inline TracePolynomial pseudo_remainder(TracePolynomial h,
                                        std::vector<TracePolynomial> const& B) {
  TracePolynomial rem;
  while (!h.is_zero()) {
    Monomial const lm = h.leading_monomial();
    TracePolynomial const* reducer = nullptr;
    for (auto const& b : B) {
      if (!b.is_zero() && monomial_divides(b.leading_monomial(), lm)) {
        reducer = &b;
        break;
      }
    }
    if (reducer == nullptr) {
      // leading term is irreducible: move it to the remainder
      auto it = h.terms.begin();
      rem.terms.emplace(it->first, it->second);
      h.terms.erase(it);
      continue;
    }
    mpz_class const& ch = h.leading_coefficient();
    mpz_class const& cb = reducer->leading_coefficient();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), ch.get_mpz_t(), cb.get_mpz_t());
    mpz_class scale = cb / g;   // multiply h and rem through by this
    mpz_class factor = ch / g;  // multiple of the reducer to subtract
    if (scale != 1) {
      for (auto& [m, c] : h.terms) c *= scale;
      for (auto& [m, c] : rem.terms) c *= scale;
    }
    h -= monomial_multiple(*reducer, monomial_quotient(lm, reducer->leading_monomial()),
                           factor);
  }
  rem.primitivize();
  return rem;
}

// Integer S-polynomial: cancel the leading terms over the lcm monomial using
// the coefficient lcm, then primitivize.
inline TracePolynomial s_polynomial(TracePolynomial const& f,
                                    TracePolynomial const& g) {
  Monomial const lcm = monomial_lcm(f.leading_monomial(), g.leading_monomial());
  mpz_class const& cf = f.leading_coefficient();
  mpz_class const& cg = g.leading_coefficient();
  mpz_class d;
  mpz_gcd(d.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  TracePolynomial s =
      monomial_multiple(f, monomial_quotient(lcm, f.leading_monomial()), cg / d) -
      monomial_multiple(g, monomial_quotient(lcm, g.leading_monomial()), cf / d);
  s.primitivize();
  return s;
}

}  // namespace detail

struct GroebnerBasis {
  // Fixed order tag; recorded for serialization and cross-checking.
  std::string monomial_order = "grevlex x>y>z";
  // Reduced basis: primitive integer polynomials, positive leading
  // coefficients, no leading monomial divides a term of another element,
  // sorted with the largest leading monomial first.
  std::vector<TracePolynomial> polys;
};

inline std::uint64_t constexpr default_basis_budget = 10000;

// Buchberger with the coprimality criterion and smallest-lcm pair selection.
// The budget caps the number of S-polynomial reductions attempted.
inline GroebnerBasis groebner_basis(TraceIdeal const& ideal,
                                    std::uint64_t budget = default_basis_budget) {
  std::vector<TracePolynomial> basis;
  for (TracePolynomial g : ideal.generators) {
    if (g.is_zero()) continue;
    g.primitivize();
    if (std::find(basis.begin(), basis.end(), g) == basis.end()) {
      basis.push_back(std::move(g));
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);
  }
  GrevlexGreater greater;
  std::uint64_t reductions = 0;
  while (!pairs.empty()) {
    // normal selection: the pair with the smallest lcm monomial
    std::size_t best = 0;
    Monomial best_lcm = detail::monomial_lcm(
        basis[pairs[0].first].leading_monomial(),
        basis[pairs[0].second].leading_monomial());
    for (std::size_t t = 1; t < pairs.size(); ++t) {
      Monomial l = detail::monomial_lcm(basis[pairs[t].first].leading_monomial(),
                                        basis[pairs[t].second].leading_monomial());
      if (greater(best_lcm, l)) {
        best = t;
        best_lcm = l;
      }
    }
    auto [i, j] = pairs[best];
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
    Monomial const mi = basis[i].leading_monomial();
    Monomial const mj = basis[j].leading_monomial();
    if (best_lcm == Monomial{mi[0] + mj[0], mi[1] + mj[1], mi[2] + mj[2]}) {
      continue;  // coprime leading monomials: S-polynomial reduces to zero
    }
    if (++reductions > budget) throw BasisBudgetExceeded(budget);
    TracePolynomial r =
        detail::pseudo_remainder(detail::s_polynomial(basis[i], basis[j]), basis);
    if (r.is_zero()) continue;
    basis.push_back(std::move(r));
    for (std::size_t t = 0; t + 1 < basis.size(); ++t) {
      pairs.emplace_back(t, basis.size() - 1);
    }
  }

  // minimalize: drop elements whose leading monomial another element divides
  std::vector<bool> dropped(basis.size(), false);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size() && !dropped[i]; ++j) {
      if (i == j || dropped[j]) continue;
      if (detail::monomial_divides(basis[j].leading_monomial(),
                                   basis[i].leading_monomial()) &&
          !(basis[i].leading_monomial() == basis[j].leading_monomial() && j > i)) {
        dropped[i] = true;
      }
    }
  }
  std::vector<TracePolynomial> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!dropped[i]) minimal.push_back(basis[i]);
  }

  // inter-reduce tails until stable
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
      std::vector<TracePolynomial> others;
      for (std::size_t j = 0; j < minimal.size(); ++j) {
        if (j != i) others.push_back(minimal[j]);
      }
      TracePolynomial r = detail::pseudo_remainder(minimal[i], others);
      if (!(r == minimal[i])) {
        minimal[i] = std::move(r);
        changed = true;
      }
    }
  }

  std::sort(minimal.begin(), minimal.end(),
            [&greater](TracePolynomial const& a, TracePolynomial const& b) {
              return greater(a.leading_monomial(), b.leading_monomial());
            });
  GroebnerBasis out;
  out.polys = std::move(minimal);
  return out;
}

// Self-check: every S-polynomial of the basis reduces to zero.
inline bool s_polynomials_reduce_to_zero(GroebnerBasis const& gb) {
  for (std::size_t i = 0; i < gb.polys.size(); ++i) {
    for (std::size_t j = i + 1; j < gb.polys.size(); ++j) {
      TracePolynomial r = detail::pseudo_remainder(
          detail::s_polynomial(gb.polys[i], gb.polys[j]), gb.polys);
      if (!r.is_zero()) return false;
    }
  }
  return true;
}

// Remainder of f modulo the ideal (zero iff f lies in it over Q).
inline TracePolynomial normal_form(TracePolynomial const& f,
                                   GroebnerBasis const& gb) {
  return detail::pseudo_remainder(f, gb.polys);
}

// Krull dimension of the quotient ring, read off the leading-term ideal:
// the dimension equals the size of the largest subset S of {x, y, z} such
// that no leading monomial involves only variables from S.  Returns -1 for
// the unit ideal (empty variety) and 3 for the zero ideal.
inline int groebner_dimension(GroebnerBasis const& gb) {
  if (gb.polys.empty()) return 3;
  for (auto const& g : gb.polys) {
    if (g.is_constant()) return -1;
  }
  std::vector<Monomial> lms;
  lms.reserve(gb.polys.size());
  for (auto const& g : gb.polys) lms.push_back(g.leading_monomial());
  int best = 0;
  for (int mask = 0; mask < 8; ++mask) {
    bool independent = true;
    for (Monomial const& m : lms) {
      bool supported = true;
      for (int v = 0; v < 3; ++v) {
        if (m[static_cast<std::size_t>(v)] > 0 && ((mask >> v) & 1) == 0) {
          supported = false;
          break;
        }
      }
      if (supported) {
        independent = false;  // this leading monomial lives inside S
        break;
      }
    }
    if (independent) best = std::max(best, __builtin_popcount(static_cast<unsigned>(mask)));
  }
  return best;
}

inline int groebner_dimension(TraceIdeal const& ideal,
                              std::uint64_t budget = default_basis_budget) {
  return groebner_dimension(groebner_basis(ideal, budget));
}

}  // namespace haken
