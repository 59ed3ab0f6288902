#pragma once

// Trace polynomials for two-generator groups in the classical coordinates
// x = tr(a), y = tr(b), z = tr(ab).  For any pair of 2x2 determinant-1
// matrices over a commutative ring, the trace of every word in them is an
// integer polynomial in (x, y, z); this header computes that polynomial
// exactly, and derives from it the trace-coordinate ideal of a two-generator
// presentation.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "haken/error.hpp"
#include "haken/presentation.hpp"
#include "haken/word.hpp"

namespace haken {

// Exponent triple (x, y, z).
using Monomial = std::array<int, 3>;

inline int total_degree(Monomial const& m) { return m[0] + m[1] + m[2]; }

// Graded reverse lexicographic order with x > y > z, as a strict
// "greater-than" comparator: higher total degree wins; on equal degree the
// monomial whose last nonzero exponent difference is negative is the larger
// (so x^2 > xy > y^2 > xz > yz > z^2).
struct GrevlexGreater {
  bool operator()(Monomial const& a, Monomial const& b) const {
    int const da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    for (int i = 2; i >= 0; --i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  }
};

// Sparse polynomial in Z[x, y, z].  The term map is kept leading-term-first
// under grevlex and never holds a zero coefficient, so equal polynomials
// compare equal structurally.
struct TracePolynomial {
  std::map<Monomial, mpz_class, GrevlexGreater> terms;

  static TracePolynomial constant(long c) {
    TracePolynomial p;
    if (c != 0) p.terms[{0, 0, 0}] = c;
    return p;
  }

  // 0 -> x, 1 -> y, 2 -> z.
  static TracePolynomial variable(int i) {
    TracePolynomial p;
    Monomial m{0, 0, 0};
    m[static_cast<std::size_t>(i)] = 1;
    p.terms[m] = 1;
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  bool is_constant() const {
    return terms.empty() ||
           (terms.size() == 1 && terms.begin()->first == Monomial{0, 0, 0});
  }

  int degree() const {
    return terms.empty() ? -1 : total_degree(terms.begin()->first);
  }

  Monomial leading_monomial() const { return terms.begin()->first; }
  mpz_class const& leading_coefficient() const { return terms.begin()->second; }

  void add_term(Monomial const& m, mpz_class const& c) {
    if (c == 0) return;
    auto [it, inserted] = terms.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  TracePolynomial& operator+=(TracePolynomial const& o) {
    for (auto const& [m, c] : o.terms) add_term(m, c);
    return *this;
  }

  TracePolynomial& operator-=(TracePolynomial const& o) {
    for (auto const& [m, c] : o.terms) add_term(m, -c);
    return *this;
  }

  friend TracePolynomial operator+(TracePolynomial a, TracePolynomial const& b) {
    a += b;
    return a;
  }

  friend TracePolynomial operator-(TracePolynomial a, TracePolynomial const& b) {
    a -= b;
    return a;
  }

  friend TracePolynomial operator-(TracePolynomial const& a) {
    TracePolynomial r;
    for (auto const& [m, c] : a.terms) r.terms.emplace(m, -c);
    return r;
  }

  friend TracePolynomial operator*(TracePolynomial const& a,
                                   TracePolynomial const& b) {
    TracePolynomial r;
    for (auto const& [ma, ca] : a.terms) {
      for (auto const& [mb, cb] : b.terms) {
        r.add_term({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, ca * cb);
      }
    }
    return r;
  }

  friend bool operator==(TracePolynomial const& a, TracePolynomial const& b) {
    return a.terms == b.terms;
  }

  // gcd of all coefficients (non-negative; 0 for the zero polynomial).
  mpz_class content() const {
    mpz_class g = 0;
    for (auto const& [m, c] : terms) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      if (g == 1) break;
    }
    return g;
  }

  // Divide out the content and make the leading coefficient positive.
  void primitivize() {
    if (terms.empty()) return;
    mpz_class g = content();
    if (leading_coefficient() < 0) g = -g;
    if (g == 1) return;
    for (auto& [m, c] : terms) {
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    }
  }

  mpz_class evaluate(mpz_class const& vx, mpz_class const& vy,
                     mpz_class const& vz) const {
    mpz_class total = 0;
    for (auto const& [m, c] : terms) {
      mpz_class t = c;
      for (int i = 0; i < m[0]; ++i) t *= vx;
      for (int i = 0; i < m[1]; ++i) t *= vy;
      for (int i = 0; i < m[2]; ++i) t *= vz;
      total += t;
    }
    return total;
  }

  // Deterministic text form, e.g. "x^2 + y^2 + z^2 - x*y*z - 2".
  std::string to_string() const {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto const& [m, c] : terms) {
      mpz_class a = abs(c);
      out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
      first = false;
      std::string mono;
      static char const* names[3] = {"x", "y", "z"};
      for (int i = 0; i < 3; ++i) {
        if (m[static_cast<std::size_t>(i)] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names[i];
        if (m[static_cast<std::size_t>(i)] > 1) {
          mono += "^" + std::to_string(m[static_cast<std::size_t>(i)]);
        }
      }
      if (mono.empty()) {
        out += a.get_str();
      } else {
        if (a != 1) out += a.get_str() + "*";
        out += mono;
      }
    }
    return out;
  }
};

namespace detail {

// Canonical representative of a word's conjugacy-and-inversion class: the
// lexicographically smallest rotation of the cyclically reduced word or of
// its inverse.  Traces are invariant under exactly these moves.
inline std::vector<int> trace_class_key(Word const& cyc) {
  std::vector<int> best;
  auto consider = [&](std::vector<int> const& base) {
    std::size_t const n = base.size();
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<int> rot(n);
      for (std::size_t i = 0; i < n; ++i) rot[i] = base[(s + i) % n];
      if (best.empty() || rot < best) best = rot;
    }
  };
  if (cyc.letters.empty()) return {};
  consider(cyc.letters);
  consider(inverse(cyc).letters);
  return best;
}

// Memoized Fricke reduction.  Every recursion step strictly decreases the
// pair (#inverse letters, length), so the rewriting terminates:
//   tr(g^-1 u) = tr(g) tr(u) - tr(g u)          (kills one inverse letter)
//   tr(g g v)  = tr(g) tr(g v) - tr(v)          (positive repeated letter)
//   tr((ab)^k) = z tr((ab)^{k-1}) - tr((ab)^{k-2})
// with base cases tr(1) = 2, tr(a) = x, tr(b) = y, tr(ab) = z.
struct TraceCalculator {
  std::map<std::vector<int>, TracePolynomial> memo;

  static TracePolynomial letter_trace(int gen) {
    return TracePolynomial::variable(gen == 1 ? 0 : 1);
  }

  static Word rotate(Word const& w, std::size_t s) {
    std::size_t const n = w.letters.size();
    Word r;
    r.letters.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.letters[i] = w.letters[(s + i) % n];
    return r;
  }

  TracePolynomial run(Word const& input) {
    Word w = cyclically_reduce(input);
    std::size_t const n = w.letters.size();
    if (n == 0) return TracePolynomial::constant(2);
    if (n == 1) return letter_trace(std::abs(w.letters[0]));
    std::vector<int> key = trace_class_key(w);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    TracePolynomial result;
    std::size_t neg = static_cast<std::size_t>(
        std::count_if(w.letters.begin(), w.letters.end(),
                      [](int L) { return L < 0; }));
    if (neg > 0) {
      std::size_t s = 0;
      while (w.letters[s] >= 0) ++s;
      Word r = rotate(w, s);  // r = g^-1 u
      int const g = -r.letters[0];
      Word u;
      u.letters.assign(r.letters.begin() + 1, r.letters.end());
      Word gu;
      gu.letters.push_back(g);
      gu.letters.insert(gu.letters.end(), u.letters.begin(), u.letters.end());
      result = letter_trace(g) * run(u) - run(free_reduce(gu.letters));
    } else {
      // positive word: look for a cyclically adjacent repeated letter
      std::size_t rep = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (w.letters[i] == w.letters[(i + 1) % n]) {
          rep = i;
          break;
        }
      }
      if (rep < n) {
        Word r = rotate(w, rep);  // r = g g v
        int const g = r.letters[0];
        Word gv;
        gv.letters.assign(r.letters.begin() + 1, r.letters.end());
        Word v;
        v.letters.assign(r.letters.begin() + 2, r.letters.end());
        result = letter_trace(g) * run(gv) - run(v);
      } else if (n == 2) {
        result = TracePolynomial::variable(2);  // tr(ab) = z
      } else {
        // alternating (ab)^k, k >= 2: Chebyshev-style power recursion
        std::size_t s = w.letters[0] == 1 ? 0 : 1;
        Word r = rotate(w, s);
        Word tail1, tail2;
        tail1.letters.assign(r.letters.begin() + 2, r.letters.end());
        tail2.letters.assign(r.letters.begin() + 4, r.letters.end());
        result = TracePolynomial::variable(2) * run(tail1) - run(tail2);
      }
    }
    memo.emplace(std::move(key), result);
    return result;
  }
};

}  // namespace detail

// The unique polynomial t in Z[x, y, z] with tr(w(A, B)) = t(tr A, tr B,
// tr AB) for all 2x2 determinant-1 matrices A, B over any commutative ring.
// Only words in the first two generators are supported.
inline TracePolynomial trace_polynomial(Word const& w) {
  for (int L : w.letters) {
    if (letter_index(L) > 1) {
      throw UnsupportedGeneratorCount(letter_index(L) + 1, 2);
    }
  }
  thread_local detail::TraceCalculator calc;
  return calc.run(w);
}

// The trace-coordinate ideal of a two-generator presentation.
struct TraceIdeal {
  std::vector<TracePolynomial> generators;
  Presentation source;
};

// For each relator r the conditions tr(r) = 2, tr(r a) = tr(a), tr(r b) =
// tr(b) cut out the trace tuples of representations sending every relator to
// the identity; in characteristic != 2 those three equations force r to the
// identity matrix (a matrix with trace 2 agreeing with the identity against
// a and b is the identity when the representation is irreducible, and the
// reducible locus satisfies the equations as well).  Every vanishing tuple
// lifts to an actual representation where the standard Fricke construction
// applies; the code records the equations and leaves that theory to the
// caller.
inline TraceIdeal character_ideal_2gen(Presentation const& p) {
  if (p.generator_count() != 2) {
    throw UnsupportedGeneratorCount(p.generator_count(), 2);
  }
  TraceIdeal ideal;
  ideal.source = p;
  Word const a{{1}};
  Word const b{{2}};
  // Degenerate emissions (e.g. tr(r b) - y when r b is conjugate to b) stay
  // in the list as the zero polynomial so each relator contributes its three
  // conditions; duplicates collapse.
  auto push = [&ideal](TracePolynomial q) {
    for (auto const& have : ideal.generators) {
      if (have == q) return;
    }
    ideal.generators.push_back(std::move(q));
  };
  for (Word const& r : p.relators) {
    push(trace_polynomial(r) - TracePolynomial::constant(2));
    push(trace_polynomial(concat(r, a)) - TracePolynomial::variable(0));
    push(trace_polynomial(concat(r, b)) - TracePolynomial::variable(1));
  }
  return ideal;
}

}  // namespace haken
