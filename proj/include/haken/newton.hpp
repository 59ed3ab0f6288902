#pragma once

// p-adic Newton polygons for integer polynomials, and the trace-integrality
// certificate built on them.  The polygon of f = sum a_i x^i at a prime p is
// the lower convex hull of the points (i, v_p(a_i)); each hull segment of
// slope s and horizontal length m certifies exactly m roots of p-adic
// valuation -s (in an algebraic closure of Q_p).  A root of an algebraic
// number's minimal polynomial has negative valuation at p exactly when the
// number fails to be a p-adic integer there, which is what the certificate
// consumer cares about.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "haken/error.hpp"

namespace haken {

// Dense univariate integer polynomial: coeffs[i] is the coefficient of x^i.
// The representation is normalized when the top coefficient is nonzero.
using UnivariatePoly = std::vector<mpz_class>;

inline long poly_degree(UnivariatePoly const& f) {
  for (long i = static_cast<long>(f.size()) - 1; i >= 0; --i) {
    if (f[static_cast<std::size_t>(i)] != 0) return i;
  }
  return -1;  // zero polynomial
}

// --- plain-text univariate syntax ------------------------------------------
//
// Accepts sums of terms like "2x^4", "-17x^3", "x", "+8"; an optional '*'
// may separate the coefficient from the variable, and whitespace is free.
inline UnivariatePoly parse_univariate(std::string const& text) {
  std::vector<std::pair<mpz_class, long>> terms;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) throw SyntaxError(i, "a polynomial term");
  bool first = true;
  while (i < text.size()) {
    int sign = 1;
    skip_ws();
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip_ws();
    } else if (!first) {
      throw SyntaxError(i, "'+' or '-' between terms");
    }
    first = false;
    std::string digits;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits += text[i++];
    }
    skip_ws();
    if (i < text.size() && text[i] == '*') {
      if (digits.empty()) throw SyntaxError(i, "a coefficient before '*'");
      ++i;
      skip_ws();
    }
    mpz_class coeff = digits.empty() ? mpz_class(1) : mpz_class(digits);
    long exponent = 0;
    if (i < text.size() && (text[i] == 'x' || text[i] == 'X')) {
      ++i;
      exponent = 1;
      skip_ws();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip_ws();
        std::string expo;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          expo += text[i++];
        }
        if (expo.empty()) throw SyntaxError(i, "an exponent after '^'");
        if (expo.size() > 6) throw SyntaxError(i, "an exponent below 10^6");
        exponent = std::stol(expo);
      }
    } else if (digits.empty()) {
      throw SyntaxError(i, "a coefficient or 'x'");
    }
    terms.emplace_back(sign * coeff, exponent);
    skip_ws();
  }
  long deg = 0;
  for (auto const& [c, e] : terms) {
    (void)c;
    deg = std::max(deg, e);
  }
  UnivariatePoly f(static_cast<std::size_t>(deg) + 1, mpz_class(0));
  for (auto const& [c, e] : terms) f[static_cast<std::size_t>(e)] += c;
  return f;
}

inline std::string univariate_to_string(UnivariatePoly const& f) {
  long deg = poly_degree(f);
  if (deg < 0) return "0";
  std::string out;
  for (long e = deg; e >= 0; --e) {
    mpz_class const& c = f[static_cast<std::size_t>(e)];
    if (c == 0) continue;
    mpz_class a = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (a != 1 || e == 0) out += a.get_str();
    if (e >= 1) {
      out += "x";
      if (e >= 2) out += "^" + std::to_string(e);
    }
  }
  return out;
}

// --- Newton polygon --------------------------------------------------------

struct NewtonSlope {
  mpq_class slope;    // root valuation = -slope
  long multiplicity;  // horizontal length of the hull segment

  friend bool operator==(NewtonSlope const& a, NewtonSlope const& b) {
    return a.slope == b.slope && a.multiplicity == b.multiplicity;
  }
};

struct NewtonPolygonReport {
  long p = 0;
  std::vector<NewtonSlope> slopes;     // hull order: strictly increasing slope
  long zero_root_multiplicity = 0;     // power of x dividing f (valuation +inf)
  bool has_negative_valuation_root = false;

  // Root valuations, most negative last, excluding the zero roots.
  std::vector<mpq_class> root_valuations_with_multiplicity() const {
    std::vector<mpq_class> out;
    for (auto const& s : slopes) {
      for (long k = 0; k < s.multiplicity; ++k) out.push_back(-s.slope);
    }
    return out;
  }
};

namespace detail {

inline long p_valuation(mpz_class const& a, long p) {
  // a != 0 expected; counts the factors of p in a
  mpz_class rest;
  mpz_class pz = p;
  return static_cast<long>(
      mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), pz.get_mpz_t()));
}

}  // namespace detail

inline NewtonPolygonReport newton_polygon(UnivariatePoly const& f, long p) {
  if (p < 2) throw Error("newton_polygon requires a prime p >= 2");
  long deg = poly_degree(f);
  if (deg < 0) throw ZeroPolynomial();
  if (deg == 0) throw Error("newton_polygon requires degree >= 1");

  NewtonPolygonReport report;
  report.p = p;

  long ord = 0;
  while (f[static_cast<std::size_t>(ord)] == 0) ++ord;
  report.zero_root_multiplicity = ord;

  // Lower convex hull of (i, v_p(a_i)) over the nonzero coefficients,
  // with collinear interior points merged into a single segment.
  std::vector<std::pair<long, long>> hull;  // (exponent, valuation) vertices
  for (long i = ord; i <= deg; ++i) {
    mpz_class const& a = f[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    long v = detail::p_valuation(a, p);
    while (hull.size() >= 2) {
      auto const& [x0, y0] = hull[hull.size() - 2];
      auto const& [x1, y1] = hull[hull.size() - 1];
      // keep only strict right turns: pop when (x1,y1) is on or above the
      // chord from (x0,y0) to (i,v)
      __int128 cross = static_cast<__int128>(x1 - x0) * (v - y0) -
                       static_cast<__int128>(y1 - y0) * (i - x0);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.emplace_back(i, v);
  }

  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    auto const& [x0, y0] = hull[k];
    auto const& [x1, y1] = hull[k + 1];
    mpq_class slope(y1 - y0, x1 - x0);
    slope.canonicalize();
    report.slopes.push_back({slope, x1 - x0});
    if (slope > 0) report.has_negative_valuation_root = true;
  }
  return report;
}

inline NewtonPolygonReport newton_polygon(std::string const& text, long p) {
  return newton_polygon(parse_univariate(text), p);
}

// --- trace-integrality certificate -----------------------------------------

enum class IntegralityVerdict { integral, non_integral };

inline char const* to_string(IntegralityVerdict v) {
  return v == IntegralityVerdict::integral ? "INTEGRAL" : "NON-INTEGRAL";
}

struct IntegralityCertificate {
  IntegralityVerdict verdict = IntegralityVerdict::integral;
  bool declared_irreducible = false;
  // Primes dividing the leading coefficient, each corroborated by the Newton
  // polygon exhibiting a negative-valuation root.  Empty when integral.
  std::vector<mpz_class> primes;
  std::vector<NewtonPolygonReport> reports;  // parallel to primes
  // First small prime at which the input is squarefree mod p (gcd(f, f')
  // constant with the degree preserved); absent when none of the probed
  // primes witnesses it.  Irreducibility itself is the caller's assertion.
  std::optional<long> squarefree_witness_prime;
};

namespace detail {

inline std::vector<long> poly_mod_p(UnivariatePoly const& f, long p) {
  std::vector<long> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = static_cast<long>(mpz_class(f[i] % p).get_si());
    if (out[i] < 0) out[i] += p;
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

inline std::vector<long> poly_mod_p_derivative(std::vector<long> const& f, long p) {
  std::vector<long> out;
  for (std::size_t i = 1; i < f.size(); ++i) {
    out.push_back(static_cast<long>((static_cast<long long>(f[i]) * static_cast<long>(i)) % p));
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

inline long inv_mod_p(long a, long p) {
  long r = 1, base = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) r = static_cast<long>((static_cast<long long>(r) * base) % p);
    base = static_cast<long>((static_cast<long long>(base) * base) % p);
    e >>= 1;
  }
  return r;
}

inline std::vector<long> poly_gcd_mod_p(std::vector<long> a, std::vector<long> b, long p) {
  while (!b.empty()) {
    // a mod b
    long lead_inv = inv_mod_p(b.back(), p);
    while (a.size() >= b.size()) {
      long c = static_cast<long>((static_cast<long long>(a.back()) * lead_inv) % p);
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) {
        long t = static_cast<long>((a[shift + i] - static_cast<long long>(c) * b[i]) % p);
        a[shift + i] = t < 0 ? t + p : t;
      }
      while (!a.empty() && a.back() == 0) a.pop_back();
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

inline bool squarefree_mod_p(UnivariatePoly const& f, long p) {
  std::vector<long> fp = poly_mod_p(f, p);
  // degree must survive reduction for the witness to transfer to Z
  if (fp.size() != static_cast<std::size_t>(poly_degree(f)) + 1) return false;
  if (fp.size() <= 1) return false;
  std::vector<long> dfp = poly_mod_p_derivative(fp, p);
  if (dfp.empty()) return false;  // derivative vanished mod p
  std::vector<long> g = poly_gcd_mod_p(fp, dfp, p);
  return g.size() == 1;
}

inline std::vector<mpz_class> prime_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> out;
  if (n <= 1) return out;
  for (mpz_class d = 2; d * d <= n && d < 1000000; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) {
      throw Error("could not factor the leading coefficient " + n.get_str());
    }
    out.push_back(n);
  }
  return out;
}

}  // namespace detail

inline IntegralityCertificate integrality_certificate(UnivariatePoly const& f,
                                                      bool declared_irreducible) {
  long deg = poly_degree(f);
  if (deg < 0) throw ZeroPolynomial();
  if (deg == 0) throw Error("integrality_certificate requires degree >= 1");
  mpz_class content = 0;
  for (auto const& c : f) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    content = g;
    if (content == 1) break;
  }
  if (content != 1) {
    throw NotPrimitive("polynomial has content " + content.get_str() +
                       "; a minimal polynomial must be primitive");
  }

  IntegralityCertificate cert;
  cert.declared_irreducible = declared_irreducible;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
    if (detail::squarefree_mod_p(f, p)) {
      cert.squarefree_witness_prime = p;
      break;
    }
  }

  mpz_class const& lead = f[static_cast<std::size_t>(deg)];
  if (lead == 1 || lead == -1) {
    cert.verdict = IntegralityVerdict::integral;
    return cert;
  }
  cert.verdict = IntegralityVerdict::non_integral;
  for (mpz_class const& p : detail::prime_divisors(lead)) {
    if (!p.fits_slong_p()) {
      throw Error("prime divisor " + p.get_str() + " of the leading coefficient is too large");
    }
    cert.primes.push_back(p);
    cert.reports.push_back(newton_polygon(f, p.get_si()));
  }
  return cert;
}

inline IntegralityCertificate integrality_certificate(std::string const& text,
                                                      bool declared_irreducible) {
  return integrality_certificate(parse_univariate(text), declared_irreducible);
}

}  // namespace haken
