#pragma once

// Arithmetic in F_{p^k} (elements indexed 0..q-1 as base-p digit strings read
// as polynomial coefficients) and 2x2 determinant-1 matrices over it.

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "haken/error.hpp"

namespace haken {

namespace detail {

// Little-endian coefficient vectors over F_p, highest entry nonzero (or empty).
inline std::vector<long> poly_trim(std::vector<long> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

inline std::vector<long> poly_mul_mod_p(std::vector<long> const& a,
                                        std::vector<long> const& b, long p) {
  if (a.empty() || b.empty()) return {};
  std::vector<long> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
  }
  return poly_trim(std::move(r));
}

// Remainder of a by the monic polynomial m.
inline std::vector<long> poly_rem(std::vector<long> a, std::vector<long> const& m,
                                  long p) {
  a = poly_trim(std::move(a));
  while (a.size() >= m.size()) {
    long lead = a.back();
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      a[shift + i] = ((a[shift + i] - lead * m[i]) % p + p) % p;
    }
    a = poly_trim(std::move(a));
  }
  return a;
}

inline bool poly_is_zero(std::vector<long> const& a) { return a.empty(); }

}  // namespace detail

struct FiniteField {
  long p = 2;
  int k = 1;
  long q = 2;
  std::vector<long> modulus;  // monic irreducible, little-endian, size k+1

  // The field with q = p^k elements, modulo the first irreducible monic
  // polynomial of degree k in the index order below.
  static FiniteField make(long p, int k);

  // Same field presented by a caller-chosen monic irreducible modulus.
  static FiniteField with_modulus(long p, std::vector<long> modulus);

  long zero() const { return 0; }
  long one() const { return 1; }

  // Embeds an integer as the constant n mod p.
  long from_int(long n) const {
    long r = n % p;
    return r < 0 ? r + p : r;
  }

  std::vector<long> digits(long a) const {
    std::vector<long> d(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i) {
      d[static_cast<std::size_t>(i)] = a % p;
      a /= p;
    }
    return d;
  }

  long index_of(std::vector<long> const& d) const {
    long a = 0;
    for (std::size_t i = d.size(); i-- > 0;) a = a * p + d[i];
    return a;
  }

  long add(long a, long b) const {
    long r = 0, mult = 1;
    for (int i = 0; i < k; ++i) {
      r += ((a + b) % p) * mult;
      a /= p;
      b /= p;
      mult *= p;
    }
    return r;
  }

  long neg(long a) const {
    long r = 0, mult = 1;
    for (int i = 0; i < k; ++i) {
      r += ((p - a % p) % p) * mult;
      a /= p;
      mult *= p;
    }
    return r;
  }

  long sub(long a, long b) const { return add(a, neg(b)); }

  long mul(long a, long b) const {
    if (k == 1) return (a * b) % p;
    auto prod = detail::poly_mul_mod_p(detail::poly_trim(digits(a)),
                                       detail::poly_trim(digits(b)), p);
    auto rem = detail::poly_rem(std::move(prod), modulus, p);
    rem.resize(static_cast<std::size_t>(k), 0);
    return index_of(rem);
  }

  long pow(long a, long e) const {
    long r = one(), base = a;
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  long inv(long a) const {
    if (a == 0) throw Error("inverse of zero in a finite field");
    return pow(a, q - 2);
  }
};

namespace detail {

inline bool poly_irreducible(std::vector<long> const& f, long p) {
  // Trial division by every monic polynomial of degree 1..deg(f)/2.
  std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; 2 * d <= deg; ++d) {
    long count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (long m = 0; m < count; ++m) {
      std::vector<long> g(d + 1, 0);
      long v = m;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = v % p;
        v /= p;
      }
      g[d] = 1;
      if (poly_is_zero(poly_rem(f, g, p))) return false;
    }
  }
  return true;
}

}  // namespace detail

namespace detail {

inline bool is_prime_long(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace detail

inline FiniteField FiniteField::make(long p, int k) {
  if (!detail::is_prime_long(p) || k < 1) {
    throw Error("field parameters must be a prime p and k >= 1");
  }
  FiniteField F;
  F.p = p;
  F.k = k;
  F.q = 1;
  for (int i = 0; i < k; ++i) F.q *= p;
  // Scan monic degree-k candidates t^k + (digits of m) by increasing index m;
  // the first irreducible wins, so the modulus is deterministic.
  long count = F.q;
  for (long m = 0; m < count; ++m) {
    std::vector<long> f(static_cast<std::size_t>(k) + 1, 0);
    long v = m;
    for (int i = 0; i < k; ++i) {
      f[static_cast<std::size_t>(i)] = v % p;
      v /= p;
    }
    f[static_cast<std::size_t>(k)] = 1;
    if (detail::poly_irreducible(f, p)) {
      F.modulus = f;
      return F;
    }
  }
  throw Error("no irreducible polynomial found (non-prime p?)");
}

inline FiniteField FiniteField::with_modulus(long p, std::vector<long> modulus) {
  if (!detail::is_prime_long(p)) throw Error("p must be prime");
  if (modulus.size() < 2 || modulus.back() != 1) {
    throw Error("modulus must be monic of degree >= 1");
  }
  for (auto& c : modulus) c = ((c % p) + p) % p;
  if (modulus.back() != 1) throw Error("modulus must be monic of degree >= 1");
  if (!detail::poly_irreducible(modulus, p)) throw Error("modulus is reducible");
  FiniteField F;
  F.p = p;
  F.k = static_cast<int>(modulus.size()) - 1;
  F.q = 1;
  for (int i = 0; i < F.k; ++i) F.q *= p;
  F.modulus = std::move(modulus);
  return F;
}

// A 2x2 matrix over a finite field; entries are element indices.
struct Mat2 {
  long a = 1, b = 0, c = 0, d = 1;

  friend bool operator==(Mat2 const&, Mat2 const&) = default;
  friend auto operator<=>(Mat2 const& x, Mat2 const& y) {
    return std::tie(x.a, x.b, x.c, x.d) <=> std::tie(y.a, y.b, y.c, y.d);
  }
};

inline Mat2 mat_mul(FiniteField const& F, Mat2 const& x, Mat2 const& y) {
  return {F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)),
          F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
          F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)),
          F.add(F.mul(x.c, y.b), F.mul(x.d, y.d))};
}

inline long mat_det(FiniteField const& F, Mat2 const& m) {
  return F.sub(F.mul(m.a, m.d), F.mul(m.b, m.c));
}

inline long mat_trace(FiniteField const& F, Mat2 const& m) {
  return F.add(m.a, m.d);
}

// Inverse of a determinant-1 matrix.
inline Mat2 mat_inv_det1(FiniteField const& F, Mat2 const& m) {
  return {m.d, F.neg(m.b), F.neg(m.c), m.a};
}

inline Mat2 mat_neg(FiniteField const& F, Mat2 const& m) {
  return {F.neg(m.a), F.neg(m.b), F.neg(m.c), F.neg(m.d)};
}

// All q^3 - q determinant-1 matrices, emitted in lexicographic (a,b,c,d)
// order. The identity is therefore not first; callers who need a specific
// ordering re-sort.
inline std::vector<Mat2> sl2_elements(FiniteField const& F) {
  std::vector<Mat2> out;
  out.reserve(static_cast<std::size_t>(F.q * F.q * F.q - F.q));
  for (long a = 0; a < F.q; ++a) {
    if (a == 0) {
      // -bc = 1: c is determined by b, d is free.
      for (long b = 1; b < F.q; ++b) {
        long c = F.neg(F.inv(b));
        for (long d = 0; d < F.q; ++d) out.push_back({a, b, c, d});
      }
    } else {
      long ainv = F.inv(a);
      for (long b = 0; b < F.q; ++b) {
        for (long c = 0; c < F.q; ++c) {
          long d = F.mul(ainv, F.add(F.one(), F.mul(b, c)));
          out.push_back({a, b, c, d});
        }
      }
    }
  }
  return out;
}

}  // namespace haken
