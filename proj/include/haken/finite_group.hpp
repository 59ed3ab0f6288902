#pragma once

// Finite groups as explicit multiplication tables: a built-in library of
// cyclic, abelian, dihedral, dicyclic, symmetric/alternating, and SL2/PSL2
// models, plus a deterministic catalog of every group of small order.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "haken/error.hpp"
#include "haken/finite_field.hpp"
#include "haken/word.hpp"

namespace haken {

// Elements are indices 0..order-1 with the identity at index 0.
// multiply(x, y) composes with y applying first, matching evaluate_word.
struct FiniteGroupModel {
  std::string name;
  int order = 1;
  std::vector<std::uint16_t> mul;  // row-major: mul[x * order + y]
  std::vector<std::uint16_t> inv;
  std::vector<int> generators;  // designated generating set (element indices)

  using Element = int;

  Element identity() const { return 0; }
  Element multiply(Element x, Element y) const {
    return mul[static_cast<std::size_t>(x) * order + static_cast<std::size_t>(y)];
  }
  Element invert(Element x) const { return inv[static_cast<std::size_t>(x)]; }
};

inline long element_order(FiniteGroupModel const& G, int x) {
  long n = 1;
  int acc = x;
  while (acc != 0) {
    acc = G.multiply(acc, x);
    ++n;
  }
  return n;
}

namespace detail {

// Builds the table group generated by `gens` under `mul`, identity first,
// remaining elements in breadth-first discovery order (right-multiplication
// by the generators in their given order).
template <typename T, typename MulFn>
FiniteGroupModel table_from_closure(std::string name, T const& identity,
                                    std::vector<T> const& gens, MulFn mul) {
  std::vector<T> elements{identity};
  std::map<T, int> index{{identity, 0}};
  for (std::size_t at = 0; at < elements.size(); ++at) {
    T current = elements[at];
    for (auto const& g : gens) {
      T next = mul(current, g);
      if (index.emplace(next, static_cast<int>(elements.size())).second) {
        elements.push_back(next);
      }
    }
  }
  if (elements.size() > 65535) throw Error("group too large for a table model");
  FiniteGroupModel G;
  G.name = std::move(name);
  G.order = static_cast<int>(elements.size());
  G.mul.assign(static_cast<std::size_t>(G.order) * G.order, 0);
  G.inv.assign(static_cast<std::size_t>(G.order), 0);
  for (int x = 0; x < G.order; ++x) {
    for (int y = 0; y < G.order; ++y) {
      auto it = index.find(mul(elements[static_cast<std::size_t>(x)],
                               elements[static_cast<std::size_t>(y)]));
      if (it == index.end()) throw Error("multiplication left the closure");
      G.mul[static_cast<std::size_t>(x) * G.order + y] =
          static_cast<std::uint16_t>(it->second);
      if (it->second == 0) G.inv[static_cast<std::size_t>(x)] = static_cast<std::uint16_t>(y);
    }
  }
  for (auto const& g : gens) {
    G.generators.push_back(index.at(g));
  }
  return G;
}

inline std::string cyclic_product_name(std::vector<long> const& invariants) {
  if (invariants.empty()) return "Z/1";
  std::string s;
  for (std::size_t i = 0; i < invariants.size(); ++i) {
    if (i) s += " x ";
    s += "Z/" + std::to_string(invariants[i]);
  }
  return s;
}

}  // namespace detail

// Direct product of cyclic groups Z/d1 x Z/d2 x ...; factors of size 1 are
// dropped. Element index encodes mixed-radix digits, first factor fastest.
inline FiniteGroupModel abelian(std::vector<long> invariants) {
  std::erase(invariants, 1L);
  for (long d : invariants) {
    if (d < 1) throw Error("cyclic factors must be positive");
  }
  FiniteGroupModel G;
  G.name = detail::cyclic_product_name(invariants);
  long order = 1;
  for (long d : invariants) order *= d;
  if (order > 65535) throw Error("group too large for a table model");
  G.order = static_cast<int>(order);
  auto combine = [&](long x, long y, bool negate) {
    long r = 0, mult = 1;
    for (long d : invariants) {
      long sum = (x % d + (negate ? d - y % d : y % d)) % d;
      r += sum * mult;
      x /= d;
      y /= d;
      mult *= d;
    }
    return r;
  };
  G.mul.assign(static_cast<std::size_t>(G.order) * G.order, 0);
  G.inv.assign(static_cast<std::size_t>(G.order), 0);
  for (long x = 0; x < G.order; ++x) {
    for (long y = 0; y < G.order; ++y) {
      G.mul[static_cast<std::size_t>(x) * G.order + y] =
          static_cast<std::uint16_t>(combine(x, y, false));
    }
    G.inv[static_cast<std::size_t>(x)] = static_cast<std::uint16_t>(combine(0, x, true));
  }
  long stride = 1;
  for (long d : invariants) {
    G.generators.push_back(static_cast<int>(stride));
    stride *= d;
  }
  return G;
}

inline FiniteGroupModel cyclic(long n) { return abelian({n}); }

// Dihedral group of order 2k: r of order k, s of order 2, s r s = r^{-1}.
// Element (r^i s^j) has index j*k + i; generators are r then s.
inline FiniteGroupModel dihedral(long k) {
  if (k < 1) throw Error("dihedral parameter must be >= 1");
  if (2 * k > 65535) throw Error("group too large for a table model");
  FiniteGroupModel G;
  G.name = "D" + std::to_string(2 * k);
  G.order = static_cast<int>(2 * k);
  G.mul.assign(static_cast<std::size_t>(G.order) * G.order, 0);
  G.inv.assign(static_cast<std::size_t>(G.order), 0);
  auto idx = [&](long i, long j) { return j * k + ((i % k + k) % k); };
  for (long j1 = 0; j1 < 2; ++j1) {
    for (long i1 = 0; i1 < k; ++i1) {
      for (long j2 = 0; j2 < 2; ++j2) {
        for (long i2 = 0; i2 < k; ++i2) {
          long i = i1 + (j1 ? -i2 : i2);
          long x = idx(i1, j1), y = idx(i2, j2);
          G.mul[static_cast<std::size_t>(x) * G.order + y] =
              static_cast<std::uint16_t>(idx(i, (j1 + j2) % 2));
        }
      }
    }
  }
  for (int x = 0; x < G.order; ++x) {
    for (int y = 0; y < G.order; ++y) {
      if (G.multiply(x, y) == 0) G.inv[static_cast<std::size_t>(x)] = static_cast<std::uint16_t>(y);
    }
  }
  G.generators = {static_cast<int>(idx(1, 0)), static_cast<int>(idx(0, 1))};
  if (k == 1) G.generators = {static_cast<int>(idx(0, 1))};
  return G;
}

// Dicyclic group of order 4n: a of order 2n, b^2 = a^n, b a b^{-1} = a^{-1}.
// dicyclic(2) is the quaternion group Q8. Element (a^i b^j) has index j*2n+i.
inline FiniteGroupModel dicyclic(long n) {
  if (n < 1) throw Error("dicyclic parameter must be >= 1");
  if (4 * n > 65535) throw Error("group too large for a table model");
  FiniteGroupModel G;
  G.name = "Dic" + std::to_string(n);
  G.order = static_cast<int>(4 * n);
  long m = 2 * n;
  G.mul.assign(static_cast<std::size_t>(G.order) * G.order, 0);
  G.inv.assign(static_cast<std::size_t>(G.order), 0);
  auto idx = [&](long i, long j) { return j * m + ((i % m + m) % m); };
  for (long j1 = 0; j1 < 2; ++j1) {
    for (long i1 = 0; i1 < m; ++i1) {
      for (long j2 = 0; j2 < 2; ++j2) {
        for (long i2 = 0; i2 < m; ++i2) {
          long i = i1 + (j1 ? -i2 : i2) + ((j1 & j2) ? n : 0);
          long x = idx(i1, j1), y = idx(i2, j2);
          G.mul[static_cast<std::size_t>(x) * G.order + y] =
              static_cast<std::uint16_t>(idx(i, (j1 + j2) % 2));
        }
      }
    }
  }
  for (int x = 0; x < G.order; ++x) {
    for (int y = 0; y < G.order; ++y) {
      if (G.multiply(x, y) == 0) G.inv[static_cast<std::size_t>(x)] = static_cast<std::uint16_t>(y);
    }
  }
  G.generators = {static_cast<int>(idx(1, 0)), static_cast<int>(idx(0, 1))};
  return G;
}

// Table model from permutation generators (1-based cycle input comes from
// perm_from_cycles); composition matches PermGroup.
inline FiniteGroupModel from_permutations(std::string name, int degree,
                                          std::vector<PermGroup::Element> gens) {
  PermGroup S{degree};
  return detail::table_from_closure(
      std::move(name), S.identity(), gens,
      [&S](PermGroup::Element const& x, PermGroup::Element const& y) {
        return S.multiply(x, y);
      });
}

inline FiniteGroupModel sym(int n) {
  if (n < 1 || n > 7) throw Error("symmetric-group models cover degrees 1..7");
  std::vector<PermGroup::Element> gens;
  if (n >= 2) {
    gens.push_back(perm_from_cycles(n, {{1, 2}}));
  }
  if (n >= 3) {
    std::vector<int> cyc(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cyc[static_cast<std::size_t>(i)] = i + 1;
    gens.push_back(perm_from_cycles(n, {cyc}));
  }
  return from_permutations("S" + std::to_string(n), n, gens);
}

inline FiniteGroupModel alt(int n) {
  if (n < 3 || n > 7) throw Error("alternating-group models cover degrees 3..7");
  std::vector<PermGroup::Element> gens{perm_from_cycles(n, {{1, 2, 3}})};
  if (n >= 4) {
    std::vector<int> cyc;
    for (int i = n % 2 ? 1 : 2; i <= n; ++i) cyc.push_back(i);
    gens.push_back(perm_from_cycles(n, {cyc}));
  }
  return from_permutations("A" + std::to_string(n), n, gens);
}

namespace detail {

inline std::pair<long, int> factor_prime_power(long q) {
  for (long p = 2; p * p <= q; ++p) {
    if (q % p == 0) {
      int k = 0;
      long rest = q;
      while (rest % p == 0) {
        rest /= p;
        ++k;
      }
      if (rest != 1) throw Error("field size must be a prime power");
      return {p, k};
    }
  }
  return {q, 1};
}

// Designated generators: upper transvections [[1, t^i], [0, 1]] for i < k
// together with the rotation [[0, 1], [-1, 0]].
inline std::vector<Mat2> sl2_generators(FiniteField const& F) {
  std::vector<Mat2> gens;
  long ti = F.one();
  for (int i = 0; i < F.k; ++i) {
    gens.push_back({F.one(), ti, F.zero(), F.one()});
    if (i + 1 < F.k) ti = F.mul(ti, F.p);  // index F.p is the polynomial t
  }
  gens.push_back({F.zero(), F.one(), F.neg(F.one()), F.zero()});
  return gens;
}

}  // namespace detail

// SL2 over the field with q elements; order q^3 - q. Elements beyond the
// identity appear in lexicographic entry order.
inline FiniteGroupModel sl2_model(long q) {
  auto [p, k] = detail::factor_prime_power(q);
  FiniteField F = FiniteField::make(p, k);
  std::vector<Mat2> elements = sl2_elements(F);
  std::sort(elements.begin(), elements.end());
  Mat2 id{F.one(), F.zero(), F.zero(), F.one()};
  std::erase(elements, id);
  elements.insert(elements.begin(), id);
  std::map<Mat2, int> index;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    index[elements[i]] = static_cast<int>(i);
  }
  FiniteGroupModel G;
  G.name = "SL2(" + std::to_string(q) + ")";
  G.order = static_cast<int>(elements.size());
  if (elements.size() > 65535) throw Error("group too large for a table model");
  G.mul.assign(static_cast<std::size_t>(G.order) * G.order, 0);
  G.inv.assign(static_cast<std::size_t>(G.order), 0);
  for (int x = 0; x < G.order; ++x) {
    Mat2 const& mx = elements[static_cast<std::size_t>(x)];
    for (int y = 0; y < G.order; ++y) {
      G.mul[static_cast<std::size_t>(x) * G.order + y] =
          static_cast<std::uint16_t>(index.at(mat_mul(F, mx, elements[static_cast<std::size_t>(y)])));
    }
    G.inv[static_cast<std::size_t>(x)] = static_cast<std::uint16_t>(index.at(mat_inv_det1(F, mx)));
  }
  for (Mat2 const& g : detail::sl2_generators(F)) {
    G.generators.push_back(index.at(g));
  }
  return G;
}

// PSL2(q) = SL2(q) modulo its center {±1}; for even q this equals SL2(q).
inline FiniteGroupModel psl2_model(long q) {
  auto [p, k] = detail::factor_prime_power(q);
  FiniteField F = FiniteField::make(p, k);
  auto canon = [&F](Mat2 const& m) { return std::min(m, mat_neg(F, m)); };
  Mat2 id{F.one(), F.zero(), F.zero(), F.one()};
  FiniteGroupModel G = detail::table_from_closure(
      "PSL2(" + std::to_string(q) + ")", canon(id),
      [&] {
        std::vector<Mat2> gens;
        for (Mat2 const& g : detail::sl2_generators(F)) gens.push_back(canon(g));
        return gens;
      }(),
      [&F, &canon](Mat2 const& x, Mat2 const& y) { return canon(mat_mul(F, x, y)); });
  return G;
}

// Every group of order 2..bound, one model per isomorphism class, sorted by
// (order, name). Orders up to 15 are covered by cyclic products, dihedral,
// dicyclic, and A4 alone; larger bounds are refused rather than silently
// incomplete.
inline std::vector<FiniteGroupModel> catalog_up_to(int bound) {
  if (bound < 2) throw Error("catalog bound must be >= 2");
  if (bound > 15) throw Error("catalog classification is pinned for orders <= 15");
  std::vector<FiniteGroupModel> out;
  for (long n = 2; n <= bound; ++n) {
    // abelian groups: invariant-factor chains d1 | d2 | ... with product n
    std::vector<long> chain;
    auto rec = [&](auto&& self, long rest, long prev) -> void {
      if (rest == 1) {
        out.push_back(abelian(chain));
        return;
      }
      for (long d = 2; d <= rest; ++d) {
        if (rest % d != 0 || d % prev != 0) continue;
        chain.push_back(d);
        self(self, rest / d, d);
        chain.pop_back();
      }
    };
    rec(rec, n, 1);
    if (n % 2 == 0 && n >= 6) out.push_back(dihedral(n / 2));
    if (n % 4 == 0 && n >= 8) out.push_back(dicyclic(n / 4));
    if (n == 12) out.push_back(alt(4));
  }
  std::sort(out.begin(), out.end(),
            [](FiniteGroupModel const& a, FiniteGroupModel const& b) {
              return std::tie(a.order, a.name) < std::tie(b.order, b.name);
            });
  return out;
}

}  // namespace haken
