#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "haken/error.hpp"

namespace haken {

// Dense arbitrary-precision integer matrix, row major.
struct IntMat {
  int rows = 0;
  int cols = 0;
  std::vector<mpz_class> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  mpz_class& at(int i, int j) {
    return a[static_cast<std::size_t>(i) * cols + j];
  }
  mpz_class const& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }

  static IntMat identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMat from_rows(std::vector<std::vector<long>> const& rows_in) {
    int r = static_cast<int>(rows_in.size());
    int c = r ? static_cast<int>(rows_in[0].size()) : 0;
    IntMat m(r, c);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < c; ++j) m.at(i, j) = rows_in[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
  }

  bool is_zero() const {
    for (auto const& x : a) {
      if (x != 0) return false;
    }
    return true;
  }

  bool operator==(IntMat const&) const = default;
};

inline IntMat transpose(IntMat const& m) {
  IntMat t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  }
  return t;
}

inline IntMat mul(IntMat const& x, IntMat const& y) {
  if (x.cols != y.rows) {
    throw DimensionMismatch("mul: " + std::to_string(x.cols) + " vs " +
                            std::to_string(y.rows));
  }
  IntMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int k = 0; k < x.cols; ++k) {
      mpz_class const& xv = x.at(i, k);
      if (xv == 0) continue;
      for (int j = 0; j < y.cols; ++j) {
        r.at(i, j) += xv * y.at(k, j);
      }
    }
  }
  return r;
}

// Row vector times matrix.
inline std::vector<mpz_class> vec_mul(std::vector<mpz_class> const& v,
                                      IntMat const& m) {
  if (static_cast<int>(v.size()) != m.rows) {
    throw DimensionMismatch("vec_mul: " + std::to_string(v.size()) + " vs " +
                            std::to_string(m.rows));
  }
  std::vector<mpz_class> r(static_cast<std::size_t>(m.cols));
  for (int i = 0; i < m.rows; ++i) {
    if (v[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < m.cols; ++j) {
      r[static_cast<std::size_t>(j)] += v[static_cast<std::size_t>(i)] * m.at(i, j);
    }
  }
  return r;
}

// Smith normal form bundle: A = U * S * V with U, V unimodular, S diagonal
// with a divisibility chain.  The inverses come along for free by mirroring
// each elementary operation, so no matrix ever needs inverting afterwards.
struct SNFResult {
  IntMat U, S, V;
  IntMat Uinv, Vinv;
  int rank = 0;
  std::vector<mpz_class> divisors;  // nonzero diagonal entries, d1 | d2 | ...
};

namespace detail {

struct SnfWork {
  IntMat S, U, Uinv, V, Vinv;

  // S <- E*S with E = (row i += k * row j); keeps A = U*S*V.
  void row_addmul(int i, int j, mpz_class const& k) {
    for (int c = 0; c < S.cols; ++c) S.at(i, c) += k * S.at(j, c);
    for (int r = 0; r < U.rows; ++r) U.at(r, j) -= k * U.at(r, i);
    for (int c = 0; c < Uinv.cols; ++c) Uinv.at(i, c) += k * Uinv.at(j, c);
  }

  void row_swap(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < S.cols; ++c) std::swap(S.at(i, c), S.at(j, c));
    for (int r = 0; r < U.rows; ++r) std::swap(U.at(r, i), U.at(r, j));
    for (int c = 0; c < Uinv.cols; ++c) std::swap(Uinv.at(i, c), Uinv.at(j, c));
  }

  void row_negate(int i) {
    for (int c = 0; c < S.cols; ++c) S.at(i, c) = -S.at(i, c);
    for (int r = 0; r < U.rows; ++r) U.at(r, i) = -U.at(r, i);
    for (int c = 0; c < Uinv.cols; ++c) Uinv.at(i, c) = -Uinv.at(i, c);
  }

  // S <- S*F with F = (col i += k * col j).
  void col_addmul(int i, int j, mpz_class const& k) {
    for (int r = 0; r < S.rows; ++r) S.at(r, i) += k * S.at(r, j);
    for (int c = 0; c < V.cols; ++c) V.at(j, c) -= k * V.at(i, c);
    for (int r = 0; r < Vinv.rows; ++r) Vinv.at(r, i) += k * Vinv.at(r, j);
  }

  void col_swap(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < S.rows; ++r) std::swap(S.at(r, i), S.at(r, j));
    for (int c = 0; c < V.cols; ++c) std::swap(V.at(i, c), V.at(j, c));
    for (int r = 0; r < Vinv.rows; ++r) std::swap(Vinv.at(r, i), Vinv.at(r, j));
  }
};

}  // namespace detail

inline SNFResult smith_normal_form(IntMat const& A) {
  detail::SnfWork w{A, IntMat::identity(A.rows), IntMat::identity(A.rows),
                    IntMat::identity(A.cols), IntMat::identity(A.cols)};
  int t = 0;
  int const n = std::min(A.rows, A.cols);
  while (t < n) {
    // Pivot: minimal |value| among remaining entries (deterministic
    // tie-break by position) keeps intermediate growth tame.
    int pi = -1, pj = -1;
    mpz_class best;
    for (int i = t; i < w.S.rows; ++i) {
      for (int j = t; j < w.S.cols; ++j) {
        mpz_class const& v = w.S.at(i, j);
        if (v == 0) continue;
        mpz_class av = abs(v);
        if (pi < 0 || av < best) {
          pi = i;
          pj = j;
          best = av;
        }
      }
    }
    if (pi < 0) break;  // submatrix is zero
    w.row_swap(t, pi);
    w.col_swap(t, pj);
    bool settled = false;
    while (!settled) {
      settled = true;
      for (int i = t + 1; i < w.S.rows; ++i) {
        if (w.S.at(i, t) == 0) continue;
        mpz_class q = w.S.at(i, t) / w.S.at(t, t);  // truncated division
        if (q != 0) w.row_addmul(i, t, -q);
        if (w.S.at(i, t) != 0) {
          // Remainder is strictly smaller than the pivot: promote it.
          w.row_swap(t, i);
          settled = false;
        }
      }
      if (!settled) continue;
      for (int j = t + 1; j < w.S.cols; ++j) {
        if (w.S.at(t, j) == 0) continue;
        mpz_class q = w.S.at(t, j) / w.S.at(t, t);
        if (q != 0) w.col_addmul(j, t, -q);
        if (w.S.at(t, j) != 0) {
          w.col_swap(t, j);
          settled = false;
        }
      }
      if (!settled) continue;
      // Divisibility: the pivot must divide the whole remaining block;
      // folding an offending row into row t restarts the reduction with a
      // strictly smaller pivot eventually.
      for (int i = t + 1; i < w.S.rows && settled; ++i) {
        for (int j = t + 1; j < w.S.cols && settled; ++j) {
          if (w.S.at(i, j) % w.S.at(t, t) != 0) {
            w.row_addmul(t, i, 1);
            settled = false;
          }
        }
      }
    }
    if (w.S.at(t, t) < 0) w.row_negate(t);
    ++t;
  }
  SNFResult res{std::move(w.U), std::move(w.S), std::move(w.V),
                std::move(w.Uinv), std::move(w.Vinv), 0, {}};
  for (int i = 0; i < n; ++i) {
    if (res.S.at(i, i) != 0) {
      res.divisors.push_back(res.S.at(i, i));
      ++res.rank;
    }
  }
  return res;
}

// Rank over Q by fraction-free (Bareiss) elimination.  Every intermediate
// entry is (up to sign) a minor of the input, so entry sizes stay within the
// Hadamard bound.  This is the safe path for the relation matrices of
// finite-index covers, where a tracked Smith reduction can suffer severe
// intermediate growth; when only the rank is needed, prefer this.
inline int rank(IntMat const& A) {
  IntMat m = A;
  int r = 0;
  mpz_class prev = 1;
  while (r < m.rows && r < m.cols) {
    // Smallest |value| in the remaining block as pivot (position tie-break).
    int pi = -1, pj = -1;
    mpz_class best;
    for (int i = r; i < m.rows; ++i) {
      for (int j = r; j < m.cols; ++j) {
        if (m.at(i, j) == 0) continue;
        mpz_class av = abs(m.at(i, j));
        if (pi < 0 || av < best) {
          pi = i;
          pj = j;
          best = av;
        }
      }
    }
    if (pi < 0) break;  // remaining block is zero
    if (pi != r) {
      for (int c = r; c < m.cols; ++c) std::swap(m.at(r, c), m.at(pi, c));
    }
    if (pj != r) {
      for (int i = r; i < m.rows; ++i) std::swap(m.at(i, r), m.at(i, pj));
    }
    for (int i = r + 1; i < m.rows; ++i) {
      for (int j = r + 1; j < m.cols; ++j) {
        mpz_class num = m.at(i, j) * m.at(r, r) - m.at(i, r) * m.at(r, j);
        // Exact by Sylvester's determinant identity.
        mpz_divexact(m.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m.at(i, r) = 0;
    }
    prev = m.at(r, r);
    ++r;
  }
  return r;
}

// Basis of the integer kernel {x : A x = 0} as matrix rows.  The basis spans
// a saturated lattice (it is V^-1 applied to trailing unit vectors).
inline IntMat kernel_basis(IntMat const& A) {
  SNFResult snf = smith_normal_form(A);
  int k = A.cols - snf.rank;
  IntMat out(k, A.cols);
  for (int b = 0; b < k; ++b) {
    for (int i = 0; i < A.cols; ++i) {
      out.at(b, i) = snf.Vinv.at(i, snf.rank + b);
    }
  }
  return out;
}

// Row-style Hermite normal form of the lattice spanned by the input rows:
// canonical basis, pivots positive, entries above each pivot reduced into
// [0, pivot).  Zero rows are dropped.
inline IntMat hermite_normal_form(IntMat const& A) {
  IntMat m = A;
  int pr = 0;
  for (int col = 0; col < m.cols && pr < m.rows; ++col) {
    // gcd the column entries below pr into one row
    while (true) {
      int piv = -1;
      mpz_class best;
      for (int i = pr; i < m.rows; ++i) {
        if (m.at(i, col) == 0) continue;
        mpz_class av = abs(m.at(i, col));
        if (piv < 0 || av < best) {
          piv = i;
          best = av;
        }
      }
      if (piv < 0) break;
      if (piv != pr) {
        for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(piv, j));
      }
      bool clean = true;
      for (int i = pr + 1; i < m.rows; ++i) {
        if (m.at(i, col) == 0) continue;
        mpz_class q = m.at(i, col) / m.at(pr, col);
        if (q != 0) {
          for (int j = 0; j < m.cols; ++j) m.at(i, j) -= q * m.at(pr, j);
        }
        if (m.at(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (m.at(pr, col) == 0) continue;
    if (m.at(pr, col) < 0) {
      for (int j = 0; j < m.cols; ++j) m.at(pr, j) = -m.at(pr, j);
    }
    for (int i = 0; i < pr; ++i) {
      // floor division keeps the reduced entry in [0, pivot)
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), m.at(i, col).get_mpz_t(), m.at(pr, col).get_mpz_t());
      if (q != 0) {
        for (int j = 0; j < m.cols; ++j) m.at(i, j) -= q * m.at(pr, j);
      }
    }
    ++pr;
  }
  IntMat out(pr, m.cols);
  for (int i = 0; i < pr; ++i) {
    for (int j = 0; j < m.cols; ++j) out.at(i, j) = m.at(i, j);
  }
  return out;
}

// Fraction-free (Bareiss) determinant.
inline mpz_class det(IntMat const& A) {
  if (A.rows != A.cols) throw DimensionMismatch("det of non-square matrix");
  int n = A.rows;
  if (n == 0) return 1;
  IntMat m = A;
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i) {
        if (m.at(i, k) != 0) {
          swap_row = i;
          break;
        }
      }
      if (swap_row < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap_row, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        mpz_class num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(m.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

inline bool is_unimodular(IntMat const& m) {
  return m.rows == m.cols && abs(det(m)) == 1;
}

// Rank of A over the field with p elements.
inline int rank_mod_p(IntMat const& A, long p) {
  std::vector<std::vector<long>> m(static_cast<std::size_t>(A.rows),
                                   std::vector<long>(static_cast<std::size_t>(A.cols)));
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) {
      mpz_class r = A.at(i, j) % p;
      long v = r.get_si();
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ((v % p) + p) % p;
    }
  }
  int rk = 0;
  for (int col = 0; col < A.cols && rk < A.rows; ++col) {
    int piv = -1;
    for (int i = rk; i < A.rows; ++i) {
      if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(m[static_cast<std::size_t>(rk)], m[static_cast<std::size_t>(piv)]);
    // scale pivot row to 1 via modular inverse (p prime)
    long pv = m[static_cast<std::size_t>(rk)][static_cast<std::size_t>(col)];
    long inv = 1, base = pv % p, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    for (int j = col; j < A.cols; ++j) {
      m[static_cast<std::size_t>(rk)][static_cast<std::size_t>(j)] =
          m[static_cast<std::size_t>(rk)][static_cast<std::size_t>(j)] * inv % p;
    }
    for (int i = 0; i < A.rows; ++i) {
      if (i == rk) continue;
      long f = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (int j = col; j < A.cols; ++j) {
        long sub = f * m[static_cast<std::size_t>(rk)][static_cast<std::size_t>(j)] % p;
        long& cell = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        cell = ((cell - sub) % p + p) % p;
      }
    }
    ++rk;
  }
  return rk;
}

// Content (gcd of entries) of a row vector; 0 for the zero vector.
inline mpz_class content(std::vector<mpz_class> const& v) {
  mpz_class g = 0;
  for (auto const& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

// Divide by the content and make the first nonzero entry positive.
inline std::vector<mpz_class> primitivize(std::vector<mpz_class> v) {
  mpz_class g = content(v);
  if (g == 0) return v;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  for (auto const& x : v) {
    if (x != 0) {
      if (x < 0) {
        for (auto& y : v) y = -y;
      }
      break;
    }
  }
  return v;
}

inline int lex_compare(std::vector<mpz_class> const& x,
                       std::vector<mpz_class> const& y) {
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    int c = cmp(x[i], y[i]);
    if (c != 0) return c;
  }
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  return 0;
}

inline std::vector<mpz_class> matrix_row(IntMat const& m, int i) {
  std::vector<mpz_class> r(static_cast<std::size_t>(m.cols));
  for (int j = 0; j < m.cols; ++j) r[static_cast<std::size_t>(j)] = m.at(i, j);
  return r;
}

}  // namespace haken
