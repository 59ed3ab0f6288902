#include <catch2/catch_amalgamated.hpp>

#include <gmpxx.h>

#include <random>
#include <vector>

#include "haken/int_matrix.hpp"

using namespace haken;

namespace {

// Independent oracle machinery: cofactor-expansion determinant so the SNF
// invariant-factor check does not lean on the library's Bareiss code.
mpz_class laplace_det(std::vector<std::vector<mpz_class>> const& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  mpz_class acc = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<mpz_class>> sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<mpz_class> row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) row.push_back(m[i][j]);
      }
      sub.push_back(row);
    }
    mpz_class term = m[0][c] * laplace_det(sub);
    acc += (c % 2 == 0) ? term : -term;
  }
  return acc;
}

// gcd of all k x k minors (0 when every minor vanishes).
mpz_class minors_gcd(IntMat const& A, int k) {
  mpz_class g = 0;
  auto subsets = [](int n, int k_) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
      if (static_cast<int>(cur.size()) == k_) {
        out.push_back(cur);
        return;
      }
      for (int i = start; i < n; ++i) {
        cur.push_back(i);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    return out;
  };
  for (auto const& rs : subsets(A.rows, k)) {
    for (auto const& cs : subsets(A.cols, k)) {
      std::vector<std::vector<mpz_class>> sub(static_cast<std::size_t>(k),
                                              std::vector<mpz_class>(static_cast<std::size_t>(k)));
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
          sub[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              A.at(rs[static_cast<std::size_t>(i)], cs[static_cast<std::size_t>(j)]);
        }
      }
      mpz_class d = laplace_det(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  }
  return g;
}

void check_snf_contract(IntMat const& A, SNFResult const& snf) {
  REQUIRE(mul(mul(snf.U, snf.S), snf.V) == A);
  REQUIRE(is_unimodular(snf.U));
  REQUIRE(is_unimodular(snf.V));
  REQUIRE(mul(snf.U, snf.Uinv) == IntMat::identity(A.rows));
  REQUIRE(mul(snf.V, snf.Vinv) == IntMat::identity(A.cols));
  for (int i = 0; i < snf.S.rows; ++i) {
    for (int j = 0; j < snf.S.cols; ++j) {
      if (i != j) REQUIRE(snf.S.at(i, j) == 0);
    }
  }
  for (std::size_t i = 0; i + 1 < snf.divisors.size(); ++i) {
    REQUIRE(snf.divisors[i] > 0);
    REQUIRE(snf.divisors[i + 1] % snf.divisors[i] == 0);
  }
}

}  // namespace

TEST_CASE("smith normal form: pinned small cases", "[snf]") {
  SECTION("identity") {
    IntMat I3 = IntMat::identity(3);
    SNFResult snf = smith_normal_form(I3);
    REQUIRE(snf.S == I3);
    REQUIRE(snf.rank == 3);
  }
  SECTION("zero") {
    IntMat Z(2, 3);
    SNFResult snf = smith_normal_form(Z);
    REQUIRE(snf.S.is_zero());
    REQUIRE(snf.rank == 0);
  }
  SECTION("invariant factors 2, 4") {
    IntMat A = IntMat::from_rows({{2, 4}, {6, 8}});
    SNFResult snf = smith_normal_form(A);
    REQUIRE(snf.divisors == std::vector<mpz_class>{2, 4});
    check_snf_contract(A, snf);
  }
}

TEST_CASE("smith normal form: 1000-case random property suite", "[snf]") {
  std::mt19937 rng(123456789);
  std::uniform_int_distribution<int> dim(1, 8);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int trial = 0; trial < 1000; ++trial) {
    int r = dim(rng), c = dim(rng);
    IntMat A(r, c);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < c; ++j) A.at(i, j) = entry(rng);
    }
    SNFResult snf = smith_normal_form(A);
    check_snf_contract(A, snf);
    if (r <= 4 && c <= 4) {
      // invariant-factor products equal gcds of k x k minors
      mpz_class prod = 1;
      for (int k = 1; k <= std::min(r, c); ++k) {
        mpz_class g = minors_gcd(A, k);
        if (k <= static_cast<int>(snf.divisors.size())) {
          prod *= snf.divisors[static_cast<std::size_t>(k - 1)];
          REQUIRE(g == prod);
        } else {
          REQUIRE(g == 0);
        }
      }
    }
  }
}

TEST_CASE("kernel basis: exactness and saturation", "[snf]") {
  IntMat A = IntMat::from_rows({{1, 2, 3}, {2, 4, 6}});
  IntMat K = kernel_basis(A);
  REQUIRE(K.rows == 2);
  for (int b = 0; b < K.rows; ++b) {
    for (int i = 0; i < A.rows; ++i) {
      mpz_class dot = 0;
      for (int j = 0; j < A.cols; ++j) dot += A.at(i, j) * K.at(b, j);
      REQUIRE(dot == 0);
    }
  }
  // saturated: the quotient by the kernel lattice is torsion free
  SNFResult snf = smith_normal_form(K);
  for (auto const& d : snf.divisors) REQUIRE(d == 1);

  REQUIRE(kernel_basis(IntMat::identity(3)).rows == 0);
}

TEST_CASE("hermite normal form: canonical lattice basis", "[snf]") {
  IntMat A = IntMat::from_rows({{2, 0}, {0, 2}, {1, 1}});
  IntMat H = hermite_normal_form(A);
  REQUIRE(H == IntMat::from_rows({{1, 1}, {0, 2}}));

  // basis-change invariance: row-shuffled and row-summed bases agree
  IntMat B = IntMat::from_rows({{1, 1}, {2, 0}, {3, 1}});
  REQUIRE(hermite_normal_form(B) == H);

  IntMat Z(2, 4);
  REQUIRE(hermite_normal_form(Z).rows == 0);
}

TEST_CASE("determinant: Bareiss vs cofactor expansion", "[snf]") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + trial % 5;
    IntMat A(n, n);
    std::vector<std::vector<mpz_class>> copy(static_cast<std::size_t>(n),
                                             std::vector<mpz_class>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        A.at(i, j) = entry(rng);
        copy[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = A.at(i, j);
      }
    }
    REQUIRE(det(A) == laplace_det(copy));
  }
  REQUIRE(det(IntMat::identity(4)) == 1);
}

TEST_CASE("rank over prime fields", "[snf]") {
  IntMat A = IntMat::from_rows({{2, 0}, {0, 2}});
  REQUIRE(rank_mod_p(A, 2) == 0);
  REQUIRE(rank_mod_p(A, 3) == 2);
  IntMat B = IntMat::from_rows({{1, 2, 3}, {2, 4, 6}, {0, 0, 5}});
  REQUIRE(rank_mod_p(B, 5) == 1);
  REQUIRE(rank_mod_p(B, 7) == 2);
  REQUIRE(rank(B) == 2);
}

TEST_CASE("primitivize and lexicographic compare", "[snf]") {
  std::vector<mpz_class> v{-4, 6, -2};
  REQUIRE(primitivize(v) == std::vector<mpz_class>{2, -3, 1});
  std::vector<mpz_class> zero{0, 0};
  REQUIRE(primitivize(zero) == zero);
  REQUIRE(lex_compare({0, 1}, {1, 0}) < 0);
  REQUIRE(lex_compare({1, 0}, {1, 0}) == 0);
  REQUIRE(lex_compare({1, 2}, {1, 1}) > 0);
}
