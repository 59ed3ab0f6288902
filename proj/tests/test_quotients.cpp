#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "corpus.hpp"
#include "haken/coset.hpp"
#include "haken/homology.hpp"
#include "haken/quotients.hpp"

using namespace haken;

TEST_CASE("affine isometry composition and inversion") {
  AffineGroup A;
  AffineIsometry x{-1, 0}, y{-1, 1};
  CHECK(A.multiply(x, y) == AffineIsometry{1, -1});
  CHECK(A.multiply(y, x) == AffineIsometry{1, 1});
  CHECK(A.invert(AffineIsometry{-1, 5}) == AffineIsometry{-1, 5});
  CHECK(A.invert(AffineIsometry{1, 3}) == AffineIsometry{1, -3});
  CHECK(A.multiply(AffineIsometry{-1, 5}, A.invert(AffineIsometry{-1, 5})) ==
        A.identity());
  // word ab evaluated at (x, y) applies y first
  CHECK(evaluate_word(A, Word({1, 2}), std::vector<AffineIsometry>{x, y}) ==
        AffineIsometry{1, -1});
}

TEST_CASE("enumerate_epimorphisms onto dihedral targets") {
  // the presentation of D10 itself maps onto D10
  Presentation p = parse_presentation("<a,b|a^2,b^2,ababababab>", Grammar::compact);
  EpimorphismReport rep = enumerate_epimorphisms(p, dihedral(5));
  REQUIRE(rep.classes.size() == 2);  // two classes, swapped by the outer automorphism
  CHECK(rep.kernel_count == 1);      // ... but one kernel: both are isomorphisms
  CHECK(rep.kernel_ids == std::vector<int>{0, 0});
  for (auto const& tuple : rep.classes) {
    // canonical representatives actually satisfy the relators and surject
    FiniteGroupModel T = dihedral(5);
    for (auto const& r : p.relators) CHECK(evaluate_word(T, r, tuple) == 0);
  }
}

TEST_CASE("enumerate_epimorphisms empty and budget cases") {
  CHECK(enumerate_epimorphisms(parse_presentation("<a|a^2>", Grammar::compact), alt(5))
            .classes.empty());
  CHECK_THROWS_AS(
      enumerate_epimorphisms(parse_presentation("<a,b,c|>", Grammar::compact), alt(5), 1000),
      SearchBudgetExceeded);

  // abelian target: conjugacy is trivial, so classes = homs; kernels fold
  EpimorphismReport rep =
      enumerate_epimorphisms(parse_presentation("<a|a^6>", Grammar::compact), cyclic(6));
  REQUIRE(rep.classes.size() == 2);  // a -> 1 and a -> 5
  CHECK(rep.kernel_count == 1);
}

TEST_CASE("the census presentation has exactly two alternating covers") {
  Presentation p = corpus::census_presentation();
  EpimorphismReport rep = enumerate_epimorphisms(p, alt(5));
  REQUIRE_FALSE(rep.classes.empty());
  CHECK(rep.kernel_count == 2);

  // each kernel is a normal index-60 subgroup with first Betti number 4
  std::set<int> seen;
  for (std::size_t i = 0; i < rep.classes.size(); ++i) {
    if (!seen.insert(rep.kernel_ids[i]).second) continue;
    SubgroupRecord rec = kernel_table(p, alt(5), rep.classes[i]);
    REQUIRE(rec.table.size == 60);
    REQUIRE(rec.normal);
    CHECK(b1(reidemeister_schreier(rec)) == 4);
  }
}

TEST_CASE("dihedral spectra") {
  CHECK(dihedral_spectrum(dinfty_reflections(), 6) ==
        std::vector<long>{2, 3, 4, 5, 6});
  CHECK(dihedral_spectrum(parse_presentation("<a,b|a^2,b^2,ababab>", Grammar::compact), 8) ==
        std::vector<long>{3});
  CHECK(dihedral_spectrum(parse_presentation("<a|a^5>", Grammar::compact), 5).empty());
  CHECK(dihedral_spectrum(parse_presentation("<a,b|abab^-1>", Grammar::compact), 5) ==
        std::vector<long>{2, 3, 4, 5});
  CHECK_THROWS_AS(dihedral_spectrum(dinfty_reflections(), 1), Error);
}

TEST_CASE("infinite dihedral decision: positive certificates") {
  SECTION("reflection presentation") {
    DInftyVerdict v = infinite_dihedral_decide(dinfty_reflections());
    REQUIRE(v.positive);
    REQUIRE(v.certificate.size() == 2);
    CHECK(v.certificate[0] == AffineIsometry{-1, 0});
    CHECK(v.certificate[1] == AffineIsometry{-1, 1});
    CHECK(verify_dinfty_certificate(dinfty_reflections(), v.certificate));

    REQUIRE(v.sign_table.size() == 4);
    CHECK(v.sign_table[0].signs == std::vector<int>{1, 1});
    CHECK_FALSE(v.sign_table[0].has_reflection);
    CHECK_FALSE(v.sign_table[1].infinite_image);  // (+1,-1): c_a forced to 0
    CHECK_FALSE(v.sign_table[2].infinite_image);  // (-1,+1): c_b forced to 0
    CHECK(v.sign_table[3].infinite_image);        // (-1,-1): free lattice Z^2
    CHECK(v.sign_table[3].kernel_rank == 2);
    CHECK(v.sign_table[3].fixed_rank == 1);

    REQUIRE(v.double_covers.size() == 3);
    CHECK(v.double_covers[0].signs == std::vector<int>{1, -1});
    CHECK(v.double_covers[0].b1 == 0);
    CHECK(v.double_covers[1].b1 == 0);
    CHECK(v.double_covers[2].signs == std::vector<int>{-1, -1});
    CHECK(v.double_covers[2].b1 == 1);  // the translation subgroup

    REQUIRE(v.pair_assignments.size() == 4);
    CHECK(v.pair_assignments[0].relators_hold);   // (x, y)
    CHECK(v.pair_assignments[0].infinite_image);
    CHECK_FALSE(v.pair_assignments[1].relators_hold);  // (x, xy): b^2 != 1
    CHECK_FALSE(v.pair_assignments[2].relators_hold);  // (xy, x): a^2 != 1
    CHECK(v.pair_assignments[3].relators_hold);   // (y, x)
    CHECK(v.pair_assignments[3].infinite_image);
  }
  SECTION("semidirect presentation") {
    Presentation p = parse_presentation("<a,b|a^2,aba^-1b>", Grammar::compact);
    DInftyVerdict v = infinite_dihedral_decide(p);
    REQUIRE(v.positive);
    CHECK(v.certificate == std::vector<AffineIsometry>{{-1, 0}, {1, 1}});
    CHECK(verify_dinfty_certificate(p, v.certificate));
  }
  SECTION("Klein-bottle group") {
    Presentation p = parse_presentation("<a,b|abab^-1>", Grammar::compact);
    DInftyVerdict v = infinite_dihedral_decide(p);
    REQUIRE(v.positive);
    CHECK(v.certificate == std::vector<AffineIsometry>{{1, 1}, {-1, 0}});
    CHECK(verify_dinfty_certificate(p, v.certificate));
  }
  SECTION("free group of rank 2") {
    Presentation p = parse_presentation("<a,b|>", Grammar::compact);
    DInftyVerdict v = infinite_dihedral_decide(p);
    REQUIRE(v.positive);
    CHECK(v.certificate == std::vector<AffineIsometry>{{1, 1}, {-1, 0}});
  }
}

TEST_CASE("infinite dihedral decision matches corpus ground truth") {
  std::set<std::string> positive{"dinfty_refl", "dinfty_semi", "free2", "klein_bottle"};
  for (auto const& e : corpus::entries()) {
    INFO(e.name);
    DInftyVerdict v = infinite_dihedral_decide(corpus::parse(e));
    REQUIRE(v.positive == (positive.count(e.name) == 1));
    if (v.positive) {
      // soundness: the certificate re-verifies
      REQUIRE(verify_dinfty_certificate(corpus::parse(e), v.certificate));
      // necessary conditions: full dihedral spectrum, and a double cover
      // with positive first Betti number
      REQUIRE(dihedral_spectrum(corpus::parse(e), 5) ==
              std::vector<long>{2, 3, 4, 5});
      long best = 0;
      for (auto const& dc : v.double_covers) best = std::max(best, dc.b1);
      REQUIRE(best > 0);
    } else {
      CHECK(v.certificate.empty());
    }
  }
}

TEST_CASE("quotient fingerprints") {
  SECTION("isomorphic presentations collide") {
    QuotientFingerprint a = quotient_fingerprint(dinfty_reflections(), 12);
    QuotientFingerprint b = quotient_fingerprint(
        parse_presentation("<a,b|a^2,aba^-1b>", Grammar::compact), 12);
    CHECK(a == b);
    CHECK(a.hash == b.hash);
    CHECK(a.canonical == b.canonical);
  }
  SECTION("different groups separate") {
    QuotientFingerprint two = quotient_fingerprint(
        parse_presentation("<a|a^2>", Grammar::compact), 12);
    QuotientFingerprint three = quotient_fingerprint(
        parse_presentation("<a|a^3>", Grammar::compact), 12);
    CHECK_FALSE(two == three);
    long two_onto_z2 = -1, three_onto_z3 = -1;
    for (auto const& [name, classes, kernels] : two.counts) {
      if (name == "Z/2") two_onto_z2 = classes;
    }
    for (auto const& [name, classes, kernels] : three.counts) {
      if (name == "Z/3") three_onto_z3 = classes;
      if (name == "Z/2") CHECK(classes == 0);
    }
    CHECK(two_onto_z2 == 1);
    CHECK(three_onto_z3 == 2);
  }
  SECTION("Z/4 and the Klein group differ") {
    QuotientFingerprint z4 =
        quotient_fingerprint(parse_presentation("<a|a^4>", Grammar::compact), 12);
    QuotientFingerprint klein = quotient_fingerprint(
        parse_presentation("<a,b|a^2,b^2,aba^-1b^-1>", Grammar::compact), 12);
    CHECK_FALSE(z4 == klein);
  }
  SECTION("random Tietze moves preserve the fingerprint") {
    std::mt19937_64 rng(555777);
    for (auto const* name : {"sym3", "dinfty_refl"}) {
      Presentation p = corpus::parse(corpus::by_name(name));
      QuotientFingerprint base = quotient_fingerprint(p, 12);
      for (int trial = 0; trial < 5; ++trial) {
        Presentation q = corpus::tietze_shuffle(p, rng, 3);
        INFO(name << " trial " << trial);
        REQUIRE(quotient_fingerprint(q, 12) == base);
      }
    }
  }
  SECTION("census fingerprint: abelian-blind but sees the alternating cover") {
    QuotientFingerprint fp = quotient_fingerprint(corpus::census_presentation(), 60);
    bool saw_a5 = false;
    for (auto const& [name, classes, kernels] : fp.counts) {
      if (name == "A5") {
        saw_a5 = true;
        CHECK(classes >= 1);
        CHECK(kernels == 2);
      }
      if (name.starts_with("Z/")) CHECK(classes == 0);
    }
    CHECK(saw_a5);
  }
  SECTION("bound validation") {
    CHECK_THROWS_AS(quotient_fingerprint(dinfty_reflections(), 1), Error);
    CHECK_THROWS_AS(quotient_fingerprint(dinfty_reflections(), 400), Error);
  }
}

TEST_CASE("fingerprint target list is deterministic and bound-filtered") {
  auto t12 = fingerprint_targets(12);
  REQUIRE(t12.size() == 23);
  CHECK(t12.front().name == "Z/2");
  CHECK(t12.back().name == "Z/2 x Z/6");
  auto t60 = fingerprint_targets(60);
  REQUIRE(t60.size() == 30);  // 27 catalog + S4, SL2(3), A5
  CHECK(t60[27].name == "S4");
  CHECK(t60[28].name == "SL2(3)");
  CHECK(t60[29].name == "A5");
}
