#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "haken/groebner.hpp"
#include "haken/presentation.hpp"
#include "haken/trace_poly.hpp"

using namespace haken;

namespace {

TracePolynomial X() { return TracePolynomial::variable(0); }
TracePolynomial Y() { return TracePolynomial::variable(1); }
TracePolynomial Z() { return TracePolynomial::variable(2); }
TracePolynomial C(long c) { return TracePolynomial::constant(c); }

TraceIdeal ideal_of(std::vector<TracePolynomial> gens) {
  TraceIdeal I;
  I.generators = std::move(gens);
  return I;
}

// no leading monomial may divide any term of another basis element
bool fully_reduced(GroebnerBasis const& gb) {
  for (std::size_t i = 0; i < gb.polys.size(); ++i) {
    for (std::size_t j = 0; j < gb.polys.size(); ++j) {
      if (i == j) continue;
      for (auto const& [m, c] : gb.polys[j].terms) {
        if (detail::monomial_divides(gb.polys[i].leading_monomial(), m)) {
          return false;
        }
      }
    }
  }
  return true;
}

bool well_formed(GroebnerBasis const& gb) {
  for (auto const& g : gb.polys) {
    if (g.is_zero()) return false;
    if (g.leading_coefficient() <= 0) return false;
    if (g.content() != 1) return false;
  }
  return fully_reduced(gb) && s_polynomials_reduce_to_zero(gb);
}

TracePolynomial random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(1, 3);
  std::uniform_int_distribution<int> expo(0, 2);
  std::uniform_int_distribution<long> coeff(-3, 3);
  TracePolynomial p;
  int const n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Monomial m{expo(rng), expo(rng), expo(rng)};
    while (total_degree(m) > 2) m = {expo(rng), expo(rng), expo(rng)};
    p.add_term(m, coeff(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("groebner basis of simple ideals") {
  SECTION("zero ideal") {
    GroebnerBasis gb = groebner_basis(ideal_of({}));
    CHECK(gb.polys.empty());
    CHECK(gb.monomial_order == "grevlex x>y>z");
    CHECK(groebner_dimension(gb) == 3);
  }
  SECTION("maximal ideal") {
    GroebnerBasis gb = groebner_basis(ideal_of({X(), Y(), Z()}));
    REQUIRE(gb.polys.size() == 3);
    CHECK(gb.polys[0] == X());
    CHECK(gb.polys[1] == Y());
    CHECK(gb.polys[2] == Z());
    CHECK(groebner_dimension(gb) == 0);
    CHECK(well_formed(gb));
  }
  SECTION("principal hypersurface") {
    TracePolynomial kappa =
        X() * X() + Y() * Y() + Z() * Z() - X() * Y() * Z() - C(4);
    GroebnerBasis gb = groebner_basis(ideal_of({kappa}));
    REQUIRE(gb.polys.size() == 1);
    // sign normalized: leading coefficient (on x*y*z) becomes positive
    CHECK(gb.polys[0] == -kappa);
    CHECK(groebner_dimension(gb) == 2);
  }
  SECTION("unit ideal") {
    GroebnerBasis gb = groebner_basis(ideal_of({X(), X() + C(1)}));
    REQUIRE(gb.polys.size() == 1);
    CHECK(gb.polys[0] == C(1));
    CHECK(groebner_dimension(gb) == -1);
  }
  SECTION("content is cleared") {
    GroebnerBasis gb = groebner_basis(ideal_of({C(2) * X(), C(3) * X()}));
    REQUIRE(gb.polys.size() == 1);
    CHECK(gb.polys[0] == X());
  }
}

TEST_CASE("linear point ideal") {
  // <x - 1, y - 2>: normal forms and dimension (z stays free)
  GroebnerBasis gb = groebner_basis(ideal_of({X() - C(1), Y() - C(2)}));
  CHECK(groebner_dimension(gb) == 1);
  CHECK(normal_form(X() + Y() - C(3), gb).is_zero());
  CHECK(normal_form(X() * Y() - C(2), gb).is_zero());
  CHECK_FALSE(normal_form(Z(), gb).is_zero());
  CHECK_FALSE(normal_form(C(1), gb).is_zero());
}

TEST_CASE("character ideal dimensions") {
  struct Pin {
    char const* text;
    int dim;
  };
  // frozen against the hand analysis of each variety: the trefoil-type
  // relator carries a curve, the Klein relator a union of lines, the
  // two-involution presentation four isolated characters, the commutator a
  // hypersurface
  std::vector<Pin> pins{
      {"<a,b|abab^-1a^-1b^-1>", 1},
      {"<a,b|abab^-1>", 1},
      {"<a,b|a^2,b^2>", 0},
      {"<a,b|aba^-1b^-1>", 2},
      {"<a,b|>", 3},
  };
  for (auto const& pin : pins) {
    TraceIdeal I =
        character_ideal_2gen(parse_presentation(pin.text, Grammar::compact));
    GroebnerBasis gb = groebner_basis(I);
    INFO(pin.text);
    CHECK(groebner_dimension(gb) == pin.dim);
    CHECK(groebner_dimension(I) == pin.dim);
    CHECK(well_formed(gb));
    for (auto const& g : I.generators) {
      CHECK(normal_form(g, gb).is_zero());
    }
  }
}

TEST_CASE("pinned reduced bases") {
  SECTION("Klein-bottle relator") {
    TraceIdeal I = character_ideal_2gen(
        parse_presentation("<a,b|abab^-1>", Grammar::compact));
    GroebnerBasis gb = groebner_basis(I);
    REQUIRE(gb.polys.size() == 2);
    CHECK(gb.polys[0] == Y() * Y() - Z() * Z());
    CHECK(gb.polys[1] == X() * Z() - C(2) * Y());
  }
  SECTION("two involutions") {
    TraceIdeal I =
        character_ideal_2gen(parse_presentation("<a,b|a^2,b^2>", Grammar::compact));
    GroebnerBasis gb = groebner_basis(I);
    REQUIRE(gb.polys.size() == 6);
    // the full degree-2 chain in canonical order
    CHECK(gb.polys[0] == X() * X() - C(4));
    CHECK(gb.polys[1] == X() * Y() - C(2) * Z());
    CHECK(gb.polys[2] == Y() * Y() - C(4));
    CHECK(gb.polys[3] == X() * Z() - C(2) * Y());
    CHECK(gb.polys[4] == Y() * Z() - C(2) * X());
    CHECK(gb.polys[5] == Z() * Z() - C(4));
  }
  SECTION("trefoil relator") {
    TraceIdeal I = character_ideal_2gen(
        parse_presentation("<a,b|abab^-1a^-1b^-1>", Grammar::compact));
    GroebnerBasis gb = groebner_basis(I);
    REQUIRE(gb.polys.size() == 2);
    CHECK(gb.polys[1] == X() - Y());
    // the curve component: y^2 z^2 - 2 y^2 z - z^3 + y^2 + 3 z - 2
    TracePolynomial curve;
    curve.add_term({0, 2, 2}, 1);
    curve.add_term({0, 2, 1}, -2);
    curve.add_term({0, 0, 3}, -1);
    curve.add_term({0, 2, 0}, 1);
    curve.add_term({0, 0, 1}, 3);
    curve.add_term({0, 0, 0}, -2);
    CHECK(gb.polys[0] == curve);
  }
}

TEST_CASE("basis budget") {
  TraceIdeal I = ideal_of({X() * X() + Y(), X() * Y() + Z()});
  CHECK_THROWS_AS(groebner_basis(I, 0), BasisBudgetExceeded);
  CHECK_THROWS_AS(groebner_dimension(I, 0), BasisBudgetExceeded);
  CHECK_NOTHROW(groebner_basis(I));
}

TEST_CASE("determinism") {
  TraceIdeal I = character_ideal_2gen(
      parse_presentation("<a,b|abab^-1a^-1b^-1>", Grammar::compact));
  GroebnerBasis g1 = groebner_basis(I);
  GroebnerBasis g2 = groebner_basis(I);
  REQUIRE(g1.polys.size() == g2.polys.size());
  for (std::size_t i = 0; i < g1.polys.size(); ++i) {
    CHECK(g1.polys[i] == g2.polys[i]);
    CHECK(g1.polys[i].to_string() == g2.polys[i].to_string());
  }
}

TEST_CASE("random ideals: self-checks and membership") {
  std::mt19937_64 rng(20260822);
  std::uniform_int_distribution<int> ngens(1, 3);
  int budget_hits = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<TracePolynomial> gens;
    int const n = ngens(rng);
    for (int i = 0; i < n; ++i) {
      TracePolynomial p = random_poly(rng);
      if (!p.is_zero()) gens.push_back(p);
    }
    TraceIdeal I = ideal_of(gens);
    GroebnerBasis gb;
    try {
      gb = groebner_basis(I, 20000);
    } catch (BasisBudgetExceeded const&) {
      ++budget_hits;
      continue;
    }
    CHECK(well_formed(gb));
    int const dim = gb.polys.empty() ? 3 : groebner_dimension(gb);
    CHECK(dim >= -1);
    CHECK(dim <= 3);
    for (auto const& g : I.generators) {
      CHECK(normal_form(g, gb).is_zero());
    }
  }
  // the generic small ideal finishes well within budget
  CHECK(budget_hits <= 3);
}
