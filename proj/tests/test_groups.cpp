#include <map>
#include <random>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "corpus.hpp"
#include "haken/finite_group.hpp"
#include "haken/word.hpp"

using namespace haken;

static_assert(GroupCarrier<FiniteGroupModel>);

namespace {

std::map<long, long> order_multiset(FiniteGroupModel const& G) {
  std::map<long, long> counts;
  for (int x = 0; x < G.order; ++x) ++counts[element_order(G, x)];
  return counts;
}

long generated_subgroup_size(FiniteGroupModel const& G, std::vector<int> const& gens) {
  std::vector<char> seen(static_cast<std::size_t>(G.order), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  long count = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int g : gens) {
      int y = G.multiply(x, g);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count;
}

void check_table_group(FiniteGroupModel const& G, std::mt19937_64& rng) {
  INFO(G.name);
  REQUIRE(G.order >= 1);
  REQUIRE(G.mul.size() == static_cast<std::size_t>(G.order) * static_cast<std::size_t>(G.order));
  REQUIRE(G.inv.size() == static_cast<std::size_t>(G.order));
  for (auto v : G.mul) REQUIRE(v < G.order);
  for (int x = 0; x < G.order; ++x) {
    REQUIRE(G.multiply(0, x) == x);
    REQUIRE(G.multiply(x, 0) == x);
    REQUIRE(G.multiply(x, G.invert(x)) == 0);
    REQUIRE(G.multiply(G.invert(x), x) == 0);
    REQUIRE(G.order % element_order(G, x) == 0);  // Lagrange
  }
  std::uniform_int_distribution<int> pick(0, G.order - 1);
  for (int t = 0; t < 300; ++t) {
    int x = pick(rng), y = pick(rng), z = pick(rng);
    REQUIRE(G.multiply(G.multiply(x, y), z) == G.multiply(x, G.multiply(y, z)));
  }
  // every row and column of the table is a permutation
  std::vector<char> seen(static_cast<std::size_t>(G.order));
  for (int x = 0; x < G.order; ++x) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int y = 0; y < G.order; ++y) seen[static_cast<std::size_t>(G.multiply(x, y))] = 1;
    for (char s : seen) REQUIRE(s == 1);
  }
  REQUIRE(generated_subgroup_size(G, G.generators) == G.order);
}

}  // namespace

TEST_CASE("catalog_up_to(12) is the pinned isomorphism-class list") {
  auto cat = catalog_up_to(12);
  std::vector<std::string> names;
  for (auto const& G : cat) names.push_back(G.name);
  std::vector<std::string> expected{
      "Z/2", "Z/3", "Z/2 x Z/2", "Z/4", "Z/5", "D6", "Z/6", "Z/7",
      "D8", "Dic2", "Z/2 x Z/2 x Z/2", "Z/2 x Z/4", "Z/8",
      "Z/3 x Z/3", "Z/9", "D10", "Z/10", "Z/11",
      "A4", "D12", "Dic3", "Z/12", "Z/2 x Z/6"};
  CHECK(names == expected);
  for (std::size_t i = 0; i < cat.size(); ++i) {
    long expected_order =
        std::vector<long>{2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8,
                          9, 9, 10, 10, 11, 12, 12, 12, 12, 12}[i];
    CHECK(cat[i].order == expected_order);
  }
}

TEST_CASE("catalog_up_to(15) adds exactly the order 13..15 groups") {
  auto cat = catalog_up_to(15);
  REQUIRE(cat.size() == 27);
  std::vector<std::string> tail;
  for (auto const& G : cat) {
    if (G.order > 12) tail.push_back(G.name);
  }
  CHECK(tail == std::vector<std::string>{"Z/13", "D14", "Z/14", "Z/15"});
  // deterministic across calls
  auto again = catalog_up_to(15);
  for (std::size_t i = 0; i < cat.size(); ++i) {
    CHECK(cat[i].name == again[i].name);
    CHECK(cat[i].mul == again[i].mul);
  }
  CHECK_THROWS_AS(catalog_up_to(16), Error);
  CHECK_THROWS_AS(catalog_up_to(1), Error);
}

TEST_CASE("table groups are well-formed") {
  std::mt19937_64 rng(20260822);
  for (auto const& G : catalog_up_to(15)) check_table_group(G, rng);
  for (auto G : {sym(3), sym(4), alt(4), alt(5), dicyclic(3), abelian({2, 4}),
                 sl2_model(2), sl2_model(3), sl2_model(4), sl2_model(5), sl2_model(7),
                 psl2_model(2), psl2_model(3), psl2_model(4), psl2_model(5),
                 psl2_model(7)}) {
    check_table_group(G, rng);
  }
}

TEST_CASE("dihedral groups have the dihedral relations") {
  FiniteGroupModel D10 = dihedral(5);
  REQUIRE(D10.order == 10);
  int r = D10.generators[0], s = D10.generators[1];
  CHECK(element_order(D10, r) == 5);
  CHECK(element_order(D10, s) == 2);
  CHECK(D10.multiply(D10.multiply(s, r), s) == D10.invert(r));

  // corpus presentation relators hold under r, s
  Presentation p = parse_presentation("<r,s|r^5,s^2,rsrs>", Grammar::compact);
  for (auto const& rel : p.relators) {
    CHECK(evaluate_word(D10, rel, std::vector<int>{r, s}) == 0);
  }
}

TEST_CASE("quaternion and dicyclic structure") {
  FiniteGroupModel Q8 = dicyclic(2);
  REQUIRE(Q8.order == 8);
  int a = Q8.generators[0], b = Q8.generators[1];
  CHECK(Q8.multiply(b, b) == Q8.multiply(a, a));  // b^2 = a^2
  CHECK(Q8.multiply(Q8.multiply(b, a), Q8.invert(b)) == Q8.invert(a));
  auto counts = order_multiset(Q8);
  CHECK(counts == std::map<long, long>{{1, 1}, {2, 1}, {4, 6}});  // one involution

  auto dic3 = order_multiset(dicyclic(3));
  CHECK(dic3 == std::map<long, long>{{1, 1}, {2, 1}, {3, 2}, {4, 6}, {6, 2}});
}

TEST_CASE("symmetric and alternating element-order statistics") {
  CHECK(order_multiset(sym(3)) == order_multiset(dihedral(3)));
  CHECK(order_multiset(alt(4)) == std::map<long, long>{{1, 1}, {2, 3}, {3, 8}});
  CHECK(order_multiset(sym(4)) ==
        std::map<long, long>{{1, 1}, {2, 9}, {3, 8}, {4, 6}});
  CHECK(order_multiset(alt(5)) ==
        std::map<long, long>{{1, 1}, {2, 15}, {3, 20}, {5, 24}});
}

TEST_CASE("SL2 and PSL2 model orders") {
  CHECK(sl2_model(2).order == 6);
  CHECK(sl2_model(3).order == 24);
  CHECK(sl2_model(4).order == 60);
  CHECK(sl2_model(5).order == 120);
  CHECK(sl2_model(7).order == 336);
  CHECK(psl2_model(2).order == 6);
  CHECK(psl2_model(3).order == 12);
  CHECK(psl2_model(4).order == 60);
  CHECK(psl2_model(5).order == 60);
  CHECK(psl2_model(7).order == 168);
}

TEST_CASE("exceptional coincidences at small field sizes") {
  // SL2(3) has a unique involution (the negated identity)
  auto sl23 = order_multiset(sl2_model(3));
  CHECK(sl23[2] == 1);
  // PSL2(3) looks like A4, PSL2(2) like S3
  CHECK(order_multiset(psl2_model(3)) == order_multiset(alt(4)));
  CHECK(order_multiset(psl2_model(2)) == order_multiset(sym(3)));
  // A5 in three disguises
  auto a5 = order_multiset(alt(5));
  CHECK(order_multiset(psl2_model(4)) == a5);
  CHECK(order_multiset(psl2_model(5)) == a5);
  CHECK(order_multiset(sl2_model(4)) == a5);
}

TEST_CASE("abelian models expose their invariant factors") {
  FiniteGroupModel G = abelian({2, 4});
  REQUIRE(G.order == 8);
  REQUIRE(G.generators.size() == 2);
  CHECK(element_order(G, G.generators[0]) == 2);
  CHECK(element_order(G, G.generators[1]) == 4);
  for (int x = 0; x < G.order; ++x) {
    for (int y = 0; y < G.order; ++y) {
      CHECK(G.multiply(x, y) == G.multiply(y, x));
    }
  }
  CHECK(abelian({1, 3}).name == "Z/3");
  CHECK(abelian({}).order == 1);
}
