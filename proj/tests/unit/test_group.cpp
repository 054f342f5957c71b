// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "amal/group.hpp"
#include "amal/presets.hpp"

using namespace amal;

namespace {

// Independent closure: saturate a set of permutations under composition
// without going through FiniteGroup.
std::set<Perm> brute_closure(std::size_t degree, const std::vector<Perm>& gens) {
  std::set<Perm> all{identity_perm(degree)};
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Perm> snapshot(all.begin(), all.end());
    for (const Perm& a : snapshot)
      for (const Perm& g : gens)
        if (all.insert(perm_then(a, g)).second) changed = true;
  }
  return all;
}

}  // namespace

TEST_CASE("group_from_generators closes correctly") {
  auto C2 = FiniteGroup::from_generators(3, {{1, 0, 2}});
  CHECK(C2.order() == 2);

  auto S3 = FiniteGroup::from_generators(3, {{1, 0, 2}, {1, 2, 0}});
  CHECK(S3.order() == 6);

  // Dihedral group of order 8: orders must match an independent closure.
  std::vector<Perm> gens = {{1, 2, 3, 0}, {3, 2, 1, 0}};
  auto D8 = FiniteGroup::from_generators(4, gens);
  REQUIRE(D8.order() == 8);
  std::multiset<std::uint32_t> got(D8.element_orders().begin(), D8.element_orders().end());
  std::multiset<std::uint32_t> expected;
  for (const Perm& p : brute_closure(4, gens)) expected.insert(perm_order(p));
  CHECK(got == expected);
  CHECK(got == std::multiset<std::uint32_t>{1, 2, 2, 2, 2, 2, 4, 4});
}

TEST_CASE("group_from_generators respects the order cap") {
  Budgets tight;
  tight.max_order = 5;
  CHECK_THROWS_WITH_AS(FiniteGroup::from_generators(3, {{1, 0, 2}, {1, 2, 0}}, tight),
                       doctest::Contains("order cap exceeded"), BudgetError);
}

TEST_CASE("group_from_table validates and rejects") {
  CHECK(FiniteGroup::from_table({{0}}).order() == 1);
  CHECK(FiniteGroup::from_table({{0, 1}, {1, 0}}).order() == 2);

  // Latin square violation.
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), ValidationError);
  // Identity violation.
  CHECK_THROWS_WITH_AS(FiniteGroup::from_table({{1, 0}, {0, 1}}),
                       doctest::Contains("identity"), ValidationError);
  // The smallest loop that is not a group: associativity must be the
  // diagnostic, naming a triple.
  std::vector<std::vector<Elt>> loop = {{0, 1, 2, 3, 4},
                                        {1, 0, 3, 4, 2},
                                        {2, 3, 4, 0, 1},
                                        {3, 4, 1, 2, 0},
                                        {4, 2, 0, 1, 3}};
  CHECK_THROWS_WITH_AS(FiniteGroup::from_table(loop), doctest::Contains("associativity"),
                       ValidationError);
}

TEST_CASE("associativity holds on every validated group") {
  for (const auto& G :
       {presets::dihedral8(), presets::quaternion8(), presets::symmetric(3)}) {
    for (Elt x = 0; x < G->order(); ++x)
      for (Elt y = 0; y < G->order(); ++y)
        for (Elt z = 0; z < G->order(); ++z)
          CHECK(G->mul(G->mul(x, y), z) == G->mul(x, G->mul(y, z)));
  }
}

TEST_CASE("subgroup_closure") {
  auto D8 = presets::dihedral8();
  CHECK(subgroup_closure(D8, {}).members == std::vector<Elt>{0});

  Elt four = 0;
  for (Elt x = 1; x < 8; ++x)
    if (D8->element_order(x) == 4) {
      four = x;
      break;
    }
  CHECK(subgroup_closure(D8, {four}).size() == 4);

  // Two distinct reflections with product of order 2 generate a Klein four.
  Elt r1 = 0, r2 = 0;
  bool found = false;
  for (Elt a = 1; a < 8 && !found; ++a)
    for (Elt b = a + 1; b < 8 && !found; ++b)
      if (D8->element_order(a) == 2 && D8->element_order(b) == 2) {
        const Elt p = D8->mul(a, b);
        if (p != 0 && p != a && p != b && D8->element_order(p) == 2) {
          r1 = a;
          r2 = b;
          found = true;
        }
      }
  REQUIRE(found);
  const Subgroup V = subgroup_closure(D8, {r1, r2});
  CHECK(V.size() == 4);
  // Independent check: saturate pairwise products by hand.
  std::set<Elt> sat{0, r1, r2};
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Elt> snap(sat.begin(), sat.end());
    for (Elt a : snap)
      for (Elt b : snap)
        if (sat.insert(D8->mul(a, b)).second) changed = true;
  }
  CHECK(std::vector<Elt>(sat.begin(), sat.end()) == V.members);
}

TEST_CASE("validate_hom") {
  auto S3 = presets::symmetric(3);
  auto C2 = presets::cyclic(2);
  auto Z4 = presets::cyclic(4);

  const GroupHom id = GroupHom::identity_on(S3);
  CHECK(validate_hom(id).ok);
  CHECK(validate_hom(id).injective);

  GroupHom constant{S3, C2, std::vector<Elt>(6, 0), false};
  const HomReport crep = validate_hom(constant);
  CHECK(crep.ok);
  CHECK_FALSE(crep.injective);

  // Z4 -> C2 sending the generator to the involution: multiplicative but not
  // injective; claiming injectivity must fail.
  GroupHom fold{Z4, C2, {0, 1, 0, 1}, false};
  const HomReport frep = validate_hom(fold);
  CHECK(frep.ok);
  CHECK_FALSE(frep.injective);
  fold.injective = true;
  CHECK_FALSE(validate_hom(fold).ok);

  // Broken multiplicativity names the pair.
  GroupHom broken{Z4, Z4, {0, 2, 1, 3}, false};
  const HomReport brep = validate_hom(broken);
  CHECK_FALSE(brep.ok);
  CHECK(brep.violation.find("pair") != std::string::npos);
}

TEST_CASE("compose_homs and the center chain") {
  auto D8 = presets::dihedral8();
  const Subgroup Z = center(D8);
  REQUIRE(Z.size() == 2);

  Elt four = 0;
  for (Elt x = 1; x < 8; ++x)
    if (D8->element_order(x) == 4) {
      four = x;
      break;
    }
  const Subgroup C4 = subgroup_closure(D8, {four});
  auto Z4 = std::make_shared<const FiniteGroup>(C4.as_group());
  auto Z2 = std::make_shared<const FiniteGroup>(Z.as_group());

  // Z2 -> Z4 -> D8 composes to the center inclusion, checked by table lookup.
  GroupHom z2_in_z4;
  z2_in_z4.dom = Z2;
  z2_in_z4.cod = Z4;
  z2_in_z4.map.resize(2);
  for (Elt x = 0; x < 2; ++x) z2_in_z4.map[x] = C4.position_of(Z.members[x]);
  z2_in_z4.injective = true;
  GroupHom z4_in_d8{Z4, D8, std::vector<Elt>(C4.members.begin(), C4.members.end()), true};

  const GroupHom both = compose_homs(z4_in_d8, z2_in_z4);
  CHECK(both.injective);
  for (Elt x = 0; x < 2; ++x) CHECK(both.map[x] == Z.members[x]);

  const GroupHom idz = GroupHom::identity_on(Z4);
  CHECK(homs_equal(compose_homs(z4_in_d8, idz), z4_in_d8));
  CHECK(homs_equal(compose_homs(GroupHom::identity_on(D8), z4_in_d8), z4_in_d8));

  auto S3 = presets::symmetric(3);
  CHECK_THROWS_AS(compose_homs(z4_in_d8, GroupHom::identity_on(S3)), ValidationError);
}

TEST_CASE("quaternion table group") {
  auto Q8 = presets::quaternion8();
  REQUIRE(Q8->order() == 8);
  std::multiset<std::uint32_t> orders(Q8->element_orders().begin(), Q8->element_orders().end());
  CHECK(orders == std::multiset<std::uint32_t>{1, 2, 4, 4, 4, 4, 4, 4});
  CHECK(center(Q8).size() == 2);
}
