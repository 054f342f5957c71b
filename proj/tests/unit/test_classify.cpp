// amal — classification of simplicial amalgams of finite groups
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "amal/classify.hpp"
#include "support/fixtures.hpp"

using namespace amal;
using amal::testing::Rng;

TEST_CASE("cocycle_of / amalgam_of are mutually inverse") {
  for (const std::string& name : amal::testing::small_fixtures()) {
    CAPTURE(name);
    const auto G0 = presets::amalgam(name);
    const CoeffPtr A = coefficient_system_of(*G0);

    // Identity cocycle reproduces the reference amalgam.
    const auto base = amalgam_of(identity_cochain1(*A), *G0, *A);
    for (const auto& [pair, h] : base->covers())
      CHECK(homs_equal(h, G0->cover(pair.first, pair.second)));
    CHECK(cocycle_of(*G0, *G0, *A) == identity_cochain1(*A));

    // Round trip over every enumerated cocycle.
    for (const Cochain1& z : cocycles_z1(*A)) {
      const auto Gz = amalgam_of(z, *G0, *A);
      CHECK(cocycle_of(*Gz, *G0, *A) == z);
    }
  }
}

TEST_CASE("amalgam_of . cocycle_of is the identity on normalized amalgams") {
  for (const std::string& name :
       {std::string("goldschmidt-d8-v4"), std::string("triangle-s4-d8-v4")}) {
    CAPTURE(name);
    const auto G0 = presets::amalgam(name);
    const CoeffPtr A = coefficient_system_of(*G0);
    const OracleEnumeration en = oracle_enumerate_type(G0);
    std::size_t normalized = 0;
    for (std::size_t i = 0; i < en.size(); ++i) {
      const Amalgam Gi = en.materialize(i);
      if (!is_normalized(Gi, *G0)) continue;
      ++normalized;
      const auto rebuilt = amalgam_of(cocycle_of(Gi, *G0, *A), *G0, *A);
      for (const auto& [pair, h] : Gi.covers())
        CHECK(homs_equal(h, rebuilt->cover(pair.first, pair.second)));
    }
    // Normalized amalgams of the type are exactly the cocycles.
    CHECK(normalized == cocycles_z1(*A).size());
  }
}

TEST_CASE("amalgam_of rejects non-cocycles") {
  const auto s3 = presets::amalgam("triangle-s3");
  const CoeffPtr A = coefficient_system_of(*s3);
  Cochain1 bad = identity_cochain1(*A);
  bad.values[1] = 1;  // breaks the triangle constraint
  REQUIRE_FALSE(is_cocycle(*A, bad));
  CHECK_THROWS_WITH_AS(amalgam_of(bad, *s3, *A), doctest::Contains("not a cocycle"),
                       ValidationError);
}

TEST_CASE("cocycle_of demands a normalized amalgam of the right type") {
  const auto d8 = presets::amalgam("goldschmidt-d8-v4");
  const CoeffPtr A = coefficient_system_of(*d8);
  // Twist the non-bar side: stays of the same type but is not normalized.
  const AutGroup edge_auts = automorphisms(d8->group(2));
  auto covers = d8->covers();
  GroupHom& h = covers.at({1, 2});
  GroupHom twisted = h;
  for (Elt x = 0; x < h.map.size(); ++x) twisted.map[x] = h.map[edge_auts.aut(1)[x]];
  h = std::move(twisted);
  const auto G = build_amalgam(d8->complex(), d8->groups(), covers);
  REQUIRE(same_type(*G, *d8));
  CHECK_THROWS_WITH_AS(cocycle_of(*G, *d8, *A), doctest::Contains("not normalized"),
                       ValidationError);
}

TEST_CASE("iso_from_coboundary") {
  Rng rng(0x5EED);
  for (const std::string& name :
       {std::string("goldschmidt-d8-v4"), std::string("triangle-s3"), std::string("triangle-d8")}) {
    CAPTURE(name);
    const auto G0 = presets::amalgam(name);
    const CoeffPtr A = coefficient_system_of(*G0);
    const auto Z = cocycles_z1(*A);

    // f = id, z1 = z2: the identity isomorphism.
    const AmalgamIso id_iso =
        iso_from_coboundary(identity_cochain0(*A), Z[0], Z[0], *G0, *A);
    for (const GroupHom& c : id_iso.components)
      for (Elt x = 0; x < c.map.size(); ++x) CHECK(c.map[x] == x);

    // Random (z, f): build z1 := act(z, f), then the constructed square
    // passes check_iso (iso_from_coboundary throws otherwise).
    for (int trial = 0; trial < 25; ++trial) {
      const Cochain1& z2 = Z[rng.below(Z.size())];
      Cochain0 f;
      for (int v : A->complex()->of_rank(0))
        f.values.push_back(static_cast<Elt>(rng.below(A->table(v)->order())));
      const Cochain1 z1 = act(*A, z2, f);
      CHECK_NOTHROW(iso_from_coboundary(f, z1, z2, *G0, *A));
    }

    // A failing action equation is rejected up front.
    if (Z.size() > 1)
      CHECK_THROWS_WITH_AS(iso_from_coboundary(identity_cochain0(*A), Z[0], Z[1], *G0, *A),
                           doctest::Contains("action equation"), ValidationError);
  }
}

TEST_CASE("classification agrees with the oracle on the fixture suite") {
  for (const std::string& name : amal::testing::oracle_fixtures()) {
    CAPTURE(name);
    const auto G0 = presets::amalgam(name);
    const Classification cls = classify(G0);
    const OracleClassification oracle(oracle_enumerate_type(G0));
    CHECK(cls.cohomology.size() == oracle.class_count());
    CHECK(cls.representatives[cls.base_class]->covers().size() == G0->covers().size());
  }
}

TEST_CASE("classification soundness against the oracle witness search") {
  const auto G0 = presets::amalgam("goldschmidt-s4-d8");
  const Classification cls = classify(G0);
  REQUIRE(cls.cohomology.size() == 2);
  for (std::size_t a = 0; a < cls.representatives.size(); ++a)
    for (std::size_t b = 0; b < cls.representatives.size(); ++b)
      CHECK(oracle_isomorphic(cls.representatives[a], cls.representatives[b]).has_value() ==
            (a == b));
}

TEST_CASE("classification witnesses connect cohomologous cocycles") {
  const auto G0 = presets::amalgam("goldschmidt-d8-v4");
  const Classification cls = classify(G0);
  const CohomologySet& H = cls.cohomology;
  for (std::size_t i = 0; i < H.cocycles.size(); ++i)
    for (std::size_t j = 0; j < H.cocycles.size(); ++j) {
      if (H.class_of[i] != H.class_of[j]) {
        CHECK_THROWS_AS(cls.witness(H.cocycles[i], H.cocycles[j]), ValidationError);
        continue;
      }
      const AmalgamIso iso = cls.witness(H.cocycles[i], H.cocycles[j]);
      CHECK(check_iso(iso).ok);
    }
}

TEST_CASE("classification is invariant under trivial extension") {
  const auto path = presets::amalgam("chain-z8-z4");
  auto triangle = std::make_shared<const SimplicialComplex>(
      extend_with_small_subsets(*path->complex(), 3));
  const auto extended = trivial_extension(*path, triangle);
  CHECK(classify(path).cohomology.size() == classify(extended).cohomology.size());
}

TEST_CASE("goldschmidt double cosets") {
  // Trivial A_12: one double coset.
  const auto z4v4 = presets::amalgam("edge-z4-v4");
  CHECK(goldschmidt(z4v4).count() == 1);

  // Abar_1 = A_12 (restriction surjective): one double coset.
  const auto q8 = presets::amalgam("edge-q8-z4");
  const GoldschmidtResult gq = goldschmidt(q8);
  CHECK(gq.count() == 1);

  // The S4/D8 pair: count matches the oracle classification.
  const auto s4 = presets::amalgam("goldschmidt-s4-d8");
  const GoldschmidtResult gs = goldschmidt(s4);
  const OracleClassification oracle(oracle_enumerate_type(s4));
  CHECK(gs.count() == oracle.class_count());
  CHECK(gs.count() == 2);

  // Every rank-1 fixture: coset count = |H^1| and the bijection is materialized.
  for (const std::string& name : amal::testing::edge_fixtures()) {
    CAPTURE(name);
    const GoldschmidtResult res = goldschmidt(presets::amalgam(name));
    CHECK(res.count() == res.h1_classes.size());
    CHECK(res.class_to_coset.size() == res.count());
  }

  CHECK_THROWS_AS(goldschmidt(presets::amalgam("triangle-s3")), ValidationError);
}
