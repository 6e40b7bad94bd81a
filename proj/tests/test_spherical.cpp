#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "isoprod/catalog.hpp"
#include "isoprod/orbits.hpp"
#include "isoprod/spherical.hpp"

using namespace isoprod;

namespace {

const Catalog& builtin() {
  static const Catalog c = Catalog::builtin();
  return c;
}

std::shared_ptr<const FiniteGroup> group(std::string_view key) { return builtin().realize(key); }

ElementMask sigma_brute(const FiniteGroup& g, std::span<const Elem> a) {
  ElementMask m(g.order(), false);
  for (Elem x : a)
    for (int j = 0; j < g.element_order(x); ++j)
      for (Elem h = 0; h < g.order(); ++h) m[g.conjugate(g.power(x, j), h)] = true;
  return m;
}

std::vector<TypeTuple> short_types(int max_length) {
  std::vector<TypeTuple> out;
  for (const auto& t : enumerate_admissible_types())
    if (t.type.length() <= max_length) out.push_back(t.type);
  return out;
}

}  // namespace

TEST(SubgroupLattice, JoinsAndOrders) {
  auto g = group("S4");
  SubgroupLattice lat(*g);
  auto h = lat.trivial();
  EXPECT_EQ(lat.order(h), 1u);
  auto gens = g->generators();
  for (Elem x : gens) h = lat.join(h, x);
  EXPECT_TRUE(lat.is_full(h));
  for (Elem x = 0; x < g->order(); ++x) EXPECT_TRUE(lat.contains(h, x));
  for (Elem x = 1; x < g->order(); ++x) {
    auto c = lat.join(lat.trivial(), x);
    EXPECT_EQ(lat.order(c), static_cast<std::size_t>(g->element_order(x)));
  }
}

TEST(TupleCodec, RoundTripAndOrder) {
  TupleCodec codec(336, 4);
  SystemTuple a{3, 200, 0, 335}, b{3, 200, 1, 0};
  EXPECT_EQ(codec.unpack(codec.pack(a)), a);
  EXPECT_LT(codec.pack(a), codec.pack(b));
}

TEST(Spherical, EverySystemIsValid) {
  for (std::string_view key : {"S3", "D4", "Z2^3", "S4", "A5"}) {
    auto g = group(key);
    for (const auto& t : short_types(6)) {
      SCOPED_TRACE(std::string(key) + " " + t.to_string());
      auto systems = enumerate_systems(*g, t);
      std::set<SystemTuple> distinct(systems.begin(), systems.end());
      EXPECT_EQ(distinct.size(), systems.size());
      for (const auto& s : systems) {
        ASSERT_EQ(static_cast<int>(s.size()), t.length());
        ASSERT_TRUE(is_spherical_system(*g, t, s));
        Elem p = g->identity();
        for (Elem x : s) p = g->mul(p, x);
        ASSERT_EQ(p, g->identity());
        std::vector<int> orders;
        for (Elem x : s) orders.push_back(g->element_order(x));
        std::sort(orders.begin(), orders.end());
        ASSERT_EQ(orders, t.orders());
        ASSERT_EQ(subgroup_generated(*g, s).size(), g->order());
      }
    }
  }
}

TEST(Spherical, CountMatchesEnumerationUpTo64) {
  for (const auto& def : builtin().entries()) {
    auto g = builtin().realize(def.key);
    if (g->order() > 64) continue;
    for (const auto& t : short_types(6)) {
      SCOPED_TRACE(def.key + " " + t.to_string());
      EXPECT_EQ(count_systems(*g, t), enumerate_systems(*g, t).size());
    }
  }
}

TEST(Spherical, ParallelCountIsScheduleIndependent) {
  auto g = group("S4xZ2");
  auto t = TypeTuple::parse("[2^6]");
  const auto serial = count_systems(*g, t, 1);
  EXPECT_EQ(count_systems(*g, t, 3), serial);
  TupleCodec codec(g->order(), 6);
  SystemSearch search(*g, t);
  EXPECT_EQ(search.collect_packed(codec, 1), search.collect_packed(codec, 4));
}

TEST(Spherical, A5HasNoHurwitzSystems) {
  EXPECT_EQ(count_systems(*group("A5"), TypeTuple::parse("[2,3,7]")), 0u);
}

TEST(Spherical, KnownCounts) {
  // Z2^3 with [2^6]: 6-tuples of nonidentity elements with product 1 that
  // span the group. Counted directly.
  auto g = group("Z2^3");
  std::uint64_t direct = 0;
  SystemTuple a(6);
  std::function<void(int)> rec = [&](int i) {
    if (i == 6) {
      if (is_spherical_system(*g, TypeTuple::parse("[2^6]"), a)) ++direct;
      return;
    }
    for (Elem x = 1; x < g->order(); ++x) {
      a[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  EXPECT_EQ(count_systems(*g, TypeTuple::parse("[2^6]")), direct);
  EXPECT_GT(direct, 0u);
}

TEST(Spherical, RestrictedSearchExcludesClass) {
  auto g = group("S4");
  auto classes = conjugacy_classes(*g);
  auto t = TypeTuple::parse("[2^4]");
  auto all = enumerate_systems(*g, t);
  for (int k : classes.classes_of_order(*g, 2)) {
    std::vector<SystemTuple> expected;
    for (const auto& s : all)
      if (std::none_of(s.begin(), s.end(), [&](Elem x) { return classes.class_of[x] == k; }))
        expected.push_back(s);
    auto got = enumerate_restricted(*g, t, classes, k);
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(got, expected);
    EXPECT_EQ(count_restricted(*g, t, classes, k), expected.size());
  }
}

TEST(StabilizerSet, AbelianGroupIsUnionOfCyclicSubgroups) {
  auto g = group("Z3^2");
  auto classes = conjugacy_classes(*g);
  for (const auto& s : enumerate_systems(*g, TypeTuple::parse("[3^3]"))) {
    ElementMask expected(g->order(), false);
    for (Elem x : s)
      for (Elem y : subgroup_generated(*g, std::vector<Elem>{x})) expected[y] = true;
    EXPECT_EQ(stabilizer_set(*g, classes, s), expected);
  }
}

TEST(StabilizerSet, MatchesBruteForce) {
  auto g = group("A5");
  auto classes = conjugacy_classes(*g);
  auto systems = enumerate_systems(*g, TypeTuple::parse("[5^3]"));
  ASSERT_FALSE(systems.empty());
  for (std::size_t i = 0; i < systems.size(); i += 7)
    EXPECT_EQ(stabilizer_set(*g, classes, systems[i]), sigma_brute(*g, systems[i]));
  // Sigma of a [5^3] system: the identity and every element of order 5.
  auto sigma = stabilizer_set(*g, classes, systems.front());
  for (Elem x = 0; x < g->order(); ++x)
    EXPECT_EQ(sigma[x], x == g->identity() || g->element_order(x) == 5);
}

TEST(StabilizerSet, Psl27HurwitzSystemsContainTheInvolutionClass) {
  auto g = group("PSL27");
  auto classes = conjugacy_classes(*g);
  auto involution_classes = classes.classes_of_order(*g, 2);
  ASSERT_EQ(involution_classes.size(), 1u);
  auto systems = enumerate_systems(*g, TypeTuple::parse("[2,3,7]"));
  ASSERT_FALSE(systems.empty());
  for (const auto& s : systems) {
    auto sigma = stabilizer_set(*g, classes, s);
    for (Elem x : classes.classes[involution_classes[0]]) ASSERT_TRUE(sigma[x]);
  }
}

TEST(StabilizerSet, InvariantUnderAutomorphismsAndMoves) {
  for (std::string_view key : {"S4", "D4xZ2", "A5"}) {
    SCOPED_TRACE(key);
    auto g = group(key);
    auto classes = conjugacy_classes(*g);
    auto auts = automorphism_group(*g);
    auto t = key == "A5" ? TypeTuple::parse("[2,5,5]") : TypeTuple::parse("[2^5]");
    auto systems = enumerate_systems(*g, t);
    ASSERT_FALSE(systems.empty());
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
      const auto& s = systems[rng() % systems.size()];
      auto sigma = stabilizer_set(*g, classes, s);
      const auto& phi = auts[rng() % auts.size()];
      ElementMask image(g->order(), false);
      for (Elem x = 0; x < g->order(); ++x)
        if (sigma[x]) image[phi(x)] = true;
      EXPECT_EQ(stabilizer_set(*g, classes, apply_automorphism(s, phi)), image);
      for (int i = 1; i < t.length(); ++i)
        for (bool inv : {false, true})
          EXPECT_EQ(stabilizer_set(*g, classes, hurwitz_move(*g, s, {i, inv})), sigma);
    }
  }
}

TEST(Disjoint, SymmetricAndNeverSelf) {
  auto g = group("Z2^3");
  auto classes = conjugacy_classes(*g);
  auto systems = enumerate_systems(*g, TypeTuple::parse("[2^6]"));
  bool found = false;
  for (std::size_t i = 0; i < systems.size(); i += 97) {
    EXPECT_FALSE(disjoint(*g, classes, systems[i], systems[i]));
    for (std::size_t j = 0; j < systems.size(); j += 101) {
      bool d = disjoint(*g, classes, systems[i], systems[j]);
      EXPECT_EQ(d, disjoint(*g, classes, systems[j], systems[i]));
      found = found || d;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Disjoint, PartnerMaskCharacterizesDisjointness) {
  auto g = group("D4xZ2");
  auto classes = conjugacy_classes(*g);
  auto t = TypeTuple::parse("[2^5]");
  auto systems = enumerate_systems(*g, t);
  for (std::size_t i = 0; i < systems.size(); i += 211) {
    auto mask = partner_mask(*g, stabilizer_set(*g, classes, systems[i]));
    for (std::size_t j = 0; j < systems.size(); j += 13) {
      bool inside = std::all_of(systems[j].begin(), systems[j].end(),
                                [&](Elem x) { return mask[x]; });
      EXPECT_EQ(inside, disjoint(*g, classes, systems[i], systems[j]));
    }
  }
}

TEST(Disjoint, Psl27HasNoDisjointPairForInvolutionTypes) {
  auto g = group("PSL27");
  auto classes = conjugacy_classes(*g);
  auto hurwitz = enumerate_systems(*g, TypeTuple::parse("[2,3,7]"));
  auto mask = partner_mask(*g, stabilizer_set(*g, classes, hurwitz.front()));
  for (Elem x = 0; x < g->order(); ++x)
    if (g->element_order(x) == 2) EXPECT_FALSE(mask[x]);
}
