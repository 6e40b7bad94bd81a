#include <gtest/gtest.h>

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>

#include "isoprod/catalog.hpp"
#include "isoprod/orbits.hpp"

using namespace isoprod;

namespace {

const Catalog& builtin() {
  static const Catalog c = Catalog::builtin();
  return c;
}

std::shared_ptr<const FiniteGroup> group(std::string_view key) { return builtin().realize(key); }

const GroupContext& context(std::string_view key) {
  static std::map<std::string, std::unique_ptr<GroupContext>, std::less<>> cache;
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(std::string(key), std::make_unique<GroupContext>(group(key))).first;
  return *it->second;
}

SystemTuple random_tuple(const FiniteGroup& g, int r, std::mt19937& rng) {
  SystemTuple t(r);
  for (auto& x : t) x = static_cast<Elem>(rng() % g.order());
  return t;
}

SystemTuple apply(const FiniteGroup& g, SystemTuple t, std::initializer_list<BraidMove> moves) {
  for (auto m : moves) t = hurwitz_move(g, t, m);
  return t;
}

// Orbits by plain breadth-first search over std::set, as an oracle.
std::set<std::set<SystemTuple>> bfs_orbits(const FiniteGroup& g,
                                            const std::vector<SystemTuple>& systems,
                                            std::span<const Automorphism> auts) {
  std::set<SystemTuple> seen;
  std::set<std::set<SystemTuple>> orbits;
  for (const auto& s : systems) {
    if (seen.count(s)) continue;
    std::set<SystemTuple> orbit{s};
    std::deque<SystemTuple> queue{s};
    while (!queue.empty()) {
      auto a = queue.front();
      queue.pop_front();
      std::vector<SystemTuple> next;
      for (int i = 1; i < static_cast<int>(a.size()); ++i)
        for (bool inv : {false, true}) next.push_back(hurwitz_move(g, a, {i, inv}));
      for (const auto& phi : auts) next.push_back(apply_automorphism(a, phi));
      for (auto& b : next)
        if (orbit.insert(b).second) queue.push_back(std::move(b));
    }
    seen.insert(orbit.begin(), orbit.end());
    orbits.insert(std::move(orbit));
  }
  return orbits;
}

std::set<std::set<SystemTuple>> as_sets(const std::vector<SystemTuple>& systems,
                                        const OrbitSet& orbits) {
  std::vector<std::set<SystemTuple>> parts(orbits.representatives.size());
  for (std::size_t i = 0; i < systems.size(); ++i) parts[orbits.membership[i]].insert(systems[i]);
  return {parts.begin(), parts.end()};
}

}  // namespace

TEST(Braid, RelationsHoldOnTuples) {
  auto g = group("PSL27");
  std::mt19937 rng(1);
  for (int r = 2; r <= 8; ++r)
    for (int trial = 0; trial < 50; ++trial) {
      auto a = random_tuple(*g, r, rng);
      for (int i = 1; i < r; ++i) {
        EXPECT_EQ(apply(*g, a, {{i, false}, {i, true}}), a);
        EXPECT_EQ(apply(*g, a, {{i, true}, {i, false}}), a);
        if (i + 1 < r)
          EXPECT_EQ(apply(*g, a, {{i, false}, {i + 1, false}, {i, false}}),
                    apply(*g, a, {{i + 1, false}, {i, false}, {i + 1, false}}));
        for (int j = i + 2; j < r; ++j)
          EXPECT_EQ(apply(*g, a, {{i, false}, {j, false}}), apply(*g, a, {{j, false}, {i, false}}));
      }
    }
}

TEST(Braid, ForwardMoveFormula) {
  auto g = group("S4");
  SystemTuple a{1, 5, 9};
  auto b = hurwitz_move(*g, a, {1, false});
  EXPECT_EQ(b[0], g->mul(g->mul(a[0], a[1]), g->inv(a[0])));
  EXPECT_EQ(b[1], a[0]);
  EXPECT_EQ(b[2], a[2]);
  SystemTuple c = a;
  hurwitz_move_in_place(*g, c, {2, true});
  EXPECT_EQ(c, hurwitz_move(*g, a, {2, true}));
}

TEST(Braid, AutomorphismsCommuteWithMoves) {
  for (std::string_view key : {"S4xZ2", "G128_36", "PSL27"}) {
    SCOPED_TRACE(key);
    const auto& ctx = context(key);
    const auto& g = ctx.group();
    std::mt19937 rng(2);
    for (int trial = 0; trial < 200; ++trial) {
      int r = 2 + static_cast<int>(rng() % 7);
      auto a = random_tuple(g, r, rng);
      const auto& phi = ctx.automorphisms()[rng() % ctx.automorphisms().size()];
      BraidMove m{1 + static_cast<int>(rng() % (r - 1)), rng() % 2 == 0};
      EXPECT_EQ(apply_automorphism(hurwitz_move(g, a, m), phi),
                hurwitz_move(g, apply_automorphism(a, phi), m));
    }
  }
}

TEST(Braid, MovesAndAutomorphismsPreserveSystems) {
  const std::vector<std::pair<std::string_view, std::string_view>> cases = {
      {"S4xZ2", "[2,4,6]"}, {"S4xZ2", "[2^6]"}, {"G128_36", "[4^3]"},
      {"PSL27", "[2,3,7]"}, {"Z2^4xD5", "[2,4,5]"}, {"U42", "[2^5]"}};
  std::mt19937 rng(3);
  for (auto [key, type] : cases) {
    SCOPED_TRACE(std::string(key) + " " + std::string(type));
    const auto& ctx = context(key);
    const auto& g = ctx.group();
    auto t = TypeTuple::parse(type);
    auto systems = enumerate_systems(g, t);
    ASSERT_FALSE(systems.empty());
    for (int trial = 0; trial < 30; ++trial) {
      const auto& a = systems[rng() % systems.size()];
      auto sigma = stabilizer_set(g, ctx.classes(), a);
      for (int i = 1; i < t.length(); ++i)
        for (bool inv : {false, true}) {
          auto b = hurwitz_move(g, a, {i, inv});
          EXPECT_TRUE(is_spherical_system(g, t, b));
          EXPECT_EQ(stabilizer_set(g, ctx.classes(), b), sigma);
        }
      const auto& phi = ctx.automorphisms()[rng() % ctx.automorphisms().size()];
      EXPECT_TRUE(is_spherical_system(g, t, apply_automorphism(a, phi)));
      auto inner = inner_automorphism(g, static_cast<Elem>(rng() % g.order()));
      EXPECT_EQ(stabilizer_set(g, ctx.classes(), apply_automorphism(a, inner)), sigma);
    }
  }
}

TEST(Braid, DisjointnessIsConstantOnOrbits) {
  const auto& ctx = context("Z2^4xD5");
  const auto& g = ctx.group();
  auto t1 = TypeTuple::parse("[2,4,5]"), t2 = TypeTuple::parse("[4^4]");
  auto s1 = enumerate_systems(g, t1);
  auto s2 = enumerate_systems(g, t2);
  std::mt19937 rng(4);
  int disjoint_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    auto a = s1[rng() % s1.size()];
    auto b = s2[rng() % s2.size()];
    const bool d = disjoint(g, ctx.classes(), a, b);
    disjoint_seen += d;
    for (int step = 0; step < 20; ++step) {
      switch (rng() % 3) {
        case 0: a = hurwitz_move(g, a, {1 + static_cast<int>(rng() % 2), rng() % 2 == 0}); break;
        case 1: b = hurwitz_move(g, b, {1 + static_cast<int>(rng() % 3), rng() % 2 == 0}); break;
        default: {
          const auto& phi = ctx.automorphisms()[rng() % ctx.automorphisms().size()];
          a = apply_automorphism(a, phi);
          b = apply_automorphism(b, phi);
        }
      }
      ASSERT_EQ(disjoint(g, ctx.classes(), a, b), d);
    }
  }
  EXPECT_GT(disjoint_seen, 0);
}

TEST(AutomorphismGenerators, GenerateTheWholeGroup) {
  const auto& ctx = context("S4xZ2");
  const auto& gens = ctx.automorphism_generators();
  EXPECT_LE(gens.size(), 8u);
  std::set<std::vector<Elem>> closure{ctx.automorphisms().front().images};
  std::deque<std::vector<Elem>> queue{ctx.automorphisms().front().images};
  while (!queue.empty()) {
    auto f = queue.front();
    queue.pop_front();
    for (const auto& s : gens) {
      std::vector<Elem> h(f.size());
      for (std::size_t x = 0; x < f.size(); ++x) h[x] = s(f[x]);
      if (closure.insert(h).second) queue.push_back(h);
    }
  }
  EXPECT_EQ(closure.size(), ctx.automorphisms().size());
}

TEST(OrbitDecompose, MatchesBreadthFirstOracle) {
  const std::vector<std::pair<std::string_view, std::string_view>> cases = {
      {"S4", "[2,3,4]"}, {"D4", "[2^5]"}, {"Z2^3", "[2^6]"}, {"A5", "[2,5,5]"}, {"A5", "[3^2,5]"}};
  for (auto [key, type] : cases) {
    SCOPED_TRACE(std::string(key) + " " + std::string(type));
    const auto& ctx = context(key);
    auto systems = enumerate_systems(ctx.group(), TypeTuple::parse(type));
    ASSERT_FALSE(systems.empty());
    auto braid = orbit_decompose(ctx.group(), systems, OrbitAction::Braid);
    EXPECT_EQ(as_sets(systems, braid), bfs_orbits(ctx.group(), systems, {}));
    auto full = orbit_decompose(ctx.group(), systems, OrbitAction::BraidAndAut,
                                ctx.automorphism_generators());
    EXPECT_EQ(as_sets(systems, full), bfs_orbits(ctx.group(), systems, ctx.automorphisms()));
    for (std::size_t i = 0; i < full.representatives.size(); ++i) {
      auto first = std::find(full.membership.begin(), full.membership.end(), i);
      ASSERT_NE(first, full.membership.end());
    }
    EXPECT_TRUE(std::is_sorted(full.representatives.begin(), full.representatives.end()));
  }
}

TEST(OrbitTable, AgreesWithDecomposition) {
  const auto& ctx = context("S4xZ2");
  const auto& g = ctx.group();
  auto t = TypeTuple::parse("[2^5]");
  auto systems = enumerate_systems(g, t);
  TupleCodec codec(g.order(), t.length());
  std::vector<std::uint64_t> keys;
  for (const auto& s : systems) keys.push_back(codec.pack(s));
  std::sort(keys.begin(), keys.end());
  HurwitzOrbitTable table(g, codec, keys);
  auto braid = orbit_decompose(g, systems, OrbitAction::Braid);
  ASSERT_EQ(table.orbit_count(), braid.representatives.size());
  for (std::uint32_t o = 0; o < table.orbit_count(); ++o) {
    EXPECT_EQ(table.representative(o), braid.representatives[o]);
    EXPECT_EQ(table.orbit_size(o), braid.orbit_sizes[o]);
  }
  std::size_t classes = 0;
  merge_orbits(table, ctx.automorphism_generators(), &classes);
  auto full = orbit_decompose(g, systems, OrbitAction::BraidAndAut, ctx.automorphism_generators());
  EXPECT_EQ(classes, full.representatives.size());
}

TEST(ComponentCount, KnownValues) {
  struct Case {
    std::string_view key, t1, t2;
    std::uint64_t n;
  };
  const std::vector<Case> cases = {
      {"PSL27", "[2,3,7]", "[2^8]", 0},  {"G96_64", "[2,3,8]", "[2^8]", 0},
      {"Z2^4xD5", "[2,4,5]", "[4^4]", 5}, {"Z2^3", "[2^6]", "[2^6]", 1},
      {"G128_36", "[4^3]", "[4^3]", 2},   {"A5", "[3^2,5]", "[2^6]", 1},
  };
  for (const auto& c : cases) {
    SCOPED_TRACE(std::string(c.key) + " " + std::string(c.t1) + " " + std::string(c.t2));
    auto r = count_component_orbits(context(c.key), TypeTuple::parse(c.t1), TypeTuple::parse(c.t2));
    EXPECT_EQ(r.n, c.n);
    EXPECT_EQ(r.representatives.size(), r.n);
    EXPECT_LE(r.lower_bound, r.n_before_exchange);
    EXPECT_LE(r.n_before_exchange, r.upper_bound);
  }
}

TEST(ComponentCount, RepresentativesAreDisjointPairs) {
  const auto& ctx = context("Z2^4xD5");
  auto t1 = TypeTuple::parse("[2,4,5]"), t2 = TypeTuple::parse("[4^4]");
  auto r = count_component_orbits(ctx, t1, t2);
  for (const auto& [a, b] : r.representatives) {
    EXPECT_TRUE(is_spherical_system(ctx.group(), t1, a));
    EXPECT_TRUE(is_spherical_system(ctx.group(), t2, b));
    EXPECT_TRUE(disjoint(ctx.group(), ctx.classes(), a, b));
  }
}

TEST(ComponentCount, ClassifyIsConstantOnOrbitsAndSeparatesRepresentatives) {
  const auto& ctx = context("Z2^4xD5");
  const auto& g = ctx.group();
  auto t1 = TypeTuple::parse("[2,4,5]"), t2 = TypeTuple::parse("[4^4]");
  ComponentCountOptions opts;
  opts.retain_tables = true;
  PairOrbitClassifier cls(ctx, t1, t2, opts);
  const auto& reps = cls.result().representatives;
  std::set<std::size_t> indices;
  for (const auto& [a, b] : reps) indices.insert(*cls.classify(a, b));
  EXPECT_EQ(indices.size(), reps.size());
  std::mt19937 rng(5);
  for (const auto& [a0, b0] : reps) {
    auto a = a0, b = b0;
    const auto index = *cls.classify(a, b);
    for (int step = 0; step < 100; ++step) {
      switch (rng() % 3) {
        case 0: a = hurwitz_move(g, a, {1 + static_cast<int>(rng() % 2), rng() % 2 == 0}); break;
        case 1: b = hurwitz_move(g, b, {1 + static_cast<int>(rng() % 3), rng() % 2 == 0}); break;
        default: {
          const auto& phi = ctx.automorphisms()[rng() % ctx.automorphisms().size()];
          a = apply_automorphism(a, phi);
          b = apply_automorphism(b, phi);
        }
      }
      ASSERT_EQ(cls.classify(a, b), index);
    }
  }
  EXPECT_FALSE(cls.classify(reps[0].first, reps[0].first).has_value());
}

TEST(ComponentCount, RepresentativesMatchPairOrbitOracle) {
  // Representatives lie in distinct orbits of the direct closure, and the
  // closure of a representative reaches a moved copy of it.
  struct Case {
    std::string_view key, t1, t2;
  };
  for (const auto& c : {Case{"Z2^2xZ4", "[2^3,4^2]", "[2^2,4^2]"},
                        Case{"PSL27", "[7^3]", "[3^2,4]"}}) {
    SCOPED_TRACE(c.key);
    const auto& ctx = context(c.key);
    const auto& g = ctx.group();
    auto r = count_component_orbits(ctx, TypeTuple::parse(c.t1), TypeTuple::parse(c.t2));
    ASSERT_EQ(r.representatives.size(), 2u);
    EXPECT_FALSE(same_pair_orbit(ctx, r.representatives[0], r.representatives[1]));
    const auto& [a, b] = r.representatives[1];
    const auto& phi = ctx.automorphisms().back();
    SystemPair moved{apply_automorphism(hurwitz_move(g, a, {2, false}), phi),
                     apply_automorphism(hurwitz_move(g, b, {1, true}), phi)};
    EXPECT_TRUE(same_pair_orbit(ctx, r.representatives[1], moved));
    EXPECT_FALSE(same_pair_orbit(ctx, r.representatives[0], moved));
  }
}

TEST(ComponentCount, ScheduleIndependent) {
  const auto& ctx = context("S4xZ2");
  auto t1 = TypeTuple::parse("[2,4,6]"), t2 = TypeTuple::parse("[2^6]");
  ComponentCountOptions one, three;
  three.jobs = 3;
  auto a = count_component_orbits(ctx, t1, t2, one);
  auto b = count_component_orbits(ctx, t1, t2, three);
  EXPECT_EQ(a.n, b.n);
  EXPECT_EQ(a.representatives, b.representatives);
}

TEST(ComponentCount, MemoryCapIsEnforced) {
  ComponentCountOptions opts;
  opts.memory_cap_bytes = 1024;
  EXPECT_THROW(count_component_orbits(context("S4xZ2"), TypeTuple::parse("[2,4,6]"),
                                      TypeTuple::parse("[2^6]"), opts),
               MemoryCapExceeded);
}

TEST(Exchange, SymmetricPairIsSelfEquivalent) {
  const auto& ctx = context("Z2^3");
  auto systems = enumerate_systems(ctx.group(), TypeTuple::parse("[2^6]"));
  SystemPair p{systems.front(), systems.front()};
  EXPECT_TRUE(exchange_equivalent(ctx, p, p));
}

TEST(Exchange, AgreesWithPairOrbitOracle) {
  const auto& ctx = context("Z2^3");
  auto t = TypeTuple::parse("[2^6]");
  auto systems = enumerate_systems(ctx.group(), t);
  std::vector<SystemPair> pairs;
  std::mt19937 rng(6);
  while (pairs.size() < 3) {
    const auto& a = systems[rng() % systems.size()];
    const auto& b = systems[rng() % systems.size()];
    if (disjoint(ctx.group(), ctx.classes(), a, b)) pairs.push_back({a, b});
  }
  for (const auto& p1 : pairs)
    for (const auto& p2 : pairs) {
      SystemPair swapped{p1.second, p1.first};
      EXPECT_EQ(exchange_equivalent(ctx, p1, p2), same_pair_orbit(ctx, swapped, p2));
    }
}

TEST(Exchange, Group128_36RepresentativesStayDistinct) {
  const auto& ctx = context("G128_36");
  auto t = TypeTuple::parse("[4^3]");
  auto r = count_component_orbits(ctx, t, t);
  EXPECT_EQ(r.n_before_exchange, 2u);
  EXPECT_TRUE(r.exchange_checked);
  EXPECT_EQ(r.n, 2u);
  ASSERT_EQ(r.representatives.size(), 2u);
  const auto& p = r.representatives[0];
  const auto& q = r.representatives[1];
  EXPECT_FALSE(exchange_equivalent(ctx, p, q));
  EXPECT_FALSE(exchange_equivalent(ctx, q, p));
}
