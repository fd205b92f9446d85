#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rmwb/diagonalization.hpp"
#include "rmwb/solvers.hpp"

using namespace rmwb;

namespace {

Tournament forward(uint32_t n) {  // i beats j for i<j
  return Tournament(n, std::vector<uint8_t>(pair_count(n), 1));
}

}  // namespace

TEST_CASE("max_homogeneous agrees with subset enumeration") {
  CHECK(max_homogeneous(Coloring::constant(5, 0)).vertices.size() == 5);
  CHECK(max_homogeneous(Coloring::constant(1, 0)).vertices.size() == 1);
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    auto c = std::get<Coloring>(random_instance(Kind::Coloring, 8, seed));
    auto sol = max_homogeneous(c);
    CHECK(sol.vertices.size() == oracle::max_homogeneous_size(c));
    CHECK(oracle::homogeneous(c, sol.vertices, *sol.color));
  }
}

TEST_CASE("max_homogeneous returns the lexicographically least maximum") {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    auto c = std::get<Coloring>(random_instance(Kind::Coloring, 7, seed));
    auto sol = max_homogeneous(c);
    VertexSet best;
    for (const auto& s : oracle::all_subsets(7)) {
      if (s.size() != sol.vertices.size()) continue;
      if (!oracle::homogeneous(c, s, 0) && !oracle::homogeneous(c, s, 1)) continue;
      if (best.empty() || s < best) best = s;
    }
    CHECK(sol.vertices == best);
  }
}

TEST_CASE("max_transitive: examples and oracle agreement") {
  CHECK(max_transitive(forward(5)).vertices.size() == 5);
  Tournament cyc(3, {1, 0, 1});  // 3-cycle
  CHECK(max_transitive(cyc).vertices.size() == 2);
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    auto t = std::get<Tournament>(random_instance(Kind::Tournament, 8, seed));
    auto sol = max_transitive(t);
    CHECK(sol.vertices.size() == oracle::max_transitive_size(t));
    CHECK(oracle::transitive(t, sol.vertices));
  }
}

TEST_CASE("max_transitive lexicographic tie-break") {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    auto t = std::get<Tournament>(random_instance(Kind::Tournament, 7, seed));
    auto sol = max_transitive(t);
    VertexSet best;
    for (const auto& s : oracle::all_subsets(7)) {
      if (s.size() != sol.vertices.size() || !oracle::transitive(t, s)) continue;
      if (best.empty() || s < best) best = s;
    }
    CHECK(sol.vertices == best);
  }
}

TEST_CASE("every tournament on 6 vertices has a transitive triple") {
  // exhaustive classical bound, also exercised in the acceptance suite
  for (uint32_t mask = 0; mask < (1u << 15); mask += 37) {  // sampled here, full run in acceptance
    std::vector<uint8_t> bits(15);
    for (uint32_t b = 0; b < 15; ++b) bits[b] = (mask >> b) & 1;
    CHECK(max_transitive(Tournament(6, bits)).vertices.size() >= 3);
  }
}

TEST_CASE("poset_extremes: examples and oracle agreement") {
  auto chain = linear_to_poset(LinearOrder::identity(5));
  auto [c1, a1] = poset_extremes(chain);
  CHECK(c1.vertices.size() == 5);
  CHECK(a1.vertices.size() == 1);

  auto anti = linear_to_poset(LinearOrder::from_order({4, 3, 2, 1, 0}));
  auto [c2, a2] = poset_extremes(anti);
  CHECK(c2.vertices.size() == 1);
  CHECK(a2.vertices.size() == 5);

  for (uint64_t seed = 1; seed <= 40; ++seed) {
    auto m = std::get<Poset>(random_instance(Kind::Poset, 8, seed));
    auto [ch, ac] = poset_extremes(m);
    auto [och, oac] = oracle::poset_extreme_sizes(m);
    CHECK(ch.vertices.size() == och);
    CHECK(ac.vertices.size() == oac);
    CHECK(och * oac >= 8);  // Mirsky/Dilworth
  }
}

TEST_CASE("two disjoint 2-chains have extremes (2,2)") {
  std::vector<uint8_t> mat = {
      1, 1, 0, 0,
      0, 1, 0, 0,
      0, 0, 1, 1,
      0, 0, 0, 1,
  };
  auto [ch, ac] = poset_extremes(Poset(4, mat));
  CHECK(ch.vertices.size() == 2);
  CHECK(ac.vertices.size() == 2);
}

TEST_CASE("longest_monotone: examples and oracle agreement") {
  auto [asc, desc] = longest_monotone(LinearOrder::identity(6));
  CHECK(asc.vertices.size() == 6);
  CHECK(desc.vertices.size() == 1);

  auto [a2, d2] = longest_monotone(LinearOrder(4, {2, 0, 3, 1}));
  CHECK(a2.vertices.size() == 2);
  CHECK(d2.vertices.size() == 2);

  for (uint64_t seed = 1; seed <= 40; ++seed) {
    auto l = std::get<LinearOrder>(random_instance(Kind::LinOrder, 9, seed));
    auto [a, d] = longest_monotone(l);
    auto [oa, od] = oracle::monotone_sizes(l);
    CHECK(a.vertices.size() == oa);
    CHECK(d.vertices.size() == od);
  }
}

TEST_CASE("one_point_extensions") {
  Tournament fw = forward(5);
  CHECK(one_point_extensions(fw, {}) == VertexSet{0, 1, 2, 3, 4});  // singletons always extend
  Tournament cyc(3, {1, 0, 1});
  CHECK(one_point_extensions(cyc, {0, 1}).empty());
  CHECK_THROWS_AS(one_point_extensions(cyc, {0, 1, 2}), Error);
  // transitive n=4, F={0,3}: both middles fit
  CHECK(one_point_extensions(forward(4), {0, 3}) == VertexSet{1, 2});

  for (uint64_t seed = 1; seed <= 30; ++seed) {
    auto t = std::get<Tournament>(random_instance(Kind::Tournament, 9, seed));
    auto base = max_transitive(t).vertices;
    VertexSet f(base.begin(), base.begin() + std::min<size_t>(2, base.size()));
    for (Vertex a : one_point_extensions(t, f)) {
      CHECK(!std::binary_search(f.begin(), f.end(), a));
      VertexSet u = f;
      u.insert(std::lower_bound(u.begin(), u.end(), a), a);
      CHECK(oracle::transitive(t, u));
    }
  }
}

TEST_CASE("minimal_intervals: structure and member partition") {
  Tournament fw = forward(5);
  auto whole = minimal_intervals(fw, {});
  REQUIRE(whole.size() == 1);
  CHECK_FALSE(whole[0].interval.low.has_value());
  CHECK_FALSE(whole[0].interval.high.has_value());
  CHECK(whole[0].members == VertexSet{0, 1, 2, 3, 4});

  auto full = minimal_intervals(fw, {0, 1, 2, 3, 4});
  for (const auto& g : full) CHECK(g.members.empty());

  // 3-cycle, F={0,1}: vertex 2 extends nothing, so every member set is empty
  Tournament cyc(3, {1, 0, 1});
  auto gaps = minimal_intervals(cyc, {0, 1});
  REQUIRE(gaps.size() == 3);
  for (const auto& g : gaps) CHECK(g.members.empty());

  // member sets partition the one-point extenders
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    auto t = std::get<Tournament>(random_instance(Kind::Tournament, 10, seed));
    auto base = max_transitive(t).vertices;
    VertexSet f(base.begin(), base.begin() + std::min<size_t>(3, base.size()));
    auto gs = minimal_intervals(t, f);
    VertexSet all;
    for (const auto& g : gs) {
      for (Vertex v : g.members) {
        CHECK(interval_member(t, order_transitive(t, f), g.interval, v));
        all.push_back(v);
      }
    }
    std::sort(all.begin(), all.end());
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());  // disjoint
    CHECK(all == one_point_extensions(t, f));
  }
}

TEST_CASE("extendibility_depth: examples") {
  CHECK(extendibility_depth(forward(5), {}, 5) == 5);
  Tournament cyc(3, {1, 0, 1});
  CHECK(extendibility_depth(cyc, {0, 1}, 2) == 0);

  // KLSW shadow at horizon 20: the witness pair has no extension at all
  auto suite = builtin_adversaries({"stable-target:d=0,1,2,3;s0=0"});
  auto [t, trace] = construct_klsw(suite.guessers, 20);
  CHECK(extendibility_depth(t, {0, 1}, 5) == 0);
}

TEST_CASE("extendibility monotone law") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    auto t = std::get<Tournament>(random_instance(Kind::Tournament, 9, seed));
    for (VertexSet f : {VertexSet{}, VertexSet{0}}) {
      uint32_t k = 4;
      uint32_t base = extendibility_depth(t, f, k);
      for (Vertex a : one_point_extensions(t, f)) {
        VertexSet u = f;
        u.insert(std::lower_bound(u.begin(), u.end(), a), a);
        CHECK(base >= extendibility_depth(t, u, k - 1));
      }
    }
  }
}

TEST_CASE("partition_extendible: trivial and exhaustive checks") {
  Tournament fw = forward(6);
  IntervalSpec whole{std::nullopt, std::nullopt};
  auto empty = partition_extendible(fw, {}, whole, {}, 3);
  CHECK(empty.p.empty());
  CHECK(empty.q.empty());
  CHECK(empty.depth_p == 3);

  // singleton J: one side gets it, the other keeps F's depth
  auto single = partition_extendible(fw, {}, whole, {2}, 3);
  CHECK(single.p.size() + single.q.size() == 1);
  CHECK(std::min(single.depth_p, single.depth_q) == 3);

  // exhaustive cross-check of the maximin on a random instance
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    auto t = std::get<Tournament>(random_instance(Kind::Tournament, 12, seed));
    auto gaps = minimal_intervals(t, {});
    VertexSet j;
    for (Vertex v : gaps[0].members) {
      VertexSet trial = j;
      trial.insert(std::lower_bound(trial.begin(), trial.end(), v), v);
      if (oracle::transitive(t, trial) && trial.size() <= 3) j = trial;
    }
    auto res = partition_extendible(t, {}, gaps[0].interval, j, 2);
    uint32_t best = 0;
    for (uint32_t mask = 0; mask < (1u << j.size()); ++mask) {
      VertexSet p, q;
      for (size_t b = 0; b < j.size(); ++b) ((mask >> b) & 1 ? p : q).push_back(j[b]);
      best = std::max(best, std::min(extendibility_depth(t, p, 2), extendibility_depth(t, q, 2)));
    }
    CHECK(std::min(res.depth_p, res.depth_q) == best);
  }
}
