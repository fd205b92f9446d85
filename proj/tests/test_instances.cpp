#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rmwb/instances.hpp"
#include "rmwb/prng.hpp"

using namespace rmwb;

TEST_CASE("xorshift64* stream is pinned") {
  // frozen from an independent computation of the generator
  Xorshift64Star rng(42);
  CHECK(rng.next() == 0x56ce4ab7719ba3a0ULL);
  CHECK(rng.next() == 0xc841eb53ebbb2ddaULL);
  Xorshift64Star zero(0);  // remapped seed
  CHECK(zero.next() == 0x0d83b3e29a21487aULL);
}

TEST_CASE("parse: single-pair tournament") {
  auto inst = parse_instance("rmwb v1\nkind tournament\nn 2\n1\n");
  const auto& t = std::get<Tournament>(inst);
  CHECK(t.beats(0, 1));
  CHECK_FALSE(t.beats(1, 0));
}

TEST_CASE("parse: two-element antichain poset") {
  auto inst = parse_instance("rmwb v1\nkind poset\nn 2\n10\n01\n");
  const auto& m = std::get<Poset>(inst);
  CHECK_FALSE(m.comparable(0, 1));
  CHECK(m.order_respecting());
}

TEST_CASE("parse: transitivity violation is rejected with a line number") {
  // 0 <= 1 and 1 <= 2 but not 0 <= 2
  std::string text = "rmwb v1\nkind poset\nn 3\n110\n011\n001\n";
  CHECK_THROWS_WITH_AS(parse_instance(text),
                       doctest::Contains("transitivity"), Error);
}

TEST_CASE("parse: malformed header and body errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_instance("nope\n"), doctest::Contains("line 1"), Error);
  CHECK_THROWS_WITH_AS(parse_instance("rmwb v1\nkind coloring\nn 3\n0\n0\n"),
                       doctest::Contains("line 4"), Error);
  CHECK_THROWS_WITH_AS(parse_instance("rmwb v1\nkind linorder\nn 3\n0 1\n"),
                       doctest::Contains("line 4"), Error);
}

TEST_CASE("comment lines are ignored") {
  auto inst = parse_instance("# generated\nrmwb v1\nkind tournament\n# n follows\nn 2\n1\n");
  CHECK(instance_n(inst) == 2);
}

TEST_CASE("serialize: canonical bodies") {
  Coloring c = Coloring::constant(3, 0);
  CHECK(serialize_instance(Instance(c)) == "rmwb v1\nkind coloring\nn 3\n00\n0\n");
  Tournament t(2, {1});
  CHECK(serialize_instance(Instance(t)) == "rmwb v1\nkind tournament\nn 2\n1\n");
}

TEST_CASE("round trip is the identity across kinds and seeds") {
  for (Kind kind : {Kind::Tournament, Kind::Coloring, Kind::Poset, Kind::LinOrder}) {
    for (uint64_t seed = 1; seed <= 50; ++seed) {
      uint32_t n = 1 + static_cast<uint32_t>(seed % 9);
      Instance x = random_instance(kind, n, seed);
      Instance y = parse_instance(serialize_instance(x));
      CHECK(serialize_instance(y) == serialize_instance(x));
      CHECK(x == y);
    }
  }
}

TEST_CASE("random_instance: determinism and the pinned first bit") {
  CHECK(random_instance(Kind::LinOrder, 9, 7) == random_instance(Kind::LinOrder, 9, 7));
  // (tournament, 6, 42): first body bit = top bit of the first stream output
  auto t = std::get<Tournament>(random_instance(Kind::Tournament, 6, 42));
  CHECK(t.bits()[0] == 0);  // 0x56ce... has top bit 0
  // n=1 instances have no pairs at all
  auto c = std::get<Coloring>(random_instance(Kind::Coloring, 1, 3));
  CHECK(c.bits().empty());
}

TEST_CASE("random posets satisfy the axioms and order-respecting convention") {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    auto m = std::get<Poset>(random_instance(Kind::Poset, 8, seed));
    CHECK(m.order_respecting());  // construction validates the axioms
  }
}

TEST_CASE("stability: constant coloring goes entirely a-side") {
  Coloring c = Coloring::constant(4, 0);
  auto rep = stability_report(c, 2);
  CHECK(rep.a_star == VertexSet{0, 1, 2, 3});
  CHECK(rep.b_star.empty());
  CHECK(rep.unresolved.empty());
}

TEST_CASE("stability: chain plus isolated point, tau = 0") {
  // chain 1 <= 2, vertex 0 isolated
  std::vector<uint8_t> mat = {
      1, 0, 0,
      0, 1, 1,
      0, 0, 1,
  };
  Poset m(3, mat);
  auto rep = stability_report(m, 0);
  CHECK(rep.b_star == VertexSet{0});      // isolated: incomparable tail
  CHECK(rep.a_star == VertexSet{1, 2});   // bottom of the chain, plus the vacuous top
  CHECK(rep.c_star.empty());
  CHECK(rep.unresolved.empty());
}

TEST_CASE("stability: classes are disjoint and monotone in tau") {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    auto c = std::get<Coloring>(random_instance(Kind::Coloring, 9, seed));
    for (uint32_t tau = 0; tau + 1 < 9; ++tau) {
      auto r1 = stability_report(c, tau);
      auto r2 = stability_report(c, tau + 1);
      CHECK(std::includes(r2.a_star.begin(), r2.a_star.end(), r1.a_star.begin(), r1.a_star.end()));
      CHECK(std::includes(r2.b_star.begin(), r2.b_star.end(), r1.b_star.begin(), r1.b_star.end()));
      size_t total = r1.a_star.size() + r1.b_star.size() + r1.c_star.size() + r1.unresolved.size();
      CHECK(total == 9);
    }
    auto m = std::get<Poset>(random_instance(Kind::Poset, 9, seed));
    for (uint32_t tau = 0; tau + 1 < 9; ++tau) {
      auto r1 = stability_report(m, tau);
      auto r2 = stability_report(m, tau + 1);
      CHECK(std::includes(r2.a_star.begin(), r2.a_star.end(), r1.a_star.begin(), r1.a_star.end()));
      CHECK(std::includes(r2.b_star.begin(), r2.b_star.end(), r1.b_star.begin(), r1.b_star.end()));
    }
  }
  CHECK_THROWS_AS(stability_report(Coloring::constant(3, 0), 4), Error);
}

namespace {

// omega + omega*: 0 ≺ 2 ≺ 4 ≺ 5 ≺ 3 ≺ 1
LinearOrder omega_omega_star() { return LinearOrder::from_order({0, 2, 4, 5, 3, 1}); }

}  // namespace

TEST_CASE("stableish: explicit cut validation and threshold heuristic") {
  LinearOrder l = omega_omega_star();
  auto rep = stableish_classify(l, VertexSet{0, 2, 4});
  CHECK_FALSE(rep.heuristic);
  CHECK(rep.cut == VertexSet{0, 2, 4});
  CHECK(*rep.max_of_cut == 4);
  CHECK(*rep.min_of_rest == 5);

  auto thr = stableish_classify(l, uint32_t{3});
  CHECK(thr.heuristic);
  CHECK(thr.cut == VertexSet{0, 2, 4});

  // identity order: theta = n takes the whole domain
  auto all = stableish_classify(LinearOrder::identity(5), uint32_t{5});
  CHECK(all.cut == VertexSet{0, 1, 2, 3, 4});

  CHECK_THROWS_WITH_AS(stableish_classify(l, VertexSet{4}),
                       doctest::Contains("downward"), Error);
}

TEST_CASE("extract_monotone_from_cut: greedy traces") {
  LinearOrder id = LinearOrder::identity(5);
  auto all = stableish_classify(id, uint32_t{5});
  CHECK(extract_monotone_from_cut(id, all, MonotoneSide::AscendingInCut) ==
        std::vector<Vertex>{0, 1, 2, 3, 4});

  // reversed order: complement of the empty cut, descending = 0,1,...,n-1
  LinearOrder rev = LinearOrder::from_order({4, 3, 2, 1, 0});
  auto none = stableish_classify(rev, uint32_t{0});
  CHECK(extract_monotone_from_cut(rev, none, MonotoneSide::DescendingInComplement) ==
        std::vector<Vertex>{0, 1, 2, 3, 4});

  LinearOrder l = omega_omega_star();
  auto rep = stableish_classify(l, uint32_t{3});
  CHECK(extract_monotone_from_cut(l, rep, MonotoneSide::AscendingInCut) ==
        std::vector<Vertex>{0, 2, 4});
  CHECK(extract_monotone_from_cut(l, rep, MonotoneSide::DescendingInComplement) ==
        std::vector<Vertex>{1, 3, 5});

  CHECK_THROWS_AS(extract_monotone_from_cut(id, all, MonotoneSide::DescendingInComplement), Error);
}

TEST_CASE("extract_monotone_from_cut output is increasing and monotone") {
  for (uint64_t seed = 1; seed <= 30; ++seed) {
    auto l = std::get<LinearOrder>(random_instance(Kind::LinOrder, 12, seed));
    auto rep = stableish_classify(l, uint32_t{6});
    for (auto side : {MonotoneSide::AscendingInCut, MonotoneSide::DescendingInComplement}) {
      auto seq = extract_monotone_from_cut(l, rep, side);
      for (size_t i = 0; i + 1 < seq.size(); ++i) {
        CHECK(seq[i] < seq[i + 1]);
        bool mono = side == MonotoneSide::AscendingInCut ? l.precedes(seq[i], seq[i + 1])
                                                         : l.precedes(seq[i + 1], seq[i]);
        CHECK(mono);
      }
    }
  }
}
