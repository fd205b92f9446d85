#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rmwb/families.hpp"

using namespace rmwb;

namespace {

Tournament forward(uint32_t n) { return Tournament(n, std::vector<uint8_t>(pair_count(n), 1)); }
Tournament backward(uint32_t n) { return Tournament(n, std::vector<uint8_t>(pair_count(n), 0)); }

// the trivial family S(k) = {[0,k]}
Family trivial_family(uint32_t n, uint32_t depth, Tournament amb) {
  Family f{std::move(amb), {}};
  for (uint32_t k = 0; k < depth; ++k) {
    VertexSet e;
    for (Vertex v = 0; v <= k && v < n; ++v) e.push_back(v);
    f.levels.push_back({e});
  }
  return f;
}

}  // namespace

TEST_CASE("validate_family: trivial family is valid at any depth") {
  Family f = trivial_family(10, 8, forward(10));
  CHECK(validate_family(f, 8).ok);
}

TEST_CASE("validate_family: violations are caught") {
  Family f = trivial_family(10, 4, forward(10));
  f.levels[2].clear();  // empty level
  CHECK_FALSE(validate_family(f, 4).ok);

  Family g = trivial_family(10, 3, forward(10));
  g.levels[2] = {{0, 1}};  // does not properly extend its predecessor
  auto rep = validate_family(g, 3);
  CHECK_FALSE(rep.ok);
  CHECK(rep.message.find("level 2") != std::string::npos);

  // an (A2) violation: level-2 set whose new element is <= max(level 1)
  Family h{forward(10), {{{0}}, {{0, 5}}, {{0, 3, 5}}}};
  CHECK_FALSE(validate_family(h, 3).ok);
}

TEST_CASE("family file round trip") {
  Family f = seeded_family(20, 11, 5, 3);
  std::string text = serialize_family(f);
  Family back = parse_family(text);
  CHECK(back.ambient == f.ambient);
  CHECK(back.levels == f.levels);
  CHECK(serialize_family(back) == text);
}

TEST_CASE("prepend") {
  // E = {} is the identity
  Family f = trivial_family(10, 4, forward(10));
  CHECK(prepend({}, f).levels == f.levels);

  // shifted trivial family: S(n) = {[1, n+1]}
  Family shifted{forward(10), {}};
  for (uint32_t k = 0; k < 4; ++k) {
    VertexSet e;
    for (Vertex v = 1; v <= k + 1; ++v) e.push_back(v);
    shifted.levels.push_back({e});
  }
  Family sum = prepend({0}, shifted);
  for (uint32_t k = 0; k < 4; ++k) {
    VertexSet expect;
    for (Vertex v = 0; v <= k + 1; ++v) expect.push_back(v);
    CHECK(sum.levels[k] == std::vector<VertexSet>{expect});
  }
  CHECK(validate_family(sum, 4).ok);

  CHECK_THROWS_AS(prepend({0}, trivial_family(10, 3, forward(10))), Error);  // overlaps S(0)
}

TEST_CASE("restrict_family") {
  Family f = trivial_family(10, 8, forward(10));
  // E = [0,k] at level k: (S|E)(m) = {(k, k+m+1]}
  uint32_t k = 2;
  Family r = restrict_family(f, k, {0, 1, 2});
  REQUIRE(r.depth() == 5);
  for (uint32_t m = 0; m < r.depth(); ++m) {
    VertexSet expect;
    for (Vertex v = k + 1; v <= k + m + 1; ++v) expect.push_back(v);
    CHECK(r.levels[m] == std::vector<VertexSet>{expect});
  }

  // leaf with no extensions: empty family, depth 0
  Family leafy{forward(10), {{{0}}, {{0, 1}, {0, 2}}, {{0, 1, 3}}}};
  REQUIRE(validate_family(leafy, 3).ok);
  CHECK(restrict_family(leafy, 1, {0, 2}).depth() == 0);

  // E + (S|E) sits below S
  Family sub = prepend({0, 1, 2}, r);
  CHECK(family_leq(sub, f, sub.depth()).holds);
}

TEST_CASE("family_leq: reflexivity, the even/odd example, and a failure") {
  Family f = trivial_family(12, 6, forward(12));
  CHECK(family_leq(f, f, 6).holds);

  // S'(n) = {evens <= n, odds <= n} sits below the trivial family
  Family eo{forward(12), {}};
  for (uint32_t k = 0; k < 6; ++k) {
    VertexSet ev, od;
    for (Vertex v = 0; v <= k; ++v) (v % 2 ? od : ev).push_back(v);
    std::vector<VertexSet> level;
    if (!ev.empty()) level.push_back(ev);
    if (!od.empty()) level.push_back(od);
    eo.levels.push_back(level);
  }
  auto leq = family_leq(eo, f, 6);
  CHECK(leq.holds);
  CHECK(leq.witness.size() == 6);

  // the trivial family does not sit below a family missing large elements
  Family small{forward(12), {{{0}}, {{0, 1}}}};
  auto bad = family_leq(f, small, 6);
  CHECK_FALSE(bad.holds);
  CHECK(*bad.failing_level == 2);
}

TEST_CASE("family_leq is transitive on seeded families") {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    Family s = seeded_family(30, seed, 6, 3);
    Family mid = restrict_family(s, 0, s.levels[0][0]);
    if (mid.depth() < 2) continue;
    Family low = restrict_family(mid, 0, mid.levels[0][0]);
    if (low.depth() < 1) continue;
    CHECK(family_leq(low, mid, low.depth()).holds);
    CHECK(family_leq(mid, s, mid.depth()).holds);
    CHECK(family_leq(low, s, low.depth()).holds);
  }
}

TEST_CASE("pointwise_refine: constant label returns a copy (case 2)") {
  Family f = trivial_family(10, 6, forward(10));
  PointwisePartition g;
  for (Vertex v = 0; v < 10; ++v) g.g[v] = 0;
  auto res = pointwise_refine(f, g, 6);
  CHECK(res.label == 0);
  CHECK(res.certificate.strips.empty());
  CHECK(res.family.levels == f.levels);
}

TEST_CASE("pointwise_refine: parity labels on the trivial family") {
  // hand-derived bounded trace: the even class {0,2,4,6} of level 6 is the
  // least one persisting through the remaining two levels, so it strips and
  // the odd complements come back
  Family f = trivial_family(10, 8, forward(10));
  PointwisePartition g;
  for (Vertex v = 0; v < 10; ++v) g.g[v] = v % 2;
  auto res = pointwise_refine(f, g, 8);
  CHECK(res.label == 1);
  REQUIRE(res.certificate.strips.size() == 1);
  CHECK(res.certificate.strips[0].level == 6);
  CHECK(res.certificate.strips[0].persisting == VertexSet{0, 2, 4, 6});
  REQUIRE(res.family.depth() == 2);
  CHECK(res.family.levels[0] == std::vector<VertexSet>{{1, 3, 5}});
  CHECK(res.family.levels[1] == std::vector<VertexSet>{{1, 3, 5, 7}});
}

TEST_CASE("pointwise_refine: a persisting class strips into case 1") {
  // label 0 lives on {0} only: the class {0} persists, so the refinement
  // returns the complementary label-1 parts
  Family f = trivial_family(10, 6, forward(10));
  PointwisePartition g;
  g.g[0] = 0;
  for (Vertex v = 1; v < 10; ++v) g.g[v] = 1;
  auto res = pointwise_refine(f, g, 6);
  CHECK(res.label == 1);
  REQUIRE(res.certificate.strips.size() == 1);
  CHECK(res.certificate.strips[0].persisting == VertexSet{0});
  CHECK(res.certificate.strips[0].level == 0);
  REQUIRE(res.family.depth() >= 3);
  CHECK(res.family.levels[1] == std::vector<VertexSet>{{1}});
  CHECK(res.family.levels[2] == std::vector<VertexSet>{{1, 2}});
}

TEST_CASE("pointwise_refine errors") {
  Family f = trivial_family(10, 6, forward(10));
  PointwisePartition partial;
  partial.g[0] = 0;  // undefined elsewhere
  CHECK_THROWS_AS(pointwise_refine(f, partial, 6), Error);

  PointwisePartition g;
  for (Vertex v = 0; v < 10; ++v) g.g[v] = 0;
  CHECK_THROWS_AS(pointwise_refine(f, g, 1), Error);  // too shallow
}

TEST_CASE("family_split: forward and backward ambient on the trivial family") {
  // every x > 1 beats both 0 and 1 in the backward tournament
  Family fb = trivial_family(12, 8, backward(12));
  auto back = family_split(fb, 1, {0, 1}, 8);
  CHECK(back.e0.empty());
  CHECK(back.e1 == VertexSet{0, 1});

  // in the forward tournament both 0 and 1 beat every later x
  Family ff = trivial_family(12, 8, forward(12));
  auto fwd = family_split(ff, 1, {0, 1}, 8);
  CHECK(fwd.e0 == VertexSet{0, 1});
  CHECK(fwd.e1.empty());

  // singleton E: one side trivial
  auto single = family_split(ff, 0, {0}, 8);
  CHECK(single.e0.size() + single.e1.size() == 1);
}

TEST_CASE("family_split postconditions on seeded corpora") {
  uint32_t checked = 0;
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    Family s = seeded_family(40, seed, 8, 3);
    uint32_t lvl = 1;
    if (s.depth() <= lvl + 2) continue;
    const VertexSet* pick = nullptr;
    for (const auto& e : s.levels[lvl]) {
      Family r = restrict_family(s, lvl, e);
      if (r.depth() + lvl + 1 >= s.depth()) {
        pick = &e;
        break;
      }
    }
    if (!pick) continue;
    // family_split re-verifies the two family_leq facts and the direction
    // edges itself; the disjoint cover is checked here
    SplitResult res = family_split(s, lvl, *pick, s.depth());
    VertexSet cover = res.e0;
    cover.insert(cover.end(), res.e1.begin(), res.e1.end());
    std::sort(cover.begin(), cover.end());
    CHECK(cover == *pick);
    ++checked;
  }
  CHECK(checked >= 30);
}

TEST_CASE("seeded families validate and their restrictions validate") {
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    Family s = seeded_family(40, seed, 8, 3);
    CHECK(validate_family(s, s.depth()).ok);
    Family r = restrict_family(s, 0, s.levels[0][0]);
    if (r.depth() > 0) CHECK(validate_family(r, r.depth()).ok);
  }
}
