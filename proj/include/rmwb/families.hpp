#pragma once

#include <map>

#include "rmwb/instances.hpp"

namespace rmwb {

// Leveled, finitely branching tree of finite subtournaments of an ambient
// tournament.  Level lists are kept canonical: each set sorted ascending,
// sets within a level sorted lexicographically, no duplicates.
struct Family {
  Tournament ambient;
  std::vector<std::vector<VertexSet>> levels;

  uint32_t depth() const { return static_cast<uint32_t>(levels.size()); }
  // max of the union of level k; -1 when the union is empty
  int64_t level_max(uint32_t k) const;
  void canonicalize();
};

struct FamilyValidity {
  bool ok = true;
  std::string message;
  // predecessor index (into the previous level) of every set at levels >= 1
  std::vector<std::vector<uint32_t>> predecessors;
};

// Checks (A1), (A2) and per-level nonemptiness up to depth d.
FamilyValidity validate_family(const Family& s, uint32_t d);
void require_valid_family(const Family& s, uint32_t d);

Family parse_family(const std::string& text);
std::string serialize_family(const Family& s);

// (E+S)(n) = { E ∪ E' : E' ∈ S(n) }; requires E < every set of S(0).
Family prepend(const VertexSet& e, const Family& s);

// Subtree above E with E removed from every node; depth shrinks to the
// levels that stay nonempty.
Family restrict_family(const Family& s, uint32_t level, const VertexSet& e);

struct FamilyLeq {
  bool holds = false;
  std::vector<uint32_t> witness;  // least m per level n of S'
  std::optional<uint32_t> failing_level;
};

// S' <= S up to depth d: every S'(n)-set is contained in some S(m)-set.
FamilyLeq family_leq(const Family& s_prime, const Family& s, uint32_t d);

struct PointwisePartition {
  std::map<Vertex, uint32_t> g;
};

struct RefineStrip {
  uint32_t label;
  uint32_t level;
  VertexSet persisting;
};

struct RefineCertificate {
  std::vector<RefineStrip> strips;  // case-1 events, in order
  uint32_t final_label = 0;
  std::vector<uint32_t> skip_levels;  // levels of the final case-2 thinning
  uint32_t depth = 0;                 // certified output depth
};

struct RefineResult {
  uint32_t label;
  Family family;
  RefineCertificate certificate;
};

// Bounded two-case refinement: either some label-class set persists through
// every remaining level (case 1: recurse on the complementary parts) or the
// label's classes are all eventually abandoned (case 2: level-skipping copy).
// The result satisfies family_leq(result, class family of the label).
RefineResult pointwise_refine(const Family& s, const PointwisePartition& g, uint32_t d);

struct SplitResult {
  VertexSet e0, e1;  // E0 -> everything in the family, everything -> E1
  Family family;
  RefineCertificate certificate;
};

// Partition of E ∈ S(level) by the beats/beaten pattern of later vertices,
// refined to a family whose sets all point the same way at E.
SplitResult family_split(const Family& s, uint32_t level, const VertexSet& e, uint32_t d);

// Deterministic corpus builder (also used by the CLI): ambient tournament
// from the seed, then `depth` levels with 1..branching children per node.
Family seeded_family(uint32_t ambient_n, uint64_t seed, uint32_t depth, uint32_t branching);

std::string set_to_string(const VertexSet& s);
VertexSet set_from_string(const std::string& text);

}  // namespace rmwb
