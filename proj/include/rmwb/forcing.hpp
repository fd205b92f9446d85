#pragma once

#include <map>

#include "rmwb/families.hpp"
#include "rmwb/solvers.hpp"

namespace rmwb {

// ---- ADS pair conditions (σ ascending, τ descending, σ ≺ τ) -------------

struct AdsCondition {
  LinearOrder ambient;
  std::vector<Vertex> sigma;  // ≺-ascending
  std::vector<Vertex> tau;    // ≺-descending
};

struct AdsReport {
  bool in_p = false;                 // member of the condition set
  std::optional<bool> in_v;          // member of the cut-respecting subset, when a cut was given
  std::string reason;                // first failure, if any
};

AdsReport validate_ads(const AdsCondition& p, const VertexSet* cut = nullptr);

// Split pair q0=(σ⌢σ', τ), q1=(σ, τ⌢τ') with σ' ≺ τ'.  Returns the index of
// the side that respects the cut; the shape is checked first.
uint32_t split_pair_select(const AdsCondition& p, const AdsCondition& q0, const AdsCondition& q1,
                           const VertexSet& cut);

// ---- EM triple conditions (F, I, S) --------------------------------------

struct EmCondition {
  VertexSet f;
  IntervalSpec interval;
  Family family;
};

// Checks the three defining bullets; throws on violation.
void require_em_condition(const EmCondition& q, uint32_t depth);

// q' extends q: F grows upward inside I, the interval nests, and the
// prepended family refines S.
bool validate_em_extension(const EmCondition& q_prime, const EmCondition& q);

// ---- ground conditions ----------------------------------------------------

struct GroundPosetCondition {
  Poset f;
  VertexSet a_star, b_star;
};

struct GroundColoringCondition {
  Coloring c;
  VertexSet a_star, b_star;
};

void require_ground(const GroundPosetCondition& g);
void require_ground(const GroundColoringCondition& g);
bool ground_extends(const GroundPosetCondition& ext, const GroundPosetCondition& base);
bool ground_extends(const GroundColoringCondition& ext, const GroundColoringCondition& base);

// ---- requirement tables ---------------------------------------------------

enum class ReqFlavor { AdsA, AdsD, AdsFull, Em };

struct ObjectCode {
  VertexSet first;            // the set (ads halves / em transitive sets)
  VertexSet second;           // τ side of a full condition
  bool is_pair = false;
  auto operator<=>(const ObjectCode&) const = default;
};

struct ReqEntry {
  ObjectCode object;
  uint32_t a = 0, b = 0;
};

// Finite monotone table standing in for a requirement relation: an object is
// accepted when it extends a recorded object.  The designated astar/bstar
// universes play the role of A*(c)/B*(c) in universe-level queries; they
// default to every value used by an entry.  builtin "total" accepts every
// query outright.
struct RequirementTable {
  ReqFlavor flavor = ReqFlavor::Em;
  bool builtin_total = false;
  std::vector<ReqEntry> entries;
  std::map<VertexSet, uint32_t> ak;       // em flavor: a_K on recorded objects
  std::optional<uint32_t> ak_default;
  std::optional<VertexSet> astar_universe;  // nullopt: derive from entries
  std::optional<VertexSet> bstar_universe;

  VertexSet a_universe() const;
  VertexSet b_universe() const;
};

RequirementTable parse_requirement_table(const std::string& text);
std::string serialize_requirement_table(const RequirementTable& k);

const char* req_flavor_name(ReqFlavor f);

// F' extends F in the §4.1 sense: F ⊆ F' and F < F'∖F.
bool em_extends(const VertexSet& f_prime, const VertexSet& f);

// Membership with explicit finite witness sets A and B (monotone in both).
bool requirement_member(const RequirementTable& k, const ObjectCode& object, const VertexSet& a,
                        const VertexSet& b);
// Universe-level membership: the A*/B* reading with the table's designated
// value universes.
bool requirement_member_universe(const RequirementTable& k, const ObjectCode& object);
// K^{a,(x,∞)} query: entries with this exact a-value and b strictly above x.
bool requirement_member_clamped(const RequirementTable& k, const ObjectCode& object, uint32_t a,
                                uint32_t x);

// a_K(F): value of any recorded object F extends; conflicting values are a
// table error.
std::optional<uint32_t> requirement_ak(const RequirementTable& k, const VertexSet& f);

// ---- bounded essential / settle machinery --------------------------------

struct Bounds {
  uint32_t x_max = 0;       // hardest x tested (sets A/B live above it)
  uint32_t y_max = 0;       // hardest y (ads shapes)
  uint32_t set_bound = 0;   // witness sets live inside (x, set_bound]
  uint32_t level_bound = 0; // levels / extension lengths searched
};

struct EssentialWitness {
  VertexSet a, b;
  // ads shapes: the split pair (extensions only)
  std::vector<Vertex> sigma_ext, tau_ext;
  // ads half shapes: the prefix length m with Λ↾m in the table
  std::optional<uint32_t> prefix_len;
  // em shape: the witnessing level and one accepted (side, F') per
  // (set, partition) of that level
  std::optional<uint32_t> level;
  struct PartWitness {
    VertexSet e, e0;
    uint32_t side;
    VertexSet f_prime;
  };
  std::vector<PartWitness> partition_witnesses;
};

struct EssentialResult {
  bool essential = false;
  std::optional<EssentialWitness> witness;
};

// Quantifier alternation of the matching "essential" definition with every
// quantifier clamped to the bounds.  A false verdict is relative to the
// bounds, never categorical.
EssentialResult bounded_essential(const RequirementTable& k, const AdsCondition& base,
                                  const Bounds& bounds);
EssentialResult bounded_essential(const RequirementTable& k, const EmCondition& base,
                                  const Bounds& bounds);

// Does (F,I,S) settle K at witness x, reading paths as depth-D survival?
bool settles_check(const EmCondition& q, const RequirementTable& k, uint32_t x, uint32_t depth);

struct SettleCertificate {
  bool essential_branch = false;
  // essential branch:
  std::optional<uint32_t> level;
  VertexSet split_e, split_e0, split_e1;
  uint32_t side = 0;
  VertexSet f_prime;
  // non-essential branch:
  uint32_t x = 0;            // the settling witness
  uint32_t tree_case = 0;    // 1: persisting left half, 2: abandoned labels
  VertexSet persisting_left;
};

struct SettleResult {
  EmCondition condition;
  SettleCertificate certificate;
};

// Bounded Theorem-style settling step: essential branch through
// family_split and an in-table density witness, non-essential branch
// through the left-half tree extraction.
SettleResult settle_extend(const EmCondition& q, const RequirementTable& k, const Bounds& bounds,
                           uint32_t depth);

// ---- partition path tree (König-style extraction) ------------------------

struct PartitionTable {
  // accepted ordered partitions: level -> list of left halves P
  std::map<uint32_t, std::vector<VertexSet>> accepted;
};

PartitionTable parse_partition_table(const std::string& text);

struct PathTreeNode {
  uint32_t level = 0;
  VertexSet label;
  std::optional<uint32_t> parent;
};

struct PathTreeResult {
  std::vector<PathTreeNode> nodes;
  uint32_t tree_case = 0;
  VertexSet extracted;
};

// Builds the labeled tree of left halves over the chain S1 ⊂ ... ⊂ Sm and
// extracts a set by the two-case analysis.
PathTreeResult partition_path_tree(const std::vector<VertexSet>& chain, const PartitionTable& r);

// ---- ground density operations --------------------------------------------

GroundPosetCondition ground_decide(const GroundPosetCondition& g, Vertex i);
GroundColoringCondition ground_decide(const GroundColoringCondition& g, Vertex i);

// Positive-constraint functional table.  An entry fires on a condition when
// the domain is large enough and every recorded pair value matches.
struct FunctionalClause {
  enum class Type { Dom, Rel, Color } type;
  uint32_t i = 0, j = 0, v = 0;  // Dom: i = required domain size
};

struct FunctionalEntry {
  uint32_t output;
  std::vector<FunctionalClause> clauses;
};

struct FunctionalTable {
  Kind kind = Kind::Coloring;  // poset or coloring
  std::vector<FunctionalEntry> entries;
};

FunctionalTable parse_functional_table(const std::string& text);

struct DiagonalizeSuccess {
  uint32_t a = 0, b = 0;  // Φ(a)=Φ(b)=1 with a ∈ A*, b ∈ B*
};

struct BudgetReport {
  uint32_t rounds_completed = 0;
  std::string reason;
};

template <typename Cond>
struct DiagonalizeResult {
  Cond condition;
  std::optional<DiagonalizeSuccess> success;
  std::optional<BudgetReport> budget;
};

DiagonalizeResult<GroundPosetCondition> ground_diagonalize(const GroundPosetCondition& g,
                                                           const FunctionalTable& phi,
                                                           uint32_t budget);
DiagonalizeResult<GroundColoringCondition> ground_diagonalize(const GroundColoringCondition& g,
                                                              const FunctionalTable& phi,
                                                              uint32_t budget);

}  // namespace rmwb
