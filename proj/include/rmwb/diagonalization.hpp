#pragma once

#include <map>

#include "rmwb/instances.hpp"

namespace rmwb {

// Δ⁰₂-style limit guesser: a total 0/1 table g(x,s), or a builtin generator.
struct LimitGuesser {
  uint32_t id = 0;

  enum class Source { Table, StableTarget, Injurious } source = Source::Table;
  // Table source: explicit rectangle, default 0 outside recorded rows.
  uint32_t rect = 0;  // g defined for x,s < rect
  std::map<std::pair<uint32_t, uint32_t>, uint8_t> rows;
  // StableTarget: claim `target` from stage s0 on, parity noise before.
  // Injurious: claim target until switch_stage, then target2.
  VertexSet target, target2;
  uint32_t s0 = 0, switch_stage = 0;

  uint8_t claims(uint32_t x, uint32_t s) const;
  uint32_t rectangle() const;  // horizon the table supports (UINT32_MAX for builtins)
};

// Strong-array approximation: per x, a convergence stage and a canonical set.
struct StrongArrayApprox {
  uint32_t id = 0;
  struct Entry {
    uint32_t stage = 0;
    VertexSet set;
  };
  std::map<uint32_t, Entry> entries;
};

struct TraceEvent {
  enum class Tag { Claim, Pick, Edge, Cancel, Default } tag;
  uint32_t stage = 0;
  uint32_t e = 0;       // acting requirement (Claim/Pick/Edge/Cancel)
  uint32_t by = 0;      // Cancel: the higher-priority requirement that acted
  Vertex u = 0, v = 0;  // Edge/Default: T(u,v) declared
  VertexSet set;        // Claim: claimed group; Pick: {xi,xj} or witness data
  uint32_t aux = 0;     // Pick (dkls): witness index (0 first, 1 second)
};

struct ConstructionTrace {
  std::string kind;  // "klsw" | "dkls"
  uint32_t horizon = 0;
  std::vector<TraceEvent> events;
};

std::string serialize_trace(const ConstructionTrace& t);
ConstructionTrace parse_trace(const std::string& text);
// Rebuild the tournament from the Edge/Default events alone.
Tournament replay_trace(const ConstructionTrace& t);

// Adversary files: guesser rows "x s v", array rows "x stage {set}".
struct AdversarySuite {
  std::vector<LimitGuesser> guessers;
  std::vector<StrongArrayApprox> arrays;
};

AdversarySuite parse_adversaries(const std::string& text);
std::string serialize_adversaries(const AdversarySuite& a);

// Builtin generator families, by spec string:
//   stable-target:d=0,1,2,3;s0=0
//   injurious:d=...;d2=...;switch=50
//   canonical-interval:k=3;count=8
AdversarySuite builtin_adversaries(const std::vector<std::string>& specs);

std::pair<Tournament, ConstructionTrace> construct_klsw(const std::vector<LimitGuesser>& guessers,
                                                        uint32_t horizon);

struct KlswReport {
  bool acted = false;            // requirement ever picked a pair
  bool stabilized = false;
  uint32_t stable_stage = 0;     // s*: picks constant from here on
  Vertex xi = 0, xj = 0;         // the stabilized pair
  bool cycles_ok = false;        // {xi,xj,t} non-transitive for all t in [s*, horizon)
  VertexSet extensions;          // one-point transitive extensions of the pair
  bool extension_bound_ok = false;  // all extensions precede s*
  std::string message;
};

KlswReport verify_klsw(const Tournament& t, const ConstructionTrace& trace, uint32_t e,
                       uint32_t window);

std::pair<Tournament, ConstructionTrace> construct_dkls(const std::vector<StrongArrayApprox>& arrays,
                                                        uint32_t horizon);

struct DklsReport {
  bool has_first = false, has_second = false;
  uint32_t x0 = 0, x1 = 0;
  uint32_t stage0 = 0, stage1 = 0;
  bool cross_ok = false;       // T(y0,y1) for the witness sets
  bool tail_ok = false;        // T(s,y0), T(y1,s) for s above stage1
  bool extension_bound_ok = false;  // no one-point extension of {y0,y1} above stage1
  std::string message;
};

DklsReport verify_dkls(const Tournament& t, const ConstructionTrace& trace, uint32_t e);

}  // namespace rmwb
