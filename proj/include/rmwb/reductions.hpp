#pragma once

#include <optional>
#include <string>

#include "rmwb/instances.hpp"

namespace rmwb {

enum class SolutionKind { Homogeneous, Chain, Antichain, Ascending, Descending, Transitive };

const char* solution_kind_name(SolutionKind k);
SolutionKind solution_kind_from_name(const std::string& name);

// A claimed finite solution.  Vertices are strictly ℕ-increasing; the claimed
// kind is checked against the paired instance by verify_solution.
struct SolutionSet {
  SolutionKind kind;
  std::optional<uint8_t> color;  // homogeneous only
  std::vector<Vertex> vertices;
};

// Returns an explanation when the claimed kind fails, nothing when it holds.
std::optional<std::string> solution_violation(const Instance& inst, const SolutionSet& s);
void verify_solution(const Instance& inst, const SolutionSet& s);  // throws Violation

SolutionSet parse_solution(const std::string& text);
std::string serialize_solution(const SolutionSet& s);

// The four instance transformations and their solution pullbacks.

// c_M(x,y) = 0 iff x,y comparable in M.
Coloring poset_to_coloring(const Poset& m);
// color 0 -> chain, color 1 -> antichain (verified both ways).
SolutionSet homogeneous_to_chain_antichain(const Poset& m, const SolutionSet& h);

// x ⪯ y iff x ≤_L y and x ≤ y.
Poset linear_to_poset(const LinearOrder& l);
// chain -> ascending, antichain -> descending (verified).
SolutionSet solution_to_monotone(const LinearOrder& l, const SolutionSet& s);

// T_c(x,y) for x<y iff c(x,y)=1; T_c(y,x) iff c(x,y)=0.
Tournament coloring_to_tournament(const Coloring& c);
// c_T(x,y) = 0 iff T(x,y), for x<y.
Coloring tournament_to_coloring(const Tournament& t);

// Linear order induced on a transitive subset by the beat relation, returned
// over the subinstance: position i of the result names S.vertices[i].
LinearOrder induced_order(const Tournament& t, const SolutionSet& s);

// Thinning step of the EM+ADS pipeline: the longer of the longest
// ℕ-increasing ascending / descending subsequences of S under the induced
// order, returned as a homogeneous set (ascending -> color 1).  Ties go to
// the ascending side.  Output size >= ceil(sqrt(|S|)).
SolutionSet transitive_to_homogeneous(const Coloring& c, const SolutionSet& s);

}  // namespace rmwb
