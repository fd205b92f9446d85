#pragma once

#include "rmwb/reductions.hpp"

namespace rmwb {

// Interval of a tournament between two endpoints of a transitive set, with
// the virtual endpoints -inf/+inf encoded as empty optionals.
struct IntervalSpec {
  std::optional<Vertex> low;   // nullopt = -inf
  std::optional<Vertex> high;  // nullopt = +inf
  bool operator==(const IntervalSpec&) const = default;
};

std::string interval_to_string(const IntervalSpec& i);

// Membership used throughout: x sits in the gap (a,b) of the transitive set F
// exactly when F ∪ {x} is transitive with x landing between a and b, i.e. x
// loses to everything up to a and beats everything from b on.
bool interval_member(const Tournament& t, const std::vector<Vertex>& f_sorted_by_order,
                     const IntervalSpec& i, Vertex x);

// Maximum homogeneous set, lexicographically least among the maximums.
// Exact branch-and-bound over both color graphs; n must be <= 64.
SolutionSet max_homogeneous(const Coloring& c);

// Maximum transitive subset, lexicographically least among the maximums.
SolutionSet max_transitive(const Tournament& t);

// Exact longest chain and maximum antichain, each lexicographically least.
std::pair<SolutionSet, SolutionSet> poset_extremes(const Poset& m);

// Exact longest ℕ-increasing ascending and descending subsequences.
std::pair<SolutionSet, SolutionSet> longest_monotone(const LinearOrder& l);

// { a ∉ F : F ∪ {a} transitive }.  F must be transitive.
VertexSet one_point_extensions(const Tournament& t, const VertexSet& f);

// The |F|+1 minimal intervals of F in ≤_F order together with their member
// sets; members partition one_point_extensions(t, f).
struct IntervalMembers {
  IntervalSpec interval;
  VertexSet members;
};
std::vector<IntervalMembers> minimal_intervals(const Tournament& t, const VertexSet& f);

// Largest d <= k such that F extends to a transitive set of size |F|+d.
uint32_t extendibility_depth(const Tournament& t, const VertexSet& f, uint32_t k);

// Best partition P ∪ Q = J by min(depth(F∪P), depth(F∪Q)), ties to the
// lexicographically least P.  When a half reaches depth >= 1, a minimal
// interval of it inside I with members is reported if one exists.
struct PartitionExtendible {
  VertexSet p, q;
  uint32_t depth_p = 0, depth_q = 0;
  std::optional<IntervalSpec> surviving_p, surviving_q;
};
PartitionExtendible partition_extendible(const Tournament& t, const VertexSet& f,
                                         const IntervalSpec& i, const VertexSet& j, uint32_t k);

// F listed in ≤_F order (least first); fails if F is not transitive.
std::vector<Vertex> order_transitive(const Tournament& t, const VertexSet& f);

}  // namespace rmwb
