#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rmwb/error.hpp"

namespace rmwb {

using Vertex = uint32_t;
using VertexSet = std::vector<Vertex>;  // sorted ascending, no duplicates

enum class Kind { Tournament, Coloring, Poset, LinOrder };

const char* kind_name(Kind k);
Kind kind_from_name(const std::string& name);

// Index of pair {i,j}, i<j<n, in row-major order: (0,1),(0,2),...,(1,2),...
inline size_t pair_index(uint32_t n, Vertex i, Vertex j) {
  return static_cast<size_t>(i) * n - static_cast<size_t>(i) * (i + 1) / 2 + (j - i - 1);
}
inline size_t pair_count(uint32_t n) { return static_cast<size_t>(n) * (n - 1) / 2; }

// Total 2-coloring of the pairs of [0,n).
class Coloring {
 public:
  Coloring() : n_(1) {}
  Coloring(uint32_t n, std::vector<uint8_t> bits);
  static Coloring constant(uint32_t n, uint8_t color);

  uint32_t n() const { return n_; }
  uint8_t color(Vertex x, Vertex y) const {
    if (x > y) std::swap(x, y);
    return bits_[pair_index(n_, x, y)];
  }
  const std::vector<uint8_t>& bits() const { return bits_; }
  bool operator==(const Coloring&) const = default;

 private:
  uint32_t n_;
  std::vector<uint8_t> bits_;  // pair-indexed colors in {0,1}
};

// Complete asymmetric orientation of the pairs of [0,n).
// bit=1 for pair (i,j), i<j, means T(i,j) holds (i beats j).
class Tournament {
 public:
  Tournament() : n_(1) {}
  Tournament(uint32_t n, std::vector<uint8_t> bits);

  uint32_t n() const { return n_; }
  bool beats(Vertex a, Vertex b) const {
    if (a == b) return false;
    if (a < b) return bits_[pair_index(n_, a, b)] != 0;
    return bits_[pair_index(n_, b, a)] == 0;
  }
  const std::vector<uint8_t>& bits() const { return bits_; }
  bool operator==(const Tournament&) const = default;

 private:
  uint32_t n_;
  std::vector<uint8_t> bits_;
};

// Finite poset on [0,n); reflexivity, antisymmetry and transitivity are
// checked at construction.  order_respecting means x<=y whenever x (/= y)
// precedes y, which is the ground-forcing convention for generated posets.
class Poset {
 public:
  Poset() : n_(1), leq_{1}, order_respecting_(true) {}
  Poset(uint32_t n, std::vector<uint8_t> leq_matrix);

  uint32_t n() const { return n_; }
  bool leq(Vertex x, Vertex y) const { return leq_[static_cast<size_t>(x) * n_ + y] != 0; }
  bool comparable(Vertex x, Vertex y) const { return leq(x, y) || leq(y, x); }
  bool order_respecting() const { return order_respecting_; }
  const std::vector<uint8_t>& matrix() const { return leq_; }
  bool operator==(const Poset&) const = default;

 private:
  uint32_t n_;
  std::vector<uint8_t> leq_;
  bool order_respecting_;
};

// Finite linear order on [0,n); rank[v] is the position of v (rank 0 is
// the ≺-least element).
class LinearOrder {
 public:
  LinearOrder() : n_(1), rank_{0} {}
  LinearOrder(uint32_t n, std::vector<Vertex> rank);
  static LinearOrder from_order(const std::vector<Vertex>& order);
  static LinearOrder identity(uint32_t n);

  uint32_t n() const { return n_; }
  Vertex rank(Vertex v) const { return rank_[v]; }
  bool precedes(Vertex a, Vertex b) const { return rank_[a] < rank_[b]; }
  // Vertices listed from ≺-least to ≺-greatest.
  std::vector<Vertex> order() const;
  bool operator==(const LinearOrder&) const = default;

 private:
  uint32_t n_;
  std::vector<Vertex> rank_;
};

using Instance = std::variant<Tournament, Coloring, Poset, LinearOrder>;

Kind instance_kind(const Instance& x);
uint32_t instance_n(const Instance& x);

// Text format v1.  Canonical serialization round-trips byte-exactly.
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& x);

// Deterministic generation from the fixed xorshift64* stream.
Instance random_instance(Kind kind, uint32_t n, uint64_t seed);

// Finite-horizon stability classification.  A vertex whose tail condition
// holds on [max(v+1,tau), n) lands in the matching class; an empty tail
// counts as the a-side condition holding.
struct StabilityReport {
  Kind kind;
  uint32_t tau = 0;
  VertexSet a_star;      // coloring: tail all 0; tournament: v beats tail; poset: v below tail
  VertexSet b_star;      // coloring: tail all 1; tournament: tail beats v; poset: tail incomparable
  VertexSet c_star;      // poset only: tail below v
  VertexSet unresolved;  // mixed tail
};

StabilityReport stability_report(const Coloring& c, uint32_t tau);
StabilityReport stability_report(const Tournament& t, uint32_t tau);
StabilityReport stability_report(const Poset& m, uint32_t tau);

// Finite stand-in for the stable-ish cut V: a ≺-downward closed set within
// the horizon.  Threshold mode is a heuristic; only explicit mode validates
// a caller-supplied cut.
struct StableishReport {
  VertexSet cut;                        // V-hat, sorted by vertex id
  bool heuristic = false;               // true for threshold mode
  std::optional<uint32_t> theta;        // threshold when heuristic
  std::optional<Vertex> max_of_cut;     // ≺-max of V-hat, if nonempty
  std::optional<Vertex> min_of_rest;    // ≺-min of the complement, if nonempty
};

StableishReport stableish_classify(const LinearOrder& l, const VertexSet& explicit_cut);
StableishReport stableish_classify(const LinearOrder& l, uint32_t theta);

enum class MonotoneSide { AscendingInCut, DescendingInComplement };

// Greedy monotone sequence through the chosen side of the cut: always take
// the least ℕ-index that extends the sequence.  Output is strictly increasing
// in ℕ and strictly monotone in ≺.
std::vector<Vertex> extract_monotone_from_cut(const LinearOrder& l, const StableishReport& report,
                                              MonotoneSide side);

}  // namespace rmwb
