// Brute-force reference implementations used as independent oracles.  These
// must stay dumber than the library code they check: plain subset
// enumeration, no pruning, no shared helpers beyond the instance accessors.
#pragma once

#include <vector>

#include "rmwb/instances.hpp"

namespace oracle {

using rmwb::Coloring;
using rmwb::LinearOrder;
using rmwb::Poset;
using rmwb::Tournament;
using rmwb::Vertex;
using rmwb::VertexSet;

inline std::vector<VertexSet> all_subsets(uint32_t n) {
  std::vector<VertexSet> out;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    VertexSet s;
    for (uint32_t v = 0; v < n; ++v)
      if (mask & (1u << v)) s.push_back(v);
    out.push_back(std::move(s));
  }
  return out;
}

inline bool homogeneous(const Coloring& c, const VertexSet& s, uint8_t color) {
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (c.color(s[i], s[j]) != color) return false;
  return true;
}

inline uint32_t max_homogeneous_size(const Coloring& c) {
  uint32_t best = 0;
  for (const auto& s : all_subsets(c.n()))
    if (homogeneous(c, s, 0) || homogeneous(c, s, 1))
      best = std::max<uint32_t>(best, static_cast<uint32_t>(s.size()));
  return best;
}

inline bool transitive(const Tournament& t, const VertexSet& s) {
  for (Vertex a : s)
    for (Vertex b : s)
      for (Vertex c : s) {
        if (a == b || b == c || a == c) continue;
        if (t.beats(a, b) && t.beats(b, c) && !t.beats(a, c)) return false;
      }
  return true;
}

inline uint32_t max_transitive_size(const Tournament& t) {
  uint32_t best = 0;
  for (const auto& s : all_subsets(t.n()))
    if (transitive(t, s)) best = std::max<uint32_t>(best, static_cast<uint32_t>(s.size()));
  return best;
}

inline bool chain(const Poset& m, const VertexSet& s) {
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (!m.comparable(s[i], s[j])) return false;
  return true;
}

inline bool antichain(const Poset& m, const VertexSet& s) {
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j)
      if (m.comparable(s[i], s[j])) return false;
  return true;
}

inline std::pair<uint32_t, uint32_t> poset_extreme_sizes(const Poset& m) {
  uint32_t ch = 0, ac = 0;
  for (const auto& s : all_subsets(m.n())) {
    if (chain(m, s)) ch = std::max<uint32_t>(ch, static_cast<uint32_t>(s.size()));
    if (antichain(m, s)) ac = std::max<uint32_t>(ac, static_cast<uint32_t>(s.size()));
  }
  return {ch, ac};
}

// Longest monotone subsequence by full subset enumeration (n small).
inline std::pair<uint32_t, uint32_t> monotone_sizes(const LinearOrder& l) {
  uint32_t asc = 0, desc = 0;
  for (const auto& s : all_subsets(l.n())) {
    bool a = true, d = true;
    for (size_t i = 0; i + 1 < s.size(); ++i) {
      a = a && l.precedes(s[i], s[i + 1]);
      d = d && l.precedes(s[i + 1], s[i]);
    }
    if (a) asc = std::max<uint32_t>(asc, static_cast<uint32_t>(s.size()));
    if (d) desc = std::max<uint32_t>(desc, static_cast<uint32_t>(s.size()));
  }
  return {asc, desc};
}

}  // namespace oracle
