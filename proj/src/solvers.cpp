#include "rmwb/solvers.hpp"

#include <algorithm>
#include <bit>

namespace rmwb {

std::string interval_to_string(const IntervalSpec& i) {
  std::string lo = i.low ? std::to_string(*i.low) : std::string("-inf");
  std::string hi = i.high ? std::to_string(*i.high) : std::string("+inf");
  return "(" + lo + "," + hi + ")";
}

namespace {

bool is_sorted_set(const VertexSet& v) {
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1]) return false;
  return true;
}

void check_vertex_set(const VertexSet& f, uint32_t n, const char* what) {
  if (!is_sorted_set(f)) fail_input(std::string(what) + ": vertex set must be strictly increasing");
  if (!f.empty() && f.back() >= n) fail_input(std::string(what) + ": vertex out of range");
}

// --- maximum clique machinery on <=64-vertex graphs ---------------------

struct MaskGraph {
  uint32_t n;
  std::vector<uint64_t> adj;  // adj[v] excludes v itself

  uint32_t clique_bound(uint64_t cand) const {
    // greedy coloring upper bound
    uint32_t colors = 0;
    while (cand) {
      uint64_t cls = cand;
      ++colors;
      while (cls) {
        int v = std::countr_zero(cls);
        cls &= ~(adj[v] | (1ULL << v));
        cand &= ~(1ULL << v);
      }
    }
    return colors;
  }

  void expand(uint64_t cand, uint32_t size, uint32_t& best) const {
    if (size + std::popcount(cand) <= best) return;
    if (size + clique_bound(cand) <= best) return;
    while (cand) {
      if (size + std::popcount(cand) <= best) return;
      int v = std::countr_zero(cand);
      cand &= cand - 1;
      uint64_t next = cand & adj[v];
      if (size + 1 > best) best = size + 1;
      if (next) expand(next, size + 1, best);
    }
  }

  uint32_t max_clique_size(uint64_t allowed) const {
    uint32_t best = 0;
    expand(allowed, 0, best);
    return best;
  }
};

// Lexicographically least clique of exactly the maximum size: greedily fix the
// smallest vertex whose residual neighbourhood still reaches the target.
VertexSet lex_least_max_clique(const MaskGraph& g) {
  uint64_t all = g.n == 64 ? ~0ULL : (1ULL << g.n) - 1;
  uint32_t target = g.max_clique_size(all);
  VertexSet out;
  uint64_t cand = all;
  uint32_t have = 0;
  while (have < target) {
    for (uint32_t v = 0; v < g.n; ++v) {
      if (!(cand & (1ULL << v))) continue;
      uint64_t rest = cand & g.adj[v] & ~((1ULL << (v + 1)) - 1);
      if (have + 1 + g.max_clique_size(rest) >= target) {
        out.push_back(v);
        ++have;
        cand = rest;
        break;
      }
    }
  }
  return out;
}

MaskGraph color_graph(const Coloring& c, uint8_t color) {
  if (c.n() > 64) fail_input("exact clique search supports n <= 64 only");
  MaskGraph g{c.n(), std::vector<uint64_t>(c.n(), 0)};
  for (Vertex i = 0; i + 1 < c.n(); ++i)
    for (Vertex j = i + 1; j < c.n(); ++j)
      if (c.color(i, j) == color) {
        g.adj[i] |= 1ULL << j;
        g.adj[j] |= 1ULL << i;
      }
  return g;
}

}  // namespace

SolutionSet max_homogeneous(const Coloring& c) {
  MaskGraph g0 = color_graph(c, 0), g1 = color_graph(c, 1);
  uint64_t all = c.n() == 64 ? ~0ULL : (1ULL << c.n()) - 1;
  uint32_t s0 = g0.max_clique_size(all), s1 = g1.max_clique_size(all);
  VertexSet v0, v1;
  if (s0 >= s1) v0 = lex_least_max_clique(g0);
  if (s1 >= s0) v1 = lex_least_max_clique(g1);
  SolutionSet out;
  out.kind = SolutionKind::Homogeneous;
  if (s0 > s1 || (s0 == s1 && v0 <= v1)) {
    out.color = 0;
    out.vertices = v0;
  } else {
    out.color = 1;
    out.vertices = v1;
  }
  verify_solution(Instance(c), out);
  return out;
}

namespace {

// Adding v to a transitive set: the subset of members beating v must be a
// downward segment of the ≤_F order.
bool slots_into(const Tournament& t, const std::vector<Vertex>& ordered, Vertex v) {
  bool seen_loss = false;  // v beat someone already
  for (Vertex u : ordered) {
    if (t.beats(v, u)) seen_loss = true;
    else if (seen_loss) return false;
  }
  return true;
}

void insert_ordered(const Tournament& t, std::vector<Vertex>& ordered, Vertex v) {
  auto it = ordered.begin();
  while (it != ordered.end() && t.beats(*it, v)) ++it;
  ordered.insert(it, v);
}

uint32_t max_transitive_from(const Tournament& t, std::vector<Vertex>& ordered, Vertex next,
                             uint32_t& best, uint32_t size) {
  best = std::max(best, size);
  for (Vertex v = next; v < t.n(); ++v) {
    if (size + (t.n() - v) <= best) break;
    if (!slots_into(t, ordered, v)) continue;
    insert_ordered(t, ordered, v);
    max_transitive_from(t, ordered, v + 1, best, size + 1);
    ordered.erase(std::find(ordered.begin(), ordered.end(), v));
  }
  return best;
}

// Largest transitive extension using only vertices >= next.
uint32_t max_transitive_above(const Tournament& t, std::vector<Vertex> ordered, Vertex next) {
  uint32_t best = 0;
  max_transitive_from(t, ordered, next, best, 0);
  return best;
}

}  // namespace

std::vector<Vertex> order_transitive(const Tournament& t, const VertexSet& f) {
  check_vertex_set(f, t.n(), "order_transitive");
  std::vector<Vertex> ordered;
  for (Vertex v : f) {
    if (!slots_into(t, ordered, v))
      fail_input("vertex set is not transitive (no slot for " + std::to_string(v) + ")");
    insert_ordered(t, ordered, v);
  }
  // a slot-wise insertion order is linear; double-check transitivity
  for (size_t a = 0; a < ordered.size(); ++a)
    for (size_t b = a + 1; b < ordered.size(); ++b)
      if (!t.beats(ordered[a], ordered[b])) fail_input("vertex set is not transitive");
  return ordered;
}

SolutionSet max_transitive(const Tournament& t) {
  std::vector<Vertex> empty;
  uint32_t target = max_transitive_above(t, empty, 0);
  VertexSet out;
  std::vector<Vertex> ordered;
  Vertex from = 0;
  for (uint32_t have = 0; have < target; ++have) {
    for (Vertex v = from; v < t.n(); ++v) {
      if (!slots_into(t, ordered, v)) continue;
      std::vector<Vertex> trial = ordered;
      insert_ordered(t, trial, v);
      if (have + 1 + max_transitive_above(t, trial, v + 1) >= target) {
        out.push_back(v);
        ordered = trial;
        from = v + 1;
        break;
      }
    }
  }
  SolutionSet s{SolutionKind::Transitive, std::nullopt, out};
  verify_solution(Instance(t), s);
  return s;
}

std::pair<SolutionSet, SolutionSet> poset_extremes(const Poset& m) {
  // Chains are cliques of the comparability coloring (color 0), antichains of
  // the incomparability side.
  Coloring c = poset_to_coloring(m);
  MaskGraph comp = color_graph(c, 0), incomp = color_graph(c, 1);
  SolutionSet chain{SolutionKind::Chain, std::nullopt, lex_least_max_clique(comp)};
  SolutionSet anti{SolutionKind::Antichain, std::nullopt, lex_least_max_clique(incomp)};
  verify_solution(Instance(m), chain);
  verify_solution(Instance(m), anti);
  return {chain, anti};
}

namespace {

SolutionSet monotone_solution(const LinearOrder& l, bool increasing) {
  std::vector<Vertex> ranks(l.n());
  for (Vertex v = 0; v < l.n(); ++v) ranks[v] = l.rank(v);
  size_t n = ranks.size();
  std::vector<uint32_t> len_from(n, 1);
  for (size_t i = n; i-- > 0;)
    for (size_t j = i + 1; j < n; ++j) {
      bool ok = increasing ? ranks[i] < ranks[j] : ranks[i] > ranks[j];
      if (ok) len_from[i] = std::max(len_from[i], len_from[j] + 1);
    }
  uint32_t best = 0;
  for (size_t i = 0; i < n; ++i) best = std::max(best, len_from[i]);
  SolutionSet out{increasing ? SolutionKind::Ascending : SolutionKind::Descending, std::nullopt, {}};
  uint32_t need = best;
  size_t from = 0;
  std::optional<Vertex> prev;
  while (need > 0) {
    for (size_t i = from; i < n; ++i) {
      bool ok = !prev || (increasing ? ranks[*prev] < ranks[i] : ranks[*prev] > ranks[i]);
      if (ok && len_from[i] >= need) {
        out.vertices.push_back(static_cast<Vertex>(i));
        prev = static_cast<Vertex>(i);
        from = i + 1;
        break;
      }
    }
    --need;
  }
  verify_solution(Instance(l), out);
  return out;
}

}  // namespace

std::pair<SolutionSet, SolutionSet> longest_monotone(const LinearOrder& l) {
  return {monotone_solution(l, true), monotone_solution(l, false)};
}

VertexSet one_point_extensions(const Tournament& t, const VertexSet& f) {
  auto ordered = order_transitive(t, f);
  VertexSet out;
  for (Vertex v = 0; v < t.n(); ++v) {
    if (std::binary_search(f.begin(), f.end(), v)) continue;
    if (slots_into(t, ordered, v)) out.push_back(v);
  }
  return out;
}

bool interval_member(const Tournament& t, const std::vector<Vertex>& ordered,
                     const IntervalSpec& i, Vertex x) {
  if (std::find(ordered.begin(), ordered.end(), x) != ordered.end()) return false;
  bool below = i.low.has_value();  // still in the prefix that must beat x
  for (Vertex u : ordered) {
    if (below) {
      if (!t.beats(u, x)) return false;
      if (i.low && u == *i.low) below = false;
    } else {
      if (!t.beats(x, u)) return false;
    }
  }
  if (i.low && below) fail_input("interval_member: low endpoint not in the set");
  if (i.high && std::find(ordered.begin(), ordered.end(), *i.high) == ordered.end())
    fail_input("interval_member: high endpoint not in the set");
  return true;
}

std::vector<IntervalMembers> minimal_intervals(const Tournament& t, const VertexSet& f) {
  auto ordered = order_transitive(t, f);
  std::vector<IntervalMembers> out(ordered.size() + 1);
  for (size_t g = 0; g <= ordered.size(); ++g) {
    out[g].interval.low = g == 0 ? std::nullopt : std::optional<Vertex>(ordered[g - 1]);
    out[g].interval.high = g == ordered.size() ? std::nullopt : std::optional<Vertex>(ordered[g]);
  }
  for (Vertex v = 0; v < t.n(); ++v) {
    if (std::binary_search(f.begin(), f.end(), v)) continue;
    if (!slots_into(t, ordered, v)) continue;
    size_t g = 0;
    while (g < ordered.size() && t.beats(ordered[g], v)) ++g;
    out[g].members.push_back(v);
  }
  return out;
}

namespace {

uint32_t depth_search(const Tournament& t, std::vector<Vertex>& ordered, const VertexSet& f,
                      Vertex next, uint32_t k, uint32_t depth) {
  uint32_t best = depth;
  if (depth == k) return best;
  for (Vertex v = next; v < t.n() && best < k; ++v) {
    if (std::binary_search(f.begin(), f.end(), v)) continue;
    if (!slots_into(t, ordered, v)) continue;
    std::vector<Vertex> trial = ordered;
    insert_ordered(t, trial, v);
    best = std::max(best, depth_search(t, trial, f, v + 1, k, depth + 1));
  }
  return best;
}

}  // namespace

uint32_t extendibility_depth(const Tournament& t, const VertexSet& f, uint32_t k) {
  auto ordered = order_transitive(t, f);
  return depth_search(t, ordered, f, 0, k, 0);
}

PartitionExtendible partition_extendible(const Tournament& t, const VertexSet& f,
                                         const IntervalSpec& i, const VertexSet& j, uint32_t k) {
  auto ordered = order_transitive(t, f);
  for (Vertex v : j)
    if (!interval_member(t, ordered, i, v))
      fail_input("partition_extendible: J must lie inside the interval");
  {
    auto gaps = minimal_intervals(t, f);
    bool minimal = false;
    for (const auto& g : gaps) minimal = minimal || g.interval == i;
    if (!minimal) fail_input("partition_extendible: interval is not minimal in F");
  }
  VertexSet fj = f;
  fj.insert(fj.end(), j.begin(), j.end());
  std::sort(fj.begin(), fj.end());
  order_transitive(t, fj);  // throws if F ∪ J is not transitive

  auto surviving = [&](const VertexSet& half) -> std::optional<IntervalSpec> {
    VertexSet fh = f;
    fh.insert(fh.end(), half.begin(), half.end());
    std::sort(fh.begin(), fh.end());
    for (const auto& g : minimal_intervals(t, fh)) {
      // keep only gaps nested inside I
      bool lo_ok = g.interval.low == i.low ||
                   (g.interval.low && std::binary_search(half.begin(), half.end(), *g.interval.low));
      bool hi_ok = g.interval.high == i.high ||
                   (g.interval.high && std::binary_search(half.begin(), half.end(), *g.interval.high));
      if (lo_ok && hi_ok && !g.members.empty()) return g.interval;
    }
    return std::nullopt;
  };

  PartitionExtendible best;
  bool have = false;
  uint32_t best_min = 0;
  size_t subsets = 1ULL << j.size();
  for (size_t mask = 0; mask < subsets; ++mask) {
    VertexSet p, q;
    for (size_t b = 0; b < j.size(); ++b) ((mask >> b) & 1 ? p : q).push_back(j[b]);
    VertexSet fp = f, fq = f;
    fp.insert(fp.end(), p.begin(), p.end());
    fq.insert(fq.end(), q.begin(), q.end());
    std::sort(fp.begin(), fp.end());
    std::sort(fq.begin(), fq.end());
    uint32_t dp = extendibility_depth(t, fp, k);
    uint32_t dq = extendibility_depth(t, fq, k);
    uint32_t lo = std::min(dp, dq);
    if (!have || lo > best_min || (lo == best_min && p < best.p)) {
      have = true;
      best_min = lo;
      best = PartitionExtendible{p, q, dp, dq, std::nullopt, std::nullopt};
    }
  }
  if (best.depth_p >= 1) best.surviving_p = surviving(best.p);
  if (best.depth_q >= 1) best.surviving_q = surviving(best.q);
  return best;
}

}  // namespace rmwb
