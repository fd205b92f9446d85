#include "rmwb/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rmwb {

const char* solution_kind_name(SolutionKind k) {
  switch (k) {
    case SolutionKind::Homogeneous: return "homogeneous";
    case SolutionKind::Chain: return "chain";
    case SolutionKind::Antichain: return "antichain";
    case SolutionKind::Ascending: return "ascending";
    case SolutionKind::Descending: return "descending";
    case SolutionKind::Transitive: return "transitive";
  }
  return "?";
}

SolutionKind solution_kind_from_name(const std::string& name) {
  for (SolutionKind k : {SolutionKind::Homogeneous, SolutionKind::Chain, SolutionKind::Antichain,
                         SolutionKind::Ascending, SolutionKind::Descending, SolutionKind::Transitive})
    if (name == solution_kind_name(k)) return k;
  fail_input("unknown solution kind '" + name + "'");
}

namespace {

bool transitive_in(const Tournament& t, const std::vector<Vertex>& vs) {
  for (size_t a = 0; a < vs.size(); ++a)
    for (size_t b = 0; b < vs.size(); ++b) {
      if (a == b) continue;
      if (!t.beats(vs[a], vs[b])) continue;
      for (size_t c = 0; c < vs.size(); ++c)
        if (c != a && c != b && t.beats(vs[b], vs[c]) && !t.beats(vs[a], vs[c])) return false;
    }
  return true;
}

}  // namespace

std::optional<std::string> solution_violation(const Instance& inst, const SolutionSet& s) {
  uint32_t n = instance_n(inst);
  for (size_t i = 0; i < s.vertices.size(); ++i) {
    if (s.vertices[i] >= n) return "vertex " + std::to_string(s.vertices[i]) + " out of range";
    if (i > 0 && s.vertices[i] <= s.vertices[i - 1]) return "vertices not strictly increasing";
  }
  const auto& vs = s.vertices;
  switch (s.kind) {
    case SolutionKind::Homogeneous: {
      const auto* c = std::get_if<Coloring>(&inst);
      if (!c) return "homogeneous solution needs a coloring";
      if (!s.color) return "homogeneous solution missing its color";
      for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j)
          if (c->color(vs[i], vs[j]) != *s.color)
            return "pair {" + std::to_string(vs[i]) + "," + std::to_string(vs[j]) +
                   "} has the wrong color";
      return std::nullopt;
    }
    case SolutionKind::Chain:
    case SolutionKind::Antichain: {
      const auto* m = std::get_if<Poset>(&inst);
      if (!m) return "chain/antichain solution needs a poset";
      bool want = s.kind == SolutionKind::Chain;
      for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j)
          if (m->comparable(vs[i], vs[j]) != want)
            return "pair {" + std::to_string(vs[i]) + "," + std::to_string(vs[j]) + "} is " +
                   (want ? "incomparable" : "comparable");
      return std::nullopt;
    }
    case SolutionKind::Ascending:
    case SolutionKind::Descending: {
      const auto* l = std::get_if<LinearOrder>(&inst);
      if (!l) return "monotone solution needs a linear order";
      bool asc = s.kind == SolutionKind::Ascending;
      for (size_t i = 0; i + 1 < vs.size(); ++i) {
        bool ok = asc ? l->precedes(vs[i], vs[i + 1]) : l->precedes(vs[i + 1], vs[i]);
        if (!ok)
          return "step " + std::to_string(vs[i]) + " -> " + std::to_string(vs[i + 1]) +
                 " is not " + (asc ? "ascending" : "descending");
      }
      return std::nullopt;
    }
    case SolutionKind::Transitive: {
      const auto* t = std::get_if<Tournament>(&inst);
      if (!t) return "transitive solution needs a tournament";
      if (!transitive_in(*t, vs)) return "set is not transitive";
      return std::nullopt;
    }
  }
  return "unknown solution kind";
}

void verify_solution(const Instance& inst, const SolutionSet& s) {
  if (auto why = solution_violation(inst, s))
    fail(ErrorCode::Violation, "solution check failed: " + *why);
}

SolutionSet parse_solution(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line))
    if (line.empty() || line[0] != '#') lines.push_back(line);
  if (lines.size() < 2 || lines[0] != "rmwb-sol v1") fail_input("solution: bad header");
  std::istringstream kl(lines[1]);
  std::string tag, kname;
  if (!(kl >> tag >> kname) || tag != "kind") fail_input("solution: expected 'kind <kind>'");
  SolutionSet s;
  s.kind = solution_kind_from_name(kname);
  std::string ctag;
  if (kl >> ctag) {
    uint32_t cv;
    if (ctag != "color" || !(kl >> cv) || cv > 1) fail_input("solution: malformed color");
    s.color = static_cast<uint8_t>(cv);
  }
  if (s.kind == SolutionKind::Homogeneous && !s.color)
    fail_input("solution: homogeneous kind needs a color");
  if (lines.size() > 3) fail_input("solution: trailing content");
  if (lines.size() == 3) {
    std::istringstream vl(lines[2]);
    uint64_t v;
    while (vl >> v) s.vertices.push_back(static_cast<Vertex>(v));
    if (!vl.eof()) fail_input("solution: malformed vertex list");
  }
  return s;
}

std::string serialize_solution(const SolutionSet& s) {
  std::string out = "rmwb-sol v1\nkind ";
  out += solution_kind_name(s.kind);
  if (s.color) out += " color " + std::to_string(static_cast<int>(*s.color));
  out += "\n";
  for (size_t i = 0; i < s.vertices.size(); ++i) {
    if (i) out.push_back(' ');
    out += std::to_string(s.vertices[i]);
  }
  out += "\n";
  return out;
}

Coloring poset_to_coloring(const Poset& m) {
  std::vector<uint8_t> bits(pair_count(m.n()));
  for (Vertex i = 0; i + 1 < m.n(); ++i)
    for (Vertex j = i + 1; j < m.n(); ++j)
      bits[pair_index(m.n(), i, j)] = m.comparable(i, j) ? 0 : 1;
  return Coloring(m.n(), std::move(bits));
}

SolutionSet homogeneous_to_chain_antichain(const Poset& m, const SolutionSet& h) {
  if (h.kind != SolutionKind::Homogeneous || !h.color)
    fail_input("homogeneous_to_chain_antichain: input must be a homogeneous solution");
  verify_solution(poset_to_coloring(m), h);
  SolutionSet out;
  out.kind = *h.color == 0 ? SolutionKind::Chain : SolutionKind::Antichain;
  out.vertices = h.vertices;
  verify_solution(m, out);
  return out;
}

Poset linear_to_poset(const LinearOrder& l) {
  uint32_t n = l.n();
  std::vector<uint8_t> mat(static_cast<size_t>(n) * n, 0);
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y)
      if ((l.precedes(x, y) || x == y) && x <= y) mat[static_cast<size_t>(x) * n + y] = 1;
  return Poset(n, std::move(mat));
}

SolutionSet solution_to_monotone(const LinearOrder& l, const SolutionSet& s) {
  if (s.kind != SolutionKind::Chain && s.kind != SolutionKind::Antichain)
    fail_input("solution_to_monotone: input must be a chain or antichain");
  verify_solution(linear_to_poset(l), s);
  SolutionSet out;
  out.kind = s.kind == SolutionKind::Chain ? SolutionKind::Ascending : SolutionKind::Descending;
  out.vertices = s.vertices;
  verify_solution(l, out);
  return out;
}

Tournament coloring_to_tournament(const Coloring& c) {
  // T_c(x,y) for x<y holds exactly when c(x,y)=1, so the orientation bits
  // coincide with the color bits.
  return Tournament(c.n(), c.bits());
}

Coloring tournament_to_coloring(const Tournament& t) {
  std::vector<uint8_t> bits(pair_count(t.n()));
  for (Vertex i = 0; i + 1 < t.n(); ++i)
    for (Vertex j = i + 1; j < t.n(); ++j)
      bits[pair_index(t.n(), i, j)] = t.beats(i, j) ? 0 : 1;
  return Coloring(t.n(), std::move(bits));
}

LinearOrder induced_order(const Tournament& t, const SolutionSet& s) {
  if (s.kind != SolutionKind::Transitive) fail_input("induced_order: input must be transitive");
  verify_solution(Instance(t), s);
  const auto& vs = s.vertices;
  uint32_t k = static_cast<uint32_t>(vs.size());
  if (k == 0) fail_input("induced_order: empty solution");
  std::vector<Vertex> rank(k, 0);
  for (uint32_t i = 0; i < k; ++i) {
    uint32_t r = 0;
    for (uint32_t j = 0; j < k; ++j)
      if (j != i && t.beats(vs[j], vs[i])) ++r;
    rank[i] = r;
  }
  return LinearOrder(k, std::move(rank));
}

namespace {

// Lexicographically least longest strictly-monotone subsequence of ranks.
std::vector<uint32_t> lex_least_monotone_indices(const std::vector<Vertex>& ranks, bool increasing) {
  size_t n = ranks.size();
  std::vector<uint32_t> len_from(n, 1);  // longest run starting at i
  for (size_t i = n; i-- > 0;)
    for (size_t j = i + 1; j < n; ++j) {
      bool ok = increasing ? ranks[i] < ranks[j] : ranks[i] > ranks[j];
      if (ok) len_from[i] = std::max(len_from[i], len_from[j] + 1);
    }
  uint32_t best = 0;
  for (size_t i = 0; i < n; ++i) best = std::max(best, len_from[i]);
  std::vector<uint32_t> out;
  uint32_t need = best;
  size_t from = 0;
  std::optional<size_t> prev;
  while (need > 0) {
    for (size_t i = from; i < n; ++i) {
      bool ok = !prev || (increasing ? ranks[*prev] < ranks[i] : ranks[*prev] > ranks[i]);
      if (ok && len_from[i] >= need) {
        out.push_back(static_cast<uint32_t>(i));
        prev = i;
        from = i + 1;
        break;
      }
    }
    --need;
  }
  return out;
}

}  // namespace

SolutionSet transitive_to_homogeneous(const Coloring& c, const SolutionSet& s) {
  if (s.kind != SolutionKind::Transitive)
    fail_input("transitive_to_homogeneous: input must be transitive");
  Tournament t = coloring_to_tournament(c);
  verify_solution(Instance(t), s);  // throws if S is not transitive for T_c
  LinearOrder ord = induced_order(t, s);
  std::vector<Vertex> ranks(s.vertices.size());
  for (size_t i = 0; i < ranks.size(); ++i) ranks[i] = ord.rank(static_cast<Vertex>(i));

  auto asc = lex_least_monotone_indices(ranks, true);
  auto desc = lex_least_monotone_indices(ranks, false);
  bool take_asc = asc.size() >= desc.size();
  const auto& idx = take_asc ? asc : desc;

  SolutionSet out;
  out.kind = SolutionKind::Homogeneous;
  out.color = take_asc ? 1 : 0;
  for (uint32_t i : idx) out.vertices.push_back(s.vertices[i]);
  verify_solution(Instance(c), out);
  size_t need = static_cast<size_t>(std::ceil(std::sqrt(static_cast<double>(s.vertices.size()))));
  if (out.vertices.size() < need)
    fail(ErrorCode::Internal, "transitive_to_homogeneous: thinning fell below the sqrt bound");
  return out;
}

}  // namespace rmwb
