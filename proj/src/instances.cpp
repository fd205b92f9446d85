#include "rmwb/instances.hpp"

#include <algorithm>
#include <sstream>

#include "rmwb/prng.hpp"

namespace rmwb {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Tournament: return "tournament";
    case Kind::Coloring: return "coloring";
    case Kind::Poset: return "poset";
    case Kind::LinOrder: return "linorder";
  }
  return "?";
}

Kind kind_from_name(const std::string& name) {
  if (name == "tournament") return Kind::Tournament;
  if (name == "coloring") return Kind::Coloring;
  if (name == "poset") return Kind::Poset;
  if (name == "linorder") return Kind::LinOrder;
  fail_input("unknown instance kind '" + name + "'");
}

Coloring::Coloring(uint32_t n, std::vector<uint8_t> bits) : n_(n), bits_(std::move(bits)) {
  if (n == 0) fail_input("coloring: n must be >= 1");
  if (bits_.size() != pair_count(n)) fail_input("coloring: wrong number of pair entries");
  for (uint8_t b : bits_)
    if (b > 1) fail_input("coloring: colors must be 0 or 1");
}

Coloring Coloring::constant(uint32_t n, uint8_t color) {
  return Coloring(n, std::vector<uint8_t>(pair_count(n), color));
}

Tournament::Tournament(uint32_t n, std::vector<uint8_t> bits) : n_(n), bits_(std::move(bits)) {
  if (n == 0) fail_input("tournament: n must be >= 1");
  if (bits_.size() != pair_count(n)) fail_input("tournament: wrong number of pair entries");
  for (uint8_t b : bits_)
    if (b > 1) fail_input("tournament: orientation bits must be 0 or 1");
}

Poset::Poset(uint32_t n, std::vector<uint8_t> m) : n_(n), leq_(std::move(m)) {
  if (n == 0) fail_input("poset: n must be >= 1");
  if (leq_.size() != static_cast<size_t>(n) * n) fail_input("poset: wrong matrix size");
  for (uint32_t i = 0; i < n; ++i)
    if (!leq(i, i)) fail_input("poset: relation not reflexive at " + std::to_string(i));
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j)
      if (i != j && leq(i, j) && leq(j, i))
        fail_input("poset: antisymmetry violated on {" + std::to_string(i) + "," +
                   std::to_string(j) + "}");
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      if (!leq(i, j)) continue;
      for (uint32_t k = 0; k < n; ++k)
        if (leq(j, k) && !leq(i, k))
          fail_input("poset: transitivity violated on (" + std::to_string(i) + "," +
                     std::to_string(j) + "," + std::to_string(k) + ")");
    }
  order_respecting_ = true;
  for (uint32_t i = 0; i < n && order_respecting_; ++i)
    for (uint32_t j = 0; j < i; ++j)
      if (leq(i, j)) { order_respecting_ = false; break; }
}

LinearOrder::LinearOrder(uint32_t n, std::vector<Vertex> rank) : n_(n), rank_(std::move(rank)) {
  if (n == 0) fail_input("linorder: n must be >= 1");
  if (rank_.size() != n) fail_input("linorder: wrong rank vector size");
  std::vector<uint8_t> seen(n, 0);
  for (Vertex r : rank_) {
    if (r >= n || seen[r]) fail_input("linorder: rank is not a permutation");
    seen[r] = 1;
  }
}

LinearOrder LinearOrder::from_order(const std::vector<Vertex>& order) {
  uint32_t n = static_cast<uint32_t>(order.size());
  if (n == 0) fail_input("linorder: empty order");
  std::vector<Vertex> rank(n, n);
  for (uint32_t pos = 0; pos < n; ++pos) {
    if (order[pos] >= n) fail_input("linorder: vertex id out of range");
    rank[order[pos]] = pos;
  }
  return LinearOrder(n, rank);
}

LinearOrder LinearOrder::identity(uint32_t n) {
  std::vector<Vertex> rank(n);
  for (uint32_t i = 0; i < n; ++i) rank[i] = i;
  return LinearOrder(n, rank);
}

std::vector<Vertex> LinearOrder::order() const {
  std::vector<Vertex> out(n_);
  for (uint32_t v = 0; v < n_; ++v) out[rank_[v]] = v;
  return out;
}

Kind instance_kind(const Instance& x) {
  return std::visit(
      [](const auto& v) -> Kind {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Tournament>) return Kind::Tournament;
        else if constexpr (std::is_same_v<T, Coloring>) return Kind::Coloring;
        else if constexpr (std::is_same_v<T, Poset>) return Kind::Poset;
        else return Kind::LinOrder;
      },
      x);
}

uint32_t instance_n(const Instance& x) {
  return std::visit([](const auto& v) { return v.n(); }, x);
}

namespace {

struct LineReader {
  std::vector<std::string> lines;  // comment lines already dropped
  std::vector<size_t> numbers;     // original 1-based line numbers
  size_t pos = 0;

  explicit LineReader(const std::string& text) {
    size_t start = 0, lineno = 1;
    while (start <= text.size()) {
      size_t end = text.find('\n', start);
      std::string line = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
      bool last = end == std::string::npos;
      if (!(last && line.empty())) {
        if (line.empty() || line[0] != '#') {
          lines.push_back(line);
          numbers.push_back(lineno);
        }
      }
      if (last) break;
      start = end + 1;
      ++lineno;
    }
  }

  bool done() const { return pos >= lines.size(); }
  size_t lineno() const { return done() ? numbers.empty() ? 1 : numbers.back() + 1 : numbers[pos]; }
  std::string next(const char* what) {
    if (done()) fail_input(std::string("line ") + std::to_string(lineno()) + ": expected " + what);
    return lines[pos++];
  }
};

[[noreturn]] void fail_line(size_t lineno, const std::string& msg) {
  fail_input("line " + std::to_string(lineno) + ": " + msg);
}

std::vector<uint8_t> parse_pair_body(LineReader& r, uint32_t n, const char* what) {
  std::vector<uint8_t> bits(pair_count(n), 0);
  for (uint32_t i = 0; i + 1 < n; ++i) {
    size_t ln = r.lineno();
    std::string line = r.next(what);
    if (line.size() != n - 1 - i)
      fail_line(ln, std::string(what) + " body line has wrong length (expected " +
                        std::to_string(n - 1 - i) + " characters)");
    for (uint32_t t = 0; t < line.size(); ++t) {
      char ch = line[t];
      if (ch != '0' && ch != '1') fail_line(ln, "body characters must be 0 or 1");
      bits[pair_index(n, i, i + 1 + t)] = ch == '1';
    }
  }
  return bits;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  LineReader r(text);
  size_t ln = r.lineno();
  if (r.next("header") != "rmwb v1") fail_line(ln, "expected header 'rmwb v1'");

  ln = r.lineno();
  std::string kind_line = r.next("kind line");
  if (kind_line.rfind("kind ", 0) != 0) fail_line(ln, "expected 'kind <kind>'");
  Kind kind = kind_from_name(kind_line.substr(5));

  ln = r.lineno();
  std::string n_line = r.next("n line");
  if (n_line.rfind("n ", 0) != 0) fail_line(ln, "expected 'n <N>'");
  uint64_t n64 = 0;
  try {
    size_t used = 0;
    n64 = std::stoull(n_line.substr(2), &used);
    if (used != n_line.size() - 2) throw std::invalid_argument("");
  } catch (const std::exception&) {
    fail_line(ln, "malformed vertex count");
  }
  if (n64 == 0 || n64 > (1u << 20)) fail_line(ln, "vertex count out of range");
  uint32_t n = static_cast<uint32_t>(n64);

  Instance result = [&]() -> Instance {
    switch (kind) {
      case Kind::Tournament: return Tournament(n, parse_pair_body(r, n, "tournament"));
      case Kind::Coloring: return Coloring(n, parse_pair_body(r, n, "coloring"));
      case Kind::Poset: {
        std::vector<uint8_t> m(static_cast<size_t>(n) * n, 0);
        for (uint32_t i = 0; i < n; ++i) {
          size_t bln = r.lineno();
          std::string line = r.next("poset body");
          if (line.size() != n) fail_line(bln, "poset body line has wrong length");
          for (uint32_t j = 0; j < n; ++j) {
            if (line[j] != '0' && line[j] != '1') fail_line(bln, "body characters must be 0 or 1");
            m[static_cast<size_t>(i) * n + j] = line[j] == '1';
          }
        }
        return Poset(n, std::move(m));
      }
      case Kind::LinOrder: {
        size_t bln = r.lineno();
        std::istringstream ss(r.next("linorder body"));
        std::vector<Vertex> order;
        uint64_t v;
        while (ss >> v) {
          if (v >= n) fail_line(bln, "vertex id out of range");
          order.push_back(static_cast<Vertex>(v));
        }
        if (!ss.eof()) fail_line(bln, "malformed linorder body");
        if (order.size() != n) fail_line(bln, "linorder body has wrong length");
        return LinearOrder::from_order(order);
      }
    }
    fail_input("unreachable");
  }();

  if (!r.done()) fail_line(r.lineno(), "trailing content after instance body");
  return result;
}

namespace {

void serialize_pair_body(std::string& out, uint32_t n, const std::vector<uint8_t>& bits) {
  for (uint32_t i = 0; i + 1 < n; ++i) {
    for (uint32_t j = i + 1; j < n; ++j) out.push_back(bits[pair_index(n, i, j)] ? '1' : '0');
    out.push_back('\n');
  }
}

}  // namespace

std::string serialize_instance(const Instance& x) {
  std::string out = "rmwb v1\nkind ";
  out += kind_name(instance_kind(x));
  out += "\nn " + std::to_string(instance_n(x)) + "\n";
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Tournament> || std::is_same_v<T, Coloring>) {
          serialize_pair_body(out, v.n(), v.bits());
        } else if constexpr (std::is_same_v<T, Poset>) {
          for (uint32_t i = 0; i < v.n(); ++i) {
            for (uint32_t j = 0; j < v.n(); ++j) out.push_back(v.leq(i, j) ? '1' : '0');
            out.push_back('\n');
          }
        } else {
          auto ord = v.order();
          for (size_t i = 0; i < ord.size(); ++i) {
            if (i) out.push_back(' ');
            out += std::to_string(ord[i]);
          }
          out.push_back('\n');
        }
      },
      x);
  return out;
}

Instance random_instance(Kind kind, uint32_t n, uint64_t seed) {
  if (n == 0) fail_input("random_instance: n must be >= 1");
  Xorshift64Star rng(seed);
  switch (kind) {
    case Kind::Tournament: {
      std::vector<uint8_t> bits(pair_count(n));
      for (auto& b : bits) b = rng.next_bit();
      return Tournament(n, std::move(bits));
    }
    case Kind::Coloring: {
      std::vector<uint8_t> bits(pair_count(n));
      for (auto& b : bits) b = rng.next_bit();
      return Coloring(n, std::move(bits));
    }
    case Kind::Poset: {
      // Random subset of the < relation, then reflexive-transitive closure.
      // Edges only point upwards in ℕ, so the result is order-respecting.
      std::vector<uint8_t> m(static_cast<size_t>(n) * n, 0);
      for (uint32_t i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] = 1;
      for (uint32_t i = 0; i + 1 < n; ++i)
        for (uint32_t j = i + 1; j < n; ++j)
          if (rng.next_bit()) m[static_cast<size_t>(i) * n + j] = 1;
      for (uint32_t k = 0; k < n; ++k)
        for (uint32_t i = 0; i < n; ++i)
          if (m[static_cast<size_t>(i) * n + k])
            for (uint32_t j = 0; j < n; ++j)
              if (m[static_cast<size_t>(k) * n + j]) m[static_cast<size_t>(i) * n + j] = 1;
      return Poset(n, std::move(m));
    }
    case Kind::LinOrder: {
      // Fisher-Yates on the rank array, top index downwards.
      std::vector<Vertex> rank(n);
      for (uint32_t i = 0; i < n; ++i) rank[i] = i;
      for (uint32_t i = n - 1; i >= 1; --i) {
        uint32_t j = static_cast<uint32_t>(rng.next_below(i + 1));
        std::swap(rank[i], rank[j]);
      }
      return LinearOrder(n, std::move(rank));
    }
  }
  fail_input("unreachable");
}

namespace {

// Tail classification shared by the three stability overloads.  classify(v,y)
// returns which side vertex y supports for v: 0=a, 1=b, 2=c, 3=mixed-breaker.
template <typename Classify>
StabilityReport tail_classify(Kind kind, uint32_t n, uint32_t tau, bool has_c, Classify classify) {
  if (tau > n) fail_input("stability_report: tau must be <= n");
  StabilityReport rep;
  rep.kind = kind;
  rep.tau = tau;
  for (Vertex v = 0; v < n; ++v) {
    uint32_t lo = std::max(v + 1, tau);
    bool a = true, b = true, c = has_c;
    for (uint32_t y = lo; y < n; ++y) {
      int side = classify(v, y);
      a = a && side == 0;
      b = b && side == 1;
      c = c && side == 2;
    }
    if (a) rep.a_star.push_back(v);       // empty tail lands here
    else if (b) rep.b_star.push_back(v);
    else if (c) rep.c_star.push_back(v);
    else rep.unresolved.push_back(v);
  }
  return rep;
}

}  // namespace

StabilityReport stability_report(const Coloring& c, uint32_t tau) {
  return tail_classify(Kind::Coloring, c.n(), tau, false,
                       [&](Vertex v, Vertex y) { return c.color(v, y) == 0 ? 0 : 1; });
}

StabilityReport stability_report(const Tournament& t, uint32_t tau) {
  // a-side: v beats the whole tail; b-side: the whole tail beats v.
  return tail_classify(Kind::Tournament, t.n(), tau, false,
                       [&](Vertex v, Vertex y) { return t.beats(v, y) ? 0 : 1; });
}

StabilityReport stability_report(const Poset& m, uint32_t tau) {
  return tail_classify(Kind::Poset, m.n(), tau, true, [&](Vertex v, Vertex y) {
    if (m.leq(v, y)) return 0;
    if (m.leq(y, v)) return 2;
    return 1;
  });
}

namespace {

StableishReport finish_report(const LinearOrder& l, StableishReport rep) {
  std::vector<uint8_t> in_cut(l.n(), 0);
  for (Vertex v : rep.cut) in_cut[v] = 1;
  for (Vertex v = 0; v < l.n(); ++v) {
    if (in_cut[v]) {
      if (!rep.max_of_cut || l.precedes(*rep.max_of_cut, v)) rep.max_of_cut = v;
    } else {
      if (!rep.min_of_rest || l.precedes(v, *rep.min_of_rest)) rep.min_of_rest = v;
    }
  }
  return rep;
}

}  // namespace

StableishReport stableish_classify(const LinearOrder& l, const VertexSet& explicit_cut) {
  std::vector<uint8_t> in_cut(l.n(), 0);
  for (Vertex v : explicit_cut) {
    if (v >= l.n()) fail_input("stableish_classify: cut vertex out of range");
    in_cut[v] = 1;
  }
  for (Vertex x = 0; x < l.n(); ++x)
    if (in_cut[x])
      for (Vertex y = 0; y < l.n(); ++y)
        if (l.precedes(y, x) && !in_cut[y])
          fail_input("stableish_classify: explicit cut is not downward closed (misses " +
                     std::to_string(y) + " below " + std::to_string(x) + ")");
  StableishReport rep;
  rep.cut = explicit_cut;
  std::sort(rep.cut.begin(), rep.cut.end());
  rep.cut.erase(std::unique(rep.cut.begin(), rep.cut.end()), rep.cut.end());
  rep.heuristic = false;
  return finish_report(l, std::move(rep));
}

StableishReport stableish_classify(const LinearOrder& l, uint32_t theta) {
  StableishReport rep;
  for (Vertex v = 0; v < l.n(); ++v)
    if (l.rank(v) < theta) rep.cut.push_back(v);
  rep.heuristic = true;
  rep.theta = theta;
  return finish_report(l, std::move(rep));
}

std::vector<Vertex> extract_monotone_from_cut(const LinearOrder& l, const StableishReport& report,
                                              MonotoneSide side) {
  std::vector<uint8_t> in_cut(l.n(), 0);
  for (Vertex v : report.cut) in_cut[v] = 1;
  std::vector<Vertex> pool;
  bool ascending = side == MonotoneSide::AscendingInCut;
  for (Vertex v = 0; v < l.n(); ++v)
    if (in_cut[v] == (ascending ? 1 : 0)) pool.push_back(v);
  if (pool.empty()) fail_input("extract_monotone_from_cut: requested side is empty");

  std::vector<Vertex> out{pool.front()};
  for (size_t i = 1; i < pool.size(); ++i) {
    Vertex v = pool[i];
    Vertex last = out.back();
    if (ascending ? l.precedes(last, v) : l.precedes(v, last)) out.push_back(v);
  }
  return out;
}

}  // namespace rmwb
