#include "rmwb/forcing.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace rmwb {

namespace {

bool is_sorted_set(const VertexSet& v) {
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1]) return false;
  return true;
}

bool contains(const VertexSet& s, Vertex v) { return std::binary_search(s.begin(), s.end(), v); }

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_transitive_set(const Tournament& t, const VertexSet& vs) {
  for (Vertex a : vs)
    for (Vertex b : vs) {
      if (a == b || !t.beats(a, b)) continue;
      for (Vertex c : vs)
        if (c != a && c != b && t.beats(b, c) && !t.beats(a, c)) return false;
    }
  return true;
}

// Visit subsets of `pool` (sorted) in lexicographic order, empty set first.
// The visitor returns true to stop.
bool lex_subsets(const VertexSet& pool, const std::function<bool(const VertexSet&)>& visit) {
  VertexSet cur;
  if (visit(cur)) return true;
  // DFS: extend by any later element; visitation order is lexicographic
  std::function<bool(size_t)> rec = [&](size_t from) {
    for (size_t i = from; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      if (visit(cur)) return true;
      if (rec(i + 1)) return true;
      cur.pop_back();
    }
    return false;
  };
  return rec(0);
}

}  // namespace

// ---- ADS conditions -------------------------------------------------------

AdsReport validate_ads(const AdsCondition& p, const VertexSet* cut) {
  AdsReport rep;
  auto bad = [&](const std::string& why) {
    rep.in_p = false;
    rep.reason = why;
    return rep;
  };
  for (Vertex v : p.sigma)
    if (v >= p.ambient.n()) return bad("sigma vertex out of range");
  for (Vertex v : p.tau)
    if (v >= p.ambient.n()) return bad("tau vertex out of range");
  for (size_t i = 1; i < p.sigma.size(); ++i)
    if (!p.ambient.precedes(p.sigma[i - 1], p.sigma[i])) return bad("sigma is not ascending");
  for (size_t i = 1; i < p.tau.size(); ++i)
    if (!p.ambient.precedes(p.tau[i], p.tau[i - 1])) return bad("tau is not descending");
  if (!p.sigma.empty() && !p.tau.empty() && !p.ambient.precedes(p.sigma.back(), p.tau.back()))
    return bad("last of sigma does not precede last of tau");
  rep.in_p = true;
  if (cut) {
    bool ok = true;
    for (Vertex v : p.sigma) ok = ok && contains(*cut, v);
    for (Vertex v : p.tau) ok = ok && !contains(*cut, v);
    rep.in_v = ok;
    if (!ok) rep.reason = "condition does not respect the cut";
  }
  return rep;
}

uint32_t split_pair_select(const AdsCondition& p, const AdsCondition& q0, const AdsCondition& q1,
                           const VertexSet& cut) {
  if (!is_sorted_set(cut)) fail_input("split_pair_select: cut must be a sorted set");
  for (Vertex x : cut) {
    if (x >= p.ambient.n()) fail_input("split_pair_select: cut vertex out of range");
    for (Vertex y = 0; y < p.ambient.n(); ++y)
      if (p.ambient.precedes(y, x) && !contains(cut, y))
        fail_input("split_pair_select: cut is not downward closed");
  }

  // shape: q0 = (sigma^sigma', tau), q1 = (sigma, tau^tau') with sigma' < tau'
  auto starts_with = [](const std::vector<Vertex>& big, const std::vector<Vertex>& small) {
    return big.size() >= small.size() && std::equal(small.begin(), small.end(), big.begin());
  };
  if (!starts_with(q0.sigma, p.sigma) || q0.tau != p.tau || q1.sigma != p.sigma ||
      !starts_with(q1.tau, p.tau))
    fail_input("split_pair_select: not a split pair below p");
  std::vector<Vertex> sp(q0.sigma.begin() + p.sigma.size(), q0.sigma.end());
  std::vector<Vertex> tp(q1.tau.begin() + p.tau.size(), q1.tau.end());
  if (sp.empty() || tp.empty()) fail_input("split_pair_select: split extensions must be nonempty");
  if (!p.ambient.precedes(sp.back(), tp.back()))
    fail_input("split_pair_select: sigma' does not precede tau'");
  if (!validate_ads(q0).in_p || !validate_ads(q1).in_p)
    fail_input("split_pair_select: split pair does not lie in the condition set");

  auto vp = validate_ads(p, &cut);
  if (!vp.in_p || !*vp.in_v) fail_input("split_pair_select: p itself violates the cut");

  if (*validate_ads(q0, &cut).in_v) return 0;
  if (!*validate_ads(q1, &cut).in_v)
    fail(ErrorCode::Internal, "split_pair_select: neither side respects the cut");
  return 1;
}

// ---- EM conditions ---------------------------------------------------------

void require_em_condition(const EmCondition& q, uint32_t depth) {
  const Tournament& t = q.family.ambient;
  auto ordered = order_transitive(t, q.f);  // throws if not transitive
  bool minimal = false;
  for (const auto& gap : minimal_intervals(t, q.f)) minimal = minimal || gap.interval == q.interval;
  if (!minimal) fail_input("em condition: interval is not a minimal interval of F");
  require_valid_family(q.family, depth);
  uint32_t d = std::min<uint32_t>(depth, q.family.depth());
  for (uint32_t k = 0; k < d; ++k)
    for (const auto& e : q.family.levels[k]) {
      if (!q.f.empty() && !e.empty() && e.front() <= q.f.back())
        fail_input("em condition: family set " + set_to_string(e) + " is not above F");
      for (Vertex x : e)
        if (!interval_member(t, ordered, q.interval, x))
          fail_input("em condition: family vertex " + std::to_string(x) +
                     " is outside the interval");
    }
}

bool em_extends(const VertexSet& f_prime, const VertexSet& f) {
  if (!std::includes(f_prime.begin(), f_prime.end(), f.begin(), f.end())) return false;
  VertexSet fresh = set_difference(f_prime, f);
  return fresh.empty() || f.empty() || f.back() < fresh.front();
}

bool validate_em_extension(const EmCondition& q_prime, const EmCondition& q) {
  require_em_condition(q, q.family.depth());
  require_em_condition(q_prime, q_prime.family.depth());
  if (!(q_prime.family.ambient == q.family.ambient))
    fail_input("validate_em_extension: conditions live over different tournaments");
  if (!em_extends(q_prime.f, q.f)) return false;

  const Tournament& t = q.family.ambient;
  auto ordered = order_transitive(t, q.f);
  VertexSet fresh = set_difference(q_prime.f, q.f);
  auto endpoint_ok = [&](const std::optional<Vertex>& np, const std::optional<Vertex>& op) {
    if (np == op) return true;
    if (!np) return false;  // infinite endpoint can only match itself
    return contains(fresh, *np) && interval_member(t, ordered, q.interval, *np);
  };
  if (!endpoint_ok(q_prime.interval.low, q.interval.low)) return false;
  if (!endpoint_ok(q_prime.interval.high, q.interval.high)) return false;

  Family shifted = prepend(fresh, q_prime.family);
  return family_leq(shifted, q.family, shifted.depth()).holds;
}

// ---- ground conditions -----------------------------------------------------

void require_ground(const GroundPosetCondition& g) {
  if (!g.f.order_respecting()) fail_input("ground poset condition: F must be order-respecting");
  for (const VertexSet* s : {&g.a_star, &g.b_star}) {
    if (!is_sorted_set(*s)) fail_input("ground condition: A*/B* must be sorted sets");
    for (Vertex v : *s)
      if (v >= g.f.n()) fail_input("ground condition: A*/B* vertex out of domain");
  }
  VertexSet inter;
  std::set_intersection(g.a_star.begin(), g.a_star.end(), g.b_star.begin(), g.b_star.end(),
                        std::back_inserter(inter));
  if (!inter.empty()) fail_input("ground condition: A* and B* intersect");
  for (Vertex a : g.a_star)
    for (Vertex x = 0; x < g.f.n(); ++x)
      if (g.f.leq(x, a) && !contains(g.a_star, x))
        fail_input("ground poset condition: A* is not downward closed");
  for (Vertex b : g.b_star)
    for (Vertex x = 0; x < g.f.n(); ++x)
      if (g.f.leq(b, x) && !contains(g.b_star, x))
        fail_input("ground poset condition: B* is not upward closed");
}

void require_ground(const GroundColoringCondition& g) {
  for (const VertexSet* s : {&g.a_star, &g.b_star}) {
    if (!is_sorted_set(*s)) fail_input("ground condition: A*/B* must be sorted sets");
    for (Vertex v : *s)
      if (v >= g.c.n()) fail_input("ground condition: A*/B* vertex out of domain");
  }
  VertexSet inter;
  std::set_intersection(g.a_star.begin(), g.a_star.end(), g.b_star.begin(), g.b_star.end(),
                        std::back_inserter(inter));
  if (!inter.empty()) fail_input("ground condition: A* and B* intersect");
}

bool ground_extends(const GroundPosetCondition& ext, const GroundPosetCondition& base) {
  require_ground(ext);
  require_ground(base);
  uint32_t n0 = base.f.n(), n1 = ext.f.n();
  if (n1 < n0) return false;
  for (Vertex x = 0; x < n0; ++x)
    for (Vertex y = 0; y < n0; ++y)
      if (base.f.leq(x, y) != ext.f.leq(x, y)) return false;
  if (!std::includes(ext.a_star.begin(), ext.a_star.end(), base.a_star.begin(), base.a_star.end()))
    return false;
  if (!std::includes(ext.b_star.begin(), ext.b_star.end(), base.b_star.begin(), base.b_star.end()))
    return false;
  for (Vertex a : base.a_star)
    for (Vertex x = n0; x < n1; ++x)
      if (!ext.f.leq(a, x)) return false;
  for (Vertex b : base.b_star)
    for (Vertex x = n0; x < n1; ++x)
      if (ext.f.leq(b, x)) return false;
  return true;
}

bool ground_extends(const GroundColoringCondition& ext, const GroundColoringCondition& base) {
  require_ground(ext);
  require_ground(base);
  uint32_t n0 = base.c.n(), n1 = ext.c.n();
  if (n1 < n0) return false;
  for (Vertex x = 0; x + 1 < n0; ++x)
    for (Vertex y = x + 1; y < n0; ++y)
      if (base.c.color(x, y) != ext.c.color(x, y)) return false;
  if (!std::includes(ext.a_star.begin(), ext.a_star.end(), base.a_star.begin(), base.a_star.end()))
    return false;
  if (!std::includes(ext.b_star.begin(), ext.b_star.end(), base.b_star.begin(), base.b_star.end()))
    return false;
  for (Vertex a : base.a_star)
    for (Vertex x = n0; x < n1; ++x)
      if (ext.c.color(a, x) != 0) return false;
  for (Vertex b : base.b_star)
    for (Vertex x = n0; x < n1; ++x)
      if (ext.c.color(b, x) != 1) return false;
  return true;
}

// ---- requirement tables ----------------------------------------------------

const char* req_flavor_name(ReqFlavor f) {
  switch (f) {
    case ReqFlavor::AdsA: return "ads-a";
    case ReqFlavor::AdsD: return "ads-d";
    case ReqFlavor::AdsFull: return "ads-full";
    case ReqFlavor::Em: return "em";
  }
  return "?";
}

namespace {

ReqFlavor req_flavor_from_name(const std::string& s) {
  if (s == "ads-a") return ReqFlavor::AdsA;
  if (s == "ads-d") return ReqFlavor::AdsD;
  if (s == "ads-full") return ReqFlavor::AdsFull;
  if (s == "em") return ReqFlavor::Em;
  fail_input("unknown requirement flavor '" + s + "'");
}

ObjectCode parse_object_code(const std::string& text) {
  ObjectCode code;
  size_t bar = text.find('|');
  if (bar == std::string::npos) {
    code.first = set_from_string(text);
  } else {
    code.is_pair = true;
    code.first = set_from_string(text.substr(0, bar));
    code.second = set_from_string(text.substr(bar + 1));
  }
  return code;
}

std::string object_code_to_string(const ObjectCode& c) {
  std::string out = set_to_string(c.first);
  if (c.is_pair) out += "|" + set_to_string(c.second);
  return out;
}

}  // namespace

VertexSet RequirementTable::a_universe() const {
  if (astar_universe) return *astar_universe;
  VertexSet out;
  for (const auto& e : entries) out.push_back(e.a);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

VertexSet RequirementTable::b_universe() const {
  if (bstar_universe) return *bstar_universe;
  VertexSet out;
  for (const auto& e : entries) out.push_back(e.b);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RequirementTable parse_requirement_table(const std::string& text) {
  RequirementTable k;
  std::istringstream in(text);
  std::string line;
  bool saw_header = false, saw_flavor = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (!saw_header) {
      if (line != "rmwb-req v1") fail_input("requirement table: bad header");
      saw_header = true;
      continue;
    }
    if (tag == "flavor") {
      std::string f;
      if (!(ss >> f)) fail_input("requirement table: malformed flavor line");
      k.flavor = req_flavor_from_name(f);
      saw_flavor = true;
    } else if (tag == "builtin") {
      std::string b;
      if (!(ss >> b)) fail_input("requirement table: malformed builtin line");
      if (b == "total") k.builtin_total = true;
      else if (b != "none") fail_input("requirement table: unknown builtin '" + b + "'");
    } else if (tag == "akdefault") {
      uint32_t v;
      if (!(ss >> v)) fail_input("requirement table: malformed akdefault line");
      k.ak_default = v;
    } else if (tag == "ak") {
      std::string code;
      uint32_t v;
      if (!(ss >> code >> v)) fail_input("requirement table: malformed ak line");
      k.ak[set_from_string(code)] = v;
    } else if (tag == "astar" || tag == "bstar") {
      std::string code;
      if (!(ss >> code)) fail_input("requirement table: malformed universe line");
      (tag == "astar" ? k.astar_universe : k.bstar_universe) = set_from_string(code);
    } else if (tag == "entry") {
      std::string code;
      uint32_t a, b;
      if (!(ss >> code >> a >> b)) fail_input("requirement table: malformed entry line");
      k.entries.push_back(ReqEntry{parse_object_code(code), a, b});
    } else {
      fail_input("requirement table: unknown line '" + line + "'");
    }
  }
  if (!saw_header) fail_input("requirement table: missing header");
  if (!saw_flavor) fail_input("requirement table: missing flavor line");
  for (const auto& e : k.entries)
    if (e.object.is_pair != (k.flavor == ReqFlavor::AdsFull))
      fail_input("requirement table: entry code shape does not match the flavor");
  return k;
}

std::string serialize_requirement_table(const RequirementTable& k) {
  std::string out = "rmwb-req v1\nflavor ";
  out += req_flavor_name(k.flavor);
  out += "\n";
  if (k.builtin_total) out += "builtin total\n";
  if (k.ak_default) out += "akdefault " + std::to_string(*k.ak_default) + "\n";
  if (k.astar_universe) out += "astar " + set_to_string(*k.astar_universe) + "\n";
  if (k.bstar_universe) out += "bstar " + set_to_string(*k.bstar_universe) + "\n";
  for (const auto& [obj, v] : k.ak)
    out += "ak " + set_to_string(obj) + " " + std::to_string(v) + "\n";
  for (const auto& e : k.entries)
    out += "entry " + object_code_to_string(e.object) + " " + std::to_string(e.a) + " " +
           std::to_string(e.b) + "\n";
  return out;
}

namespace {

// Does the stored half-object (a set) sit as a ≺-monotone prefix of the
// given sequence?
bool half_prefix(const LinearOrder& amb, const VertexSet& stored, const std::vector<Vertex>& seq,
                 bool ascending) {
  if (stored.size() > seq.size()) return false;
  std::vector<Vertex> arranged = stored;
  std::sort(arranged.begin(), arranged.end(), [&](Vertex a, Vertex b) {
    return ascending ? amb.precedes(a, b) : amb.precedes(b, a);
  });
  return std::equal(arranged.begin(), arranged.end(), seq.begin());
}

bool entry_matches_ads(const RequirementTable& k, const ReqEntry& e, const AdsCondition& obj) {
  switch (k.flavor) {
    case ReqFlavor::AdsA: return half_prefix(obj.ambient, e.object.first, obj.sigma, true);
    case ReqFlavor::AdsD: return half_prefix(obj.ambient, e.object.first, obj.tau, false);
    case ReqFlavor::AdsFull:
      return half_prefix(obj.ambient, e.object.first, obj.sigma, true) &&
             half_prefix(obj.ambient, e.object.second, obj.tau, false);
    case ReqFlavor::Em: fail_input("requirement_member: em table queried with an ads object");
  }
  return false;
}

bool entry_matches_em(const RequirementTable& k, const ReqEntry& e, const VertexSet& f) {
  if (k.flavor != ReqFlavor::Em)
    fail_input("requirement_member: ads table queried with a transitive set");
  return em_extends(f, e.object.first);
}

template <typename Matcher>
bool member_with(const RequirementTable& k, Matcher matches, const VertexSet& a,
                 const VertexSet& b) {
  if (k.builtin_total) return !a.empty() && !b.empty();
  for (const auto& e : k.entries)
    if (contains(a, e.a) && contains(b, e.b) && matches(e)) return true;
  return false;
}

}  // namespace

bool requirement_member(const RequirementTable& k, const ObjectCode& object, const VertexSet& a,
                        const VertexSet& b) {
  if (k.flavor != ReqFlavor::Em)
    fail_input("requirement_member(ObjectCode) supports em flavor only; use an AdsCondition");
  return member_with(k, [&](const ReqEntry& e) { return entry_matches_em(k, e, object.first); }, a, b);
}

bool requirement_member_universe(const RequirementTable& k, const ObjectCode& object) {
  if (k.builtin_total) return true;
  VertexSet ua = k.a_universe(), ub = k.b_universe();
  return requirement_member(k, object, ua, ub);
}

bool requirement_member_clamped(const RequirementTable& k, const ObjectCode& object, uint32_t a,
                                uint32_t x) {
  if (k.builtin_total) return true;
  for (const auto& e : k.entries)
    if (e.a == a && e.b > x && entry_matches_em(k, e, object.first)) return true;
  return false;
}

namespace {

// K^{a,(x, x+v+2)} query used by the settle tree predicates.
bool member_range(const RequirementTable& k, const VertexSet& f, uint32_t a, uint32_t x,
                  uint64_t hi_exclusive) {
  if (k.builtin_total) return x + 1 < hi_exclusive;
  for (const auto& e : k.entries)
    if (e.a == a && e.b > x && e.b < hi_exclusive && entry_matches_em(k, e, f)) return true;
  return false;
}

}  // namespace

std::optional<uint32_t> requirement_ak(const RequirementTable& k, const VertexSet& f) {
  std::optional<uint32_t> found;
  for (const auto& [obj, v] : k.ak) {
    if (!em_extends(f, obj)) continue;
    if (found && *found != v)
      fail_input("requirement table: a_K is not extension-persistent on " + set_to_string(f));
    found = v;
  }
  if (!found) found = k.ak_default;
  return found;
}

// ---- bounded essential ------------------------------------------------------

namespace {

VertexSet interval_set(uint32_t lo_exclusive, uint32_t hi_inclusive) {
  VertexSet out;
  for (uint32_t v = lo_exclusive + 1; v <= hi_inclusive; ++v) out.push_back(v);
  return out;
}

bool ads_member(const RequirementTable& k, const AdsCondition& obj, const VertexSet& a,
                const VertexSet& b) {
  if (k.builtin_total) return !a.empty() && !b.empty();
  for (const auto& e : k.entries)
    if (contains(a, e.a) && contains(b, e.b) && entry_matches_ads(k, e, obj)) return true;
  return false;
}

// All ascending (or descending) extension sequences of bounded length,
// lexicographically by the sequence of vertex ids.
void monotone_extensions(const LinearOrder& amb, const std::vector<Vertex>& base, bool ascending,
                         uint32_t max_len, const std::function<bool(const std::vector<Vertex>&)>& visit,
                         bool& stop) {
  std::vector<Vertex> ext;
  std::function<void()> rec = [&]() {
    if (stop) return;
    for (Vertex v = 0; v < amb.n() && !stop; ++v) {
      Vertex last = ext.empty() ? (base.empty() ? v : base.back()) : ext.back();
      bool ok = ext.empty() && base.empty()
                    ? true
                    : (ascending ? amb.precedes(last, v) : amb.precedes(v, last));
      if (!ok || std::find(ext.begin(), ext.end(), v) != ext.end() ||
          std::find(base.begin(), base.end(), v) != base.end())
        continue;
      ext.push_back(v);
      if (visit(ext)) { stop = true; return; }
      if (ext.size() < max_len) rec();
      ext.pop_back();
    }
  };
  rec();
}

}  // namespace

EssentialResult bounded_essential(const RequirementTable& k, const AdsCondition& base,
                                  const Bounds& bounds) {
  EssentialResult res;
  VertexSet a_set = interval_set(bounds.x_max, bounds.set_bound);
  VertexSet b_set = interval_set(bounds.y_max, bounds.set_bound);
  if (a_set.empty() || b_set.empty()) return res;

  if (k.flavor == ReqFlavor::AdsA || k.flavor == ReqFlavor::AdsD) {
    // essential in Λ: some strictly longer prefix enters the table
    bool ascending = k.flavor == ReqFlavor::AdsA;
    const auto& lambda = ascending ? base.sigma : base.tau;
    for (uint32_t m = bounds.level_bound + 1; m <= lambda.size(); ++m) {
      AdsCondition prefix{base.ambient, {}, {}};
      auto& side = ascending ? prefix.sigma : prefix.tau;
      side.assign(lambda.begin(), lambda.begin() + m);
      if (ads_member(k, prefix, a_set, b_set)) {
        res.essential = true;
        res.witness = EssentialWitness{};
        res.witness->a = a_set;
        res.witness->b = b_set;
        res.witness->prefix_len = m;
        return res;
      }
    }
    return res;
  }

  if (k.flavor != ReqFlavor::AdsFull)
    fail_input("bounded_essential: em table queried with an ads condition");
  if (!validate_ads(base).in_p) fail_input("bounded_essential: base is not a condition");

  // split pair below p with both sides in K^{A,B}
  bool stop = false;
  EssentialResult out;
  monotone_extensions(base.ambient, base.sigma, true, bounds.level_bound,
      [&](const std::vector<Vertex>& sp) {
        // q0 must stay a condition: last(sigma^sp) ≺ last(tau)
        if (!base.tau.empty() && !base.ambient.precedes(sp.back(), base.tau.back())) return false;
        AdsCondition q0 = base;
        q0.sigma.insert(q0.sigma.end(), sp.begin(), sp.end());
        if (!ads_member(k, q0, a_set, b_set)) return false;
        bool inner_stop = false;
        monotone_extensions(base.ambient, base.tau, false, bounds.level_bound,
            [&](const std::vector<Vertex>& tp) {
              if (!base.ambient.precedes(sp.back(), tp.back())) return false;  // sigma' ≺ tau'
              if (!base.sigma.empty() && !base.ambient.precedes(base.sigma.back(), tp.back()))
                return false;  // q1 stays a condition
              AdsCondition q1 = base;
              q1.tau.insert(q1.tau.end(), tp.begin(), tp.end());
              if (!ads_member(k, q1, a_set, b_set)) return false;
              out.essential = true;
              out.witness = EssentialWitness{};
              out.witness->a = a_set;
              out.witness->b = b_set;
              out.witness->sigma_ext = sp;
              out.witness->tau_ext = tp;
              return true;
            },
            inner_stop);
        return out.essential;
      },
      stop);
  return out;
}

EssentialResult bounded_essential(const RequirementTable& k, const EmCondition& base,
                                  const Bounds& bounds) {
  if (k.flavor != ReqFlavor::Em) fail_input("bounded_essential: ads table queried with an em condition");
  EssentialResult res;
  auto ak = requirement_ak(k, base.f);
  if (!ak) return res;
  VertexSet b_set = interval_set(bounds.x_max, bounds.set_bound);
  if (b_set.empty()) return res;
  VertexSet a_set{*ak};

  uint32_t max_level = std::min<uint32_t>(bounds.level_bound + 1, base.family.depth());
  for (uint32_t n = 0; n < max_level; ++n) {
    EssentialWitness wit;
    wit.a = a_set;
    wit.b = b_set;
    wit.level = n;
    bool level_ok = true;
    for (const auto& e : base.family.levels[n]) {
      size_t masks = 1ULL << e.size();
      for (size_t mask = 0; mask < masks && level_ok; ++mask) {
        VertexSet e0, e1;
        for (size_t i = 0; i < e.size(); ++i) ((mask >> i) & 1 ? e0 : e1).push_back(e[i]);
        std::optional<EssentialWitness::PartWitness> found;
        for (uint32_t side = 0; side < 2 && !found; ++side) {
          const VertexSet& pool = side == 0 ? e0 : e1;
          lex_subsets(pool, [&](const VertexSet& fp) {
            if (!is_transitive_set(base.family.ambient, fp)) return false;
            VertexSet sum = set_union(base.f, fp);
            if (!requirement_member(k, ObjectCode{sum, {}, false}, a_set, b_set)) return false;
            found = EssentialWitness::PartWitness{e, e0, side, fp};
            return true;
          });
        }
        if (found) wit.partition_witnesses.push_back(*found);
        else level_ok = false;
      }
      if (!level_ok) break;
    }
    if (level_ok) {
      res.essential = true;
      res.witness = std::move(wit);
      return res;
    }
  }
  return res;
}

// ---- settling ---------------------------------------------------------------

namespace {

// survival[k][i]: set i at level k has a descendant chain to the last level
std::vector<std::vector<bool>> survival_flags(const Family& s, uint32_t depth) {
  auto rep = validate_family(s, depth);
  if (!rep.ok) fail_input("invalid family: " + rep.message);
  std::vector<std::vector<bool>> alive(depth);
  for (uint32_t k = 0; k < depth; ++k) alive[k].assign(s.levels[k].size(), k + 1 == depth);
  for (uint32_t k = depth - 1; k >= 1; --k) {
    for (size_t i = 0; i < s.levels[k].size(); ++i)
      if (alive[k][i]) alive[k - 1][rep.predecessors[k - 1][i]] = true;
    if (k == 1) break;
  }
  return alive;
}

}  // namespace

bool settles_check(const EmCondition& q, const RequirementTable& k, uint32_t x, uint32_t depth) {
  auto ak = requirement_ak(k, q.f);
  if (!ak) fail_input("settles_check: a_K(F) is undefined");
  if (requirement_member_universe(k, ObjectCode{q.f, {}, false})) return true;

  uint32_t d = std::min<uint32_t>(depth, q.family.depth());
  if (d == 0) return true;
  auto alive = survival_flags(q.family, d);
  for (uint32_t lvl = 0; lvl < d; ++lvl)
    for (size_t i = 0; i < q.family.levels[lvl].size(); ++i) {
      if (!alive[lvl][i]) continue;
      const auto& e = q.family.levels[lvl][i];
      bool bad = lex_subsets(e, [&](const VertexSet& fp) {
        if (!is_transitive_set(q.family.ambient, fp)) return false;
        return requirement_member_clamped(k, ObjectCode{set_union(q.f, fp), {}, false}, *ak, x);
      });
      if (bad) return false;
    }
  return true;
}

namespace {

struct TreeNode {
  uint32_t level;  // 1-based; level L corresponds to S'(L-1)
  VertexSet s_set;
  VertexSet left;
  std::optional<size_t> parent;
};

}  // namespace

SettleResult settle_extend(const EmCondition& q, const RequirementTable& k, const Bounds& bounds,
                           uint32_t depth) {
  uint32_t d = std::min<uint32_t>(depth, q.family.depth());
  require_em_condition(q, d);
  auto ak = requirement_ak(k, q.f);
  if (!ak) fail_input("settle_extend: a_K(F) is undefined");

  auto ess = bounded_essential(k, q, bounds);
  if (ess.essential) {
    uint32_t n = *ess.witness->level;
    auto alive = survival_flags(q.family, d);
    std::optional<VertexSet> pick;
    for (size_t i = 0; i < q.family.levels[n].size() && !pick; ++i)
      if (alive[n][i]) pick = q.family.levels[n][i];
    if (!pick) fail(ErrorCode::Internal, "settle_extend: no surviving node at the witness level");

    SplitResult split = family_split(q.family, n, *pick, d);
    std::optional<std::pair<uint32_t, VertexSet>> choice;
    for (uint32_t side = 0; side < 2 && !choice; ++side) {
      const VertexSet& pool = side == 0 ? split.e0 : split.e1;
      lex_subsets(pool, [&](const VertexSet& fp) {
        if (fp.empty() || !is_transitive_set(q.family.ambient, fp)) return false;
        if (!requirement_member_universe(k, ObjectCode{set_union(q.f, fp), {}, false})) return false;
        choice = {side, fp};
        return true;
      });
    }
    if (!choice)
      fail(ErrorCode::Violation, "density violation at horizon: essential table admits no "
                                 "accepted split at these bounds");
    auto [side, fp] = *choice;
    auto fp_ordered = order_transitive(q.family.ambient, fp);
    EmCondition ext;
    ext.f = set_union(q.f, fp);
    ext.family = split.family;
    ext.interval = side == 0 ? IntervalSpec{fp_ordered.back(), q.interval.high}
                             : IntervalSpec{q.interval.low, fp_ordered.front()};

    require_em_condition(ext, ext.family.depth());
    if (!validate_em_extension(ext, q))
      fail(ErrorCode::Internal, "settle_extend: essential extension failed its own audit");
    if (!settles_check(ext, k, bounds.x_max, ext.family.depth()))
      fail(ErrorCode::Internal, "settle_extend: essential extension does not settle");

    SettleCertificate cert;
    cert.essential_branch = true;
    cert.level = n;
    cert.split_e = *pick;
    cert.split_e0 = split.e0;
    cert.split_e1 = split.e1;
    cert.side = side;
    cert.f_prime = fp;
    cert.x = bounds.x_max;
    return SettleResult{std::move(ext), std::move(cert)};
  }

  // non-essential branch: left-half tree over the Q-subfamily
  uint32_t x = bounds.x_max;
  auto q_pred = [&](const VertexSet& e, uint32_t v) {
    size_t masks = 1ULL << e.size();
    for (size_t mask = 0; mask < masks; ++mask) {
      VertexSet e0, e1;
      for (size_t i = 0; i < e.size(); ++i) ((mask >> i) & 1 ? e0 : e1).push_back(e[i]);
      bool avoided = true;
      for (uint32_t side = 0; side < 2 && avoided; ++side) {
        const VertexSet& pool = side == 0 ? e0 : e1;
        avoided = !lex_subsets(pool, [&](const VertexSet& fpp) {
          if (!is_transitive_set(q.family.ambient, fpp)) return false;
          return member_range(k, set_union(q.f, fpp), *ak, x, static_cast<uint64_t>(x) + v + 2);
        });
      }
      if (avoided) return true;
    }
    return false;
  };

  Family sprime{q.family.ambient, {}};
  for (uint32_t n = 0; n < d; ++n) {
    std::vector<VertexSet> level;
    for (const auto& e : q.family.levels[n])
      if (q_pred(e, n)) level.push_back(e);
    if (level.empty()) break;
    sprime.levels.push_back(std::move(level));
  }
  if (sprime.depth() < 2)
    fail(ErrorCode::Budget, "settle_extend: horizon too shallow to certify settling (Q-subfamily "
                            "died before depth 2)");
  require_valid_family(sprime, sprime.depth());

  // left-half tree T0; one node per (set, unordered avoided partition)
  std::vector<TreeNode> nodes;
  std::vector<std::vector<size_t>> by_level(sprime.depth() + 1);
  auto avoided_partitions = [&](const VertexSet& e, uint32_t v) {
    std::vector<std::pair<VertexSet, VertexSet>> out;
    size_t masks = 1ULL << e.size();
    for (size_t mask = 0; mask < masks; ++mask) {
      size_t comp = (masks - 1) & ~mask;
      if (mask > comp) continue;  // unordered: keep one representative
      VertexSet e0, e1;
      for (size_t i = 0; i < e.size(); ++i) ((mask >> i) & 1 ? e0 : e1).push_back(e[i]);
      bool ok = true;
      for (uint32_t side = 0; side < 2 && ok; ++side) {
        const VertexSet& pool = side == 0 ? e0 : e1;
        ok = !lex_subsets(pool, [&](const VertexSet& fpp) {
          if (!is_transitive_set(q.family.ambient, fpp)) return false;
          return member_range(k, set_union(q.f, fpp), *ak, x, static_cast<uint64_t>(x) + v + 2);
        });
      }
      if (ok) out.push_back({std::min(e0, e1), std::max(e0, e1)});
    }
    return out;
  };

  auto srep = validate_family(sprime, sprime.depth());
  for (uint32_t lvl = 1; lvl <= sprime.depth(); ++lvl) {
    for (size_t ei = 0; ei < sprime.levels[lvl - 1].size(); ++ei) {
      const auto& e = sprime.levels[lvl - 1][ei];
      for (const auto& [lo, hi] : avoided_partitions(e, lvl - 1)) {
        std::optional<size_t> parent;
        if (lvl > 1) {
          const auto& pred = sprime.levels[lvl - 2][srep.predecessors[lvl - 2][ei]];
          VertexSet lo_r, hi_r;
          for (Vertex u : lo)
            if (contains(pred, u)) lo_r.push_back(u);
          for (Vertex u : hi)
            if (contains(pred, u)) hi_r.push_back(u);
          for (size_t ni : by_level[lvl - 1]) {
            if (nodes[ni].s_set != pred) continue;
            if (nodes[ni].left == lo_r || nodes[ni].left == hi_r) { parent = ni; break; }
          }
          if (!parent) continue;  // restriction not avoided below; drop this branch
          // child keeps the half extending the parent's left label
          const VertexSet& pl = nodes[*parent].left;
          bool lo_ext = std::includes(lo.begin(), lo.end(), pl.begin(), pl.end()) &&
                        (pl == lo_r);
          nodes.push_back(TreeNode{lvl, e, lo_ext ? lo : hi, parent});
        } else {
          nodes.push_back(TreeNode{lvl, e, std::min(lo, hi), parent});
        }
        by_level[lvl].push_back(nodes.size() - 1);
      }
    }
    if (by_level[lvl].empty())
      fail(ErrorCode::Budget, "settle_extend: left-half tree died at level " + std::to_string(lvl));
  }

  uint32_t top = sprime.depth();
  SettleCertificate cert;
  cert.x = x;

  // case 1: a left label persisting from some level to the top
  std::optional<size_t> delta;
  for (uint32_t lvl = 1; lvl < top && !delta; ++lvl) {
    std::vector<size_t> order = by_level[lvl];
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return nodes[a].left < nodes[b].left; });
    for (size_t cand : order) {
      // descendants of cand with the same left label must reach every level
      std::vector<size_t> frontier{cand};
      bool ok = true;
      for (uint32_t m = lvl + 1; m <= top && ok; ++m) {
        std::vector<size_t> next;
        for (size_t ni : by_level[m])
          if (nodes[ni].parent && nodes[nodes[ni].parent.value()].level == m - 1 &&
              std::find(frontier.begin(), frontier.end(), *nodes[ni].parent) != frontier.end() &&
              nodes[ni].left == nodes[cand].left)
            next.push_back(ni);
        if (next.empty()) ok = false;
        frontier = std::move(next);
      }
      if (ok) { delta = cand; break; }
    }
  }

  Family out_family{q.family.ambient, {}};
  if (delta) {
    cert.tree_case = 1;
    cert.persisting_left = nodes[*delta].left;
    uint32_t nlvl = nodes[*delta].level;
    std::vector<size_t> frontier{*delta};
    for (uint32_t m = nlvl; m <= top; ++m) {
      std::vector<VertexSet> level;
      for (size_t ni : frontier) level.push_back(set_difference(nodes[ni].s_set, nodes[ni].left));
      out_family.levels.push_back(level);
      if (m == top) break;
      std::vector<size_t> next;
      for (size_t ni : by_level[m + 1])
        if (nodes[ni].parent &&
            std::find(frontier.begin(), frontier.end(), *nodes[ni].parent) != frontier.end() &&
            nodes[ni].left == nodes[*delta].left)
          next.push_back(ni);
      frontier = std::move(next);
    }
  } else {
    cert.tree_case = 2;
    // level-skipping family of left halves
    std::vector<uint32_t> lvls{1};
    std::vector<std::vector<VertexSet>> labels_at(top + 1);
    for (uint32_t m = 1; m <= top; ++m) {
      std::set<VertexSet> ls;
      for (size_t ni : by_level[m]) ls.insert(nodes[ni].left);
      labels_at[m] = {ls.begin(), ls.end()};
    }
    while (true) {
      uint32_t cur = lvls.back();
      std::optional<uint32_t> nxt;
      for (uint32_t m = cur + 1; m <= top && !nxt; ++m) {
        bool all_gone = true;
        for (const auto& l0 : labels_at[cur])
          if (std::binary_search(labels_at[m].begin(), labels_at[m].end(), l0)) {
            all_gone = false;
            break;
          }
        if (all_gone) nxt = m;
      }
      if (!nxt) break;
      lvls.push_back(*nxt);
    }
    if (lvls.size() < 2)
      fail(ErrorCode::Budget,
           "settle_extend: horizon too shallow to certify settling (no abandonment level)");
    for (uint32_t m : lvls) out_family.levels.push_back(labels_at[m]);
  }
  out_family.canonicalize();
  require_valid_family(out_family, out_family.depth());

  EmCondition settled{q.f, q.interval, std::move(out_family)};
  require_em_condition(settled, settled.family.depth());
  if (!validate_em_extension(settled, q))
    fail(ErrorCode::Internal, "settle_extend: tree extraction failed the extension audit");
  if (!settles_check(settled, k, x, settled.family.depth()))
    fail(ErrorCode::Budget,
         "settle_extend: horizon too shallow to certify settling (audit found a late acceptance)");
  return SettleResult{std::move(settled), std::move(cert)};
}

// ---- partition path tree -----------------------------------------------------

PartitionTable parse_partition_table(const std::string& text) {
  PartitionTable r;
  std::istringstream in(text);
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      if (line != "rmwb-ptab v1") fail_input("partition table: bad header");
      saw_header = true;
      continue;
    }
    std::istringstream ss(line);
    uint32_t k;
    std::string code;
    if (!(ss >> k >> code)) fail_input("partition table: malformed line '" + line + "'");
    r.accepted[k].push_back(set_from_string(code));
  }
  if (!saw_header) fail_input("partition table: missing header");
  return r;
}

PathTreeResult partition_path_tree(const std::vector<VertexSet>& chain, const PartitionTable& r) {
  if (chain.empty()) fail_input("partition_path_tree: empty chain");
  for (size_t i = 0; i < chain.size(); ++i) {
    if (!is_sorted_set(chain[i])) fail_input("partition_path_tree: chain sets must be sorted");
    if (i > 0 && (chain[i].size() <= chain[i - 1].size() ||
                  !std::includes(chain[i].begin(), chain[i].end(), chain[i - 1].begin(),
                                 chain[i - 1].end())))
      fail_input("partition_path_tree: chain must be strictly increasing");
  }
  uint32_t m = static_cast<uint32_t>(chain.size());

  PathTreeResult res;
  res.nodes.push_back(PathTreeNode{0, {}, std::nullopt});
  std::vector<std::vector<size_t>> by_level(m + 1);
  by_level[0].push_back(0);

  for (uint32_t lvl = 1; lvl <= m; ++lvl) {
    auto it = r.accepted.find(lvl);
    std::vector<VertexSet> ps = it == r.accepted.end() ? std::vector<VertexSet>{} : it->second;
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    for (const auto& p : ps) {
      if (!std::includes(chain[lvl - 1].begin(), chain[lvl - 1].end(), p.begin(), p.end()))
        fail_input("partition_path_tree: left half " + set_to_string(p) +
                   " is not a subset of level " + std::to_string(lvl));
      std::optional<size_t> parent;
      if (lvl == 1) {
        parent = 0;
      } else {
        VertexSet restricted;
        for (Vertex v : p)
          if (contains(chain[lvl - 2], v)) restricted.push_back(v);
        for (size_t ni : by_level[lvl - 1])
          if (res.nodes[ni].label == restricted) { parent = ni; break; }
      }
      if (!parent) continue;
      res.nodes.push_back(PathTreeNode{lvl, p, static_cast<uint32_t>(*parent)});
      by_level[lvl].push_back(res.nodes.size() - 1);
    }
    if (by_level[lvl].empty())
      fail_input("partition_path_tree: level " + std::to_string(lvl) +
                 " has no attachable R-satisfying partition");
  }

  // case 1: a label at some level < m persisting to the top through descendants
  std::optional<size_t> delta;
  for (uint32_t lvl = 1; lvl < m && !delta; ++lvl) {
    std::vector<size_t> order = by_level[lvl];
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return res.nodes[a].label < res.nodes[b].label; });
    for (size_t cand : order) {
      std::vector<size_t> frontier{cand};
      bool ok = true;
      for (uint32_t l2 = lvl + 1; l2 <= m && ok; ++l2) {
        std::vector<size_t> next;
        for (size_t ni : by_level[l2])
          if (res.nodes[ni].parent &&
              std::find(frontier.begin(), frontier.end(), *res.nodes[ni].parent) != frontier.end() &&
              res.nodes[ni].label == res.nodes[cand].label)
            next.push_back(ni);
        ok = !next.empty();
        frontier = std::move(next);
      }
      if (ok) delta = cand;
      if (delta) break;
    }
  }

  if (delta) {
    res.tree_case = 1;
    res.extracted = set_difference(chain.back(), res.nodes[*delta].label);
  } else {
    res.tree_case = 2;
    // root-to-top path maximizing strict label growths, first found wins
    uint32_t best_growth = 0;
    std::optional<size_t> best_leaf;
    for (size_t ni : by_level[m]) {
      uint32_t growth = 0;
      size_t cur = ni;
      while (res.nodes[cur].parent) {
        size_t par = *res.nodes[cur].parent;
        if (res.nodes[cur].label.size() > res.nodes[par].label.size()) ++growth;
        cur = par;
      }
      if (!best_leaf || growth > best_growth) {
        best_leaf = ni;
        best_growth = growth;
      }
    }
    res.extracted = res.nodes[*best_leaf].label;
  }

  // re-verify: the extraction must be covered by some recorded safe side at
  // the top level
  auto it = r.accepted.find(m);
  bool covered = false;
  if (it != r.accepted.end())
    for (const auto& p : it->second)
      covered = covered || std::includes(p.begin(), p.end(), res.extracted.begin(), res.extracted.end());
  if (!covered)
    fail(ErrorCode::Violation,
         "partition_path_tree: extracted set is not covered by the table's safe side");
  return res;
}

// ---- ground density operations -----------------------------------------------

GroundPosetCondition ground_decide(const GroundPosetCondition& g, Vertex i) {
  require_ground(g);
  uint32_t n = g.f.n();
  if (i > n) fail_input("ground_decide: vertex must be within or one past the domain");
  GroundPosetCondition out = g;
  if (i == n) {
    uint32_t m = n + 1;
    std::vector<uint8_t> mat(static_cast<size_t>(m) * m, 0);
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = 0; y < n; ++y) mat[static_cast<size_t>(x) * m + y] = g.f.leq(x, y);
    mat[static_cast<size_t>(i) * m + i] = 1;
    for (Vertex a : g.a_star) mat[static_cast<size_t>(a) * m + i] = 1;
    out.f = Poset(m, std::move(mat));
  }
  if (!contains(out.a_star, i) && !contains(out.b_star, i)) {
    // the proof's default: push i and its upward closure into B*
    VertexSet up;
    for (Vertex c = 0; c < out.f.n(); ++c)
      if (out.f.leq(i, c)) up.push_back(c);
    out.b_star = set_union(out.b_star, up);
  }
  require_ground(out);
  if (!ground_extends(out, g)) fail(ErrorCode::Internal, "ground_decide: output does not extend input");
  return out;
}

GroundColoringCondition ground_decide(const GroundColoringCondition& g, Vertex i) {
  require_ground(g);
  uint32_t n = g.c.n();
  if (i > n) fail_input("ground_decide: vertex must be within or one past the domain");
  GroundColoringCondition out = g;
  if (i == n) {
    uint32_t m = n + 1;
    std::vector<uint8_t> bits(pair_count(m), 0);
    for (Vertex x = 0; x + 1 < n; ++x)
      for (Vertex y = x + 1; y < n; ++y) bits[pair_index(m, x, y)] = g.c.color(x, y);
    for (Vertex x = 0; x < n; ++x) {
      uint8_t col = contains(g.b_star, x) ? 1 : 0;
      bits[pair_index(m, x, i)] = col;
    }
    out.c = Coloring(m, std::move(bits));
  }
  if (!contains(out.a_star, i) && !contains(out.b_star, i))
    out.b_star = set_union(out.b_star, VertexSet{i});
  require_ground(out);
  if (!ground_extends(out, g)) fail(ErrorCode::Internal, "ground_decide: output does not extend input");
  return out;
}

// ---- functional tables and diagonalization ------------------------------------

FunctionalTable parse_functional_table(const std::string& text) {
  FunctionalTable t;
  std::istringstream in(text);
  std::string line;
  bool saw_header = false, saw_kind = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      if (line != "rmwb-fn v1") fail_input("functional table: bad header");
      saw_header = true;
      continue;
    }
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "kind") {
      std::string kn;
      if (!(ss >> kn)) fail_input("functional table: malformed kind line");
      t.kind = kind_from_name(kn);
      if (t.kind != Kind::Poset && t.kind != Kind::Coloring)
        fail_input("functional table: kind must be poset or coloring");
      saw_kind = true;
    } else if (tag == "fn") {
      FunctionalEntry e;
      if (!(ss >> e.output)) fail_input("functional table: malformed fn line");
      std::string ct;
      while (ss >> ct) {
        FunctionalClause c{};
        if (ct == "dom") {
          c.type = FunctionalClause::Type::Dom;
          if (!(ss >> c.i)) fail_input("functional table: malformed dom clause");
        } else if (ct == "rel" || ct == "color") {
          c.type = ct == "rel" ? FunctionalClause::Type::Rel : FunctionalClause::Type::Color;
          if (!(ss >> c.i >> c.j >> c.v) || c.v > 1)
            fail_input("functional table: malformed " + ct + " clause");
          if (c.type == FunctionalClause::Type::Color && c.i == c.j)
            fail_input("functional table: color clause on a loop");
        } else {
          fail_input("functional table: unknown clause '" + ct + "'");
        }
        e.clauses.push_back(c);
      }
      t.entries.push_back(std::move(e));
    } else {
      fail_input("functional table: unknown line '" + line + "'");
    }
  }
  if (!saw_header || !saw_kind) fail_input("functional table: missing header or kind");
  // monotonicity: an entry whose clauses contradict each other can never fire
  for (const auto& e : t.entries) {
    for (size_t i = 0; i < e.clauses.size(); ++i)
      for (size_t j = i + 1; j < e.clauses.size(); ++j) {
        const auto &a = e.clauses[i], &b = e.clauses[j];
        if (a.type != b.type || a.type == FunctionalClause::Type::Dom) continue;
        bool same_pair = (a.i == b.i && a.j == b.j) ||
                         (a.type == FunctionalClause::Type::Color && a.i == b.j && a.j == b.i);
        if (same_pair && a.v != b.v)
          fail_input("functional table: entry for output " + std::to_string(e.output) +
                     " is unsatisfiable (non-monotone)");
      }
  }
  return t;
}

namespace {

// Minimal poset extension of `g` realizing the entry, or nullopt.
std::optional<GroundPosetCondition> realize_poset(const GroundPosetCondition& g,
                                                  const FunctionalEntry& e, uint32_t budget) {
  uint32_t n0 = g.f.n();
  uint32_t need = n0;
  for (const auto& c : e.clauses) {
    if (c.type == FunctionalClause::Type::Dom) need = std::max(need, c.i);
    else need = std::max({need, c.i + 1, c.j + 1});
  }
  need = std::max(need, e.output + 1);
  if (need > budget) return std::nullopt;

  uint32_t m = need;
  std::vector<uint8_t> mat(static_cast<size_t>(m) * m, 0);
  for (Vertex x = 0; x < n0; ++x)
    for (Vertex y = 0; y < n0; ++y) mat[static_cast<size_t>(x) * m + y] = g.f.leq(x, y);
  for (Vertex x = n0; x < m; ++x) {
    mat[static_cast<size_t>(x) * m + x] = 1;
    for (Vertex a : g.a_star) mat[static_cast<size_t>(a) * m + x] = 1;
  }
  for (const auto& c : e.clauses) {
    if (c.type != FunctionalClause::Type::Rel) continue;
    bool decided = c.i < n0 && c.j < n0;
    if (decided) {
      if (g.f.leq(c.i, c.j) != (c.v == 1)) return std::nullopt;
    } else if (c.v == 1) {
      if (c.i >= c.j) return std::nullopt;  // ground posets are order-respecting
      mat[static_cast<size_t>(c.i) * m + c.j] = 1;
    }
  }
  for (uint32_t k2 = 0; k2 < m; ++k2)
    for (uint32_t x = 0; x < m; ++x)
      if (mat[static_cast<size_t>(x) * m + k2])
        for (uint32_t y = 0; y < m; ++y)
          if (mat[static_cast<size_t>(k2) * m + y]) mat[static_cast<size_t>(x) * m + y] = 1;
  for (const auto& c : e.clauses)
    if (c.type == FunctionalClause::Type::Rel && c.v == 0 &&
        mat[static_cast<size_t>(c.i) * m + c.j])
      return std::nullopt;
  for (uint32_t x = 0; x < m; ++x)
    for (uint32_t y = 0; y < x; ++y)
      if (mat[static_cast<size_t>(x) * m + y]) return std::nullopt;

  GroundPosetCondition out{Poset(m, std::move(mat)), g.a_star, g.b_star};
  if (!ground_extends(out, g)) return std::nullopt;
  return out;
}

std::optional<GroundColoringCondition> realize_coloring(const GroundColoringCondition& g,
                                                        const FunctionalEntry& e, uint32_t budget) {
  uint32_t n0 = g.c.n();
  uint32_t need = n0;
  for (const auto& c : e.clauses) {
    if (c.type == FunctionalClause::Type::Dom) need = std::max(need, c.i);
    else if (c.type == FunctionalClause::Type::Color) need = std::max({need, c.i + 1, c.j + 1});
    else return std::nullopt;  // rel clauses have no meaning for colorings
  }
  need = std::max(need, e.output + 1);
  if (need > budget) return std::nullopt;

  uint32_t m = need;
  std::vector<uint8_t> bits(pair_count(m), 0);
  std::vector<uint8_t> forced(pair_count(m), 0);
  for (Vertex x = 0; x + 1 < n0; ++x)
    for (Vertex y = x + 1; y < n0; ++y) {
      bits[pair_index(m, x, y)] = g.c.color(x, y);
      forced[pair_index(m, x, y)] = 1;
    }
  for (Vertex y = n0; y < m; ++y)
    for (Vertex x = 0; x < y; ++x) {
      if (contains(g.a_star, x)) { bits[pair_index(m, x, y)] = 0; forced[pair_index(m, x, y)] = 1; }
      if (contains(g.b_star, x)) { bits[pair_index(m, x, y)] = 1; forced[pair_index(m, x, y)] = 1; }
    }
  for (const auto& c : e.clauses) {
    if (c.type != FunctionalClause::Type::Color) continue;
    size_t idx = pair_index(m, std::min(c.i, c.j), std::max(c.i, c.j));
    if (forced[idx] && bits[idx] != c.v) return std::nullopt;
    bits[idx] = static_cast<uint8_t>(c.v);
    forced[idx] = 1;
  }
  GroundColoringCondition out{Coloring(m, std::move(bits)), g.a_star, g.b_star};
  if (!ground_extends(out, g)) return std::nullopt;
  return out;
}

}  // namespace

DiagonalizeResult<GroundPosetCondition> ground_diagonalize(const GroundPosetCondition& g,
                                                           const FunctionalTable& phi,
                                                           uint32_t budget) {
  require_ground(g);
  if (phi.kind != Kind::Poset) fail_input("ground_diagonalize: table kind mismatch");
  DiagonalizeResult<GroundPosetCondition> res{g, {}, {}};
  GroundPosetCondition cur = g;
  std::optional<uint32_t> first;
  for (uint32_t round = 0; round < 2; ++round) {
    bool advanced = false;
    for (const auto& e : phi.entries) {
      if (e.output < cur.f.n()) continue;  // the proof wants x above the decided part
      auto ext = realize_poset(cur, e, budget);
      if (!ext) continue;
      Vertex x = e.output;
      if (round == 0) {
        VertexSet down;
        for (Vertex c = 0; c < ext->f.n(); ++c)
          if (ext->f.leq(c, x)) down.push_back(c);
        bool clash = false;
        for (Vertex c : down) clash = clash || contains(ext->b_star, c);
        if (clash) continue;
        ext->a_star = set_union(ext->a_star, down);
        first = x;
      } else {
        VertexSet up;
        for (Vertex c = 0; c < ext->f.n(); ++c)
          if (ext->f.leq(x, c)) up.push_back(c);
        bool clash = false;
        for (Vertex c : up) clash = clash || contains(ext->a_star, c);
        if (clash) continue;
        ext->b_star = set_union(ext->b_star, up);
        res.success = DiagonalizeSuccess{*first, x};
      }
      require_ground(*ext);
      cur = *ext;
      advanced = true;
      break;
    }
    if (!advanced) {
      res.condition = cur;
      res.budget = BudgetReport{round, "no realizable entry with a fresh output within budget"};
      return res;
    }
  }
  res.condition = cur;
  return res;
}

DiagonalizeResult<GroundColoringCondition> ground_diagonalize(const GroundColoringCondition& g,
                                                              const FunctionalTable& phi,
                                                              uint32_t budget) {
  require_ground(g);
  if (phi.kind != Kind::Coloring) fail_input("ground_diagonalize: table kind mismatch");
  DiagonalizeResult<GroundColoringCondition> res{g, {}, {}};
  GroundColoringCondition cur = g;
  std::optional<uint32_t> first;
  for (uint32_t round = 0; round < 2; ++round) {
    bool advanced = false;
    for (const auto& e : phi.entries) {
      if (e.output < cur.c.n()) continue;
      auto ext = realize_coloring(cur, e, budget);
      if (!ext) continue;
      Vertex x = e.output;
      if (round == 0) {
        ext->a_star = set_union(ext->a_star, VertexSet{x});
        first = x;
      } else {
        ext->b_star = set_union(ext->b_star, VertexSet{x});
        res.success = DiagonalizeSuccess{*first, x};
      }
      require_ground(*ext);
      cur = *ext;
      advanced = true;
      break;
    }
    if (!advanced) {
      res.condition = cur;
      res.budget = BudgetReport{round, "no realizable entry with a fresh output within budget"};
      return res;
    }
  }
  res.condition = cur;
  return res;
}

}  // namespace rmwb
