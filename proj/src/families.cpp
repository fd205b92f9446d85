#include "rmwb/families.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "rmwb/prng.hpp"

namespace rmwb {

std::string set_to_string(const VertexSet& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(s[i]);
  }
  out.push_back('}');
  return out;
}

VertexSet set_from_string(const std::string& text) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    fail_input("malformed vertex set '" + text + "'");
  VertexSet out;
  std::string body = text.substr(1, text.size() - 2);
  if (body.empty()) return out;
  std::istringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument("");
      out.push_back(static_cast<Vertex>(v));
    } catch (const std::exception&) {
      fail_input("malformed vertex set '" + text + "'");
    }
  }
  for (size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1]) fail_input("vertex set not strictly increasing: '" + text + "'");
  return out;
}

int64_t Family::level_max(uint32_t k) const {
  int64_t m = -1;
  for (const auto& e : levels[k])
    if (!e.empty()) m = std::max<int64_t>(m, e.back());
  return m;
}

void Family::canonicalize() {
  for (auto& level : levels) {
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
  }
}

FamilyValidity validate_family(const Family& s, uint32_t d) {
  FamilyValidity rep;
  uint32_t depth = std::min<uint32_t>(d, s.depth());
  if (s.depth() < d) {
    rep.ok = false;
    rep.message = "family has depth " + std::to_string(s.depth()) + " but depth " +
                  std::to_string(d) + " was requested";
    return rep;
  }
  auto bad = [&](uint32_t level, const std::string& msg) {
    rep.ok = false;
    rep.message = "level " + std::to_string(level) + ": " + msg;
    return rep;
  };
  for (uint32_t k = 0; k < depth; ++k) {
    if (s.levels[k].empty()) return bad(k, "empty level (family not infinite at depth)");
    for (const auto& e : s.levels[k]) {
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] >= s.ambient.n()) return bad(k, "set " + set_to_string(e) + " leaves from the ambient domain");
        if (i > 0 && e[i] <= e[i - 1]) return bad(k, "set " + set_to_string(e) + " is not canonical");
      }
    }
    for (size_t i = 1; i < s.levels[k].size(); ++i)
      if (s.levels[k][i] <= s.levels[k][i - 1]) return bad(k, "level list is not canonical");
  }
  rep.predecessors.resize(depth == 0 ? 0 : depth - 1);
  for (uint32_t k = 1; k < depth; ++k) {
    int64_t prev_max = s.level_max(k - 1);
    for (const auto& e : s.levels[k]) {
      VertexSet pred;
      for (Vertex x : e)
        if (static_cast<int64_t>(x) <= prev_max) pred.push_back(x);
      auto& prev = s.levels[k - 1];
      auto it = std::lower_bound(prev.begin(), prev.end(), pred);
      if (it == prev.end() || *it != pred)
        return bad(k, "set " + set_to_string(e) + " has no (A2) predecessor at level " +
                          std::to_string(k - 1));
      if (pred.size() == e.size())
        return bad(k, "set " + set_to_string(e) + " does not properly extend its predecessor");
      rep.predecessors[k - 1].push_back(static_cast<uint32_t>(it - prev.begin()));
    }
  }
  return rep;
}

void require_valid_family(const Family& s, uint32_t d) {
  auto rep = validate_family(s, d);
  if (!rep.ok) fail_input("invalid family: " + rep.message);
}

Family parse_family(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
      if (line.empty() || line[0] != '#') lines.push_back(line);
  }
  size_t pos = 0;
  auto next = [&](const char* what) -> std::string {
    if (pos >= lines.size()) fail_input(std::string("family: expected ") + what);
    return lines[pos++];
  };
  if (next("header") != "rmwb-fam v1") fail_input("family: bad header");

  // embedded ambient instance
  std::string h = next("ambient instance");
  if (h != "rmwb v1") fail_input("family: expected embedded 'rmwb v1' instance");
  std::string kind_line = next("ambient kind");
  std::string n_line = next("ambient n");
  if (kind_line != "kind tournament") fail_input("family: ambient must be a tournament");
  std::string inst_text = h + "\n" + kind_line + "\n" + n_line + "\n";
  uint32_t n = 0;
  try {
    n = static_cast<uint32_t>(std::stoul(n_line.substr(2)));
  } catch (const std::exception&) {
    fail_input("family: malformed ambient n");
  }
  for (uint32_t i = 0; i + 1 < n; ++i) inst_text += next("ambient body") + "\n";
  Instance amb = parse_instance(inst_text);

  Family fam{std::get<Tournament>(amb), {}};
  while (pos < lines.size()) {
    std::string line = next("level line");
    std::istringstream ss(line);
    std::string tag;
    uint32_t k;
    char colon;
    if (!(ss >> tag >> k >> colon) || tag != "level" || colon != ':')
      fail_input("family: malformed level line '" + line + "'");
    if (k != fam.levels.size()) fail_input("family: level lines out of order");
    std::vector<VertexSet> level;
    std::string item;
    while (ss >> item) level.push_back(set_from_string(item));
    fam.levels.push_back(std::move(level));
  }
  fam.canonicalize();
  return fam;
}

std::string serialize_family(const Family& s) {
  std::string out = "rmwb-fam v1\n";
  out += serialize_instance(Instance(s.ambient));
  for (uint32_t k = 0; k < s.depth(); ++k) {
    out += "level " + std::to_string(k) + " :";
    for (const auto& e : s.levels[k]) out += " " + set_to_string(e);
    out += "\n";
  }
  return out;
}

Family prepend(const VertexSet& e, const Family& s) {
  if (e.empty()) return s;
  for (const auto& first : s.levels.empty() ? std::vector<VertexSet>{} : s.levels[0])
    if (!first.empty() && e.back() >= first.front())
      fail_input("prepend: E must lie strictly below every set of S(0)");
  Family out{s.ambient, {}};
  out.levels.reserve(s.depth());
  for (const auto& level : s.levels) {
    std::vector<VertexSet> nl;
    nl.reserve(level.size());
    for (const auto& x : level) {
      VertexSet u = e;
      u.insert(u.end(), x.begin(), x.end());
      nl.push_back(std::move(u));
    }
    out.levels.push_back(std::move(nl));
  }
  out.canonicalize();
  return out;
}

Family restrict_family(const Family& s, uint32_t level, const VertexSet& e) {
  if (level >= s.depth()) fail_input("restrict: level out of range");
  {
    const auto& lv = s.levels[level];
    if (!std::binary_search(lv.begin(), lv.end(), e))
      fail_input("restrict: E is not a member of S(" + std::to_string(level) + ")");
  }
  int64_t cutoff = s.level_max(level);
  Family out{s.ambient, {}};
  for (uint32_t m = level + 1; m < s.depth(); ++m) {
    std::vector<VertexSet> nl;
    for (const auto& big : s.levels[m]) {
      if (!std::includes(big.begin(), big.end(), e.begin(), e.end())) continue;
      VertexSet rest;
      bool ok = true;
      for (Vertex x : big) {
        if (std::binary_search(e.begin(), e.end(), x)) continue;
        if (static_cast<int64_t>(x) <= cutoff) { ok = false; break; }
        rest.push_back(x);
      }
      if (ok) nl.push_back(std::move(rest));
    }
    if (nl.empty()) break;  // reduced depth, not an error
    out.levels.push_back(std::move(nl));
  }
  out.canonicalize();
  return out;
}

FamilyLeq family_leq(const Family& s_prime, const Family& s, uint32_t d) {
  FamilyLeq res;
  res.holds = true;
  uint32_t depth = std::min<uint32_t>(d, s_prime.depth());
  for (uint32_t n = 0; n < depth; ++n) {
    bool found = false;
    for (uint32_t m = 0; m < s.depth() && !found; ++m) {
      bool all = true;
      for (const auto& ep : s_prime.levels[n]) {
        bool covered = false;
        for (const auto& e : s.levels[m])
          if (std::includes(e.begin(), e.end(), ep.begin(), ep.end())) { covered = true; break; }
        if (!covered) { all = false; break; }
      }
      if (all) {
        res.witness.push_back(m);
        found = true;
      }
    }
    if (!found) {
      res.holds = false;
      res.failing_level = n;
      return res;
    }
  }
  return res;
}

namespace {

// Distinct label classes { E ∩ g^{-1}(v) : E ∈ level } of one level.
std::vector<VertexSet> label_classes(const std::vector<VertexSet>& level,
                                     const PointwisePartition& g, uint32_t v) {
  std::set<VertexSet> out;
  for (const auto& e : level) {
    VertexSet cls;
    for (Vertex x : e) {
      auto it = g.g.find(x);
      if (it == g.g.end()) fail_input("pointwise partition is not total on the family");
      if (it->second == v) cls.push_back(x);
    }
    out.insert(std::move(cls));
  }
  return {out.begin(), out.end()};
}

}  // namespace

RefineResult pointwise_refine(const Family& s, const PointwisePartition& g, uint32_t d) {
  uint32_t depth = std::min<uint32_t>(d, s.depth());
  if (depth < 2) fail(ErrorCode::Budget, "pointwise_refine: family too shallow (depth < 2)");
  require_valid_family(s, depth);

  std::set<uint32_t> label_set;
  for (uint32_t k = 0; k < depth; ++k)
    for (const auto& e : s.levels[k])
      for (Vertex x : e) {
        auto it = g.g.find(x);
        if (it == g.g.end())
          fail_input("pointwise partition undefined on vertex " + std::to_string(x));
        label_set.insert(it->second);
      }

  Family work{s.ambient, {s.levels.begin(), s.levels.begin() + depth}};
  work.canonicalize();
  RefineCertificate cert;
  std::vector<uint32_t> labels(label_set.begin(), label_set.end());

  for (size_t li = 0; li < labels.size(); ++li) {
    uint32_t v = labels[li];
    uint32_t wd = work.depth();
    std::vector<std::vector<VertexSet>> classes(wd);
    for (uint32_t k = 0; k < wd; ++k) classes[k] = label_classes(work.levels[k], g, v);

    // case 1 scan: least (level, class) persisting through every later level;
    // vacuous last-level persistence does not count, the class must survive
    // at least one extension step
    std::optional<std::pair<uint32_t, VertexSet>> persisting;
    for (uint32_t n = 0; n + 1 < wd && !persisting; ++n) {
      for (const auto& cls : classes[n]) {
        bool persists = true;
        for (uint32_t m = n + 1; m < wd && persists; ++m)
          persists = std::binary_search(classes[m].begin(), classes[m].end(), cls);
        if (persists) { persisting = {n, cls}; break; }
      }
    }

    if (persisting && li + 1 < labels.size()) {
      auto [n, cls] = *persisting;
      cert.strips.push_back(RefineStrip{v, n, cls});
      Family next{work.ambient, {}};
      for (uint32_t k = n; k < wd; ++k) {
        std::vector<VertexSet> nl;
        for (const auto& e : work.levels[k]) {
          VertexSet mine;
          for (Vertex x : e)
            if (g.g.at(x) == v) mine.push_back(x);
          if (mine != cls) continue;
          VertexSet rest;
          for (Vertex x : e)
            if (!std::binary_search(cls.begin(), cls.end(), x)) rest.push_back(x);
          nl.push_back(std::move(rest));
        }
        next.levels.push_back(std::move(nl));
      }
      next.canonicalize();
      work = std::move(next);
      if (work.depth() < 2)
        fail(ErrorCode::Budget, "pointwise_refine: too shallow after stripping label " +
                                    std::to_string(v));
      continue;
    }

    // case 2 on label v: level-skipping copy of its classes
    uint32_t label_out = v;
    std::vector<uint32_t> skips{0};
    while (true) {
      uint32_t cur = skips.back();
      std::optional<uint32_t> found;
      for (uint32_t m = cur + 1; m < wd && !found; ++m) {
        bool all_gone = true;
        for (const auto& cls : classes[cur])
          if (std::binary_search(classes[m].begin(), classes[m].end(), cls)) { all_gone = false; break; }
        if (all_gone) found = m;
      }
      if (!found) break;
      skips.push_back(*found);
    }
    if (skips.size() < 2)
      fail(ErrorCode::Budget,
           "pointwise_refine: family too shallow to certify either case at this depth");
    Family out{work.ambient, {}};
    for (uint32_t m : skips) out.levels.push_back(classes[m]);
    out.canonicalize();
    cert.final_label = label_out;
    cert.skip_levels = skips;
    cert.depth = out.depth();
    require_valid_family(out, out.depth());

    // self-check: result sits below the label's class family of the input
    Family class_family{s.ambient, {}};
    for (uint32_t k = 0; k < depth; ++k) class_family.levels.push_back(label_classes(s.levels[k], g, v));
    auto leq = family_leq(out, class_family, out.depth());
    if (!leq.holds)
      fail(ErrorCode::Internal, "pointwise_refine: output escaped its label class family");
    return RefineResult{label_out, std::move(out), std::move(cert)};
  }
  fail(ErrorCode::Internal, "pointwise_refine: label scan fell through");
}

SplitResult family_split(const Family& s, uint32_t level, const VertexSet& e, uint32_t d) {
  uint32_t depth = std::min<uint32_t>(d, s.depth());
  require_valid_family(s, depth);
  if (level >= depth) fail_input("family_split: level out of range");
  Family rest = restrict_family(s, level, e);
  uint32_t avail = depth > level + 1 ? depth - level - 1 : 0;
  if (rest.depth() < avail)
    fail(ErrorCode::Budget, "family_split: E is not on a path surviving to depth " +
                                std::to_string(depth));
  if (rest.depth() > avail) rest.levels.resize(avail);
  if (rest.depth() < 2)
    fail(ErrorCode::Budget, "family_split: depth too small to certify a split");

  // label x by its beats/beaten partition of E, encoded as the subset of E
  // that beats x
  PointwisePartition g;
  for (const auto& lv : rest.levels)
    for (const auto& st : lv)
      for (Vertex x : st) {
        uint32_t mask = 0;
        for (size_t a = 0; a < e.size(); ++a)
          if (s.ambient.beats(e[a], x)) mask |= 1u << a;
        g.g[x] = mask;
      }

  RefineResult ref = pointwise_refine(rest, g, rest.depth());

  SplitResult out;
  for (size_t a = 0; a < e.size(); ++a)
    (ref.label >> a & 1 ? out.e0 : out.e1).push_back(e[a]);
  out.family = std::move(ref.family);
  out.certificate = std::move(ref.certificate);

  // re-verify the postconditions by brute force
  for (const auto& lv : out.family.levels)
    for (const auto& st : lv)
      for (Vertex x : st) {
        for (Vertex a : out.e0)
          if (!s.ambient.beats(a, x))
            fail(ErrorCode::Internal, "family_split: direction edge E0 -> family fails");
        for (Vertex b : out.e1)
          if (!s.ambient.beats(x, b))
            fail(ErrorCode::Internal, "family_split: direction edge family -> E1 fails");
      }
  for (const VertexSet* half : {&out.e0, &out.e1}) {
    auto leq = family_leq(prepend(*half, out.family), s, out.family.depth());
    if (!leq.holds)
      fail(ErrorCode::Internal, "family_split: prepended half escaped the ambient family");
  }
  return out;
}

Family seeded_family(uint32_t ambient_n, uint64_t seed, uint32_t depth, uint32_t branching) {
  if (ambient_n == 0 || depth == 0) fail_input("seeded_family: need ambient_n >= 1 and depth >= 1");
  if (branching == 0 || branching > 3) fail_input("seeded_family: branching must be 1..3");
  Family fam{std::get<Tournament>(random_instance(Kind::Tournament, ambient_n, seed)), {}};
  Xorshift64Star rng(seed ^ 0xA5A5A5A5A5A5A5A5ULL);
  Vertex fresh = 0;
  auto take = [&]() -> std::optional<Vertex> {
    if (fresh >= ambient_n) return std::nullopt;
    return fresh++;
  };

  std::vector<VertexSet> level;
  if (auto v = take()) level.push_back({*v});
  if (branching > 1 && rng.next_bit()) {
    if (auto v = take()) level.push_back({*v});
  }
  if (level.empty()) fail_input("seeded_family: ambient too small");
  fam.levels.push_back(level);

  constexpr size_t kWidthCap = 6;
  for (uint32_t k = 1; k < depth; ++k) {
    // fresh pool for the whole level; children pick nonempty subsets of it
    std::vector<Vertex> pool;
    if (auto v = take()) pool.push_back(*v);
    if (branching > 1 && rng.next_bit()) {
      if (auto v = take()) pool.push_back(*v);
    }
    if (pool.empty()) break;
    std::vector<VertexSet> next;
    for (const auto& parent : fam.levels[k - 1]) {
      std::vector<VertexSet> additions;
      additions.push_back({pool[0]});
      if (pool.size() == 2 && branching >= 2 && rng.next_bit()) additions.push_back({pool[1]});
      if (pool.size() == 2 && branching >= 3 && rng.next_bit())
        additions.push_back({pool[0], pool[1]});
      for (const auto& add : additions) {
        if (next.size() >= kWidthCap && !next.empty()) break;
        VertexSet child = parent;
        child.insert(child.end(), add.begin(), add.end());
        next.push_back(std::move(child));
      }
      if (next.size() >= kWidthCap) {
        // still give remaining parents one child each so paths survive
        continue;
      }
    }
    // every parent needs at least one successor path only if we want full
    // survival; (A2) itself just needs each child to have a parent
    fam.levels.push_back(next);
  }
  fam.canonicalize();
  require_valid_family(fam, fam.depth());
  return fam;
}

}  // namespace rmwb
