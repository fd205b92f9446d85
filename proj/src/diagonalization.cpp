#include "rmwb/diagonalization.hpp"

#include <algorithm>
#include <sstream>

#include "rmwb/solvers.hpp"

namespace rmwb {

namespace {

bool contains(const VertexSet& s, Vertex v) { return std::binary_search(s.begin(), s.end(), v); }

VertexSet parse_id_list(const std::string& text) {
  VertexSet out;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) fail_input("malformed id list '" + text + "'");
    out.push_back(static_cast<Vertex>(std::stoul(item)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

uint8_t LimitGuesser::claims(uint32_t x, uint32_t s) const {
  switch (source) {
    case Source::Table: {
      auto it = rows.find({x, s});
      return it == rows.end() ? 0 : it->second;
    }
    case Source::StableTarget:
      if (s >= s0) return contains(target, x) ? 1 : 0;
      return static_cast<uint8_t>((x + s) & 1);  // deterministic pre-stability noise
    case Source::Injurious:
      return contains(s < switch_stage ? target : target2, x) ? 1 : 0;
  }
  return 0;
}

uint32_t LimitGuesser::rectangle() const {
  return source == Source::Table ? rect : UINT32_MAX;
}

// ---- trace ------------------------------------------------------------------

std::string serialize_trace(const ConstructionTrace& t) {
  std::string out = "rmwb-trace v1\nkind " + t.kind + "\nhorizon " + std::to_string(t.horizon) + "\n";
  for (const auto& ev : t.events) {
    switch (ev.tag) {
      case TraceEvent::Tag::Claim: {
        out += "CLAIM s=" + std::to_string(ev.stage) + " e=" + std::to_string(ev.e) + " {";
        for (size_t i = 0; i < ev.set.size(); ++i) {
          if (i) out.push_back(',');
          out += std::to_string(ev.set[i]);
        }
        out += "}\n";
        break;
      }
      case TraceEvent::Tag::Pick:
        out += "PICK s=" + std::to_string(ev.stage) + " e=" + std::to_string(ev.e) + " w=" +
               std::to_string(ev.aux);
        if (t.kind == "dkls") out += " x=" + std::to_string(ev.u);
        out += " {";
        for (size_t i = 0; i < ev.set.size(); ++i) {
          if (i) out.push_back(',');
          out += std::to_string(ev.set[i]);
        }
        out += "}\n";
        break;
      case TraceEvent::Tag::Edge:
        out += "EDGE s=" + std::to_string(ev.stage) + " e=" + std::to_string(ev.e) + " " +
               std::to_string(ev.u) + " " + std::to_string(ev.v) + "\n";
        break;
      case TraceEvent::Tag::Cancel:
        out += "CANCEL s=" + std::to_string(ev.stage) + " e=" + std::to_string(ev.e) + " by=" +
               std::to_string(ev.by) + "\n";
        break;
      case TraceEvent::Tag::Default:
        out += "DEFAULT s=" + std::to_string(ev.stage) + " " + std::to_string(ev.u) + " " +
               std::to_string(ev.v) + "\n";
        break;
    }
  }
  return out;
}

namespace {

uint32_t parse_kv(const std::string& tok, const char* key) {
  std::string prefix = std::string(key) + "=";
  if (tok.rfind(prefix, 0) != 0) fail_input("trace: expected '" + prefix + "...' got '" + tok + "'");
  return static_cast<uint32_t>(std::stoul(tok.substr(prefix.size())));
}

VertexSet parse_brace_list(const std::string& tok) {
  if (tok.size() < 2 || tok.front() != '{' || tok.back() != '}')
    fail_input("trace: malformed set '" + tok + "'");
  std::string body = tok.substr(1, tok.size() - 2);
  if (body.empty()) return {};
  return parse_id_list(body);
}

}  // namespace

ConstructionTrace parse_trace(const std::string& text) {
  ConstructionTrace t;
  std::istringstream in(text);
  std::string line;
  int header = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header == 0) {
      if (line != "rmwb-trace v1") fail_input("trace: bad header");
      ++header;
      continue;
    }
    if (header == 1) {
      if (line.rfind("kind ", 0) != 0) fail_input("trace: expected kind line");
      t.kind = line.substr(5);
      ++header;
      continue;
    }
    if (header == 2) {
      if (line.rfind("horizon ", 0) != 0) fail_input("trace: expected horizon line");
      t.horizon = static_cast<uint32_t>(std::stoul(line.substr(8)));
      ++header;
      continue;
    }
    std::istringstream ss(line);
    std::string tag, tok;
    ss >> tag;
    TraceEvent ev{};
    if (tag == "CLAIM") {
      ev.tag = TraceEvent::Tag::Claim;
      ss >> tok;
      ev.stage = parse_kv(tok, "s");
      ss >> tok;
      ev.e = parse_kv(tok, "e");
      ss >> tok;
      ev.set = parse_brace_list(tok);
    } else if (tag == "PICK") {
      ev.tag = TraceEvent::Tag::Pick;
      ss >> tok;
      ev.stage = parse_kv(tok, "s");
      ss >> tok;
      ev.e = parse_kv(tok, "e");
      ss >> tok;
      ev.aux = parse_kv(tok, "w");
      if (t.kind == "dkls") {
        ss >> tok;
        ev.u = parse_kv(tok, "x");
      }
      ss >> tok;
      ev.set = parse_brace_list(tok);
    } else if (tag == "EDGE") {
      ev.tag = TraceEvent::Tag::Edge;
      ss >> tok;
      ev.stage = parse_kv(tok, "s");
      ss >> tok;
      ev.e = parse_kv(tok, "e");
      ss >> ev.u >> ev.v;
    } else if (tag == "CANCEL") {
      ev.tag = TraceEvent::Tag::Cancel;
      ss >> tok;
      ev.stage = parse_kv(tok, "s");
      ss >> tok;
      ev.e = parse_kv(tok, "e");
      ss >> tok;
      ev.by = parse_kv(tok, "by");
    } else if (tag == "DEFAULT") {
      ev.tag = TraceEvent::Tag::Default;
      ss >> tok;
      ev.stage = parse_kv(tok, "s");
      ss >> ev.u >> ev.v;
    } else {
      fail_input("trace: unknown event '" + tag + "'");
    }
    if (ss.fail()) fail_input("trace: malformed event line '" + line + "'");
    t.events.push_back(ev);
  }
  if (header < 3) fail_input("trace: truncated header");
  return t;
}

Tournament replay_trace(const ConstructionTrace& t) {
  if (t.horizon == 0) fail_input("replay: empty horizon");
  std::vector<uint8_t> bits(pair_count(t.horizon), 0);
  std::vector<uint8_t> set(pair_count(t.horizon), 0);
  auto declare = [&](Vertex u, Vertex v) {
    if (u == v || u >= t.horizon || v >= t.horizon) fail_input("replay: edge out of range");
    size_t idx = pair_index(t.horizon, std::min(u, v), std::max(u, v));
    if (set[idx]) fail_input("replay: duplicate edge declaration");
    set[idx] = 1;
    bits[idx] = u < v ? 1 : 0;
  };
  for (const auto& ev : t.events)
    if (ev.tag == TraceEvent::Tag::Edge || ev.tag == TraceEvent::Tag::Default) declare(ev.u, ev.v);
  for (size_t i = 0; i < set.size(); ++i)
    if (!set[i]) fail_input("replay: trace leaves an edge undecided");
  return Tournament(t.horizon, std::move(bits));
}

// ---- adversary files ----------------------------------------------------------

AdversarySuite parse_adversaries(const std::string& text) {
  AdversarySuite suite;
  std::istringstream in(text);
  std::string line;
  bool saw_header = false;
  enum class Section { None, Guesser, Array } sec = Section::None;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {
      if (line != "rmwb-adv v1") fail_input("adversaries: bad header");
      saw_header = true;
      continue;
    }
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "guesser") {
      uint32_t id;
      if (!(ss >> id)) fail_input("adversaries: malformed guesser line");
      suite.guessers.push_back(LimitGuesser{});
      suite.guessers.back().id = id;
      sec = Section::Guesser;
    } else if (tag == "array") {
      uint32_t id;
      if (!(ss >> id)) fail_input("adversaries: malformed array line");
      suite.arrays.push_back(StrongArrayApprox{});
      suite.arrays.back().id = id;
      sec = Section::Array;
    } else if (sec == Section::Guesser) {
      uint32_t x = static_cast<uint32_t>(std::stoul(tag)), s, v;
      if (!(ss >> s >> v) || v > 1) fail_input("adversaries: malformed guesser row '" + line + "'");
      auto& g = suite.guessers.back();
      g.rows[{x, s}] = static_cast<uint8_t>(v);
      g.rect = std::max({g.rect, x + 1, s + 1});
    } else if (sec == Section::Array) {
      uint32_t x = static_cast<uint32_t>(std::stoul(tag)), stage;
      std::string code;
      if (!(ss >> stage >> code)) fail_input("adversaries: malformed array row '" + line + "'");
      auto& a = suite.arrays.back();
      if (a.entries.count(x)) fail_input("adversaries: duplicate array entry for x");
      VertexSet d = parse_brace_list(code);
      if (d.empty()) fail_input("adversaries: array sets must be nonempty");
      a.entries[x] = StrongArrayApprox::Entry{stage, d};
    } else {
      fail_input("adversaries: row outside any section");
    }
  }
  if (!saw_header) fail_input("adversaries: missing header");
  return suite;
}

std::string serialize_adversaries(const AdversarySuite& a) {
  std::string out = "rmwb-adv v1\n";
  for (const auto& g : a.guessers) {
    if (g.source != LimitGuesser::Source::Table)
      fail_input("serialize_adversaries: only table guessers have a file form");
    out += "guesser " + std::to_string(g.id) + "\n";
    for (const auto& [xs, v] : g.rows)
      out += std::to_string(xs.first) + " " + std::to_string(xs.second) + " " + std::to_string(v) +
             "\n";
  }
  for (const auto& arr : a.arrays) {
    out += "array " + std::to_string(arr.id) + "\n";
    for (const auto& [x, entry] : arr.entries) {
      out += std::to_string(x) + " " + std::to_string(entry.stage) + " {";
      for (size_t i = 0; i < entry.set.size(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(entry.set[i]);
      }
      out += "}\n";
    }
  }
  return out;
}

AdversarySuite builtin_adversaries(const std::vector<std::string>& specs) {
  AdversarySuite suite;
  uint32_t next_id = 0;
  for (const std::string& spec : specs) {
    size_t colon = spec.find(':');
    std::string family = spec.substr(0, colon);
    std::map<std::string, std::string> kv;
    if (colon != std::string::npos) {
      std::istringstream ss(spec.substr(colon + 1));
      std::string part;
      while (std::getline(ss, part, ';')) {
        size_t eq = part.find('=');
        if (eq == std::string::npos) fail_input("builtin adversary: malformed parameter '" + part + "'");
        kv[part.substr(0, eq)] = part.substr(eq + 1);
      }
    }
    if (family == "stable-target") {
      LimitGuesser g;
      g.id = next_id++;
      g.source = LimitGuesser::Source::StableTarget;
      if (!kv.count("d")) fail_input("stable-target: missing d=");
      g.target = parse_id_list(kv["d"]);
      g.s0 = kv.count("s0") ? static_cast<uint32_t>(std::stoul(kv["s0"])) : 0;
      suite.guessers.push_back(std::move(g));
    } else if (family == "injurious") {
      LimitGuesser g;
      g.id = next_id++;
      g.source = LimitGuesser::Source::Injurious;
      if (!kv.count("d") || !kv.count("d2") || !kv.count("switch"))
        fail_input("injurious: need d=, d2= and switch=");
      g.target = parse_id_list(kv["d"]);
      g.target2 = parse_id_list(kv["d2"]);
      g.switch_stage = static_cast<uint32_t>(std::stoul(kv["switch"]));
      suite.guessers.push_back(std::move(g));
    } else if (family == "canonical-interval") {
      if (!kv.count("k")) fail_input("canonical-interval: missing k=");
      uint32_t k = static_cast<uint32_t>(std::stoul(kv["k"]));
      uint32_t count = kv.count("count") ? static_cast<uint32_t>(std::stoul(kv["count"])) : 16;
      if (k == 0) fail_input("canonical-interval: k must be >= 1");
      StrongArrayApprox a;
      a.id = next_id++;
      for (uint32_t x = 0; x < count; ++x) {
        VertexSet d;
        for (uint32_t j = 0; j < k; ++j) d.push_back(k * x + j);
        a.entries[x] = StrongArrayApprox::Entry{x + 1, d};
      }
      suite.arrays.push_back(std::move(a));
    } else {
      fail_input("unknown builtin adversary family '" + family + "'");
    }
  }
  return suite;
}

// ---- KLSW construction ---------------------------------------------------------

namespace {

class EdgeBoard {
 public:
  EdgeBoard(uint32_t n, ConstructionTrace& trace) : n_(n), trace_(trace),
      bits_(pair_count(n), 0), decided_(pair_count(n), 0) {}

  bool decided(Vertex a, Vertex b) const {
    return decided_[pair_index(n_, std::min(a, b), std::max(a, b))] != 0;
  }
  bool beats(Vertex a, Vertex b) const {
    size_t idx = pair_index(n_, std::min(a, b), std::max(a, b));
    return a < b ? bits_[idx] != 0 : bits_[idx] == 0;
  }
  // First writer wins; a collision is logged by the caller's policy.
  bool declare(uint32_t stage, uint32_t e, Vertex winner, Vertex loser, bool is_default) {
    size_t idx = pair_index(n_, std::min(winner, loser), std::max(winner, loser));
    if (decided_[idx]) return beats(winner, loser);
    decided_[idx] = 1;
    bits_[idx] = winner < loser ? 1 : 0;
    TraceEvent ev{};
    ev.tag = is_default ? TraceEvent::Tag::Default : TraceEvent::Tag::Edge;
    ev.stage = stage;
    ev.e = e;
    ev.u = winner;
    ev.v = loser;
    trace_.events.push_back(ev);
    return true;
  }
  Tournament finish() {
    for (uint8_t d : decided_)
      if (!d) fail(ErrorCode::Internal, "construction left an edge undecided");
    return Tournament(n_, bits_);
  }

 private:
  uint32_t n_;
  ConstructionTrace& trace_;
  std::vector<uint8_t> bits_, decided_;
};

}  // namespace

std::pair<Tournament, ConstructionTrace> construct_klsw(const std::vector<LimitGuesser>& guessers,
                                                        uint32_t horizon) {
  if (horizon == 0) fail_input("construct_klsw: horizon must be >= 1");
  for (const auto& g : guessers)
    if (g.rectangle() < horizon)
      fail_input("construct_klsw: guesser " + std::to_string(g.id) +
                 " rectangle is smaller than the horizon");
  ConstructionTrace trace{"klsw", horizon, {}};
  EdgeBoard board(horizon, trace);

  for (uint32_t s = 1; s < horizon; ++s) {
    VertexSet chosen;  // elements claimed by higher-priority requirements this stage
    for (uint32_t e = 0; e < guessers.size() && e < s; ++e) {
      const auto& g = guessers[e];
      VertexSet claimed;
      for (Vertex x = 0; x < s; ++x)
        if (g.claims(x, s)) claimed.push_back(x);
      uint32_t group = 2 * e + 2;
      if (claimed.size() < group) continue;
      claimed.resize(group);  // the 2e+2 least currently claimed
      TraceEvent cl{};
      cl.tag = TraceEvent::Tag::Claim;
      cl.stage = s;
      cl.e = e;
      cl.set = claimed;
      trace.events.push_back(cl);

      VertexSet avail;
      for (Vertex x : claimed)
        if (!contains(chosen, x)) avail.push_back(x);
      if (avail.size() < 2) continue;  // cannot happen with disjoint pairs, kept defensive
      Vertex xi = avail[0], xj = avail[1];
      chosen.push_back(xi);
      chosen.push_back(xj);
      std::sort(chosen.begin(), chosen.end());

      // order the pair so that T(u,v) already holds, then cycle through s
      Vertex u = board.beats(xi, xj) ? xi : xj;
      Vertex v = u == xi ? xj : xi;
      TraceEvent pk{};
      pk.tag = TraceEvent::Tag::Pick;
      pk.stage = s;
      pk.e = e;
      pk.set = {std::min(xi, xj), std::max(xi, xj)};
      trace.events.push_back(pk);
      board.declare(s, e, s, u, false);  // T(s, u)
      board.declare(s, e, v, s, false);  // T(v, s)
    }
    for (Vertex x = 0; x < s; ++x)
      if (!board.decided(x, s)) board.declare(s, 0, x, s, true);  // default T(x, s)
  }
  return {board.finish(), std::move(trace)};
}

KlswReport verify_klsw(const Tournament& t, const ConstructionTrace& trace, uint32_t e,
                       uint32_t window) {
  KlswReport rep;
  if (trace.kind != "klsw") fail_input("verify_klsw: trace kind mismatch");
  if (!(replay_trace(trace) == t)) fail(ErrorCode::Violation, "verify_klsw: trace does not match tournament");
  uint32_t horizon = trace.horizon;

  std::map<uint32_t, VertexSet> picks;  // stage -> pair
  for (const auto& ev : trace.events)
    if (ev.tag == TraceEvent::Tag::Pick && ev.e == e) picks[ev.stage] = ev.set;
  if (picks.empty()) {
    rep.message = "requirement never acted";
    return rep;
  }
  rep.acted = true;

  // least stage from which the requirement picks the same pair at every stage
  uint32_t limit = std::min(horizon, window == 0 ? horizon : window);
  std::optional<uint32_t> stable;
  for (auto it = picks.begin(); it != picks.end(); ++it) {
    bool ok = it->first < limit;
    VertexSet pair = it->second;
    uint32_t expect = it->first;
    for (auto jt = it; jt != picks.end() && ok; ++jt) {
      ok = jt->first == expect && jt->second == pair;
      ++expect;
    }
    ok = ok && expect == horizon;
    if (ok) {
      stable = it->first;
      break;
    }
  }
  if (!stable) {
    rep.message = "requirement did not stabilize within the window";
    return rep;
  }
  rep.stabilized = true;
  rep.stable_stage = *stable;
  const VertexSet& pair = picks[*stable];
  rep.xi = pair[0];
  rep.xj = pair[1];

  rep.cycles_ok = true;
  for (uint32_t s = *stable; s < horizon; ++s) {
    VertexSet triple{pair[0], pair[1], s};
    std::sort(triple.begin(), triple.end());
    SolutionSet sol{SolutionKind::Transitive, std::nullopt, triple};
    if (!solution_violation(Instance(t), sol)) {
      rep.cycles_ok = false;
      rep.message = "stage " + std::to_string(s) + " extends the witness pair transitively";
      break;
    }
  }
  rep.extensions = one_point_extensions(t, pair);
  rep.extension_bound_ok = true;
  for (Vertex a : rep.extensions)
    if (a >= rep.stable_stage) rep.extension_bound_ok = false;
  if (rep.extensions.size() > rep.stable_stage) rep.extension_bound_ok = false;
  return rep;
}

// ---- DKLS construction -----------------------------------------------------------

std::pair<Tournament, ConstructionTrace> construct_dkls(const std::vector<StrongArrayApprox>& arrays,
                                                        uint32_t horizon) {
  if (horizon == 0) fail_input("construct_dkls: horizon must be >= 1");
  for (const auto& a : arrays)
    for (const auto& [x, entry] : a.entries)
      if (entry.set.empty()) fail_input("construct_dkls: array sets must be nonempty");

  ConstructionTrace trace{"dkls", horizon, {}};
  EdgeBoard board(horizon, trace);

  struct WitnessState {
    std::optional<uint32_t> x0, x1;
  };
  std::vector<WitnessState> st(arrays.size());

  auto d_of = [&](uint32_t e, uint32_t x) -> const VertexSet& {
    return arrays[e].entries.at(x).set;
  };

  for (uint32_t s = 1; s < horizon; ++s) {
    for (uint32_t e = 0; e < arrays.size() && e <= s; ++e) {
      auto candidate_ok = [&](uint32_t x) {
        auto it = arrays[e].entries.find(x);
        if (it == arrays[e].entries.end() || it->second.stage > s) return false;  // (1)
        const VertexSet& d = it->second.set;
        if (d.empty() || d.back() >= s) return false;  // (2)
        for (uint32_t i = 0; i < e; ++i) {             // (3)
          for (auto w : {st[i].x0, st[i].x1}) {
            if (!w) continue;
            if (x <= *w) return false;
            const VertexSet& dw = d_of(i, *w);
            for (Vertex y : d)
              if (contains(dw, y)) return false;
          }
        }
        return true;
      };

      if (!st[e].x0) {
        // Case 1: no witnesses yet
        std::optional<uint32_t> x0;
        for (uint32_t x = 0; x < s && !x0; ++x)
          if (candidate_ok(x)) x0 = x;
        if (!x0) continue;
        st[e].x0 = x0;
        TraceEvent pk{};
        pk.tag = TraceEvent::Tag::Pick;
        pk.stage = s;
        pk.e = e;
        pk.aux = 0;
        pk.u = *x0;
        pk.set = d_of(e, *x0);
        trace.events.push_back(pk);
        for (Vertex y : d_of(e, *x0)) board.declare(s, e, y, s, false);  // T(y, s)
        for (uint32_t i = e + 1; i < arrays.size(); ++i)
          if (st[i].x0 || st[i].x1) {
            st[i] = WitnessState{};
            TraceEvent cv{};
            cv.tag = TraceEvent::Tag::Cancel;
            cv.stage = s;
            cv.e = i;
            cv.by = e;
            trace.events.push_back(cv);
          }
      } else if (!st[e].x1) {
        // Case 2: exactly one witness
        const VertexSet& d0 = d_of(e, *st[e].x0);
        std::optional<uint32_t> x1;
        for (uint32_t x = 0; x < s && !x1; ++x) {
          if (!candidate_ok(x)) continue;
          bool cond4 = true;
          for (Vertex y0 : d0)
            for (Vertex y1 : d_of(e, x))
              cond4 = cond4 && board.decided(y0, y1) && board.beats(y0, y1);
          if (cond4) x1 = x;
        }
        if (!x1) {
          for (Vertex y : d0) board.declare(s, e, y, s, false);  // keep pushing T(y, s)
          continue;
        }
        st[e].x1 = x1;
        TraceEvent pk{};
        pk.tag = TraceEvent::Tag::Pick;
        pk.stage = s;
        pk.e = e;
        pk.aux = 1;
        pk.u = *x1;
        pk.set = d_of(e, *x1);
        trace.events.push_back(pk);
        for (Vertex y : d0) board.declare(s, e, s, y, false);            // T(s, y0)
        for (Vertex y : d_of(e, *x1)) board.declare(s, e, y, s, false);  // T(y1, s)
        for (uint32_t i = e + 1; i < arrays.size(); ++i)
          if (st[i].x0 || st[i].x1) {
            st[i] = WitnessState{};
            TraceEvent cv{};
            cv.tag = TraceEvent::Tag::Cancel;
            cv.stage = s;
            cv.e = i;
            cv.by = e;
            trace.events.push_back(cv);
          }
      } else {
        // Case 3: both witnesses
        for (Vertex y : d_of(e, *st[e].x0)) board.declare(s, e, s, y, false);
        for (Vertex y : d_of(e, *st[e].x1)) board.declare(s, e, y, s, false);
      }
    }
    for (Vertex x = 0; x < s; ++x)
      if (!board.decided(x, s)) board.declare(s, 0, x, s, true);
  }
  return {board.finish(), std::move(trace)};
}

DklsReport verify_dkls(const Tournament& t, const ConstructionTrace& trace, uint32_t e) {
  DklsReport rep;
  if (trace.kind != "dkls") fail_input("verify_dkls: trace kind mismatch");
  if (!(replay_trace(trace) == t)) fail(ErrorCode::Violation, "verify_dkls: trace does not match tournament");

  // final witnesses: the last uncancelled picks
  std::optional<uint32_t> x0, x1, s0, s1;
  VertexSet d0, d1;
  for (const auto& ev : trace.events) {
    if (ev.tag == TraceEvent::Tag::Pick && ev.e == e) {
      if (ev.aux == 0) {
        x0 = ev.u;
        s0 = ev.stage;
        d0 = ev.set;
        x1.reset();
        s1.reset();
      } else {
        x1 = ev.u;
        s1 = ev.stage;
        d1 = ev.set;
      }
    }
    if (ev.tag == TraceEvent::Tag::Cancel && ev.e == e) {
      x0.reset();
      x1.reset();
      s0.reset();
      s1.reset();
    }
  }
  if (!x0) {
    rep.message = "requirement has no witness in this horizon";
    return rep;
  }
  rep.has_first = true;
  rep.x0 = *x0;
  rep.stage0 = *s0;
  if (!x1) {
    rep.message = "second witness pending";
    return rep;
  }
  rep.has_second = true;
  rep.x1 = *x1;
  rep.stage1 = *s1;

  rep.cross_ok = true;
  for (Vertex y0 : d0)
    for (Vertex y1 : d1)
      if (!t.beats(y0, y1)) {
        rep.cross_ok = false;
        rep.message = "missing cross edge " + std::to_string(y0) + "->" + std::to_string(y1);
      }
  rep.tail_ok = true;
  for (uint32_t s = *s1 + 1; s < trace.horizon; ++s) {
    for (Vertex y0 : d0)
      if (!t.beats(s, y0)) rep.tail_ok = false;
    for (Vertex y1 : d1)
      if (!t.beats(y1, s)) rep.tail_ok = false;
  }
  rep.extension_bound_ok = true;
  for (Vertex y0 : d0)
    for (Vertex y1 : d1) {
      VertexSet pair{std::min(y0, y1), std::max(y0, y1)};
      for (Vertex a : one_point_extensions(t, pair))
        if (a > *s1) rep.extension_bound_ok = false;
    }
  if (rep.cross_ok && rep.tail_ok && rep.extension_bound_ok && rep.message.empty())
    rep.message = "witness pair is non-extendible above stage " + std::to_string(*s1);
  return rep;
}

}  // namespace rmwb
