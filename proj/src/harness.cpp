#include "genlimit/harness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "genlimit/error.hpp"

namespace genlimit {

GroupPartition load_groups(const Json& doc, const RegistryPtr& registry) {
  try {
    std::vector<std::string> names;
    std::vector<SetExpr> sets;
    for (const auto& g : doc.at("groups")) {
      names.push_back(g.at("name").get<std::string>());
      sets.push_back(set_from_json(g, registry));
    }
    return GroupPartition(std::move(names), std::move(sets));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Schema, std::string("groups: ") + e.what());
  }
}

GroupPartition load_groups_file(const std::filesystem::path& path, const RegistryPtr& registry) {
  return load_groups(read_json_file(path), registry);
}

const char* to_string(AttackKind a) noexcept {
  switch (a) {
    case AttackKind::Canonical: return "canonical";
    case AttackKind::IntersectionFirst: return "intersection-first";
    case AttackKind::Repr: return "repr";
  }
  return "unknown";
}

bool Report::passed() const {
  return std::all_of(sims.begin(), sims.end(), [](const SimReport& s) { return s.passed; }) &&
         std::all_of(invariants.begin(), invariants.end(), [](const InvariantResult& r) { return r.passed; });
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Json tokens_json(const TokenSet& s, const AtomRegistry& reg) {
  Json out = Json::array();
  for (const auto& t : s) out.push_back(token_to_json(t, reg));
  return out;
}

Setting setting_from(const std::string& s) {
  if (s == "plain") return Setting::Plain;
  if (s == "noisy") return Setting::Noisy;
  if (s == "representative") return Setting::Representative;
  throw Error(ErrorCode::Schema, "unknown setting " + s);
}

oracle::Dominance dominance_from(const std::string& s) {
  for (auto d : {oracle::Dominance::Equal, oracle::Dominance::Dominates, oracle::Dominance::DominatedBy,
                 oracle::Dominance::Incomparable})
    if (s == oracle::to_string(d)) return d;
  throw Error(ErrorCode::Schema, "unknown verdict " + s);
}

Json distribution_json(const Distribution& d, const AtomRegistry& reg) {
  Json out = Json::array();
  for (const auto& [t, m] : d) out.push_back({{"token", token_to_json(t, reg)}, {"mass", to_string(m)}});
  return out;
}

}  // namespace

Json table_to_json(const ComplexityTable& t, const AtomRegistry& registry) {
  Json entries = Json::array();
  for (const auto& e : t.entries)
    entries.push_back({{"i", e.cell.language + 1},
                       {"n", e.cell.noise},
                       {"position", e.position},
                       {"mStar", e.m_star},
                       {"witness", e.witness},
                       {"witnessTokens", tokens_json(e.witness_set, registry)}});
  Json out{{"setting", to_string(t.setting)}, {"entries", entries}, {"ordering", t.ordering}};
  if (t.alpha) out["alpha"] = to_string(*t.alpha);
  return out;
}

ComplexityTable table_from_json(const Json& j, const AtomRegistry& registry) {
  try {
    ComplexityTable t;
    t.setting = setting_from(j.at("setting").get<std::string>());
    if (j.contains("alpha")) t.alpha = parse_rational(j.at("alpha").get<std::string>());
    for (const auto& e : j.at("entries")) {
      TableEntry entry;
      entry.cell = {e.at("i").get<std::size_t>() - 1, e.at("n").get<std::uint32_t>()};
      entry.position = e.at("position").get<std::uint64_t>();
      entry.m_star = e.at("mStar").get<std::uint64_t>();
      entry.witness = e.at("witness").get<std::vector<std::size_t>>();
      for (const auto& tok : e.at("witnessTokens")) entry.witness_set.insert(token_from_json(tok, registry));
      t.entries.push_back(std::move(entry));
    }
    t.ordering = j.at("ordering").get<std::vector<std::size_t>>();
    return t;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Schema, std::string("table: ") + e.what());
  }
}

Json report_to_json(const Report& r, const AtomRegistry& registry) {
  Json sims = Json::array();
  for (const auto& s : r.sims) {
    Json steps = Json::array();
    for (const auto& st : s.steps) {
      Json step{{"input", token_to_json(st.input, registry)},
                {"distinct", st.distinct},
                {"output", distribution_json(st.output, registry)},
                {"valid", st.valid}};
      if (st.linf) step["linf"] = to_string(*st.linf);
      steps.push_back(std::move(step));
    }
    Json sim{{"generator", s.generator},   {"adversary", s.adversary},      {"target", s.target + 1},
             {"noise", s.noise},           {"mStar", s.m_star},             {"bound", s.bound},
             {"firstStable", s.first_stable}, {"horizon", s.steps.size()}, {"representationOk", s.representation_ok},
             {"passed", s.passed},         {"steps", steps}};
    if (s.alpha) sim["alpha"] = to_string(*s.alpha);
    sims.push_back(std::move(sim));
  }
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) verdicts.push_back({{"a", v.a}, {"b", v.b}, {"verdict", oracle::to_string(v.verdict)}});
  Json invariants = Json::array();
  for (const auto& i : r.invariants)
    invariants.push_back({{"name", i.name}, {"passed", i.passed}, {"detail", i.detail}});
  Json sequences = Json::array();
  for (const auto& s : r.sequences) sequences.push_back({{"name", s.name}, {"times", s.times}});
  Json out{{"table", r.table ? table_to_json(*r.table, registry) : Json()},
           {"sequences", sequences},
           {"simReports", sims},
           {"verdicts", verdicts},
           {"invariantResults", invariants},
           {"passed", r.passed()}};
  if (r.seed) out["seed"] = *r.seed;
  return out;
}

Report report_from_json(const Json& j, const AtomRegistry& registry) {
  try {
    Report r;
    if (!j.at("table").is_null()) r.table = table_from_json(j.at("table"), registry);
    for (const auto& s : j.at("sequences"))
      r.sequences.push_back({s.at("name").get<std::string>(), s.at("times").get<std::vector<std::uint64_t>>()});
    for (const auto& s : j.at("simReports")) {
      SimReport sim;
      sim.generator = s.at("generator").get<std::string>();
      sim.adversary = s.at("adversary").get<std::string>();
      sim.target = s.at("target").get<std::size_t>() - 1;
      sim.noise = s.at("noise").get<std::uint32_t>();
      sim.m_star = s.at("mStar").get<std::uint64_t>();
      sim.bound = s.at("bound").get<std::uint64_t>();
      sim.first_stable = s.at("firstStable").get<std::uint64_t>();
      sim.representation_ok = s.at("representationOk").get<bool>();
      sim.passed = s.at("passed").get<bool>();
      if (s.contains("alpha")) sim.alpha = parse_rational(s.at("alpha").get<std::string>());
      for (const auto& st : s.at("steps")) {
        SimStep step{token_from_json(st.at("input"), registry), st.at("distinct").get<std::size_t>(), {},
                     st.at("valid").get<bool>(), std::nullopt};
        for (const auto& o : st.at("output"))
          step.output.emplace(token_from_json(o.at("token"), registry), parse_rational(o.at("mass").get<std::string>()));
        if (st.contains("linf")) step.linf = parse_rational(st.at("linf").get<std::string>());
        sim.steps.push_back(std::move(step));
      }
      r.sims.push_back(std::move(sim));
    }
    for (const auto& v : j.at("verdicts"))
      r.verdicts.push_back({v.at("a").get<std::string>(), v.at("b").get<std::string>(),
                            dominance_from(v.at("verdict").get<std::string>())});
    for (const auto& i : j.at("invariantResults"))
      r.invariants.push_back({i.at("name").get<std::string>(), i.at("passed").get<bool>(),
                              i.at("detail").get<std::string>()});
    if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Schema, std::string("report: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Tables, schedules and simulations

namespace {

std::uint64_t noisy_limit(std::size_t languages, std::uint32_t levels) {
  std::uint64_t best = 0;
  for (std::uint64_t n = 0; n <= levels; ++n)
    for (std::uint64_t i = 1; i <= languages; ++i) best = std::max(best, diag_index(n, i));
  return best;
}

const GroupPartition& require_groups(const RunConfig& cfg) {
  if (!cfg.groups) throw Error(ErrorCode::Configuration, "the representative setting needs a group partition");
  return *cfg.groups;
}

std::uint64_t position_of(const RunConfig& cfg, Cell cell) {
  return cfg.setting == Setting::Noisy ? diag_index(cell.noise, cell.language + 1) : cell.language + 1;
}

std::shared_ptr<OrderingHistory> make_history(const Collection& c, const RunConfig& cfg) {
  switch (cfg.setting) {
    case Setting::Plain: return std::make_shared<OrderingHistory>(std::make_unique<PlainSorter>(c));
    case Setting::Noisy: return std::make_shared<OrderingHistory>(std::make_unique<NoisySorter>(c));
    case Setting::Representative:
      return std::make_shared<OrderingHistory>(std::make_unique<RepresentativeSorter>(c, require_groups(cfg), cfg.alpha));
  }
  throw Error(ErrorCode::Configuration, "unknown setting");
}

std::unique_ptr<Generator> make_generator(const Collection& c, const RunConfig& cfg, const ScheduleFn& f,
                                          std::shared_ptr<OrderingHistory> history) {
  switch (cfg.setting) {
    case Setting::Plain: return std::make_unique<ParetoGenerator>(c, f, std::move(history));
    case Setting::Noisy: return std::make_unique<NoisyGenerator>(c, f, std::move(history));
    case Setting::Representative:
      return std::make_unique<RepresentativeGenerator>(c, require_groups(cfg), cfg.alpha, f, std::move(history));
  }
  throw Error(ErrorCode::Configuration, "unknown setting");
}

}  // namespace

ComplexityTable complexity_table(const Collection& c, const RunConfig& cfg) {
  switch (cfg.setting) {
    case Setting::Plain: return procedure1(c, c.size());
    case Setting::Noisy: return procedure2(c, noisy_limit(c.size(), cfg.levels));
    case Setting::Representative: return procedure3(c, require_groups(cfg), cfg.alpha, c.size());
  }
  throw Error(ErrorCode::Configuration, "unknown setting");
}

ScheduleFn make_schedule(const RunConfig& cfg, const ComplexityTable& table) {
  switch (cfg.schedule) {
    case ScheduleKind::Identity: return ScheduleFn::identity();
    case ScheduleKind::Pow2: return ScheduleFn::power(2);
    case ScheduleKind::Sufficient: return sufficient_f(table);
    case ScheduleKind::Table: return ScheduleFn::explicit_table(cfg.schedule_table);
  }
  throw Error(ErrorCode::Configuration, "unknown schedule");
}

SimReport run_simulation(Generator& g, const EnumerationScript& script, const Collection& c,
                         const GroupPartition* groups, const std::optional<Rational>& alpha) {
  SimReport r;
  r.target = script.target;
  r.noise = script.noise;
  r.alpha = alpha;
  const auto& lang = c[script.target];
  std::uint64_t worst_invalid = 0;
  for (const auto& x : script.tokens) {
    auto out = g.feed(x);
    const auto& s = g.inputs();
    bool valid = total_mass(out) == Rational(1) && std::all_of(out.begin(), out.end(), [&](const auto& kv) {
                   return kv.second > 0 && lang.contains(kv.first) && !s.count(kv.first);
                 });
    SimStep step{x, s.size(), out, valid, std::nullopt};
    if (groups) {
      step.linf = linf_distance(group_masses(out, *groups), empirical_group_masses(s, *groups));
      if (alpha && *step.linf > *alpha) r.representation_ok = false;
    }
    if (!valid) worst_invalid = std::max<std::uint64_t>(worst_invalid, s.size());
    r.steps.push_back(std::move(step));
  }
  r.first_stable = worst_invalid + 1;
  return r;
}

namespace {

std::uint64_t table_limit(const Collection& c, const RunConfig& cfg) {
  return cfg.setting == Setting::Noisy ? noisy_limit(c.size(), cfg.levels) : c.size();
}

// `history` must come from make_history for the same collection and setting;
// its sorter doubles as the complexity table.
std::vector<SimReport> simulate_with(const Collection& c, const RunConfig& cfg,
                                     const std::shared_ptr<OrderingHistory>& history) {
  if (cfg.attack == AttackKind::Repr && cfg.setting != Setting::Representative)
    throw Error(ErrorCode::Configuration, "the repr attack needs the representative setting");
  const auto& table = history->table_at(table_limit(c, cfg));
  auto f = make_schedule(cfg, table);
  std::vector<std::size_t> targets;
  if (cfg.target) {
    if (*cfg.target >= c.size())
      throw Error(ErrorCode::IndexRange, "target " + std::to_string(*cfg.target + 1) + " out of range");
    targets.push_back(*cfg.target);
  } else {
    targets.resize(c.size());
    std::iota(targets.begin(), targets.end(), 0);
  }
  const std::uint32_t noise = cfg.setting == Setting::Noisy ? cfg.noise.value_or(cfg.levels) : 0;
  if (noise > cfg.levels) throw Error(ErrorCode::Configuration, "simulation noise above the processed levels");
  std::vector<SimReport> out;
  for (auto i : targets) {
    Cell cell{i, noise};
    auto e = table.find(cell);
    if (!e) throw Error(ErrorCode::IndexRange, "cell outside the computed table");
    const auto m = table.entries[*e].m_star;
    const auto bound = std::max(f.g(position_of(cfg, cell)), m + 1);
    const auto horizon = cfg.horizon ? cfg.horizon : static_cast<std::size_t>(2 * bound + 16);
    EnumerationScript script;
    if (cfg.attack == AttackKind::Canonical) {
      script = noise ? noisy_enumeration(c, i, noise, horizon) : canonical_enumeration(c, i, horizon);
    } else {
      // Targets without a witness admit no attack; only an explicit target is an error.
      if (m == 0 && !cfg.target) continue;
      script = witness_attack(c, table, cell, horizon);
    }
    auto gen = make_generator(c, cfg, f, history);
    const GroupPartition* groups = cfg.setting == Setting::Representative ? &*cfg.groups : nullptr;
    auto r = run_simulation(*gen, script, c, groups,
                            groups ? std::optional<Rational>(cfg.alpha) : std::nullopt);
    r.generator = to_string(cfg.setting);
    r.adversary = to_string(cfg.attack);
    r.m_star = m;
    r.bound = bound;
    r.passed = r.first_stable <= bound && r.representation_ok;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<SimReport> simulate(const Collection& c, const RunConfig& cfg) {
  return simulate_with(c, cfg, make_history(c, cfg));
}

// ---------------------------------------------------------------------------
// Comparison

Comparison compare(const Collection& c) {
  Comparison out;
  const auto n = c.size();
  auto lrt = baseline_times(c, Baseline::Lrt);
  auto cp = baseline_times(c, Baseline::Cp);
  auto pareto = procedure1(c, n).m_star_values();
  for (auto& v : pareto) ++v;

  // m(L_i) depends only on the set of languages placed before it, so the
  // sweep memoizes by predecessor mask.
  const auto k = std::min(n, kMaxSweep);
  auto sets = c.sets();
  std::map<std::pair<std::uint32_t, std::size_t>, std::uint64_t> memo;
  auto m_of = [&](std::uint32_t mask, std::size_t i) {
    auto key = std::make_pair(mask, i);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<SetExpr> prefix;
    std::size_t must = 0;
    for (std::size_t q = 0; q < k; ++q) {
      if (q == i) must = prefix.size();
      if (q == i || (mask >> q & 1)) prefix.push_back(sets[q]);
    }
    auto m = max_finite_intersection(prefix, must).m;
    memo.emplace(key, m);
    return m;
  };

  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<std::vector<std::uint64_t>> best;
  std::uint64_t best_sum = 0;
  do {
    auto times = cp;
    std::uint32_t mask = 0;
    for (std::size_t p = 0; p < k; ++p) {
      times[perm[p]] = std::max<std::uint64_t>(p + 1, m_of(mask, perm[p]) + 1);
      mask |= 1u << perm[p];
    }
    ++out.orderings;
    if (oracle::pareto_dominance(times, pareto) == oracle::Dominance::Dominates) ++out.orderings_dominating_pareto;
    if (oracle::pareto_dominance(times, cp) == oracle::Dominance::Dominates) {
      ++out.orderings_dominating_default;
      auto sum = std::accumulate(times.begin(), times.end(), std::uint64_t{0});
      if (!best || sum < best_sum) {
        best = times;
        best_sum = sum;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  out.sequences.push_back({"lrt", lrt});
  out.sequences.push_back({"cp-default", cp});
  if (best) out.sequences.push_back({"cp-reordered", *best});
  out.sequences.push_back({"pareto", pareto});
  for (std::size_t a = 0; a < out.sequences.size(); ++a)
    for (std::size_t b = a + 1; b < out.sequences.size(); ++b)
      out.verdicts.push_back({out.sequences[a].name, out.sequences[b].name,
                              oracle::pareto_dominance(out.sequences[a].times, out.sequences[b].times)});
  return out;
}

// ---------------------------------------------------------------------------
// Invariant suite

namespace {

struct Tally {
  Tally() = default;
  explicit Tally(std::string n) : name(std::move(n)) {}
  std::string name;
  bool passed = true;
  std::string detail;
  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
  InvariantResult result() const { return {name, passed, passed && detail.empty() ? "ok" : detail}; }
};

std::string cell_name(const Cell& c) {
  return "L" + std::to_string(c.language + 1) + (c.noise ? "@" + std::to_string(c.noise) : "");
}

std::vector<std::size_t> sorted_positions(const ComplexityTable& t) {
  std::vector<std::size_t> pos(t.entries.size());
  for (std::size_t k = 0; k < t.ordering.size(); ++k) pos[t.ordering[k]] = k;
  return pos;
}

/// Largest finite intersection among distinct languages of the prefix, with
/// the candidate's language required.
std::uint64_t closure_with(const Collection& c, const ComplexityTable& t, std::size_t k) {
  std::vector<std::size_t> langs;
  for (std::size_t q = 0; q <= k; ++q) langs.push_back(t.entries[t.ordering[q]].cell.language);
  const auto own = langs.back();
  std::sort(langs.begin(), langs.end());
  langs.erase(std::unique(langs.begin(), langs.end()), langs.end());
  std::vector<SetExpr> sets;
  std::size_t must = 0;
  for (auto l : langs) {
    if (l == own) must = sets.size();
    sets.push_back(c[l]);
  }
  return max_finite_intersection(sets, must).m;
}

/// max over subcollections containing the candidate of |I| (finite I) or
/// K p / alpha (infinite I, p the largest finite group part).
Rational representative_bound(const Collection& c, const ComplexityTable& t, std::size_t k, const GroupPartition& p,
                              const Rational& alpha) {
  std::vector<SetExpr> prefix;
  for (std::size_t q = 0; q < k; ++q) prefix.push_back(c[t.entries[t.ordering[q]].cell.language]);
  const auto& own = c[t.entries[t.ordering[k]].cell.language];
  Rational best(0);
  std::set<std::pair<SetExpr, std::size_t>> seen;
  std::function<void(const SetExpr&, std::size_t)> go = [&](const SetExpr& inter, std::size_t next) {
    if (!seen.emplace(inter, next).second) return;
    if (inter.is_finite()) {
      best = std::max(best, Rational(static_cast<std::int64_t>(cardinality(inter).count())));
    } else {
      std::uint64_t largest = 0;
      for (std::size_t g = 0; g < p.size(); ++g) {
        auto part = cardinality(intersect(p.group(g), inter));
        if (part.is_finite()) largest = std::max(largest, part.count());
      }
      best = std::max(best, Rational(static_cast<std::int64_t>(p.size() * largest)) / alpha);
    }
    for (std::size_t q = next; q < prefix.size(); ++q) go(intersect(inter, prefix[q]), q + 1);
  };
  go(own, 0);
  return best;
}

struct SorterChecks {
  Tally argmax{"argmax-maintained"};
  Tally monotone{"ordering-monotone"};
  Tally structure{"witness-structure"};
  Tally bound;
  std::uint64_t iterations = 0;

  void run(const Sorter& s, const Collection& c, const RunConfig& cfg) {
    ++iterations;
    const auto& t = s.table();
    const auto pos = sorted_positions(t);
    for (std::size_t k = 0; k < t.ordering.size(); ++k) {
      const auto& e = t.entries[t.ordering[k]];
      const auto where = " after iteration " + std::to_string(iterations) + " at " + cell_name(e.cell);
      auto ev = s.evaluate_at(k);
      if (ev.m != e.m_star)
        argmax.fail("recomputed m " + std::to_string(ev.m) + " != stored " + std::to_string(e.m_star) + where);
      if (k > 0 && t.entries[t.ordering[k - 1]].m_star > e.m_star) monotone.fail("m* decreases" + where);
      if (!e.witness.empty()) {
        const auto self = t.ordering[k];
        bool has_self = std::binary_search(e.witness.begin(), e.witness.end(), self);
        bool has_other = false;
        for (auto w : e.witness) {
          if (w == self) continue;
          has_other = true;
          if (pos[w] >= k) structure.fail("witness member " + cell_name(t.entries[w].cell) + " not earlier" + where);
          else if (t.entries[w].m_star >= e.m_star)
            structure.fail("witness member " + cell_name(t.entries[w].cell) + " has m* " +
                           std::to_string(t.entries[w].m_star) + " >= " + std::to_string(e.m_star) + where);
        }
        // A representative witness may be the candidate alone: one language
        // can already hold a scarcity-suffering set.
        bool solitary_ok = cfg.setting == Setting::Representative;
        if (!has_self || (!has_other && !solitary_ok))
          structure.fail("witness lacks the candidate or an earlier member" + where);
      }
      if (cfg.setting == Setting::Noisy) {
        std::uint64_t a_star = 0;
        for (std::size_t q = 0; q <= k; ++q) a_star = std::max<std::uint64_t>(a_star, t.entries[t.ordering[q]].cell.noise);
        auto limit = closure_with(c, t, k) + (k + 1) * a_star;
        if (e.m_star > limit)
          bound.fail("|T| " + std::to_string(e.m_star) + " > d* + l a* = " + std::to_string(limit) + where);
      }
    }
  }

  void finish(const Sorter& s, const Collection& c, const RunConfig& cfg) {
    if (cfg.setting != Setting::Representative) return;
    const auto& t = s.table();
    for (std::size_t k = 0; k < t.ordering.size(); ++k) {
      const auto& e = t.entries[t.ordering[k]];
      auto limit = representative_bound(c, t, k, *cfg.groups, cfg.alpha);
      if (Rational(static_cast<std::int64_t>(e.m_star)) > limit)
        bound.fail("|T| " + std::to_string(e.m_star) + " > K p / alpha = " + to_string(limit) + " at " +
                   cell_name(e.cell));
    }
  }

  bool all_passed() const { return argmax.passed && monotone.passed && structure.passed && bound.passed; }
};

std::unique_ptr<Sorter> make_sorter(const Collection& c, const RunConfig& cfg, ProcedureOptions o) {
  switch (cfg.setting) {
    case Setting::Plain: return std::make_unique<PlainSorter>(c, std::move(o));
    case Setting::Noisy: return std::make_unique<NoisySorter>(c, std::move(o));
    case Setting::Representative:
      return std::make_unique<RepresentativeSorter>(c, require_groups(cfg), cfg.alpha, std::move(o));
  }
  throw Error(ErrorCode::Configuration, "unknown setting");
}

std::uint64_t sorter_limit(const Collection& c, const RunConfig& cfg) {
  return cfg.setting == Setting::Noisy ? noisy_limit(c.size(), cfg.levels) : c.size();
}

SorterChecks run_checks(const Collection& c, const RunConfig& cfg, BreakRule rule, ComplexityTable* table_out) {
  SorterChecks checks;
  checks.bound.name = cfg.setting == Setting::Noisy ? "noisy-witness-bound" : "representative-witness-bound";
  ProcedureOptions o;
  o.break_rule = rule;
  o.after_iteration = [&](const Sorter& s) { checks.run(s, c, cfg); };
  auto sorter = make_sorter(c, cfg, std::move(o));
  sorter->extend_to(sorter_limit(c, cfg));
  checks.finish(*sorter, c, cfg);
  if (table_out) *table_out = sorter->table();
  return checks;
}

}  // namespace

std::vector<InvariantResult> verify(const Collection& c, const RunConfig& cfg) {
  std::vector<InvariantResult> out;
  ComplexityTable table;
  auto checks = run_checks(c, cfg, BreakRule::Strict, &table);
  out.push_back(checks.argmax.result());
  out.push_back(checks.monotone.result());
  out.push_back(checks.structure.result());
  if (cfg.setting != Setting::Plain) out.push_back(checks.bound.result());

  if (cfg.setting == Setting::Plain) {
    Tally eq{"oracle-equivalence"};
    const auto n = std::min(c.size(), std::size_t{10});
    for (std::size_t p = 1; p <= n; ++p)
      if (!(oracle::oracle_mstar(c, p) == procedure1(c, p))) eq.fail("prefix " + std::to_string(p) + " differs");
    out.push_back(eq.result());

    Tally dom{"baseline-dominance"};
    auto cmp = compare(c);
    for (const auto& v : cmp.verdicts)
      if (v.b == "pareto" && v.verdict == oracle::Dominance::Dominates) dom.fail(v.a + " dominates m*+1");
    if (cmp.orderings_dominating_pareto)
      dom.fail(std::to_string(cmp.orderings_dominating_pareto) + " reordered CP sequences dominate m*+1");
    out.push_back(dom.result());
  }

  // Generation times under the sufficient schedule, for every target and
  // noise level, against the canonical enumeration and the witness attack.
  Tally valid{"generation-times"};
  RunConfig sim = cfg;
  sim.schedule = ScheduleKind::Sufficient;
  sim.horizon = 0;
  auto history = make_history(c, sim);
  for (std::uint32_t level = 0; level <= (cfg.setting == Setting::Noisy ? cfg.levels : 0); ++level) {
    sim.noise = level;
    for (auto attack : {AttackKind::Canonical, AttackKind::IntersectionFirst}) {
      sim.attack = attack;
      sim.target.reset();
      for (const auto& r : simulate_with(c, sim, history)) {
        if (r.passed) continue;
        valid.fail(r.adversary + " on " + cell_name({r.target, r.noise}) + ": firstStable " +
                   std::to_string(r.first_stable) + " vs bound " + std::to_string(r.bound) +
                   (r.representation_ok ? "" : ", representation violated"));
      }
    }
  }
  out.push_back(valid.result());

  // The verifier must notice a procedure whose break rule is weakened to >=.
  Tally mutant{"mutant-self-test"};
  ComplexityTable mutated;
  auto m = run_checks(c, cfg, BreakRule::NonStrict, &mutated);
  // Tie-breaking alone may reorder equal m* values; only a changed m* is a
  // defect the suite has to catch.
  auto by_cell = [](const ComplexityTable& t) {
    std::map<Cell, std::uint64_t> out;
    for (const auto& e : t.entries) out.emplace(e.cell, e.m_star);
    return out;
  };
  if (by_cell(mutated) == by_cell(table)) {
    mutant.detail = "mutant agrees on every m*; nothing to detect";
  } else {
    std::string caught;
    for (const auto* t : {&m.argmax, &m.monotone, &m.structure, &m.bound})
      if (!t->passed) caught += (caught.empty() ? "" : ", ") + t->name;
    if (cfg.setting == Setting::Plain && c.size() <= 10 &&
        oracle::oracle_mstar(c, c.size()).m_star_values() != mutated.m_star_values())
      caught += (caught.empty() ? "" : ", ") + std::string("oracle-equivalence");
    if (caught.empty()) mutant.fail("mutant table differs but every check passed");
    else mutant.detail = "mutant caught by " + caught;
  }
  out.push_back(mutant.result());
  return out;
}

Report run_command(Command cmd, const Collection& c, const RunConfig& cfg) {
  Report r;
  r.table = complexity_table(c, cfg);
  switch (cmd) {
    case Command::Complexity:
      break;
    case Command::Simulate:
      r.sims = simulate(c, cfg);
      break;
    case Command::Compare: {
      auto cmp = compare(c);
      r.sequences = std::move(cmp.sequences);
      r.verdicts = std::move(cmp.verdicts);
      InvariantResult undominated{"pareto-undominated", cmp.orderings_dominating_pareto == 0, ""};
      for (const auto& v : r.verdicts)
        if ((v.b == "pareto" && v.verdict == oracle::Dominance::Dominates) ||
            (v.a == "pareto" && v.verdict == oracle::Dominance::DominatedBy)) {
          undominated.passed = false;
          undominated.detail += v.a + " vs " + v.b + "; ";
        }
      undominated.detail += std::to_string(cmp.orderings) + " orderings swept, " +
                            std::to_string(cmp.orderings_dominating_default) + " dominate cp-default, " +
                            std::to_string(cmp.orderings_dominating_pareto) + " dominate pareto";
      r.invariants.push_back(std::move(undominated));
      break;
    }
    case Command::Verify:
      r.invariants = verify(c, cfg);
      break;
  }
  return r;
}

}  // namespace genlimit
