// Command-line front end. Talks to the library only through genlimit.h.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "genlimit/genlimit.h"

using Json = nlohmann::json;

namespace {

struct Failure {
  genlimit_status status;
};

void check(genlimit_status s) {
  if (s != GENLIMIT_OK) throw Failure{s};
}

struct Options {
  std::string command;
  std::string collection;
  bool noisy = false;
  std::optional<std::uint32_t> levels;
  bool repr = false;
  std::string alpha = "1/2";
  std::string groups;
  std::string schedule = "sufficient";
  std::size_t target = 0;
  std::string attack = "canonical";
  std::size_t horizon = 0;
  bool json = false;
  std::optional<std::uint64_t> seed;
};

std::pair<std::int64_t, std::int64_t> parse_alpha(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return {std::stoll(text), 1};
    return {std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--alpha", "expected P/Q, got " + text);
  }
}

std::vector<std::uint64_t> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--schedule", "cannot open " + path);
  try {
    return Json::parse(in).get<std::vector<std::uint64_t>>();
  } catch (const Json::exception& e) {
    throw CLI::ValidationError("--schedule", path + ": expected a JSON array of positive integers");
  }
}

void print_human(const std::string& command, const Json& r) {
  const auto& table = r["table"];
  if (!table.is_null()) {
    std::cout << "setting " << table["setting"].get<std::string>();
    if (table.contains("alpha")) std::cout << "  alpha " << table["alpha"].get<std::string>();
    std::cout << "\n";
    if (command == "complexity" || command == "verify") {
      std::cout << "  pos  lang  noise  m*    witness\n";
      for (const auto& e : table["entries"]) {
        std::string w;
        for (const auto& x : e["witness"]) w += (w.empty() ? "" : ",") + std::to_string(x.get<std::size_t>());
        std::printf("  %-4zu %-5zu %-6u %-5llu {%s}\n", e["position"].get<std::size_t>(), e["i"].get<std::size_t>(),
                    e["n"].get<unsigned>(), static_cast<unsigned long long>(e["mStar"].get<std::uint64_t>()),
                    w.c_str());
      }
    }
  }
  for (const auto& s : r["simReports"])
    std::printf("sim %s vs %s  target %zu  noise %u  m* %llu  firstStable %llu  bound %llu  %s\n",
                s["generator"].get<std::string>().c_str(), s["adversary"].get<std::string>().c_str(),
                s["target"].get<std::size_t>(), s["noise"].get<unsigned>(),
                static_cast<unsigned long long>(s["mStar"].get<std::uint64_t>()),
                static_cast<unsigned long long>(s["firstStable"].get<std::uint64_t>()),
                static_cast<unsigned long long>(s["bound"].get<std::uint64_t>()), s["passed"].get<bool>() ? "ok" : "FAIL");
  for (const auto& s : r["sequences"]) {
    std::cout << s["name"].get<std::string>() << ":";
    for (const auto& t : s["times"]) std::cout << " " << t.get<std::uint64_t>();
    std::cout << "\n";
  }
  for (const auto& v : r["verdicts"])
    std::cout << v["a"].get<std::string>() << " vs " << v["b"].get<std::string>() << ": "
              << v["verdict"].get<std::string>() << "\n";
  for (const auto& i : r["invariantResults"]) {
    std::cout << (i["passed"].get<bool>() ? "ok   " : "FAIL ") << i["name"].get<std::string>();
    if (!i["detail"].get<std::string>().empty() && i["detail"] != "ok") std::cout << "  " << i["detail"].get<std::string>();
    std::cout << "\n";
  }
  std::cout << (r["passed"].get<bool>() ? "PASSED" : "FAILED") << "\n";
}

int run(const Options& o) {
  static const std::map<std::string, genlimit_command> commands{{"complexity", GENLIMIT_COMPLEXITY},
                                                                 {"simulate", GENLIMIT_SIMULATE},
                                                                 {"compare", GENLIMIT_COMPARE},
                                                                 {"verify", GENLIMIT_VERIFY}};
  static const std::map<std::string, genlimit_attack> attacks{{"canonical", GENLIMIT_ATTACK_CANONICAL},
                                                               {"intersection-first", GENLIMIT_ATTACK_INTERSECTION_FIRST},
                                                               {"repr", GENLIMIT_ATTACK_REPR}};

  genlimit_collection* raw = nullptr;
  if (o.collection == "random") {
    if (!o.seed) throw CLI::ValidationError("collection", "\"random\" needs --seed");
    check(genlimit_collection_random(*o.seed, 6, &raw));
  } else {
    check(genlimit_collection_load(o.collection.c_str(), &raw));
  }
  std::unique_ptr<genlimit_collection, decltype(&genlimit_collection_free)> coll(raw, genlimit_collection_free);

  genlimit_config* rawcfg = nullptr;
  check(genlimit_config_new(&rawcfg));
  std::unique_ptr<genlimit_config, decltype(&genlimit_config_free)> cfg(rawcfg, genlimit_config_free);

  if (o.noisy) {
    check(genlimit_config_set_setting(cfg.get(), GENLIMIT_NOISY));
    check(genlimit_config_set_levels(cfg.get(), o.levels.value_or(0)));
  }
  if (o.repr) {
    check(genlimit_config_set_setting(cfg.get(), GENLIMIT_REPRESENTATIVE));
    auto [p, q] = parse_alpha(o.alpha);
    check(genlimit_config_set_alpha(cfg.get(), p, q));
  }
  if (!o.groups.empty()) check(genlimit_config_set_groups_file(cfg.get(), o.groups.c_str()));

  if (o.schedule.rfind("table:", 0) == 0) {
    auto values = read_table(o.schedule.substr(6));
    check(genlimit_config_set_schedule(cfg.get(), GENLIMIT_SCHEDULE_TABLE, values.data(), values.size()));
  } else {
    static const std::map<std::string, genlimit_schedule> kinds{{"identity", GENLIMIT_SCHEDULE_IDENTITY},
                                                                {"pow2", GENLIMIT_SCHEDULE_POW2},
                                                                {"sufficient", GENLIMIT_SCHEDULE_SUFFICIENT}};
    check(genlimit_config_set_schedule(cfg.get(), kinds.at(o.schedule), nullptr, 0));
  }
  check(genlimit_config_set_target(cfg.get(), o.target));
  check(genlimit_config_set_attack(cfg.get(), attacks.at(o.attack)));
  check(genlimit_config_set_horizon(cfg.get(), o.horizon));
  if (o.seed) check(genlimit_config_set_seed(cfg.get(), *o.seed));

  char* text = nullptr;
  int passed = 0;
  check(genlimit_run(coll.get(), cfg.get(), commands.at(o.command), &text, &passed));
  std::unique_ptr<char, decltype(&genlimit_string_free)> owned(text, genlimit_string_free);
  if (o.json)
    std::cout << Json::parse(text).dump(2) << "\n";
  else
    print_human(o.command, Json::parse(text));
  return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pareto-optimal language generation in the limit"};
  Options o;
  app.add_option("command", o.command, "complexity | simulate | compare | verify")
      ->required()
      ->check(CLI::IsMember({"complexity", "simulate", "compare", "verify"}));
  app.add_option("collection", o.collection, "collection JSON file, or \"random\" with --seed")->required();
  auto* noisy = app.add_flag("--noisy", o.noisy, "noisy setting");
  app.add_option("--levels", o.levels, "noise levels 0..N; simulations run at N")->needs(noisy);
  auto* repr = app.add_flag("--repr", o.repr, "representative setting")->excludes(noisy);
  app.add_option("--alpha", o.alpha, "representation parameter P/Q in (0, 1]")->needs(repr);
  app.add_option("--groups", o.groups, "group partition JSON")->needs(repr);
  app.add_option("--schedule", o.schedule, "identity | pow2 | sufficient | table:<file>")
      ->check([](const std::string& s) {
        if (s == "identity" || s == "pow2" || s == "sufficient" || s.rfind("table:", 0) == 0) return std::string();
        return "unknown schedule " + s;
      });
  app.add_option("--target", o.target, "1-based target language; default all")->check(CLI::PositiveNumber);
  app.add_option("--attack", o.attack, "canonical | intersection-first | repr")
      ->check(CLI::IsMember({"canonical", "intersection-first", "repr"}));
  app.add_option("--horizon", o.horizon, "steps per simulation; default 2*bound+16");
  app.add_flag("--json", o.json, "print the report as JSON");
  app.add_option("--seed", o.seed, "seed for \"random\"; echoed in the report");
  CLI11_PARSE(app, argc, argv);

  try {
    return run(o);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const Failure& f) {
    std::cerr << "genlimit: " << genlimit_status_name(f.status) << ": " << genlimit_last_error() << "\n";
    return 2;
  }
}
