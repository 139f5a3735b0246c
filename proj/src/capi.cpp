#include "genlimit/genlimit.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "genlimit/error.hpp"
#include "genlimit/harness.hpp"
#include "genlimit/json_io.hpp"
#include "genlimit/oracle.hpp"

using namespace genlimit;

struct genlimit_collection {
  Collection c;
};

struct genlimit_config {
  RunConfig run;
  std::optional<std::string> groups_file;
  std::optional<std::uint64_t> seed;
};

namespace {

thread_local std::string last_error;

template <class F>
genlimit_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return GENLIMIT_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<genlimit_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    last_error = e.what();
    return GENLIMIT_E_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return GENLIMIT_E_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::Parameter, std::string(what) + " is null");
}

char* dup(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* genlimit_last_error(void) { return last_error.c_str(); }

const char* genlimit_status_name(genlimit_status s) {
  if (s == GENLIMIT_OK) return "ok";
  if (s == GENLIMIT_E_INTERNAL) return "internal";
  if (s >= GENLIMIT_E_SCHEMA && s <= GENLIMIT_E_CONFIGURATION) return to_string(static_cast<ErrorCode>(s));
  return "unknown";
}

genlimit_status genlimit_collection_load(const char* path, genlimit_collection** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new genlimit_collection{load_collection_file(path)};
  });
}

genlimit_status genlimit_collection_parse(const char* json, genlimit_collection** out) {
  return guard([&] {
    require(json, "json");
    require(out, "out");
    Json doc;
    try {
      doc = Json::parse(json);
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::Schema, e.what());
    }
    *out = new genlimit_collection{load_collection(doc)};
  });
}

genlimit_status genlimit_collection_random(uint64_t seed, size_t languages, genlimit_collection** out) {
  return guard([&] {
    require(out, "out");
    *out = new genlimit_collection{oracle::random_collection(seed, languages)};
  });
}

size_t genlimit_collection_size(const genlimit_collection* c) { return c ? c->c.size() : 0; }

void genlimit_collection_free(genlimit_collection* c) { delete c; }

genlimit_status genlimit_config_new(genlimit_config** out) {
  return guard([&] {
    require(out, "out");
    *out = new genlimit_config{};
  });
}

void genlimit_config_free(genlimit_config* cfg) { delete cfg; }

genlimit_status genlimit_config_set_setting(genlimit_config* cfg, genlimit_setting s) {
  return guard([&] {
    require(cfg, "config");
    if (s < GENLIMIT_PLAIN || s > GENLIMIT_REPRESENTATIVE) throw Error(ErrorCode::Parameter, "unknown setting");
    cfg->run.setting = static_cast<Setting>(s);
  });
}

genlimit_status genlimit_config_set_levels(genlimit_config* cfg, uint32_t levels) {
  return guard([&] {
    require(cfg, "config");
    cfg->run.levels = levels;
  });
}

genlimit_status genlimit_config_set_alpha(genlimit_config* cfg, int64_t num, int64_t den) {
  return guard([&] {
    require(cfg, "config");
    if (den <= 0 || num <= 0 || num > den) throw Error(ErrorCode::Parameter, "alpha must lie in (0, 1]");
    cfg->run.alpha = Rational(num, den);
  });
}

genlimit_status genlimit_config_set_groups_file(genlimit_config* cfg, const char* path) {
  return guard([&] {
    require(cfg, "config");
    require(path, "path");
    cfg->groups_file = path;
  });
}

genlimit_status genlimit_config_set_schedule(genlimit_config* cfg, genlimit_schedule s, const uint64_t* table,
                                             size_t table_len) {
  return guard([&] {
    require(cfg, "config");
    if (s < GENLIMIT_SCHEDULE_IDENTITY || s > GENLIMIT_SCHEDULE_TABLE) throw Error(ErrorCode::Parameter, "unknown schedule");
    std::vector<std::uint64_t> values;
    if (s == GENLIMIT_SCHEDULE_TABLE) {
      if (!table || table_len == 0) throw Error(ErrorCode::Parameter, "table schedule needs values");
      values.assign(table, table + table_len);
    }
    cfg->run.schedule = static_cast<ScheduleKind>(s);
    cfg->run.schedule_table = std::move(values);
  });
}

genlimit_status genlimit_config_set_target(genlimit_config* cfg, size_t target) {
  return guard([&] {
    require(cfg, "config");
    if (target == 0)
      cfg->run.target.reset();
    else
      cfg->run.target = target - 1;
  });
}

genlimit_status genlimit_config_set_attack(genlimit_config* cfg, genlimit_attack a) {
  return guard([&] {
    require(cfg, "config");
    if (a < GENLIMIT_ATTACK_CANONICAL || a > GENLIMIT_ATTACK_REPR) throw Error(ErrorCode::Parameter, "unknown attack");
    cfg->run.attack = static_cast<AttackKind>(a);
  });
}

genlimit_status genlimit_config_set_horizon(genlimit_config* cfg, size_t horizon) {
  return guard([&] {
    require(cfg, "config");
    cfg->run.horizon = horizon;
  });
}

genlimit_status genlimit_config_set_seed(genlimit_config* cfg, uint64_t seed) {
  return guard([&] {
    require(cfg, "config");
    cfg->seed = seed;
  });
}

genlimit_status genlimit_run(const genlimit_collection* c, const genlimit_config* cfg, genlimit_command cmd,
                             char** report_json, int* passed) {
  return guard([&] {
    require(c, "collection");
    require(cfg, "config");
    require(report_json, "report_json");
    if (cmd < GENLIMIT_COMPLEXITY || cmd > GENLIMIT_VERIFY) throw Error(ErrorCode::Parameter, "unknown command");
    auto run = cfg->run;
    if (cfg->groups_file) run.groups = load_groups_file(*cfg->groups_file, c->c.registry());
    auto report = run_command(static_cast<Command>(cmd), c->c, run);
    report.seed = cfg->seed;
    *report_json = dup(report_to_json(report, *c->c.registry()).dump());
    if (passed) *passed = report.passed() ? 1 : 0;
  });
}

void genlimit_string_free(char* s) { std::free(s); }

}  // extern "C"
