#ifndef GENLIMIT_H
#define GENLIMIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(GENLIMIT_BUILDING)
#define GENLIMIT_API __attribute__((visibility("default")))
#else
#define GENLIMIT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum genlimit_status {
  GENLIMIT_OK = 0,
  GENLIMIT_E_SCHEMA = 1,
  GENLIMIT_E_FINITE_LANGUAGE = 2,
  GENLIMIT_E_REGISTRY = 3,
  GENLIMIT_E_CAPACITY = 4,
  GENLIMIT_E_PARAMETER = 5,
  GENLIMIT_E_INDEX_RANGE = 6,
  GENLIMIT_E_NO_ATTACK = 7,
  GENLIMIT_E_ADMISSIBILITY = 8,
  GENLIMIT_E_UNBOUNDED_SCHEDULE = 9,
  GENLIMIT_E_IO = 10,
  GENLIMIT_E_CONFIGURATION = 11,
  GENLIMIT_E_INTERNAL = 100
} genlimit_status;

typedef enum genlimit_command {
  GENLIMIT_COMPLEXITY = 0,
  GENLIMIT_SIMULATE = 1,
  GENLIMIT_COMPARE = 2,
  GENLIMIT_VERIFY = 3
} genlimit_command;

typedef enum genlimit_setting { GENLIMIT_PLAIN = 0, GENLIMIT_NOISY = 1, GENLIMIT_REPRESENTATIVE = 2 } genlimit_setting;

typedef enum genlimit_schedule {
  GENLIMIT_SCHEDULE_IDENTITY = 0,
  GENLIMIT_SCHEDULE_POW2 = 1,
  GENLIMIT_SCHEDULE_SUFFICIENT = 2,
  GENLIMIT_SCHEDULE_TABLE = 3
} genlimit_schedule;

typedef enum genlimit_attack {
  GENLIMIT_ATTACK_CANONICAL = 0,
  GENLIMIT_ATTACK_INTERSECTION_FIRST = 1,
  GENLIMIT_ATTACK_REPR = 2
} genlimit_attack;

typedef struct genlimit_collection genlimit_collection;
typedef struct genlimit_config genlimit_config;

/* Message of the last failure on the calling thread; empty after success. */
GENLIMIT_API const char* genlimit_last_error(void);
GENLIMIT_API const char* genlimit_status_name(genlimit_status s);

GENLIMIT_API genlimit_status genlimit_collection_load(const char* path, genlimit_collection** out);
GENLIMIT_API genlimit_status genlimit_collection_parse(const char* json, genlimit_collection** out);
GENLIMIT_API genlimit_status genlimit_collection_random(uint64_t seed, size_t languages, genlimit_collection** out);
GENLIMIT_API size_t genlimit_collection_size(const genlimit_collection* c);
GENLIMIT_API void genlimit_collection_free(genlimit_collection* c);

GENLIMIT_API genlimit_status genlimit_config_new(genlimit_config** out);
GENLIMIT_API void genlimit_config_free(genlimit_config* cfg);
GENLIMIT_API genlimit_status genlimit_config_set_setting(genlimit_config* cfg, genlimit_setting s);
/* Noise levels 0..levels are tabulated and simulated at `levels`. */
GENLIMIT_API genlimit_status genlimit_config_set_levels(genlimit_config* cfg, uint32_t levels);
GENLIMIT_API genlimit_status genlimit_config_set_alpha(genlimit_config* cfg, int64_t num, int64_t den);
/* Read when the command runs, against the collection's atom registry. */
GENLIMIT_API genlimit_status genlimit_config_set_groups_file(genlimit_config* cfg, const char* path);
GENLIMIT_API genlimit_status genlimit_config_set_schedule(genlimit_config* cfg, genlimit_schedule s,
                                                          const uint64_t* table, size_t table_len);
/* 1-based; 0 runs every target. */
GENLIMIT_API genlimit_status genlimit_config_set_target(genlimit_config* cfg, size_t target);
GENLIMIT_API genlimit_status genlimit_config_set_attack(genlimit_config* cfg, genlimit_attack a);
/* 0 picks the horizon automatically. */
GENLIMIT_API genlimit_status genlimit_config_set_horizon(genlimit_config* cfg, size_t horizon);
GENLIMIT_API genlimit_status genlimit_config_set_seed(genlimit_config* cfg, uint64_t seed);

/* Runs a command and hands back the report as a JSON string, to be released
   with genlimit_string_free. `passed` may be NULL. */
GENLIMIT_API genlimit_status genlimit_run(const genlimit_collection* c, const genlimit_config* cfg,
                                          genlimit_command cmd, char** report_json, int* passed);
GENLIMIT_API void genlimit_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
