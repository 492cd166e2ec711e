// Pipeline orchestration: dependency-ordered task execution over one weight
// vector, deterministic JSON reports with truncation-stability certificates,
// and a concurrent batch driver with per-item isolation.
//
// Reports are built exclusively from exact data in canonical order, so two
// runs of the same configuration produce byte-identical documents except for
// the optional timing field.
#pragma once

#include "gsc/tilting.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace gsc {

using Json = nlohmann::ordered_json;

// Process exit codes shared by the library and the command-line front end.
inline constexpr int kExitPass = 0;
inline constexpr int kExitValidation = 2;  // input rejected by a hypothesis check
inline constexpr int kExitInstability = 3; // truncation window too small / unstable
inline constexpr int kExitInternal = 4;    // broken invariant: always a bug

struct PipelineConfig {
  std::vector<int> weights;                     // torus weights chi_1..chi_n
  std::vector<int> finite_orders;               // optional finite factors m_j >= 2
  std::vector<std::vector<int>> finite_weights; // one row of n residues per factor
  int truncation = 0;                           // 0 = default 3n, floored at n+2
  WindowConvention window = WindowConvention::OpenLowClosedHigh;
  std::vector<std::string> tasks;               // subset of the task names; empty = all
  bool include_timing = true;                   // emit the timing field
};

// The recognized task names in canonical (dependency-respecting) execution
// order. Requesting a task pulls in everything it depends on.
const std::vector<std::string>& pipeline_task_names();

// Runs the requested tasks in dependency order, recording one result object
// per task; failures are caught per task and never abort the remaining ones.
// The report carries "status" ("pass"/"fail") and "exit_code" (0 iff every
// requested task passed, else the most severe failure's code).
Json run_pipeline(const PipelineConfig& config);

int report_exit_code(const Json& report);

// Independent pipelines, run concurrently on up to `workers` threads; the
// result vector preserves input order and one item's failure never disturbs
// another (per-item isolation down to caught exceptions).
std::vector<Json> run_batch(const std::vector<PipelineConfig>& items, int workers);

// One summary row per report, in input order, plus aggregate counts.
Json batch_summary(const std::vector<Json>& reports);

// ---- configuration parsing shared by the CLI and the tests ----------------

// "1,1,-1,-1" -> {1, 1, -1, -1}; throws ValidationError on malformed input.
std::vector<int> parse_weight_csv(const std::string& text);

// "m:c1,c2,...,cn" appends one finite factor of order m with the given
// residues to the configuration.
void parse_finite_spec(const std::string& text, PipelineConfig& config);

// One batch line: leading weight CSV, then optional whitespace-separated
// overrides `truncation=D`, `finite=m:c1,...`, `tasks=a,b,c`.
PipelineConfig parse_batch_line(const std::string& line);

// Full batch file: one item per line, blank lines and '#' comments skipped.
std::vector<PipelineConfig> parse_batch_file(const std::string& contents);

} // namespace gsc
