#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "schrolab/runner/config.hpp"

namespace schrolab::runner {

std::string_view tool_version() noexcept;

struct ExperimentReport {
  std::string kind;
  std::string version;
  Json config;  ///< validated config echo (seed included)
  std::uint64_t seed = 0;
  std::string provenance;  ///< FNV-1a 64 of the canonical config dump, hex
  double wall_clock_seconds = 0.0;
  Json results;  ///< kind-specific payload, deterministic
  std::string stem;
};

/// FNV-1a 64-bit hash of `config.dump()`, as 16 hex digits.
std::string provenance_hash(const Json& config);

/// Dispatches to the experiment pipeline. Sample files requested by the
/// config are written under cfg.output_dir; the report itself is not.
ExperimentReport run(const ExperimentConfig& cfg);

Json to_json(const ExperimentReport& report);

/// Flat view of a report for CSV emission. Cells hold numbers, strings or
/// null (written as an empty field).
struct Table {
  std::string suffix;  ///< appended to the stem: "" for the main table
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

/// Stable CSV schemas:
///   propagate       t,l2_norm,max_abs,oracle_rel_l2_error
///   norms           function_id,norm_kind,s,r,q,p,region,value
///   maximal_ratio   q,p,region,s,r,numerator,denominator,ratio
///   counterexample  k,s,p,delta,norm,growth_value,oracle_value
///                   (+ _plot: k,log2_growth)
///   randomize       draw_index,seed,l2_norm,max_abs
///   tails           t,alpha,p_hat,stderr
///                   (+ _continuity: t,p_hat,stderr,p6,p8,p9,union_violations)
///   convergence     t,sup_error,alpha,measure
std::vector<Table> tables(const ExperimentReport& report);

std::string format_csv(const Table& table);

enum class Format { json, csv };
Format format_from_string(std::string_view s);

/// Writes <dir>/<stem>.json, or the CSV tables <dir>/<stem><suffix>.csv.
/// CSV mode also writes the JSON side files: <stem>_fit.json for
/// counterexample, <stem>_plan.json for randomize and tails.
/// Throws IoError when a file cannot be written. Returns the written paths.
std::vector<std::filesystem::path> emit(const ExperimentReport& report, Format format,
                                        const std::filesystem::path& dir);

}  // namespace schrolab::runner
