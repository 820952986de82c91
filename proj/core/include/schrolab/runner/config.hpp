#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "schrolab/norms/specs.hpp"
#include "schrolab/spectral/analytic.hpp"
#include "schrolab/spectral/io.hpp"
#include "schrolab/wiener/randomizer.hpp"

namespace schrolab::runner {

using Json = nlohmann::ordered_json;

struct GridParams {
  int dim = 1;
  double extent = 0.0;
  std::size_t n = 0;
};

/// Either a closed-form signal or a function previously written with
/// write_grid_function (path of its JSON header).
using DatumParams = std::variant<spectral::AnalyticSignal, std::filesystem::path>;

struct PropagateParams {
  std::vector<double> times;
  bool save_samples = false;
  spectral::SampleFormat sample_format = spectral::SampleFormat::csv;
};

struct LebesgueRequest {
  double p = 2.0;
  norms::Region region;
};

struct NormsParams {
  std::string function_id = "f";
  std::vector<norms::NormSpec> fourier_lebesgue;
  std::vector<LebesgueRequest> lebesgue;
  std::vector<norms::MixedNormSpec> mixed;
  std::optional<norms::TimeGrid> times;  ///< required when `mixed` is nonempty
};

struct MaximalRatioParams {
  norms::MixedNormSpec lhs;
  norms::NormSpec rhs;
  norms::TimeGrid times;
};

struct CounterexampleParams {
  std::vector<int> ks;
  double s = 0.0;
  double p = 4.0;
  double delta = 0.5;
  bool quadrature = true;
};

struct PlanParams {
  wiener::Law law = wiener::Law::gaussian;
  wiener::ProfileKind profile = wiener::ProfileKind::raised_cosine;
  std::optional<wiener::ActiveSet> active_set;  ///< default_active_set(f) when absent
};

struct RandomizeParams {
  PlanParams plan;
  std::vector<std::uint64_t> draws;
  bool save_samples = false;
  spectral::SampleFormat sample_format = spectral::SampleFormat::csv;
};

struct ProbeParams {
  bool region_sample = true;
  norms::Region region;  ///< region_sample
  std::size_t count = 16;
  Vec point{0.0, 0.0, 0.0};  ///< single point otherwise
};

struct ContinuityParams {
  double alpha = 0.0;
  double epsilon = 0.0;
  norms::NormSpec spec{0.0, 2.0};
  std::vector<double> times;
};

struct UniformityParams {
  double t = 0.0;
  double alpha = 0.0;
};

struct TailsParams {
  PlanParams plan;
  std::vector<double> times;
  std::optional<std::vector<double>> alphas;  ///< absent: default grid per t
  ProbeParams probe;
  std::size_t num_draws = 10000;
  std::optional<ContinuityParams> continuity;
  std::optional<UniformityParams> uniformity;
};

struct ConvergenceParams {
  std::vector<double> times;
  norms::Region region;
  std::vector<double> alphas{1e-6, 1e-4, 1e-2};
  std::optional<std::pair<double, double>> fit_range;
};

using KindParams = std::variant<PropagateParams, NormsParams, MaximalRatioParams, CounterexampleParams,
                                RandomizeParams, TailsParams, ConvergenceParams>;

inline constexpr std::string_view kKinds[] = {"propagate", "norms",       "maximal_ratio", "counterexample",
                                              "randomize", "tails",       "convergence"};

struct ExperimentConfig {
  std::string kind;
  std::uint64_t seed = 0;
  std::optional<GridParams> grid;
  std::optional<DatumParams> datum;
  KindParams params;
  std::string output_stem;
  std::filesystem::path output_dir = ".";
  Json source;  ///< the validated document, echoed into reports
};

/// Validates a config document. Unknown keys, wrong types and parameters
/// violating a module precondition raise ValidationError naming the key.
/// `expected_kind`, when given, must agree with the document's "kind"
/// (which it supplies when absent). `seed_override` replaces "seed".
ExperimentConfig parse_config(Json doc, std::optional<std::string_view> expected_kind = std::nullopt,
                              std::optional<std::uint64_t> seed_override = std::nullopt);

/// Reads and parses a config file. IoError if unreadable, ValidationError
/// if it is not JSON.
Json load_config_file(const std::filesystem::path& path);

}  // namespace schrolab::runner
