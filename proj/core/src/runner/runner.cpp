#include "schrolab/runner/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "schrolab/dyadic/counterexample.hpp"
#include "schrolab/error.hpp"
#include "schrolab/experiments/convergence.hpp"
#include "schrolab/experiments/tails.hpp"
#include "schrolab/norms/norms.hpp"
#include "schrolab/spectral/transform.hpp"

namespace schrolab::runner {

namespace fs = std::filesystem;
using spectral::GridFunction;

std::string_view tool_version() noexcept { return SCHROLAB_VERSION; }

std::string provenance_hash(const Json& config) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

Json num(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json vec_json(const Vec& v, int dim) {
  Json a = Json::array();
  for (int i = 0; i < dim; ++i) a.push_back(v[i]);
  return a;
}

Json lattice_json(const LatticePoint& p, int dim) {
  Json a = Json::array();
  for (int i = 0; i < dim; ++i) a.push_back(p[i]);
  return a;
}

GridFunction load_datum(const ExperimentConfig& cfg) {
  if (const auto* sig = std::get_if<spectral::AnalyticSignal>(&*cfg.datum)) {
    const spectral::SpectralGrid grid(cfg.grid->dim, cfg.grid->extent, cfg.grid->n);
    return spectral::materialize(*sig, grid);
  }
  GridFunction f = spectral::read_grid_function(std::get<fs::path>(*cfg.datum));
  if (cfg.grid) {
    const spectral::SpectralGrid grid(cfg.grid->dim, cfg.grid->extent, cfg.grid->n);
    if (!(grid == f.grid())) throw ValidationError("grid: does not match the grid stored with the datum file");
  } else if (f.grid().dim() != 1) {
    throw ValidationError("grid: required for multi-dimensional datum files");
  }
  return f;
}

double l2_norm(const GridFunction& f) { return norms::lebesgue_norm(spectral::to_physical(f), 2.0); }

double max_abs(const GridFunction& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i]));
  return m;
}

std::string sample_stem(const ExperimentConfig& cfg, const std::string& tag) {
  return (cfg.output_dir / (cfg.output_stem + "_" + tag)).string();
}

bool is_unit_gaussian_1d(const ExperimentConfig& cfg) {
  if (!cfg.grid || cfg.grid->dim != 1) return false;
  const auto* sig = std::get_if<spectral::AnalyticSignal>(&*cfg.datum);
  if (!sig) return false;
  const auto* g = std::get_if<spectral::Gaussian>(sig);
  return g && g->width == 1.0 && g->center[0] == 0.0 && g->modulation[0] == 0.0;
}

Json run_propagate(const ExperimentConfig& cfg, const PropagateParams& p) {
  const GridFunction f = load_datum(cfg);
  const bool oracle = is_unit_gaussian_1d(cfg);
  Json per_t = Json::array();
  for (std::size_t i = 0; i < p.times.size(); ++i) {
    const double t = p.times[i];
    const GridFunction u = spectral::propagate(f, t);
    Json row;
    row["t"] = t;
    row["l2_norm"] = l2_norm(u);
    row["max_abs"] = max_abs(u);
    if (oracle) {
      const auto& grid = u.grid();
      double num_sq = 0.0, den_sq = 0.0;
      for (std::size_t j = 0; j < u.size(); ++j) {
        const Complex exact = spectral::periodized_gaussian_evolution(grid.position(j)[0], t, grid.extent());
        num_sq += std::norm(u[j] - exact);
        den_sq += std::norm(exact);
      }
      row["oracle_rel_l2_error"] = std::sqrt(num_sq / den_sq);
    } else {
      row["oracle_rel_l2_error"] = nullptr;
    }
    if (p.save_samples) {
      const std::string stem = sample_stem(cfg, "t" + std::to_string(i));
      spectral::write_grid_function(stem, u, p.sample_format);
      row["sample"] = fs::path(stem).filename().string();
    }
    per_t.push_back(std::move(row));
  }
  return Json{{"per_t", per_t}};
}

Json run_norms(const ExperimentConfig& cfg, const NormsParams& p) {
  const GridFunction f = load_datum(cfg);
  const GridFunction f_phys = spectral::to_physical(f);
  Json rows = Json::array();
  auto row = [&](const char* kind, Json s, Json r, Json q, Json pp, Json region, double value) {
    Json j;
    j["function_id"] = p.function_id;
    j["norm_kind"] = kind;
    j["s"] = std::move(s);
    j["r"] = std::move(r);
    j["q"] = std::move(q);
    j["p"] = std::move(pp);
    j["region"] = std::move(region);
    j["value"] = num(value);
    rows.push_back(std::move(j));
  };
  for (const auto& spec : p.fourier_lebesgue)
    row("fourier_lebesgue", spec.s(), spec.r(), nullptr, nullptr, nullptr, norms::fourier_lebesgue_norm(f, spec));
  for (const auto& req : p.lebesgue) {
    norms::validate_region(req.region, f.grid());
    row("lebesgue", nullptr, nullptr, nullptr, num(req.p), norms::describe(req.region),
        norms::lebesgue_norm(f_phys, req.p, req.region));
  }
  for (const auto& spec : p.mixed) {
    norms::validate_region(spec.region(), f.grid());
    const double value = std::isinf(spec.p_time())
                             ? norms::mixed_norm(norms::maximal_function(f, *p.times, spec.region()), spec)
                             : norms::mixed_norm(norms::evolve(f, *p.times), spec);
    row("mixed", nullptr, nullptr, num(spec.q_space()), num(spec.p_time()), norms::describe(spec.region()), value);
  }
  return Json{{"rows", rows}};
}

Json run_maximal_ratio(const ExperimentConfig& cfg, const MaximalRatioParams& p) {
  const GridFunction f = load_datum(cfg);
  norms::validate_region(p.lhs.region(), f.grid());
  const double numerator = std::isinf(p.lhs.p_time())
                               ? norms::mixed_norm(norms::maximal_function(f, p.times, p.lhs.region()), p.lhs)
                               : norms::mixed_norm(norms::evolve(f, p.times), p.lhs);
  const double denominator = norms::fourier_lebesgue_norm(f, p.rhs);
  if (denominator == 0.0) throw DegenerateInputError("maximal ratio: the datum has zero Fourier-Lebesgue norm");
  Json out;
  out["q"] = num(p.lhs.q_space());
  out["p"] = num(p.lhs.p_time());
  out["region"] = norms::describe(p.lhs.region());
  out["s"] = p.rhs.s();
  out["r"] = p.rhs.r();
  out["numerator"] = numerator;
  out["denominator"] = denominator;
  out["ratio"] = numerator / denominator;
  return out;
}

Json run_counterexample(const ExperimentConfig&, const CounterexampleParams& p) {
  const auto sweep = dyadic::counterexample_sweep(p.ks, p.s, p.p, p.delta, p.quadrature);
  Json rows = Json::array(), plot = Json::array();
  for (const auto& r : sweep.rows) {
    rows.push_back(Json{{"k", r.k},
                        {"s", r.s},
                        {"p", r.p},
                        {"delta", r.delta},
                        {"norm", r.norm},
                        {"growth_value", r.growth_value},
                        {"oracle_value", p.quadrature ? Json(r.oracle_value) : Json(nullptr)}});
    plot.push_back(Json{{"k", r.k}, {"log2_growth", std::log2(r.growth_value)}});
  }
  Json fit = nullptr;
  if (sweep.rows.size() >= 4)
    fit = Json{{"slope", sweep.fit.fitted_slope},
               {"intercept", sweep.fit.intercept},
               {"residual", sweep.fit.residual},
               {"expected_slope", sweep.expected_slope}};
  return Json{{"rows", rows}, {"fit", fit}, {"plot", plot}};
}

wiener::RandomizationPlan make_plan(const PlanParams& p, std::uint64_t seed, const GridFunction& f) {
  wiener::RandomizationPlan plan;
  plan.law = p.law;
  plan.seed = seed;
  plan.profile = p.profile;
  plan.active_set = p.active_set ? *p.active_set : wiener::default_active_set(f);
  plan.active_set.dim = f.grid().dim();
  return plan;
}

Json plan_json(const wiener::RandomizationPlan& plan) {
  const int d = plan.active_set.dim;
  return Json{{"law", wiener::to_string(plan.law)},
              {"seed", plan.seed},
              {"profile", wiener::to_string(plan.profile)},
              {"active_set_bounds",
               {{"lo", lattice_json(plan.active_set.lo, d)}, {"hi", lattice_json(plan.active_set.hi, d)}}}};
}

Json run_randomize(const ExperimentConfig& cfg, const RandomizeParams& p) {
  const GridFunction f = load_datum(cfg);
  const auto plan = make_plan(p.plan, cfg.seed, f);
  Json draws = Json::array();
  for (auto d : p.draws) {
    const GridFunction fw = wiener::randomize(f, plan, d);
    Json row{{"draw_index", d}, {"seed", cfg.seed}, {"l2_norm", l2_norm(fw)}, {"max_abs", max_abs(spectral::to_physical(fw))}};
    if (p.save_samples) {
      const std::string stem = sample_stem(cfg, "draw" + std::to_string(d));
      spectral::write_grid_function(stem, spectral::to_physical(fw), p.sample_format);
      row["sample"] = fs::path(stem).filename().string();
    }
    draws.push_back(std::move(row));
  }
  return Json{{"plan", plan_json(plan)}, {"draws", draws}};
}

Json alpha_json(const experiments::AlphaEstimate& a) {
  return Json{{"alpha", a.alpha}, {"p_hat", a.p_hat}, {"stderr", a.standard_error}, {"exceedances", a.exceedances}};
}

Json run_tails(const ExperimentConfig& cfg, const TailsParams& p) {
  const GridFunction f = load_datum(cfg);
  const auto plan = make_plan(p.plan, cfg.seed, f);
  const int dim = f.grid().dim();
  experiments::Probe probe;
  if (p.probe.region_sample) {
    norms::validate_region(p.probe.region, f.grid());
    probe = experiments::region_probe(f.grid(), p.probe.region, p.probe.count);
  } else {
    probe = experiments::point_probe(p.probe.point);
  }

  Json per_t = Json::array(), fits = Json::array();
  for (double t : p.times) {
    const auto est = experiments::tail_probability(f, plan, t, p.alphas, probe, p.num_draws);
    Json pa = Json::array();
    for (const auto& a : est.per_alpha) pa.push_back(alpha_json(a));
    per_t.push_back(Json{{"t", t}, {"median", est.median}, {"per_alpha", pa}});
    fits.push_back(Json{{"t", t},
                        {"valid", est.fit.valid},
                        {"slope", est.fit.slope},
                        {"intercept", est.fit.intercept},
                        {"residual", est.fit.residual},
                        {"points", est.fit.points},
                        {"C", est.fit.fitted_C},
                        {"C1", est.fit.fitted_C1}});
  }
  Json out{{"plan", plan_json(plan)}, {"num_draws", p.num_draws}, {"per_t", per_t}, {"fits", fits}};

  if (p.continuity) {
    const auto& c = *p.continuity;
    const auto rep =
        experiments::stochastic_continuity_report(f, plan, c.times, c.alpha, probe, p.num_draws, c.epsilon, c.spec);
    Json rows = Json::array();
    for (const auto& r : rep.rows)
      rows.push_back(Json{{"t", r.t},
                          {"p_hat", r.p_hat},
                          {"stderr", r.standard_error},
                          {"p6", r.p6},
                          {"p8", r.p8},
                          {"p9", r.p9},
                          {"union_violations", r.union_violations}});
    out["continuity"] = Json{{"alpha", rep.alpha},
                             {"epsilon", rep.epsilon},
                             {"cutoff_radius", rep.cutoff_radius},
                             {"split_norm", rep.split_norm},
                             {"rows", rows},
                             {"monotone_trend", rep.monotone_trend},
                             {"vanishes", rep.vanishes}};
  }
  if (p.uniformity) {
    const auto probs =
        experiments::per_point_probabilities(f, plan, p.uniformity->t, p.uniformity->alpha, probe.points, p.num_draws);
    Json pts = Json::array();
    double lo = 1.0, hi = 0.0, pooled = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      pts.push_back(Json{{"x", vec_json(probe.points[i], dim)}, {"p_hat", probs[i].p_hat}, {"stderr", probs[i].standard_error}});
      lo = std::min(lo, probs[i].p_hat);
      hi = std::max(hi, probs[i].p_hat);
      pooled += probs[i].p_hat;
    }
    pooled /= static_cast<double>(probs.size());
    const double pooled_se = std::sqrt(pooled * (1.0 - pooled) / static_cast<double>(p.num_draws));
    out["uniformity"] = Json{{"t", p.uniformity->t},
                             {"alpha", p.uniformity->alpha},
                             {"points", pts},
                             {"spread", hi - lo},
                             {"pooled_stderr", pooled_se},
                             {"uniform", hi - lo <= 3.0 * pooled_se}};
  }
  return out;
}

Json run_convergence(const ExperimentConfig& cfg, const ConvergenceParams& p) {
  const GridFunction f = load_datum(cfg);
  norms::validate_region(p.region, f.grid());
  Json records = Json::array();
  Json fit = nullptr;
  if (!p.times.empty()) {
    const auto sweep = experiments::convergence_sweep(f, p.times, p.region, p.alphas);
    for (const auto& rec : sweep.records) {
      Json ls = Json::array();
      for (const auto& l : rec.level_sets) ls.push_back(Json{{"alpha", l.alpha}, {"measure", l.measure}});
      records.push_back(Json{{"t", rec.t}, {"sup_error", rec.sup_error}, {"level_sets", ls}});
    }
    if (p.fit_range) {
      const auto lf = experiments::convergence_rate(sweep, p.fit_range->first, p.fit_range->second);
      fit = Json{{"slope", lf.slope}, {"intercept", lf.intercept}, {"residual", lf.residual}};
    }
  }
  return Json{{"region", norms::describe(p.region)}, {"records", records}, {"fit", fit}};
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

ExperimentReport run(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.kind = cfg.kind;
  report.version = std::string(tool_version());
  report.config = cfg.source;
  report.seed = cfg.seed;
  report.provenance = provenance_hash(cfg.source);
  report.stem = cfg.output_stem;

  const bool writes_samples = std::visit(
      overloaded{[](const PropagateParams& p) { return p.save_samples; },
                 [](const RandomizeParams& p) { return p.save_samples; }, [](const auto&) { return false; }},
      cfg.params);
  if (writes_samples) {
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec) throw IoError("cannot create output directory " + cfg.output_dir.string() + ": " + ec.message());
  }

  report.results = std::visit(overloaded{[&](const PropagateParams& p) { return run_propagate(cfg, p); },
                                         [&](const NormsParams& p) { return run_norms(cfg, p); },
                                         [&](const MaximalRatioParams& p) { return run_maximal_ratio(cfg, p); },
                                         [&](const CounterexampleParams& p) { return run_counterexample(cfg, p); },
                                         [&](const RandomizeParams& p) { return run_randomize(cfg, p); },
                                         [&](const TailsParams& p) { return run_tails(cfg, p); },
                                         [&](const ConvergenceParams& p) { return run_convergence(cfg, p); }},
                              cfg.params);
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Json to_json(const ExperimentReport& report) {
  return Json{{"tool", "schrolab"},
              {"version", report.version},
              {"kind", report.kind},
              {"config", report.config},
              {"seed", report.seed},
              {"provenance", report.provenance},
              {"wall_clock_seconds", report.wall_clock_seconds},
              {"results", report.results}};
}

namespace {

std::vector<Json> pick(const Json& obj, const std::vector<std::string>& cols) {
  std::vector<Json> row;
  for (const auto& c : cols) row.push_back(obj.contains(c) ? obj.at(c) : Json(nullptr));
  return row;
}

Table table_of(std::string suffix, std::vector<std::string> cols, const Json& items) {
  Table t{std::move(suffix), std::move(cols), {}};
  for (const auto& it : items) t.rows.push_back(pick(it, t.columns));
  return t;
}

}  // namespace

std::vector<Table> tables(const ExperimentReport& report) {
  const Json& r = report.results;
  const std::string& k = report.kind;
  if (k == "propagate") return {table_of("", {"t", "l2_norm", "max_abs", "oracle_rel_l2_error"}, r.at("per_t"))};
  if (k == "norms")
    return {table_of("", {"function_id", "norm_kind", "s", "r", "q", "p", "region", "value"}, r.at("rows"))};
  if (k == "maximal_ratio")
    return {table_of("", {"q", "p", "region", "s", "r", "numerator", "denominator", "ratio"}, Json::array({r}))};
  if (k == "counterexample")
    return {table_of("", {"k", "s", "p", "delta", "norm", "growth_value", "oracle_value"}, r.at("rows")),
            table_of("_plot", {"k", "log2_growth"}, r.at("plot"))};
  if (k == "randomize") return {table_of("", {"draw_index", "seed", "l2_norm", "max_abs"}, r.at("draws"))};
  if (k == "tails") {
    Table main{"", {"t", "alpha", "p_hat", "stderr"}, {}};
    for (const auto& pt : r.at("per_t"))
      for (const auto& a : pt.at("per_alpha")) main.rows.push_back({pt.at("t"), a.at("alpha"), a.at("p_hat"), a.at("stderr")});
    std::vector<Table> out{std::move(main)};
    if (r.contains("continuity"))
      out.push_back(table_of("_continuity", {"t", "p_hat", "stderr", "p6", "p8", "p9", "union_violations"},
                             r.at("continuity").at("rows")));
    return out;
  }
  if (k == "convergence") {
    Table main{"", {"t", "sup_error", "alpha", "measure"}, {}};
    for (const auto& rec : r.at("records"))
      for (const auto& l : rec.at("level_sets"))
        main.rows.push_back({rec.at("t"), rec.at("sup_error"), l.at("alpha"), l.at("measure")});
    return {std::move(main)};
  }
  throw ValidationError("no CSV schema for kind '" + k + "'");
}

std::string format_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      const Json& c = row[i];
      if (c.is_null()) continue;
      if (c.is_string()) {
        const auto s = c.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) {
          out += s;
        } else {
          out += '"';
          for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          out += '"';
        }
      } else {
        out += c.dump();
      }
    }
    out += '\n';
  }
  return out;
}

Format format_from_string(std::string_view s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw ValidationError("format: expected json or csv, got '" + std::string(s) + "'");
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

std::vector<fs::path> emit(const ExperimentReport& report, Format format, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
  std::vector<fs::path> written;
  auto put = [&](const std::string& name, const std::string& content) {
    const fs::path path = dir / name;
    write_file(path, content);
    written.push_back(path);
  };
  if (format == Format::json) {
    put(report.stem + ".json", to_json(report).dump(2) + "\n");
    return written;
  }
  for (const auto& t : tables(report)) put(report.stem + t.suffix + ".csv", format_csv(t));
  if (report.kind == "counterexample" && !report.results.at("fit").is_null())
    put(report.stem + "_fit.json", report.results.at("fit").dump(2) + "\n");
  if (report.kind == "randomize" || report.kind == "tails")
    put(report.stem + "_plan.json", report.results.at("plan").dump(2) + "\n");
  return written;
}

}  // namespace schrolab::runner
