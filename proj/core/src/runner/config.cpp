#include "schrolab/runner/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "schrolab/dyadic/counterexample.hpp"
#include "schrolab/error.hpp"

namespace schrolab::runner {

namespace {

// Walks one JSON object, remembering which keys were read so leftovers can be
// reported as unknown.
class Reader {
 public:
  Reader(const Json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) fail("", "expected an object");
  }

  [[noreturn]] void fail(std::string_view key, const std::string& what) const {
    std::string where = path_;
    if (!key.empty()) where += where.empty() ? std::string(key) : "." + std::string(key);
    throw ValidationError((where.empty() ? std::string("config") : where) + ": " + what);
  }

  std::string at(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  bool has(std::string_view key) const { return obj_.contains(std::string(key)); }

  const Json* get(std::string_view key) {
    seen_.insert(std::string(key));
    auto it = obj_.find(std::string(key));
    return it == obj_.end() ? nullptr : &*it;
  }

  const Json& require(std::string_view key) {
    const Json* v = get(key);
    if (!v) fail(key, "missing required key");
    return *v;
  }

  double number_of(std::string_view key, const Json& v) const {
    if (v.is_string() && (v == "inf" || v == "infinity")) return norms::kInfinity;
    if (!v.is_number()) fail(key, "expected a number");
    const double x = v.get<double>();
    if (std::isnan(x)) fail(key, "expected a number");
    return x;
  }
  double number(std::string_view key) { return number_of(key, require(key)); }
  double number(std::string_view key, double fallback) {
    const Json* v = get(key);
    return v ? number_of(key, *v) : fallback;
  }
  double finite(std::string_view key) {
    const double x = number(key);
    if (!std::isfinite(x)) fail(key, "expected a finite number");
    return x;
  }
  double finite(std::string_view key, double fallback) {
    const double x = number(key, fallback);
    if (!std::isfinite(x)) fail(key, "expected a finite number");
    return x;
  }

  long long integer_of(std::string_view key, const Json& v) const {
    if (!v.is_number_integer()) fail(key, "expected an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
      fail(key, "integer out of range");
    return v.get<long long>();
  }
  long long integer(std::string_view key) { return integer_of(key, require(key)); }
  long long integer(std::string_view key, long long fallback) {
    const Json* v = get(key);
    return v ? integer_of(key, *v) : fallback;
  }
  std::size_t count(std::string_view key, std::size_t fallback) {
    const long long n = integer(key, static_cast<long long>(fallback));
    if (n < 0) fail(key, "expected a non-negative integer");
    return static_cast<std::size_t>(n);
  }

  std::uint64_t unsigned64(std::string_view key, const Json& v) const {
    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<long long>() < 0))
      fail(key, "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  bool boolean(std::string_view key, bool fallback) {
    const Json* v = get(key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(key, "expected true or false");
    return v->get<bool>();
  }

  std::string string(std::string_view key) {
    const Json& v = require(key);
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
  }
  std::string string(std::string_view key, const std::string& fallback) {
    return has(key) ? string(key) : (get(key), fallback);
  }

  const Json& array(std::string_view key) {
    const Json& v = require(key);
    if (!v.is_array()) fail(key, "expected an array");
    return v;
  }

  std::vector<double> numbers(std::string_view key) {
    std::vector<double> out;
    for (const auto& e : array(key)) out.push_back(number_of(key, e));
    return out;
  }
  std::vector<double> numbers(std::string_view key, std::vector<double> fallback) {
    return has(key) ? numbers(key) : (get(key), std::move(fallback));
  }

  Vec vec(std::string_view key, int dim) {
    const Json& v = array(key);
    if (static_cast<int>(v.size()) != dim) fail(key, "expected " + std::to_string(dim) + " components");
    Vec out{0.0, 0.0, 0.0};
    for (int i = 0; i < dim; ++i) {
      out[i] = number_of(key, v[i]);
      if (!std::isfinite(out[i])) fail(key, "expected finite components");
    }
    return out;
  }
  Vec vec(std::string_view key, int dim, Vec fallback) { return has(key) ? vec(key, dim) : (get(key), fallback); }

  LatticePoint lattice(std::string_view key, int dim) {
    const Json& v = array(key);
    if (static_cast<int>(v.size()) != dim) fail(key, "expected " + std::to_string(dim) + " components");
    LatticePoint out{0, 0, 0};
    for (int i = 0; i < dim; ++i) {
      const long long c = integer_of(key, v[i]);
      if (c < -32768 || c > 32767) fail(key, "lattice coordinate out of range");
      out[i] = static_cast<int>(c);
    }
    return out;
  }

  Reader object(std::string_view key) {
    const Json& v = require(key);
    if (!v.is_object()) fail(key, "expected an object");
    return Reader(v, at(key));
  }

  void finish() const {
    for (const auto& [k, v] : obj_.items())
      if (!seen_.count(k)) fail(k, "unknown key");
  }

 private:
  const Json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

// Runs a module constructor, turning its precondition errors into
// ValidationErrors attributed to `where`.
template <class F>
auto checked(const Reader& r, std::string_view where, F&& make) {
  try {
    return make();
  } catch (const SpecError& e) {
    r.fail(where, e.what());
  } catch (const InputError& e) {
    r.fail(where, e.what());
  }
}

GridParams parse_grid(Reader r) {
  GridParams g;
  g.dim = static_cast<int>(r.integer("dim"));
  g.extent = r.finite("L");
  const long long n = r.integer("N");
  if (n < 0) r.fail("N", "expected a positive integer");
  g.n = static_cast<std::size_t>(n);
  r.finish();
  checked(r, "", [&] { return spectral::SpectralGrid(g.dim, g.extent, g.n); });
  return g;
}

norms::Region parse_region(Reader r, int dim) {
  const std::string type = r.string("type");
  norms::Region out;
  if (type == "full") {
    out = norms::FullBox{};
  } else if (type == "ball") {
    norms::Ball b;
    b.center = r.vec("center", dim, Vec{0.0, 0.0, 0.0});
    b.radius = r.finite("radius");
    if (!(b.radius > 0.0)) r.fail("radius", "must be positive");
    out = b;
  } else if (type == "box") {
    norms::Box b;
    b.lo = r.vec("lo", dim);
    b.hi = r.vec("hi", dim);
    for (int i = 0; i < dim; ++i)
      if (!(b.lo[i] <= b.hi[i])) r.fail("lo", "box needs lo <= hi");
    out = b;
  } else {
    r.fail("type", "unknown region type '" + type + "' (full, ball, box)");
  }
  r.finish();
  return out;
}

norms::Region region_or_full(Reader& r, std::string_view key, int dim) {
  if (!r.has(key)) {
    r.get(key);
    return norms::FullBox{};
  }
  return parse_region(r.object(key), dim);
}

norms::TimeGrid parse_time_grid(Reader r) {
  const std::string type = r.string("type");
  auto grid = [&]() -> norms::TimeGrid {
    if (type == "geometric") {
      const double t_max = r.finite("t_max");
      const int decades = static_cast<int>(r.integer("decades", 4));
      const int per_decade = static_cast<int>(r.integer("per_decade", 64));
      const bool zero = r.boolean("include_zero", true);
      return checked(r, "", [&] { return norms::TimeGrid::geometric(t_max, decades, per_decade, zero); });
    }
    if (type == "uniform") {
      const double lo = r.finite("t_min");
      const double hi = r.finite("t_max");
      const std::size_t n = r.count("count", 0);
      return checked(r, "", [&] { return norms::TimeGrid::uniform(lo, hi, n); });
    }
    if (type == "list") {
      auto values = r.numbers("values");
      return checked(r, "values", [&] { return norms::TimeGrid(values); });
    }
    r.fail("type", "unknown time grid type '" + type + "' (geometric, uniform, list)");
  }();
  r.finish();
  return grid;
}

DatumParams parse_datum(Reader r, int dim) {
  const std::string type = r.string("type");
  DatumParams out;
  if (type == "gaussian") {
    spectral::Gaussian g;
    g.center = r.vec("center", dim, g.center);
    g.width = r.finite("width", 1.0);
    if (!(g.width > 0.0)) r.fail("width", "must be positive");
    g.modulation = r.vec("modulation", dim, g.modulation);
    out = spectral::AnalyticSignal{g};
  } else if (type == "plane_wave") {
    out = spectral::AnalyticSignal{spectral::PlaneWave{r.vec("mode", dim)}};
  } else if (type == "dyadic_annulus") {
    spectral::DyadicAnnulus a;
    a.k = static_cast<int>(r.integer("k"));
    if (a.k < 0) r.fail("k", "must be non-negative");
    a.amplitude_exponent = r.finite("amplitude_exponent", 0.0);
    out = spectral::AnalyticSignal{a};
  } else if (type == "file") {
    out = std::filesystem::path(r.string("header"));
  } else {
    r.fail("type", "unknown datum type '" + type + "' (gaussian, plane_wave, dyadic_annulus, file)");
  }
  r.finish();
  return out;
}

norms::NormSpec parse_norm_spec(Reader r) {
  const double s = r.number("s", 0.0);
  const double rr = r.number("r");
  r.finish();
  return checked(r, "", [&] { return norms::NormSpec(s, rr); });
}

norms::MixedNormSpec parse_mixed(Reader r, int dim) {
  const double q = r.number("q");
  const double p = r.number("p");
  auto region = region_or_full(r, "region", dim);
  r.finish();
  return checked(r, "", [&] { return norms::MixedNormSpec(q, p, region); });
}

spectral::SampleFormat parse_sample_format(Reader& r) {
  const std::string f = r.string("sample_format", "csv");
  if (f == "csv") return spectral::SampleFormat::csv;
  if (f == "binary") return spectral::SampleFormat::binary;
  r.fail("sample_format", "expected csv or binary");
}

PlanParams parse_plan(Reader& r, int dim) {
  PlanParams plan;
  checked(r, "law", [&] { return plan.law = wiener::law_from_string(r.string("law", "gaussian")); });
  checked(r, "profile", [&] { return plan.profile = wiener::profile_from_string(r.string("profile", "raised_cosine")); });
  if (r.has("active_set")) {
    Reader a = r.object("active_set");
    wiener::ActiveSet set;
    set.dim = dim;
    set.lo = a.lattice("lo", dim);
    set.hi = a.lattice("hi", dim);
    a.finish();
    for (int i = 0; i < dim; ++i)
      if (set.lo[i] > set.hi[i]) a.fail("lo", "active set needs lo <= hi");
    plan.active_set = set;
  } else {
    r.get("active_set");
  }
  return plan;
}

std::vector<double> strictly_positive(Reader& r, std::string_view key, std::vector<double> v, bool allow_zero) {
  for (double x : v)
    if (!std::isfinite(x) || x < 0.0 || (!allow_zero && x == 0.0))
      r.fail(key, allow_zero ? "entries must be finite and >= 0" : "entries must be finite and > 0");
  return v;
}

std::vector<double> ascending(Reader& r, std::string_view key, std::vector<double> v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) r.fail(key, "entries must be strictly increasing");
  return v;
}

KindParams parse_params(const std::string& kind, Reader r, int dim) {
  KindParams out;
  if (kind == "propagate") {
    PropagateParams p;
    p.times = r.numbers("times");
    for (double t : p.times)
      if (!std::isfinite(t)) r.fail("times", "entries must be finite");
    p.save_samples = r.boolean("save_samples", false);
    p.sample_format = parse_sample_format(r);
    out = p;
  } else if (kind == "norms") {
    NormsParams p;
    p.function_id = r.string("function_id", "f");
    if (r.has("fourier_lebesgue")) {
      std::size_t i = 0;
      for (const auto& e : r.array("fourier_lebesgue"))
        p.fourier_lebesgue.push_back(parse_norm_spec(Reader(e, r.at("fourier_lebesgue") + "[" + std::to_string(i++) + "]")));
    } else {
      r.get("fourier_lebesgue");
    }
    if (r.has("lebesgue")) {
      std::size_t i = 0;
      for (const auto& e : r.array("lebesgue")) {
        Reader l(e, r.at("lebesgue") + "[" + std::to_string(i++) + "]");
        LebesgueRequest req;
        req.p = l.number("p");
        if (!(req.p >= 1.0)) l.fail("p", "Lebesgue exponent must satisfy p >= 1");
        req.region = region_or_full(l, "region", dim);
        l.finish();
        p.lebesgue.push_back(req);
      }
    } else {
      r.get("lebesgue");
    }
    if (r.has("mixed")) {
      std::size_t i = 0;
      for (const auto& e : r.array("mixed"))
        p.mixed.push_back(parse_mixed(Reader(e, r.at("mixed") + "[" + std::to_string(i++) + "]"), dim));
    } else {
      r.get("mixed");
    }
    if (r.has("times"))
      p.times = parse_time_grid(r.object("times"));
    else
      r.get("times");
    if (!p.mixed.empty() && !p.times) r.fail("times", "mixed norms need a time grid");
    out = p;
  } else if (kind == "maximal_ratio") {
    auto lhs = parse_mixed(r.object("lhs"), dim);
    auto rhs = parse_norm_spec(r.object("rhs"));
    auto times = parse_time_grid(r.object("times"));
    out = MaximalRatioParams{lhs, rhs, times};
  } else if (kind == "counterexample") {
    CounterexampleParams p;
    for (const auto& e : r.array("ks")) {
      const long long k = r.integer_of("ks", e);
      if (k < 1 || k > 12) r.fail("ks", "k must lie in [1, 12]");
      p.ks.push_back(static_cast<int>(k));
    }
    p.s = r.finite("s", 0.0);
    p.p = r.finite("p", 4.0);
    p.delta = r.finite("delta", 0.5);
    p.quadrature = r.boolean("quadrature", true);
    checked(r, "", [&] { return dyadic::DyadicDatum(1, p.s, p.p, p.delta); });
    out = p;
  } else if (kind == "randomize") {
    RandomizeParams p;
    p.plan = parse_plan(r, dim);
    for (const auto& e : r.array("draws")) p.draws.push_back(r.unsigned64("draws", e));
    p.save_samples = r.boolean("save_samples", false);
    p.sample_format = parse_sample_format(r);
    out = p;
  } else if (kind == "tails") {
    TailsParams p;
    p.plan = parse_plan(r, dim);
    p.times = strictly_positive(r, "times", r.numbers("times"), true);
    if (p.times.empty()) r.fail("times", "needs at least one time");
    if (r.has("alphas")) {
      p.alphas = ascending(r, "alphas", strictly_positive(r, "alphas", r.numbers("alphas"), false));
      if (p.alphas->empty()) r.fail("alphas", "alpha grid must be nonempty");
    } else {
      r.get("alphas");
    }
    p.num_draws = r.count("num_draws", 10000);
    if (p.num_draws < 1000) r.fail("num_draws", "tail estimates need at least 1000 draws");
    if (r.has("probe")) {
      Reader pr = r.object("probe");
      const std::string type = pr.string("type", "region");
      if (type == "region") {
        p.probe.region_sample = true;
        p.probe.region = region_or_full(pr, "region", dim);
        p.probe.count = pr.count("count", 16);
        if (p.probe.count == 0) pr.fail("count", "must be >= 1");
      } else if (type == "point") {
        p.probe.region_sample = false;
        p.probe.point = pr.vec("point", dim);
      } else {
        pr.fail("type", "expected region or point");
      }
      pr.finish();
    } else {
      r.get("probe");
    }
    if (r.has("continuity")) {
      Reader c = r.object("continuity");
      ContinuityParams cp;
      cp.alpha = c.finite("alpha");
      if (!(cp.alpha > 0.0)) c.fail("alpha", "must be positive");
      cp.epsilon = c.finite("epsilon");
      if (!(cp.epsilon > 0.0)) c.fail("epsilon", "must be positive");
      const double s = c.number("s", 0.0);
      const double rr = c.number("r", 2.0);
      cp.spec = checked(c, "r", [&] { return norms::NormSpec(s, rr); });
      cp.times = c.has("times") ? strictly_positive(c, "times", c.numbers("times"), true) : (c.get("times"), p.times);
      c.finish();
      p.continuity = cp;
    } else {
      r.get("continuity");
    }
    if (r.has("uniformity")) {
      Reader u = r.object("uniformity");
      UniformityParams up;
      up.t = u.finite("t");
      up.alpha = u.finite("alpha");
      if (!(up.alpha > 0.0)) u.fail("alpha", "must be positive");
      u.finish();
      p.uniformity = up;
    } else {
      r.get("uniformity");
    }
    out = p;
  } else if (kind == "convergence") {
    ConvergenceParams p;
    p.times = strictly_positive(r, "times", r.numbers("times"), true);
    p.region = region_or_full(r, "region", dim);
    p.alphas = strictly_positive(r, "alphas", r.numbers("alphas", p.alphas), false);
    if (r.has("fit_range")) {
      auto fr = r.numbers("fit_range");
      if (fr.size() != 2 || !(fr[0] > 0.0) || !(fr[1] > fr[0])) r.fail("fit_range", "expected [t_lo, t_hi] with 0 < t_lo < t_hi");
      p.fit_range = std::make_pair(fr[0], fr[1]);
    } else {
      r.get("fit_range");
    }
    out = p;
  }
  r.finish();
  return out;
}

}  // namespace

ExperimentConfig parse_config(Json doc, std::optional<std::string_view> expected_kind,
                              std::optional<std::uint64_t> seed_override) {
  if (!doc.is_object()) throw ValidationError("config: expected a JSON object");
  if (expected_kind && !doc.contains("kind")) doc["kind"] = std::string(*expected_kind);
  if (seed_override) doc["seed"] = *seed_override;

  Reader r(doc, "");
  ExperimentConfig cfg;
  cfg.kind = r.string("kind");
  if (std::find(std::begin(kKinds), std::end(kKinds), cfg.kind) == std::end(kKinds))
    r.fail("kind", "unknown experiment kind '" + cfg.kind + "'");
  if (expected_kind && cfg.kind != *expected_kind)
    r.fail("kind", "config is for '" + cfg.kind + "' but the '" + std::string(*expected_kind) + "' command was run");
  cfg.seed = r.has("seed") ? r.unsigned64("seed", *r.get("seed")) : (r.get("seed"), 0);

  int dim = 1;
  if (cfg.kind != "counterexample") {
    if (r.has("grid")) {
      cfg.grid = parse_grid(r.object("grid"));
      dim = cfg.grid->dim;
    } else {
      r.get("grid");
    }
    if (r.has("datum") && r.require("datum").is_object() && r.require("datum").value("type", "") == "file") {
      cfg.datum = parse_datum(r.object("datum"), dim);
    } else {
      if (!cfg.grid) r.fail("grid", "missing required key (only file data carry their own grid)");
      cfg.datum = parse_datum(r.object("datum"), dim);
    }
  }

  // File data fix the dimension only once read; their per-kind vectors are
  // validated against the grid given alongside, if any, else 1D.
  cfg.params = parse_params(cfg.kind, r.object("params"), dim);

  if (r.has("output")) {
    Reader o = r.object("output");
    cfg.output_stem = o.string("stem", cfg.kind);
    cfg.output_dir = o.string("dir", ".");
    o.finish();
  } else {
    r.get("output");
    cfg.output_stem = cfg.kind;
  }
  if (cfg.output_stem.empty() || cfg.output_stem.find('/') != std::string::npos)
    r.fail("output.stem", "must be a nonempty file name");
  r.finish();
  cfg.source = std::move(doc);
  return cfg;
}

Json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
}

}  // namespace schrolab::runner
