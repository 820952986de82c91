#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "schrolab/error.hpp"
#include "schrolab/parallel.hpp"
#include "schrolab/runner/config.hpp"
#include "schrolab/runner/runner.hpp"

using namespace schrolab;
using namespace schrolab::runner;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigDir = SCHROLAB_CONFIG_DIR;

Json gaussian_doc(const std::string& kind, Json params) {
  return Json{{"kind", kind},
              {"grid", {{"dim", 1}, {"L", 40.0}, {"N", 256}}},
              {"datum", {{"type", "gaussian"}, {"width", 1.0}}},
              {"params", std::move(params)}};
}

// Every kind at a size that runs in well under a second.
std::vector<Json> small_docs() {
  std::vector<Json> docs;
  docs.push_back(gaussian_doc("propagate", {{"times", {0.1, 0.5}}}));
  docs.push_back(gaussian_doc(
      "norms", {{"fourier_lebesgue", Json::array({{{"s", 0.5}, {"r", 4.0}}})},
                {"lebesgue", Json::array({{{"p", 4.0}}})},
                {"mixed", Json::array({{{"q", 4.0}, {"p", "inf"}}})},
                {"times", {{"type", "uniform"}, {"t_min", 0.0}, {"t_max", 0.1}, {"count", 8}}}}));
  docs.push_back(gaussian_doc("maximal_ratio", {{"lhs", {{"q", 4.0}, {"p", "inf"}}},
                                                {"rhs", {{"s", 0.25}, {"r", 4.0}}},
                                                {"times", {{"type", "list"}, {"values", {0.0, 0.01, 0.02}}}}}));
  docs.push_back(Json{{"kind", "counterexample"},
                      {"params", {{"ks", {1, 2, 3, 4}}, {"s", 0.0}, {"p", 4.0}, {"delta", 0.5}, {"quadrature", false}}}});
  docs.push_back(gaussian_doc("randomize", {{"law", "rademacher"}, {"draws", {0, 5}}}));
  docs.push_back(gaussian_doc("tails", {{"law", "gaussian"},
                                        {"times", {0.01, 0.005}},
                                        {"num_draws", 1000},
                                        {"probe", {{"region", {{"type", "ball"}, {"radius", 1.0}}}, {"count", 4}}},
                                        {"continuity", {{"alpha", 0.002}, {"epsilon", 1e-3}, {"times", {0.01, 0.0}}}}}));
  docs.push_back(gaussian_doc("convergence", {{"times", {0.01, 0.001, 0.0001}}, {"fit_range", {1e-4, 1e-2}}}));
  for (auto& d : docs) d["seed"] = 11;
  return docs;
}

std::string message_of(const Json& doc) {
  try {
    parse_config(doc);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Config, ShippedConfigsParse) {
  std::size_t seen = 0;
  for (const auto& entry : fs::directory_iterator(kConfigDir)) {
    if (entry.path().extension() != ".json") continue;
    EXPECT_NO_THROW(parse_config(load_config_file(entry.path()))) << entry.path();
    ++seen;
  }
  EXPECT_EQ(seen, std::size(kKinds));
}

TEST(Config, ValidationErrors) {
  auto doc = gaussian_doc("propagate", {{"times", {0.1}}});
  EXPECT_NO_THROW(parse_config(doc));

  auto extra = doc;
  extra["grid"]["spacing"] = 0.1;
  EXPECT_NE(message_of(extra).find("grid.spacing: unknown key"), std::string::npos) << message_of(extra);
  extra = doc;
  extra["colour"] = "blue";
  EXPECT_NE(message_of(extra).find("colour"), std::string::npos);

  auto bad_r = gaussian_doc("norms", {{"fourier_lebesgue", Json::array({{{"s", 0.0}, {"r", 1.5}}})}});
  EXPECT_NE(message_of(bad_r).find("r >= 2"), std::string::npos) << message_of(bad_r);

  auto wrong_type = doc;
  wrong_type["grid"]["N"] = "many";
  EXPECT_THROW(parse_config(wrong_type), ValidationError);
  auto missing = doc;
  missing.erase("grid");
  EXPECT_THROW(parse_config(missing), ValidationError);
  auto bad_kind = doc;
  bad_kind["kind"] = "sing";
  EXPECT_THROW(parse_config(bad_kind), ValidationError);
  EXPECT_THROW(parse_config(doc, "norms"), ValidationError);
  auto ks = Json{{"kind", "counterexample"}, {"params", {{"ks", {0, 1, 2, 3}}, {"s", 0.0}, {"p", 4.0}}}};
  EXPECT_THROW(parse_config(ks), ValidationError);
  auto p3 = Json{{"kind", "counterexample"}, {"params", {{"ks", {1, 2, 3, 4}}, {"s", 0.0}, {"p", 3.0}}}};
  EXPECT_THROW(parse_config(p3), ValidationError);
}

TEST(Config, KindAndSeedOverrides) {
  auto doc = gaussian_doc("propagate", {{"times", {0.1}}});
  doc.erase("kind");
  const auto cfg = parse_config(doc, "propagate", 77);
  EXPECT_EQ(cfg.kind, "propagate");
  EXPECT_EQ(cfg.seed, 77u);
  EXPECT_EQ(parse_config(cfg.source).seed, 77u);
}

TEST(Config, FileErrors) {
  EXPECT_THROW(load_config_file("/nonexistent/dir/cfg.json"), IoError);
  TempDir dir("schrolab_cfg_test");
  std::ofstream(dir.path / "bad.json") << "{ not json";
  EXPECT_THROW(load_config_file(dir.path / "bad.json"), ValidationError);
}

TEST(Runner, ReportEnvelopeAndProvenance) {
  const auto cfg = parse_config(small_docs().front());
  const auto report = run(cfg);
  const Json j = to_json(report);
  for (const char* key : {"tool", "version", "kind", "config", "seed", "provenance", "wall_clock_seconds", "results"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j.at("version"), std::string(tool_version()));
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(report.config.dump())));
  EXPECT_EQ(report.provenance, hex);
  auto other = small_docs().front();
  other["seed"] = 12;
  EXPECT_NE(provenance_hash(parse_config(other).source), report.provenance);
  // The echoed config parses back to the same document.
  EXPECT_EQ(parse_config(report.config).source, report.config);
}

TEST(Runner, DeterministicAcrossThreadCounts) {
  const std::size_t saved = thread_count();
  for (const auto& doc : small_docs()) {
    const auto cfg = parse_config(doc);
    set_thread_count(1);
    const auto a = run(cfg).results.dump();
    set_thread_count(4);
    const auto b = run(cfg).results.dump();
    EXPECT_EQ(a, b) << cfg.kind;
  }
  set_thread_count(saved);
}

TEST(Runner, CsvMatchesJson) {
  TempDir dir("schrolab_emit_test");
  for (const auto& doc : small_docs()) {
    const auto report = run(parse_config(doc));
    const auto written = emit(report, Format::csv, dir.path);
    const auto json_paths = emit(report, Format::json, dir.path);
    ASSERT_EQ(json_paths.size(), 1u);
    const Json back = Json::parse(slurp(json_paths.front()));
    EXPECT_EQ(back.at("results"), report.results) << report.kind;

    // Every numeric CSV cell is the JSON value printed by the same writer.
    for (const auto& table : tables(report)) {
      const fs::path csv = dir.path / (report.stem + table.suffix + ".csv");
      ASSERT_TRUE(fs::exists(csv)) << csv;
      std::istringstream lines(slurp(csv));
      std::string line;
      std::getline(lines, line);
      std::string header;
      for (std::size_t i = 0; i < table.columns.size(); ++i) header += (i ? "," : "") + table.columns[i];
      EXPECT_EQ(line, header);
      std::size_t count = 0;
      for (; std::getline(lines, line); ++count) {
        const auto& row = table.rows.at(count);
        if (!row.front().is_number()) continue;
        EXPECT_EQ(line.substr(0, line.find(',')), row.front().dump());
        EXPECT_EQ(std::stod(line.substr(0, line.find(','))), row.front().get<double>());
      }
      EXPECT_EQ(count, table.rows.size());
    }
    if (report.kind == "counterexample") EXPECT_TRUE(fs::exists(dir.path / (report.stem + "_fit.json")));
    if (report.kind == "tails" || report.kind == "randomize")
      EXPECT_TRUE(fs::exists(dir.path / (report.stem + "_plan.json")));
  }
}

TEST(Runner, ConvergenceCsvValuesMatchRecords) {
  const auto report = run(parse_config(small_docs().back()));
  const auto table = tables(report).front();
  const auto& records = report.results.at("records");
  ASSERT_EQ(table.rows.size(), records.size() * 3);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    EXPECT_EQ(table.rows[i][0], records[i / 3].at("t"));
    EXPECT_EQ(table.rows[i][1], records[i / 3].at("sup_error"));
    EXPECT_EQ(table.rows[i][3], records[i / 3].at("level_sets")[i % 3].at("measure"));
  }
  EXPECT_NEAR(report.results.at("fit").at("slope").get<double>(), 1.0, 0.05);
}

TEST(Runner, EmptySweepGivesHeaderOnlyCsv) {
  auto doc = gaussian_doc("convergence", Json{{"times", Json::array()}});
  const auto report = run(parse_config(doc));
  EXPECT_EQ(format_csv(tables(report).front()), "t,sup_error,alpha,measure\n");
}

TEST(Runner, UnwritableDestination) {
  TempDir dir("schrolab_io_test");
  std::ofstream(dir.path / "file") << "x";
  const auto report = run(parse_config(small_docs().front()));
  EXPECT_THROW(emit(report, Format::json, dir.path / "file" / "sub"), IoError);
  EXPECT_THROW(format_from_string("xml"), ValidationError);
}

TEST(Runner, CounterexampleSlope) {
  auto doc = Json{{"kind", "counterexample"},
                  {"params", {{"ks", {1, 2, 3, 4}}, {"s", 0.0}, {"p", 4.0}, {"quadrature", false}}}};
  const auto report = run(parse_config(doc));
  EXPECT_NEAR(report.results.at("fit").at("slope").get<double>(), 0.25, 0.03);
  EXPECT_EQ(report.results.at("rows").size(), 4u);
}
