#include "schrolab/spectral/io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "schrolab/error.hpp"

namespace schrolab::spectral {

static_assert(std::endian::native == std::endian::little, "binary sample format assumes a little-endian host");

void write_grid_function(const std::filesystem::path& stem, const GridFunction& f, SampleFormat format) {
  const auto& grid = f.grid();
  std::filesystem::path values = stem;
  values += format == SampleFormat::csv ? ".csv" : ".bin";
  std::filesystem::path header = stem;
  header += ".json";

  nlohmann::ordered_json h;
  h["dim"] = grid.dim();
  h["L"] = grid.extent();
  h["N"] = grid.points_per_dim();
  h["space_tag"] = std::string(to_string(f.space()));
  h["format"] = format == SampleFormat::csv ? "csv" : "binary";
  h["values_file"] = values.filename().string();
  h["count"] = f.size();

  std::ofstream hout(header);
  if (!hout) throw IoError("cannot write " + header.string());
  hout << h.dump(2) << '\n';

  if (format == SampleFormat::csv) {
    std::ofstream out(values);
    if (!out) throw IoError("cannot write " + values.string());
    out << "index,re,im\n";
    char line[96];
    for (std::size_t i = 0; i < f.size(); ++i) {
      std::snprintf(line, sizeof line, "%zu,%.17g,%.17g\n", i, f[i].real(), f[i].imag());
      out << line;
    }
    if (!out) throw IoError("short write to " + values.string());
  } else {
    std::ofstream out(values, std::ios::binary);
    if (!out) throw IoError("cannot write " + values.string());
    out.write(reinterpret_cast<const char*>(f.values().data()),
              static_cast<std::streamsize>(f.size() * sizeof(Complex)));
    if (!out) throw IoError("short write to " + values.string());
  }
}

GridFunction read_grid_function(const std::filesystem::path& header) {
  std::ifstream hin(header);
  if (!hin) throw IoError("cannot read " + header.string());
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(hin);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("malformed grid function header " + header.string() + ": " + e.what());
  }

  const SpectralGrid grid(h.at("dim").get<int>(), h.at("L").get<double>(), h.at("N").get<std::size_t>());
  const Space space = space_from_string(h.at("space_tag").get<std::string>());
  const auto values_path = header.parent_path() / h.at("values_file").get<std::string>();
  std::vector<Complex> v(grid.node_count());

  if (h.at("format").get<std::string>() == "csv") {
    std::ifstream in(values_path);
    if (!in) throw IoError("cannot read " + values_path.string());
    std::string line;
    std::getline(in, line);  // header row
    std::size_t rows = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::size_t idx = 0;
      double re = 0.0, im = 0.0;
      if (std::sscanf(line.c_str(), "%zu,%lf,%lf", &idx, &re, &im) != 3 || idx >= v.size())
        throw IoError("malformed sample row in " + values_path.string() + ": " + line);
      v[idx] = Complex(re, im);
      ++rows;
    }
    if (rows != v.size()) throw IoError("expected " + std::to_string(v.size()) + " rows in " + values_path.string());
  } else {
    std::ifstream in(values_path, std::ios::binary);
    if (!in) throw IoError("cannot read " + values_path.string());
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(Complex)));
    if (in.gcount() != static_cast<std::streamsize>(v.size() * sizeof(Complex)))
      throw IoError("truncated binary samples in " + values_path.string());
  }
  return GridFunction(grid, std::move(v), space);
}

}  // namespace schrolab::spectral
