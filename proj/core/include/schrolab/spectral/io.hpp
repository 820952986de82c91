#pragma once

#include <filesystem>

#include "schrolab/spectral/grid.hpp"

namespace schrolab::spectral {

enum class SampleFormat { csv, binary };

/// Writes `f` as a JSON header `<stem>.json`
///   {"dim", "L", "N", "space_tag", "format", "values_file", "count"}
/// next to the samples: `<stem>.csv` with columns `index,re,im` (17 significant
/// digits) or `<stem>.bin` holding little-endian (re, im) float64 pairs.
/// Throws IoError when a file cannot be written.
void write_grid_function(const std::filesystem::path& stem, const GridFunction& f, SampleFormat format);

/// Reads a function written by write_grid_function, given its header path.
GridFunction read_grid_function(const std::filesystem::path& header);

}  // namespace schrolab::spectral
