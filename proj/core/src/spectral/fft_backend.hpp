#pragma once

#include <vector>

#include "schrolab/spectral/grid.hpp"

namespace schrolab::spectral::detail {

enum class FftDirection { forward, backward };

/// Unnormalized in-place DFT over all grid axes. forward uses exp(-2 pi i jk/N).
void fft_inplace(std::vector<Complex>& data, const SpectralGrid& grid, FftDirection dir);

}  // namespace schrolab::spectral::detail
