#ifndef LCT_LANDSAT_HPP
#define LCT_LANDSAT_HPP

#include <array>

#include "lct/raster.hpp"

namespace lct {

// Landsat 5 TM sensor description: wavelength range, spectral name and
// ground resolution of the seven bands. Band 6 is the 120 m thermal band.
const std::array<BandInfo, 7>& landsat5_band_table();

} // namespace lct

#endif
