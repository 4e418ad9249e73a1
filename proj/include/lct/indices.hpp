#ifndef LCT_INDICES_HPP
#define LCT_INDICES_HPP

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lct/raster.hpp"

namespace lct {

/* Band-ratio indices over Landsat 5 TM band numbers.
 *
 *   WaterRatio25        b2 / b5            (> 1 water, < 1 land)
 *   WaterRatio42        b4 / b2            (raw ratio, no threshold)
 *   WaterIndex          (b1 + b2 + b3) / (b4 + b5 + b7)
 *   Ndvi                (b4 - b3) / (b4 + b3)
 *   CorrectedNdvi       Ndvi * [1 - (b5 - b5min) / (b5max - b5min)]
 *   PercentVegCover     (standardized Ndvi)^2, Ndvi min-max rescaled to [0,1]
 *   SimpleRatio         b4 / b3
 *   ReducedSimpleRatio  (b4 / b3) * [1 - (b5 - b5min) / (b5max - b5min)]
 *   Savi(L)             ((b4 - b3) / (b4 + b3 + 1)) * (1 + L)
 *   IceRatio45          b4 / b5
 *   IceRatio35          b3 / b5
 *   SoilEcRatio         (b3 - b4) / (b2 - b4)
 */
enum class IndexId {
    WaterRatio25,
    WaterRatio42,
    WaterIndex,
    Ndvi,
    CorrectedNdvi,
    PercentVegCover,
    SimpleRatio,
    ReducedSimpleRatio,
    Savi,
    IceRatio45,
    IceRatio35,
    SoilEcRatio,
};

struct IndexKind {
    IndexId id = IndexId::Ndvi;
    double savi_l = 0.5; // soil factor, used by Savi only; 0.5 is the usual choice

    static IndexKind of(IndexId id) { return IndexKind{id, 0.5}; }
    static IndexKind savi(double l);

    bool operator==(const IndexKind& other) const;
};

// 1-based band numbers the kind reads.
std::vector<int> required_bands(IndexKind kind);

// Name round-trip for headers and the CLI: "ndvi", "savi(0.5)", ...
std::string index_kind_name(IndexKind kind);
IndexKind parse_index_kind(std::string_view name);

// Whole-image min/max of one band (band = 0 marks a derived-value range,
// e.g. the Ndvi range PercentVegCover standardizes against).
struct BandRangeStats {
    int band = 0;
    double min = 0.0;
    double max = 0.0;
};

BandRangeStats band_range(const MultibandImage& image, int band);

// One pixel of an index. `bands` holds the per-band values, band k at
// bands[k-1]. Returns nullopt (nodata) on zero denominators, on a
// degenerate aux range, or when a referenced band equals the sentinel.
// CorrectedNdvi and ReducedSimpleRatio need the band-5 range in `aux`;
// PercentVegCover needs the Ndvi range.
std::optional<double> evaluate_index_pixel(IndexKind kind, std::span<const double> bands,
                                           const std::optional<BandRangeStats>& aux = std::nullopt,
                                           const std::optional<double>& nodata = std::nullopt);

struct IndexRaster {
    int width = 0;
    int height = 0;
    std::vector<double> values;     // row-major; NaN where masked
    std::vector<std::uint8_t> mask; // 1 = nodata
    IndexKind kind;

    std::size_t pixel_count() const
    {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
};

// Pixelwise lift of evaluate_index_pixel; aux ranges are computed in one
// full pass before the per-pixel pass.
IndexRaster compute_index_raster(const MultibandImage& image, IndexKind kind);

// Persists as a 1-band f32 raster with nodata set and "# kind=<name>".
void write_index_raster(const IndexRaster& raster, const std::filesystem::path& header_path);
IndexRaster read_index_raster(const std::filesystem::path& header_path);

enum class WaterRule { Ratio25, Index };

// Label 1 = water, 2 = land, 0 = boundary/undefined.
// Ratio25: b2/b5 against 1. Index: WaterIndex against `index_threshold`.
LabelRaster water_mask(const MultibandImage& image, WaterRule rule, double index_threshold = 1.0);

// Label 1 where Ndvi > 0, 2 where Ndvi <= 0, 0 where Ndvi is nodata.
LabelRaster vegetation_mask(const MultibandImage& image);

} // namespace lct

#endif
