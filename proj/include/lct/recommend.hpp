#ifndef LCT_RECOMMEND_HPP
#define LCT_RECOMMEND_HPP

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lct/indices.hpp"

namespace lct {

enum class LandcoverObject {
    Water,
    CoastalBoundary,
    Vegetation,
    CropAnalysis,
    Soil,
    SoilSalinity,
    SoilMoisture,
    SnowIce,
    UnderwaterFeatures,
    ChangeDetection,
};

constexpr std::array<LandcoverObject, 10> all_landcover_objects = {
    LandcoverObject::Water,          LandcoverObject::CoastalBoundary,
    LandcoverObject::Vegetation,     LandcoverObject::CropAnalysis,
    LandcoverObject::Soil,           LandcoverObject::SoilSalinity,
    LandcoverObject::SoilMoisture,   LandcoverObject::SnowIce,
    LandcoverObject::UnderwaterFeatures, LandcoverObject::ChangeDetection,
};

std::string landcover_object_name(LandcoverObject object);
std::optional<LandcoverObject> parse_landcover_object(std::string_view name);

// Band combinations and ratio indices reported as effective for one
// landcover object, with the literature they trace back to.
struct Recommendation {
    LandcoverObject object;
    std::vector<std::vector<int>> combos; // band sets, each sorted ascending
    std::vector<IndexKind> indices;
    std::string source_note;
};

const Recommendation& recommend(LandcoverObject object);

struct BandPrevalence {
    std::map<int, std::size_t> counts; // band 1..7 -> combos containing it
    std::size_t combo_total = 0;
    double band4_fraction = 0.0;
};

// How often each band appears across every recommended combination.
BandPrevalence band_prevalence();

std::string recommendation_text(const Recommendation& rec);
// CSV row "object,combos,indices,source" (combos/indices '+'-joined).
std::string recommendation_csv_row(const Recommendation& rec);

} // namespace lct

#endif
