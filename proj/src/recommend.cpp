#include "lct/recommend.hpp"

#include <stdexcept>

namespace lct {

namespace {

// Static object -> bands/indices table compiled from the remote-sensing
// literature named in each source_note. Combos are kept sorted ascending;
// change-detection composites 7,4,3 and 7,4,2 therefore appear as
// {3,4,7} and {2,4,7}.
const std::vector<Recommendation>& table()
{
    static const std::vector<Recommendation> rows = {
        {LandcoverObject::Water,
         {{2, 5}, {1, 2, 3, 4, 5, 7}},
         {IndexKind::of(IndexId::WaterRatio25), IndexKind::of(IndexId::WaterRatio42),
          IndexKind::of(IndexId::WaterIndex)},
         "Band 2 over band 5 exceeds one on water and drops below one on land; "
         "Alesheikh et al. (2007) worked coastlines with the band 4 to band 2 ratio, and "
         "Hosseini et al. (2008) separated water from non-water with the visible-to-infrared "
         "water index."},
        {LandcoverObject::CoastalBoundary,
         {{3, 4, 7}},
         {},
         "Composites of bands 3, 4 and 7 resolve the land-water boundary along with soil "
         "moisture and iron compounds (Lim et al. 2002; NASA Landsat program notes)."},
        {LandcoverObject::Vegetation,
         {{3, 4}},
         {IndexKind::of(IndexId::Ndvi)},
         "Shan-long et al. (2006): red band 3 against near-infrared band 4 maximizes the "
         "soil/vegetation contrast; NDVI above zero flags vegetated cover."},
        {LandcoverObject::CropAnalysis,
         {{2, 3, 4}},
         {},
         "Composites of bands 4, 3 and 2 serve vegetation and crop analysis (Lim et al. 2002; "
         "NASA Landsat program notes)."},
        {LandcoverObject::Soil,
         {{2, 3, 4}},
         {IndexKind::of(IndexId::SoilEcRatio)},
         "Hashemi et al. (2005): the (band3 - band4) / (band2 - band4) ratio correlates best "
         "with soil electrical conductivity, so bands 2, 3 and 4 tell soil kinds apart."},
        {LandcoverObject::SoilSalinity,
         {{2, 4, 6, 7}},
         {},
         "Hashemi et al. (2005): bands 2, 4, 6 plus band 7 separate salt and sodium soils more "
         "accurately than other band sets."},
        {LandcoverObject::SoilMoisture,
         {{3, 4, 5}},
         {},
         "Composites of bands 4, 5 and 3 serve soil moisture and vegetation analysis "
         "(Lim et al. 2002; NASA Landsat program notes)."},
        {LandcoverObject::SnowIce,
         {{3, 4, 5}},
         {IndexKind::of(IndexId::IceRatio45), IndexKind::of(IndexId::IceRatio35)},
         "Todd (2002), following Bayr et al. (1994), Rott (1994) and Paul (2000): thresholded "
         "band4/band5 and band3/band5 ratio images delineate glacier ice, and bands 3, 4 and 5 "
         "together give the clearest snow and ice distinction."},
        {LandcoverObject::UnderwaterFeatures,
         {{1, 2, 3}},
         {},
         "Composites of bands 3, 2 and 1 expose general landcover and underwater features "
         "(Lim et al. 2002; NASA Landsat program notes)."},
        {LandcoverObject::ChangeDetection,
         {{3, 4, 7}, {2, 4, 7}},
         {},
         "Composites of bands 7, 4, 3 and of bands 7, 4, 2 serve change detection, soil type "
         "and vegetation stress (Lim et al. 2002; NASA Landsat program notes)."},
    };
    return rows;
}

} // namespace

std::string landcover_object_name(LandcoverObject object)
{
    switch (object) {
    case LandcoverObject::Water: return "water";
    case LandcoverObject::CoastalBoundary: return "coastal-boundary";
    case LandcoverObject::Vegetation: return "vegetation";
    case LandcoverObject::CropAnalysis: return "crop-analysis";
    case LandcoverObject::Soil: return "soil";
    case LandcoverObject::SoilSalinity: return "soil-salinity";
    case LandcoverObject::SoilMoisture: return "soil-moisture";
    case LandcoverObject::SnowIce: return "snow-ice";
    case LandcoverObject::UnderwaterFeatures: return "underwater-features";
    case LandcoverObject::ChangeDetection: return "change-detection";
    }
    throw std::invalid_argument("unknown landcover object");
}

std::optional<LandcoverObject> parse_landcover_object(std::string_view name)
{
    for (LandcoverObject object : all_landcover_objects)
        if (landcover_object_name(object) == name)
            return object;
    return std::nullopt;
}

const Recommendation& recommend(LandcoverObject object)
{
    for (const auto& row : table())
        if (row.object == object)
            return row;
    throw std::invalid_argument("unknown landcover object");
}

BandPrevalence band_prevalence()
{
    BandPrevalence prevalence;
    for (int band = 1; band <= 7; ++band)
        prevalence.counts[band] = 0;
    for (const auto& row : table())
        for (const auto& combo : row.combos) {
            ++prevalence.combo_total;
            for (int band : combo)
                ++prevalence.counts[band];
        }
    prevalence.band4_fraction = static_cast<double>(prevalence.counts[4]) /
                                static_cast<double>(prevalence.combo_total);
    return prevalence;
}

namespace {

std::string join_combo(const std::vector<int>& combo, const char* sep)
{
    std::string s;
    for (int band : combo) {
        if (!s.empty())
            s += sep;
        s += std::to_string(band);
    }
    return s;
}

std::string join_combos(const Recommendation& rec, const char* band_sep, const char* combo_sep)
{
    std::string s;
    for (const auto& combo : rec.combos) {
        if (!s.empty())
            s += combo_sep;
        s += join_combo(combo, band_sep);
    }
    return s;
}

std::string join_indices(const Recommendation& rec, const char* sep)
{
    std::string s;
    for (const auto& kind : rec.indices) {
        if (!s.empty())
            s += sep;
        s += index_kind_name(kind);
    }
    return s;
}

std::string csv_quote(const std::string& field)
{
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

} // namespace

std::string recommendation_text(const Recommendation& rec)
{
    std::string text = "object: " + landcover_object_name(rec.object) + "\n";
    text += "bands:  " + join_combos(rec, ",", " | ") + "\n";
    if (!rec.indices.empty())
        text += "indices: " + join_indices(rec, ", ") + "\n";
    text += "source: " + rec.source_note + "\n";
    return text;
}

std::string recommendation_csv_row(const Recommendation& rec)
{
    return landcover_object_name(rec.object) + "," + join_combos(rec, "", "+") + "," +
           join_indices(rec, "+") + "," + csv_quote(rec.source_note);
}

} // namespace lct
