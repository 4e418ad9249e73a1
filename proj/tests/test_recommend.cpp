#include <doctest.h>

#include <algorithm>
#include <set>

#include "lct/recommend.hpp"

using lct::IndexId;
using lct::IndexKind;
using lct::LandcoverObject;

namespace {

struct ExpectedRow {
    LandcoverObject object;
    std::vector<std::vector<int>> combos;
    std::vector<IndexKind> indices;
};

// pinned copy of the rule table; guards the encoding against edits
const std::vector<ExpectedRow> kExpected = {
    {LandcoverObject::Water,
     {{2, 5}, {1, 2, 3, 4, 5, 7}},
     {IndexKind::of(IndexId::WaterRatio25), IndexKind::of(IndexId::WaterRatio42),
      IndexKind::of(IndexId::WaterIndex)}},
    {LandcoverObject::CoastalBoundary, {{3, 4, 7}}, {}},
    {LandcoverObject::Vegetation, {{3, 4}}, {IndexKind::of(IndexId::Ndvi)}},
    {LandcoverObject::CropAnalysis, {{2, 3, 4}}, {}},
    {LandcoverObject::Soil, {{2, 3, 4}}, {IndexKind::of(IndexId::SoilEcRatio)}},
    {LandcoverObject::SoilSalinity, {{2, 4, 6, 7}}, {}},
    {LandcoverObject::SoilMoisture, {{3, 4, 5}}, {}},
    {LandcoverObject::SnowIce,
     {{3, 4, 5}},
     {IndexKind::of(IndexId::IceRatio45), IndexKind::of(IndexId::IceRatio35)}},
    {LandcoverObject::UnderwaterFeatures, {{1, 2, 3}}, {}},
    {LandcoverObject::ChangeDetection, {{3, 4, 7}, {2, 4, 7}}, {}},
};

} // namespace

TEST_CASE("every landcover object resolves to its encoded row")
{
    REQUIRE(kExpected.size() == lct::all_landcover_objects.size());
    for (const auto& expected : kExpected) {
        const auto& rec = lct::recommend(expected.object);
        CHECK(rec.object == expected.object);
        CHECK(rec.combos == expected.combos);
        REQUIRE(rec.indices.size() == expected.indices.size());
        for (std::size_t i = 0; i < rec.indices.size(); ++i)
            CHECK(rec.indices[i] == expected.indices[i]);
        CHECK_FALSE(rec.source_note.empty());
    }
}

TEST_CASE("rows are structurally sound")
{
    for (auto object : lct::all_landcover_objects) {
        const auto& rec = lct::recommend(object);
        CHECK((!rec.combos.empty() || !rec.indices.empty()));
        for (const auto& combo : rec.combos) {
            CHECK(!combo.empty());
            CHECK(std::is_sorted(combo.begin(), combo.end()));
            CHECK(std::adjacent_find(combo.begin(), combo.end()) == combo.end());
            for (int band : combo) {
                CHECK(band >= 1);
                CHECK(band <= 7);
            }
        }
        // every referenced index is implemented by the index module
        for (const auto& kind : rec.indices) {
            auto bands = lct::required_bands(kind);
            CHECK_FALSE(bands.empty());
            CHECK(lct::parse_index_kind(lct::index_kind_name(kind)) == kind);
        }
    }
}

TEST_CASE("object names round-trip")
{
    const std::vector<std::pair<LandcoverObject, std::string>> names = {
        {LandcoverObject::Water, "water"},
        {LandcoverObject::CoastalBoundary, "coastal-boundary"},
        {LandcoverObject::Vegetation, "vegetation"},
        {LandcoverObject::CropAnalysis, "crop-analysis"},
        {LandcoverObject::Soil, "soil"},
        {LandcoverObject::SoilSalinity, "soil-salinity"},
        {LandcoverObject::SoilMoisture, "soil-moisture"},
        {LandcoverObject::SnowIce, "snow-ice"},
        {LandcoverObject::UnderwaterFeatures, "underwater-features"},
        {LandcoverObject::ChangeDetection, "change-detection"},
    };
    REQUIRE(names.size() == lct::all_landcover_objects.size());
    for (const auto& [object, name] : names) {
        CHECK(lct::landcover_object_name(object) == name);
        auto parsed = lct::parse_landcover_object(name);
        REQUIRE(parsed.has_value());
        CHECK(*parsed == object);
    }
    CHECK_FALSE(lct::parse_landcover_object("lava").has_value());
    CHECK_FALSE(lct::parse_landcover_object("").has_value());
}

TEST_CASE("band 4 is the unique prevalence maximum")
{
    auto prevalence = lct::band_prevalence();
    REQUIRE(prevalence.counts.size() == 7);
    REQUIRE(prevalence.counts.count(4) == 1);

    std::size_t band4 = prevalence.counts.at(4);
    for (const auto& [band, count] : prevalence.counts) {
        CHECK(count <= prevalence.combo_total);
        if (band != 4)
            CHECK(count < band4); // strict maximum
    }
    CHECK(prevalence.combo_total == 12);
    CHECK(band4 == 10);
    CHECK(prevalence.band4_fraction ==
          doctest::Approx(static_cast<double>(band4) / 12.0).epsilon(1e-15));

    // static table: repeated calls agree
    auto again = lct::band_prevalence();
    CHECK(again.counts == prevalence.counts);
    CHECK(again.combo_total == prevalence.combo_total);
}

TEST_CASE("text rendering names the object, bands and source")
{
    const auto& veg = lct::recommend(LandcoverObject::Vegetation);
    auto text = lct::recommendation_text(veg);
    CHECK(text.find("vegetation") != std::string::npos);
    CHECK(text.find("3,4") != std::string::npos);
    CHECK(text.find("ndvi") != std::string::npos);
    CHECK(text.find("source:") != std::string::npos);

    const auto& change = lct::recommendation_text(lct::recommend(LandcoverObject::ChangeDetection));
    CHECK(change.find("3,4,7") != std::string::npos);
    CHECK(change.find("2,4,7") != std::string::npos);
}

TEST_CASE("csv rendering joins combos and indices with plus")
{
    auto row = lct::recommendation_csv_row(lct::recommend(LandcoverObject::SnowIce));
    CHECK(row.rfind("snow-ice,345,ice_ratio_45+ice_ratio_35,\"", 0) == 0);
    CHECK(row.back() == '"');

    auto change = lct::recommendation_csv_row(lct::recommend(LandcoverObject::ChangeDetection));
    CHECK(change.rfind("change-detection,347+247,,\"", 0) == 0);

    auto water = lct::recommendation_csv_row(lct::recommend(LandcoverObject::Water));
    CHECK(water.rfind("water,25+123457,water_ratio_25+water_ratio_42+water_index,\"", 0) == 0);
}
