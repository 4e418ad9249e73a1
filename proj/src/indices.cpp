#include "lct/indices.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lct/detail/text.hpp"
#include "lct/raster_io.hpp"

namespace lct {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Written into persisted index rasters for masked pixels; far outside
// any plausible index value.
constexpr double kMaskSentinel = -3.4028234663852886e38;

struct KindName {
    IndexId id;
    const char* name;
};

constexpr KindName kKindNames[] = {
    {IndexId::WaterRatio25, "water_ratio_25"},
    {IndexId::WaterRatio42, "water_ratio_42"},
    {IndexId::WaterIndex, "water_index"},
    {IndexId::Ndvi, "ndvi"},
    {IndexId::CorrectedNdvi, "corrected_ndvi"},
    {IndexId::PercentVegCover, "percent_veg_cover"},
    {IndexId::SimpleRatio, "simple_ratio"},
    {IndexId::ReducedSimpleRatio, "reduced_simple_ratio"},
    {IndexId::Savi, "savi"},
    {IndexId::IceRatio45, "ice_ratio_45"},
    {IndexId::IceRatio35, "ice_ratio_35"},
    {IndexId::SoilEcRatio, "soil_ec_ratio"},
};

std::optional<double> ratio(double num, double den)
{
    if (den == 0.0)
        return std::nullopt;
    return num / den;
}

// 1 - (b5 - min) / (max - min); nullopt when the range is degenerate.
std::optional<double> range_bracket(double value, const std::optional<BandRangeStats>& aux,
                                    const char* kind_name)
{
    if (!aux)
        throw std::invalid_argument(std::string(kind_name) + " needs band range stats");
    if (aux->max == aux->min)
        return std::nullopt;
    return 1.0 - (value - aux->min) / (aux->max - aux->min);
}

} // namespace

IndexKind IndexKind::savi(double l)
{
    if (l < 0)
        throw std::invalid_argument("savi soil factor must be >= 0, got " +
                                    detail::format_double(l));
    return IndexKind{IndexId::Savi, l};
}

bool IndexKind::operator==(const IndexKind& other) const
{
    if (id != other.id)
        return false;
    return id != IndexId::Savi || savi_l == other.savi_l;
}

std::vector<int> required_bands(IndexKind kind)
{
    switch (kind.id) {
    case IndexId::WaterRatio25: return {2, 5};
    case IndexId::WaterRatio42: return {2, 4};
    case IndexId::WaterIndex: return {1, 2, 3, 4, 5, 7};
    case IndexId::Ndvi: return {3, 4};
    case IndexId::CorrectedNdvi: return {3, 4, 5};
    case IndexId::PercentVegCover: return {3, 4};
    case IndexId::SimpleRatio: return {3, 4};
    case IndexId::ReducedSimpleRatio: return {3, 4, 5};
    case IndexId::Savi: return {3, 4};
    case IndexId::IceRatio45: return {4, 5};
    case IndexId::IceRatio35: return {3, 5};
    case IndexId::SoilEcRatio: return {2, 3, 4};
    }
    throw std::logic_error("unreachable index kind");
}

std::string index_kind_name(IndexKind kind)
{
    for (const auto& kn : kKindNames)
        if (kn.id == kind.id)
            return kind.id == IndexId::Savi
                       ? std::string("savi(") + detail::format_double(kind.savi_l) + ")"
                       : kn.name;
    throw std::logic_error("unreachable index kind");
}

IndexKind parse_index_kind(std::string_view name)
{
    std::string s = detail::trim(name);
    if (s.rfind("savi(", 0) == 0 && s.back() == ')')
        return IndexKind::savi(
            detail::parse_double(s.substr(5, s.size() - 6), "savi soil factor"));
    for (const auto& kn : kKindNames)
        if (s == kn.name)
            return IndexKind::of(kn.id);
    throw std::runtime_error("unknown index kind '" + s + "'");
}

BandRangeStats band_range(const MultibandImage& image, int band)
{
    const auto& plane = image.band(band);
    BandRangeStats stats{band, 0.0, 0.0};
    bool any = false;
    for (double v : plane) {
        if (image.is_nodata(v))
            continue;
        if (!any) {
            stats.min = stats.max = v;
            any = true;
        } else {
            stats.min = std::min(stats.min, v);
            stats.max = std::max(stats.max, v);
        }
    }
    if (!any)
        throw std::runtime_error("band " + std::to_string(band) + " has no valid pixels");
    return stats;
}

std::optional<double> evaluate_index_pixel(IndexKind kind, std::span<const double> bands,
                                           const std::optional<BandRangeStats>& aux,
                                           const std::optional<double>& nodata)
{
    auto needed = required_bands(kind);
    for (int b : needed) {
        if (static_cast<std::size_t>(b) > bands.size())
            throw std::invalid_argument("index " + index_kind_name(kind) + " needs band " +
                                        std::to_string(b) + "; only " +
                                        std::to_string(bands.size()) + " values given");
        if (nodata && bands[b - 1] == *nodata)
            return std::nullopt;
    }
    auto v = [&](int b) { return bands[b - 1]; };

    switch (kind.id) {
    case IndexId::WaterRatio25:
        return ratio(v(2), v(5));
    case IndexId::WaterRatio42:
        return ratio(v(4), v(2));
    case IndexId::WaterIndex:
        return ratio(v(1) + v(2) + v(3), v(4) + v(5) + v(7));
    case IndexId::Ndvi:
        return ratio(v(4) - v(3), v(4) + v(3));
    case IndexId::CorrectedNdvi: {
        auto ndvi = ratio(v(4) - v(3), v(4) + v(3));
        auto bracket = range_bracket(v(5), aux, "corrected_ndvi");
        if (!ndvi || !bracket)
            return std::nullopt;
        return *ndvi * *bracket;
    }
    case IndexId::PercentVegCover: {
        // Standardized Ndvi: min-max rescaled against the image-wide range.
        auto ndvi = ratio(v(4) - v(3), v(4) + v(3));
        if (!ndvi)
            return std::nullopt;
        if (!aux)
            throw std::invalid_argument("percent_veg_cover needs the ndvi range");
        if (aux->max == aux->min)
            return std::nullopt;
        double s = (*ndvi - aux->min) / (aux->max - aux->min);
        return s * s;
    }
    case IndexId::SimpleRatio:
        return ratio(v(4), v(3));
    case IndexId::ReducedSimpleRatio: {
        auto sr = ratio(v(4), v(3));
        auto bracket = range_bracket(v(5), aux, "reduced_simple_ratio");
        if (!sr || !bracket)
            return std::nullopt;
        return *sr * *bracket;
    }
    case IndexId::Savi: {
        auto base = ratio(v(4) - v(3), v(4) + v(3) + 1.0);
        if (!base)
            return std::nullopt;
        return *base * (1.0 + kind.savi_l);
    }
    case IndexId::IceRatio45:
        return ratio(v(4), v(5));
    case IndexId::IceRatio35:
        return ratio(v(3), v(5));
    case IndexId::SoilEcRatio:
        return ratio(v(3) - v(4), v(2) - v(4));
    }
    throw std::logic_error("unreachable index kind");
}

namespace {

std::vector<int> check_bands_present(const MultibandImage& image, IndexKind kind)
{
    auto needed = required_bands(kind);
    for (int b : needed)
        if (b > image.band_count())
            throw std::runtime_error("index " + index_kind_name(kind) + " needs band " +
                                     std::to_string(b) + "; image has " +
                                     std::to_string(image.band_count()) + " band(s)");
    return needed;
}

std::optional<BandRangeStats> aux_for_kind(const MultibandImage& image, IndexKind kind)
{
    switch (kind.id) {
    case IndexId::CorrectedNdvi:
    case IndexId::ReducedSimpleRatio:
        return band_range(image, 5);
    case IndexId::PercentVegCover: {
        // Range of the Ndvi values themselves, skipping nodata pixels.
        BandRangeStats stats{0, 0.0, 0.0};
        bool any = false;
        const auto& b3 = image.band(3);
        const auto& b4 = image.band(4);
        for (std::size_t i = 0; i < image.pixel_count(); ++i) {
            if (image.is_nodata(b3[i]) || image.is_nodata(b4[i]))
                continue;
            double den = b4[i] + b3[i];
            if (den == 0.0)
                continue;
            double ndvi = (b4[i] - b3[i]) / den;
            if (!any) {
                stats.min = stats.max = ndvi;
                any = true;
            } else {
                stats.min = std::min(stats.min, ndvi);
                stats.max = std::max(stats.max, ndvi);
            }
        }
        return stats; // min == max when nothing was valid: every pixel masks
    }
    default:
        return std::nullopt;
    }
}

} // namespace

IndexRaster compute_index_raster(const MultibandImage& image, IndexKind kind)
{
    check_bands_present(image, kind);
    auto aux = aux_for_kind(image, kind);

    IndexRaster out;
    out.width = image.width();
    out.height = image.height();
    out.kind = kind;
    out.values.assign(image.pixel_count(), kNan);
    out.mask.assign(image.pixel_count(), 1);

    std::vector<double> pixel(static_cast<std::size_t>(image.band_count()));
    for (std::size_t i = 0; i < image.pixel_count(); ++i) {
        for (int b = 1; b <= image.band_count(); ++b)
            pixel[b - 1] = image.band(b)[i];
        auto value = evaluate_index_pixel(kind, pixel, aux, image.nodata);
        if (value) {
            out.values[i] = *value;
            out.mask[i] = 0;
        }
    }
    return out;
}

void write_index_raster(const IndexRaster& raster, const std::filesystem::path& header_path)
{
    MultibandImage image(raster.width, raster.height, 1);
    image.nodata = kMaskSentinel;
    auto& plane = image.band(1);
    for (std::size_t i = 0; i < raster.pixel_count(); ++i)
        plane[i] = raster.mask[i] ? kMaskSentinel : raster.values[i];
    write_raster(image, header_path, {"kind=" + index_kind_name(raster.kind)});
}

IndexRaster read_index_raster(const std::filesystem::path& header_path)
{
    RasterHeader header = read_raster_header(header_path);
    IndexKind kind = IndexKind::of(IndexId::Ndvi);
    bool have_kind = false;
    for (const auto& c : header.comments) {
        if (c.rfind("kind=", 0) == 0) {
            kind = parse_index_kind(c.substr(5));
            have_kind = true;
        }
    }
    if (!have_kind)
        throw std::runtime_error("malformed header " + header_path.string() +
                                 ": no '# kind=' comment");

    MultibandImage image = read_raster(header_path);
    IndexRaster out;
    out.width = image.width();
    out.height = image.height();
    out.kind = kind;
    out.values.assign(image.pixel_count(), kNan);
    out.mask.assign(image.pixel_count(), 1);
    const auto& plane = image.band(1);
    for (std::size_t i = 0; i < out.pixel_count(); ++i) {
        if (!image.is_nodata(plane[i])) {
            out.values[i] = plane[i];
            out.mask[i] = 0;
        }
    }
    return out;
}

LabelRaster water_mask(const MultibandImage& image, WaterRule rule, double index_threshold)
{
    IndexKind kind = rule == WaterRule::Ratio25 ? IndexKind::of(IndexId::WaterRatio25)
                                                : IndexKind::of(IndexId::WaterIndex);
    check_bands_present(image, kind);
    double threshold = rule == WaterRule::Ratio25 ? 1.0 : index_threshold;

    LabelRaster mask(image.width(), image.height());
    std::vector<double> pixel(static_cast<std::size_t>(image.band_count()));
    for (std::size_t i = 0; i < image.pixel_count(); ++i) {
        for (int b = 1; b <= image.band_count(); ++b)
            pixel[b - 1] = image.band(b)[i];
        auto value = evaluate_index_pixel(kind, pixel, std::nullopt, image.nodata);
        if (!value)
            continue; // stays 0
        if (*value > threshold)
            mask.labels()[i] = 1; // water
        else if (*value < threshold)
            mask.labels()[i] = 2; // land
    }
    return mask;
}

LabelRaster vegetation_mask(const MultibandImage& image)
{
    IndexKind kind = IndexKind::of(IndexId::Ndvi);
    check_bands_present(image, kind);

    LabelRaster mask(image.width(), image.height());
    std::vector<double> pixel(static_cast<std::size_t>(image.band_count()));
    for (std::size_t i = 0; i < image.pixel_count(); ++i) {
        for (int b = 1; b <= image.band_count(); ++b)
            pixel[b - 1] = image.band(b)[i];
        auto ndvi = evaluate_index_pixel(kind, pixel, std::nullopt, image.nodata);
        if (!ndvi)
            continue;
        mask.labels()[i] = *ndvi > 0.0 ? 1 : 2;
    }
    return mask;
}

} // namespace lct
