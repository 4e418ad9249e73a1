#ifndef LCT_RASTER_HPP
#define LCT_RASTER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lct {

// Spectral metadata for one acquisition band.
struct BandInfo {
    int index = 0;                // 1-based band number
    double wavelength_low = 0.0;  // micrometers
    double wavelength_high = 0.0; // micrometers
    std::string spectral_name;
    double resolution = 0.0;      // meters
};

// Co-registered stack of same-sized band planes. Each plane is row-major;
// pixel values are stored as doubles regardless of on-disk width so that
// ratio arithmetic behaves uniformly. Band numbers are 1-based throughout.
class MultibandImage {
public:
    MultibandImage() = default;
    MultibandImage(int width, int height, int bands);

    int width() const { return width_; }
    int height() const { return height_; }
    int band_count() const { return static_cast<int>(planes_.size()); }
    std::size_t pixel_count() const
    {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }

    // 1-based band access; throws std::out_of_range naming the band.
    std::vector<double>& band(int number);
    const std::vector<double>& band(int number) const;

    double at(int band_number, int x, int y) const;
    double& at(int band_number, int x, int y);

    bool is_nodata(double value) const { return nodata && value == *nodata; }

    // Throws std::invalid_argument if plane sizes or band_info length
    // do not match the declared shape.
    void validate() const;

    std::optional<double> nodata;
    std::vector<BandInfo> band_info; // empty, or one entry per band

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::vector<double>> planes_;
};

// Single-band integer label plane. Label 0 means "unclassified".
class LabelRaster {
public:
    LabelRaster() = default;
    LabelRaster(int width, int height, std::uint16_t fill = 0);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const
    {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }

    std::uint16_t at(int x, int y) const;
    std::uint16_t& at(int x, int y);

    std::vector<std::uint16_t>& labels() { return labels_; }
    const std::vector<std::uint16_t>& labels() const { return labels_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint16_t> labels_;
};

} // namespace lct

#endif
