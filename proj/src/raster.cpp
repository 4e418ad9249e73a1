#include "lct/raster.hpp"

#include <stdexcept>
#include <string>

namespace lct {

namespace {

void check_shape(int width, int height)
{
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("raster dimensions must be positive, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
}

} // namespace

MultibandImage::MultibandImage(int width, int height, int bands) : width_(width), height_(height)
{
    check_shape(width, height);
    if (bands < 1)
        throw std::invalid_argument("band count must be >= 1, got " + std::to_string(bands));
    planes_.assign(static_cast<std::size_t>(bands), std::vector<double>(pixel_count(), 0.0));
}

std::vector<double>& MultibandImage::band(int number)
{
    if (number < 1 || number > band_count())
        throw std::out_of_range("band " + std::to_string(number) + " not present; image has " +
                                std::to_string(band_count()) + " band(s)");
    return planes_[static_cast<std::size_t>(number - 1)];
}

const std::vector<double>& MultibandImage::band(int number) const
{
    return const_cast<MultibandImage*>(this)->band(number);
}

double MultibandImage::at(int band_number, int x, int y) const
{
    return band(band_number)[static_cast<std::size_t>(y) * width_ + x];
}

double& MultibandImage::at(int band_number, int x, int y)
{
    return band(band_number)[static_cast<std::size_t>(y) * width_ + x];
}

void MultibandImage::validate() const
{
    check_shape(width_, height_);
    if (planes_.empty())
        throw std::invalid_argument("image has no bands");
    for (std::size_t i = 0; i < planes_.size(); ++i) {
        if (planes_[i].size() != pixel_count())
            throw std::invalid_argument("band " + std::to_string(i + 1) + " has " +
                                        std::to_string(planes_[i].size()) + " values, expected " +
                                        std::to_string(pixel_count()));
    }
    if (!band_info.empty() && band_info.size() != planes_.size())
        throw std::invalid_argument("band_info length " + std::to_string(band_info.size()) +
                                    " does not match band count " + std::to_string(planes_.size()));
}

LabelRaster::LabelRaster(int width, int height, std::uint16_t fill) : width_(width), height_(height)
{
    check_shape(width, height);
    labels_.assign(pixel_count(), fill);
}

std::uint16_t LabelRaster::at(int x, int y) const
{
    return labels_[static_cast<std::size_t>(y) * width_ + x];
}

std::uint16_t& LabelRaster::at(int x, int y)
{
    return labels_[static_cast<std::size_t>(y) * width_ + x];
}

} // namespace lct
