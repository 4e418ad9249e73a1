#ifndef LCT_RASTER_IO_HPP
#define LCT_RASTER_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "lct/raster.hpp"

namespace lct {

/* On-disk raster layout: a plain-text header next to a raw data file.
 *
 * Header, one key=value per line, in this order:
 *     samples=<width>
 *     lines=<height>
 *     bands=<count>
 *     dtype=f32            (u16 for label rasters)
 *     interleave=bsq
 *     byteorder=little
 *     nodata=<decimal>     (optional)
 * Lines starting with '#' are comments and may carry extra metadata.
 *
 * The data file sits at the header path with its extension replaced by
 * ".bin" and holds band-sequential little-endian samples, row-major
 * within each band. f32 data is widened to double on read and narrowed
 * back on write, so values that fit in f32 round-trip bit-exactly.
 */

struct RasterHeader {
    int samples = 0;
    int lines = 0;
    int bands = 0;
    std::string dtype;
    std::optional<double> nodata;
    std::vector<std::string> comments; // '#' lines, marker stripped
};

std::filesystem::path raster_data_path(const std::filesystem::path& header_path);

RasterHeader read_raster_header(const std::filesystem::path& header_path);

MultibandImage read_raster(const std::filesystem::path& header_path);
void write_raster(const MultibandImage& image, const std::filesystem::path& header_path,
                  const std::vector<std::string>& comments = {});

LabelRaster read_label_raster(const std::filesystem::path& header_path);
void write_label_raster(const LabelRaster& labels, const std::filesystem::path& header_path);

} // namespace lct

#endif
