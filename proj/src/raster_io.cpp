#include "lct/raster_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "lct/detail/text.hpp"

namespace lct {

namespace {

using detail::format_double;
using detail::trim;

[[noreturn]] void missing_file(const std::filesystem::path& path)
{
    throw std::runtime_error("missing file: " + path.string());
}

[[noreturn]] void malformed(const std::filesystem::path& path, const std::string& detail)
{
    throw std::runtime_error("malformed header " + path.string() + ": " + detail);
}

int header_int(const std::filesystem::path& path, const std::string& key, const std::string& value)
{
    try {
        long v = detail::parse_long(value, key);
        if (v <= 0)
            malformed(path, key + " must be positive, got " + value);
        return static_cast<int>(v);
    } catch (const std::runtime_error&) {
        malformed(path, "bad value for " + key + ": '" + value + "'");
    }
}

std::vector<std::uint8_t> read_data_file(const std::filesystem::path& data_path,
                                         std::size_t expected_bytes)
{
    std::error_code ec;
    auto actual = std::filesystem::file_size(data_path, ec);
    if (ec)
        missing_file(data_path);
    if (actual != expected_bytes)
        throw std::runtime_error("size mismatch: " + data_path.string() + " holds " +
                                 std::to_string(actual) + " bytes, header implies " +
                                 std::to_string(expected_bytes));
    std::ifstream in(data_path, std::ios::binary);
    if (!in)
        missing_file(data_path);
    std::vector<std::uint8_t> bytes(expected_bytes);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(expected_bytes));
    if (!in)
        throw std::runtime_error("read error: " + data_path.string());
    return bytes;
}

void write_file(const std::filesystem::path& path, const void* data, std::size_t size)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write: " + path.string());
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    out.flush();
    if (!out)
        throw std::runtime_error("cannot write: " + path.string());
}

std::string header_text(int width, int height, int bands, const std::string& dtype,
                        const std::optional<double>& nodata,
                        const std::vector<std::string>& comments)
{
    std::string text;
    text += "samples=" + std::to_string(width) + "\n";
    text += "lines=" + std::to_string(height) + "\n";
    text += "bands=" + std::to_string(bands) + "\n";
    text += "dtype=" + dtype + "\n";
    text += "interleave=bsq\n";
    text += "byteorder=little\n";
    if (nodata)
        text += "nodata=" + format_double(*nodata) + "\n";
    for (const auto& c : comments)
        text += "# " + c + "\n";
    return text;
}

} // namespace

std::filesystem::path raster_data_path(const std::filesystem::path& header_path)
{
    auto p = header_path;
    p.replace_extension(".bin");
    return p;
}

RasterHeader read_raster_header(const std::filesystem::path& header_path)
{
    std::ifstream in(header_path);
    if (!in)
        missing_file(header_path);

    RasterHeader h;
    bool have_samples = false, have_lines = false, have_bands = false;
    bool have_dtype = false, have_interleave = false, have_byteorder = false;
    std::string line;
    while (std::getline(in, line)) {
        std::string s = trim(line);
        if (s.empty())
            continue;
        if (s[0] == '#') {
            h.comments.push_back(trim(s.substr(1)));
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos)
            malformed(header_path, "expected key=value, got '" + s + "'");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key == "samples") {
            h.samples = header_int(header_path, key, value);
            have_samples = true;
        } else if (key == "lines") {
            h.lines = header_int(header_path, key, value);
            have_lines = true;
        } else if (key == "bands") {
            h.bands = header_int(header_path, key, value);
            have_bands = true;
        } else if (key == "dtype") {
            if (value != "f32" && value != "u16")
                malformed(header_path, "unsupported dtype '" + value + "'");
            h.dtype = value;
            have_dtype = true;
        } else if (key == "interleave") {
            if (value != "bsq")
                malformed(header_path, "unsupported interleave '" + value + "'");
            have_interleave = true;
        } else if (key == "byteorder") {
            if (value != "little")
                malformed(header_path, "unsupported byteorder '" + value + "'");
            have_byteorder = true;
        } else if (key == "nodata") {
            try {
                h.nodata = detail::parse_double(value, key);
            } catch (const std::runtime_error&) {
                malformed(header_path, "bad value for nodata: '" + value + "'");
            }
        } else {
            malformed(header_path, "unknown key '" + key + "'");
        }
    }
    if (!have_samples || !have_lines || !have_bands || !have_dtype || !have_interleave ||
        !have_byteorder)
        malformed(header_path, "missing required key");
    return h;
}

MultibandImage read_raster(const std::filesystem::path& header_path)
{
    RasterHeader h = read_raster_header(header_path);
    if (h.dtype != "f32")
        malformed(header_path, "expected dtype=f32 for a multiband image, got " + h.dtype);

    const std::size_t plane = static_cast<std::size_t>(h.samples) * h.lines;
    auto bytes = read_data_file(raster_data_path(header_path), plane * h.bands * 4);

    MultibandImage image(h.samples, h.lines, h.bands);
    image.nodata = h.nodata;
    const std::uint8_t* p = bytes.data();
    for (int b = 1; b <= h.bands; ++b) {
        auto& dst = image.band(b);
        for (std::size_t i = 0; i < plane; ++i, p += 4) {
            std::uint32_t u = static_cast<std::uint32_t>(p[0]) |
                              (static_cast<std::uint32_t>(p[1]) << 8) |
                              (static_cast<std::uint32_t>(p[2]) << 16) |
                              (static_cast<std::uint32_t>(p[3]) << 24);
            dst[i] = static_cast<double>(std::bit_cast<float>(u));
        }
    }
    return image;
}

void write_raster(const MultibandImage& image, const std::filesystem::path& header_path,
                  const std::vector<std::string>& comments)
{
    image.validate();
    const std::size_t plane = image.pixel_count();
    std::vector<std::uint8_t> bytes(plane * image.band_count() * 4);
    std::uint8_t* p = bytes.data();
    for (int b = 1; b <= image.band_count(); ++b) {
        for (double v : image.band(b)) {
            std::uint32_t u = std::bit_cast<std::uint32_t>(static_cast<float>(v));
            *p++ = static_cast<std::uint8_t>(u & 0xff);
            *p++ = static_cast<std::uint8_t>((u >> 8) & 0xff);
            *p++ = static_cast<std::uint8_t>((u >> 16) & 0xff);
            *p++ = static_cast<std::uint8_t>((u >> 24) & 0xff);
        }
    }
    std::string hdr = header_text(image.width(), image.height(), image.band_count(), "f32",
                                  image.nodata, comments);
    write_file(header_path, hdr.data(), hdr.size());
    write_file(raster_data_path(header_path), bytes.data(), bytes.size());
}

LabelRaster read_label_raster(const std::filesystem::path& header_path)
{
    RasterHeader h = read_raster_header(header_path);
    if (h.dtype != "u16")
        malformed(header_path, "expected dtype=u16 for a label raster, got " + h.dtype);
    if (h.bands != 1)
        malformed(header_path, "label raster must have bands=1, got " + std::to_string(h.bands));

    const std::size_t plane = static_cast<std::size_t>(h.samples) * h.lines;
    auto bytes = read_data_file(raster_data_path(header_path), plane * 2);

    LabelRaster labels(h.samples, h.lines);
    const std::uint8_t* p = bytes.data();
    for (std::size_t i = 0; i < plane; ++i, p += 2)
        labels.labels()[i] =
            static_cast<std::uint16_t>(p[0] | (static_cast<std::uint16_t>(p[1]) << 8));
    return labels;
}

void write_label_raster(const LabelRaster& labels, const std::filesystem::path& header_path)
{
    if (labels.width() <= 0 || labels.height() <= 0)
        throw std::invalid_argument("label raster is empty");
    std::vector<std::uint8_t> bytes(labels.pixel_count() * 2);
    std::uint8_t* p = bytes.data();
    for (std::uint16_t v : labels.labels()) {
        *p++ = static_cast<std::uint8_t>(v & 0xff);
        *p++ = static_cast<std::uint8_t>(v >> 8);
    }
    std::string hdr =
        header_text(labels.width(), labels.height(), 1, "u16", std::nullopt, {});
    write_file(header_path, hdr.data(), hdr.size());
    write_file(raster_data_path(header_path), bytes.data(), bytes.size());
}

} // namespace lct
