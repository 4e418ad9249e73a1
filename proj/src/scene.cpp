#include "lct/scene.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>

#include "lct/detail/text.hpp"

namespace lct {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Standard normal deviate from a counter-based hash of (seed, pixel, band),
// so generation order never matters. Box-Muller with u1 in (0,1].
double normal_deviate(std::uint64_t seed, std::uint64_t pixel, std::uint64_t band)
{
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ (pixel + 1));
    h = mix64(h ^ (band + 1));
    double u1 = static_cast<double>((h >> 11) + 1) * 0x1p-53;
    double u2 = static_cast<double>(mix64(h) >> 11) * 0x1p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

} // namespace

int SceneSpec::band_count() const
{
    return classes.empty() ? 0 : static_cast<int>(classes.front().mean.size());
}

void SceneSpec::validate() const
{
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("scene dimensions must be positive");
    if (classes.empty())
        throw std::invalid_argument("scene needs at least one class");

    const std::size_t bands = classes.front().mean.size();
    if (bands == 0)
        throw std::invalid_argument("classes need at least one band");

    std::set<std::uint16_t> seen;
    double fraction_sum = 0.0;
    for (const auto& cls : classes) {
        if (cls.label == 0)
            throw std::invalid_argument("class labels must be positive");
        if (!seen.insert(cls.label).second)
            throw std::invalid_argument("duplicate class label " + std::to_string(cls.label));
        if (cls.mean.size() != bands || cls.sigma.size() != bands)
            throw std::invalid_argument("band-count mismatch between classes: label " +
                                        std::to_string(cls.label) + " has " +
                                        std::to_string(cls.mean.size()) + "/" +
                                        std::to_string(cls.sigma.size()) + " entries, expected " +
                                        std::to_string(bands));
        for (double s : cls.sigma)
            if (s < 0)
                throw std::invalid_argument("sigma must be >= 0 for label " +
                                            std::to_string(cls.label));
        if (!(cls.fraction > 0.0) || cls.fraction > 1.0)
            throw std::invalid_argument("fraction must be in (0,1] for label " +
                                        std::to_string(cls.label));
        fraction_sum += cls.fraction;
    }
    if (std::abs(fraction_sum - 1.0) > 1e-9)
        throw std::invalid_argument("fractions sum to " + detail::format_double(fraction_sum) +
                                    ", expected 1");
}

Scene generate_scene(const SceneSpec& spec)
{
    spec.validate();
    const int bands = spec.band_count();
    const std::size_t total = static_cast<std::size_t>(spec.width) * spec.height;

    Scene scene{MultibandImage(spec.width, spec.height, bands),
                LabelRaster(spec.width, spec.height)};

    // Contiguous row-major blocks, cut at the rounded cumulative fraction.
    std::size_t start = 0;
    double cumulative = 0.0;
    for (std::size_t c = 0; c < spec.classes.size(); ++c) {
        const auto& cls = spec.classes[c];
        cumulative += cls.fraction;
        std::size_t end = (c + 1 == spec.classes.size())
                              ? total
                              : static_cast<std::size_t>(std::llround(cumulative * total));
        if (end > total)
            end = total;
        for (std::size_t p = start; p < end; ++p) {
            scene.truth.labels()[p] = cls.label;
            for (int b = 0; b < bands; ++b) {
                double value = cls.mean[b];
                if (cls.sigma[b] > 0)
                    value += cls.sigma[b] * normal_deviate(spec.seed, p, b);
                scene.image.band(b + 1)[p] = value;
            }
        }
        start = end;
    }
    return scene;
}

std::vector<SceneClass> read_scene_classes_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("missing file: " + path.string());

    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty class table: " + path.string());
    auto header = detail::split(detail::trim(line), ',');
    if (header.size() < 4 || detail::trim(header[0]) != "label" ||
        detail::trim(header[1]) != "fraction" || (header.size() - 2) % 2 != 0)
        throw std::runtime_error(path.string() +
                                 ": expected header label,fraction,mean1..meanB,sigma1..sigmaB");
    const std::size_t bands = (header.size() - 2) / 2;

    std::vector<SceneClass> classes;
    while (std::getline(in, line)) {
        std::string s = detail::trim(line);
        if (s.empty())
            continue;
        auto cols = detail::split(s, ',');
        if (cols.size() != header.size())
            throw std::runtime_error(path.string() + ": row has " + std::to_string(cols.size()) +
                                     " columns, expected " + std::to_string(header.size()));
        SceneClass cls;
        long label = detail::parse_long(cols[0], "label");
        if (label <= 0 || label > 65535)
            throw std::runtime_error(path.string() + ": label out of range: " + cols[0]);
        cls.label = static_cast<std::uint16_t>(label);
        cls.fraction = detail::parse_double(cols[1], "fraction");
        for (std::size_t b = 0; b < bands; ++b)
            cls.mean.push_back(detail::parse_double(cols[2 + b], "mean"));
        for (std::size_t b = 0; b < bands; ++b)
            cls.sigma.push_back(detail::parse_double(cols[2 + bands + b], "sigma"));
        classes.push_back(std::move(cls));
    }
    return classes;
}

} // namespace lct
