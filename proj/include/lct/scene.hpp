#ifndef LCT_SCENE_HPP
#define LCT_SCENE_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include "lct/raster.hpp"

namespace lct {

struct SceneClass {
    std::uint16_t label = 0;
    std::vector<double> mean;  // per band
    std::vector<double> sigma; // per band, >= 0
    double fraction = 0.0;     // share of pixels, (0, 1]
};

struct SceneSpec {
    std::vector<SceneClass> classes;
    int width = 0;
    int height = 0;
    std::uint64_t seed = 0;

    int band_count() const;
    void validate() const; // throws std::invalid_argument
};

struct Scene {
    MultibandImage image;
    LabelRaster truth;
};

// Deterministic synthetic scene: pixels are split into contiguous
// row-major blocks proportional to the class fractions, and each band
// value is drawn from N(mean, sigma) with a counter-based generator
// keyed on (seed, pixel, band). Output is a pure function of the spec.
Scene generate_scene(const SceneSpec& spec);

// Class table CSV: header "label,fraction,mean1..meanB,sigma1..sigmaB".
std::vector<SceneClass> read_scene_classes_csv(const std::filesystem::path& path);

} // namespace lct

#endif
