#ifndef LCT_CLASSIFY_HPP
#define LCT_CLASSIFY_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <vector>

#include "lct/raster.hpp"

namespace lct {

struct TrainingSample {
    std::uint16_t label = 0;
    std::vector<double> features; // one value per band
};

struct TrainingSet {
    std::vector<TrainingSample> samples;
    int band_count = 0;
    std::vector<int> selected_bands; // empty = use every band

    void validate() const; // throws std::invalid_argument
};

// CSV with header "label,b1,b2,...,bN", one sample per row.
TrainingSet read_training_csv(const std::filesystem::path& path);

// Per-class statistics over the bands the signature was trained on.
// `bands` records which image bands feature j refers to.
struct ClassSignature {
    std::uint16_t label = 0;
    std::vector<int> bands;
    std::vector<double> mean;
    std::vector<double> stddev; // population
    std::vector<double> min;
    std::vector<double> max;
    std::size_t sample_count = 0;
};

// One signature per distinct label, ascending by label.
std::vector<ClassSignature> train_signatures(const TrainingSet& training);

// CSV "label,band,mean,stddev,min,max", one row per class/band.
void write_signatures_csv(const std::vector<ClassSignature>& signatures,
                          const std::filesystem::path& path);

enum class ClassifierMethod { Parallelepiped, MinimumDistance };
enum class BoxRule { MinMax, MeanSigma };
enum class OverlapRule { NearestMean, FirstMatch, Unclassified };

struct ClassifierConfig {
    ClassifierMethod method = ClassifierMethod::MinimumDistance;
    // parallelepiped only:
    BoxRule box_rule = BoxRule::MinMax;
    double sigma_k = 0.0; // MeanSigma half-width multiplier, must be > 0
    OverlapRule overlap_rule = OverlapRule::NearestMean;
    // minimum distance only:
    std::optional<double> max_distance;
};

std::string describe(const ClassifierConfig& config);

using ClassificationMap = LabelRaster;

// Euclidean nearest class mean; ties go to the lowest label. A pixel
// whose nearest mean is farther than max_distance (when set), or that
// touches the nodata sentinel, stays 0.
ClassificationMap classify_minimum_distance(const MultibandImage& image,
                                            const std::vector<ClassSignature>& signatures,
                                            const ClassifierConfig& config);

// Per-band interval boxes: MinMax uses [min, max], MeanSigma(k) uses
// [mean - k*sigma, mean + k*sigma], bounds inclusive. A pixel inside no
// box stays 0; inside several, the overlap rule decides.
ClassificationMap classify_parallelepiped(const MultibandImage& image,
                                          const std::vector<ClassSignature>& signatures,
                                          const ClassifierConfig& config);

// Label histogram, unclassified (0) included.
std::map<std::uint16_t, std::size_t> classification_map_stats(const LabelRaster& map);

} // namespace lct

#endif
