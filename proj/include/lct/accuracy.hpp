#ifndef LCT_ACCURACY_HPP
#define LCT_ACCURACY_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lct/classify.hpp"
#include "lct/raster.hpp"

namespace lct {

// Square count matrix, rows = reference, columns = predicted. Labels seen
// in only one raster get zero-filled rows/columns.
struct ConfusionMatrix {
    std::vector<std::uint16_t> labels; // sorted, distinct
    std::vector<std::size_t> counts;   // row-major, labels.size()^2
    std::size_t total = 0;

    std::size_t at(std::size_t row, std::size_t col) const
    {
        return counts[row * labels.size() + col];
    }
    std::size_t trace() const;
    std::optional<std::size_t> index_of(std::uint16_t label) const;
};

// Pixels with reference label 0 are skipped when ignore_zero_reference;
// predicted 0 always counts as a (wrong) prediction.
ConfusionMatrix confusion_matrix(const LabelRaster& reference, const LabelRaster& predicted,
                                 bool ignore_zero_reference = false);

struct LabelAccuracy {
    std::uint16_t label = 0;
    std::optional<double> producer; // diagonal / row sum
    std::optional<double> user;     // diagonal / column sum
};

struct AccuracyReport {
    double overall = 0.0;
    std::vector<LabelAccuracy> per_label;
    std::optional<double> kappa; // absent when expected agreement is 1
};

AccuracyReport accuracy_report(const ConfusionMatrix& cm);

// CSV with label headers on the first row and column.
void write_matrix_csv(const ConfusionMatrix& cm, const std::filesystem::path& path);
// CSV "metric,label,value"; absent metrics are omitted.
void write_report_csv(const AccuracyReport& report, const std::filesystem::path& path);

struct MethodScore {
    std::string method;
    double overall_accuracy = 0.0;
};

// Trains once, classifies with each config, assesses against truth.
// Rows come back sorted by descending overall accuracy.
std::vector<MethodScore> compare_methods(const MultibandImage& image, const TrainingSet& training,
                                         const LabelRaster& truth,
                                         const std::vector<ClassifierConfig>& configs);

} // namespace lct

#endif
