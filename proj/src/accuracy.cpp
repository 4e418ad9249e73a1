#include "lct/accuracy.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "lct/detail/text.hpp"

namespace lct {

std::size_t ConfusionMatrix::trace() const
{
    std::size_t t = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        t += at(i, i);
    return t;
}

std::optional<std::size_t> ConfusionMatrix::index_of(std::uint16_t label) const
{
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label)
        return std::nullopt;
    return static_cast<std::size_t>(it - labels.begin());
}

ConfusionMatrix confusion_matrix(const LabelRaster& reference, const LabelRaster& predicted,
                                 bool ignore_zero_reference)
{
    if (reference.width() != predicted.width() || reference.height() != predicted.height())
        throw std::invalid_argument("reference is " + std::to_string(reference.width()) + "x" +
                                    std::to_string(reference.height()) + " but prediction is " +
                                    std::to_string(predicted.width()) + "x" +
                                    std::to_string(predicted.height()));

    ConfusionMatrix cm;
    for (std::size_t i = 0; i < reference.pixel_count(); ++i) {
        std::uint16_t r = reference.labels()[i];
        if (ignore_zero_reference && r == 0)
            continue;
        cm.labels.push_back(r);
        cm.labels.push_back(predicted.labels()[i]);
    }
    std::sort(cm.labels.begin(), cm.labels.end());
    cm.labels.erase(std::unique(cm.labels.begin(), cm.labels.end()), cm.labels.end());

    cm.counts.assign(cm.labels.size() * cm.labels.size(), 0);
    for (std::size_t i = 0; i < reference.pixel_count(); ++i) {
        std::uint16_t r = reference.labels()[i];
        if (ignore_zero_reference && r == 0)
            continue;
        std::size_t row = *cm.index_of(r);
        std::size_t col = *cm.index_of(predicted.labels()[i]);
        ++cm.counts[row * cm.labels.size() + col];
        ++cm.total;
    }
    if (cm.total == 0)
        throw std::runtime_error("nothing assessable: no reference pixels to compare");
    return cm;
}

AccuracyReport accuracy_report(const ConfusionMatrix& cm)
{
    AccuracyReport report;
    if (cm.total == 0)
        throw std::invalid_argument("empty confusion matrix");

    const std::size_t n = cm.labels.size();
    std::vector<std::size_t> row_sum(n, 0), col_sum(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            row_sum[i] += cm.at(i, j);
            col_sum[j] += cm.at(i, j);
        }

    const double total = static_cast<double>(cm.total);
    report.overall = static_cast<double>(cm.trace()) / total;

    for (std::size_t i = 0; i < n; ++i) {
        LabelAccuracy acc;
        acc.label = cm.labels[i];
        if (row_sum[i] > 0)
            acc.producer = static_cast<double>(cm.at(i, i)) / static_cast<double>(row_sum[i]);
        if (col_sum[i] > 0)
            acc.user = static_cast<double>(cm.at(i, i)) / static_cast<double>(col_sum[i]);
        report.per_label.push_back(acc);
    }

    // Chance agreement equals 1 exactly when sum(row_i * col_i) == total^2;
    // the integer comparison avoids declaring 1 - pe == 0 through rounding.
    std::size_t pe_num = 0;
    for (std::size_t i = 0; i < n; ++i)
        pe_num += row_sum[i] * col_sum[i];
    if (pe_num != cm.total * cm.total) {
        double pe = static_cast<double>(pe_num) / (total * total);
        report.kappa = (report.overall - pe) / (1.0 - pe);
    }
    return report;
}

void write_matrix_csv(const ConfusionMatrix& cm, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write: " + path.string());
    out << "reference\\predicted";
    for (std::uint16_t label : cm.labels)
        out << ',' << label;
    out << '\n';
    for (std::size_t i = 0; i < cm.labels.size(); ++i) {
        out << cm.labels[i];
        for (std::size_t j = 0; j < cm.labels.size(); ++j)
            out << ',' << cm.at(i, j);
        out << '\n';
    }
    if (!out.flush())
        throw std::runtime_error("cannot write: " + path.string());
}

void write_report_csv(const AccuracyReport& report, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write: " + path.string());
    out << "metric,label,value\n";
    out << "overall,," << detail::format_double(report.overall) << '\n';
    for (const auto& acc : report.per_label) {
        if (acc.producer)
            out << "producer," << acc.label << ',' << detail::format_double(*acc.producer) << '\n';
        if (acc.user)
            out << "user," << acc.label << ',' << detail::format_double(*acc.user) << '\n';
    }
    if (report.kappa)
        out << "kappa,," << detail::format_double(*report.kappa) << '\n';
    if (!out.flush())
        throw std::runtime_error("cannot write: " + path.string());
}

std::vector<MethodScore> compare_methods(const MultibandImage& image, const TrainingSet& training,
                                         const LabelRaster& truth,
                                         const std::vector<ClassifierConfig>& configs)
{
    auto signatures = train_signatures(training);
    std::vector<MethodScore> scores;
    for (const auto& config : configs) {
        ClassificationMap map = config.method == ClassifierMethod::MinimumDistance
                                    ? classify_minimum_distance(image, signatures, config)
                                    : classify_parallelepiped(image, signatures, config);
        auto report = accuracy_report(confusion_matrix(truth, map));
        scores.push_back({describe(config), report.overall});
    }
    std::stable_sort(scores.begin(), scores.end(), [](const MethodScore& a, const MethodScore& b) {
        return a.overall_accuracy > b.overall_accuracy;
    });
    return scores;
}

} // namespace lct
