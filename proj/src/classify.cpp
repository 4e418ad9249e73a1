#include "lct/classify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "lct/detail/text.hpp"

namespace lct {

namespace {

// Band values for one pixel restricted to `bands`; false when any of
// them carries the nodata sentinel.
bool gather_pixel(const MultibandImage& image, std::size_t pixel, const std::vector<int>& bands,
                  std::vector<double>& out)
{
    for (std::size_t j = 0; j < bands.size(); ++j) {
        double v = image.band(bands[j])[pixel];
        if (image.is_nodata(v))
            return false;
        out[j] = v;
    }
    return true;
}

double squared_distance(const std::vector<double>& a, const std::vector<double>& b)
{
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        d2 += d * d;
    }
    return d2;
}

// Signatures sorted ascending by label, with common band lists, checked
// against the image. Tie rules below rely on the ascending order.
std::vector<ClassSignature> prepare_signatures(const MultibandImage& image,
                                               const std::vector<ClassSignature>& signatures)
{
    if (signatures.empty())
        throw std::invalid_argument("no class signatures");
    auto sorted = signatures;
    std::sort(sorted.begin(), sorted.end(),
              [](const ClassSignature& a, const ClassSignature& b) { return a.label < b.label; });
    const auto& bands = sorted.front().bands;
    for (const auto& sig : sorted) {
        if (sig.bands != bands)
            throw std::invalid_argument("signatures trained on different band sets");
        if (sig.mean.size() != bands.size())
            throw std::invalid_argument("signature dimension mismatch for label " +
                                        std::to_string(sig.label));
        for (int b : bands)
            if (b < 1 || b > image.band_count())
                throw std::invalid_argument("signature band " + std::to_string(b) +
                                            " not present; image has " +
                                            std::to_string(image.band_count()) + " band(s)");
    }
    return sorted;
}

} // namespace

void TrainingSet::validate() const
{
    if (samples.empty())
        throw std::invalid_argument("empty training set");
    if (band_count < 1)
        throw std::invalid_argument("training set band count must be >= 1");
    for (const auto& s : samples) {
        if (s.label == 0)
            throw std::invalid_argument("training labels must be positive");
        if (static_cast<int>(s.features.size()) != band_count)
            throw std::invalid_argument("training sample for label " + std::to_string(s.label) +
                                        " has " + std::to_string(s.features.size()) +
                                        " features, expected " + std::to_string(band_count));
    }
    std::set<int> seen;
    for (int b : selected_bands) {
        if (b < 1 || b > band_count)
            throw std::invalid_argument("selected band " + std::to_string(b) + " outside 1.." +
                                        std::to_string(band_count));
        if (!seen.insert(b).second)
            throw std::invalid_argument("selected band " + std::to_string(b) + " repeated");
    }
}

TrainingSet read_training_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("missing file: " + path.string());

    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty training file: " + path.string());
    auto header = detail::split(detail::trim(line), ',');
    if (header.size() < 2 || detail::trim(header[0]) != "label")
        throw std::runtime_error(path.string() + ": expected header label,b1,...,bN");
    for (std::size_t i = 1; i < header.size(); ++i)
        if (detail::trim(header[i]) != "b" + std::to_string(i))
            throw std::runtime_error(path.string() + ": expected column b" + std::to_string(i) +
                                     ", got '" + header[i] + "'");

    TrainingSet training;
    training.band_count = static_cast<int>(header.size() - 1);
    while (std::getline(in, line)) {
        std::string s = detail::trim(line);
        if (s.empty())
            continue;
        auto cols = detail::split(s, ',');
        if (cols.size() != header.size())
            throw std::runtime_error(path.string() + ": row has " + std::to_string(cols.size()) +
                                     " columns, expected " + std::to_string(header.size()));
        TrainingSample sample;
        long label = detail::parse_long(cols[0], "label");
        if (label <= 0 || label > 65535)
            throw std::runtime_error(path.string() + ": label out of range: " + cols[0]);
        sample.label = static_cast<std::uint16_t>(label);
        for (std::size_t i = 1; i < cols.size(); ++i)
            sample.features.push_back(detail::parse_double(cols[i], "feature"));
        training.samples.push_back(std::move(sample));
    }
    training.validate();
    return training;
}

std::vector<ClassSignature> train_signatures(const TrainingSet& training)
{
    training.validate();

    std::vector<int> bands = training.selected_bands;
    if (bands.empty())
        for (int b = 1; b <= training.band_count; ++b)
            bands.push_back(b);
    std::sort(bands.begin(), bands.end());

    std::map<std::uint16_t, std::vector<const TrainingSample*>> by_label;
    for (const auto& s : training.samples)
        by_label[s.label].push_back(&s);

    std::vector<ClassSignature> signatures;
    for (const auto& [label, group] : by_label) {
        ClassSignature sig;
        sig.label = label;
        sig.bands = bands;
        sig.sample_count = group.size();
        const double n = static_cast<double>(group.size());
        for (int band : bands) {
            const std::size_t f = static_cast<std::size_t>(band - 1);
            double sum = 0.0, lo = group.front()->features[f], hi = lo;
            for (const auto* s : group) {
                double v = s->features[f];
                sum += v;
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            double mean = sum / n;
            double ss = 0.0;
            for (const auto* s : group) {
                double d = s->features[f] - mean;
                ss += d * d;
            }
            sig.mean.push_back(mean);
            sig.stddev.push_back(std::sqrt(ss / n));
            sig.min.push_back(lo);
            sig.max.push_back(hi);
        }
        signatures.push_back(std::move(sig));
    }
    return signatures;
}

void write_signatures_csv(const std::vector<ClassSignature>& signatures,
                          const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write: " + path.string());
    out << "label,band,mean,stddev,min,max\n";
    for (const auto& sig : signatures)
        for (std::size_t j = 0; j < sig.bands.size(); ++j)
            out << sig.label << ',' << sig.bands[j] << ',' << detail::format_double(sig.mean[j])
                << ',' << detail::format_double(sig.stddev[j]) << ','
                << detail::format_double(sig.min[j]) << ',' << detail::format_double(sig.max[j])
                << '\n';
    if (!out.flush())
        throw std::runtime_error("cannot write: " + path.string());
}

std::string describe(const ClassifierConfig& config)
{
    if (config.method == ClassifierMethod::MinimumDistance) {
        std::string s = "mindist";
        if (config.max_distance)
            s += "(dmax=" + detail::format_double(*config.max_distance) + ")";
        return s;
    }
    std::string box = config.box_rule == BoxRule::MinMax
                          ? "minmax"
                          : "meansigma:" + detail::format_double(config.sigma_k);
    std::string overlap = config.overlap_rule == OverlapRule::NearestMean ? "nearest"
                          : config.overlap_rule == OverlapRule::FirstMatch ? "first"
                                                                           : "none";
    return "parallelepiped(" + box + "," + overlap + ")";
}

ClassificationMap classify_minimum_distance(const MultibandImage& image,
                                            const std::vector<ClassSignature>& signatures,
                                            const ClassifierConfig& config)
{
    auto sigs = prepare_signatures(image, signatures);
    const auto& bands = sigs.front().bands;
    const bool has_max = config.max_distance.has_value();
    const double max_d2 = has_max ? *config.max_distance * *config.max_distance : 0.0;

    ClassificationMap map(image.width(), image.height());
    std::vector<double> pixel(bands.size());
    for (std::size_t i = 0; i < image.pixel_count(); ++i) {
        if (!gather_pixel(image, i, bands, pixel))
            continue;
        std::uint16_t best_label = 0;
        double best_d2 = 0.0;
        for (const auto& sig : sigs) {
            double d2 = squared_distance(pixel, sig.mean);
            if (best_label == 0 || d2 < best_d2) { // ties keep the lower label
                best_label = sig.label;
                best_d2 = d2;
            }
        }
        if (has_max && best_d2 > max_d2)
            continue;
        map.labels()[i] = best_label;
    }
    return map;
}

ClassificationMap classify_parallelepiped(const MultibandImage& image,
                                          const std::vector<ClassSignature>& signatures,
                                          const ClassifierConfig& config)
{
    auto sigs = prepare_signatures(image, signatures);
    const auto& bands = sigs.front().bands;

    if (config.box_rule == BoxRule::MeanSigma) {
        if (!(config.sigma_k > 0))
            throw std::invalid_argument("meansigma box rule needs k > 0");
        for (const auto& sig : sigs)
            if (sig.sample_count < 2)
                throw std::invalid_argument("label " + std::to_string(sig.label) + " has " +
                                            std::to_string(sig.sample_count) +
                                            " sample(s); meansigma boxes need at least 2");
    }

    struct Box {
        std::uint16_t label;
        std::vector<double> lo, hi;
        const std::vector<double>* mean;
    };
    std::vector<Box> boxes;
    for (const auto& sig : sigs) {
        Box box{sig.label, {}, {}, &sig.mean};
        for (std::size_t j = 0; j < bands.size(); ++j) {
            if (config.box_rule == BoxRule::MinMax) {
                box.lo.push_back(sig.min[j]);
                box.hi.push_back(sig.max[j]);
            } else {
                box.lo.push_back(sig.mean[j] - config.sigma_k * sig.stddev[j]);
                box.hi.push_back(sig.mean[j] + config.sigma_k * sig.stddev[j]);
            }
        }
        boxes.push_back(box);
    }

    ClassificationMap map(image.width(), image.height());
    std::vector<double> pixel(bands.size());
    std::vector<const Box*> hits;
    for (std::size_t i = 0; i < image.pixel_count(); ++i) {
        if (!gather_pixel(image, i, bands, pixel))
            continue;
        hits.clear();
        for (const auto& box : boxes) {
            bool inside = true;
            for (std::size_t j = 0; j < pixel.size() && inside; ++j)
                inside = pixel[j] >= box.lo[j] && pixel[j] <= box.hi[j];
            if (inside)
                hits.push_back(&box);
        }
        if (hits.empty())
            continue;
        if (hits.size() == 1) {
            map.labels()[i] = hits.front()->label;
            continue;
        }
        switch (config.overlap_rule) {
        case OverlapRule::NearestMean: {
            const Box* best = hits.front();
            double best_d2 = squared_distance(pixel, *best->mean);
            for (std::size_t h = 1; h < hits.size(); ++h) {
                double d2 = squared_distance(pixel, *hits[h]->mean);
                if (d2 < best_d2) { // ties keep the lower label
                    best = hits[h];
                    best_d2 = d2;
                }
            }
            map.labels()[i] = best->label;
            break;
        }
        case OverlapRule::FirstMatch:
            map.labels()[i] = hits.front()->label; // boxes are in ascending label order
            break;
        case OverlapRule::Unclassified:
            break;
        }
    }
    return map;
}

std::map<std::uint16_t, std::size_t> classification_map_stats(const LabelRaster& map)
{
    std::map<std::uint16_t, std::size_t> counts;
    for (std::uint16_t label : map.labels())
        ++counts[label];
    return counts;
}

} // namespace lct
