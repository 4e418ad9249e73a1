#include "lct/band_selection.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "lct/detail/text.hpp"

namespace lct {

namespace {

constexpr double kDegenerateTolerance = 1e-12;

void check_band(int band, int n, const char* what)
{
    if (band < 1 || band > n)
        throw std::out_of_range(std::string(what) + ": band " + std::to_string(band) +
                                " outside 1.." + std::to_string(n));
}

void check_combo(const BandCombo& combo)
{
    if (combo.empty())
        throw std::invalid_argument("empty band combination");
    for (std::size_t i = 1; i < combo.size(); ++i)
        if (combo[i] <= combo[i - 1])
            throw std::invalid_argument("combination " + combo_digits(combo) +
                                        " is not strictly increasing");
}

bool ranking_less(const OifRecord& a, const OifRecord& b, SortOrder order)
{
    if (a.degenerate != b.degenerate)
        return b.degenerate; // degenerate records sink to the end
    if (!a.degenerate && *a.oif != *b.oif)
        return order == SortOrder::Ascending ? *a.oif < *b.oif : *a.oif > *b.oif;
    return a.combo < b.combo;
}

} // namespace

std::vector<BandStats> band_statistics(const MultibandImage& image)
{
    image.validate();
    std::vector<BandStats> stats;
    stats.reserve(static_cast<std::size_t>(image.band_count()));
    for (int b = 1; b <= image.band_count(); ++b) {
        const auto& plane = image.band(b);
        double sum = 0.0;
        std::size_t count = 0;
        for (double v : plane) {
            if (image.is_nodata(v))
                continue;
            sum += v;
            ++count;
        }
        if (count == 0)
            throw std::runtime_error("band " + std::to_string(b) + " has no valid pixels");
        double mean = sum / static_cast<double>(count);
        double ss = 0.0;
        for (double v : plane) {
            if (image.is_nodata(v))
                continue;
            double d = v - mean;
            ss += d * d;
        }
        stats.push_back({b, mean, std::sqrt(ss / static_cast<double>(count)), count});
    }
    return stats;
}

CorrelationMatrix::CorrelationMatrix(int band_count) : n_(band_count)
{
    if (band_count < 1)
        throw std::invalid_argument("correlation matrix needs at least one band");
    entries_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
    degenerate_.assign(entries_.size(), 0);
    for (int b = 1; b <= n_; ++b)
        entries_[slot(b, b)] = 1.0;
}

std::size_t CorrelationMatrix::slot(int band_a, int band_b) const
{
    check_band(band_a, n_, "correlation");
    check_band(band_b, n_, "correlation");
    return static_cast<std::size_t>(band_a - 1) * n_ + (band_b - 1);
}

double CorrelationMatrix::at(int band_a, int band_b) const
{
    return entries_[slot(band_a, band_b)];
}

bool CorrelationMatrix::degenerate(int band_a, int band_b) const
{
    return degenerate_[slot(band_a, band_b)] != 0;
}

void CorrelationMatrix::set(int band_a, int band_b, double r, bool degenerate)
{
    entries_[slot(band_a, band_b)] = r;
    entries_[slot(band_b, band_a)] = r;
    degenerate_[slot(band_a, band_b)] = degenerate ? 1 : 0;
    degenerate_[slot(band_b, band_a)] = degenerate ? 1 : 0;
}

CorrelationMatrix correlation_matrix(const MultibandImage& image)
{
    image.validate();
    const int n = image.band_count();
    CorrelationMatrix corr(n);
    for (int a = 1; a <= n; ++a) {
        const auto& pa = image.band(a);
        for (int b = a + 1; b <= n; ++b) {
            const auto& pb = image.band(b);
            // Two-pass Pearson over pixels valid in both bands.
            double sum_a = 0.0, sum_b = 0.0;
            std::size_t count = 0;
            for (std::size_t i = 0; i < pa.size(); ++i) {
                if (image.is_nodata(pa[i]) || image.is_nodata(pb[i]))
                    continue;
                sum_a += pa[i];
                sum_b += pb[i];
                ++count;
            }
            if (count < 2) {
                corr.set(a, b, 0.0, true);
                continue;
            }
            double mean_a = sum_a / static_cast<double>(count);
            double mean_b = sum_b / static_cast<double>(count);
            double saa = 0.0, sbb = 0.0, sab = 0.0;
            for (std::size_t i = 0; i < pa.size(); ++i) {
                if (image.is_nodata(pa[i]) || image.is_nodata(pb[i]))
                    continue;
                double da = pa[i] - mean_a;
                double db = pb[i] - mean_b;
                saa += da * da;
                sbb += db * db;
                sab += da * db;
            }
            if (saa <= 0.0 || sbb <= 0.0) {
                corr.set(a, b, 0.0, true);
                continue;
            }
            double r = sab / std::sqrt(saa * sbb);
            corr.set(a, b, std::clamp(r, -1.0, 1.0), false);
        }
    }
    return corr;
}

std::vector<BandCombo> enumerate_combinations(int n, int r)
{
    if (r < 1 || n < 1)
        throw std::invalid_argument("combination sizes must be positive");
    if (r > n)
        throw std::invalid_argument("cannot choose " + std::to_string(r) + " bands from " +
                                    std::to_string(n));
    std::vector<BandCombo> combos;
    BandCombo current(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
        current[i] = i + 1;
    while (true) {
        combos.push_back(current);
        // advance the rightmost index that still has room
        int i = r - 1;
        while (i >= 0 && current[i] == n - (r - 1 - i))
            --i;
        if (i < 0)
            break;
        ++current[i];
        for (int j = i + 1; j < r; ++j)
            current[j] = current[j - 1] + 1;
    }
    return combos;
}

std::string combo_digits(const BandCombo& combo)
{
    std::string s;
    for (int b : combo)
        s += static_cast<char>('0' + b);
    return s;
}

BandCombo parse_combo_digits(std::string_view digits)
{
    std::string s = detail::trim(digits);
    if (s.empty())
        throw std::runtime_error("empty band combination");
    BandCombo combo;
    for (char c : s) {
        if (c < '1' || c > '9')
            throw std::runtime_error("bad band digit in combination '" + s + "'");
        combo.push_back(c - '0');
    }
    for (std::size_t i = 1; i < combo.size(); ++i)
        if (combo[i] <= combo[i - 1])
            throw std::runtime_error("combination '" + s + "' is not strictly increasing");
    return combo;
}

OifRecord oif_score(const BandCombo& combo, const std::vector<BandStats>& stats,
                    const CorrelationMatrix& corr)
{
    check_combo(combo);
    auto stddev_of = [&](int band) {
        for (const auto& s : stats)
            if (s.band == band)
                return s.stddev;
        throw std::out_of_range("no statistics for band " + std::to_string(band));
    };

    double stddev_sum = 0.0;
    for (int b : combo)
        stddev_sum += stddev_of(b);

    double corr_sum = 0.0;
    for (std::size_t i = 0; i < combo.size(); ++i)
        for (std::size_t j = i + 1; j < combo.size(); ++j)
            corr_sum += std::abs(corr.at(combo[i], combo[j]));

    OifRecord record{combo, std::nullopt, false};
    if (corr_sum < kDegenerateTolerance)
        record.degenerate = true;
    else
        record.oif = stddev_sum / corr_sum;
    return record;
}

OifRanking rank_combinations(const MultibandImage& image, int r, SortOrder order)
{
    auto stats = band_statistics(image);
    auto corr = correlation_matrix(image);

    OifRanking ranking;
    ranking.order = order;
    for (const auto& combo : enumerate_combinations(image.band_count(), r))
        ranking.records.push_back(oif_score(combo, stats, corr));
    std::sort(ranking.records.begin(), ranking.records.end(),
              [order](const OifRecord& a, const OifRecord& b) { return ranking_less(a, b, order); });
    return ranking;
}

TableRanking rank_from_table(const std::vector<std::pair<BandCombo, double>>& records,
                             SortOrder order, std::size_t top_k)
{
    if (records.empty())
        throw std::invalid_argument("empty ranking table");

    std::set<BandCombo> seen;
    TableRanking result;
    result.ranking.order = order;
    for (const auto& [combo, oif] : records) {
        check_combo(combo);
        if (!seen.insert(combo).second)
            throw std::invalid_argument("duplicate combo " + combo_digits(combo));
        result.ranking.records.push_back({combo, oif, false});
    }
    std::sort(result.ranking.records.begin(), result.ranking.records.end(),
              [order](const OifRecord& a, const OifRecord& b) { return ranking_less(a, b, order); });

    result.top_k = std::min(top_k, result.ranking.records.size());
    result.band_membership = band_membership(result.ranking, result.top_k);
    return result;
}

std::map<int, std::size_t> band_membership(const OifRanking& ranking, std::size_t top_k)
{
    int max_band = 0;
    for (const auto& rec : ranking.records)
        for (int b : rec.combo)
            max_band = std::max(max_band, b);

    std::map<int, std::size_t> counts;
    for (int b = 1; b <= max_band; ++b)
        counts[b] = 0;
    std::size_t k = std::min(top_k, ranking.records.size());
    for (std::size_t i = 0; i < k; ++i)
        for (int b : ranking.records[i].combo)
            ++counts[b];
    return counts;
}

std::vector<std::pair<BandCombo, double>> read_oif_table_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("missing file: " + path.string());
    std::string line;
    if (!std::getline(in, line) || detail::trim(line) != "combo,oif")
        throw std::runtime_error(path.string() + ": expected header 'combo,oif'");

    std::vector<std::pair<BandCombo, double>> records;
    while (std::getline(in, line)) {
        std::string s = detail::trim(line);
        if (s.empty())
            continue;
        auto cols = detail::split(s, ',');
        if (cols.size() != 2)
            throw std::runtime_error(path.string() + ": expected 'combo,oif', got '" + s + "'");
        records.emplace_back(parse_combo_digits(cols[0]), detail::parse_double(cols[1], "oif"));
    }
    if (records.empty())
        throw std::runtime_error(path.string() + ": no data rows");
    return records;
}

void write_ranking_csv(const OifRanking& ranking, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write: " + path.string());
    out << "rank,combo,oif,degenerate\n";
    for (std::size_t i = 0; i < ranking.records.size(); ++i) {
        const auto& rec = ranking.records[i];
        out << (i + 1) << ',' << combo_digits(rec.combo) << ','
            << (rec.oif ? detail::format_double(*rec.oif) : std::string()) << ','
            << (rec.degenerate ? 1 : 0) << '\n';
    }
    if (!out.flush())
        throw std::runtime_error("cannot write: " + path.string());
}

void write_membership_csv(const std::map<int, std::size_t>& membership,
                          const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write: " + path.string());
    out << "band,count_in_topk\n";
    for (const auto& [band, count] : membership)
        out << band << ',' << count << '\n';
    if (!out.flush())
        throw std::runtime_error("cannot write: " + path.string());
}

} // namespace lct
