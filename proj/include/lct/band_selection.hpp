#ifndef LCT_BAND_SELECTION_HPP
#define LCT_BAND_SELECTION_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "lct/raster.hpp"

namespace lct {

struct BandStats {
    int band = 0; // 1-based
    double mean = 0.0;
    double stddev = 0.0; // population standard deviation
    std::size_t count = 0;
};

// Per-band statistics over non-nodata pixels; a band with no valid
// pixels is an error.
std::vector<BandStats> band_statistics(const MultibandImage& image);

// Symmetric Pearson correlation matrix with unit diagonal, computed
// pairwise over pixels valid in both bands. A pair where either band is
// constant is stored as 0 with the degenerate flag set.
class CorrelationMatrix {
public:
    CorrelationMatrix() = default;
    explicit CorrelationMatrix(int band_count);

    int band_count() const { return n_; }
    double at(int band_a, int band_b) const;      // 1-based
    bool degenerate(int band_a, int band_b) const;
    void set(int band_a, int band_b, double r, bool degenerate = false);

private:
    std::size_t slot(int band_a, int band_b) const;

    int n_ = 0;
    std::vector<double> entries_;
    std::vector<std::uint8_t> degenerate_;
};

CorrelationMatrix correlation_matrix(const MultibandImage& image);

using BandCombo = std::vector<int>; // strictly increasing 1-based bands

// All C(n, r) strictly increasing combinations in lexicographic order.
std::vector<BandCombo> enumerate_combinations(int n, int r);

// "345" <-> {3,4,5}
std::string combo_digits(const BandCombo& combo);
BandCombo parse_combo_digits(std::string_view digits);

struct OifRecord {
    BandCombo combo;
    std::optional<double> oif; // unset when degenerate
    bool degenerate = false;
};

enum class SortOrder { Ascending, Descending };

// Optimum index factor: sum of band standard deviations over the sum of
// absolute pairwise correlations. A correlation sum below 1e-12 marks
// the record degenerate instead of producing an infinite score.
OifRecord oif_score(const BandCombo& combo, const std::vector<BandStats>& stats,
                    const CorrelationMatrix& corr);

struct OifRanking {
    std::vector<OifRecord> records; // sorted; degenerate records last
    SortOrder order = SortOrder::Descending;
};

OifRanking rank_combinations(const MultibandImage& image, int r, SortOrder order);

// Replay of an externally published (combo, OIF) table: sorts the rows
// and counts, per band, how many of the first top_k combos contain it.
struct TableRanking {
    OifRanking ranking;
    std::map<int, std::size_t> band_membership; // band -> count within top_k
    std::size_t top_k = 0;
};

TableRanking rank_from_table(const std::vector<std::pair<BandCombo, double>>& records,
                             SortOrder order, std::size_t top_k);

// Membership of the leading top_k records of an already sorted ranking.
std::map<int, std::size_t> band_membership(const OifRanking& ranking, std::size_t top_k);

// CSV "combo,oif" with combos as concatenated digits.
std::vector<std::pair<BandCombo, double>> read_oif_table_csv(const std::filesystem::path& path);
// CSV "rank,combo,oif,degenerate".
void write_ranking_csv(const OifRanking& ranking, const std::filesystem::path& path);
// CSV "band,count_in_topk".
void write_membership_csv(const std::map<int, std::size_t>& membership,
                          const std::filesystem::path& path);

} // namespace lct

#endif
