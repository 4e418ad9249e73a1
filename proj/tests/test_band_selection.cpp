#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "generators.hpp"
#include "lct/band_selection.hpp"
#include "lct/scene.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using lct::SortOrder;

namespace {

const fs::path kFixtures = LCT_FIXTURE_DIR;

fs::path temp_dir()
{
    fs::path dir = fs::temp_directory_path() / "lct_band_tests";
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("band statistics use the population standard deviation")
{
    lct::MultibandImage image(2, 1, 2);
    image.band(1) = {5.0, 5.0};
    image.band(2) = {0.0, 2.0};
    auto stats = lct::band_statistics(image);
    REQUIRE(stats.size() == 2);
    CHECK(stats[0].band == 1);
    CHECK(stats[0].mean == 5.0);
    CHECK(stats[0].stddev == 0.0);
    CHECK(stats[0].count == 2);
    CHECK(stats[1].mean == 1.0);
    CHECK(stats[1].stddev == 1.0); // population, not sample
}

TEST_CASE("band statistics skip nodata and reject empty bands")
{
    lct::MultibandImage image(3, 1, 1);
    image.nodata = -1.0;
    image.band(1) = {-1.0, 4.0, 8.0};
    auto stats = lct::band_statistics(image);
    CHECK(stats[0].count == 2);
    CHECK(stats[0].mean == 6.0);
    CHECK(stats[0].stddev == 2.0);

    image.band(1) = {-1.0, -1.0, -1.0};
    CHECK_THROWS_WITH_AS(lct::band_statistics(image), doctest::Contains("band 1"),
                         std::runtime_error);
}

TEST_CASE("band statistics agree with the one-pass oracle on random images")
{
    gen::Rng rng(1001);
    for (int trial = 0; trial < 10; ++trial) {
        auto image = gen::random_image(rng, 16, 16, 4, 0.0, 500.0);
        auto stats = lct::band_statistics(image);
        for (int b = 1; b <= 4; ++b) {
            auto ref = oracle::naive_band_moments(image, b);
            CHECK(stats[b - 1].mean == doctest::Approx(ref.mean).epsilon(1e-12));
            CHECK(stats[b - 1].stddev == doctest::Approx(ref.stddev).epsilon(1e-9));
            CHECK(stats[b - 1].count == ref.count);
        }
    }
}

TEST_CASE("correlation hits the exact poles for linear bands")
{
    lct::MultibandImage image(4, 1, 3);
    image.band(1) = {1.0, 2.0, 3.0, 4.0};
    image.band(2) = {1.0, 2.0, 3.0, 4.0};          // identical
    image.band(3) = {9.0, 8.0, 7.0, 6.0};          // -band1 + 10
    auto corr = lct::correlation_matrix(image);
    CHECK(corr.at(1, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(corr.at(1, 3) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(corr.at(1, 1) == 1.0);
    CHECK(corr.at(2, 3) == corr.at(3, 2)); // symmetry
    CHECK_FALSE(corr.degenerate(1, 2));
}

TEST_CASE("constant bands make a pair degenerate, not infinite")
{
    lct::MultibandImage image(3, 1, 2);
    image.band(1) = {7.0, 7.0, 7.0};
    image.band(2) = {1.0, 2.0, 3.0};
    auto corr = lct::correlation_matrix(image);
    CHECK(corr.at(1, 2) == 0.0);
    CHECK(corr.degenerate(1, 2));
    CHECK_FALSE(corr.degenerate(2, 2));
}

TEST_CASE("independent scene bands decorrelate and match the oracle")
{
    lct::SceneSpec spec;
    spec.width = 64;
    spec.height = 64;
    spec.seed = 20260814;
    spec.classes = {{1, {100.0, 50.0}, {10.0, 7.0}, 1.0}};
    auto scene = lct::generate_scene(spec);

    auto corr = lct::correlation_matrix(scene.image);
    CHECK(std::abs(corr.at(1, 2)) < 0.1); // independent draws

    auto ref = oracle::naive_correlation(scene.image, 1, 2);
    CHECK_FALSE(ref.degenerate);
    CHECK(corr.at(1, 2) == doctest::Approx(ref.r).epsilon(1e-9));
}

TEST_CASE("correlation matrix respects bounds and nodata on random images")
{
    gen::Rng rng(77001);
    for (int trial = 0; trial < 8; ++trial) {
        auto image = gen::random_image(rng, 12, 12, 5, 0.0, 100.0);
        image.nodata = -5.0;
        // punch nodata holes in band 2
        for (std::size_t i = 0; i < image.pixel_count(); i += 7)
            image.band(2)[i] = -5.0;
        auto corr = lct::correlation_matrix(image);
        for (int a = 1; a <= 5; ++a)
            for (int b = 1; b <= 5; ++b) {
                CHECK(std::abs(corr.at(a, b)) <= 1.0);
                CHECK(corr.at(a, b) == corr.at(b, a));
                auto ref = oracle::naive_correlation(image, a, b);
                if (!ref.degenerate)
                    CHECK(corr.at(a, b) == doctest::Approx(ref.r).epsilon(1e-9));
            }
        for (int a = 1; a <= 5; ++a)
            CHECK(corr.at(a, a) == 1.0);
    }
}

TEST_CASE("combination enumeration is lexicographic and complete")
{
    auto combos73 = lct::enumerate_combinations(7, 3);
    CHECK(combos73.size() == 35);
    CHECK(combos73.front() == lct::BandCombo{1, 2, 3});
    CHECK(combos73.back() == lct::BandCombo{5, 6, 7});
    CHECK(std::is_sorted(combos73.begin(), combos73.end()));

    auto combos33 = lct::enumerate_combinations(3, 3);
    REQUIRE(combos33.size() == 1);
    CHECK(combos33[0] == lct::BandCombo{1, 2, 3});

    auto combos42 = lct::enumerate_combinations(4, 2);
    CHECK(combos42.size() == 6);
    CHECK(combos42.front() == lct::BandCombo{1, 2});
    CHECK(combos42.back() == lct::BandCombo{3, 4});

    CHECK_THROWS_WITH_AS(lct::enumerate_combinations(3, 4), doctest::Contains("choose"),
                         std::invalid_argument);
}

TEST_CASE("combo digits round-trip and reject malformed input")
{
    CHECK(lct::combo_digits({3, 4, 5}) == "345");
    CHECK(lct::parse_combo_digits("345") == lct::BandCombo{3, 4, 5});
    CHECK(lct::parse_combo_digits("17") == lct::BandCombo{1, 7});
    CHECK_THROWS_AS(lct::parse_combo_digits("354"), std::runtime_error);  // not increasing
    CHECK_THROWS_AS(lct::parse_combo_digits("3x5"), std::runtime_error);  // not a digit
    CHECK_THROWS_AS(lct::parse_combo_digits("305"), std::runtime_error);  // band 0
    CHECK_THROWS_AS(lct::parse_combo_digits(""), std::runtime_error);
}

TEST_CASE("oif score follows the sum-of-sigmas over sum-of-correlations form")
{
    std::vector<lct::BandStats> stats = {
        {1, 0.0, 1.0, 4}, {2, 0.0, 2.0, 4}, {3, 0.0, 3.0, 4}};
    lct::CorrelationMatrix corr(3);
    corr.set(1, 2, 1.0);
    corr.set(1, 3, -1.0);
    corr.set(2, 3, 1.0);

    auto record = lct::oif_score({1, 2, 3}, stats, corr);
    CHECK_FALSE(record.degenerate);
    CHECK(*record.oif == doctest::Approx(2.0).epsilon(1e-12)); // 6 / 3

    // three copies of one band: oif collapses to the shared sigma
    lct::MultibandImage image(4, 1, 3);
    image.band(1) = {0.0, 2.0, 4.0, 6.0};
    image.band(2) = image.band(1);
    image.band(3) = image.band(1);
    auto self = lct::oif_score({1, 2, 3}, lct::band_statistics(image),
                               lct::correlation_matrix(image));
    double sigma = lct::band_statistics(image)[0].stddev;
    CHECK(*self.oif == doctest::Approx(sigma).epsilon(1e-12));
}

TEST_CASE("zero correlation sums mark the record degenerate")
{
    std::vector<lct::BandStats> stats = {
        {1, 0.0, 1.0, 4}, {2, 0.0, 2.0, 4}, {3, 0.0, 3.0, 4}};
    lct::CorrelationMatrix corr(3);
    corr.set(1, 2, 0.0);
    corr.set(1, 3, 0.0);
    corr.set(2, 3, 0.0);
    auto record = lct::oif_score({1, 2, 3}, stats, corr);
    CHECK(record.degenerate);
    CHECK_FALSE(record.oif.has_value());
}

TEST_CASE("a dominant band wins every top combo and the full ranking matches the oracle")
{
    lct::SceneSpec spec;
    spec.width = 32;
    spec.height = 32;
    spec.seed = 424242;
    spec.classes = {{1,
                     {100.0, 100.0, 100.0, 100.0, 100.0, 100.0, 100.0},
                     {2.0, 2.0, 2.0, 20.0, 2.0, 2.0, 2.0},
                     1.0}};
    auto scene = lct::generate_scene(spec);

    auto ranking = lct::rank_combinations(scene.image, 3, SortOrder::Descending);
    REQUIRE(ranking.records.size() == 35);
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& combo = ranking.records[i].combo;
        CHECK(std::find(combo.begin(), combo.end(), 4) != combo.end());
    }

    auto ref = oracle::naive_rank(scene.image, 3, false);
    REQUIRE(ref.size() == 35);
    for (std::size_t i = 0; i < 35; ++i) {
        CHECK(lct::combo_digits(ranking.records[i].combo) == ref[i].combo);
        REQUIRE(ranking.records[i].oif.has_value());
        REQUIRE(ref[i].oif.has_value());
        CHECK(*ranking.records[i].oif == doctest::Approx(*ref[i].oif).epsilon(1e-9));
    }
}

TEST_CASE("scaling all bands rescales scores but never reorders")
{
    gen::Rng rng(5150);
    auto image = gen::random_image(rng, 24, 24, 5, 10.0, 200.0);
    auto base = lct::rank_combinations(image, 3, SortOrder::Descending);

    for (double c : {0.5, 3.0, 100.0}) {
        auto scaled_image = image;
        for (int b = 1; b <= 5; ++b)
            for (auto& v : scaled_image.band(b))
                v *= c;
        auto scaled = lct::rank_combinations(scaled_image, 3, SortOrder::Descending);
        REQUIRE(scaled.records.size() == base.records.size());
        for (std::size_t i = 0; i < base.records.size(); ++i) {
            CHECK(scaled.records[i].combo == base.records[i].combo);
            CHECK(*scaled.records[i].oif ==
                  doctest::Approx(*base.records[i].oif * c).epsilon(1e-9));
        }
    }
}

TEST_CASE("relabeling bands permutes combos but keeps the score multiset")
{
    gen::Rng rng(6001);
    auto image = gen::random_image(rng, 16, 16, 4, 0.0, 100.0);
    lct::MultibandImage reversed(16, 16, 4);
    for (int b = 1; b <= 4; ++b)
        reversed.band(b) = image.band(5 - b);

    auto original = lct::rank_combinations(image, 2, SortOrder::Ascending);
    auto permuted = lct::rank_combinations(reversed, 2, SortOrder::Ascending);
    std::vector<double> a, b;
    for (const auto& rec : original.records)
        a.push_back(*rec.oif);
    for (const auto& rec : permuted.records)
        b.push_back(*rec.oif);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("full-width combos rank as a single record")
{
    gen::Rng rng(7007);
    auto image = gen::random_image(rng, 8, 8, 3, 0.0, 50.0);
    auto ranking = lct::rank_combinations(image, 3, SortOrder::Ascending);
    REQUIRE(ranking.records.size() == 1);
    CHECK(ranking.records[0].combo == lct::BandCombo{1, 2, 3});
}

TEST_CASE("published 20-row table replays in its printed ascending order")
{
    auto rows = lct::read_oif_table_csv(kFixtures / "oif_wenbo_2008.csv");
    REQUIRE(rows.size() == 20);

    auto table = lct::rank_from_table(rows, SortOrder::Ascending, 10);
    REQUIRE(table.ranking.records.size() == 20);
    // the fixture file itself is stored in the published ascending order,
    // so sorting must reproduce the row sequence 1..20 exactly
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(table.ranking.records[i].combo == rows[i].first);
        CHECK(*table.ranking.records[i].oif == rows[i].second);
    }
    CHECK(table.ranking.records.back().combo == lct::BandCombo{3, 4, 5});
    CHECK(*table.ranking.records.back().oif == 29.230);

    auto desc = lct::rank_from_table(rows, SortOrder::Descending, 10);
    CHECK(desc.band_membership.at(4) == 8);
}

TEST_CASE("published 34-row table yields the documented extremes and membership")
{
    auto rows = lct::read_oif_table_csv(kFixtures / "oif_hobson_2003.csv");
    REQUIRE(rows.size() == 34);

    auto table = lct::rank_from_table(rows, SortOrder::Descending, 10);
    CHECK(table.ranking.records.front().combo == lct::BandCombo{4, 5, 6});
    CHECK(*table.ranking.records.front().oif == 57.3673);
    CHECK(table.ranking.records.back().combo == lct::BandCombo{1, 2, 3});
    CHECK(*table.ranking.records.back().oif == 12.6385);
    CHECK(table.band_membership.at(4) == 8);

    // membership across all bands accounts for every slot of every top combo
    std::size_t total = 0;
    for (const auto& [band, count] : table.band_membership)
        total += count;
    CHECK(total == 3 * table.top_k);
}

TEST_CASE("table replay rejects duplicates and empty input")
{
    CHECK_THROWS_WITH_AS(lct::rank_from_table({}, SortOrder::Ascending, 5),
                         doctest::Contains("empty"), std::invalid_argument);
    std::vector<std::pair<lct::BandCombo, double>> dup = {{{1, 2}, 1.0}, {{1, 2}, 2.0}};
    CHECK_THROWS_WITH_AS(lct::rank_from_table(dup, SortOrder::Ascending, 5),
                         doctest::Contains("duplicate combo 12"), std::invalid_argument);

    // top_k larger than the table clamps instead of failing
    std::vector<std::pair<lct::BandCombo, double>> two = {{{1, 2}, 1.0}, {{1, 3}, 2.0}};
    auto table = lct::rank_from_table(two, SortOrder::Descending, 10);
    CHECK(table.top_k == 2);
    CHECK(table.band_membership.at(1) == 2);
}

TEST_CASE("oif table csv parsing is strict about the header")
{
    fs::path path = temp_dir() / "table.csv";
    std::ofstream(path) << "combo,oif\n345,29.230\n123,12.832\n";
    auto rows = lct::read_oif_table_csv(path);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].first == lct::BandCombo{3, 4, 5});
    CHECK(rows[0].second == 29.230);

    std::ofstream(path) << "band,oif\n345,29.230\n";
    CHECK_THROWS_AS(lct::read_oif_table_csv(path), std::runtime_error);
    CHECK_THROWS_WITH_AS(lct::read_oif_table_csv(temp_dir() / "nope.csv"),
                         doctest::Contains("missing file:"), std::runtime_error);
}

TEST_CASE("ranking and membership csv output")
{
    lct::OifRanking ranking;
    ranking.order = SortOrder::Descending;
    ranking.records.push_back({{4, 5, 6}, 57.3673, false});
    ranking.records.push_back({{1, 2, 3}, std::nullopt, true});

    fs::path rank_path = temp_dir() / "ranking.csv";
    lct::write_ranking_csv(ranking, rank_path);
    std::ifstream in(rank_path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "rank,combo,oif,degenerate");
    std::getline(in, line);
    CHECK(line == "1,456,57.3673,0");
    std::getline(in, line);
    CHECK(line == "2,123,,1"); // degenerate records carry no score

    fs::path member_path = temp_dir() / "membership.csv";
    lct::write_membership_csv({{1, 0}, {4, 8}}, member_path);
    std::ifstream min(member_path);
    std::getline(min, line);
    CHECK(line == "band,count_in_topk");
    std::getline(min, line);
    CHECK(line == "1,0");
    std::getline(min, line);
    CHECK(line == "4,8");
}
