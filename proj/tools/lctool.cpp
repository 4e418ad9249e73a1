// lctool: batch front end for the landcover toolkit. Subcommands cover
// synthetic scene generation, spectral indices, OIF band ranking,
// supervised classification, accuracy assessment and the band
// recommendation table. Exit codes: 0 success, 1 usage error, 2 data error.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "lct/accuracy.hpp"
#include "lct/band_selection.hpp"
#include "lct/classify.hpp"
#include "lct/detail/text.hpp"
#include "lct/indices.hpp"
#include "lct/raster_io.hpp"
#include "lct/recommend.hpp"
#include "lct/scene.hpp"

namespace {

constexpr const char* kVersion = "lctool 1.0.0";

namespace fs = std::filesystem;

void add_version(CLI::App* app)
{
    app->set_version_flag("--version", kVersion);
}

fs::path sibling_with_suffix(const fs::path& header, const char* suffix)
{
    fs::path p = header;
    p.replace_extension();
    p += suffix;
    return p;
}

// Malformed flag values are usage errors, not data errors.
double flag_double(const std::string& token, const std::string& flag)
{
    try {
        return lct::detail::parse_double(token, flag);
    } catch (const std::exception& e) {
        throw CLI::ValidationError(e.what());
    }
}

std::vector<int> parse_band_list(const std::string& text)
{
    std::vector<int> bands;
    for (const auto& token : lct::detail::split(text, ',')) {
        try {
            bands.push_back(static_cast<int>(lct::detail::parse_long(token, "--bands entry")));
        } catch (const std::exception& e) {
            throw CLI::ValidationError(e.what());
        }
    }
    return bands;
}

lct::SortOrder parse_order(const std::string& name)
{
    return name == "asc" ? lct::SortOrder::Ascending : lct::SortOrder::Descending;
}

lct::OverlapRule parse_overlap(const std::string& name)
{
    if (name == "first")
        return lct::OverlapRule::FirstMatch;
    if (name == "none")
        return lct::OverlapRule::Unclassified;
    return lct::OverlapRule::NearestMean;
}

// "minmax" or "meansigma:<k>"
void apply_box_rule(lct::ClassifierConfig& config, const std::string& text)
{
    if (text == "minmax") {
        config.box_rule = lct::BoxRule::MinMax;
        return;
    }
    if (text.rfind("meansigma:", 0) == 0) {
        config.box_rule = lct::BoxRule::MeanSigma;
        config.sigma_k = flag_double(text.substr(10), "--box meansigma k");
        return;
    }
    throw CLI::ValidationError("--box", "expected minmax or meansigma:<k>, got '" + text + "'");
}

// Method tokens for `compare --methods`:
//   mindist [":" dmax]
//   parallelepiped [":" ("minmax" | "meansigma" ":" k)] [":" overlap]
lct::ClassifierConfig parse_method_token(const std::string& token)
{
    auto fields = lct::detail::split(token, ':');
    lct::ClassifierConfig config;
    if (fields.empty())
        throw CLI::ValidationError("--methods", "empty method token");

    if (fields[0] == "mindist") {
        config.method = lct::ClassifierMethod::MinimumDistance;
        if (fields.size() > 2)
            throw CLI::ValidationError("--methods", "too many fields in '" + token + "'");
        if (fields.size() == 2)
            config.max_distance = flag_double(fields[1], "--methods mindist dmax");
        return config;
    }
    if (fields[0] != "parallelepiped")
        throw CLI::ValidationError("--methods", "unknown method '" + fields[0] + "'");

    config.method = lct::ClassifierMethod::Parallelepiped;
    std::size_t next = 1;
    if (next < fields.size() && fields[next] == "minmax") {
        config.box_rule = lct::BoxRule::MinMax;
        ++next;
    } else if (next < fields.size() && fields[next] == "meansigma") {
        if (next + 1 >= fields.size())
            throw CLI::ValidationError("--methods", "meansigma needs a k value in '" + token + "'");
        config.box_rule = lct::BoxRule::MeanSigma;
        config.sigma_k = flag_double(fields[next + 1], "--methods meansigma k");
        next += 2;
    }
    if (next < fields.size()) {
        const std::string& overlap = fields[next];
        if (overlap != "nearest" && overlap != "first" && overlap != "none")
            throw CLI::ValidationError("--methods", "unknown overlap '" + overlap + "'");
        config.overlap_rule = parse_overlap(overlap);
        ++next;
    }
    if (next != fields.size())
        throw CLI::ValidationError("--methods", "trailing fields in '" + token + "'");
    return config;
}

void print_ranking(const lct::OifRanking& ranking, const std::map<int, std::size_t>& membership,
                   std::size_t top)
{
    std::size_t k = std::min(top, ranking.records.size());
    for (std::size_t i = 0; i < k; ++i) {
        const auto& rec = ranking.records[i];
        std::cout << (i + 1) << ',' << lct::combo_digits(rec.combo) << ','
                  << (rec.oif ? lct::detail::format_double(*rec.oif) : std::string()) << '\n';
    }
    for (const auto& [band, count] : membership)
        std::cout << "band" << band << ',' << count << '\n';
}

void setup_synth(CLI::App& app)
{
    auto* cmd = app.add_subcommand("synth", "Generate a synthetic scene with ground truth");
    add_version(cmd);
    auto spec_path = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    auto width = std::make_shared<int>(0);
    auto height = std::make_shared<int>(0);
    auto seed = std::make_shared<std::uint64_t>(0);
    cmd->add_option("--spec", *spec_path, "class table CSV (label,fraction,means,sigmas)")
        ->required();
    cmd->add_option("--width", *width, "scene width in pixels")->required();
    cmd->add_option("--height", *height, "scene height in pixels")->required();
    cmd->add_option("--seed", *seed, "generator seed")->required();
    cmd->add_option("--out", *out_path, "output raster header (.hdr)")->required();
    cmd->callback([=]() {
        lct::SceneSpec spec;
        spec.classes = lct::read_scene_classes_csv(*spec_path);
        spec.width = *width;
        spec.height = *height;
        spec.seed = *seed;
        lct::Scene scene = lct::generate_scene(spec);
        fs::path out(*out_path);
        fs::path truth = sibling_with_suffix(out, "_truth.hdr");
        lct::write_raster(scene.image, out);
        lct::write_label_raster(scene.truth, truth);
        std::cout << "scene: " << out.string() << '\n' << "truth: " << truth.string() << '\n';
    });
}

void setup_index(CLI::App& app)
{
    auto* cmd = app.add_subcommand("index", "Compute a spectral index raster");
    add_version(cmd);
    auto kind_name = std::make_shared<std::string>();
    auto savi_l = std::make_shared<double>(0.5);
    auto in_path = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    cmd->add_option("--kind", *kind_name, "index name (ndvi, savi, water_index, ...)")
        ->required()
        ->check([](const std::string& name) -> std::string {
            try {
                lct::parse_index_kind(name);
                return {};
            } catch (const std::exception& e) {
                return e.what();
            }
        });
    auto* savi_opt = cmd->add_option("--savi-l", *savi_l, "soil factor L (savi only)");
    cmd->add_option("--in", *in_path, "input raster header")->required();
    cmd->add_option("--out", *out_path, "output index header")->required();
    cmd->callback([=]() {
        lct::IndexKind kind = lct::parse_index_kind(*kind_name);
        if (savi_opt->count() > 0) {
            if (kind.id != lct::IndexId::Savi)
                throw CLI::ValidationError("--savi-l", "only applies to --kind savi");
            kind = lct::IndexKind::savi(*savi_l);
        }
        lct::MultibandImage image = lct::read_raster(*in_path);
        lct::IndexRaster raster = lct::compute_index_raster(image, kind);
        lct::write_index_raster(raster, *out_path);
        std::size_t masked = 0;
        for (auto m : raster.mask)
            masked += m;
        std::cout << "kind: " << lct::index_kind_name(kind) << '\n'
                  << "valid: " << (raster.pixel_count() - masked) << '\n'
                  << "masked: " << masked << '\n';
    });
}

void setup_oif(CLI::App& app)
{
    auto* cmd = app.add_subcommand("oif", "Rank band combinations by optimum index factor");
    add_version(cmd);
    auto in_path = std::make_shared<std::string>();
    auto table_path = std::make_shared<std::string>();
    auto r = std::make_shared<int>(3);
    auto order = std::make_shared<std::string>("desc");
    auto top = std::make_shared<std::size_t>(10);
    auto out_path = std::make_shared<std::string>();
    auto* in_opt = cmd->add_option("--in", *in_path, "input raster header");
    auto* table_opt =
        cmd->add_option("--from-table", *table_path, "replay a published combo,oif CSV");
    in_opt->excludes(table_opt);
    table_opt->excludes(in_opt);
    cmd->add_option("--r", *r, "combination size (with --in)");
    cmd->add_option("--order", *order, "sort order")
        ->check(CLI::IsMember({"asc", "desc"}));
    cmd->add_option("--top", *top, "membership window size");
    auto* out_opt = cmd->add_option("--out", *out_path, "ranking CSV output");
    cmd->callback([=]() {
        if (in_opt->count() == 0 && table_opt->count() == 0)
            throw CLI::RequiredError("oif needs --in or --from-table");
        lct::OifRanking ranking;
        std::map<int, std::size_t> membership;
        if (in_opt->count() > 0) {
            lct::MultibandImage image = lct::read_raster(*in_path);
            ranking = lct::rank_combinations(image, *r, parse_order(*order));
            membership = lct::band_membership(ranking, *top);
        } else {
            auto rows = lct::read_oif_table_csv(*table_path);
            lct::TableRanking table = lct::rank_from_table(rows, parse_order(*order), *top);
            ranking = std::move(table.ranking);
            membership = std::move(table.band_membership);
        }
        print_ranking(ranking, membership, *top);
        if (out_opt->count() > 0)
            lct::write_ranking_csv(ranking, *out_path);
    });
}

void setup_classify(CLI::App& app)
{
    auto* cmd = app.add_subcommand("classify", "Supervised classification of a raster");
    add_version(cmd);
    auto method = std::make_shared<std::string>();
    auto train_path = std::make_shared<std::string>();
    auto in_path = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    auto box = std::make_shared<std::string>("minmax");
    auto overlap = std::make_shared<std::string>("nearest");
    auto max_distance = std::make_shared<double>(0.0);
    auto bands = std::make_shared<std::string>();
    cmd->add_option("--method", *method, "classifier")
        ->required()
        ->check(CLI::IsMember({"parallelepiped", "mindist"}));
    cmd->add_option("--train", *train_path, "training sample CSV")->required();
    cmd->add_option("--in", *in_path, "input raster header")->required();
    cmd->add_option("--out", *out_path, "output label header")->required();
    cmd->add_option("--box", *box, "parallelepiped box rule: minmax or meansigma:<k>");
    cmd->add_option("--overlap", *overlap, "parallelepiped overlap rule")
        ->check(CLI::IsMember({"nearest", "first", "none"}));
    auto* dmax_opt =
        cmd->add_option("--max-distance", *max_distance, "mindist rejection radius");
    cmd->add_option("--bands", *bands, "band subset, e.g. 3,4,5");
    cmd->callback([=]() {
        lct::ClassifierConfig config;
        config.method = (*method == "mindist") ? lct::ClassifierMethod::MinimumDistance
                                               : lct::ClassifierMethod::Parallelepiped;
        apply_box_rule(config, *box);
        config.overlap_rule = parse_overlap(*overlap);
        if (dmax_opt->count() > 0)
            config.max_distance = *max_distance;

        lct::TrainingSet training = lct::read_training_csv(*train_path);
        if (!bands->empty())
            training.selected_bands = parse_band_list(*bands);
        auto signatures = lct::train_signatures(training);
        lct::MultibandImage image = lct::read_raster(*in_path);
        lct::ClassificationMap map =
            config.method == lct::ClassifierMethod::MinimumDistance
                ? lct::classify_minimum_distance(image, signatures, config)
                : lct::classify_parallelepiped(image, signatures, config);
        lct::write_label_raster(map, *out_path);
        std::cout << "method: " << lct::describe(config) << '\n';
        for (const auto& [label, count] : lct::classification_map_stats(map))
            std::cout << label << ',' << count << '\n';
    });
}

void setup_assess(CLI::App& app)
{
    auto* cmd = app.add_subcommand("assess", "Confusion matrix and accuracy metrics");
    add_version(cmd);
    auto pred_path = std::make_shared<std::string>();
    auto truth_path = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    auto ignore_zero = std::make_shared<bool>(false);
    cmd->add_option("--pred", *pred_path, "predicted label header")->required();
    cmd->add_option("--truth", *truth_path, "reference label header")->required();
    cmd->add_option("--out", *out_path, "report CSV output")->required();
    cmd->add_flag("--ignore-zero-ref", *ignore_zero, "skip pixels with reference label 0");
    cmd->callback([=]() {
        lct::LabelRaster predicted = lct::read_label_raster(*pred_path);
        lct::LabelRaster reference = lct::read_label_raster(*truth_path);
        lct::ConfusionMatrix cm = lct::confusion_matrix(reference, predicted, *ignore_zero);
        lct::AccuracyReport report = lct::accuracy_report(cm);
        lct::write_report_csv(report, *out_path);
        lct::write_matrix_csv(cm, sibling_with_suffix(*out_path, "_matrix.csv"));
        std::cout << "assessed," << cm.total << '\n'
                  << "overall," << lct::detail::format_double(report.overall) << '\n';
        if (report.kappa)
            std::cout << "kappa," << lct::detail::format_double(*report.kappa) << '\n';
    });
}

void setup_compare(CLI::App& app)
{
    auto* cmd = app.add_subcommand("compare", "Rank classifier configurations by accuracy");
    add_version(cmd);
    auto train_path = std::make_shared<std::string>();
    auto in_path = std::make_shared<std::string>();
    auto truth_path = std::make_shared<std::string>();
    auto methods = std::make_shared<std::vector<std::string>>();
    cmd->add_option("--train", *train_path, "training sample CSV")->required();
    cmd->add_option("--in", *in_path, "input raster header")->required();
    cmd->add_option("--truth", *truth_path, "reference label header")->required();
    cmd->add_option("--methods", *methods,
                    "method tokens: mindist[:<dmax>] | "
                    "parallelepiped[:minmax|:meansigma:<k>][:nearest|:first|:none]")
        ->required()
        ->expected(1, -1);
    cmd->callback([=]() {
        std::vector<lct::ClassifierConfig> configs;
        for (const auto& token : *methods)
            configs.push_back(parse_method_token(token));
        lct::TrainingSet training = lct::read_training_csv(*train_path);
        lct::MultibandImage image = lct::read_raster(*in_path);
        lct::LabelRaster truth = lct::read_label_raster(*truth_path);
        for (const auto& score : lct::compare_methods(image, training, truth, configs))
            std::cout << score.method << ',' << lct::detail::format_double(score.overall_accuracy)
                      << '\n';
    });
}

void setup_recommend(CLI::App& app)
{
    auto* cmd = app.add_subcommand("recommend", "Band combinations and indices for an object");
    add_version(cmd);
    auto object_name = std::make_shared<std::string>();
    std::vector<std::string> names;
    for (auto object : lct::all_landcover_objects)
        names.push_back(lct::landcover_object_name(object));
    cmd->add_option("--object", *object_name, "landcover object")
        ->required()
        ->check(CLI::IsMember(names));
    cmd->callback([=]() {
        auto object = lct::parse_landcover_object(*object_name);
        std::cout << lct::recommendation_text(lct::recommend(*object));
    });
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Multispectral landcover toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    setup_synth(app);
    setup_index(app);
    setup_oif(app);
    setup_classify(app);
    setup_assess(app);
    setup_compare(app);
    setup_recommend(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
