// fabricphys command line: garment-tag fabric attributes in, simulator-ready
// physics parameters out, with evaluation metrics and a desk-scale drape
// simulator.
//
// Exit codes: 0 success, 1 domain error, 2 I/O or usage error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fabricphys/docs.hpp"
#include "fabricphys/errors.hpp"
#include "fabricphys/metrics.hpp"
#include "fabricphys/rng.hpp"

namespace fp = fabricphys;
using fp::ordered_json;

namespace {

struct GlobalOptions {
    std::string config_path;
    std::string data_dir;
    bool quiet = false;
    bool strict = false;
};

struct Settings {
    double friction = 0.3;
    double damping = 1.0;
    std::string dt_mode = "mean";
    double dt_tol = 2.0;
    double voxel_mm = fp::kDefaultVoxelSizeMm;
    double bounds_margin = 0.1;
};

Settings load_settings(const GlobalOptions& global) {
    Settings s;
    std::string path = global.config_path;
    if (path.empty())
        if (const char* env = std::getenv("FABRICPHYS_CONFIG"); env && *env) path = env;
    if (path.empty()) return s;
    auto doc = fp::read_json_file(path);
    if (doc.contains("friction")) s.friction = doc.at("friction").get<double>();
    if (doc.contains("damping")) s.damping = doc.at("damping").get<double>();
    if (doc.contains("dt_mode")) s.dt_mode = doc.at("dt_mode").get<std::string>();
    if (doc.contains("dt_tol")) s.dt_tol = doc.at("dt_tol").get<double>();
    if (doc.contains("voxel_mm")) s.voxel_mm = doc.at("voxel_mm").get<double>();
    if (doc.contains("bounds_margin")) s.bounds_margin = doc.at("bounds_margin").get<double>();
    return s;
}

fp::Vocabularies load_vocabs(const GlobalOptions& global) {
    std::string dir = global.data_dir.empty() ? fp::default_data_dir() : global.data_dir;
    return fp::Vocabularies::load(dir);
}

std::ostream& info(const GlobalOptions& global) {
    static std::ostream null_stream(nullptr);
    return global.quiet ? null_stream : std::cout;
}

// --- ingest ---------------------------------------------------------------

int cmd_ingest(const GlobalOptions& global, const std::string& input, const std::string& format,
               const std::string& out) {
    auto vocabs = load_vocabs(global);
    fp::DatasetFormat f = fp::DatasetFormat::Auto;
    if (format == "csv") f = fp::DatasetFormat::Csv;
    if (format == "json") f = fp::DatasetFormat::Json;
    auto ds = fp::load_dataset(input, vocabs, f);
    fp::save_dataset_document(ds, out);
    info(global) << "ingested " << ds.size() << " records -> " << out << "\n";
    return 0;
}

// --- train ------------------------------------------------------------------

int cmd_train(const GlobalOptions& global, const std::string& dataset_path,
              const std::string& groups_arg, const std::string& search, int iters, int folds,
              std::uint64_t seed, const std::string& out_dir, const std::string& space_path) {
    if (folds < 2)
        fp::raise(fp::ErrorCode::UsageError, "--folds must be >= 2");
    auto vocabs = load_vocabs(global);
    auto ds = fp::load_dataset(dataset_path, vocabs);

    std::vector<fp::TargetGroup> groups;
    if (groups_arg == "all") {
        groups.assign(fp::kAllTargetGroups.begin(), fp::kAllTargetGroups.end());
    } else {
        std::stringstream ss(groups_arg);
        std::string name;
        while (std::getline(ss, name, ',')) groups.push_back(fp::parse_target_group(name));
    }

    auto split = fp::stratified_split(ds, {0.70, 0.15, 0.15}, fp::StratKey::Structure, seed);
    for (const auto& warning : split.warnings) info(global) << warning << "\n";

    fp::FabricDataset train, val;
    train.vocab_fingerprint = val.vocab_fingerprint = ds.vocab_fingerprint;
    for (auto i : split.train) train.records.push_back(ds.records[i]);
    for (auto i : split.val) val.records.push_back(ds.records[i]);

    auto layout = fp::FeatureLayout::from_vocabs(vocabs);
    auto Xt = fp::features_matrix(train, vocabs, layout);
    auto Xv = fp::features_matrix(val, vocabs, layout);

    std::filesystem::create_directories(out_dir);
    ordered_json search_report;
    info(global) << "group          n_est depth  val MAE (range-normalized)\n";

    for (fp::TargetGroup group : groups) {
        fp::ForestHyperparams hp = fp::default_hyperparams(group);
        if (search == "random") {
            fp::SearchSpace space;
            if (!space_path.empty()) space = fp::SearchSpace::load(space_path);
            auto [best, report] = fp::randomized_search(train, vocabs, group, space, iters, folds,
                                                        fp::derive_seed(seed, 0xA11));
            hp = best;
            ordered_json entries = ordered_json::array();
            for (const auto& entry : report.entries) {
                ordered_json e;
                e["n_estimators"] = entry.hp.n_estimators;
                e["max_depth"] = entry.hp.max_depth;
                e["min_samples_split"] = entry.hp.min_samples_split;
                e["min_samples_leaf"] = entry.hp.min_samples_leaf;
                e["max_features"] = entry.hp.max_features;
                e["cv_mae"] = entry.cv_mae;
                e["fold_mae"] = entry.fold_mae;
                entries.push_back(std::move(e));
            }
            ordered_json group_report;
            group_report["best_index"] = report.best_index;
            group_report["entries"] = std::move(entries);
            search_report[fp::to_string(group)] = std::move(group_report);
        }

        auto Yt = fp::targets_matrix(train, group);
        auto Yv = fp::targets_matrix(val, group);
        auto forest =
            fp::fit_forest(Xt, Yt, hp, fp::derive_seed(seed, static_cast<std::uint64_t>(group)));
        forest.target_names = fp::target_group_components(group);
        forest.feature_names = layout.names;
        forest.vocab_fingerprint = vocabs.fingerprint;

        // validation MAE, per component normalized by the train range
        std::vector<double> scale(Yt.cols, 1.0);
        for (std::size_t c = 0; c < Yt.cols; ++c) {
            double lo = Yt.at(0, c), hi = lo;
            for (std::size_t r = 1; r < Yt.rows; ++r) {
                lo = std::min(lo, Yt.at(r, c));
                hi = std::max(hi, Yt.at(r, c));
            }
            if (hi - lo > 0) scale[c] = 1.0 / (hi - lo);
        }
        double val_mae = 0.0;
        if (Xv.rows > 0) {
            std::vector<double> x(Xv.cols);
            for (std::size_t r = 0; r < Xv.rows; ++r) {
                for (std::size_t c = 0; c < Xv.cols; ++c) x[c] = Xv.at(r, c);
                auto pred = fp::predict(forest, x);
                for (std::size_t c = 0; c < Yv.cols; ++c)
                    val_mae += scale[c] * std::abs(pred[c] - Yv.at(r, c));
            }
            val_mae /= static_cast<double>(Xv.rows * Yv.cols);
        }

        fp::save_forest(forest, out_dir + "/" + fp::to_string(group) + ".json");
        char line[128];
        std::snprintf(line, sizeof(line), "%-14s %5d %5d  %.6f\n", fp::to_string(group).c_str(),
                      hp.n_estimators, hp.max_depth, val_mae);
        info(global) << line;
    }

    if (search == "random")
        fp::write_json_file(search_report, out_dir + "/search_report.json");
    info(global) << "models written to " << out_dir << "\n";
    return 0;
}

// --- predict ----------------------------------------------------------------

int cmd_predict(const GlobalOptions& global, const Settings& settings,
                const std::string& models_dir, const std::string& dataset_path,
                const std::string& attrs_path, const std::string& out_path, std::uint64_t seed,
                const std::string& bounds_path) {
    auto vocabs = load_vocabs(global);
    auto ds = fp::load_dataset(dataset_path, vocabs);
    auto models = fp::ModelSet::load(models_dir, vocabs.fingerprint);

    fp::PredictConfig config;
    config.friction = settings.friction;
    config.damping = settings.damping;
    config.dt_mode = settings.dt_mode == "cv" ? fp::select_mode_cv(ds, 5, seed).selected
                                              : fp::parse_aggregation_mode(settings.dt_mode);
    config.dt_tol = settings.dt_tol;
    config.seed = seed;
    config.bounds = bounds_path.empty() ? fp::default_bounds(ds, settings.bounds_margin)
                                        : fp::load_bounds(bounds_path);

    auto docs = fp::load_attribute_documents(attrs_path, vocabs, global.strict);
    bool array_input = fp::read_json_file(attrs_path).is_array();

    ordered_json out = ordered_json::array();
    for (const auto& doc : docs) {
        auto report = fp::validate_attributes(doc.attributes, vocabs);
        if (!report.ok()) {
            std::string msg = doc.id + ":";
            for (const auto& v : report.violations) msg += " [" + v.code + "] " + v.message + ";";
            fp::raise(fp::ErrorCode::ValidationError, msg);
        }
        auto prediction = fp::predict_physics(doc.attributes, models, ds, vocabs, config);
        out.push_back(fp::physics_to_json(doc.id, doc.attributes.composition, doc.attributes.family,
                                          doc.attributes.structure, prediction.params,
                                          &prediction.provenance));
    }
    fp::write_json_file(array_input ? out : out.front(), out_path);
    info(global) << "predicted physics for " << docs.size() << " garment(s) -> " << out_path << "\n";
    return 0;
}

// --- evaluate -----------------------------------------------------------------

ordered_json continuous_to_json(const fp::ContinuousError& err) {
    ordered_json j;
    j["mae"] = err.mae;
    if (err.nmae)
        j["nmae"] = *err.nmae;
    else
        j["nmae"] = nullptr;
    return j;
}

void write_report_csv(const ordered_json& report, const std::string& kind,
                      const std::string& path) {
    std::ofstream out(path);
    if (!out)
        fp::raise(fp::ErrorCode::IoError, "cannot write " + path);
    if (kind == "attributes") {
        out << "example,tp,fp,fn\n";
        std::size_t i = 0;
        for (const auto& row : report.at("per_example"))
            out << i++ << "," << row.at("tp") << "," << row.at("fp") << "," << row.at("fn") << "\n";
    } else if (kind == "geometry") {
        out << "frame,chamfer_x1e4,iou\n";
        for (const auto& row : report.at("frames"))
            out << row.at("frame") << "," << row.at("chamfer_x1e4") << "," << row.at("iou") << "\n";
    } else {
        out << "component,mae,nmae\n";
        for (const auto& name : fp::physics_component_names()) {
            const auto& row = report.at(name);
            out << name << "," << row.at("mae") << ","
                << (row.at("nmae").is_null() ? std::string("") : row.at("nmae").dump()) << "\n";
        }
    }
}

int cmd_evaluate(const GlobalOptions& global, const Settings& settings, const std::string& gt_path,
                 const std::string& pred_path, const std::string& kind,
                 const std::string& out_path, const std::string& csv_path) {
    ordered_json report;
    report["kind"] = kind;

    if (kind == "attributes") {
        auto vocabs = load_vocabs(global);
        auto gt = fp::load_attribute_documents(gt_path, vocabs, false);
        auto pred = fp::load_attribute_documents(pred_path, vocabs, false);
        if (gt.size() != pred.size())
            fp::raise(fp::ErrorCode::LengthMismatch, "gt and pred have different lengths");

        std::vector<fp::FiberComposition> gt_comp, pred_comp;
        std::vector<std::string> gt_family, pred_family, gt_structure, pred_structure;
        std::vector<double> gt_density, pred_density, gt_thickness, pred_thickness;
        bool all_scalars = true;
        for (std::size_t i = 0; i < gt.size(); ++i) {
            gt_comp.push_back(gt[i].attributes.composition);
            pred_comp.push_back(pred[i].attributes.composition);
            gt_family.push_back(gt[i].attributes.family);
            pred_family.push_back(pred[i].attributes.family);
            gt_structure.push_back(fp::to_string(gt[i].attributes.structure));
            pred_structure.push_back(fp::to_string(pred[i].attributes.structure));
            if (gt[i].attributes.density_gsm && pred[i].attributes.density_gsm &&
                gt[i].attributes.thickness_mm && pred[i].attributes.thickness_mm) {
                gt_density.push_back(*gt[i].attributes.density_gsm);
                pred_density.push_back(*pred[i].attributes.density_gsm);
                gt_thickness.push_back(*gt[i].attributes.thickness_mm);
                pred_thickness.push_back(*pred[i].attributes.thickness_mm);
            } else {
                all_scalars = false;
            }
        }

        auto material = fp::material_set_score(gt_comp, pred_comp);
        auto percent = fp::percentage_error(gt_comp, pred_comp);
        auto family = fp::categorical_scores(gt_family, pred_family, vocabs.families.canonical());
        auto structure = fp::categorical_scores(gt_structure, pred_structure, fp::structure_names());

        report["material"] = {{"accuracy", material.accuracy}, {"f1", material.f1}};
        report["percentage"] = {{"mae", percent.mae}, {"nmae", percent.nmae}};
        report["family"] = {{"accuracy", family.accuracy}, {"macro_f1", family.macro_f1}};
        report["structure"] = {{"accuracy", structure.accuracy}, {"macro_f1", structure.macro_f1}};
        if (all_scalars && !gt_density.empty()) {
            report["density"] = continuous_to_json(fp::continuous_error(gt_density, pred_density));
            report["thickness"] =
                continuous_to_json(fp::continuous_error(gt_thickness, pred_thickness));
        }
        ordered_json per_example = ordered_json::array();
        for (std::size_t i = 0; i < material.per_example.size(); ++i)
            per_example.push_back({{"tp", material.per_example[i].tp},
                                   {"fp", material.per_example[i].fp},
                                   {"fn", material.per_example[i].fn}});
        report["per_example"] = std::move(per_example);
        info(global) << "material accuracy " << material.accuracy << ", F1 " << material.f1 << "\n";
    } else if (kind == "physics") {
        auto gt_doc = fp::read_json_file(gt_path);
        auto pred_doc = fp::read_json_file(pred_path);
        auto rows = [](const ordered_json& doc) {
            std::vector<fp::PhysicsParams> out;
            if (doc.is_array())
                for (const auto& item : doc) out.push_back(fp::physics_from_json(item));
            else
                out.push_back(fp::physics_from_json(doc));
            return out;
        };
        auto gt = rows(gt_doc);
        auto pred = rows(pred_doc);
        if (gt.size() != pred.size())
            fp::raise(fp::ErrorCode::LengthMismatch, "gt and pred have different lengths");
        const auto& names = fp::physics_component_names();
        for (std::size_t c = 0; c < fp::kPhysicsComponentCount; ++c) {
            std::vector<double> g(gt.size()), p(gt.size());
            for (std::size_t i = 0; i < gt.size(); ++i) {
                g[i] = fp::get_physics_component(gt[i], c);
                p[i] = fp::get_physics_component(pred[i], c);
            }
            report[names[c]] = continuous_to_json(fp::continuous_error(g, p));
        }
        info(global) << "compared " << gt.size() << " parameter sets\n";
    } else if (kind == "geometry") {
        auto gt = fp::import_trajectory(gt_path);
        auto pred = fp::import_trajectory(pred_path);
        if (gt.frame_count() != pred.frame_count())
            fp::raise(fp::ErrorCode::ValidationError,
                      "frame count mismatch: " + std::to_string(gt.frame_count()) + " vs " +
                          std::to_string(pred.frame_count()));
        ordered_json frames = ordered_json::array();
        double chamfer_sum = 0.0, iou_sum = 0.0;
        for (std::size_t f = 0; f < gt.frame_count(); ++f) {
            double cd = fp::chamfer(gt.frames[f], pred.frames[f]) * 1e4; // report scale
            double iou =
                fp::voxel_iou(fp::frame_mesh(gt, f), fp::frame_mesh(pred, f), settings.voxel_mm);
            chamfer_sum += cd;
            iou_sum += iou;
            frames.push_back({{"frame", f}, {"chamfer_x1e4", cd}, {"iou", iou}});
        }
        report["frames"] = std::move(frames);
        report["mean_chamfer_x1e4"] = chamfer_sum / static_cast<double>(gt.frame_count());
        report["mean_iou"] = iou_sum / static_cast<double>(gt.frame_count());
        info(global) << "mean chamfer x1e4 " << report["mean_chamfer_x1e4"] << ", mean IoU "
                     << report["mean_iou"] << "\n";
    } else {
        fp::raise(fp::ErrorCode::UsageError, "unknown --kind '" + kind + "'");
    }

    fp::write_json_file(report, out_path);
    if (!csv_path.empty()) write_report_csv(report, kind, csv_path);
    return 0;
}

// --- simulate / crossval / baseline ----------------------------------------------

int cmd_simulate(const GlobalOptions& global, const std::string& scenario_path,
                 const std::string& out_dir, const std::string& format) {
    auto scenario = fp::load_scenario(scenario_path);
    auto traj = fp::simulate(scenario.cloth, scenario.params, scenario.config, scenario.duration_s);
    auto files = fp::export_trajectory(
        traj, out_dir,
        format == "json" ? fp::TrajectoryFormat::Json : fp::TrajectoryFormat::ObjSequence);
    info(global) << "simulated " << traj.frame_count() << " frames ("
                 << traj.frames.front().size() << " particles) -> " << files.size()
                 << " file(s) in " << out_dir << "\n";
    return 0;
}

int cmd_crossval(const GlobalOptions& global, const std::string& dataset_path, int folds,
                 std::uint64_t seed, const std::string& group_arg, int iters,
                 const std::string& space_path, const std::string& out_path) {
    auto vocabs = load_vocabs(global);
    auto ds = fp::load_dataset(dataset_path, vocabs);

    ordered_json report;
    auto modes = fp::select_mode_cv(ds, folds, seed);
    ordered_json mode_entries = ordered_json::array();
    info(global) << "density/thickness aggregation modes (range-normalized MAE):\n";
    for (const auto& entry : modes.entries) {
        mode_entries.push_back({{"mode", fp::to_string(entry.mode)},
                                {"mean_mae", entry.mean_mae},
                                {"fold_mae", entry.fold_mae}});
        info(global) << "  " << fp::to_string(entry.mode) << ": " << entry.mean_mae << "\n";
    }
    report["density_thickness"] = {{"selected", fp::to_string(modes.selected)},
                                   {"modes", std::move(mode_entries)}};
    info(global) << "selected mode: " << fp::to_string(modes.selected) << "\n";

    if (!group_arg.empty()) {
        std::vector<fp::TargetGroup> groups;
        if (group_arg == "all")
            groups.assign(fp::kAllTargetGroups.begin(), fp::kAllTargetGroups.end());
        else
            groups.push_back(fp::parse_target_group(group_arg));
        for (auto group : groups) {
            fp::SearchSpace space;
            if (!space_path.empty()) space = fp::SearchSpace::load(space_path);
            auto [best, search] = fp::randomized_search(ds, vocabs, group, space, iters, folds, seed);
            (void)best;
            ordered_json entries = ordered_json::array();
            for (const auto& entry : search.entries) {
                ordered_json e;
                e["n_estimators"] = entry.hp.n_estimators;
                e["max_depth"] = entry.hp.max_depth;
                e["min_samples_split"] = entry.hp.min_samples_split;
                e["min_samples_leaf"] = entry.hp.min_samples_leaf;
                e["max_features"] = entry.hp.max_features;
                e["cv_mae"] = entry.cv_mae;
                entries.push_back(std::move(e));
            }
            ordered_json group_report;
            group_report["best_index"] = search.best_index;
            group_report["entries"] = std::move(entries);
            report["search"][fp::to_string(group)] = std::move(group_report);
            info(global) << "search " << fp::to_string(group) << ": best cv MAE "
                         << search.entries[search.best_index].cv_mae << "\n";
        }
    }

    if (!out_path.empty()) fp::write_json_file(report, out_path);
    return 0;
}

int cmd_baseline(const GlobalOptions& global, const std::string& bounds_from,
                 const std::string& bounds_path, std::uint64_t seed, const std::string& out_path) {
    fp::ParamBounds bounds;
    if (!bounds_from.empty()) {
        auto vocabs = load_vocabs(global);
        bounds = fp::default_bounds(fp::load_dataset(bounds_from, vocabs));
    } else if (!bounds_path.empty()) {
        bounds = fp::load_bounds(bounds_path);
    } else {
        std::string dir = global.data_dir.empty() ? fp::default_data_dir() : global.data_dir;
        bounds = fp::load_bounds(dir + "/default_bounds.json");
    }
    auto params = fp::sample_random_physics(bounds, seed);
    fp::FiberComposition comp;
    comp.entries.push_back({"Polyester", 100.0});
    auto doc = fp::physics_to_json("random_baseline", comp, "unknown", fp::StructureType::Others,
                                   params, nullptr);
    fp::write_json_file(doc, out_path);
    info(global) << "random-parameter baseline -> " << out_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"garment-tag fabric attributes to simulator-ready physics parameters"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--config", global.config_path, "JSON config file (or FABRICPHYS_CONFIG)");
    app.add_option("--data-dir", global.data_dir, "vocabulary/data directory");
    app.add_flag("--quiet", global.quiet, "suppress human-readable summaries");
    app.add_flag("--strict", global.strict, "reject unknown keys in attribute documents");

    auto* ingest = app.add_subcommand("ingest", "validate and ingest a fabric dataset");
    std::string in_path, in_format = "auto", in_out = "dataset.json";
    ingest->add_option("--input", in_path, "CSV or JSON dataset")->required();
    ingest->add_option("--format", in_format, "csv|json|auto")
        ->check(CLI::IsMember({"csv", "json", "auto"}));
    ingest->add_option("--out", in_out, "output dataset document");

    auto* train = app.add_subcommand("train", "fit the five physics regressors");
    std::string tr_dataset, tr_groups = "all", tr_search = "fixed", tr_out = "models", tr_space;
    int tr_iters = 50, tr_folds = 5;
    std::uint64_t tr_seed = 0;
    train->add_option("--dataset", tr_dataset)->required();
    train->add_option("--groups", tr_groups, "all or comma list (bend,stretch,...)");
    train->add_option("--search", tr_search, "fixed|random")
        ->check(CLI::IsMember({"fixed", "random"}));
    train->add_option("--iters", tr_iters, "randomized search iterations");
    train->add_option("--folds", tr_folds, "cross-validation folds");
    train->add_option("--seed", tr_seed);
    train->add_option("--out", tr_out, "model output directory");
    train->add_option("--space", tr_space, "search space JSON");

    auto* predict = app.add_subcommand("predict", "map attribute documents to physics parameters");
    std::string pr_models, pr_dataset, pr_attrs, pr_out = "physics.json", pr_bounds, pr_dt_mode;
    double pr_dt_tol = -1;
    std::uint64_t pr_seed = 0;
    predict->add_option("--models", pr_models)->required();
    predict->add_option("--dataset", pr_dataset)->required();
    predict->add_option("--attrs", pr_attrs)->required();
    predict->add_option("--dt-mode", pr_dt_mode, "mean|median|random|cv");
    predict->add_option("--dt-tol", pr_dt_tol, "percent tolerance for exact-composition matches");
    predict->add_option("--seed", pr_seed);
    predict->add_option("--bounds", pr_bounds, "bounds JSON (default: dataset bounds)");
    predict->add_option("--out", pr_out);

    auto* evaluate = app.add_subcommand("evaluate", "score predictions against ground truth");
    std::string ev_gt, ev_pred, ev_kind, ev_out = "report.json";
    double ev_voxel = -1;
    evaluate->add_option("--gt", ev_gt)->required();
    evaluate->add_option("--pred", ev_pred)->required();
    evaluate->add_option("--kind", ev_kind, "attributes|physics|geometry")
        ->required()
        ->check(CLI::IsMember({"attributes", "physics", "geometry"}));
    evaluate->add_option("--voxel", ev_voxel, "voxel edge length (mm) for IoU");
    evaluate->add_option("--out", ev_out);
    std::string ev_csv;
    evaluate->add_option("--csv", ev_csv, "also write a flat CSV of the per-item scores");

    auto* simulate = app.add_subcommand("simulate", "run a drape scenario");
    std::string si_scenario, si_out = "frames", si_format = "obj";
    simulate->add_option("--scenario", si_scenario)->required();
    simulate->add_option("--out", si_out, "output directory");
    simulate->add_option("--format", si_format, "obj|json")->check(CLI::IsMember({"obj", "json"}));

    auto* crossval = app.add_subcommand("crossval", "mode selection and hyperparameter search");
    std::string cv_dataset, cv_group, cv_space, cv_out;
    int cv_folds = 5, cv_iters = 50;
    std::uint64_t cv_seed = 0;
    crossval->add_option("--dataset", cv_dataset)->required();
    crossval->add_option("--folds", cv_folds);
    crossval->add_option("--seed", cv_seed);
    crossval->add_option("--group", cv_group, "also search this target group (or 'all')");
    crossval->add_option("--iters", cv_iters);
    crossval->add_option("--space", cv_space, "search space JSON");
    crossval->add_option("--out", cv_out, "report JSON path");

    auto* baseline = app.add_subcommand("baseline", "sample random physics within bounds");
    std::string ba_bounds_from, ba_bounds, ba_out = "physics.json";
    std::uint64_t ba_seed = 0;
    baseline->add_option("--bounds-from", ba_bounds_from, "derive bounds from this dataset");
    baseline->add_option("--bounds", ba_bounds, "bounds JSON file");
    baseline->add_option("--seed", ba_seed);
    baseline->add_option("--out", ba_out);

    try {
        app.parse(argc, argv);

        Settings settings = load_settings(global);
        if (predict->parsed()) {
            if (!pr_dt_mode.empty()) settings.dt_mode = pr_dt_mode;
            if (pr_dt_tol >= 0) settings.dt_tol = pr_dt_tol;
        }
        if (evaluate->parsed() && ev_voxel > 0) settings.voxel_mm = ev_voxel;

        if (ingest->parsed()) return cmd_ingest(global, in_path, in_format, in_out);
        if (train->parsed())
            return cmd_train(global, tr_dataset, tr_groups, tr_search, tr_iters, tr_folds, tr_seed,
                             tr_out, tr_space);
        if (predict->parsed())
            return cmd_predict(global, settings, pr_models, pr_dataset, pr_attrs, pr_out, pr_seed,
                               pr_bounds);
        if (evaluate->parsed())
            return cmd_evaluate(global, settings, ev_gt, ev_pred, ev_kind, ev_out, ev_csv);
        if (simulate->parsed()) return cmd_simulate(global, si_scenario, si_out, si_format);
        if (crossval->parsed())
            return cmd_crossval(global, cv_dataset, cv_folds, cv_seed, cv_group, cv_iters, cv_space,
                                cv_out);
        if (baseline->parsed())
            return cmd_baseline(global, ba_bounds_from, ba_bounds, ba_seed, ba_out);
        return 2;
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const fp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.is_io_or_usage() ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
