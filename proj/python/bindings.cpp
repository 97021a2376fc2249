// Python bindings for the fabricphys core: tag parsing, dataset handling,
// retrieval, forests, physics assembly, metrics and the drape simulator.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "fabricphys/docs.hpp"
#include "fabricphys/errors.hpp"
#include "fabricphys/metrics.hpp"
#include "fabricphys/rng.hpp"

namespace py = pybind11;
namespace fp = fabricphys;

namespace {

const fp::Vocabularies& vocabs() {
    static fp::Vocabularies v = fp::Vocabularies::load_default();
    return v;
}

std::vector<fp::Vec3> points_from_array(const py::array_t<double>& arr) {
    auto buf = arr.unchecked<2>();
    if (buf.shape(1) != 3)
        throw py::value_error("expected an (N, 3) array");
    std::vector<fp::Vec3> out(static_cast<std::size_t>(buf.shape(0)));
    for (py::ssize_t i = 0; i < buf.shape(0); ++i)
        out[static_cast<std::size_t>(i)] = {buf(i, 0), buf(i, 1), buf(i, 2)};
    return out;
}

fp::TriMesh mesh_from_arrays(const py::array_t<double>& verts, const py::array_t<int>& tris) {
    fp::TriMesh mesh;
    mesh.vertices = points_from_array(verts);
    auto t = tris.unchecked<2>();
    if (t.shape(1) != 3)
        throw py::value_error("expected an (M, 3) triangle index array");
    for (py::ssize_t i = 0; i < t.shape(0); ++i)
        mesh.triangles.push_back({t(i, 0), t(i, 1), t(i, 2)});
    return mesh;
}

std::vector<fp::FiberComposition> compositions_from_py(
    const std::vector<std::vector<std::pair<std::string, double>>>& raw) {
    std::vector<fp::FiberComposition> out;
    for (const auto& entries : raw) {
        fp::FiberComposition comp;
        for (const auto& [fiber, percent] : entries)
            comp.entries.push_back({fp::canonicalize_fiber(fiber, vocabs()), percent});
        out.push_back(std::move(comp));
    }
    return out;
}

fp::Matrix matrix_from_array(const py::array_t<double>& arr) {
    auto buf = arr.unchecked<2>();
    fp::Matrix m = fp::Matrix::zeros(static_cast<std::size_t>(buf.shape(0)),
                                     static_cast<std::size_t>(buf.shape(1)));
    for (py::ssize_t r = 0; r < buf.shape(0); ++r)
        for (py::ssize_t c = 0; c < buf.shape(1); ++c)
            m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = buf(r, c);
    return m;
}

fp::ForestHyperparams hyperparams_from_dict(const py::dict& d) {
    fp::ForestHyperparams hp;
    if (d.contains("n_estimators")) hp.n_estimators = d["n_estimators"].cast<int>();
    if (d.contains("max_depth")) hp.max_depth = d["max_depth"].cast<int>();
    if (d.contains("min_samples_split")) hp.min_samples_split = d["min_samples_split"].cast<double>();
    if (d.contains("min_samples_leaf")) hp.min_samples_leaf = d["min_samples_leaf"].cast<double>();
    if (d.contains("max_features")) hp.max_features = d["max_features"].cast<double>();
    if (d.contains("bootstrap")) hp.bootstrap = d["bootstrap"].cast<bool>();
    return hp;
}

fp::AttributeDocument attrs_from_json_str(const std::string& text, bool strict) {
    fp::ordered_json doc;
    try {
        doc = fp::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw py::value_error(std::string("bad attribute JSON: ") + e.what());
    }
    return fp::parse_attribute_document(doc, vocabs(), strict);
}

py::object json_to_py(const fp::ordered_json& j) {
    py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "fabric tag attributes to simulator-ready cloth physics";

    py::register_exception<fp::Error>(m, "FabricError");

    // --- tag parsing ---------------------------------------------------------
    m.def(
        "parse_composition",
        [](const std::string& text) {
            auto comp = fp::parse_composition(text, vocabs());
            std::vector<std::pair<std::string, double>> out;
            for (const auto& e : comp.entries) out.emplace_back(e.fiber, e.percent);
            return out;
        },
        py::arg("text"), "Parse a tag composition string into (fiber, percent) pairs.");
    m.def(
        "canonicalize_fiber",
        [](const std::string& raw) { return fp::canonicalize_fiber(raw, vocabs()); },
        py::arg("raw"));
    m.def(
        "normalize_family",
        [](const std::string& raw) { return fp::normalize_family(raw, vocabs()); },
        py::arg("raw"));
    m.def(
        "validate_attributes",
        [](const std::string& attrs_json, bool strict) {
            auto doc = attrs_from_json_str(attrs_json, strict);
            auto report = fp::validate_attributes(doc.attributes, vocabs());
            std::vector<std::string> out;
            for (const auto& v : report.violations) out.push_back(v.code + ": " + v.message);
            return out;
        },
        py::arg("attrs_json"), py::arg("strict") = false,
        "Validate an attribute document (JSON string); returns violation strings.");
    m.def("fiber_vocabulary", [] { return vocabs().fibers.canonical(); });
    m.def("family_vocabulary", [] { return vocabs().families.canonical(); });

    // --- dataset ---------------------------------------------------------------
    py::class_<fp::FabricDataset>(m, "Dataset")
        .def("__len__", [](const fp::FabricDataset& ds) { return ds.size(); })
        .def_property_readonly("ids",
                               [](const fp::FabricDataset& ds) {
                                   std::vector<std::string> ids;
                                   for (const auto& rec : ds.records) ids.push_back(rec.id);
                                   return ids;
                               })
        .def_property_readonly("vocab_fingerprint",
                               [](const fp::FabricDataset& ds) { return ds.vocab_fingerprint; });
    m.def(
        "load_dataset",
        [](const std::string& path) { return fp::load_dataset(path, vocabs()); },
        py::arg("path"));
    m.def(
        "featurize",
        [](const std::string& attrs_json) {
            auto doc = attrs_from_json_str(attrs_json, false);
            auto layout = fp::FeatureLayout::from_vocabs(vocabs());
            return fp::featurize(doc.attributes, vocabs(), layout);
        },
        py::arg("attrs_json"));
    m.def("feature_names",
          [] { return fp::FeatureLayout::from_vocabs(vocabs()).names; });

    // --- retrieval ---------------------------------------------------------------
    m.def(
        "estimate_density_thickness",
        [](const fp::FabricDataset& ds, const std::string& attrs_json, const std::string& mode,
           std::uint64_t seed, double tol) {
            auto doc = attrs_from_json_str(attrs_json, false);
            auto est = fp::estimate_density_thickness(doc.attributes, ds,
                                                      fp::parse_aggregation_mode(mode), seed, tol);
            py::dict out;
            out["density_gsm"] = est.density_gsm;
            out["thickness_mm"] = est.thickness_mm;
            out["match_level"] = fp::to_string(est.level);
            out["candidate_count"] = est.candidate_count;
            return out;
        },
        py::arg("dataset"), py::arg("attrs_json"), py::arg("mode") = "mean", py::arg("seed") = 0,
        py::arg("tol") = fp::kDefaultPercentTolerance);
    m.def(
        "select_mode_cv",
        [](const fp::FabricDataset& ds, int k, std::uint64_t seed) {
            auto report = fp::select_mode_cv(ds, k, seed);
            py::dict out;
            out["selected"] = fp::to_string(report.selected);
            py::dict modes;
            for (const auto& entry : report.entries)
                modes[py::str(fp::to_string(entry.mode))] = entry.mean_mae;
            out["mean_mae"] = modes;
            return out;
        },
        py::arg("dataset"), py::arg("k") = 5, py::arg("seed") = 0);

    // --- forests -----------------------------------------------------------------
    py::class_<fp::Forest>(m, "Forest")
        .def(
            "predict",
            [](const fp::Forest& forest, const std::vector<double>& x) {
                return fp::predict(forest, x);
            },
            py::arg("x"))
        .def("save", [](const fp::Forest& forest, const std::string& path) {
            fp::save_forest(forest, path);
        })
        .def_property_readonly("n_trees",
                               [](const fp::Forest& f) { return f.trees.size(); })
        .def_property_readonly("target_names",
                               [](const fp::Forest& f) { return f.target_names; });
    m.def(
        "fit_forest",
        [](const py::array_t<double>& X, const py::array_t<double>& Y, const py::dict& hp,
           std::uint64_t seed) {
            return fp::fit_forest(matrix_from_array(X), matrix_from_array(Y),
                                  hyperparams_from_dict(hp), seed);
        },
        py::arg("X"), py::arg("Y"), py::arg("hyperparams") = py::dict(), py::arg("seed") = 0);
    m.def(
        "load_forest",
        [](const std::string& path) { return fp::load_forest(path); },
        py::arg("path"));
    m.def("default_hyperparams", [](const std::string& group) {
        auto hp = fp::default_hyperparams(fp::parse_target_group(group));
        py::dict d;
        d["n_estimators"] = hp.n_estimators;
        d["max_depth"] = hp.max_depth;
        d["min_samples_split"] = hp.min_samples_split;
        d["min_samples_leaf"] = hp.min_samples_leaf;
        d["max_features"] = hp.max_features;
        return d;
    });

    // --- physics assembly ------------------------------------------------------------
    m.def(
        "predict_physics",
        [](const std::string& attrs_json, const std::string& models_dir,
           const fp::FabricDataset& ds, double friction, double damping, const std::string& dt_mode,
           double dt_tol, std::uint64_t seed) {
            auto doc = attrs_from_json_str(attrs_json, false);
            auto models = fp::ModelSet::load(models_dir, vocabs().fingerprint);
            fp::PredictConfig config;
            config.friction = friction;
            config.damping = damping;
            config.dt_mode = fp::parse_aggregation_mode(dt_mode);
            config.dt_tol = dt_tol;
            config.seed = seed;
            auto prediction = fp::predict_physics(doc.attributes, models, ds, vocabs(), config);
            return json_to_py(fp::physics_to_json(doc.id, doc.attributes.composition,
                                                  doc.attributes.family, doc.attributes.structure,
                                                  prediction.params, &prediction.provenance));
        },
        py::arg("attrs_json"), py::arg("models_dir"), py::arg("dataset"),
        py::arg("friction") = 0.3, py::arg("damping") = 1.0, py::arg("dt_mode") = "mean",
        py::arg("dt_tol") = fp::kDefaultPercentTolerance, py::arg("seed") = 0);
    m.def(
        "random_physics",
        [](const fp::FabricDataset& ds, std::uint64_t seed) {
            auto params = fp::sample_random_physics(fp::default_bounds(ds), seed);
            py::dict out;
            const auto& names = fp::physics_component_names();
            for (std::size_t i = 0; i < fp::kPhysicsComponentCount; ++i)
                out[py::str(names[i])] = fp::get_physics_component(params, i);
            return out;
        },
        py::arg("dataset"), py::arg("seed") = 0,
        "Sample a plausibility-bounded random parameter set (dataset bounds).");

    // --- metrics ---------------------------------------------------------------------
    m.def(
        "material_set_score",
        [](const std::vector<std::vector<std::pair<std::string, double>>>& gt,
           const std::vector<std::vector<std::pair<std::string, double>>>& pred) {
            auto score = fp::material_set_score(compositions_from_py(gt), compositions_from_py(pred));
            py::dict out;
            out["accuracy"] = score.accuracy;
            out["f1"] = score.f1;
            return out;
        },
        py::arg("gt"), py::arg("pred"));
    m.def(
        "percentage_error",
        [](const std::vector<std::vector<std::pair<std::string, double>>>& gt,
           const std::vector<std::vector<std::pair<std::string, double>>>& pred) {
            auto score = fp::percentage_error(compositions_from_py(gt), compositions_from_py(pred));
            py::dict out;
            out["mae"] = score.mae;
            out["nmae"] = score.nmae;
            return out;
        },
        py::arg("gt"), py::arg("pred"));
    m.def(
        "categorical_scores",
        [](const std::vector<std::string>& gt, const std::vector<std::string>& pred,
           const std::vector<std::string>& classes) {
            auto score = fp::categorical_scores(gt, pred, classes);
            py::dict out;
            out["accuracy"] = score.accuracy;
            out["macro_f1"] = score.macro_f1;
            return out;
        },
        py::arg("gt"), py::arg("pred"), py::arg("classes"));
    m.def(
        "continuous_error",
        [](const std::vector<double>& gt, const std::vector<double>& pred) {
            auto err = fp::continuous_error(gt, pred);
            py::dict out;
            out["mae"] = err.mae;
            out["nmae"] = err.nmae ? py::cast(*err.nmae) : py::none();
            return out;
        },
        py::arg("gt"), py::arg("pred"));
    m.def(
        "chamfer",
        [](const py::array_t<double>& a, const py::array_t<double>& b) {
            return fp::chamfer(points_from_array(a), points_from_array(b));
        },
        py::arg("a"), py::arg("b"), "Symmetric Chamfer distance between two point sets.");
    m.def(
        "voxel_iou",
        [](const py::array_t<double>& verts_a, const py::array_t<int>& tris_a,
           const py::array_t<double>& verts_b, const py::array_t<int>& tris_b, double voxel) {
            return fp::voxel_iou(mesh_from_arrays(verts_a, tris_a),
                                 mesh_from_arrays(verts_b, tris_b), voxel);
        },
        py::arg("verts_a"), py::arg("tris_a"), py::arg("verts_b"), py::arg("tris_b"),
        py::arg("voxel") = fp::kDefaultVoxelSizeMm);
    m.def(
        "weighted_cross_entropy",
        [](const std::vector<double>& probs, const std::vector<int>& targets,
           const std::vector<double>& weights) {
            return fp::weighted_cross_entropy(probs, targets, weights);
        },
        py::arg("token_probs"), py::arg("targets"), py::arg("class_weights"));
    m.def(
        "inverse_frequency_weights",
        [](const std::map<std::string, std::uint64_t>& counts) {
            return fp::inverse_frequency_weights(counts);
        },
        py::arg("class_counts"));

    // --- simulation -------------------------------------------------------------------
    m.def(
        "simulate_scenario",
        [](const std::string& scenario_path) {
            auto scenario = fp::load_scenario(scenario_path);
            auto traj =
                fp::simulate(scenario.cloth, scenario.params, scenario.config, scenario.duration_s);
            std::size_t n = traj.frames.front().size();
            py::array_t<double> frames({traj.frame_count(), n, static_cast<std::size_t>(3)});
            auto out = frames.mutable_unchecked<3>();
            for (std::size_t f = 0; f < traj.frame_count(); ++f)
                for (std::size_t p = 0; p < n; ++p) {
                    out(f, p, 0) = traj.frames[f][p].x;
                    out(f, p, 1) = traj.frames[f][p].y;
                    out(f, p, 2) = traj.frames[f][p].z;
                }
            py::array_t<int> faces({traj.faces.size(), static_cast<std::size_t>(3)});
            auto fo = faces.mutable_unchecked<2>();
            for (std::size_t t = 0; t < traj.faces.size(); ++t)
                for (std::size_t c = 0; c < 3; ++c) fo(t, c) = traj.faces[t][c];
            py::dict result;
            result["times"] = traj.times;
            result["frames"] = frames;
            result["faces"] = faces;
            return result;
        },
        py::arg("scenario_path"), "Run a drape scenario file; frames are (F, N, 3) mm.");
}
