#include "fabricphys/docs.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include "fabricphys/errors.hpp"

namespace fabricphys {

ordered_json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        raise(ErrorCode::IoError, "cannot open " + path);
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::ValidationError, "malformed JSON in " + path + ": " + e.what());
    }
}

void write_json_file(const ordered_json& doc, const std::string& path, int indent) {
    std::ofstream out(path);
    if (!out)
        raise(ErrorCode::IoError, "cannot write " + path);
    out << doc.dump(indent) << "\n";
}

AttributeDocument parse_attribute_document(const ordered_json& doc, const Vocabularies& vocabs,
                                           bool strict) {
    if (!doc.is_object())
        raise(ErrorCode::ValidationError, "attribute document must be a JSON object");

    static const std::set<std::string> known = {"id",          "composition",  "family",
                                                "structure",   "density_gsm", "thickness_mm"};
    if (strict)
        for (auto it = doc.begin(); it != doc.end(); ++it)
            if (!known.count(it.key()))
                raise(ErrorCode::ValidationError, "unknown key '" + it.key() + "' (strict mode)");

    AttributeDocument out;
    try {
        out.id = doc.contains("id") ? doc.at("id").get<std::string>() : "";

        const auto& comp = doc.at("composition");
        if (comp.is_string()) {
            out.attributes.composition = parse_composition(comp.get<std::string>(), vocabs);
        } else if (comp.is_array()) {
            std::vector<std::pair<std::string, double>> entries;
            for (const auto& e : comp)
                entries.emplace_back(e.at("fiber").get<std::string>(), e.at("percent").get<double>());
            out.attributes.composition = make_composition(entries, vocabs);
        } else {
            raise(ErrorCode::ValidationError, "composition must be a string or an array");
        }

        out.attributes.family = normalize_family(doc.at("family").get<std::string>(), vocabs);
        auto structure = parse_structure(doc.at("structure").get<std::string>());
        if (!structure)
            raise(ErrorCode::ValidationError,
                  "unknown structure '" + doc.at("structure").get<std::string>() + "'");
        out.attributes.structure = *structure;
        if (doc.contains("density_gsm")) out.attributes.density_gsm = doc.at("density_gsm").get<double>();
        if (doc.contains("thickness_mm"))
            out.attributes.thickness_mm = doc.at("thickness_mm").get<double>();
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::ValidationError, std::string("bad attribute document: ") + e.what());
    }
    return out;
}

std::vector<AttributeDocument> load_attribute_documents(const std::string& path,
                                                        const Vocabularies& vocabs, bool strict) {
    auto doc = read_json_file(path);
    std::vector<AttributeDocument> out;
    if (doc.is_array()) {
        std::size_t index = 0;
        for (const auto& item : doc) {
            auto parsed = parse_attribute_document(item, vocabs, strict);
            if (parsed.id.empty()) parsed.id = "garment_" + std::to_string(index);
            out.push_back(std::move(parsed));
            ++index;
        }
    } else {
        auto parsed = parse_attribute_document(doc, vocabs, strict);
        if (parsed.id.empty()) parsed.id = "garment_0";
        out.push_back(std::move(parsed));
    }
    return out;
}

ordered_json attributes_to_json(const std::string& id, const FabricAttributes& attrs) {
    ordered_json doc;
    doc["id"] = id;
    ordered_json comp = ordered_json::array();
    for (const auto& e : attrs.composition.entries)
        comp.push_back({{"fiber", e.fiber}, {"percent", e.percent}});
    doc["composition"] = std::move(comp);
    doc["family"] = attrs.family;
    doc["structure"] = to_string(attrs.structure);
    if (attrs.density_gsm) doc["density_gsm"] = *attrs.density_gsm;
    if (attrs.thickness_mm) doc["thickness_mm"] = *attrs.thickness_mm;
    return doc;
}

ordered_json physics_to_json(const std::string& id, const FiberComposition& composition,
                             const std::string& family, StructureType structure,
                             const PhysicsParams& params, const PhysicsProvenance* provenance) {
    ordered_json doc;
    doc["id"] = id;
    doc["composition"] = render_composition(composition);
    doc["family"] = family;
    doc["structure"] = to_string(structure);
    const auto& names = physics_component_names();
    for (std::size_t i = 0; i < kPhysicsComponentCount; ++i)
        doc[names[i]] = get_physics_component(params, i);

    if (provenance) {
        ordered_json prov;
        if (provenance->density_thickness) {
            const auto& est = *provenance->density_thickness;
            prov["density_thickness"] = {{"match_level", to_string(est.level)},
                                         {"candidate_count", est.candidate_count},
                                         {"density_gsm", est.density_gsm},
                                         {"thickness_mm", est.thickness_mm}};
        }
        ordered_json clamps = ordered_json::array();
        for (const auto& c : provenance->clamps)
            clamps.push_back({{"component", c.component},
                              {"raw_value", c.raw_value},
                              {"clamped_value", c.clamped_value}});
        prov["clamps"] = std::move(clamps);
        prov["model_fingerprint"] = provenance->model_fingerprint;
        doc["provenance"] = std::move(prov);
    }
    return doc;
}

PhysicsParams physics_from_json(const ordered_json& doc) {
    PhysicsParams params;
    try {
        const auto& names = physics_component_names();
        for (std::size_t i = 0; i < kPhysicsComponentCount; ++i)
            set_physics_component(params, i, doc.at(names[i]).get<double>());
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::ValidationError, std::string("bad physics document: ") + e.what());
    }
    return params;
}

Scenario load_scenario(const std::string& path) {
    auto doc = read_json_file(path);
    Scenario scenario;
    try {
        const auto& cloth = doc.at("cloth");
        scenario.cloth.width_mm = cloth.at("width_mm").get<double>();
        scenario.cloth.height_mm = cloth.at("height_mm").get<double>();
        if (cloth.contains("spacing_mm")) scenario.cloth.spacing_mm = cloth.at("spacing_mm").get<double>();
        if (cloth.contains("pinned")) scenario.cloth.pinned = cloth.at("pinned").get<std::vector<int>>();
        if (cloth.contains("pin_top_edge") && cloth.at("pin_top_edge").get<bool>()) {
            // the j = 0 row; drape scenarios point v_dir away from it (downward)
            int nx = scenario.cloth.nx();
            for (int i = 0; i < nx; ++i) scenario.cloth.pinned.push_back(i);
        }
        auto vec3 = [](const ordered_json& v) { return Vec3{v.at(0), v.at(1), v.at(2)}; };
        if (cloth.contains("origin")) scenario.cloth.origin = vec3(cloth.at("origin"));
        if (cloth.contains("u_dir")) scenario.cloth.u_dir = vec3(cloth.at("u_dir"));
        if (cloth.contains("v_dir")) scenario.cloth.v_dir = vec3(cloth.at("v_dir"));

        if (doc.contains("config")) {
            const auto& cfg = doc.at("config");
            if (cfg.contains("frame_dt")) scenario.config.frame_dt = cfg.at("frame_dt").get<double>();
            if (cfg.contains("substeps")) scenario.config.substeps = cfg.at("substeps").get<int>();
            if (cfg.contains("gravity")) scenario.config.gravity = cfg.at("gravity").get<double>();
            if (cfg.contains("air_damping"))
                scenario.config.air_damping = cfg.at("air_damping").get<double>();
            if (cfg.contains("ground_height"))
                scenario.config.ground_height = cfg.at("ground_height").get<double>();
        }

        if (doc.contains("duration_s")) scenario.duration_s = doc.at("duration_s").get<double>();

        if (doc.contains("params_file")) {
            auto params_path = std::filesystem::path(path).parent_path() /
                               doc.at("params_file").get<std::string>();
            scenario.params = physics_from_json(read_json_file(params_path.string()));
        } else {
            scenario.params = physics_from_json(doc.at("params"));
        }
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::ValidationError, std::string("bad scenario: ") + e.what());
    }
    return scenario;
}

} // namespace fabricphys
