#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fabricphys/clothsim.hpp"
#include "fabricphys/physmap.hpp"
#include "fabricphys/tagparse.hpp"

namespace fabricphys {

using ordered_json = nlohmann::ordered_json;

/// One garment's attribute prediction: composition (array of {fiber,
/// percent} or tag string), family, structure, optional density_gsm /
/// thickness_mm, optional id. Strict mode rejects unknown keys.
struct AttributeDocument {
    std::string id;
    FabricAttributes attributes;
};

AttributeDocument parse_attribute_document(const ordered_json& doc, const Vocabularies& vocabs,
                                           bool strict);

/// Accepts a single object or an array of objects.
std::vector<AttributeDocument> load_attribute_documents(const std::string& path,
                                                        const Vocabularies& vocabs, bool strict);

ordered_json attributes_to_json(const std::string& id, const FabricAttributes& attrs);

/// Physics output document: the CSV schema fields plus a provenance block.
ordered_json physics_to_json(const std::string& id, const FiberComposition& composition,
                             const std::string& family, StructureType structure,
                             const PhysicsParams& params, const PhysicsProvenance* provenance);

PhysicsParams physics_from_json(const ordered_json& doc);

/// Simulation scenario: cloth spec + sim config + params (inline physics
/// object or "params_file" reference).
struct Scenario {
    ClothSpec cloth;
    SimConfig config;
    PhysicsParams params;
    double duration_s = 3.0;
};

Scenario load_scenario(const std::string& path);

ordered_json read_json_file(const std::string& path);
void write_json_file(const ordered_json& doc, const std::string& path, int indent = 2);

} // namespace fabricphys
