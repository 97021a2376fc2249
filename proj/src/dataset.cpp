#include "fabricphys/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fabricphys/errors.hpp"
#include "fabricphys/rng.hpp"

namespace fabricphys {

using ordered_json = nlohmann::ordered_json;

const std::vector<std::string>& dataset_csv_columns() {
    static const std::vector<std::string> cols = {
        "id", "composition", "family", "structure", "density_gsm", "thickness_mm",
        "friction", "damping",
        "buckle_stiff_bias_l", "buckle_stiff_bias_r", "buckle_stiff_warp", "buckle_stiff_weft",
        "buckle_ratio_bias_l", "buckle_ratio_bias_r", "buckle_ratio_warp", "buckle_ratio_weft",
        "bend_bias_l", "bend_bias_r", "bend_warp", "bend_weft",
        "shear_l", "shear_r", "stretch_warp", "stretch_weft",
    };
    return cols;
}

namespace {

// --- CSV ------------------------------------------------------------------

std::vector<std::string> parse_csv_line(const std::string& line, std::size_t row) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty()) {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\r' && i + 1 == line.size()) {
            // tolerate CRLF
        } else {
            field.push_back(c);
        }
    }
    if (quoted)
        raise(ErrorCode::SchemaError, "row " + std::to_string(row) + ": unterminated quote");
    fields.push_back(std::move(field));
    return fields;
}

std::string csv_escape(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

double parse_number(const std::string& text, const std::string& column, std::size_t row) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
        if (used != text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        raise(ErrorCode::ValidationError,
              "row " + std::to_string(row) + ": non-numeric " + column + " '" + text + "'");
    }
}

/// Re-tag per-row domain errors with the row index; I/O and schema problems
/// pass through untouched.
template <typename Fn>
auto with_row_diagnostics(std::size_t row, Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::IoError || e.code() == ErrorCode::SchemaError) throw;
        std::string what = e.what();
        if (what.find("row " + std::to_string(row)) != std::string::npos) throw;
        raise(ErrorCode::ValidationError, "row " + std::to_string(row) + ": " + what);
    }
}

FabricRecord record_from_fields(const std::map<std::string, std::string>& fields,
                                std::size_t row, const Vocabularies& vocabs) {
    FabricRecord rec;
    rec.id = fields.at("id");
    if (rec.id.empty())
        raise(ErrorCode::ValidationError, "row " + std::to_string(row) + ": empty id");

    rec.attributes.composition = parse_composition(fields.at("composition"), vocabs);
    rec.attributes.family = normalize_family(fields.at("family"), vocabs);
    auto structure = parse_structure(fields.at("structure"));
    if (!structure)
        raise(ErrorCode::ValidationError,
              "row " + std::to_string(row) + ": unknown structure '" + fields.at("structure") + "'");
    rec.attributes.structure = *structure;
    rec.attributes.density_gsm = parse_number(fields.at("density_gsm"), "density_gsm", row);
    rec.attributes.thickness_mm = parse_number(fields.at("thickness_mm"), "thickness_mm", row);

    const auto& names = physics_component_names();
    for (std::size_t i = 0; i < kPhysicsComponentCount; ++i)
        set_physics_component(rec.physics, i, parse_number(fields.at(names[i]), names[i], row));
    return rec;
}

void validate_record(const FabricRecord& rec, std::size_t row, const Vocabularies& vocabs) {
    auto report = validate_attributes(rec.attributes, vocabs);
    if (!report.ok()) {
        std::string msg = "row " + std::to_string(row) + ":";
        for (const auto& v : report.violations) msg += " [" + v.code + "] " + v.message + ";";
        raise(ErrorCode::ValidationError, msg);
    }
    if (auto bad = physics_invariant_violation(rec.physics); !bad.empty())
        raise(ErrorCode::ValidationError, "row " + std::to_string(row) + ": " + bad);
    if (rec.physics.density_gsm != *rec.attributes.density_gsm ||
        rec.physics.thickness_mm != *rec.attributes.thickness_mm)
        raise(ErrorCode::ValidationError,
              "row " + std::to_string(row) + ": physics density/thickness disagree with attributes");
}

FabricDataset load_csv(std::istream& in, const Vocabularies& vocabs) {
    std::string line;
    if (!std::getline(in, line))
        raise(ErrorCode::SchemaError, "missing CSV header");
    auto header = parse_csv_line(line, 0);
    const auto& expected = dataset_csv_columns();
    std::map<std::string, std::size_t> col_index;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (std::find(expected.begin(), expected.end(), header[i]) == expected.end())
            raise(ErrorCode::SchemaError, "unknown CSV column '" + header[i] + "'");
        if (!col_index.emplace(header[i], i).second)
            raise(ErrorCode::SchemaError, "duplicate CSV column '" + header[i] + "'");
    }
    for (const auto& col : expected)
        if (!col_index.count(col))
            raise(ErrorCode::SchemaError, "missing CSV column '" + col + "'");

    FabricDataset ds;
    ds.vocab_fingerprint = vocabs.fingerprint;
    std::set<std::string> ids;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        auto fields = parse_csv_line(line, row);
        if (fields.size() != header.size())
            raise(ErrorCode::SchemaError,
                  "row " + std::to_string(row) + ": expected " + std::to_string(header.size()) +
                      " fields, got " + std::to_string(fields.size()));
        std::map<std::string, std::string> named;
        for (const auto& col : expected) named[col] = fields[col_index[col]];
        FabricRecord rec =
            with_row_diagnostics(row, [&] { return record_from_fields(named, row, vocabs); });
        if (!ids.insert(rec.id).second)
            raise(ErrorCode::SchemaError, "duplicate id '" + rec.id + "'");
        with_row_diagnostics(row, [&] { validate_record(rec, row, vocabs); });
        ds.records.push_back(std::move(rec));
    }
    return ds;
}

// --- JSON -----------------------------------------------------------------

FabricRecord record_from_json(const ordered_json& obj, std::size_t index, const Vocabularies& vocabs) {
    auto where = [&] { return "record " + std::to_string(index); };
    if (!obj.is_object())
        raise(ErrorCode::SchemaError, where() + ": expected an object");

    const auto& expected = dataset_csv_columns();
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::find(expected.begin(), expected.end(), it.key()) == expected.end())
            raise(ErrorCode::SchemaError, where() + ": unknown key '" + it.key() + "'");
    for (const auto& col : expected)
        if (!obj.contains(col))
            raise(ErrorCode::SchemaError, where() + ": missing key '" + col + "'");

    FabricRecord rec;
    rec.id = obj.at("id").get<std::string>();

    const auto& comp = obj.at("composition");
    if (comp.is_string()) {
        rec.attributes.composition = parse_composition(comp.get<std::string>(), vocabs);
    } else if (comp.is_array()) {
        std::vector<std::pair<std::string, double>> entries;
        for (const auto& e : comp)
            entries.emplace_back(e.at("fiber").get<std::string>(), e.at("percent").get<double>());
        rec.attributes.composition = make_composition(entries, vocabs);
    } else {
        raise(ErrorCode::SchemaError, where() + ": composition must be a string or array");
    }

    rec.attributes.family = normalize_family(obj.at("family").get<std::string>(), vocabs);
    auto structure = parse_structure(obj.at("structure").get<std::string>());
    if (!structure)
        raise(ErrorCode::ValidationError, where() + ": unknown structure");
    rec.attributes.structure = *structure;
    rec.attributes.density_gsm = obj.at("density_gsm").get<double>();
    rec.attributes.thickness_mm = obj.at("thickness_mm").get<double>();

    const auto& names = physics_component_names();
    for (std::size_t i = 0; i < kPhysicsComponentCount; ++i)
        set_physics_component(rec.physics, i, obj.at(names[i]).get<double>());
    return rec;
}

FabricDataset load_json(std::istream& in, const Vocabularies& vocabs) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::SchemaError, std::string("bad JSON: ") + e.what());
    }

    const ordered_json* rows = nullptr;
    if (doc.is_array()) {
        rows = &doc;
    } else if (doc.is_object() && doc.contains("records")) {
        if (doc.contains("format") && doc.at("format") != "fabricphys-dataset")
            raise(ErrorCode::SchemaError, "not a fabricphys dataset document");
        if (doc.contains("vocab_fingerprint") &&
            doc.at("vocab_fingerprint").get<std::string>() != vocabs.fingerprint)
            raise(ErrorCode::SchemaError,
                  "dataset was ingested with different vocabularies (fingerprint mismatch)");
        rows = &doc.at("records");
    } else {
        raise(ErrorCode::SchemaError, "expected a JSON array of records or a dataset document");
    }

    FabricDataset ds;
    ds.vocab_fingerprint = vocabs.fingerprint;
    std::set<std::string> ids;
    std::size_t index = 0;
    for (const auto& obj : *rows) {
        ++index;
        FabricRecord rec;
        try {
            rec = with_row_diagnostics(index, [&] { return record_from_json(obj, index, vocabs); });
        } catch (const nlohmann::json::exception& e) {
            raise(ErrorCode::SchemaError, "record " + std::to_string(index) + ": " + e.what());
        }
        if (!ids.insert(rec.id).second)
            raise(ErrorCode::SchemaError, "duplicate id '" + rec.id + "'");
        with_row_diagnostics(index, [&] { validate_record(rec, index, vocabs); });
        ds.records.push_back(std::move(rec));
    }
    return ds;
}

ordered_json record_to_json(const FabricRecord& rec) {
    ordered_json obj;
    obj["id"] = rec.id;
    ordered_json comp = ordered_json::array();
    for (const auto& e : rec.attributes.composition.entries)
        comp.push_back({{"fiber", e.fiber}, {"percent", e.percent}});
    obj["composition"] = std::move(comp);
    obj["family"] = rec.attributes.family;
    obj["structure"] = to_string(rec.attributes.structure);
    const auto& names = physics_component_names();
    for (std::size_t i = 0; i < kPhysicsComponentCount; ++i)
        obj[names[i]] = get_physics_component(rec.physics, i);
    return obj;
}

} // namespace

FabricDataset load_dataset(const std::string& path, const Vocabularies& vocabs, DatasetFormat format) {
    std::ifstream in(path);
    if (!in)
        raise(ErrorCode::IoError, "cannot open dataset file " + path);

    if (format == DatasetFormat::Auto) {
        if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) {
            format = DatasetFormat::Csv;
        } else {
            int c = in.peek();
            while (c != EOF && std::isspace(c)) {
                in.get();
                c = in.peek();
            }
            format = (c == '[' || c == '{') ? DatasetFormat::Json : DatasetFormat::Csv;
        }
    }
    return format == DatasetFormat::Csv ? load_csv(in, vocabs) : load_json(in, vocabs);
}

void save_dataset_document(const FabricDataset& ds, const std::string& path) {
    ordered_json doc;
    doc["format"] = "fabricphys-dataset";
    doc["version"] = 1;
    doc["vocab_fingerprint"] = ds.vocab_fingerprint;
    ordered_json records = ordered_json::array();
    for (const auto& rec : ds.records) records.push_back(record_to_json(rec));
    doc["records"] = std::move(records);

    std::ofstream out(path);
    if (!out)
        raise(ErrorCode::IoError, "cannot write " + path);
    out << doc.dump(2) << "\n";
}

void save_dataset_csv(const FabricDataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        raise(ErrorCode::IoError, "cannot write " + path);
    const auto& cols = dataset_csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << cols[i];
    out << "\n";
    char buf[64];
    for (const auto& rec : ds.records) {
        out << csv_escape(rec.id) << "," << csv_escape(render_composition(rec.attributes.composition))
            << "," << csv_escape(rec.attributes.family) << "," << to_string(rec.attributes.structure);
        const auto& names = physics_component_names();
        for (std::size_t i = 0; i < kPhysicsComponentCount; ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", get_physics_component(rec.physics, i));
            out << "," << buf;
        }
        out << "\n";
    }
}

// --- feature vectors -------------------------------------------------------

FeatureLayout FeatureLayout::from_vocabs(const Vocabularies& vocabs) {
    FeatureLayout layout;
    layout.fiber_offset = 0;
    layout.fiber_count = vocabs.fibers.size();
    for (const auto& name : vocabs.fibers.canonical()) layout.names.push_back("fiber:" + name);
    layout.family_offset = layout.names.size();
    layout.family_count = vocabs.families.size();
    for (const auto& name : vocabs.families.canonical()) layout.names.push_back("family:" + name);
    layout.structure_offset = layout.names.size();
    layout.structure_count = structure_names().size();
    for (const auto& name : structure_names()) layout.names.push_back("structure:" + name);
    layout.density_index = layout.names.size();
    layout.names.push_back("log_density");
    layout.thickness_index = layout.names.size();
    layout.names.push_back("log_thickness");
    return layout;
}

std::vector<double> featurize(const FabricAttributes& attrs, const Vocabularies& vocabs,
                              const FeatureLayout& layout) {
    if (!attrs.density_gsm)
        raise(ErrorCode::MissingScalar, "density required for featurization");
    if (!attrs.thickness_mm)
        raise(ErrorCode::MissingScalar, "thickness required for featurization");

    std::vector<double> x(layout.dimension(), 0.0);
    double sum = 0.0;
    for (const auto& e : attrs.composition.entries) sum += e.percent;
    if (!(sum > 0.0))
        raise(ErrorCode::ValidationError, "composition percentages sum to zero");
    for (const auto& e : attrs.composition.entries) {
        int idx = vocabs.fibers.index_of(e.fiber);
        if (idx < 0)
            raise(ErrorCode::ValidationError, "fiber '" + e.fiber + "' not in vocabulary");
        // normalized so the fractions sum to exactly 1 even when the tag
        // total sits anywhere inside the 100 +- 0.5 tolerance
        x[layout.fiber_offset + static_cast<std::size_t>(idx)] = e.percent / sum;
    }
    int fam = vocabs.families.index_of(attrs.family);
    if (fam < 0)
        raise(ErrorCode::ValidationError, "family '" + attrs.family + "' not in vocabulary");
    x[layout.family_offset + static_cast<std::size_t>(fam)] = 1.0;
    x[layout.structure_offset + static_cast<std::size_t>(attrs.structure)] = 1.0;
    x[layout.density_index] = std::log1p(*attrs.density_gsm);
    x[layout.thickness_index] = std::log1p(*attrs.thickness_mm);
    return x;
}

// --- splits -----------------------------------------------------------------

std::string stratum_of(const FabricRecord& record, StratKey key) {
    switch (key) {
        case StratKey::Structure: return to_string(record.attributes.structure);
        case StratKey::Family: return record.attributes.family;
        case StratKey::None: return "all";
    }
    return "all";
}

namespace {

std::map<std::string, std::vector<std::size_t>> strata_members(const FabricDataset& ds, StratKey key) {
    std::map<std::string, std::vector<std::size_t>> strata;
    for (std::size_t i = 0; i < ds.records.size(); ++i)
        strata[stratum_of(ds.records[i], key)].push_back(i);
    // canonical member order: by id, so results do not depend on input order
    for (auto& [label, members] : strata)
        std::sort(members.begin(), members.end(), [&ds](std::size_t a, std::size_t b) {
            return ds.records[a].id < ds.records[b].id;
        });
    return strata;
}

std::uint64_t stratum_seed(std::uint64_t seed, const std::string& label) {
    Fnv1a hash;
    hash.feed(label);
    return derive_seed(seed, hash.value());
}

} // namespace

SplitResult stratified_split(const FabricDataset& ds, const std::array<double, 3>& ratios,
                             StratKey key, std::uint64_t seed) {
    if (ds.empty())
        raise(ErrorCode::EmptyDataset, "cannot split an empty dataset");
    double total = ratios[0] + ratios[1] + ratios[2];
    if (std::abs(total - 1.0) > 1e-9)
        raise(ErrorCode::UsageError, "split ratios must sum to 1");

    SplitResult result;
    for (auto& [label, members] : strata_members(ds, key)) {
        if (members.size() < 3) {
            result.warnings.push_back("DegenerateStratum: '" + label + "' has " +
                                      std::to_string(members.size()) +
                                      " records (< 3); all assigned to train");
            result.train.insert(result.train.end(), members.begin(), members.end());
            continue;
        }
        std::mt19937_64 rng(stratum_seed(seed, label));
        rng_shuffle(rng, members);

        const std::size_t n = members.size();
        std::array<std::size_t, 3> counts{};
        std::array<double, 3> remainders{};
        std::size_t assigned = 0;
        for (int j = 0; j < 3; ++j) {
            double quota = static_cast<double>(n) * ratios[j];
            counts[j] = static_cast<std::size_t>(std::floor(quota));
            remainders[j] = quota - std::floor(quota);
            assigned += counts[j];
        }
        // largest remainder; ties by split order (train, val, test)
        std::array<int, 3> order = {0, 1, 2};
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return remainders[a] > remainders[b]; });
        for (std::size_t leftover = n - assigned, j = 0; j < leftover; ++j) ++counts[order[j]];

        std::size_t pos = 0;
        for (std::size_t j = 0; j < counts[0]; ++j) result.train.push_back(members[pos++]);
        for (std::size_t j = 0; j < counts[1]; ++j) result.val.push_back(members[pos++]);
        for (std::size_t j = 0; j < counts[2]; ++j) result.test.push_back(members[pos++]);
    }
    return result;
}

std::vector<FoldPair> stratified_kfold(const FabricDataset& ds, int k, StratKey key,
                                       std::uint64_t seed) {
    if (ds.empty())
        raise(ErrorCode::EmptyDataset, "cannot fold an empty dataset");
    if (k < 2)
        raise(ErrorCode::UsageError, "k must be >= 2");

    std::vector<std::vector<std::size_t>> holdouts(static_cast<std::size_t>(k));
    std::size_t processed = 0;
    for (auto& [label, members] : strata_members(ds, key)) {
        std::mt19937_64 rng(stratum_seed(seed, label));
        rng_shuffle(rng, members);
        std::size_t offset = processed % static_cast<std::size_t>(k);
        for (std::size_t m = 0; m < members.size(); ++m)
            holdouts[(offset + m) % static_cast<std::size_t>(k)].push_back(members[m]);
        processed += members.size();
    }

    std::vector<FoldPair> folds(static_cast<std::size_t>(k));
    for (std::size_t f = 0; f < holdouts.size(); ++f) {
        folds[f].holdout = holdouts[f];
        std::sort(folds[f].holdout.begin(), folds[f].holdout.end());
        std::set<std::size_t> in_holdout(folds[f].holdout.begin(), folds[f].holdout.end());
        for (std::size_t i = 0; i < ds.records.size(); ++i)
            if (!in_holdout.count(i)) folds[f].train.push_back(i);
    }
    return folds;
}

} // namespace fabricphys
