#include "fabricphys/vocab.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fabricphys/errors.hpp"
#include "fabricphys/rng.hpp"

namespace fabricphys {

std::string to_hex(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

std::string fold_token(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (unsigned char c : raw) {
        if (std::isspace(c)) {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(c)));
    }
    return out;
}

Vocabulary Vocabulary::from_entries(std::vector<std::string> canonical,
                                    const std::vector<std::pair<std::string, std::string>>& synonyms) {
    Vocabulary v;
    v.canonical_ = std::move(canonical);
    for (std::size_t i = 0; i < v.canonical_.size(); ++i) {
        std::string key = fold_token(v.canonical_[i]);
        if (key.empty())
            raise(ErrorCode::SchemaError, "empty canonical vocabulary entry");
        if (!v.folded_to_index_.emplace(key, static_cast<int>(i)).second)
            raise(ErrorCode::SchemaError, "duplicate canonical vocabulary entry '" + v.canonical_[i] + "'");
    }
    for (const auto& [canon, synonym] : synonyms) {
        auto it = v.folded_to_index_.find(fold_token(canon));
        if (it == v.folded_to_index_.end())
            raise(ErrorCode::SchemaError, "synonym '" + synonym + "' refers to unknown canonical '" + canon + "'");
        std::string key = fold_token(synonym);
        auto [pos, inserted] = v.folded_to_index_.emplace(key, it->second);
        if (!inserted && pos->second != it->second)
            raise(ErrorCode::SchemaError, "synonym '" + synonym + "' maps to two canonical entries");
    }
    return v;
}

Vocabulary Vocabulary::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        raise(ErrorCode::IoError, "cannot open vocabulary file " + path);
    std::vector<std::string> canonical;
    std::vector<std::pair<std::string, std::string>> synonyms;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            canonical.push_back(line);
        } else {
            synonyms.emplace_back(line.substr(0, tab), line.substr(tab + 1));
        }
    }
    return from_entries(std::move(canonical), synonyms);
}

std::optional<std::string> Vocabulary::lookup(const std::string& raw) const {
    auto it = folded_to_index_.find(fold_token(raw));
    if (it == folded_to_index_.end()) return std::nullopt;
    return canonical_[static_cast<std::size_t>(it->second)];
}

bool Vocabulary::contains_canonical(const std::string& raw) const {
    return index_of(raw) >= 0;
}

int Vocabulary::index_of(const std::string& name) const {
    auto it = folded_to_index_.find(fold_token(name));
    if (it == folded_to_index_.end()) return -1;
    // synonyms resolve to their canonical index, which is what callers want
    return it->second;
}

const std::vector<std::string>& structure_names() {
    static const std::vector<std::string> names = {"knit", "woven", "lining", "others"};
    return names;
}

std::string to_string(StructureType s) {
    return structure_names()[static_cast<std::size_t>(s)];
}

std::optional<StructureType> parse_structure(const std::string& raw) {
    std::string folded = fold_token(raw);
    const auto& names = structure_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (folded == names[i]) return static_cast<StructureType>(i);
    return std::nullopt;
}

void Vocabularies::compute_fingerprint() {
    Fnv1a hash;
    hash.feed("fibers");
    for (const auto& name : fibers.canonical()) hash.feed(name);
    hash.feed("families");
    for (const auto& name : families.canonical()) hash.feed(name);
    hash.feed("structures");
    for (const auto& name : structure_names()) hash.feed(name);
    // contradiction table in sorted order so map iteration order cannot leak in
    std::vector<std::string> rules;
    rules.reserve(family_requires_structure.size());
    for (const auto& [family, structure] : family_requires_structure)
        rules.push_back(family + "=" + to_string(structure));
    std::sort(rules.begin(), rules.end());
    hash.feed("rules");
    for (const auto& rule : rules) hash.feed(rule);
    fingerprint = to_hex(hash.value());
}

Vocabularies Vocabularies::load(const std::string& dir) {
    Vocabularies v;
    v.fibers = Vocabulary::load(dir + "/fibers.tsv");
    v.families = Vocabulary::load(dir + "/families.tsv");

    std::string path = dir + "/family_structure.tsv";
    std::ifstream in(path);
    if (!in)
        raise(ErrorCode::IoError, "cannot open contradiction table " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            raise(ErrorCode::SchemaError, "bad contradiction table line: " + line);
        std::string family = line.substr(0, tab);
        auto canon = v.families.lookup(family);
        if (!canon)
            raise(ErrorCode::SchemaError, "contradiction table names unknown family '" + family + "'");
        auto structure = parse_structure(line.substr(tab + 1));
        if (!structure)
            raise(ErrorCode::SchemaError, "contradiction table names unknown structure in line: " + line);
        v.family_requires_structure[*canon] = *structure;
    }
    v.compute_fingerprint();
    return v;
}

Vocabularies Vocabularies::load_default() {
    return load(default_data_dir());
}

std::string default_data_dir() {
    if (const char* env = std::getenv("FABRICPHYS_DATA_DIR"); env && *env)
        return env;
#ifdef FABRICPHYS_DATA_DIR
    return FABRICPHYS_DATA_DIR;
#else
    return "data";
#endif
}

} // namespace fabricphys
