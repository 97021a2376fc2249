#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace fabricphys {

/// Closed vocabulary with a synonym table. Lookups are case- and
/// whitespace-insensitive; canonical display forms keep their case.
class Vocabulary {
public:
    /// `canonical` keeps file order; synonyms map folded variant -> index.
    static Vocabulary from_entries(std::vector<std::string> canonical,
                                   const std::vector<std::pair<std::string, std::string>>& synonyms);

    /// Line format: "canonical" or "canonical<TAB>synonym", '#' comments.
    static Vocabulary load(const std::string& path);

    std::optional<std::string> lookup(const std::string& raw) const;
    bool contains_canonical(const std::string& raw) const;

    const std::vector<std::string>& canonical() const { return canonical_; }
    std::size_t size() const { return canonical_.size(); }

    /// Index of a canonical name (folded match), -1 if absent.
    int index_of(const std::string& name) const;

private:
    std::vector<std::string> canonical_;
    std::unordered_map<std::string, int> folded_to_index_; // canonical + synonyms
};

/// Trim, collapse inner whitespace runs to one space, ASCII-lowercase.
std::string fold_token(const std::string& raw);

enum class StructureType { Knit, Woven, Lining, Others };

const std::vector<std::string>& structure_names(); // {"knit","woven","lining","others"}
std::string to_string(StructureType s);
std::optional<StructureType> parse_structure(const std::string& raw);

/// All controlled vocabularies plus the family/structure contradiction table.
struct Vocabularies {
    Vocabulary fibers;
    Vocabulary families;
    /// family (canonical) -> required structure; families absent are unconstrained
    std::unordered_map<std::string, StructureType> family_requires_structure;
    std::string fingerprint; // stable hash over all tables

    static Vocabularies load(const std::string& dir); // fibers.tsv, families.tsv, family_structure.tsv
    static Vocabularies load_default();               // load(default_data_dir())

    void compute_fingerprint();
};

/// Directory holding the shipped data tables; resolution order:
/// explicit argument > FABRICPHYS_DATA_DIR env var > compile-time default.
std::string default_data_dir();

} // namespace fabricphys
