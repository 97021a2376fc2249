#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fabricphys/vocab.hpp"

namespace fabricphys {

struct FiberEntry {
    std::string fiber; // canonical vocabulary member
    double percent = 0.0;

    bool operator==(const FiberEntry& o) const { return fiber == o.fiber && percent == o.percent; }
};

/// Parsed composition. Entries are sorted by descending percentage, ties by
/// fiber name; percentages sum to 100 +- 0.5. When the source tag listed the
/// composition under layer headers ("Main: ...", "Lining: ..."), the header
/// names are recorded here and the entries come from the first layer.
struct FiberComposition {
    std::vector<FiberEntry> entries;
    std::vector<std::string> layer_headers;

    const std::string& primary_fiber() const { return entries.front().fiber; }
    bool operator==(const FiberComposition& o) const { return entries == o.entries; }
};

struct FabricAttributes {
    FiberComposition composition;
    std::string family; // canonical family vocabulary member
    StructureType structure = StructureType::Others;
    std::optional<double> density_gsm;
    std::optional<double> thickness_mm;
};

struct Violation {
    std::string code;    // "family/structure contradiction", "multi-layer", ...
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

constexpr double kCompositionSumTolerance = 0.5; // percentage points
constexpr std::size_t kMaxCompositionEntries = 6;

/// "95% Polyester, 5% Elastane" -> canonical FiberComposition.
/// Accepts "95%" / "95 %" / decimals, comma or whitespace separated entries,
/// and optional layer headers ("Main:", "Lining:").
FiberComposition parse_composition(const std::string& text, const Vocabularies& vocabs);

/// Inverse of parse_composition on valid compositions (up to entry order).
std::string render_composition(const FiberComposition& comp);

/// Build a composition from (fiber, percent) pairs with the same
/// canonicalization, checks and ordering as parse_composition.
FiberComposition make_composition(const std::vector<std::pair<std::string, double>>& entries,
                                  const Vocabularies& vocabs);

/// Synonym-table lookup; idempotent on canonical names.
std::string canonicalize_fiber(const std::string& raw, const Vocabularies& vocabs);

/// Variant-table lookup with "-style" / "-like weave" suffix stripping.
/// Throws UnknownFamily when nothing matches.
std::string normalize_family(const std::string& raw, const Vocabularies& vocabs);

/// Same, but maps unmatched input to the "unknown" family.
std::string normalize_family_lenient(const std::string& raw, const Vocabularies& vocabs);

/// Collects violations (never throws, never mutates): composition invariants,
/// scalar ranges, family/structure contradictions, multi-layer compositions.
ValidationReport validate_attributes(const FabricAttributes& attrs, const Vocabularies& vocabs);

} // namespace fabricphys
