#include "fabricphys/tagparse.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>

#include "fabricphys/errors.hpp"

namespace fabricphys {

namespace {

bool is_sep(char c) { return c == ',' || c == ';' || c == '\n'; }

struct Section {
    std::string header; // empty for unlabeled text
    std::string body;
};

// "Main: 60% Cotton, Lining: 100% Polyester" -> labeled sections.
// A header is a letters/spaces run ending in ':' that starts the string or
// follows a separator.
std::vector<Section> split_layer_sections(const std::string& text) {
    std::vector<Section> sections;
    std::size_t section_start = 0;
    std::string current_header;

    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != ':') continue;
        // walk back over the candidate header token
        std::size_t begin = i;
        while (begin > 0) {
            char c = text[begin - 1];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == ' ' || c == '\t')
                --begin;
            else
                break;
        }
        while (begin < i && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
        if (begin == i) continue; // ':' with no name
        if (begin > 0 && !is_sep(text[begin - 1]) && !std::isspace(static_cast<unsigned char>(text[begin - 1])))
            continue;
        std::string name = text.substr(begin, i - begin);
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
        if (name.empty()) continue;

        std::string before = text.substr(section_start, begin - section_start);
        bool before_blank = std::all_of(before.begin(), before.end(), [](unsigned char c) {
            return std::isspace(c) || is_sep(static_cast<char>(c));
        });
        if (!before_blank)
            sections.push_back({current_header, before});
        else if (!current_header.empty())
            sections.push_back({current_header, before});
        current_header = name;
        section_start = i + 1;
    }
    sections.push_back({current_header, text.substr(section_start)});
    return sections;
}

struct RawEntry {
    double percent;
    std::string name;
};

std::vector<RawEntry> scan_entries(const std::string& body) {
    std::vector<RawEntry> out;
    std::size_t i = 0;
    const std::size_t n = body.size();
    auto skip_blank = [&] {
        while (i < n && (std::isspace(static_cast<unsigned char>(body[i])) || is_sep(body[i]))) ++i;
    };
    skip_blank();
    while (i < n) {
        // number
        std::size_t num_start = i;
        if (body[i] == '+' || body[i] == '-') ++i;
        std::size_t digits_start = i;
        while (i < n && (std::isdigit(static_cast<unsigned char>(body[i])) || body[i] == '.')) ++i;
        if (i == digits_start)
            raise(ErrorCode::MalformedPercentage,
                  "expected a percentage at '" + body.substr(num_start, 12) + "'");
        double percent = 0.0;
        try {
            std::size_t used = 0;
            percent = std::stod(body.substr(num_start, i - num_start), &used);
            if (used != i - num_start) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            raise(ErrorCode::MalformedPercentage, "non-numeric percentage '" + body.substr(num_start, i - num_start) + "'");
        }
        // '%' sign, optionally spaced
        while (i < n && body[i] == ' ') ++i;
        if (i >= n || body[i] != '%')
            raise(ErrorCode::MalformedPercentage, "missing '%' after number");
        ++i;
        // fiber name runs until a separator or the start of the next number
        while (i < n && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
        std::size_t name_start = i;
        while (i < n && !is_sep(body[i]) && !std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
        std::string name = body.substr(name_start, i - name_start);
        while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
        if (name.empty())
            raise(ErrorCode::MalformedPercentage, "missing fiber name after percentage");
        out.push_back({percent, name});
        skip_blank();
    }
    return out;
}

} // namespace

std::string canonicalize_fiber(const std::string& raw, const Vocabularies& vocabs) {
    std::string folded = fold_token(raw);
    if (folded.empty())
        raise(ErrorCode::UnrecognizedFiber, "empty fiber name");
    if (auto canon = vocabs.fibers.lookup(folded))
        return *canon;
    raise(ErrorCode::UnrecognizedFiber, "'" + raw + "' is not in the fiber vocabulary");
}

FiberComposition parse_composition(const std::string& text, const Vocabularies& vocabs) {
    if (fold_token(text).empty())
        raise(ErrorCode::MalformedPercentage, "empty composition string");

    auto sections = split_layer_sections(text);
    const std::string& body = sections.front().body;
    auto raw_entries = scan_entries(body);
    if (raw_entries.empty())
        raise(ErrorCode::MalformedPercentage, "no composition entries found");

    std::vector<std::pair<std::string, double>> pairs;
    pairs.reserve(raw_entries.size());
    for (const auto& raw : raw_entries) pairs.emplace_back(raw.name, raw.percent);

    FiberComposition comp = make_composition(pairs, vocabs);
    for (const auto& s : sections)
        if (!s.header.empty()) comp.layer_headers.push_back(s.header);
    return comp;
}

FiberComposition make_composition(const std::vector<std::pair<std::string, double>>& entries,
                                  const Vocabularies& vocabs) {
    if (entries.empty())
        raise(ErrorCode::MalformedPercentage, "no composition entries");
    if (entries.size() > kMaxCompositionEntries)
        raise(ErrorCode::ValidationError, "more than 6 fibers in composition");
    FiberComposition comp;
    double sum = 0.0;
    std::set<std::string> seen;
    for (const auto& [name, percent] : entries) {
        if (!(percent > 0.0) || percent > 100.0)
            raise(ErrorCode::MalformedPercentage,
                  "percentage " + std::to_string(percent) + " outside (0, 100]");
        std::string fiber = canonicalize_fiber(name, vocabs);
        if (!seen.insert(fiber).second)
            raise(ErrorCode::ValidationError, "duplicate fiber '" + fiber + "'");
        comp.entries.push_back({fiber, percent});
        sum += percent;
    }
    if (std::abs(sum - 100.0) > kCompositionSumTolerance)
        raise(ErrorCode::SumViolation, "percentages sum to " + std::to_string(sum));
    std::sort(comp.entries.begin(), comp.entries.end(), [](const FiberEntry& a, const FiberEntry& b) {
        if (a.percent != b.percent) return a.percent > b.percent;
        return a.fiber < b.fiber;
    });
    return comp;
}

std::string render_composition(const FiberComposition& comp) {
    std::string out;
    char buf[64];
    for (std::size_t i = 0; i < comp.entries.size(); ++i) {
        if (i) out += ", ";
        std::snprintf(buf, sizeof(buf), "%.10g", comp.entries[i].percent);
        out += buf;
        out += "% ";
        out += comp.entries[i].fiber;
    }
    return out;
}

namespace {
const char* kStripSuffixes[] = {"-style", " style", "-like weave", " like weave", "-like", " like"};
}

std::string normalize_family(const std::string& raw, const Vocabularies& vocabs) {
    std::string folded = fold_token(raw);
    if (folded.empty())
        raise(ErrorCode::UnknownFamily, "empty family name");
    if (auto canon = vocabs.families.lookup(folded))
        return *canon;
    for (const char* suffix : kStripSuffixes) {
        std::size_t len = std::char_traits<char>::length(suffix);
        if (folded.size() > len && folded.compare(folded.size() - len, len, suffix) == 0) {
            std::string stripped = folded.substr(0, folded.size() - len);
            if (auto canon = vocabs.families.lookup(stripped))
                return *canon;
        }
    }
    raise(ErrorCode::UnknownFamily, "'" + raw + "' is not in the family vocabulary");
}

std::string normalize_family_lenient(const std::string& raw, const Vocabularies& vocabs) {
    try {
        return normalize_family(raw, vocabs);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::UnknownFamily && vocabs.families.contains_canonical("unknown"))
            return *vocabs.families.lookup("unknown");
        throw;
    }
}

ValidationReport validate_attributes(const FabricAttributes& attrs, const Vocabularies& vocabs) {
    ValidationReport report;
    auto add = [&report](const std::string& code, const std::string& message) {
        report.violations.push_back({code, message});
    };

    const auto& entries = attrs.composition.entries;
    if (entries.empty()) {
        add("empty composition", "composition has no entries");
    } else {
        if (entries.size() > kMaxCompositionEntries)
            add("too many fibers", "composition has more than 6 entries");
        double sum = 0.0;
        std::set<std::string> seen;
        for (const auto& e : entries) {
            sum += e.percent;
            if (!vocabs.fibers.contains_canonical(e.fiber))
                add("unrecognized fiber", "'" + e.fiber + "' is not in the fiber vocabulary");
            if (!(e.percent > 0.0) || e.percent > 100.0)
                add("percentage out of range", e.fiber + " at " + std::to_string(e.percent) + "%");
            if (!seen.insert(e.fiber).second)
                add("duplicate fiber", "'" + e.fiber + "' listed twice");
        }
        if (std::abs(sum - 100.0) > kCompositionSumTolerance)
            add("sum violation", "percentages sum to " + std::to_string(sum));
    }

    if (!vocabs.families.contains_canonical(attrs.family))
        add("unknown family", "'" + attrs.family + "' is not in the family vocabulary");

    if (attrs.density_gsm && !(*attrs.density_gsm > 0.0 && *attrs.density_gsm < 2000.0))
        add("density out of range", "density must be in (0, 2000) g/m2");
    if (attrs.thickness_mm && !(*attrs.thickness_mm > 0.0 && *attrs.thickness_mm < 20.0))
        add("thickness out of range", "thickness must be in (0, 20) mm");

    auto rule = vocabs.family_requires_structure.find(attrs.family);
    if (rule != vocabs.family_requires_structure.end() && rule->second != attrs.structure)
        add("family/structure contradiction",
            attrs.family + " requires structure " + to_string(rule->second) + ", got " + to_string(attrs.structure));

    if (attrs.composition.layer_headers.size() > 1) {
        std::string joined;
        for (const auto& h : attrs.composition.layer_headers) {
            if (!joined.empty()) joined += "+";
            joined += h;
        }
        add("multi-layer", "composition split across layers " + joined);
    }

    return report;
}

} // namespace fabricphys
