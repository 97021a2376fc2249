#include "fabricphys/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fabricphys/errors.hpp"
#include "fabricphys/rng.hpp"

namespace fabricphys {

std::string to_string(MatchLevel level) {
    switch (level) {
        case MatchLevel::ExactComposition: return "exact_composition";
        case MatchLevel::MaterialSet: return "material_set";
        case MatchLevel::PrimaryFiber: return "primary_fiber";
        case MatchLevel::StructureFallback: return "structure_fallback";
        case MatchLevel::GlobalFallback: return "global_fallback";
    }
    return "?";
}

std::string to_string(AggregationMode mode) {
    switch (mode) {
        case AggregationMode::Mean: return "mean";
        case AggregationMode::Median: return "median";
        case AggregationMode::Random: return "random";
    }
    return "?";
}

AggregationMode parse_aggregation_mode(const std::string& name) {
    if (name == "mean") return AggregationMode::Mean;
    if (name == "median") return AggregationMode::Median;
    if (name == "random") return AggregationMode::Random;
    raise(ErrorCode::UsageError, "unknown aggregation mode '" + name + "'");
}

namespace {

std::map<std::string, double> fiber_map(const FiberComposition& comp) {
    std::map<std::string, double> m;
    for (const auto& e : comp.entries) m[e.fiber] = e.percent;
    return m;
}

bool same_fiber_set(const std::map<std::string, double>& a, const std::map<std::string, double>& b) {
    if (a.size() != b.size()) return false;
    auto ita = a.begin();
    for (auto itb = b.begin(); itb != b.end(); ++ita, ++itb)
        if (ita->first != itb->first) return false;
    return true;
}

bool within_tolerance(const std::map<std::string, double>& a, const std::map<std::string, double>& b,
                      double tol) {
    auto ita = a.begin();
    for (auto itb = b.begin(); itb != b.end(); ++ita, ++itb)
        if (std::abs(ita->second - itb->second) > tol) return false;
    return true;
}

} // namespace

RetrievalResult retrieve_candidates(const FabricAttributes& attrs, const FabricDataset& ds,
                                    double tol) {
    if (ds.empty())
        raise(ErrorCode::EmptyDataset, "retrieval over an empty dataset");

    auto query_fibers = fiber_map(attrs.composition);
    const std::string& query_primary = attrs.composition.primary_fiber();

    std::vector<std::size_t> exact, material_set, primary, structure_only;
    for (std::size_t i = 0; i < ds.records.size(); ++i) {
        const auto& rec = ds.records[i];
        bool structure_match = rec.attributes.structure == attrs.structure;
        if (structure_match) structure_only.push_back(i);
        if (!structure_match || rec.attributes.family != attrs.family) continue;

        auto rec_fibers = fiber_map(rec.attributes.composition);
        if (same_fiber_set(query_fibers, rec_fibers)) {
            material_set.push_back(i);
            if (within_tolerance(query_fibers, rec_fibers, tol)) exact.push_back(i);
        } else if (rec.attributes.composition.primary_fiber() == query_primary) {
            primary.push_back(i);
        }
    }

    if (!exact.empty()) return {std::move(exact), MatchLevel::ExactComposition};
    if (!material_set.empty()) return {std::move(material_set), MatchLevel::MaterialSet};
    if (!primary.empty()) return {std::move(primary), MatchLevel::PrimaryFiber};
    if (!structure_only.empty()) return {std::move(structure_only), MatchLevel::StructureFallback};

    std::vector<std::size_t> all(ds.records.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return {std::move(all), MatchLevel::GlobalFallback};
}

DensityThicknessEstimate estimate_density_thickness(const FabricAttributes& attrs,
                                                    const FabricDataset& ds,
                                                    AggregationMode mode, std::uint64_t seed,
                                                    double tol) {
    auto result = retrieve_candidates(attrs, ds, tol);
    const auto& candidates = result.candidates;

    DensityThicknessEstimate est;
    est.level = result.level;
    est.candidate_count = candidates.size();

    switch (mode) {
        case AggregationMode::Mean: {
            double rho = 0.0, t = 0.0;
            for (std::size_t i : candidates) {
                rho += ds.records[i].physics.density_gsm;
                t += ds.records[i].physics.thickness_mm;
            }
            est.density_gsm = rho / static_cast<double>(candidates.size());
            est.thickness_mm = t / static_cast<double>(candidates.size());
            break;
        }
        case AggregationMode::Median: {
            // density and thickness come from the same record (joint sample)
            std::vector<std::size_t> by_density = candidates;
            std::sort(by_density.begin(), by_density.end(), [&ds](std::size_t a, std::size_t b) {
                if (ds.records[a].physics.density_gsm != ds.records[b].physics.density_gsm)
                    return ds.records[a].physics.density_gsm < ds.records[b].physics.density_gsm;
                return ds.records[a].id < ds.records[b].id;
            });
            std::size_t pick = by_density[(by_density.size() - 1) / 2]; // lower median
            est.density_gsm = ds.records[pick].physics.density_gsm;
            est.thickness_mm = ds.records[pick].physics.thickness_mm;
            break;
        }
        case AggregationMode::Random: {
            std::mt19937_64 rng(seed);
            std::size_t pick = candidates[rng_index(rng, candidates.size())];
            est.density_gsm = ds.records[pick].physics.density_gsm;
            est.thickness_mm = ds.records[pick].physics.thickness_mm;
            break;
        }
    }
    return est;
}

ModeSelectionReport select_mode_cv(const FabricDataset& ds, int k, std::uint64_t seed, double tol) {
    if (ds.empty())
        raise(ErrorCode::EmptyDataset, "cannot cross-validate an empty dataset");

    auto folds = stratified_kfold(ds, k, StratKey::Structure, seed);

    const AggregationMode modes[] = {AggregationMode::Mean, AggregationMode::Median,
                                     AggregationMode::Random};
    ModeSelectionReport report;
    for (AggregationMode mode : modes)
        report.entries.push_back({mode, {}, 0.0});

    for (std::size_t f = 0; f < folds.size(); ++f) {
        const auto& fold = folds[f];
        if (fold.train.empty() || fold.holdout.empty()) {
            for (auto& entry : report.entries) entry.fold_mae.push_back(0.0);
            continue;
        }
        FabricDataset train;
        train.vocab_fingerprint = ds.vocab_fingerprint;
        for (std::size_t i : fold.train) train.records.push_back(ds.records[i]);

        double rho_min = train.records[0].physics.density_gsm, rho_max = rho_min;
        double t_min = train.records[0].physics.thickness_mm, t_max = t_min;
        for (const auto& rec : train.records) {
            rho_min = std::min(rho_min, rec.physics.density_gsm);
            rho_max = std::max(rho_max, rec.physics.density_gsm);
            t_min = std::min(t_min, rec.physics.thickness_mm);
            t_max = std::max(t_max, rec.physics.thickness_mm);
        }
        double rho_range = rho_max - rho_min > 0 ? rho_max - rho_min : 1.0;
        double t_range = t_max - t_min > 0 ? t_max - t_min : 1.0;

        for (std::size_t m = 0; m < report.entries.size(); ++m) {
            double rho_err = 0.0, t_err = 0.0;
            for (std::size_t q = 0; q < fold.holdout.size(); ++q) {
                const auto& rec = ds.records[fold.holdout[q]];
                auto est = estimate_density_thickness(rec.attributes, train, report.entries[m].mode,
                                                      derive_seed(seed, f, m * 1000003 + q), tol);
                rho_err += std::abs(est.density_gsm - rec.physics.density_gsm);
                t_err += std::abs(est.thickness_mm - rec.physics.thickness_mm);
            }
            double n = static_cast<double>(fold.holdout.size());
            double mae = 0.5 * (rho_err / n / rho_range + t_err / n / t_range);
            report.entries[m].fold_mae.push_back(mae);
        }
    }

    for (auto& entry : report.entries) {
        double sum = 0.0;
        for (double v : entry.fold_mae) sum += v;
        entry.mean_mae = entry.fold_mae.empty() ? 0.0 : sum / static_cast<double>(entry.fold_mae.size());
    }

    std::size_t best = 0;
    for (std::size_t m = 1; m < report.entries.size(); ++m)
        if (report.entries[m].mean_mae < report.entries[best].mean_mae) best = m;
    report.selected = report.entries[best].mode;
    return report;
}

} // namespace fabricphys
