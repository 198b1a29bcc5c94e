#include "mlqgate/metrics_system.hpp"

#include <algorithm>
#include <cmath>

#include "mlqgate/canonical_json.hpp"
#include "mlqgate/errors.hpp"

namespace mlqgate::metrics_system {

namespace {

// Numeric feature rows for k-NN, missing cells imputed with the column means
// passed in (the development frame).
statcore::Matrix feature_matrix(const Dataset& d, const std::vector<std::size_t>& columns,
                                const std::vector<double>& impute_means) {
    statcore::Matrix rows(d.n_rows(), std::vector<double>(columns.size(), 0.0));
    for (std::size_t i = 0; i < columns.size(); ++i) {
        const std::size_t c = columns[i];
        for (std::size_t r = 0; r < d.n_rows(); ++r) {
            rows[r][i] = d.is_missing(c, r) ? impute_means[i] : d.number_at(c, r);
        }
    }
    return rows;
}

}  // namespace

ScopeProfile build_scope_profile(const Dataset& dev, std::size_t k, double quantile) {
    if (quantile <= 0.0 || quantile >= 1.0) {
        throw BadParameter("scope profile: quantile must be in (0,1)");
    }
    if (k < 1) {
        throw BadParameter("scope profile: k must be at least 1");
    }
    if (dev.n_rows() < k + 1) {
        throw TooFewRows("scope profile: need at least k+1 = " + std::to_string(k + 1) +
                         " rows, got " + std::to_string(dev.n_rows()));
    }
    ScopeProfile profile;
    profile.k = k;
    profile.calibration_quantile = quantile;

    std::vector<std::size_t> numeric_cols;
    std::vector<double> impute_means;
    for (std::size_t c = 0; c < dev.n_cols(); ++c) {
        const auto& spec = dev.column(c);
        if (spec.type == dataio::ColumnType::Numeric) {
            const auto values = dev.numeric_values(c);
            if (values.empty()) continue;
            ScopeProfile::NumericRange range;
            range.column = spec.name;
            range.min = *std::min_element(values.begin(), values.end());
            range.max = *std::max_element(values.begin(), values.end());
            range.mean = statcore::mean(values);
            range.std = values.size() > 1 ? std::sqrt(statcore::sample_variance(values)) : 0.0;
            profile.numeric.push_back(range);
            numeric_cols.push_back(c);
            impute_means.push_back(range.mean);
            profile.feature_columns.push_back(spec.name);
        } else if (spec.type == dataio::ColumnType::Categorical) {
            std::set<std::string> vocabulary;
            for (const auto& [value, _] : dev.category_counts(c)) vocabulary.insert(value);
            profile.vocabularies[spec.name] = std::move(vocabulary);
        }
    }

    if (!numeric_cols.empty()) {
        profile.reference = feature_matrix(dev, numeric_cols, impute_means);
        auto self = statcore::knn_self_distances(profile.reference, k);
        std::sort(self.kth_distance.begin(), self.kth_distance.end());
        const std::size_t n = self.kth_distance.size();
        const std::size_t idx = std::min(
            n - 1, static_cast<std::size_t>(
                       std::ceil(quantile * static_cast<double>(n))) == 0
                       ? 0
                       : static_cast<std::size_t>(std::ceil(quantile * static_cast<double>(n))) -
                             1);
        profile.threshold_distance = self.kth_distance[idx];
    }
    return profile;
}

ScopeComplianceResult scope_compliance(const ScopeProfile& profile, const Dataset& runtime) {
    // Each profiled column must exist in runtime with the matching type.
    std::vector<std::size_t> numeric_cols;
    std::vector<double> impute_means;
    for (const auto& range : profile.numeric) {
        const auto idx = runtime.manifest().column_index(range.column);
        if (!idx || runtime.column(*idx).type != dataio::ColumnType::Numeric) {
            throw SchemaMismatch("scope compliance: runtime data lacks numeric column '" +
                                 range.column + "'");
        }
        numeric_cols.push_back(*idx);
        impute_means.push_back(range.mean);
    }
    std::vector<std::size_t> categorical_cols;
    std::vector<const std::set<std::string>*> vocabularies;
    for (const auto& [column, vocabulary] : profile.vocabularies) {
        const auto idx = runtime.manifest().column_index(column);
        if (!idx || runtime.column(*idx).type != dataio::ColumnType::Categorical) {
            throw SchemaMismatch("scope compliance: runtime data lacks categorical column '" +
                                 column + "'");
        }
        categorical_cols.push_back(*idx);
        vocabularies.push_back(&vocabulary);
    }

    ScopeComplianceResult result;
    result.out_of_scope_mask.assign(runtime.n_rows(), 0);
    if (runtime.n_rows() == 0) return result;

    std::vector<double> novelty;
    if (!profile.feature_columns.empty()) {
        const auto queries = feature_matrix(runtime, numeric_cols, impute_means);
        novelty = statcore::knn_distances(profile.reference, queries, profile.k).kth_distance;
    }

    std::size_t out_count = 0;
    for (std::size_t r = 0; r < runtime.n_rows(); ++r) {
        std::string triggers;
        auto add_trigger = [&](const std::string& t) {
            if (triggers.find(t) != std::string::npos) return;
            if (!triggers.empty()) triggers += ",";
            triggers += t;
        };
        for (std::size_t i = 0; i < numeric_cols.size(); ++i) {
            const std::size_t c = numeric_cols[i];
            if (runtime.is_missing(c, r)) continue;
            const double v = runtime.number_at(c, r);
            if (v < profile.numeric[i].min || v > profile.numeric[i].max) {
                add_trigger("range");
            }
        }
        for (std::size_t i = 0; i < categorical_cols.size(); ++i) {
            const std::size_t c = categorical_cols[i];
            if (runtime.is_missing(c, r)) continue;
            if (!vocabularies[i]->count(runtime.text_at(c, r))) {
                add_trigger("vocabulary");
            }
        }
        if (!novelty.empty() && novelty[r] > profile.threshold_distance) {
            add_trigger("novelty");
        }
        if (!triggers.empty()) {
            ++out_count;
            result.out_of_scope_mask[r] = 1;
            const std::string id = std::to_string(r);
            result.out_of_scope_ids.push_back(id);
            result.reasons[id] = triggers;
        }
    }
    result.in_scope_fraction = 1.0 - static_cast<double>(out_count) /
                                         static_cast<double>(runtime.n_rows());
    return result;
}

SupervisionEffectiveness output_supervision_effectiveness(const dataio::PredictionTable& p) {
    if (!p.any_supervisor_flag()) {
        throw MissingSupervisorFlags("output supervision: no supervisor flags present");
    }
    SupervisionEffectiveness result;
    std::uint64_t flagged_wrong = 0, flagged_correct = 0;
    for (const auto& row : p.rows) {
        if (!row.true_label || !row.supervisor_flag) continue;
        const bool wrong = *row.true_label != row.predicted_label;
        if (wrong) {
            ++result.n_wrong;
            if (*row.supervisor_flag) ++flagged_wrong;
        } else {
            ++result.n_correct;
            if (*row.supervisor_flag) ++flagged_correct;
        }
    }
    if (result.n_wrong == 0) {
        result.notices.push_back("no wrong outputs; error recall 0/0 reported as 0");
    } else {
        result.error_recall =
            static_cast<double>(flagged_wrong) / static_cast<double>(result.n_wrong);
    }
    if (result.n_correct == 0) {
        result.notices.push_back("no correct outputs; false alarm rate 0/0 reported as 0");
    } else {
        result.false_alarm_rate =
            static_cast<double>(flagged_correct) / static_cast<double>(result.n_correct);
    }
    return result;
}

ScopeSupervisionResult scope_supervision_effectiveness(
    const dataio::PredictionTable& p, const std::map<std::string, bool>& truth) {
    if (!p.any_context_flag()) {
        throw MissingContextFlags("scope supervision: no context-change flags present");
    }
    ScopeSupervisionResult result;
    for (const auto& row : p.rows) {
        auto it = truth.find(row.instance_id);
        if (it == truth.end() || !it->second) continue;
        ++result.n_out_of_scope;
        if (row.context_changed && *row.context_changed) {
            ++result.detected;
        } else {
            ++result.missed;
        }
    }
    if (result.n_out_of_scope == 0) {
        result.detection_rate = 1.0;
        result.notices.push_back("no out-of-scope cases; detection rate vacuously 1");
    } else {
        result.detection_rate = static_cast<double>(result.detected) /
                                static_cast<double>(result.n_out_of_scope);
    }
    return result;
}

PhaseEfficiency phase_efficiency(const dataio::ResourceLog& log, dataio::Phase phase) {
    PhaseEfficiency result;
    double energy = 0.0;
    bool any_energy = false;
    for (const auto& entry : log.entries) {
        if (entry.phase != phase) continue;
        ++result.n_entries;
        result.total_time_s += entry.wall_time_seconds;
        result.peak_memory_bytes = std::max(result.peak_memory_bytes, entry.peak_memory_bytes);
        if (entry.energy_joules) {
            energy += *entry.energy_joules;
            any_energy = true;
        }
    }
    if (result.n_entries == 0) {
        throw NoEntriesForPhase("resource log has no entries for phase " +
                                dataio::to_string(phase));
    }
    if (any_energy) result.total_energy_joules = energy;
    return result;
}

SuitabilityResult infrastructure_suitability(const dataio::ModelDescriptor& m,
                                             const InfrastructureCapacity& infra) {
    SuitabilityResult result;
    const auto& req = m.infrastructure_requirements;
    if (infra.memory_bytes < req.min_memory_bytes) {
        result.suitable = false;
        result.deficits.push_back("memory: need " + std::to_string(req.min_memory_bytes) +
                                  " bytes, have " + std::to_string(infra.memory_bytes));
    }
    if (infra.compute_units < req.min_compute_units) {
        result.suitable = false;
        result.deficits.push_back(
            "compute: need " + canonical_json::format_double(req.min_compute_units) +
            " units, have " + canonical_json::format_double(infra.compute_units));
    }
    return result;
}

ChecklistOutcome evaluate_checklist(const std::vector<qmodel::ChecklistItemSpec>& spec,
                                    const std::vector<dataio::ChecklistEvidence>& evidence) {
    std::map<std::string, const dataio::ChecklistEvidence*> by_id;
    for (const auto& e : evidence) {
        bool known = false;
        for (const auto& item : spec) {
            if (item.id == e.item_id) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw UnknownItemId("checklist evidence references unknown item '" + e.item_id +
                                "'");
        }
        by_id[e.item_id] = &e;
    }
    ChecklistOutcome outcome;
    for (const auto& item : spec) {
        if (!item.required) continue;
        auto it = by_id.find(item.id);
        if (it == by_id.end()) {
            outcome.pass = false;
            outcome.open_items.emplace_back(item.id, "missing evidence");
            continue;
        }
        if (it->second->status == dataio::ChecklistStatus::No) {
            outcome.pass = false;
            outcome.open_items.emplace_back(item.id, "answered no");
        }
    }
    return outcome;
}

}  // namespace mlqgate::metrics_system
