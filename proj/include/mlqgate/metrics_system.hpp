#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mlqgate/dataio.hpp"
#include "mlqgate/qmodel.hpp"
#include "mlqgate/statcore.hpp"

namespace mlqgate::metrics_system {

using dataio::Dataset;

// Application-scope description built from development data only: ranges and
// vocabularies plus a self-calibrated novelty threshold on k-NN distances.
struct ScopeProfile {
    struct NumericRange {
        std::string column;
        double min = 0.0;
        double max = 0.0;
        double mean = 0.0;
        double std = 0.0;
    };
    std::vector<NumericRange> numeric;                          // declaration order
    std::map<std::string, std::set<std::string>> vocabularies;  // categorical column -> values
    std::vector<std::string> feature_columns;                   // numeric columns fed to k-NN
    statcore::Matrix reference;  // dev rows in feature space, missing cells mean-imputed
    std::size_t k = 5;
    double calibration_quantile = 0.99;
    double threshold_distance = 0.0;
};

ScopeProfile build_scope_profile(const Dataset& dev, std::size_t k = 5, double quantile = 0.99);

struct ScopeComplianceResult {
    double in_scope_fraction = 1.0;
    std::vector<std::string> out_of_scope_ids;  // row ordinals as strings
    std::vector<std::uint8_t> out_of_scope_mask;
    std::map<std::string, std::string> reasons;  // id -> triggers (range/vocabulary/novelty)
};

// A runtime row is out of scope when any numeric value leaves the profiled
// range, a categorical value is outside the vocabulary, or its k-NN distance
// to the development data exceeds the calibrated threshold.
ScopeComplianceResult scope_compliance(const ScopeProfile& profile, const Dataset& runtime);

struct SupervisionEffectiveness {
    double error_recall = 0.0;
    double false_alarm_rate = 0.0;
    std::uint64_t n_wrong = 0;
    std::uint64_t n_correct = 0;
    std::vector<std::string> notices;  // 0/0 conventions
};

SupervisionEffectiveness output_supervision_effectiveness(const dataio::PredictionTable& p);

struct ScopeSupervisionResult {
    std::uint64_t detected = 0;
    std::uint64_t missed = 0;
    std::uint64_t n_out_of_scope = 0;
    double detection_rate = 1.0;  // 1.0 by convention when nothing was out of scope
    std::vector<std::string> notices;
};

// truth: instance id -> actually out of scope.
ScopeSupervisionResult scope_supervision_effectiveness(
    const dataio::PredictionTable& p, const std::map<std::string, bool>& truth);

struct PhaseEfficiency {
    double total_time_s = 0.0;
    std::uint64_t peak_memory_bytes = 0;
    std::optional<double> total_energy_joules;  // absent when no entry carries energy
    std::size_t n_entries = 0;
};

PhaseEfficiency phase_efficiency(const dataio::ResourceLog& log, dataio::Phase phase);

struct InfrastructureCapacity {
    std::uint64_t memory_bytes = 0;
    double compute_units = 0.0;
};

struct SuitabilityResult {
    bool suitable = true;
    std::vector<std::string> deficits;
};

SuitabilityResult infrastructure_suitability(const dataio::ModelDescriptor& m,
                                             const InfrastructureCapacity& infra);

struct ChecklistOutcome {
    bool pass = true;
    std::vector<std::pair<std::string, std::string>> open_items;  // item id -> reason
};

// Pass iff every required item has evidence with status yes or
// not_applicable; missing evidence for a required item counts as open.
ChecklistOutcome evaluate_checklist(const std::vector<qmodel::ChecklistItemSpec>& spec,
                                    const std::vector<dataio::ChecklistEvidence>& evidence);

}  // namespace mlqgate::metrics_system
