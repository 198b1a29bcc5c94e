#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mlqgate/dataio.hpp"

namespace mlqgate::metrics_data {

using dataio::Dataset;

// One reportable observation. attribute_id is filled in by the evaluator
// when it assembles the report.
struct DataFinding {
    std::string attribute_id;
    std::string column;              // empty for dataset-level findings
    std::optional<std::size_t> row;  // 0-based row index
    double value = 0.0;
    std::string detail;
};

struct RepresentativenessResult {
    std::vector<std::string> flagged_columns;
    double min_adjusted_p = 1.0;
    std::size_t n_tested = 0;
    std::vector<DataFinding> findings;      // one per flagged column
    std::vector<std::string> notices;       // skipped columns etc.
};

// Per shared column: Welch t-test for numeric, chi-square for categorical,
// Bonferroni-adjusted by the number of tested columns. Text/timestamp
// columns are skipped with a notice.
RepresentativenessResult representativeness(const Dataset& dev, const Dataset& runtime,
                                            double alpha = 0.05);

struct OutlierResult {
    std::size_t outlier_count = 0;
    double outlier_fraction = 0.0;
    std::size_t cells_checked = 0;
    std::vector<DataFinding> findings;  // capped
    std::size_t findings_total = 0;
    std::vector<std::string> notices;
};

OutlierResult data_correctness(const Dataset& d, double z_threshold = 3.0);

struct CompletenessResult {
    double completeness = 1.0;
    std::size_t missing_cells = 0;
    std::size_t total_cells = 0;
    std::map<std::string, std::size_t> missing_per_column;
};

CompletenessResult completeness(const Dataset& d);

struct CurrentnessResult {
    double median_age_days = 0.0;
    double max_age_days = 0.0;
    std::size_t missing_timestamps = 0;
    std::size_t future_timestamps = 0;
    std::vector<DataFinding> findings;  // future-timestamp findings, capped
};

CurrentnessResult currentness(const Dataset& d);

enum class RuleKind { NumericRange, Vocabulary, WordCount };

struct ConsistencyRule {
    RuleKind kind = RuleKind::NumericRange;
    std::string column;
    double low = 0.0;
    double high = 0.0;                  // NumericRange / WordCount bounds
    std::set<std::string> vocabulary;   // Vocabulary rule
};

struct IntraConsistencyResult {
    std::size_t violation_count = 0;
    std::vector<DataFinding> violations;  // capped
};

IntraConsistencyResult intra_consistency(const Dataset& d,
                                         const std::vector<ConsistencyRule>& rules);

struct IndependenceResult {
    double exact_overlap = 0.0;
    double near_overlap = 0.0;
};

// Fractions of test rows that also appear in train, exact and near.
IndependenceResult train_test_independence(const Dataset& train, const Dataset& test);

struct BalancednessResult {
    double normalized_entropy = 1.0;
    double imbalance_ratio = 1.0;  // -1.0 when a declared class is unobserved (unbounded)
    bool unbounded = false;
    std::map<std::string, std::uint64_t> class_counts;
    std::vector<std::string> notices;
};

// class_vocabulary: declared label classes; unobserved declared classes count
// as zero only when a vocabulary is given.
BalancednessResult balancedness(const Dataset& d,
                                const std::optional<std::set<std::string>>& class_vocabulary =
                                    std::nullopt);

struct BiasResult {
    double max_positive_rate_gap = 0.0;
    std::map<std::string, double> per_group_rates;
    std::string positive_class;
};

// Positive-label rate per group over the manifest-designated positive class.
BiasResult absence_of_bias(const Dataset& d);

struct InterConsistencyResult {
    std::vector<DataFinding> range_mismatches;  // per-column range / unseen-category findings
    double crosswise_outlier_fraction = 0.0;
    std::size_t crosswise_outliers = 0;
    std::size_t cells_checked = 0;
    std::vector<std::string> notices;
};

// Runtime data audited against the development frame: ranges, unseen
// categories, and |z| > 3 under dev column statistics.
InterConsistencyResult inter_consistency(const Dataset& dev, const Dataset& runtime);

}  // namespace mlqgate::metrics_data
