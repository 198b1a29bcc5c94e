#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mlqgate::dataio {

enum class ColumnType { Numeric, Categorical, Text, Timestamp };
enum class DatasetRole { Development, Runtime };
enum class Subset { Train, Validation, Test };
enum class Phase { Training, Execution, OutputSupervision, ScopeSupervision };
enum class TaskKind { Classification, Regression, Clustering, Other };
enum class ChecklistStatus { Yes, No, NotApplicable };

std::string to_string(ColumnType t);
std::string to_string(DatasetRole r);
std::string to_string(Phase p);
std::string to_string(TaskKind t);
std::string to_string(ChecklistStatus s);
ColumnType column_type_from_string(std::string_view s);
Phase phase_from_string(std::string_view s);
TaskKind task_from_string(std::string_view s);

// ISO-8601 calendar date ("YYYY-MM-DD", optionally with a time suffix that is
// ignored) to days since 1970-01-01. Throws ParseError on anything else.
std::int64_t parse_iso_date(std::string_view s);
std::string format_iso_date(std::int64_t days);

struct ColumnSpec {
    std::string name;
    ColumnType type = ColumnType::Categorical;
};

struct DataManifest {
    DatasetRole role = DatasetRole::Development;
    std::vector<ColumnSpec> columns;
    std::optional<std::string> label_column;
    std::optional<std::string> timestamp_column;
    std::optional<std::string> group_column;
    std::optional<std::string> subset_column;
    std::optional<std::string> positive_class;  // designated positive label for bias/fairness audits
    std::string evaluation_date;                // ISO date anchoring age computations
    std::int64_t evaluation_date_days = 0;
    std::string missing_token;                  // cell value treated as missing, default ""

    void validate() const;  // throws SchemaError on inconsistencies
    std::optional<std::size_t> column_index(std::string_view name) const;
};

// Typed, immutable-after-load tabular data. Column-oriented storage; one
// value array per column (which one is active depends on the column type)
// plus a per-column missing mask.
class Dataset {
public:
    Dataset() = default;

    // Builds a dataset from raw string cells, running the same typing and
    // validation as the CSV loader. row/col coordinates in errors are
    // 1-based data coordinates (header excluded).
    static Dataset from_rows(DataManifest manifest,
                             const std::vector<std::vector<std::string>>& rows);

    const DataManifest& manifest() const { return manifest_; }
    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return manifest_.columns.size(); }

    std::size_t column_index(std::string_view name) const;  // throws SchemaMismatch
    const ColumnSpec& column(std::size_t c) const { return manifest_.columns[c]; }

    bool is_missing(std::size_t c, std::size_t r) const { return missing_[c][r] != 0; }
    double number_at(std::size_t c, std::size_t r) const { return numbers_[c][r]; }
    const std::string& text_at(std::size_t c, std::size_t r) const { return strings_[c][r]; }
    std::int64_t days_at(std::size_t c, std::size_t r) const { return days_[c][r]; }

    std::size_t missing_count(std::size_t c) const;
    std::size_t total_missing() const;

    // Non-missing numeric values of a column, in row order.
    std::vector<double> numeric_values(std::size_t c) const;
    // Value -> count over non-missing cells of a categorical/text column.
    std::map<std::string, std::uint64_t> category_counts(std::size_t c) const;

    std::optional<Subset> subset_of_row(std::size_t r) const;
    Dataset select_rows(const std::vector<std::size_t>& row_indices) const;

private:
    DataManifest manifest_;
    std::size_t n_rows_ = 0;
    std::vector<std::vector<double>> numbers_;
    std::vector<std::vector<std::string>> strings_;
    std::vector<std::vector<std::int64_t>> days_;
    std::vector<std::vector<std::uint8_t>> missing_;
};

struct SubsetSplit {
    Dataset train;
    Dataset validation;
    Dataset test;
    std::vector<std::string> warnings;  // one entry per empty subset
};

struct PredictionRow {
    std::string instance_id;
    std::optional<std::string> true_label;
    std::string predicted_label;
    std::optional<double> score;  // in [0, 1]
    std::optional<std::string> group;
    std::optional<bool> supervisor_flag;
    std::optional<bool> context_changed;
};

struct PredictionTable {
    std::vector<PredictionRow> rows;

    std::size_t labeled_count() const;
    bool any_group() const;
    bool any_supervisor_flag() const;
    bool any_context_flag() const;
    void validate() const;  // uniqueness of ids, score range
};

enum class RetrainKind { KFold, LeaveOneOut };

struct RetrainRun {
    std::string run_id;
    std::vector<std::string> held_out_ids;
    PredictionTable predictions;
};

struct RetrainPredictionSet {
    RetrainKind kind = RetrainKind::KFold;
    std::vector<std::string> instance_ids;  // id universe the runs must cover
    std::vector<RetrainRun> runs;
    std::optional<PredictionTable> full_model_predictions;  // probe predictions of the model trained on all data

    void validate() const;  // partition / coverage invariants
};

struct ResourceEntry {
    Phase phase = Phase::Training;
    double wall_time_seconds = 0.0;
    std::uint64_t peak_memory_bytes = 0;
    std::optional<double> energy_joules;
};

struct ResourceLog {
    std::vector<ResourceEntry> entries;
};

struct InfrastructureRequirements {
    std::uint64_t min_memory_bytes = 0;
    double min_compute_units = 0.0;
};

struct ModelDescriptor {
    std::string model_type_name;
    TaskKind task = TaskKind::Classification;
    std::vector<ColumnType> supported_column_types;
    std::uint64_t n_parameters = 0;
    std::optional<std::uint64_t> depth;
    std::uint64_t storage_bytes = 0;
    InfrastructureRequirements infrastructure_requirements;

    bool supports(ColumnType t) const;
};

struct ChecklistEvidence {
    std::string item_id;
    ChecklistStatus status = ChecklistStatus::No;
    std::string note;
};

// --- loaders -----------------------------------------------------------

// Strict RFC-4180 CSV: header row, quoted fields, no type coercion.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

Dataset load_dataset(const std::string& data_path, const std::string& manifest_path);
DataManifest load_manifest(const std::string& manifest_path);
SubsetSplit split_subsets(const Dataset& d);

PredictionTable load_predictions(const std::string& path);
RetrainPredictionSet load_retrain_predictions(const std::string& dir);
ResourceLog load_resource_log(const std::string& path);
ModelDescriptor load_model_descriptor(const std::string& path);
std::vector<ChecklistEvidence> load_checklist_evidence(const std::string& path);

// --- writers (simulator and export-mode parity) ------------------------

void write_prediction_csv(const std::string& path, const PredictionTable& table);
void write_retrain_predictions(const std::string& dir, const RetrainPredictionSet& set);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);
std::string sha256_hex(std::string_view content);

}  // namespace mlqgate::dataio
