#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mlqgate/dataio.hpp"

namespace mlqgate::qmodel {

enum class ViewKind { Model, Data, System, Infrastructure, Environment };

enum class MeasurementObjectKind {
    ModelType,
    TrainedModel,
    DevelopmentData,
    RuntimeData,
    DevelopmentAndRuntimeData,
    TrainingProcess,
    Society,
    Scope,
    OutputSupervision,
    ScopeSupervision,
    NonMLComponents,
    Infrastructure,
    TrainingAlgorithm,
    ExecutionAlgorithm,
};

enum class GroundTruth { Full, Partial, None };
enum class AttributeKind { Metric, Checklist };
enum class Evaluability { Normal, Conditional };

// Every measurement object belongs to exactly one view.
ViewKind view_of(MeasurementObjectKind object);
// Report section order: Model, Data, Environment, System, Infrastructure.
int report_rank(ViewKind view);

std::string to_string(ViewKind v);
std::string to_string(MeasurementObjectKind o);
std::string to_string(GroundTruth g);
ViewKind view_from_string(std::string_view s);
MeasurementObjectKind object_from_string(std::string_view s);
GroundTruth ground_truth_from_string(std::string_view s);

enum class Comparator { LE, GE, LT, GT, EQ, WithinRange };

struct Threshold {
    Comparator comparator = Comparator::LE;
    double value = 0.0;
    double high = 0.0;  // upper bound for within-range
    std::string direction_note;

    bool passes(double v) const;
    nlohmann::json to_json() const;
    static Threshold from_json(const nlohmann::json& v, const std::string& where);
};

struct MetricSpec {
    std::string metric_id;
    std::map<std::string, nlohmann::json> params;  // scalar values only
    std::optional<Threshold> threshold;
};

struct ChecklistItemSpec {
    std::string id;
    std::string text;
    bool required = true;
};

struct QualityAttributeSpec {
    std::string id;
    ViewKind view = ViewKind::Model;
    MeasurementObjectKind object = MeasurementObjectKind::ModelType;
    std::string name;
    AttributeKind kind = AttributeKind::Metric;
    std::optional<MetricSpec> metric;
    std::vector<ChecklistItemSpec> checklist_items;
    bool required = true;
    // Runtime-resolved evaluability; set by tailor() when ground truth is
    // partial or absent. Not part of the config serialization.
    Evaluability evaluability = Evaluability::Normal;
};

struct TailoringProfile {
    GroundTruth ground_truth = GroundTruth::Full;
    dataio::TaskKind task = dataio::TaskKind::Classification;
    std::set<ViewKind> selected_views;
    std::set<MeasurementObjectKind> selected_objects;

    void validate() const;  // selected_objects must live in selected views
};

struct QualityModel {
    std::string name;
    std::string version;
    TailoringProfile profile;
    std::vector<QualityAttributeSpec> attributes;  // report order

    void validate() const;
    const QualityAttributeSpec* find(std::string_view attribute_id) const;
};

// --- metric catalogue -----------------------------------------------------
// Closed set of metric ids the evaluator can compute, together with the
// parameter schema and the inputs each one needs.

enum class InputKind {
    Labels,
    Predictions,
    GroupColumn,
    TimestampColumn,
    FoldPredictions,
    RetrainPredictions,
    ResourceLog,
    ModelDescriptor,
    RuntimeData,
};

enum class ParamType { Number, String, Boolean };

struct ParamSpec {
    std::string name;
    ParamType type = ParamType::Number;
    bool required = false;
};

struct MetricInfo {
    std::string id;
    std::vector<ParamSpec> params;
    // Metrics with rule-style parameters accept prefixed keys
    // ("range:<col>", "vocab:<col>", "words:<col>") beyond the declared list.
    bool rule_params = false;
    std::set<InputKind> required_inputs;
    std::string primary_value;  // report value the threshold is applied to
};

const std::map<std::string, MetricInfo>& metric_catalogue();

// --- operations -------------------------------------------------------------

QualityModel quality_model_from_json(const nlohmann::json& v, const std::string& where);
QualityModel load_quality_model(const std::string& path);
// Canonical serialization; load(save(m)) == m and save is byte-stable.
std::string save_quality_model(const QualityModel& model);

// The full quality model shipped with the tool: one attribute per row of the
// derived model (9 model-view, 9 data-view, 2 environment-view, 5
// system-view, 4 infrastructure-view attributes).
QualityModel builtin_default_model();

// Restricts a model to the selected views/objects and marks label-dependent
// attributes conditional when ground truth is partial or absent. Keeps
// relative order; throws EmptyModelError when nothing remains.
QualityModel tailor(const QualityModel& model, const TailoringProfile& profile);

}  // namespace mlqgate::qmodel
