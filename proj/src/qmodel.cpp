#include "mlqgate/qmodel.hpp"

#include <algorithm>

#include "mlqgate/canonical_json.hpp"
#include "mlqgate/errors.hpp"

namespace mlqgate::qmodel {

using nlohmann::json;

// --- enum spellings -----------------------------------------------------

ViewKind view_of(MeasurementObjectKind object) {
    switch (object) {
        case MeasurementObjectKind::ModelType:
        case MeasurementObjectKind::TrainedModel:
            return ViewKind::Model;
        case MeasurementObjectKind::DevelopmentData:
        case MeasurementObjectKind::RuntimeData:
        case MeasurementObjectKind::DevelopmentAndRuntimeData:
            return ViewKind::Data;
        case MeasurementObjectKind::TrainingProcess:
        case MeasurementObjectKind::Society:
            return ViewKind::Environment;
        case MeasurementObjectKind::Scope:
        case MeasurementObjectKind::OutputSupervision:
        case MeasurementObjectKind::ScopeSupervision:
            return ViewKind::System;
        case MeasurementObjectKind::NonMLComponents:
        case MeasurementObjectKind::Infrastructure:
        case MeasurementObjectKind::TrainingAlgorithm:
        case MeasurementObjectKind::ExecutionAlgorithm:
            return ViewKind::Infrastructure;
    }
    throw Error("unreachable object kind");
}

int report_rank(ViewKind view) {
    switch (view) {
        case ViewKind::Model: return 0;
        case ViewKind::Data: return 1;
        case ViewKind::Environment: return 2;
        case ViewKind::System: return 3;
        case ViewKind::Infrastructure: return 4;
    }
    return 5;
}

std::string to_string(ViewKind v) {
    switch (v) {
        case ViewKind::Model: return "model";
        case ViewKind::Data: return "data";
        case ViewKind::System: return "system";
        case ViewKind::Infrastructure: return "infrastructure";
        case ViewKind::Environment: return "environment";
    }
    return "?";
}

std::string to_string(MeasurementObjectKind o) {
    switch (o) {
        case MeasurementObjectKind::ModelType: return "model_type";
        case MeasurementObjectKind::TrainedModel: return "trained_model";
        case MeasurementObjectKind::DevelopmentData: return "development_data";
        case MeasurementObjectKind::RuntimeData: return "runtime_data";
        case MeasurementObjectKind::DevelopmentAndRuntimeData: return "development_and_runtime_data";
        case MeasurementObjectKind::TrainingProcess: return "training_process";
        case MeasurementObjectKind::Society: return "society";
        case MeasurementObjectKind::Scope: return "scope";
        case MeasurementObjectKind::OutputSupervision: return "output_supervision";
        case MeasurementObjectKind::ScopeSupervision: return "scope_supervision";
        case MeasurementObjectKind::NonMLComponents: return "non_ml_components";
        case MeasurementObjectKind::Infrastructure: return "infrastructure";
        case MeasurementObjectKind::TrainingAlgorithm: return "training_algorithm";
        case MeasurementObjectKind::ExecutionAlgorithm: return "execution_algorithm";
    }
    return "?";
}

std::string to_string(GroundTruth g) {
    switch (g) {
        case GroundTruth::Full: return "full";
        case GroundTruth::Partial: return "partial";
        case GroundTruth::None: return "none";
    }
    return "?";
}

ViewKind view_from_string(std::string_view s) {
    if (s == "model") return ViewKind::Model;
    if (s == "data") return ViewKind::Data;
    if (s == "system") return ViewKind::System;
    if (s == "infrastructure") return ViewKind::Infrastructure;
    if (s == "environment") return ViewKind::Environment;
    throw SchemaError("unknown view '" + std::string(s) + "'");
}

MeasurementObjectKind object_from_string(std::string_view s) {
    static const std::map<std::string, MeasurementObjectKind, std::less<>> map = {
        {"model_type", MeasurementObjectKind::ModelType},
        {"trained_model", MeasurementObjectKind::TrainedModel},
        {"development_data", MeasurementObjectKind::DevelopmentData},
        {"runtime_data", MeasurementObjectKind::RuntimeData},
        {"development_and_runtime_data", MeasurementObjectKind::DevelopmentAndRuntimeData},
        {"training_process", MeasurementObjectKind::TrainingProcess},
        {"society", MeasurementObjectKind::Society},
        {"scope", MeasurementObjectKind::Scope},
        {"output_supervision", MeasurementObjectKind::OutputSupervision},
        {"scope_supervision", MeasurementObjectKind::ScopeSupervision},
        {"non_ml_components", MeasurementObjectKind::NonMLComponents},
        {"infrastructure", MeasurementObjectKind::Infrastructure},
        {"training_algorithm", MeasurementObjectKind::TrainingAlgorithm},
        {"execution_algorithm", MeasurementObjectKind::ExecutionAlgorithm},
    };
    auto it = map.find(s);
    if (it == map.end()) throw SchemaError("unknown measurement object '" + std::string(s) + "'");
    return it->second;
}

GroundTruth ground_truth_from_string(std::string_view s) {
    if (s == "full") return GroundTruth::Full;
    if (s == "partial") return GroundTruth::Partial;
    if (s == "none") return GroundTruth::None;
    throw SchemaError("unknown ground_truth '" + std::string(s) + "' (expected full|partial|none)");
}

// --- threshold ------------------------------------------------------------

namespace {

std::string comparator_to_string(Comparator c) {
    switch (c) {
        case Comparator::LE: return "<=";
        case Comparator::GE: return ">=";
        case Comparator::LT: return "<";
        case Comparator::GT: return ">";
        case Comparator::EQ: return "==";
        case Comparator::WithinRange: return "within-range";
    }
    return "?";
}

Comparator comparator_from_string(std::string_view s) {
    if (s == "<=") return Comparator::LE;
    if (s == ">=") return Comparator::GE;
    if (s == "<") return Comparator::LT;
    if (s == ">") return Comparator::GT;
    if (s == "==") return Comparator::EQ;
    if (s == "within-range") return Comparator::WithinRange;
    throw SchemaError("unknown comparator '" + std::string(s) + "'");
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
    if (!obj.is_object()) throw SchemaError(where + ": expected a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* k) { return it.key() == k; }) == allowed.end()) {
            throw SchemaError(where + ": unknown key '" + it.key() + "'");
        }
    }
}

const json& require_key(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(where + ": missing key '" + std::string(key) + "'");
    return *it;
}

}  // namespace

bool Threshold::passes(double v) const {
    switch (comparator) {
        case Comparator::LE: return v <= value;
        case Comparator::GE: return v >= value;
        case Comparator::LT: return v < value;
        case Comparator::GT: return v > value;
        case Comparator::EQ: return v == value;
        case Comparator::WithinRange: return v >= value && v <= high;
    }
    return false;
}

json Threshold::to_json() const {
    json out;
    out["comparator"] = comparator_to_string(comparator);
    if (comparator == Comparator::WithinRange) {
        out["value"] = json::array({value, high});
    } else {
        out["value"] = value;
    }
    if (!direction_note.empty()) out["direction_note"] = direction_note;
    return out;
}

Threshold Threshold::from_json(const json& v, const std::string& where) {
    check_keys(v, {"comparator", "value", "direction_note"}, where);
    Threshold t;
    t.comparator =
        comparator_from_string(require_key(v, "comparator", where).get<std::string>());
    const json& value = require_key(v, "value", where);
    if (t.comparator == Comparator::WithinRange) {
        if (!value.is_array() || value.size() != 2) {
            throw SchemaError(where + ": within-range threshold needs [low, high]");
        }
        t.value = value[0].get<double>();
        t.high = value[1].get<double>();
        if (t.value > t.high) {
            throw SchemaError(where + ": within-range threshold has low > high");
        }
    } else {
        if (!value.is_number()) {
            throw SchemaError(where + ": threshold value must be a number");
        }
        t.value = value.get<double>();
    }
    if (auto it = v.find("direction_note"); it != v.end()) {
        t.direction_note = it->get<std::string>();
    }
    return t;
}

// --- catalogue --------------------------------------------------------------

const std::map<std::string, MetricInfo>& metric_catalogue() {
    static const std::map<std::string, MetricInfo> catalogue = [] {
        std::map<std::string, MetricInfo> m;
        auto add = [&m](MetricInfo info) { m.emplace(info.id, std::move(info)); };
        const ParamSpec learner{"learner", ParamType::String, false};

        add({"goodness_of_fit_dev", {learner}, false, {InputKind::Labels}, "accuracy"});
        add({"goodness_of_fit_runtime", {}, false,
             {InputKind::Labels, InputKind::Predictions}, "accuracy"});
        add({"cv_goodness_variance",
             {{"k", ParamType::Number, false}, learner},
             false,
             {InputKind::Labels, InputKind::FoldPredictions},
             "variance"});
        add({"robustness_ela",
             {{"noise_levels", ParamType::String, false}, learner},
             false,
             {InputKind::Labels},
             "ela_max"});
        add({"loo_stability",
             {{"cap", ParamType::Number, false}, learner},
             false,
             {InputKind::Labels, InputKind::RetrainPredictions},
             "stability"});
        add({"fairness_equalized_odds",
             {{"positive_class", ParamType::String, false}},
             false,
             {InputKind::Labels, InputKind::Predictions, InputKind::GroupColumn},
             "eo_gap"});
        add({"interpretability_complexity", {}, false, {InputKind::ModelDescriptor},
             "n_parameters"});
        add({"model_storage", {}, false, {InputKind::ModelDescriptor}, "storage_bytes"});
        add({"model_type_appropriateness", {}, false, {InputKind::ModelDescriptor},
             "compatible"});

        add({"representativeness",
             {{"alpha", ParamType::Number, false}},
             false,
             {InputKind::RuntimeData},
             "n_flagged_columns"});
        add({"data_correctness",
             {{"z_threshold", ParamType::Number, false}},
             false,
             {},
             "outlier_fraction"});
        add({"completeness", {}, false, {}, "completeness"});
        add({"currentness", {}, false, {InputKind::TimestampColumn}, "median_age_days"});
        add({"intra_consistency", {}, true, {}, "violation_count"});
        add({"train_test_independence", {}, false, {}, "near_overlap"});
        add({"balancedness",
             {{"class_vocabulary", ParamType::String, false}},
             false,
             {InputKind::Labels},
             "normalized_entropy"});
        add({"absence_of_bias", {}, false, {InputKind::Labels, InputKind::GroupColumn},
             "max_positive_rate_gap"});
        add({"inter_consistency", {}, false, {InputKind::RuntimeData},
             "crosswise_outlier_fraction"});

        add({"training_energy", {}, false, {InputKind::ResourceLog}, "total_energy_joules"});

        add({"scope_compliance",
             {{"k", ParamType::Number, false}, {"quantile", ParamType::Number, false}},
             false,
             {InputKind::RuntimeData},
             "in_scope_fraction"});
        add({"output_supervision_effectiveness", {}, false,
             {InputKind::Labels, InputKind::Predictions}, "error_recall"});
        add({"output_supervision_overhead", {}, false, {InputKind::ResourceLog},
             "total_time_s"});
        add({"scope_supervision_effectiveness", {}, false,
             {InputKind::Predictions, InputKind::RuntimeData}, "detection_rate"});
        add({"scope_supervision_overhead", {}, false, {InputKind::ResourceLog},
             "total_time_s"});

        add({"infrastructure_suitability",
             {{"available_memory_bytes", ParamType::Number, true},
              {"available_compute_units", ParamType::Number, true}},
             false,
             {InputKind::ModelDescriptor},
             "suitable"});
        add({"training_efficiency", {}, false, {InputKind::ResourceLog}, "total_time_s"});
        add({"execution_efficiency", {}, false, {InputKind::ResourceLog}, "total_time_s"});
        return m;
    }();
    return catalogue;
}

namespace {

std::string catalogue_ids_joined() {
    std::string out;
    for (const auto& [id, _] : metric_catalogue()) {
        if (!out.empty()) out += ", ";
        out += id;
    }
    return out;
}

bool is_rule_param(const std::string& name) {
    return name.rfind("range:", 0) == 0 || name.rfind("vocab:", 0) == 0 ||
           name.rfind("words:", 0) == 0;
}

void validate_params(const MetricSpec& spec, const MetricInfo& info, const std::string& where) {
    for (const auto& [name, value] : spec.params) {
        if (!value.is_number() && !value.is_string() && !value.is_boolean()) {
            throw SchemaError(where + ": param '" + name + "' must be a scalar");
        }
        if (info.rule_params && is_rule_param(name)) {
            if (!value.is_string()) {
                throw SchemaError(where + ": rule param '" + name + "' must be a string");
            }
            continue;
        }
        auto it = std::find_if(info.params.begin(), info.params.end(),
                               [&](const ParamSpec& p) { return p.name == name; });
        if (it == info.params.end()) {
            throw SchemaError(where + ": unknown param '" + name + "' for metric '" +
                              info.id + "'");
        }
        const bool ok = (it->type == ParamType::Number && value.is_number()) ||
                        (it->type == ParamType::String && value.is_string()) ||
                        (it->type == ParamType::Boolean && value.is_boolean());
        if (!ok) {
            throw SchemaError(where + ": param '" + name + "' has the wrong type");
        }
    }
    for (const auto& p : info.params) {
        if (p.required && !spec.params.count(p.name)) {
            throw SchemaError(where + ": metric '" + info.id + "' requires param '" + p.name +
                              "'");
        }
    }
}

}  // namespace

// --- profile / model validation ------------------------------------------

void TailoringProfile::validate() const {
    for (const auto object : selected_objects) {
        if (!selected_views.count(view_of(object))) {
            throw SchemaError("profile: object '" + qmodel::to_string(object) +
                              "' selected without its view '" +
                              qmodel::to_string(view_of(object)) + "'");
        }
    }
}

void QualityModel::validate() const {
    if (name.empty()) throw SchemaError("quality model: empty name");
    profile.validate();
    std::set<std::string> ids;
    std::set<std::string> item_ids;
    for (const auto& attr : attributes) {
        const std::string where = "attribute '" + attr.id + "'";
        if (attr.id.empty()) throw SchemaError("quality model: attribute with empty id");
        if (!ids.insert(attr.id).second) {
            throw SchemaError("duplicate attribute id '" + attr.id + "'");
        }
        if (view_of(attr.object) != attr.view) {
            throw SchemaError(where + ": object '" + qmodel::to_string(attr.object) +
                              "' does not belong to view '" + qmodel::to_string(attr.view) +
                              "'");
        }
        if (attr.kind == AttributeKind::Metric) {
            if (!attr.metric) {
                throw SchemaError(where + ": metric attribute without a metric spec");
            }
            auto it = metric_catalogue().find(attr.metric->metric_id);
            if (it == metric_catalogue().end()) {
                throw SchemaError(where + ": unknown metric_id '" + attr.metric->metric_id +
                                  "'; valid ids: " + catalogue_ids_joined());
            }
            validate_params(*attr.metric, it->second, where);
        } else {
            if (attr.checklist_items.empty()) {
                throw SchemaError(where + ": checklist attribute without items");
            }
            if (attr.metric) {
                throw SchemaError(where + ": checklist attribute must not carry a metric");
            }
        }
        for (const auto& item : attr.checklist_items) {
            if (item.id.empty()) throw SchemaError(where + ": checklist item with empty id");
            if (!item_ids.insert(item.id).second) {
                throw SchemaError("duplicate checklist item id '" + item.id + "'");
            }
        }
    }
}

const QualityAttributeSpec* QualityModel::find(std::string_view attribute_id) const {
    for (const auto& attr : attributes) {
        if (attr.id == attribute_id) return &attr;
    }
    return nullptr;
}

// --- JSON (config format) ---------------------------------------------------

QualityModel quality_model_from_json(const json& v, const std::string& where) {
    check_keys(v, {"name", "version", "profile", "attributes"}, where);
    QualityModel model;
    model.name = require_key(v, "name", where).get<std::string>();
    model.version = require_key(v, "version", where).get<std::string>();

    const json& profile = require_key(v, "profile", where);
    check_keys(profile, {"ground_truth", "task", "selected_views", "selected_objects"},
               where + ": profile");
    model.profile.ground_truth =
        ground_truth_from_string(require_key(profile, "ground_truth", where).get<std::string>());
    model.profile.task =
        dataio::task_from_string(require_key(profile, "task", where).get<std::string>());
    for (const auto& view : require_key(profile, "selected_views", where)) {
        model.profile.selected_views.insert(view_from_string(view.get<std::string>()));
    }
    for (const auto& object : require_key(profile, "selected_objects", where)) {
        model.profile.selected_objects.insert(object_from_string(object.get<std::string>()));
    }

    for (const auto& attr_json : require_key(v, "attributes", where)) {
        const std::string id =
            attr_json.is_object() && attr_json.contains("id") && attr_json["id"].is_string()
                ? attr_json["id"].get<std::string>()
                : "?";
        const std::string attr_where = where + ": attribute '" + id + "'";
        check_keys(attr_json,
                   {"id", "view", "object", "name", "kind", "metric", "checklist_items",
                    "required"},
                   attr_where);
        QualityAttributeSpec attr;
        attr.id = require_key(attr_json, "id", attr_where).get<std::string>();
        attr.view = view_from_string(require_key(attr_json, "view", attr_where).get<std::string>());
        attr.object =
            object_from_string(require_key(attr_json, "object", attr_where).get<std::string>());
        attr.name = require_key(attr_json, "name", attr_where).get<std::string>();
        const std::string kind = require_key(attr_json, "kind", attr_where).get<std::string>();
        if (kind == "metric") attr.kind = AttributeKind::Metric;
        else if (kind == "checklist") attr.kind = AttributeKind::Checklist;
        else throw SchemaError(attr_where + ": kind must be metric|checklist");

        if (auto it = attr_json.find("metric"); it != attr_json.end() && !it->is_null()) {
            check_keys(*it, {"metric_id", "params", "threshold"}, attr_where + ": metric");
            MetricSpec spec;
            spec.metric_id = require_key(*it, "metric_id", attr_where).get<std::string>();
            if (auto params = it->find("params"); params != it->end()) {
                if (!params->is_object()) {
                    throw SchemaError(attr_where + ": params must be an object");
                }
                for (auto p = params->begin(); p != params->end(); ++p) {
                    spec.params[p.key()] = p.value();
                }
            }
            if (auto thr = it->find("threshold"); thr != it->end() && !thr->is_null()) {
                spec.threshold = Threshold::from_json(*thr, attr_where + ": threshold");
            }
            attr.metric = std::move(spec);
        }
        if (auto it = attr_json.find("checklist_items"); it != attr_json.end() && !it->is_null()) {
            for (const auto& item_json : *it) {
                check_keys(item_json, {"id", "text", "required"}, attr_where + ": checklist item");
                ChecklistItemSpec item;
                item.id = require_key(item_json, "id", attr_where).get<std::string>();
                item.text = require_key(item_json, "text", attr_where).get<std::string>();
                if (auto req = item_json.find("required"); req != item_json.end()) {
                    item.required = req->get<bool>();
                }
                attr.checklist_items.push_back(std::move(item));
            }
        }
        if (auto it = attr_json.find("required"); it != attr_json.end()) {
            attr.required = it->get<bool>();
        }
        model.attributes.push_back(std::move(attr));
    }
    model.validate();
    return model;
}

QualityModel load_quality_model(const std::string& path) {
    const std::string text = dataio::read_file(path);
    json v = json::parse(text, nullptr, false);
    if (v.is_discarded()) {
        throw ParseError("malformed JSON in " + path);
    }
    return quality_model_from_json(v, path);
}

std::string save_quality_model(const QualityModel& model) {
    json v;
    v["name"] = model.name;
    v["version"] = model.version;
    json profile;
    profile["ground_truth"] = to_string(model.profile.ground_truth);
    profile["task"] = dataio::to_string(model.profile.task);
    json views = json::array();
    for (const auto view : model.profile.selected_views) views.push_back(to_string(view));
    json objects = json::array();
    for (const auto object : model.profile.selected_objects) {
        objects.push_back(to_string(object));
    }
    profile["selected_views"] = std::move(views);
    profile["selected_objects"] = std::move(objects);
    v["profile"] = std::move(profile);

    json attributes = json::array();
    for (const auto& attr : model.attributes) {
        json a;
        a["id"] = attr.id;
        a["view"] = to_string(attr.view);
        a["object"] = to_string(attr.object);
        a["name"] = attr.name;
        a["kind"] = attr.kind == AttributeKind::Metric ? "metric" : "checklist";
        a["required"] = attr.required;
        if (attr.metric) {
            json m;
            m["metric_id"] = attr.metric->metric_id;
            json params = json::object();
            for (const auto& [k, value] : attr.metric->params) params[k] = value;
            m["params"] = std::move(params);
            if (attr.metric->threshold) {
                m["threshold"] = attr.metric->threshold->to_json();
            }
            a["metric"] = std::move(m);
        }
        if (!attr.checklist_items.empty()) {
            json items = json::array();
            for (const auto& item : attr.checklist_items) {
                items.push_back(
                    {{"id", item.id}, {"text", item.text}, {"required", item.required}});
            }
            a["checklist_items"] = std::move(items);
        }
        attributes.push_back(std::move(a));
    }
    v["attributes"] = std::move(attributes);
    return canonical_json::dump(v);
}

// --- builtin model ------------------------------------------------------------

namespace {

QualityAttributeSpec metric_attribute(std::string id, MeasurementObjectKind object,
                                      std::string name, std::string metric_id,
                                      std::map<std::string, json> params,
                                      Threshold threshold) {
    QualityAttributeSpec attr;
    attr.id = std::move(id);
    attr.object = object;
    attr.view = view_of(object);
    attr.name = std::move(name);
    attr.kind = AttributeKind::Metric;
    MetricSpec spec;
    spec.metric_id = std::move(metric_id);
    spec.params = std::move(params);
    spec.threshold = std::move(threshold);
    attr.metric = std::move(spec);
    return attr;
}

QualityAttributeSpec checklist_attribute(std::string id, MeasurementObjectKind object,
                                         std::string name,
                                         std::vector<ChecklistItemSpec> items) {
    QualityAttributeSpec attr;
    attr.id = std::move(id);
    attr.object = object;
    attr.view = view_of(object);
    attr.name = std::move(name);
    attr.kind = AttributeKind::Checklist;
    attr.checklist_items = std::move(items);
    return attr;
}

Threshold at_most(double v, std::string note = {}) {
    return Threshold{Comparator::LE, v, 0.0, std::move(note)};
}

Threshold at_least(double v, std::string note = {}) {
    return Threshold{Comparator::GE, v, 0.0, std::move(note)};
}

}  // namespace

QualityModel builtin_default_model() {
    QualityModel model;
    model.name = "mlqgate-default";
    model.version = "1.0";
    model.profile.ground_truth = GroundTruth::Full;
    model.profile.task = dataio::TaskKind::Classification;
    model.profile.selected_views = {ViewKind::Model, ViewKind::Data, ViewKind::Environment,
                                    ViewKind::System, ViewKind::Infrastructure};
    model.profile.selected_objects = {
        MeasurementObjectKind::ModelType,        MeasurementObjectKind::TrainedModel,
        MeasurementObjectKind::DevelopmentData,  MeasurementObjectKind::RuntimeData,
        MeasurementObjectKind::DevelopmentAndRuntimeData,
        MeasurementObjectKind::TrainingProcess,  MeasurementObjectKind::Society,
        MeasurementObjectKind::Scope,            MeasurementObjectKind::OutputSupervision,
        MeasurementObjectKind::ScopeSupervision, MeasurementObjectKind::NonMLComponents,
        MeasurementObjectKind::Infrastructure,   MeasurementObjectKind::TrainingAlgorithm,
        MeasurementObjectKind::ExecutionAlgorithm};

    auto& attrs = model.attributes;

    // Model view.
    attrs.push_back(checklist_attribute(
        "model_type_appropriateness", MeasurementObjectKind::ModelType, "Appropriateness",
        {{"mta_task", "Model type supports the task of the use case", true},
         {"mta_data_types",
          "Model type handles every input column type present in the data", true}}));
    attrs.push_back(metric_attribute("gof_development", MeasurementObjectKind::TrainedModel,
                                     "Development Correctness (Goodness of Fit)",
                                     "goodness_of_fit_dev", {{"learner", "gaussian_nb"}},
                                     at_least(0.8, "higher accuracy is better")));
    attrs.push_back(metric_attribute("gof_runtime", MeasurementObjectKind::TrainedModel,
                                     "Runtime Correctness (Goodness of Fit)",
                                     "goodness_of_fit_runtime", {},
                                     at_least(0.8, "higher accuracy is better")));
    attrs.push_back(metric_attribute(
        "relevance_cv_variance", MeasurementObjectKind::TrainedModel,
        "Relevance (Bias-Variance Tradeoff)", "cv_goodness_variance",
        {{"k", 5}, {"learner", "gaussian_nb"}}, at_most(0.02, "lower fold variance is better")));
    attrs.push_back(metric_attribute(
        "robustness", MeasurementObjectKind::TrainedModel, "Robustness", "robustness_ela",
        {{"noise_levels", "0.1,0.2,0.3"}, {"learner", "gaussian_nb"}},
        at_most(0.5, "lower equalized loss of accuracy is better")));
    attrs.push_back(metric_attribute("stability", MeasurementObjectKind::TrainedModel,
                                     "Stability", "loo_stability",
                                     {{"cap", 50}, {"learner", "gaussian_nb"}},
                                     at_least(0.9, "higher agreement is better")));
    attrs.push_back(metric_attribute("fairness", MeasurementObjectKind::TrainedModel, "Fairness",
                                     "fairness_equalized_odds", {},
                                     at_most(0.2, "lower equalized-odds gap is better")));
    attrs.push_back(metric_attribute("interpretability", MeasurementObjectKind::TrainedModel,
                                     "Interpretability", "interpretability_complexity", {},
                                     at_most(1e6, "fewer parameters are easier to interpret")));
    attrs.push_back(metric_attribute(
        "model_resource_utilization", MeasurementObjectKind::TrainedModel,
        "Resource Utilization", "model_storage", {},
        at_most(1073741824.0, "trained model storage at most 1 GiB")));

    // Data view.
    attrs.push_back(metric_attribute("representativeness",
                                     MeasurementObjectKind::DevelopmentData, "Representativeness",
                                     "representativeness", {{"alpha", 0.05}},
                                     at_most(0.0, "no column may drift significantly")));
    attrs.push_back(metric_attribute("data_correctness", MeasurementObjectKind::DevelopmentData,
                                     "Correctness", "data_correctness", {{"z_threshold", 3.0}},
                                     at_most(0.01, "lower outlier fraction is better")));
    attrs.push_back(metric_attribute("data_completeness", MeasurementObjectKind::DevelopmentData,
                                     "Completeness", "completeness", {},
                                     at_least(0.95, "higher completeness is better")));
    attrs.push_back(metric_attribute("data_currentness", MeasurementObjectKind::DevelopmentData,
                                     "Currentness", "currentness", {},
                                     at_most(365.0, "median age at most one year")));
    attrs.push_back(metric_attribute("intra_consistency", MeasurementObjectKind::DevelopmentData,
                                     "Intra-Consistency", "intra_consistency", {},
                                     at_most(0.0, "no rule violations allowed")));
    attrs.push_back(metric_attribute(
        "train_test_independence", MeasurementObjectKind::DevelopmentData,
        "Train/Test Independence", "train_test_independence", {},
        at_most(0.02, "lower train/test overlap is better")));
    attrs.push_back(metric_attribute("balancedness", MeasurementObjectKind::DevelopmentData,
                                     "Balancedness", "balancedness", {},
                                     at_least(0.5, "higher class entropy is better")));
    attrs.push_back(metric_attribute("absence_of_bias", MeasurementObjectKind::DevelopmentData,
                                     "Absence of Bias", "absence_of_bias", {},
                                     at_most(0.2, "lower group rate gap is better")));
    attrs.push_back(metric_attribute(
        "inter_consistency", MeasurementObjectKind::DevelopmentAndRuntimeData,
        "Inter-Consistency", "inter_consistency", {},
        at_most(0.05, "lower crosswise outlier fraction is better")));

    // Environment view.
    attrs.push_back(metric_attribute("environmental_impact",
                                     MeasurementObjectKind::TrainingProcess,
                                     "Environmental Impact", "training_energy", {},
                                     at_most(3.6e6, "training energy at most 1 kWh")));
    attrs.push_back(checklist_attribute(
        "social_impact", MeasurementObjectKind::Society, "Social Impact",
        {{"si_employee_impact",
          "Impact on affected employees has been assessed and mitigations documented",
          true}}));

    // System view.
    attrs.push_back(metric_attribute("scope_compliance", MeasurementObjectKind::Scope,
                                     "Scope Compliance", "scope_compliance",
                                     {{"k", 5}, {"quantile", 0.99}},
                                     at_least(0.9, "higher in-scope fraction is better")));
    attrs.push_back(metric_attribute(
        "output_supervision_effectiveness", MeasurementObjectKind::OutputSupervision,
        "Output Supervision Effectiveness", "output_supervision_effectiveness", {},
        at_least(0.5, "higher error recall is better")));
    attrs.push_back(metric_attribute(
        "output_supervision_overhead", MeasurementObjectKind::OutputSupervision,
        "Output Supervision Overhead", "output_supervision_overhead", {},
        at_most(3600.0, "supervision time at most one hour")));
    attrs.push_back(metric_attribute(
        "scope_supervision_effectiveness", MeasurementObjectKind::ScopeSupervision,
        "Scope Supervision Effectiveness", "scope_supervision_effectiveness", {},
        at_least(0.5, "higher detection rate is better")));
    attrs.push_back(metric_attribute(
        "scope_supervision_overhead", MeasurementObjectKind::ScopeSupervision,
        "Scope Supervision Overhead", "scope_supervision_overhead", {},
        at_most(3600.0, "supervision time at most one hour")));

    // Infrastructure view.
    attrs.push_back(checklist_attribute(
        "non_ml_components", MeasurementObjectKind::NonMLComponents, "Non-ML Component Quality",
        {{"nonml_quality_attributes",
          "Quality attributes of the non-ML components are specified and assessed against "
          "their standard quality model",
          true}}));
    attrs.push_back(checklist_attribute(
        "infrastructure_suitability", MeasurementObjectKind::Infrastructure,
        "Infrastructure Suitability",
        {{"infra_memory", "Available memory meets the model's minimum requirement", true},
         {"infra_compute",
          "Available compute capability meets the model's minimum requirement", true},
         {"infra_storage", "Available storage accommodates the trained model", true}}));
    attrs.push_back(metric_attribute("training_efficiency",
                                     MeasurementObjectKind::TrainingAlgorithm,
                                     "Training Efficiency", "training_efficiency", {},
                                     at_most(86400.0, "training time at most one day")));
    attrs.push_back(metric_attribute("execution_efficiency",
                                     MeasurementObjectKind::ExecutionAlgorithm,
                                     "Execution Efficiency", "execution_efficiency", {},
                                     at_most(3600.0, "execution time at most one hour")));

    model.validate();
    return model;
}

QualityModel tailor(const QualityModel& model, const TailoringProfile& profile) {
    profile.validate();
    QualityModel out;
    out.name = model.name;
    out.version = model.version;
    out.profile = profile;
    for (const auto& attr : model.attributes) {
        if (!profile.selected_views.count(attr.view)) continue;
        if (!profile.selected_objects.count(attr.object)) continue;
        QualityAttributeSpec copy = attr;
        if (profile.ground_truth != GroundTruth::Full && copy.kind == AttributeKind::Metric) {
            const auto& info = metric_catalogue().at(copy.metric->metric_id);
            if (info.required_inputs.count(InputKind::Labels)) {
                copy.evaluability = Evaluability::Conditional;
            }
        }
        out.attributes.push_back(std::move(copy));
    }
    if (out.attributes.empty()) {
        throw EmptyModelError("tailoring removed every attribute");
    }
    out.validate();
    return out;
}

}  // namespace mlqgate::qmodel
