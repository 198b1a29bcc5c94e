#include "mlqgate/metrics_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mlqgate/errors.hpp"
#include "mlqgate/statcore.hpp"

namespace mlqgate::metrics_model {

std::uint64_t ConfusionMatrix::total() const {
    std::uint64_t t = 0;
    for (const auto& row : counts) {
        for (const auto v : row) t += v;
    }
    return t;
}

std::uint64_t ConfusionMatrix::trace() const {
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) t += counts[i][i];
    return t;
}

GoodnessOfFit goodness_of_fit(const PredictionTable& p, dataio::DatasetRole phase) {
    GoodnessOfFit result;
    std::set<std::string> class_set;
    for (const auto& row : p.rows) {
        if (!row.true_label) {
            ++result.n_unlabeled;
            continue;
        }
        ++result.n_scored;
        class_set.insert(*row.true_label);
        class_set.insert(row.predicted_label);
    }
    if (result.n_scored == 0) {
        throw NoLabeledRows("goodness_of_fit: no rows carry a true label");
    }
    if (result.n_unlabeled > 0) {
        result.notices.push_back(std::to_string(result.n_unlabeled) +
                                 " unlabeled rows excluded (partial ground truth)");
    }

    auto& cm = result.confusion;
    cm.classes.assign(class_set.begin(), class_set.end());
    const std::size_t k = cm.classes.size();
    cm.counts.assign(k, std::vector<std::uint64_t>(k, 0));
    auto index_of = [&](const std::string& cls) {
        return static_cast<std::size_t>(
            std::lower_bound(cm.classes.begin(), cm.classes.end(), cls) - cm.classes.begin());
    };
    for (const auto& row : p.rows) {
        if (!row.true_label) continue;
        ++cm.counts[index_of(*row.true_label)][index_of(row.predicted_label)];
    }

    result.accuracy = static_cast<double>(cm.trace()) / static_cast<double>(result.n_scored);

    double macro_p = 0.0, macro_r = 0.0, macro_f = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        std::uint64_t row_sum = 0, col_sum = 0;
        for (std::size_t j = 0; j < k; ++j) {
            row_sum += cm.counts[i][j];
            col_sum += cm.counts[j][i];
        }
        ClassScores s;
        const std::uint64_t diag = cm.counts[i][i];
        if (col_sum == 0) {
            result.notices.push_back("class '" + cm.classes[i] +
                                     "': precision 0/0 reported as 0");
        } else {
            s.precision = static_cast<double>(diag) / static_cast<double>(col_sum);
        }
        if (row_sum == 0) {
            result.notices.push_back("class '" + cm.classes[i] +
                                     "': recall 0/0 reported as 0");
        } else {
            s.recall = static_cast<double>(diag) / static_cast<double>(row_sum);
        }
        if (s.precision + s.recall > 0.0) {
            s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
        }
        macro_p += s.precision;
        macro_r += s.recall;
        macro_f += s.f1;
        result.per_class[cm.classes[i]] = s;
    }
    result.macro.precision = macro_p / static_cast<double>(k);
    result.macro.recall = macro_r / static_cast<double>(k);
    result.macro.f1 = macro_f / static_cast<double>(k);
    result.notices.push_back(std::string("phase: ") +
                             (phase == dataio::DatasetRole::Development ? "development"
                                                                        : "runtime"));
    return result;
}

CvVariance cv_goodness_variance(const dataio::RetrainPredictionSet& r) {
    if (r.kind != dataio::RetrainKind::KFold) {
        throw NotKFold("cv_goodness_variance needs a k-fold retrain set");
    }
    if (r.runs.size() < 2) {
        throw TooFewFolds("cv_goodness_variance needs at least 2 folds, got " +
                          std::to_string(r.runs.size()));
    }
    CvVariance result;
    for (const auto& run : r.runs) {
        std::map<std::string, const dataio::PredictionRow*> by_id;
        for (const auto& row : run.predictions.rows) by_id[row.instance_id] = &row;
        std::uint64_t correct = 0, total = 0;
        for (const auto& id : run.held_out_ids) {
            auto it = by_id.find(id);
            if (it == by_id.end()) {
                throw IdMismatch("fold '" + run.run_id + "': no prediction for held-out id '" +
                                 id + "'");
            }
            if (!it->second->true_label) {
                throw IdMismatch("fold '" + run.run_id + "': held-out id '" + id +
                                 "' lacks a true label");
            }
            ++total;
            if (*it->second->true_label == it->second->predicted_label) ++correct;
        }
        result.fold_scores.push_back(static_cast<double>(correct) /
                                     static_cast<double>(total));
    }
    result.mean_score = statcore::mean(result.fold_scores);
    result.variance = statcore::sample_variance(result.fold_scores);
    result.std_dev = std::sqrt(result.variance);
    return result;
}

namespace {

double labeled_accuracy(const PredictionTable& p) {
    std::uint64_t correct = 0, total = 0;
    for (const auto& row : p.rows) {
        if (!row.true_label) continue;
        ++total;
        if (*row.true_label == row.predicted_label) ++correct;
    }
    if (total == 0) throw NoLabeledRows("accuracy: no labeled rows");
    return static_cast<double>(correct) / static_cast<double>(total);
}

std::set<std::string> id_set(const PredictionTable& p) {
    std::set<std::string> ids;
    for (const auto& row : p.rows) ids.insert(row.instance_id);
    return ids;
}

}  // namespace

ElaResult robustness_ela(const PredictionTable& clean,
                         const std::map<double, PredictionTable>& noisy) {
    ElaResult result;
    result.clean_accuracy = labeled_accuracy(clean);
    if (result.clean_accuracy == 0.0) {
        throw ZeroCleanAccuracy("robustness_ela: clean accuracy is zero");
    }
    const auto clean_ids = id_set(clean);
    for (const auto& [level, table] : noisy) {
        if (id_set(table) != clean_ids) {
            throw IdMismatch("robustness_ela: noisy table at level " +
                             std::to_string(level) +
                             " does not cover the clean instance ids");
        }
        const double acc = labeled_accuracy(table);
        result.noisy_accuracy[level] = acc;
        const double ela = (1.0 - acc) / result.clean_accuracy;
        result.ela[level] = ela;
        result.ela_max = std::max(result.ela_max, ela);
    }
    return result;
}

LooStability loo_stability(const dataio::RetrainPredictionSet& r, const PredictionTable& probe) {
    if (r.kind != dataio::RetrainKind::LeaveOneOut) {
        throw NotLeaveOneOut("loo_stability needs a leave-one-out retrain set");
    }
    if (r.runs.empty()) {
        throw NotLeaveOneOut("loo_stability: retrain set has no runs");
    }
    if (probe.rows.empty()) {
        throw IdMismatch("loo_stability: empty probe table");
    }
    LooStability result;
    result.n_runs = r.runs.size();
    result.n_probe = probe.rows.size();
    double disagreement_sum = 0.0;
    for (const auto& run : r.runs) {
        std::map<std::string, const std::string*> predicted;
        for (const auto& row : run.predictions.rows) {
            predicted[row.instance_id] = &row.predicted_label;
        }
        std::uint64_t disagree = 0;
        for (const auto& row : probe.rows) {
            auto it = predicted.find(row.instance_id);
            if (it == predicted.end()) {
                throw IdMismatch("run '" + run.run_id + "': no prediction for probe id '" +
                                 row.instance_id + "'");
            }
            if (*it->second != row.predicted_label) ++disagree;
        }
        disagreement_sum +=
            static_cast<double>(disagree) / static_cast<double>(probe.rows.size());
    }
    result.stability = 1.0 - disagreement_sum / static_cast<double>(r.runs.size());
    return result;
}

EqualizedOdds fairness_equalized_odds(const PredictionTable& p,
                                      const std::string& positive_class) {
    std::set<std::string> labels;
    bool any_group = false;
    for (const auto& row : p.rows) {
        if (row.true_label) labels.insert(*row.true_label);
        if (row.group) any_group = true;
    }
    if (!any_group) {
        throw MissingGroupColumn("fairness: prediction table carries no group values");
    }
    if (labels.empty()) {
        throw NoLabeledRows("fairness: no labeled rows");
    }
    if (labels.size() > 2) {
        throw NonBinaryLabel("fairness: equalized odds needs a binary task, found " +
                             std::to_string(labels.size()) + " classes");
    }

    struct Counts {
        std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
    };
    std::map<std::string, Counts> by_group;
    for (const auto& row : p.rows) {
        if (!row.true_label || !row.group) continue;
        const bool actual = *row.true_label == positive_class;
        const bool predicted = row.predicted_label == positive_class;
        auto& c = by_group[*row.group];
        if (actual && predicted) ++c.tp;
        else if (actual) ++c.fn;
        else if (predicted) ++c.fp;
        else ++c.tn;
    }

    EqualizedOdds result;
    for (const auto& [group, c] : by_group) {
        const std::uint64_t positives = c.tp + c.fn;
        const std::uint64_t negatives = c.fp + c.tn;
        if (positives == 0 || negatives == 0) {
            result.excluded_groups.push_back(group);
            continue;
        }
        GroupOdds odds;
        odds.positives = positives;
        odds.negatives = negatives;
        odds.tpr = static_cast<double>(c.tp) / static_cast<double>(positives);
        odds.fpr = static_cast<double>(c.fp) / static_cast<double>(negatives);
        result.per_group[group] = odds;
    }
    if (result.per_group.size() < 2) {
        throw NoEligibleGroups("fairness: fewer than 2 groups with both positive and "
                               "negative instances");
    }
    double tpr_lo = 1.0, tpr_hi = 0.0, fpr_lo = 1.0, fpr_hi = 0.0;
    for (const auto& [_, odds] : result.per_group) {
        tpr_lo = std::min(tpr_lo, odds.tpr);
        tpr_hi = std::max(tpr_hi, odds.tpr);
        fpr_lo = std::min(fpr_lo, odds.fpr);
        fpr_hi = std::max(fpr_hi, odds.fpr);
    }
    result.tpr_gap = tpr_hi - tpr_lo;
    result.fpr_gap = fpr_hi - fpr_lo;
    result.eo_gap = std::max(result.tpr_gap, result.fpr_gap);
    return result;
}

ComplexityResult interpretability_complexity(const dataio::ModelDescriptor& m) {
    return ComplexityResult{m.n_parameters, m.depth};
}

std::uint64_t resource_utilization(const dataio::ModelDescriptor& m) {
    return m.storage_bytes;
}

AppropriatenessResult model_type_appropriateness(const dataio::ModelDescriptor& m,
                                                 const dataio::Dataset& d,
                                                 const qmodel::TailoringProfile& profile) {
    AppropriatenessResult result;
    if (m.task != profile.task) {
        result.compatible = false;
        result.reasons.push_back("task mismatch: model type handles " +
                                 dataio::to_string(m.task) + ", use case needs " +
                                 dataio::to_string(profile.task));
    }
    const auto& manifest = d.manifest();
    auto exempt = [&](const std::string& name) {
        return (manifest.label_column && *manifest.label_column == name) ||
               (manifest.subset_column && *manifest.subset_column == name) ||
               (manifest.timestamp_column && *manifest.timestamp_column == name);
    };
    for (std::size_t c = 0; c < d.n_cols(); ++c) {
        const auto& spec = d.column(c);
        if (exempt(spec.name)) continue;
        if (!m.supports(spec.type)) {
            result.compatible = false;
            result.reasons.push_back("column '" + spec.name + "': " +
                                     dataio::to_string(spec.type) + " unsupported");
        }
    }
    return result;
}

}  // namespace mlqgate::metrics_model
