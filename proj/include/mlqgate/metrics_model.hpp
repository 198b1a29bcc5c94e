#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlqgate/dataio.hpp"
#include "mlqgate/qmodel.hpp"

namespace mlqgate::metrics_model {

using dataio::PredictionTable;

struct ConfusionMatrix {
    std::vector<std::string> classes;                  // sorted
    std::vector<std::vector<std::uint64_t>> counts;    // row = true, column = predicted

    std::uint64_t total() const;
    std::uint64_t trace() const;
};

struct ClassScores {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct GoodnessOfFit {
    double accuracy = 0.0;
    std::map<std::string, ClassScores> per_class;
    ClassScores macro;
    ConfusionMatrix confusion;
    std::size_t n_scored = 0;     // rows with a true label
    std::size_t n_unlabeled = 0;  // excluded rows
    std::vector<std::string> notices;
};

// Classification goodness of fit over the rows that carry a true label.
// 0/0 precision/recall falls back to 0 with a notice.
GoodnessOfFit goodness_of_fit(const PredictionTable& p, dataio::DatasetRole phase);

struct CvVariance {
    std::vector<double> fold_scores;  // accuracy per fold, run order
    double mean_score = 0.0;
    double variance = 0.0;
    double std_dev = 0.0;
};

CvVariance cv_goodness_variance(const dataio::RetrainPredictionSet& r);

struct ElaResult {
    double clean_accuracy = 0.0;
    std::map<double, double> noisy_accuracy;  // noise level -> accuracy
    std::map<double, double> ela;             // noise level -> (1 - A_x) / A0
    double ela_max = 0.0;
};

ElaResult robustness_ela(const PredictionTable& clean,
                         const std::map<double, PredictionTable>& noisy);

struct LooStability {
    double stability = 0.0;  // 1 - mean disagreement with the full-data model
    std::size_t n_runs = 0;
    std::size_t n_probe = 0;
};

LooStability loo_stability(const dataio::RetrainPredictionSet& r, const PredictionTable& probe);

struct GroupOdds {
    double tpr = 0.0;
    double fpr = 0.0;
    std::uint64_t positives = 0;
    std::uint64_t negatives = 0;
};

struct EqualizedOdds {
    double tpr_gap = 0.0;
    double fpr_gap = 0.0;
    double eo_gap = 0.0;
    std::map<std::string, GroupOdds> per_group;
    std::vector<std::string> excluded_groups;  // groups lacking positives or negatives
};

// Binary equalized odds; groups without at least one positive and one
// negative instance are excluded with a notice.
EqualizedOdds fairness_equalized_odds(const PredictionTable& p,
                                      const std::string& positive_class);

struct ComplexityResult {
    std::uint64_t n_parameters = 0;
    std::optional<std::uint64_t> depth;
};

ComplexityResult interpretability_complexity(const dataio::ModelDescriptor& m);

std::uint64_t resource_utilization(const dataio::ModelDescriptor& m);  // storage bytes

struct AppropriatenessResult {
    bool compatible = true;
    std::vector<std::string> reasons;
};

// Task match plus column-type support; label, timestamp, and subset columns
// are exempt from the type check.
AppropriatenessResult model_type_appropriateness(const dataio::ModelDescriptor& m,
                                                 const dataio::Dataset& d,
                                                 const qmodel::TailoringProfile& profile);

}  // namespace mlqgate::metrics_model
