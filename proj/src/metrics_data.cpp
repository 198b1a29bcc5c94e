#include "mlqgate/metrics_data.hpp"

#include <algorithm>
#include <cmath>

#include "mlqgate/canonical_json.hpp"
#include "mlqgate/errors.hpp"
#include "mlqgate/statcore.hpp"

namespace mlqgate::metrics_data {

namespace {

constexpr std::size_t kFindingCap = 100;

std::string fmt(double v) { return canonical_json::format_double(v); }

// Shared (name, type) columns in declaration order of dev.
std::vector<std::pair<std::size_t, std::size_t>> shared_columns(const Dataset& dev,
                                                                const Dataset& runtime) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t c = 0; c < dev.n_cols(); ++c) {
        const auto& spec = dev.column(c);
        const auto idx = runtime.manifest().column_index(spec.name);
        if (!idx) continue;
        if (runtime.column(*idx).type != spec.type) {
            throw SchemaMismatch("column '" + spec.name + "' has type " +
                                 dataio::to_string(spec.type) + " in one dataset and " +
                                 dataio::to_string(runtime.column(*idx).type) + " in the other");
        }
        out.emplace_back(c, *idx);
    }
    return out;
}

}  // namespace

RepresentativenessResult representativeness(const Dataset& dev, const Dataset& runtime,
                                            double alpha) {
    if (alpha <= 0.0 || alpha >= 1.0) {
        throw BadParameter("representativeness: alpha must be in (0,1)");
    }
    const auto columns = shared_columns(dev, runtime);
    RepresentativenessResult result;

    struct Tested {
        std::string column;
        double p;
        std::string method;
    };
    std::vector<Tested> tested;
    for (const auto& [cd, cr] : columns) {
        const auto& spec = dev.column(cd);
        switch (spec.type) {
            case dataio::ColumnType::Numeric: {
                const auto x = dev.numeric_values(cd);
                const auto y = runtime.numeric_values(cr);
                try {
                    const auto t = statcore::welch_t_test(x, y);
                    tested.push_back({spec.name, t.p_value, t.method});
                } catch (const DegenerateSample& e) {
                    result.notices.push_back("column '" + spec.name + "' skipped: " + e.what());
                }
                break;
            }
            case dataio::ColumnType::Categorical: {
                try {
                    const auto t = statcore::chi_square_test(dev.category_counts(cd),
                                                             runtime.category_counts(cr));
                    tested.push_back({spec.name, t.p_value, t.method});
                } catch (const DegenerateSample& e) {
                    result.notices.push_back("column '" + spec.name + "' skipped: " + e.what());
                }
                break;
            }
            default:
                result.notices.push_back("column '" + spec.name + "' skipped: " +
                                         dataio::to_string(spec.type) +
                                         " columns are not tested");
        }
    }
    if (tested.empty()) {
        throw NoComparableColumns("representativeness: no numeric or categorical column "
                                  "could be tested");
    }
    result.n_tested = tested.size();
    const double m = static_cast<double>(tested.size());
    for (const auto& t : tested) {
        const double adjusted = std::min(1.0, t.p * m);
        result.min_adjusted_p = std::min(result.min_adjusted_p, adjusted);
        if (adjusted < alpha) {
            result.flagged_columns.push_back(t.column);
            DataFinding f;
            f.column = t.column;
            f.value = adjusted;
            f.detail = t.method + " adjusted p " + fmt(adjusted) + " < alpha " + fmt(alpha);
            result.findings.push_back(std::move(f));
        }
    }
    return result;
}

OutlierResult data_correctness(const Dataset& d, double z_threshold) {
    if (z_threshold <= 0.0) {
        throw BadParameter("data_correctness: z_threshold must be positive");
    }
    OutlierResult result;
    bool any_numeric = false;
    for (std::size_t c = 0; c < d.n_cols(); ++c) {
        if (d.column(c).type != dataio::ColumnType::Numeric) continue;
        any_numeric = true;
        std::vector<double> values;
        std::vector<std::size_t> rows;
        for (std::size_t r = 0; r < d.n_rows(); ++r) {
            if (!d.is_missing(c, r)) {
                values.push_back(d.number_at(c, r));
                rows.push_back(r);
            }
        }
        std::vector<double> z;
        try {
            z = statcore::zscores(values);
        } catch (const DegenerateSample& e) {
            result.notices.push_back("column '" + d.column(c).name + "' skipped: " + e.what());
            continue;
        }
        result.cells_checked += values.size();
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (std::fabs(z[i]) > z_threshold) {
                ++result.outlier_count;
                ++result.findings_total;
                if (result.findings.size() < kFindingCap) {
                    DataFinding f;
                    f.column = d.column(c).name;
                    f.row = rows[i];
                    f.value = z[i];
                    f.detail = "|z| = " + fmt(std::fabs(z[i])) + " > " + fmt(z_threshold);
                    result.findings.push_back(std::move(f));
                }
            }
        }
    }
    if (!any_numeric) {
        throw NoNumericColumns("data_correctness: dataset has no numeric columns");
    }
    result.outlier_fraction =
        result.cells_checked == 0
            ? 0.0
            : static_cast<double>(result.outlier_count) /
                  static_cast<double>(result.cells_checked);
    return result;
}

CompletenessResult completeness(const Dataset& d) {
    if (d.n_rows() == 0) {
        throw EmptyDataset("completeness: dataset has no rows");
    }
    CompletenessResult result;
    result.total_cells = d.n_rows() * d.n_cols();
    for (std::size_t c = 0; c < d.n_cols(); ++c) {
        const std::size_t missing = d.missing_count(c);
        if (missing > 0) {
            result.missing_per_column[d.column(c).name] = missing;
        }
        result.missing_cells += missing;
    }
    result.completeness = 1.0 - static_cast<double>(result.missing_cells) /
                                    static_cast<double>(result.total_cells);
    return result;
}

CurrentnessResult currentness(const Dataset& d) {
    const auto& manifest = d.manifest();
    if (!manifest.timestamp_column) {
        throw MissingTimestampColumn("currentness: manifest declares no timestamp column");
    }
    const std::size_t c = d.column_index(*manifest.timestamp_column);
    CurrentnessResult result;
    std::vector<double> ages;
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        if (d.is_missing(c, r)) {
            ++result.missing_timestamps;
            continue;
        }
        const double age =
            static_cast<double>(manifest.evaluation_date_days - d.days_at(c, r));
        ages.push_back(age);
        if (age < 0.0) {
            ++result.future_timestamps;
            if (result.findings.size() < kFindingCap) {
                DataFinding f;
                f.column = *manifest.timestamp_column;
                f.row = r;
                f.value = age;
                f.detail = "timestamp lies after the evaluation date";
                result.findings.push_back(std::move(f));
            }
        }
    }
    if (ages.empty()) {
        throw EmptyInput("currentness: no timestamps present");
    }
    std::sort(ages.begin(), ages.end());
    const std::size_t n = ages.size();
    result.median_age_days =
        n % 2 == 1 ? ages[n / 2] : 0.5 * (ages[n / 2 - 1] + ages[n / 2]);
    result.max_age_days = ages.back();
    return result;
}

IntraConsistencyResult intra_consistency(const Dataset& d,
                                         const std::vector<ConsistencyRule>& rules) {
    IntraConsistencyResult result;
    for (const auto& rule : rules) {
        const auto idx = d.manifest().column_index(rule.column);
        if (!idx) {
            throw UnknownColumnInRule("consistency rule references unknown column '" +
                                      rule.column + "'");
        }
        const std::size_t c = *idx;
        const auto type = d.column(c).type;
        const bool type_ok =
            (rule.kind == RuleKind::NumericRange && type == dataio::ColumnType::Numeric) ||
            (rule.kind == RuleKind::Vocabulary && type == dataio::ColumnType::Categorical) ||
            (rule.kind == RuleKind::WordCount && type == dataio::ColumnType::Text);
        if (!type_ok) {
            throw UnknownColumnInRule("consistency rule for column '" + rule.column +
                                      "' does not match its type " + dataio::to_string(type));
        }
        for (std::size_t r = 0; r < d.n_rows(); ++r) {
            if (d.is_missing(c, r)) continue;
            std::optional<DataFinding> finding;
            switch (rule.kind) {
                case RuleKind::NumericRange: {
                    const double v = d.number_at(c, r);
                    if (v < rule.low || v > rule.high) {
                        finding = DataFinding{};
                        finding->value = v;
                        finding->detail = "value " + fmt(v) + " outside [" + fmt(rule.low) +
                                          ", " + fmt(rule.high) + "]";
                    }
                    break;
                }
                case RuleKind::Vocabulary: {
                    const std::string& v = d.text_at(c, r);
                    if (!rule.vocabulary.count(v)) {
                        finding = DataFinding{};
                        finding->value = 1.0;
                        finding->detail = "value '" + v + "' not in the declared vocabulary";
                    }
                    break;
                }
                case RuleKind::WordCount: {
                    const std::string& v = d.text_at(c, r);
                    std::size_t words = 0;
                    bool in_token = false;
                    for (char ch : v) {
                        const bool space = ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r';
                        if (!space && !in_token) ++words;
                        in_token = !space;
                    }
                    const double count = static_cast<double>(words);
                    if (count < rule.low || count > rule.high) {
                        finding = DataFinding{};
                        finding->value = count;
                        finding->detail = "word count " + fmt(count) + " outside [" +
                                          fmt(rule.low) + ", " + fmt(rule.high) + "]";
                    }
                    break;
                }
            }
            if (finding) {
                ++result.violation_count;
                if (result.violations.size() < kFindingCap) {
                    finding->column = rule.column;
                    finding->row = r;
                    result.violations.push_back(std::move(*finding));
                }
            }
        }
    }
    return result;
}

IndependenceResult train_test_independence(const Dataset& train, const Dataset& test) {
    const auto overlap = statcore::duplicate_overlap(train, test);
    return IndependenceResult{overlap.exact_fraction, overlap.near_fraction};
}

BalancednessResult balancedness(const Dataset& d,
                                const std::optional<std::set<std::string>>& class_vocabulary) {
    const auto& manifest = d.manifest();
    if (!manifest.label_column) {
        throw MissingLabelColumn("balancedness: manifest declares no label column");
    }
    const std::size_t c = d.column_index(*manifest.label_column);
    BalancednessResult result;
    result.class_counts = d.category_counts(c);
    if (class_vocabulary) {
        for (const auto& cls : *class_vocabulary) {
            result.class_counts.emplace(cls, 0);
        }
    }
    if (result.class_counts.empty()) {
        throw MissingLabelColumn("balancedness: no observed class labels");
    }
    std::uint64_t min_count = UINT64_MAX, max_count = 0;
    for (const auto& [_, count] : result.class_counts) {
        min_count = std::min(min_count, count);
        max_count = std::max(max_count, count);
    }
    result.normalized_entropy = statcore::normalized_entropy(result.class_counts);
    if (result.class_counts.size() == 1) {
        result.imbalance_ratio = 1.0;
        result.notices.push_back("single observed class; balance is degenerate");
    } else if (min_count == 0) {
        // A declared class never occurs: the ratio is unbounded.
        result.unbounded = true;
        result.imbalance_ratio = -1.0;
        result.notices.push_back("a declared class has zero observations; ratio unbounded");
    } else {
        result.imbalance_ratio =
            static_cast<double>(max_count) / static_cast<double>(min_count);
    }
    return result;
}

BiasResult absence_of_bias(const Dataset& d) {
    const auto& manifest = d.manifest();
    if (!manifest.label_column) {
        throw MissingLabelColumn("absence_of_bias: manifest declares no label column");
    }
    if (!manifest.group_column) {
        throw MissingGroupColumn("absence_of_bias: manifest declares no group column");
    }
    if (!manifest.positive_class) {
        throw SchemaError("absence_of_bias: manifest designates no positive class");
    }
    const std::size_t label_c = d.column_index(*manifest.label_column);
    const std::size_t group_c = d.column_index(*manifest.group_column);
    const auto observed = d.category_counts(label_c);
    if (observed.size() > 2) {
        throw NonBinaryLabel("absence_of_bias: label has " + std::to_string(observed.size()) +
                             " observed classes; a binary label is required");
    }
    if (observed.empty()) {
        throw MissingLabelColumn("absence_of_bias: no observed labels");
    }

    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> by_group;  // positive, total
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        if (d.is_missing(label_c, r) || d.is_missing(group_c, r)) continue;
        auto& [pos, total] = by_group[d.text_at(group_c, r)];
        ++total;
        if (d.text_at(label_c, r) == *manifest.positive_class) ++pos;
    }
    if (by_group.empty()) {
        throw MissingGroupColumn("absence_of_bias: no rows with both label and group");
    }

    BiasResult result;
    result.positive_class = *manifest.positive_class;
    double lo = 1.0, hi = 0.0;
    for (const auto& [group, counts] : by_group) {
        const double rate =
            static_cast<double>(counts.first) / static_cast<double>(counts.second);
        result.per_group_rates[group] = rate;
        lo = std::min(lo, rate);
        hi = std::max(hi, rate);
    }
    result.max_positive_rate_gap = result.per_group_rates.size() < 2 ? 0.0 : hi - lo;
    return result;
}

InterConsistencyResult inter_consistency(const Dataset& dev, const Dataset& runtime) {
    const auto columns = shared_columns(dev, runtime);
    if (columns.empty()) {
        throw SchemaMismatch("inter_consistency: datasets share no columns");
    }
    InterConsistencyResult result;
    for (const auto& [cd, cr] : columns) {
        const auto& spec = dev.column(cd);
        if (spec.type == dataio::ColumnType::Numeric) {
            const auto dev_values = dev.numeric_values(cd);
            const auto run_values = runtime.numeric_values(cr);
            if (dev_values.empty() || run_values.empty()) {
                result.notices.push_back("column '" + spec.name +
                                         "' skipped: no values to compare");
                continue;
            }
            const auto [dev_min_it, dev_max_it] =
                std::minmax_element(dev_values.begin(), dev_values.end());
            const auto [run_min_it, run_max_it] =
                std::minmax_element(run_values.begin(), run_values.end());
            if (*run_min_it < *dev_min_it) {
                DataFinding f;
                f.column = spec.name;
                f.value = *run_min_it;
                f.detail = "runtime min " + fmt(*run_min_it) + " below development min " +
                           fmt(*dev_min_it);
                result.range_mismatches.push_back(std::move(f));
            }
            if (*run_max_it > *dev_max_it) {
                DataFinding f;
                f.column = spec.name;
                f.value = *run_max_it;
                f.detail = "runtime max " + fmt(*run_max_it) + " above development max " +
                           fmt(*dev_max_it);
                result.range_mismatches.push_back(std::move(f));
            }
            // Crosswise outliers: runtime cells scored in the development frame.
            if (dev_values.size() >= 2) {
                const double m = statcore::mean(dev_values);
                const double s = std::sqrt(statcore::sample_variance(dev_values));
                if (s > 0.0) {
                    result.cells_checked += run_values.size();
                    for (const double v : run_values) {
                        if (std::fabs((v - m) / s) > 3.0) ++result.crosswise_outliers;
                    }
                } else {
                    result.notices.push_back("column '" + spec.name +
                                             "' skipped for crosswise outliers: zero variance");
                }
            }
        } else if (spec.type == dataio::ColumnType::Categorical) {
            const auto dev_counts = dev.category_counts(cd);
            for (const auto& [category, count] : runtime.category_counts(cr)) {
                if (!dev_counts.count(category)) {
                    DataFinding f;
                    f.column = spec.name;
                    f.value = static_cast<double>(count);
                    f.detail = "runtime category '" + category + "' unseen in development data";
                    result.range_mismatches.push_back(std::move(f));
                }
            }
        }
    }
    result.crosswise_outlier_fraction =
        result.cells_checked == 0
            ? 0.0
            : static_cast<double>(result.crosswise_outliers) /
                  static_cast<double>(result.cells_checked);
    return result;
}

}  // namespace mlqgate::metrics_data
