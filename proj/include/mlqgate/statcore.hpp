#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mlqgate/dataio.hpp"

namespace mlqgate::statcore {

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    std::string method;
};

// Welch's unequal-variance t-test, two-sided p-value. Sample variance uses
// n-1; requires at least two values per sample and nonzero variance in at
// least one of them.
TestResult welch_t_test(std::span<const double> x, std::span<const double> y);

// Two-sample Kolmogorov-Smirnov test. p-value from the asymptotic Kolmogorov
// series with effective n = n1*n2/(n1+n2).
TestResult ks_test(std::span<const double> x, std::span<const double> y);

// Chi-square homogeneity test over a 2xk contingency table. Categories whose
// expected count falls below 5 in either sample are pooled into "other";
// fails with DegenerateSample if pooling leaves a single category.
TestResult chi_square_test(const std::map<std::string, std::uint64_t>& counts_x,
                           const std::map<std::string, std::uint64_t>& counts_y);

// Z-scores with the n-1 standard deviation.
std::vector<double> zscores(std::span<const double> x);

// Shannon entropy of the empirical distribution divided by log k, where k is
// the number of declared categories (zero-count categories included). 1.0 by
// convention when k == 1.
double normalized_entropy(const std::map<std::string, std::uint64_t>& counts);

// Descriptive helpers shared by the metric modules.
double mean(std::span<const double> x);
double sample_variance(std::span<const double> x);  // n-1

// --- special functions ---------------------------------------------------
// Continued-fraction / series implementations, accurate to ~1e-10 relative.

// Regularized incomplete beta I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);
// Regularized upper incomplete gamma Q(a, x).
double regularized_gamma_q(double a, double x);
// Kolmogorov tail Q_KS(lambda) = 2 * sum_j (-1)^(j-1) exp(-2 j^2 lambda^2).
double kolmogorov_tail(double lambda);

// Two-sided p-value of a t statistic with the given degrees of freedom.
double student_t_two_sided_p(double t, double df);

// --- nearest-neighbor distances -------------------------------------------

using Matrix = std::vector<std::vector<double>>;  // row-major

struct KnnResult {
    std::vector<double> kth_distance;     // one value per query row
    std::vector<std::size_t> dropped_columns;  // zero-std columns, excluded with a notice
};

// Euclidean distance to the k-th nearest reference row, computed after
// standardizing every column by the reference mean and n-1 std. Zero-std
// columns are dropped and reported.
KnnResult knn_distances(const Matrix& reference, const Matrix& queries, std::size_t k);
// Self-distance mode: queries are the reference rows themselves; row i never
// matches itself.
KnnResult knn_self_distances(const Matrix& reference, std::size_t k);

// --- duplicate detection ----------------------------------------------------

struct OverlapResult {
    double exact_fraction = 0.0;  // rows of b byte-identical to some row of a
    double near_fraction = 0.0;   // rows of b within combined distance < 0.01 of some row of a
};

// Row overlap of b against a. Exact matches use a byte-canonical row
// serialization; near matches use the RMS z-difference over numeric columns
// (standardized by a's statistics) plus one unit per differing
// categorical/text/timestamp cell, flagged below 0.01.
OverlapResult duplicate_overlap(const dataio::Dataset& a, const dataio::Dataset& b);

}  // namespace mlqgate::statcore
