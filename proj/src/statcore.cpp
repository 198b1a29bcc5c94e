#include "mlqgate/statcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_set>

#include "mlqgate/canonical_json.hpp"
#include "mlqgate/errors.hpp"

namespace mlqgate::statcore {

namespace {

constexpr double kSpecialFnEps = 1e-14;
constexpr int kMaxIterations = 500;

double clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

// Continued fraction for the incomplete beta, modified Lentz algorithm.
double beta_continued_fraction(double a, double b, double x) {
    const double tiny = 1e-300;
    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kSpecialFnEps) return h;
    }
    throw Error("incomplete beta continued fraction did not converge");
}

// Lower incomplete gamma P(a, x) by series expansion (for x < a + 1).
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < kMaxIterations; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kSpecialFnEps) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw Error("incomplete gamma series did not converge");
}

// Upper incomplete gamma Q(a, x) by continued fraction (for x >= a + 1).
double gamma_q_continued_fraction(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kSpecialFnEps) {
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw Error("incomplete gamma continued fraction did not converge");
}

}  // namespace

double mean(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double sample_variance(std::span<const double> x) {
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return ss / static_cast<double>(x.size() - 1);
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw Error("incomplete beta: a, b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
        b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return clamp01(front * beta_continued_fraction(a, b, x) / a);
    }
    return clamp01(1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b);
}

double regularized_gamma_q(double a, double x) {
    if (a <= 0.0) throw Error("incomplete gamma: a must be positive");
    if (x < 0.0) throw Error("incomplete gamma: x must be nonnegative");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return clamp01(1.0 - gamma_p_series(a, x));
    return clamp01(gamma_q_continued_fraction(a, x));
}

double kolmogorov_tail(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 200; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        if (term < 1e-16) break;
        sign = -sign;
    }
    return clamp01(2.0 * sum);
}

double student_t_two_sided_p(double t, double df) {
    if (df <= 0.0) throw Error("t distribution: df must be positive");
    if (t == 0.0) return 1.0;
    const double x = df / (df + t * t);
    return clamp01(regularized_incomplete_beta(df / 2.0, 0.5, x));
}

TestResult welch_t_test(std::span<const double> x, std::span<const double> y) {
    if (x.size() < 2 || y.size() < 2) {
        throw DegenerateSample("welch t-test requires at least 2 values per sample");
    }
    const double vx = sample_variance(x);
    const double vy = sample_variance(y);
    if (vx == 0.0 && vy == 0.0) {
        throw DegenerateSample("welch t-test: both samples have zero variance");
    }
    const double n1 = static_cast<double>(x.size());
    const double n2 = static_cast<double>(y.size());
    const double se2 = vx / n1 + vy / n2;
    const double t = (mean(x) - mean(y)) / std::sqrt(se2);
    // Welch-Satterthwaite degrees of freedom.
    const double df = se2 * se2 /
                      ((vx / n1) * (vx / n1) / (n1 - 1.0) + (vy / n2) * (vy / n2) / (n2 - 1.0));
    TestResult r;
    r.statistic = t;
    r.p_value = student_t_two_sided_p(t, df);
    r.n1 = x.size();
    r.n2 = y.size();
    r.method = "welch_t";
    return r;
}

TestResult ks_test(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) {
        throw DegenerateSample("ks test requires nonempty samples");
    }
    std::vector<double> a(x.begin(), x.end());
    std::vector<double> b(y.begin(), y.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double n1 = static_cast<double>(a.size());
    const double n2 = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    // Evaluate |F1 - F2| after consuming every occurrence of each distinct
    // value; once one sample is exhausted the gap only shrinks, so the loop
    // sees the supremum.
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
    }
    const double ne = n1 * n2 / (n1 + n2);
    TestResult r;
    r.statistic = d;
    r.p_value = kolmogorov_tail(std::sqrt(ne) * d);
    r.n1 = a.size();
    r.n2 = b.size();
    r.method = "ks";
    return r;
}

TestResult chi_square_test(const std::map<std::string, std::uint64_t>& counts_x,
                           const std::map<std::string, std::uint64_t>& counts_y) {
    std::set<std::string> categories;
    double total_x = 0.0, total_y = 0.0;
    for (const auto& [k, v] : counts_x) {
        categories.insert(k);
        total_x += static_cast<double>(v);
    }
    for (const auto& [k, v] : counts_y) {
        categories.insert(k);
        total_y += static_cast<double>(v);
    }
    if (categories.empty() || total_x < 1.0 || total_y < 1.0) {
        throw DegenerateSample("chi-square test: empty sample");
    }
    const double grand = total_x + total_y;

    auto count_of = [](const std::map<std::string, std::uint64_t>& m, const std::string& k) {
        auto it = m.find(k);
        return it == m.end() ? 0.0 : static_cast<double>(it->second);
    };

    // Pool categories whose expected count falls below 5 in either sample.
    std::vector<std::pair<double, double>> cells;  // observed (x, y) per kept category
    double pooled_x = 0.0, pooled_y = 0.0;
    bool pooled_any = false;
    for (const auto& cat : categories) {
        const double ox = count_of(counts_x, cat);
        const double oy = count_of(counts_y, cat);
        const double row_total = ox + oy;
        if (row_total == 0.0) continue;
        const double ex = row_total * total_x / grand;
        const double ey = row_total * total_y / grand;
        if (ex < 5.0 || ey < 5.0) {
            pooled_x += ox;
            pooled_y += oy;
            pooled_any = true;
        } else {
            cells.emplace_back(ox, oy);
        }
    }
    if (pooled_any) cells.emplace_back(pooled_x, pooled_y);
    if (cells.size() < 2) {
        throw DegenerateSample("chi-square test: fewer than 2 categories after pooling");
    }

    double statistic = 0.0;
    for (const auto& [ox, oy] : cells) {
        const double row_total = ox + oy;
        const double ex = row_total * total_x / grand;
        const double ey = row_total * total_y / grand;
        statistic += (ox - ex) * (ox - ex) / ex;
        statistic += (oy - ey) * (oy - ey) / ey;
    }
    const double df = static_cast<double>(cells.size() - 1);
    TestResult r;
    r.statistic = statistic;
    r.p_value = regularized_gamma_q(df / 2.0, statistic / 2.0);
    r.n1 = static_cast<std::size_t>(total_x);
    r.n2 = static_cast<std::size_t>(total_y);
    r.method = "chi_square";
    return r;
}

std::vector<double> zscores(std::span<const double> x) {
    if (x.size() < 2) {
        throw DegenerateSample("zscores require at least 2 values");
    }
    const double m = mean(x);
    const double s = std::sqrt(sample_variance(x));
    if (s == 0.0) {
        throw DegenerateSample("zscores: zero standard deviation");
    }
    std::vector<double> out;
    out.reserve(x.size());
    for (double v : x) out.push_back((v - m) / s);
    return out;
}

double normalized_entropy(const std::map<std::string, std::uint64_t>& counts) {
    if (counts.empty()) throw EmptyInput("normalized entropy: no categories");
    double total = 0.0;
    for (const auto& [_, c] : counts) total += static_cast<double>(c);
    if (total <= 0.0) throw EmptyInput("normalized entropy: zero total count");
    const std::size_t k = counts.size();
    if (k == 1) return 1.0;
    double h = 0.0;
    for (const auto& [_, c] : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / total;
        h -= p * std::log(p);
    }
    return h / std::log(static_cast<double>(k));
}

// --- knn -------------------------------------------------------------------

namespace {

struct Standardizer {
    std::vector<double> means;
    std::vector<double> stds;
    std::vector<std::size_t> kept;     // column indices with nonzero std
    std::vector<std::size_t> dropped;  // zero-std columns
};

Standardizer fit_standardizer(const Matrix& reference) {
    const std::size_t n_cols = reference.empty() ? 0 : reference.front().size();
    Standardizer s;
    s.means.resize(n_cols);
    s.stds.resize(n_cols);
    for (std::size_t c = 0; c < n_cols; ++c) {
        std::vector<double> col;
        col.reserve(reference.size());
        for (const auto& row : reference) col.push_back(row[c]);
        s.means[c] = mean(col);
        s.stds[c] = col.size() > 1 ? std::sqrt(sample_variance(col)) : 0.0;
        if (s.stds[c] > 0.0) {
            s.kept.push_back(c);
        } else {
            s.dropped.push_back(c);
        }
    }
    return s;
}

std::vector<std::vector<double>> standardize(const Matrix& rows, const Standardizer& s) {
    std::vector<std::vector<double>> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<double> z;
        z.reserve(s.kept.size());
        for (std::size_t c : s.kept) {
            z.push_back((row[c] - s.means[c]) / s.stds[c]);
        }
        out.push_back(std::move(z));
    }
    return out;
}

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        d += diff * diff;
    }
    return d;
}

KnnResult knn_impl(const Matrix& reference, const Matrix& queries, std::size_t k,
                   bool self_mode) {
    if (reference.empty()) throw BadParameter("knn: empty reference");
    const std::size_t n_cols = reference.front().size();
    for (const auto& row : reference) {
        if (row.size() != n_cols) throw DimensionMismatch("knn: ragged reference matrix");
    }
    for (const auto& row : queries) {
        if (row.size() != n_cols) {
            throw DimensionMismatch("knn: query width " + std::to_string(row.size()) +
                                    " != reference width " + std::to_string(n_cols));
        }
    }
    const std::size_t usable = self_mode ? reference.size() - 1 : reference.size();
    if (k < 1 || k > usable) {
        throw BadParameter("knn: k=" + std::to_string(k) + " with " +
                           std::to_string(usable) + " usable reference rows");
    }

    const Standardizer s = fit_standardizer(reference);
    if (s.kept.empty()) throw DegenerateSample("knn: all columns have zero std");
    const auto ref_z = standardize(reference, s);
    const auto query_z = standardize(queries, s);

    KnnResult result;
    result.dropped_columns = s.dropped;
    result.kth_distance.reserve(query_z.size());
    std::vector<double> dists;
    for (std::size_t q = 0; q < query_z.size(); ++q) {
        dists.clear();
        dists.reserve(ref_z.size());
        for (std::size_t r = 0; r < ref_z.size(); ++r) {
            if (self_mode && r == q) continue;
            dists.push_back(squared_distance(query_z[q], ref_z[r]));
        }
        std::nth_element(dists.begin(), dists.begin() + static_cast<std::ptrdiff_t>(k - 1),
                         dists.end());
        result.kth_distance.push_back(std::sqrt(dists[k - 1]));
    }
    return result;
}

}  // namespace

KnnResult knn_distances(const Matrix& reference, const Matrix& queries, std::size_t k) {
    return knn_impl(reference, queries, k, false);
}

KnnResult knn_self_distances(const Matrix& reference, std::size_t k) {
    return knn_impl(reference, reference, k, true);
}

// --- duplicate detection -----------------------------------------------------

namespace {

// Byte-canonical serialization of one row; numbers use %.17g so that exact
// equality of parsed doubles maps onto byte equality.
std::string canonical_row(const dataio::Dataset& d, std::size_t r) {
    std::string out;
    char buf[64];
    for (std::size_t c = 0; c < d.n_cols(); ++c) {
        if (c > 0) out += '\x1f';
        if (d.is_missing(c, r)) {
            out += '\x01';
            continue;
        }
        switch (d.column(c).type) {
            case dataio::ColumnType::Numeric:
                std::snprintf(buf, sizeof(buf), "%.17g", d.number_at(c, r));
                out += buf;
                break;
            case dataio::ColumnType::Timestamp:
                out += std::to_string(d.days_at(c, r));
                break;
            default:
                out += d.text_at(c, r);
        }
    }
    return out;
}

}  // namespace

OverlapResult duplicate_overlap(const dataio::Dataset& a, const dataio::Dataset& b) {
    if (a.n_cols() != b.n_cols()) {
        throw SchemaMismatch("duplicate_overlap: column counts differ");
    }
    for (std::size_t c = 0; c < a.n_cols(); ++c) {
        if (a.column(c).name != b.column(c).name || a.column(c).type != b.column(c).type) {
            throw SchemaMismatch("duplicate_overlap: column " + std::to_string(c + 1) +
                                 " differs between tables");
        }
    }
    OverlapResult result;
    if (b.n_rows() == 0) return result;

    std::unordered_set<std::string> rows_of_a;
    rows_of_a.reserve(a.n_rows() * 2);
    for (std::size_t r = 0; r < a.n_rows(); ++r) {
        rows_of_a.insert(canonical_row(a, r));
    }
    std::size_t exact = 0;
    for (std::size_t r = 0; r < b.n_rows(); ++r) {
        if (rows_of_a.count(canonical_row(b, r))) ++exact;
    }
    result.exact_fraction = static_cast<double>(exact) / static_cast<double>(b.n_rows());

    // Near matches: RMS z-difference over numeric columns (a's statistics as
    // the reference frame, zero-std columns compared for equality) plus one
    // unit per differing non-numeric cell. Missing matches only missing.
    std::vector<std::size_t> numeric_cols, other_cols;
    for (std::size_t c = 0; c < a.n_cols(); ++c) {
        if (a.column(c).type == dataio::ColumnType::Numeric) numeric_cols.push_back(c);
        else other_cols.push_back(c);
    }
    std::vector<double> col_mean(a.n_cols(), 0.0), col_std(a.n_cols(), 0.0);
    for (std::size_t c : numeric_cols) {
        const auto values = a.numeric_values(c);
        if (values.size() >= 2) {
            col_mean[c] = mean(values);
            col_std[c] = std::sqrt(sample_variance(values));
        }
    }

    std::size_t near = 0;
    for (std::size_t rb = 0; rb < b.n_rows(); ++rb) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t ra = 0; ra < a.n_rows() && best >= 0.01; ++ra) {
            double mismatch = 0.0;
            for (std::size_t c : other_cols) {
                const bool ma = a.is_missing(c, ra);
                const bool mb = b.is_missing(c, rb);
                if (ma != mb) {
                    mismatch += 1.0;
                } else if (!ma) {
                    const bool equal = a.column(c).type == dataio::ColumnType::Timestamp
                                           ? a.days_at(c, ra) == b.days_at(c, rb)
                                           : a.text_at(c, ra) == b.text_at(c, rb);
                    if (!equal) mismatch += 1.0;
                }
                if (mismatch >= 0.01) break;
            }
            if (mismatch >= 0.01) continue;
            double ss = 0.0;
            std::size_t used = 0;
            for (std::size_t c : numeric_cols) {
                const bool ma = a.is_missing(c, ra);
                const bool mb = b.is_missing(c, rb);
                if (ma != mb) {
                    mismatch += 1.0;
                    break;
                }
                if (ma) continue;
                const double va = a.number_at(c, ra);
                const double vb = b.number_at(c, rb);
                if (col_std[c] > 0.0) {
                    const double dz = (va - vb) / col_std[c];
                    ss += dz * dz;
                    ++used;
                } else if (va != vb) {
                    mismatch += 1.0;
                    break;
                }
            }
            if (mismatch >= 0.01) continue;
            const double rms = used > 0 ? std::sqrt(ss / static_cast<double>(used)) : 0.0;
            best = std::min(best, rms + mismatch);
        }
        if (best < 0.01) ++near;
    }
    result.near_fraction = static_cast<double>(near) / static_cast<double>(b.n_rows());
    return result;
}

}  // namespace mlqgate::statcore
