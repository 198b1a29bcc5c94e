#include "mlqgate/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "mlqgate/canonical_json.hpp"
#include "mlqgate/errors.hpp"

namespace mlqgate::dataio {

using nlohmann::json;
namespace fs = std::filesystem;

// --- enum spellings -----------------------------------------------------

std::string to_string(ColumnType t) {
    switch (t) {
        case ColumnType::Numeric: return "numeric";
        case ColumnType::Categorical: return "categorical";
        case ColumnType::Text: return "text";
        case ColumnType::Timestamp: return "timestamp";
    }
    return "?";
}

std::string to_string(DatasetRole r) {
    return r == DatasetRole::Development ? "development" : "runtime";
}

std::string to_string(Phase p) {
    switch (p) {
        case Phase::Training: return "training";
        case Phase::Execution: return "execution";
        case Phase::OutputSupervision: return "output_supervision";
        case Phase::ScopeSupervision: return "scope_supervision";
    }
    return "?";
}

std::string to_string(TaskKind t) {
    switch (t) {
        case TaskKind::Classification: return "classification";
        case TaskKind::Regression: return "regression";
        case TaskKind::Clustering: return "clustering";
        case TaskKind::Other: return "other";
    }
    return "?";
}

std::string to_string(ChecklistStatus s) {
    switch (s) {
        case ChecklistStatus::Yes: return "yes";
        case ChecklistStatus::No: return "no";
        case ChecklistStatus::NotApplicable: return "not_applicable";
    }
    return "?";
}

ColumnType column_type_from_string(std::string_view s) {
    if (s == "numeric") return ColumnType::Numeric;
    if (s == "categorical") return ColumnType::Categorical;
    if (s == "text") return ColumnType::Text;
    if (s == "timestamp") return ColumnType::Timestamp;
    throw SchemaError("unknown column type '" + std::string(s) +
                      "' (expected numeric|categorical|text|timestamp)");
}

Phase phase_from_string(std::string_view s) {
    if (s == "training") return Phase::Training;
    if (s == "execution") return Phase::Execution;
    if (s == "output_supervision") return Phase::OutputSupervision;
    if (s == "scope_supervision") return Phase::ScopeSupervision;
    throw SchemaError("unknown phase '" + std::string(s) + "'");
}

TaskKind task_from_string(std::string_view s) {
    if (s == "classification") return TaskKind::Classification;
    if (s == "regression") return TaskKind::Regression;
    if (s == "clustering") return TaskKind::Clustering;
    if (s == "other") return TaskKind::Other;
    throw SchemaError("unknown task '" + std::string(s) + "'");
}

static ChecklistStatus checklist_status_from_string(std::string_view s) {
    if (s == "yes") return ChecklistStatus::Yes;
    if (s == "no") return ChecklistStatus::No;
    if (s == "not_applicable") return ChecklistStatus::NotApplicable;
    throw SchemaError("unknown checklist status '" + std::string(s) + "'");
}

// --- dates --------------------------------------------------------------

std::int64_t parse_iso_date(std::string_view s) {
    // Accepts YYYY-MM-DD, optionally followed by 'T' or ' ' and a time part
    // that is ignored for whole-day arithmetic.
    if (s.size() < 10 || s[4] != '-' || s[7] != '-') {
        throw ParseError("invalid ISO-8601 date '" + std::string(s) + "'");
    }
    if (s.size() > 10 && s[10] != 'T' && s[10] != ' ') {
        throw ParseError("invalid ISO-8601 date '" + std::string(s) + "'");
    }
    int y = 0, m = 0, d = 0;
    auto r1 = std::from_chars(s.data(), s.data() + 4, y);
    auto r2 = std::from_chars(s.data() + 5, s.data() + 7, m);
    auto r3 = std::from_chars(s.data() + 8, s.data() + 10, d);
    if (r1.ec != std::errc{} || r2.ec != std::errc{} || r3.ec != std::errc{} ||
        r1.ptr != s.data() + 4 || r2.ptr != s.data() + 7 || r3.ptr != s.data() + 10) {
        throw ParseError("invalid ISO-8601 date '" + std::string(s) + "'");
    }
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                          std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) {
        throw ParseError("invalid calendar date '" + std::string(s) + "'");
    }
    return std::chrono::sys_days(ymd).time_since_epoch().count();
}

std::string format_iso_date(std::int64_t days) {
    const std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{days}}};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

// --- file io ------------------------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    const fs::path p(path);
    if (p.has_parent_path()) {
        fs::create_directories(p.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ParseError("cannot write file: " + path);
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string sha256_hex(std::string_view content) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(content.data(), content.size(), digest, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

static json parse_json_file(const std::string& path) {
    const std::string text = read_file(path);
    json v = json::parse(text, nullptr, false);
    if (v.is_discarded()) {
        throw ParseError("malformed JSON in " + path);
    }
    return v;
}

// Strict-schema helper: every present key must be in the allowed set.
static void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                       const std::string& where) {
    if (!obj.is_object()) {
        throw SchemaError(where + ": expected a JSON object");
    }
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return it.key() == k;
            }) == allowed.end()) {
            throw SchemaError(where + ": unknown key '" + it.key() + "'");
        }
    }
}

static const json& require_key(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw SchemaError(where + ": missing key '" + std::string(key) + "'");
    }
    return *it;
}

// --- CSV ----------------------------------------------------------------

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    const std::string text = read_file(path);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cell;
    bool in_quotes = false;
    bool cell_started = false;
    std::size_t line = 1;

    auto end_cell = [&] {
        row.push_back(std::move(cell));
        cell.clear();
        cell_started = false;
    };
    auto end_row = [&] {
        end_cell();
        rows.push_back(std::move(row));
        row.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cell += c;
                if (c == '\n') ++line;
            }
        } else if (c == '"') {
            if (cell_started && !cell.empty()) {
                throw ParseError(path + ":" + std::to_string(line) +
                                 ": quote inside unquoted cell");
            }
            in_quotes = true;
            cell_started = true;
        } else if (c == ',') {
            end_cell();
        } else if (c == '\n') {
            if (!cell.empty() && cell.back() == '\r') cell.pop_back();
            end_row();
            ++line;
        } else {
            cell += c;
            cell_started = true;
        }
    }
    if (in_quotes) {
        throw ParseError(path + ": unterminated quoted cell");
    }
    if (cell_started || !row.empty()) {
        if (!cell.empty() && cell.back() == '\r') cell.pop_back();
        end_row();
    }
    if (rows.empty()) {
        throw ParseError(path + ": empty CSV file");
    }
    return rows;
}

static std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

// --- manifest -----------------------------------------------------------

std::optional<std::size_t> DataManifest::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == name) return i;
    }
    return std::nullopt;
}

void DataManifest::validate() const {
    if (columns.empty()) {
        throw SchemaError("manifest: no columns declared");
    }
    std::set<std::string> seen;
    for (const auto& c : columns) {
        if (c.name.empty()) throw SchemaError("manifest: empty column name");
        if (!seen.insert(c.name).second) {
            throw SchemaError("manifest: duplicate column '" + c.name + "'");
        }
    }
    auto check_named = [&](const std::optional<std::string>& name, const char* role,
                           std::optional<ColumnType> required_type) {
        if (!name) return;
        auto idx = column_index(*name);
        if (!idx) {
            throw SchemaError(std::string("manifest: ") + role + " column '" + *name +
                              "' not declared");
        }
        if (required_type && columns[*idx].type != *required_type) {
            throw SchemaError(std::string("manifest: ") + role + " column '" + *name +
                              "' must have type " + to_string(*required_type));
        }
    };
    check_named(label_column, "label", ColumnType::Categorical);
    check_named(group_column, "group", ColumnType::Categorical);
    check_named(subset_column, "subset", ColumnType::Categorical);
    check_named(timestamp_column, "timestamp", ColumnType::Timestamp);
    if (evaluation_date.empty()) {
        throw SchemaError("manifest: evaluation_date is required");
    }
    if (positive_class && !label_column) {
        throw SchemaError("manifest: positive_class declared without a label column");
    }
}

DataManifest load_manifest(const std::string& manifest_path) {
    const json v = parse_json_file(manifest_path);
    check_keys(v,
               {"dataset_role", "columns", "label_column", "timestamp_column", "group_column",
                "subset_column", "positive_class", "evaluation_date", "missing_token"},
               manifest_path);
    DataManifest m;
    const std::string role = require_key(v, "dataset_role", manifest_path).get<std::string>();
    if (role == "development") m.role = DatasetRole::Development;
    else if (role == "runtime") m.role = DatasetRole::Runtime;
    else throw SchemaError(manifest_path + ": dataset_role must be development|runtime");

    for (const auto& col : require_key(v, "columns", manifest_path)) {
        check_keys(col, {"name", "type"}, manifest_path + ": column");
        ColumnSpec spec;
        spec.name = require_key(col, "name", manifest_path).get<std::string>();
        spec.type = column_type_from_string(
            require_key(col, "type", manifest_path).get<std::string>());
        m.columns.push_back(std::move(spec));
    }
    auto opt_str = [&](const char* key) -> std::optional<std::string> {
        if (auto it = v.find(key); it != v.end() && !it->is_null()) {
            return it->get<std::string>();
        }
        return std::nullopt;
    };
    m.label_column = opt_str("label_column");
    m.timestamp_column = opt_str("timestamp_column");
    m.group_column = opt_str("group_column");
    m.subset_column = opt_str("subset_column");
    m.positive_class = opt_str("positive_class");
    m.evaluation_date = require_key(v, "evaluation_date", manifest_path).get<std::string>();
    m.evaluation_date_days = parse_iso_date(m.evaluation_date);
    if (auto it = v.find("missing_token"); it != v.end()) {
        m.missing_token = it->get<std::string>();
    }
    m.validate();
    return m;
}

// --- Dataset ------------------------------------------------------------

std::size_t Dataset::column_index(std::string_view name) const {
    auto idx = manifest_.column_index(name);
    if (!idx) {
        throw SchemaMismatch("no such column: " + std::string(name));
    }
    return *idx;
}

Dataset Dataset::from_rows(DataManifest manifest,
                           const std::vector<std::vector<std::string>>& rows) {
    manifest.validate();
    Dataset d;
    d.manifest_ = std::move(manifest);
    const std::size_t n_cols = d.manifest_.columns.size();
    d.n_rows_ = rows.size();
    d.numbers_.assign(n_cols, std::vector<double>(rows.size(), 0.0));
    d.strings_.assign(n_cols, std::vector<std::string>(rows.size()));
    d.days_.assign(n_cols, std::vector<std::int64_t>(rows.size(), 0));
    d.missing_.assign(n_cols, std::vector<std::uint8_t>(rows.size(), 0));

    const auto subset_col = d.manifest_.subset_column
                                ? d.manifest_.column_index(*d.manifest_.subset_column)
                                : std::nullopt;

    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != n_cols) {
            throw ParseError("row " + std::to_string(r + 1) + ": expected " +
                             std::to_string(n_cols) + " cells, got " +
                             std::to_string(rows[r].size()));
        }
        for (std::size_t c = 0; c < n_cols; ++c) {
            const std::string& raw = rows[r][c];
            const auto& spec = d.manifest_.columns[c];
            if (raw == d.manifest_.missing_token) {
                d.missing_[c][r] = 1;
                continue;
            }
            switch (spec.type) {
                case ColumnType::Numeric: {
                    double value = 0.0;
                    const char* begin = raw.data();
                    const char* end = raw.data() + raw.size();
                    auto res = std::from_chars(begin, end, value);
                    if (res.ec != std::errc{} || res.ptr != end) {
                        throw ParseError("row " + std::to_string(r + 1) + ", column '" +
                                         spec.name + "': cannot parse '" + raw +
                                         "' as a number");
                    }
                    d.numbers_[c][r] = value;
                    break;
                }
                case ColumnType::Timestamp: {
                    try {
                        d.days_[c][r] = parse_iso_date(raw);
                    } catch (const ParseError&) {
                        throw ParseError("row " + std::to_string(r + 1) + ", column '" +
                                         spec.name + "': cannot parse '" + raw +
                                         "' as an ISO-8601 date");
                    }
                    break;
                }
                case ColumnType::Categorical:
                case ColumnType::Text:
                    d.strings_[c][r] = raw;
                    break;
            }
        }
        if (subset_col && !d.missing_[*subset_col][r]) {
            const std::string& s = d.strings_[*subset_col][r];
            if (s != "train" && s != "validation" && s != "test") {
                throw ParseError("row " + std::to_string(r + 1) + ": unknown subset value '" +
                                 s + "' (expected train|validation|test)");
            }
        }
    }
    return d;
}

std::size_t Dataset::missing_count(std::size_t c) const {
    std::size_t n = 0;
    for (auto m : missing_[c]) n += m;
    return n;
}

std::size_t Dataset::total_missing() const {
    std::size_t n = 0;
    for (std::size_t c = 0; c < n_cols(); ++c) n += missing_count(c);
    return n;
}

std::vector<double> Dataset::numeric_values(std::size_t c) const {
    std::vector<double> out;
    out.reserve(n_rows_);
    for (std::size_t r = 0; r < n_rows_; ++r) {
        if (!missing_[c][r]) out.push_back(numbers_[c][r]);
    }
    return out;
}

std::map<std::string, std::uint64_t> Dataset::category_counts(std::size_t c) const {
    std::map<std::string, std::uint64_t> counts;
    for (std::size_t r = 0; r < n_rows_; ++r) {
        if (!missing_[c][r]) ++counts[strings_[c][r]];
    }
    return counts;
}

std::optional<Subset> Dataset::subset_of_row(std::size_t r) const {
    if (!manifest_.subset_column) return std::nullopt;
    const std::size_t c = *manifest_.column_index(*manifest_.subset_column);
    if (missing_[c][r]) return std::nullopt;
    const std::string& s = strings_[c][r];
    if (s == "train") return Subset::Train;
    if (s == "validation") return Subset::Validation;
    return Subset::Test;
}

Dataset Dataset::select_rows(const std::vector<std::size_t>& row_indices) const {
    Dataset out;
    out.manifest_ = manifest_;
    out.n_rows_ = row_indices.size();
    const std::size_t n_cols = manifest_.columns.size();
    out.numbers_.assign(n_cols, {});
    out.strings_.assign(n_cols, {});
    out.days_.assign(n_cols, {});
    out.missing_.assign(n_cols, {});
    for (std::size_t c = 0; c < n_cols; ++c) {
        out.numbers_[c].reserve(row_indices.size());
        out.strings_[c].reserve(row_indices.size());
        out.days_[c].reserve(row_indices.size());
        out.missing_[c].reserve(row_indices.size());
        for (std::size_t r : row_indices) {
            out.numbers_[c].push_back(numbers_[c][r]);
            out.strings_[c].push_back(strings_[c][r]);
            out.days_[c].push_back(days_[c][r]);
            out.missing_[c].push_back(missing_[c][r]);
        }
    }
    return out;
}

Dataset load_dataset(const std::string& data_path, const std::string& manifest_path) {
    DataManifest manifest = load_manifest(manifest_path);
    auto rows = read_csv(data_path);
    const auto& header = rows.front();
    if (header.size() != manifest.columns.size()) {
        throw ManifestMismatch(data_path + ": header has " + std::to_string(header.size()) +
                               " columns, manifest declares " +
                               std::to_string(manifest.columns.size()));
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] != manifest.columns[c].name) {
            throw ManifestMismatch(data_path + ": header column " + std::to_string(c + 1) +
                                   " is '" + header[c] + "', manifest declares '" +
                                   manifest.columns[c].name + "'");
        }
    }
    rows.erase(rows.begin());
    try {
        return Dataset::from_rows(std::move(manifest), rows);
    } catch (const ParseError& e) {
        throw ParseError(data_path + ": " + e.what());
    }
}

SubsetSplit split_subsets(const Dataset& d) {
    if (!d.manifest().subset_column) {
        throw MissingSubsetColumn("dataset has no subset column");
    }
    std::vector<std::size_t> train, validation, test;
    for (std::size_t r = 0; r < d.n_rows(); ++r) {
        const auto s = d.subset_of_row(r);
        if (!s) continue;  // missing subset cell: row belongs to no subset
        switch (*s) {
            case Subset::Train: train.push_back(r); break;
            case Subset::Validation: validation.push_back(r); break;
            case Subset::Test: test.push_back(r); break;
        }
    }
    SubsetSplit split;
    split.train = d.select_rows(train);
    split.validation = d.select_rows(validation);
    split.test = d.select_rows(test);
    if (train.empty()) split.warnings.push_back("train subset is empty");
    if (validation.empty()) split.warnings.push_back("validation subset is empty");
    if (test.empty()) split.warnings.push_back("test subset is empty");
    return split;
}

// --- prediction tables --------------------------------------------------

std::size_t PredictionTable::labeled_count() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.true_label.has_value();
    return n;
}

bool PredictionTable::any_group() const {
    return std::any_of(rows.begin(), rows.end(),
                       [](const PredictionRow& r) { return r.group.has_value(); });
}

bool PredictionTable::any_supervisor_flag() const {
    return std::any_of(rows.begin(), rows.end(),
                       [](const PredictionRow& r) { return r.supervisor_flag.has_value(); });
}

bool PredictionTable::any_context_flag() const {
    return std::any_of(rows.begin(), rows.end(),
                       [](const PredictionRow& r) { return r.context_changed.has_value(); });
}

void PredictionTable::validate() const {
    std::set<std::string> ids;
    for (const auto& r : rows) {
        if (r.instance_id.empty()) {
            throw SchemaError("prediction row with empty instance_id");
        }
        if (!ids.insert(r.instance_id).second) {
            throw SchemaError("duplicate instance_id '" + r.instance_id + "'");
        }
        if (r.score && (*r.score < 0.0 || *r.score > 1.0)) {
            throw SchemaError("instance '" + r.instance_id + "': score " +
                              canonical_json::format_double(*r.score) + " outside [0,1]");
        }
    }
}

static bool parse_bool_cell(const std::string& raw, const std::string& where) {
    if (raw == "true" || raw == "1") return true;
    if (raw == "false" || raw == "0") return false;
    throw ParseError(where + ": cannot parse '" + raw + "' as a boolean");
}

PredictionTable load_predictions(const std::string& path) {
    static const std::vector<std::string> known = {
        "instance_id", "true_label", "predicted_label", "score",
        "group",       "supervisor_flag", "context_changed"};
    auto rows = read_csv(path);
    const auto& header = rows.front();
    std::map<std::string, std::size_t> pos;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (std::find(known.begin(), known.end(), header[c]) == known.end()) {
            throw SchemaError(path + ": unknown prediction column '" + header[c] + "'");
        }
        if (!pos.emplace(header[c], c).second) {
            throw SchemaError(path + ": duplicate prediction column '" + header[c] + "'");
        }
    }
    if (!pos.count("instance_id") || !pos.count("predicted_label")) {
        throw SchemaError(path + ": instance_id and predicted_label columns are required");
    }

    PredictionTable table;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != header.size()) {
            throw ParseError(path + ": row " + std::to_string(r) + ": expected " +
                             std::to_string(header.size()) + " cells, got " +
                             std::to_string(rows[r].size()));
        }
        PredictionRow row;
        auto cell = [&](const char* name) -> const std::string* {
            auto it = pos.find(name);
            if (it == pos.end()) return nullptr;
            return &rows[r][it->second];
        };
        row.instance_id = *cell("instance_id");
        row.predicted_label = *cell("predicted_label");
        const std::string where = path + ": row " + std::to_string(r);
        if (const auto* s = cell("true_label"); s && !s->empty()) row.true_label = *s;
        if (const auto* s = cell("score"); s && !s->empty()) {
            double value = 0.0;
            auto res = std::from_chars(s->data(), s->data() + s->size(), value);
            if (res.ec != std::errc{} || res.ptr != s->data() + s->size()) {
                throw ParseError(where + ": cannot parse score '" + *s + "'");
            }
            row.score = value;
        }
        if (const auto* s = cell("group"); s && !s->empty()) row.group = *s;
        if (const auto* s = cell("supervisor_flag"); s && !s->empty()) {
            row.supervisor_flag = parse_bool_cell(*s, where);
        }
        if (const auto* s = cell("context_changed"); s && !s->empty()) {
            row.context_changed = parse_bool_cell(*s, where);
        }
        table.rows.push_back(std::move(row));
    }
    try {
        table.validate();
    } catch (const SchemaError& e) {
        throw SchemaError(path + ": " + e.what());
    }
    return table;
}

void write_prediction_csv(const std::string& path, const PredictionTable& table) {
    std::string out = "instance_id,true_label,predicted_label,score,group,supervisor_flag,context_changed\n";
    auto bool_cell = [](const std::optional<bool>& b) -> std::string {
        if (!b) return "";
        return *b ? "true" : "false";
    };
    for (const auto& r : table.rows) {
        out += csv_quote(r.instance_id);
        out += ',';
        out += csv_quote(r.true_label.value_or(""));
        out += ',';
        out += csv_quote(r.predicted_label);
        out += ',';
        if (r.score) out += canonical_json::format_double(*r.score);
        out += ',';
        out += csv_quote(r.group.value_or(""));
        out += ',';
        out += bool_cell(r.supervisor_flag);
        out += ',';
        out += bool_cell(r.context_changed);
        out += '\n';
    }
    write_file(path, out);
}

// --- retrain prediction sets ---------------------------------------------

void RetrainPredictionSet::validate() const {
    std::set<std::string> universe(instance_ids.begin(), instance_ids.end());
    if (universe.size() != instance_ids.size()) {
        throw SchemaError("retrain set: duplicate ids in instance_ids");
    }
    std::set<std::string> held_out_seen;
    for (const auto& run : runs) {
        if (kind == RetrainKind::LeaveOneOut && run.held_out_ids.size() != 1) {
            throw SchemaError("retrain run '" + run.run_id +
                              "': leave-one-out runs must hold out exactly one id");
        }
        for (const auto& id : run.held_out_ids) {
            if (!universe.count(id)) {
                throw SchemaError("retrain run '" + run.run_id + "': held-out id '" + id +
                                  "' is not in instance_ids");
            }
            if (!held_out_seen.insert(id).second) {
                throw SchemaError("retrain set: id '" + id +
                                  "' held out by more than one run");
            }
        }
    }
    // Both kinds must cover the declared universe: k-fold held-out sets
    // partition it, leave-one-out runs enumerate it.
    std::vector<std::string> missing;
    for (const auto& id : instance_ids) {
        if (!held_out_seen.count(id)) missing.push_back(id);
    }
    if (!missing.empty()) {
        std::string msg = "retrain set does not cover ids:";
        for (const auto& id : missing) msg += " " + id;
        throw CoverageError(msg);
    }
}

RetrainPredictionSet load_retrain_predictions(const std::string& dir) {
    const fs::path base(dir);
    const json index = parse_json_file((base / "runs.json").string());
    check_keys(index, {"kind", "instance_ids", "runs", "full_model_predictions"}, dir);
    RetrainPredictionSet set;
    const std::string kind = require_key(index, "kind", dir).get<std::string>();
    if (kind == "kfold") set.kind = RetrainKind::KFold;
    else if (kind == "leave_one_out") set.kind = RetrainKind::LeaveOneOut;
    else throw SchemaError(dir + ": kind must be kfold|leave_one_out");

    for (const auto& id : require_key(index, "instance_ids", dir)) {
        set.instance_ids.push_back(id.get<std::string>());
    }
    for (const auto& run : require_key(index, "runs", dir)) {
        check_keys(run, {"run_id", "held_out_ids", "predictions"}, dir + ": run");
        RetrainRun r;
        r.run_id = require_key(run, "run_id", dir).get<std::string>();
        for (const auto& id : require_key(run, "held_out_ids", dir)) {
            r.held_out_ids.push_back(id.get<std::string>());
        }
        const std::string file = require_key(run, "predictions", dir).get<std::string>();
        r.predictions = load_predictions((base / file).string());
        set.runs.push_back(std::move(r));
    }
    if (auto it = index.find("full_model_predictions"); it != index.end() && !it->is_null()) {
        set.full_model_predictions = load_predictions((base / it->get<std::string>()).string());
    }
    set.validate();
    return set;
}

void write_retrain_predictions(const std::string& dir, const RetrainPredictionSet& set) {
    set.validate();
    const fs::path base(dir);
    fs::create_directories(base);
    json index;
    index["kind"] = set.kind == RetrainKind::KFold ? "kfold" : "leave_one_out";
    index["instance_ids"] = set.instance_ids;
    json runs = json::array();
    for (std::size_t i = 0; i < set.runs.size(); ++i) {
        const auto& run = set.runs[i];
        const std::string file = "run_" + std::to_string(i) + ".csv";
        write_prediction_csv((base / file).string(), run.predictions);
        runs.push_back({{"run_id", run.run_id},
                        {"held_out_ids", run.held_out_ids},
                        {"predictions", file}});
    }
    index["runs"] = std::move(runs);
    if (set.full_model_predictions) {
        write_prediction_csv((base / "full.csv").string(), *set.full_model_predictions);
        index["full_model_predictions"] = "full.csv";
    }
    write_file((base / "runs.json").string(), canonical_json::dump(index));
}

// --- resource logs --------------------------------------------------------

ResourceLog load_resource_log(const std::string& path) {
    const std::string text = read_file(path);
    ResourceLog log;
    std::size_t line_no = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json v = json::parse(line, nullptr, false);
        if (v.is_discarded()) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": malformed JSON line");
        }
        const std::string where = path + ":" + std::to_string(line_no);
        check_keys(v, {"phase", "wall_time_seconds", "peak_memory_bytes", "energy_joules"},
                   where);
        ResourceEntry e;
        e.phase = phase_from_string(require_key(v, "phase", where).get<std::string>());
        e.wall_time_seconds = require_key(v, "wall_time_seconds", where).get<double>();
        if (e.wall_time_seconds < 0.0) {
            throw SchemaError(where + ": wall_time_seconds must be >= 0");
        }
        const json& mem = require_key(v, "peak_memory_bytes", where);
        if (!mem.is_number_unsigned() && !(mem.is_number_integer() && mem.get<std::int64_t>() >= 0)) {
            throw SchemaError(where + ": peak_memory_bytes must be a nonnegative integer");
        }
        e.peak_memory_bytes = mem.get<std::uint64_t>();
        if (auto it = v.find("energy_joules"); it != v.end() && !it->is_null()) {
            e.energy_joules = it->get<double>();
            if (*e.energy_joules < 0.0) {
                throw SchemaError(where + ": energy_joules must be >= 0");
            }
        }
        log.entries.push_back(e);
    }
    return log;
}

// --- model descriptor ------------------------------------------------------

bool ModelDescriptor::supports(ColumnType t) const {
    return std::find(supported_column_types.begin(), supported_column_types.end(), t) !=
           supported_column_types.end();
}

ModelDescriptor load_model_descriptor(const std::string& path) {
    const json v = parse_json_file(path);
    check_keys(v,
               {"model_type_name", "task", "supported_column_types", "n_parameters", "depth",
                "storage_bytes", "infrastructure_requirements"},
               path);
    ModelDescriptor m;
    m.model_type_name = require_key(v, "model_type_name", path).get<std::string>();
    m.task = task_from_string(require_key(v, "task", path).get<std::string>());
    for (const auto& t : require_key(v, "supported_column_types", path)) {
        m.supported_column_types.push_back(column_type_from_string(t.get<std::string>()));
    }
    auto nonneg_int = [&](const json& field, const char* name) -> std::uint64_t {
        if (!field.is_number_unsigned() &&
            !(field.is_number_integer() && field.get<std::int64_t>() >= 0)) {
            throw SchemaError(path + ": " + name + " must be a nonnegative integer");
        }
        return field.get<std::uint64_t>();
    };
    m.n_parameters = nonneg_int(require_key(v, "n_parameters", path), "n_parameters");
    if (auto it = v.find("depth"); it != v.end() && !it->is_null()) {
        m.depth = nonneg_int(*it, "depth");
    }
    m.storage_bytes = nonneg_int(require_key(v, "storage_bytes", path), "storage_bytes");
    const json& infra = require_key(v, "infrastructure_requirements", path);
    check_keys(infra, {"min_memory_bytes", "min_compute_units"}, path + ": infrastructure");
    m.infrastructure_requirements.min_memory_bytes =
        nonneg_int(require_key(infra, "min_memory_bytes", path), "min_memory_bytes");
    m.infrastructure_requirements.min_compute_units =
        require_key(infra, "min_compute_units", path).get<double>();
    if (m.infrastructure_requirements.min_compute_units < 0.0) {
        throw SchemaError(path + ": min_compute_units must be >= 0");
    }
    return m;
}

// --- checklist evidence ------------------------------------------------------

std::vector<ChecklistEvidence> load_checklist_evidence(const std::string& path) {
    const json v = parse_json_file(path);
    if (!v.is_array()) {
        throw SchemaError(path + ": expected a JSON array of evidence items");
    }
    std::vector<ChecklistEvidence> out;
    for (const auto& item : v) {
        check_keys(item, {"item_id", "status", "note"}, path + ": evidence item");
        ChecklistEvidence e;
        e.item_id = require_key(item, "item_id", path).get<std::string>();
        e.status =
            checklist_status_from_string(require_key(item, "status", path).get<std::string>());
        if (auto it = item.find("note"); it != item.end()) e.note = it->get<std::string>();
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace mlqgate::dataio
