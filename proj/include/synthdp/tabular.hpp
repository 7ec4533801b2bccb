#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "synthdp/error.hpp"
#include "synthdp/rng.hpp"

namespace synthdp {

enum class ColumnKind { Continuous, Categorical };

struct ColumnSpec {
    std::string name;
    ColumnKind kind = ColumnKind::Continuous;
    std::vector<std::string> categories;            // Categorical only
    std::optional<std::pair<double, double>> bounds; // Continuous only

    bool operator==(const ColumnSpec&) const = default;
};

struct Schema {
    std::vector<ColumnSpec> columns;
    std::optional<std::string> label_column;

    bool operator==(const Schema&) const = default;

    std::size_t size() const { return columns.size(); }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i].name == name) return i;
        return std::nullopt;
    }

    std::optional<std::size_t> label_index() const {
        if (!label_column) return std::nullopt;
        return index_of(*label_column);
    }

    /// Width of the one-hot numeric encoding.
    std::size_t encoded_dim() const {
        std::size_t d = 0;
        for (const auto& col : columns)
            d += col.kind == ColumnKind::Continuous ? 1 : col.categories.size();
        return d;
    }

    void validate() const {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            const auto& col = columns[i];
            require(!col.name.empty(), ErrorCode::InvalidSchema, "column name empty");
            for (std::size_t j = i + 1; j < columns.size(); ++j)
                require(columns[j].name != col.name, ErrorCode::InvalidSchema,
                        "duplicate column name '" + col.name + "'");
            if (col.kind == ColumnKind::Categorical) {
                require(!col.categories.empty(), ErrorCode::InvalidSchema,
                        "categorical column '" + col.name + "' has no categories");
                for (std::size_t a = 0; a < col.categories.size(); ++a)
                    for (std::size_t b = a + 1; b < col.categories.size(); ++b)
                        require(col.categories[a] != col.categories[b],
                                ErrorCode::InvalidSchema,
                                "duplicate category in '" + col.name + "'");
            }
            if (col.bounds) {
                require(col.kind == ColumnKind::Continuous, ErrorCode::InvalidSchema,
                        "bounds on categorical column '" + col.name + "'");
                require(col.bounds->first < col.bounds->second, ErrorCode::InvalidSchema,
                        "bounds.min must be < bounds.max on '" + col.name + "'");
            }
        }
        if (label_column) {
            auto idx = index_of(*label_column);
            require(idx.has_value(), ErrorCode::InvalidSchema,
                    "label column '" + *label_column + "' not in schema");
            require(columns[*idx].kind == ColumnKind::Categorical,
                    ErrorCode::InvalidSchema, "label column must be categorical");
        }
    }
};

// Cells are stored as doubles: the value itself for continuous columns and
// the 0-based category index for categorical columns.
using Record = std::vector<double>;

struct Table {
    Schema schema;
    std::vector<Record> rows;

    bool operator==(const Table&) const = default;

    std::size_t n() const { return rows.size(); }
    std::size_t n_columns() const { return schema.columns.size(); }

    int category_at(std::size_t row, std::size_t col) const {
        return static_cast<int>(rows[row][col]);
    }

    void validate() const {
        schema.validate();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            require(rows[r].size() == schema.columns.size(), ErrorCode::InvalidArgument,
                    "row " + std::to_string(r) + " has wrong cell count");
            for (std::size_t c = 0; c < schema.columns.size(); ++c) {
                const auto& col = schema.columns[c];
                double v = rows[r][c];
                if (col.kind == ColumnKind::Continuous) {
                    require(std::isfinite(v), ErrorCode::NonNumericCell,
                            "non-finite value in '" + col.name + "' row " + std::to_string(r));
                } else {
                    require(v >= 0.0 && v < static_cast<double>(col.categories.size()) &&
                                v == std::floor(v),
                            ErrorCode::UnknownCategory,
                            "bad category index in '" + col.name + "' row " + std::to_string(r));
                }
            }
        }
    }
};

inline Table take_rows(const Table& table, const std::vector<std::size_t>& indices) {
    Table out;
    out.schema = table.schema;
    out.rows.reserve(indices.size());
    for (std::size_t i : indices) out.rows.push_back(table.rows[i]);
    return out;
}

/// Row indices grouped by label category (schema must have a label column).
inline std::vector<std::vector<std::size_t>> rows_by_class(const Table& table) {
    auto label = table.schema.label_index();
    require(label.has_value(), ErrorCode::NoLabelColumn, "table has no label column");
    std::vector<std::vector<std::size_t>> groups(
        table.schema.columns[*label].categories.size());
    for (std::size_t r = 0; r < table.n(); ++r)
        groups[table.category_at(r, *label)].push_back(r);
    return groups;
}

/// Table holding only the continuous columns (label and categoricals dropped).
inline Table continuous_only(const Table& table) {
    Table out;
    for (std::size_t c = 0; c < table.schema.columns.size(); ++c)
        if (table.schema.columns[c].kind == ColumnKind::Continuous)
            out.schema.columns.push_back(table.schema.columns[c]);
    out.rows.reserve(table.n());
    for (const auto& row : table.rows) {
        Record rec;
        rec.reserve(out.schema.columns.size());
        for (std::size_t c = 0; c < table.schema.columns.size(); ++c)
            if (table.schema.columns[c].kind == ColumnKind::Continuous)
                rec.push_back(row[c]);
        out.rows.push_back(std::move(rec));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Numeric encoding and moments
// ---------------------------------------------------------------------------

/// One-hot numeric encoding: continuous columns pass through, each categorical
/// column expands to one indicator column per category, in schema order.
inline Eigen::MatrixXd encode_numeric(const Table& table) {
    require(table.n() > 0, ErrorCode::EmptyTable, "cannot encode an empty table");
    const std::size_t d = table.schema.encoded_dim();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(table.n()),
                                              static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < table.n(); ++r) {
        std::size_t j = 0;
        for (std::size_t c = 0; c < table.schema.columns.size(); ++c) {
            const auto& col = table.schema.columns[c];
            if (col.kind == ColumnKind::Continuous) {
                m(r, j++) = table.rows[r][c];
            } else {
                m(r, j + table.category_at(r, c)) = 1.0;
                j += col.categories.size();
            }
        }
    }
    return m;
}

struct MomentSummary {
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;
    std::size_t n = 0;
    std::size_t encoded_dim = 0;

    double trace() const { return covariance.trace(); }
};

inline MomentSummary moments_of_matrix(const Eigen::MatrixXd& m) {
    const auto n = m.rows();
    require(n >= 2, ErrorCode::InsufficientRows, "moments need at least 2 rows");
    MomentSummary s;
    s.n = static_cast<std::size_t>(n);
    s.encoded_dim = static_cast<std::size_t>(m.cols());
    s.mean = m.colwise().mean();
    Eigen::MatrixXd centered = m.rowwise() - s.mean.transpose();
    s.covariance = (centered.transpose() * centered) / static_cast<double>(n - 1);
    s.covariance = ((s.covariance + s.covariance.transpose()) / 2.0).eval();
    return s;
}

/// Mean and unbiased (n-1) sample covariance of the one-hot encoding.
inline MomentSummary moments(const Table& table) {
    require(table.n() >= 2, ErrorCode::InsufficientRows, "moments need at least 2 rows");
    return moments_of_matrix(encode_numeric(table));
}

/// Euclidean norm of the mean difference and Frobenius norm of the covariance
/// difference.
inline std::pair<double, double> frobenius_diff(const MomentSummary& a,
                                                const MomentSummary& b) {
    require(a.encoded_dim == b.encoded_dim, ErrorCode::DimensionMismatch,
            "moment summaries have different encoded dimensions");
    double mean_fnorm = (a.mean - b.mean).norm();
    double cov_fnorm = (a.covariance - b.covariance).norm();
    return {mean_fnorm, cov_fnorm};
}

// ---------------------------------------------------------------------------
// Mixed-type distance (SMOTENC rule)
// ---------------------------------------------------------------------------

struct DistanceMetric {
    std::vector<double> continuous_scales;  // per continuous column, schema order
    double categorical_penalty = 1.0;
};

/// Scales are per-column standard deviations of the source table (1 for
/// zero-variance columns); the categorical mismatch penalty is the median of
/// the continuous standard deviations (1 when there are none).
inline DistanceMetric make_distance_metric(const Table& table) {
    require(table.n() >= 2, ErrorCode::InsufficientRows,
            "distance metric needs at least 2 rows");
    DistanceMetric metric;
    std::vector<double> stds;
    for (std::size_t c = 0; c < table.schema.columns.size(); ++c) {
        if (table.schema.columns[c].kind != ColumnKind::Continuous) continue;
        double mean = 0.0;
        for (const auto& row : table.rows) mean += row[c];
        mean /= static_cast<double>(table.n());
        double ss = 0.0;
        for (const auto& row : table.rows) ss += (row[c] - mean) * (row[c] - mean);
        double sd = std::sqrt(ss / static_cast<double>(table.n() - 1));
        stds.push_back(sd);
        metric.continuous_scales.push_back(sd > 0.0 ? sd : 1.0);
    }
    if (stds.empty()) {
        metric.categorical_penalty = 1.0;
    } else {
        std::sort(stds.begin(), stds.end());
        std::size_t m = stds.size();
        double median = m % 2 == 1 ? stds[m / 2] : (stds[m / 2 - 1] + stds[m / 2]) / 2.0;
        metric.categorical_penalty = median > 0.0 ? median : 1.0;
    }
    return metric;
}

/// Squared distance: Euclidean over scale-normalized continuous cells plus a
/// squared penalty per mismatching categorical cell.
inline double squared_distance(const Record& a, const Record& b, const Schema& schema,
                               const DistanceMetric& metric) {
    double d2 = 0.0;
    std::size_t cont = 0;
    for (std::size_t c = 0; c < schema.columns.size(); ++c) {
        if (schema.columns[c].kind == ColumnKind::Continuous) {
            double diff = (a[c] - b[c]) / metric.continuous_scales[cont++];
            d2 += diff * diff;
        } else if (a[c] != b[c]) {
            d2 += metric.categorical_penalty * metric.categorical_penalty;
        }
    }
    return d2;
}

// ---------------------------------------------------------------------------
// Outlier selection
// ---------------------------------------------------------------------------

/// Diagonal-Mahalanobis outlier scores: squared deviation from the encoded
/// mean, scaled by per-dimension variance. Returns up to `count` indices with
/// the highest scores among rows whose score strictly exceeds the empirical
/// `quantile` of all scores, ties broken by ascending row index.
inline std::vector<std::size_t> select_outliers(const Table& table,
                                                double quantile = 0.95,
                                                std::size_t count = 5) {
    require(table.n() >= 2, ErrorCode::InsufficientRows,
            "outlier selection needs at least 2 rows");
    require(quantile > 0.5 && quantile < 1.0, ErrorCode::InvalidArgument,
            "quantile must be in (0.5, 1)");
    require(count >= 1, ErrorCode::InvalidArgument, "count must be >= 1");

    Eigen::MatrixXd m = encode_numeric(table);
    MomentSummary s = moments_of_matrix(m);
    Eigen::VectorXd var = s.covariance.diagonal();

    std::vector<double> scores(table.n(), 0.0);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        double score = 0.0;
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (var(j) <= 0.0) continue;  // constant dimension carries no signal
            double dev = m(r, j) - s.mean(j);
            score += dev * dev / var(j);
        }
        scores[static_cast<std::size_t>(r)] = score;
    }

    std::vector<double> sorted = scores;
    std::sort(sorted.begin(), sorted.end());
    std::size_t rank = static_cast<std::size_t>(
        std::ceil(quantile * static_cast<double>(table.n())));
    rank = std::min(std::max<std::size_t>(rank, 1), table.n());
    double threshold = sorted[rank - 1];

    std::vector<std::size_t> order(table.n());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });

    std::vector<std::size_t> out;
    for (std::size_t i : order) {
        if (out.size() == count) break;
        if (scores[i] > threshold) out.push_back(i);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Artificial data
// ---------------------------------------------------------------------------

struct GaussianClassSpec {
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;
    std::size_t size = 0;
};

struct GaussianMixtureSpec {
    std::vector<GaussianClassSpec> classes;
    std::string label_name = "label";
    std::string feature_prefix = "x";
};

/// Samples a labeled table from per-class Gaussians. Rows are emitted class by
/// class; fully deterministic given the seed.
inline Table sample_gaussian_mixture(const GaussianMixtureSpec& spec,
                                     std::uint64_t seed) {
    require(!spec.classes.empty(), ErrorCode::InvalidArgument, "no classes in spec");
    const auto dim = spec.classes.front().mean.size();

    Table table;
    for (Eigen::Index j = 0; j < dim; ++j)
        table.schema.columns.push_back(
            {spec.feature_prefix + std::to_string(j), ColumnKind::Continuous, {}, {}});
    ColumnSpec label{spec.label_name, ColumnKind::Categorical, {}, {}};
    for (std::size_t c = 0; c < spec.classes.size(); ++c)
        label.categories.push_back("class_" + std::to_string(c));
    table.schema.columns.push_back(label);
    table.schema.label_column = spec.label_name;

    for (std::size_t c = 0; c < spec.classes.size(); ++c) {
        const auto& cls = spec.classes[c];
        require(cls.mean.size() == dim && cls.covariance.rows() == dim &&
                    cls.covariance.cols() == dim,
                ErrorCode::DimensionMismatch, "class spec dimensions disagree");
        require(cls.size >= 2, ErrorCode::InvalidArgument, "class size must be >= 2");
        require(cls.covariance.isApprox(cls.covariance.transpose(), 1e-9),
                ErrorCode::InvalidCovariance, "covariance not symmetric");
        Eigen::LLT<Eigen::MatrixXd> llt(cls.covariance);
        require(llt.info() == Eigen::Success, ErrorCode::InvalidCovariance,
                "covariance not positive definite");
        Eigen::MatrixXd chol = llt.matrixL();

        Rng rng(derive_seed(seed, "gaussian_mixture", c));
        for (std::size_t i = 0; i < cls.size; ++i) {
            Eigen::VectorXd z(dim);
            for (Eigen::Index j = 0; j < dim; ++j) z(j) = rng.normal();
            Eigen::VectorXd x = cls.mean + chol * z;
            Record rec(static_cast<std::size_t>(dim) + 1);
            for (Eigen::Index j = 0; j < dim; ++j) rec[static_cast<std::size_t>(j)] = x(j);
            rec.back() = static_cast<double>(c);
            table.rows.push_back(std::move(rec));
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// CSV (RFC 4180) and schema sidecar I/O
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline bool parse_double(std::string_view text, double& out) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc() && res.ptr == end;
}

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

/// Splits CSV content into records of fields, honoring quoted fields.
inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    auto end_field = [&]() {
        record.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_record = [&]() {
        end_field();
        if (record.size() > 1 || !record[0].empty()) records.push_back(record);
        record.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r') field.pop_back();
            end_record();
        } else {
            field += c;
            field_started = true;
        }
    }
    if (!field.empty() || !record.empty()) end_record();
    return records;
}

}  // namespace detail

/// Loads an RFC-4180 CSV whose header matches the schema column names in
/// order. Categorical cells are mapped to indices through the schema.
inline Table load_csv_text(const std::string& text, const Schema& schema) {
    schema.validate();
    auto records = detail::parse_csv(text);
    require(!records.empty(), ErrorCode::EmptyTable, "no header row");
    const auto& header = records[0];
    require(header.size() == schema.columns.size(), ErrorCode::MissingColumn,
            "header has " + std::to_string(header.size()) + " columns, schema has " +
                std::to_string(schema.columns.size()));
    for (std::size_t c = 0; c < schema.columns.size(); ++c)
        require(header[c] == schema.columns[c].name, ErrorCode::MissingColumn,
                "header column '" + header[c] + "' does not match schema column '" +
                    schema.columns[c].name + "'");
    require(records.size() > 1, ErrorCode::EmptyTable, "no data rows");

    Table table;
    table.schema = schema;
    table.rows.reserve(records.size() - 1);
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& fields = records[r];
        require(fields.size() == schema.columns.size(), ErrorCode::InvalidArgument,
                "row " + std::to_string(r) + " has " + std::to_string(fields.size()) +
                    " cells, expected " + std::to_string(schema.columns.size()));
        Record rec(schema.columns.size());
        for (std::size_t c = 0; c < schema.columns.size(); ++c) {
            const auto& col = schema.columns[c];
            if (col.kind == ColumnKind::Continuous) {
                double v;
                require(detail::parse_double(fields[c], v) && std::isfinite(v),
                        ErrorCode::NonNumericCell,
                        "cell '" + fields[c] + "' in column '" + col.name + "' row " +
                            std::to_string(r) + " is not a finite number");
                rec[c] = v;
            } else {
                auto it = std::find(col.categories.begin(), col.categories.end(), fields[c]);
                require(it != col.categories.end(), ErrorCode::UnknownCategory,
                        "cell '" + fields[c] + "' in column '" + col.name + "' row " +
                            std::to_string(r) + " is not a known category");
                rec[c] = static_cast<double>(it - col.categories.begin());
            }
        }
        table.rows.push_back(std::move(rec));
    }
    return table;
}

inline Table load_csv(const std::string& path, const Schema& schema) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_csv_text(buf.str(), schema);
}

inline std::string write_csv_text(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.schema.columns.size(); ++c) {
        if (c) out += ',';
        out += detail::csv_escape(table.schema.columns[c].name);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < table.schema.columns.size(); ++c) {
            if (c) out += ',';
            const auto& col = table.schema.columns[c];
            if (col.kind == ColumnKind::Continuous)
                out += detail::format_double(row[c]);
            else
                out += detail::csv_escape(col.categories[static_cast<std::size_t>(row[c])]);
        }
        out += '\n';
    }
    return out;
}

inline void write_csv(const Table& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorCode::IoError, "cannot open '" + path + "' for writing");
    out << write_csv_text(table);
    require(out.good(), ErrorCode::IoError, "failed writing '" + path + "'");
}

// Schema sidecar: a hand-writable line format.
//   column <name> continuous [<min> <max>]
//   column <name> categorical <cat> <cat> ...
//   label <name>
// Blank lines and lines starting with '#' are ignored; tokens are
// whitespace-separated, so names and categories cannot contain spaces.

inline Schema parse_schema_text(const std::string& text) {
    Schema schema;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word) || word[0] == '#') continue;
        auto fail = [&](const std::string& msg) {
            raise(ErrorCode::InvalidSchema,
                  "line " + std::to_string(lineno) + ": " + msg);
        };
        if (word == "column") {
            ColumnSpec col;
            std::string kind;
            if (!(ls >> col.name >> kind)) fail("expected: column <name> <kind> ...");
            if (kind == "continuous") {
                col.kind = ColumnKind::Continuous;
                std::string lo, hi;
                if (ls >> lo) {
                    double a, b;
                    if (!(ls >> hi)) fail("bounds need both min and max");
                    if (!detail::parse_double(lo, a) || !detail::parse_double(hi, b))
                        fail("bounds must be numbers");
                    col.bounds = {a, b};
                }
            } else if (kind == "categorical") {
                col.kind = ColumnKind::Categorical;
                std::string cat;
                while (ls >> cat) col.categories.push_back(cat);
                if (col.categories.empty()) fail("categorical column needs categories");
            } else {
                fail("unknown column kind '" + kind + "'");
            }
            schema.columns.push_back(std::move(col));
        } else if (word == "label") {
            std::string name;
            if (!(ls >> name)) fail("expected: label <name>");
            schema.label_column = name;
        } else {
            fail("unknown directive '" + word + "'");
        }
    }
    schema.validate();
    return schema;
}

inline Schema load_schema(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_schema_text(buf.str());
}

inline std::string write_schema_text(const Schema& schema) {
    std::string out;
    for (const auto& col : schema.columns) {
        out += "column " + col.name;
        if (col.kind == ColumnKind::Continuous) {
            out += " continuous";
            if (col.bounds)
                out += " " + detail::format_double(col.bounds->first) + " " +
                       detail::format_double(col.bounds->second);
        } else {
            out += " categorical";
            for (const auto& cat : col.categories) out += " " + cat;
        }
        out += '\n';
    }
    if (schema.label_column) out += "label " + *schema.label_column + "\n";
    return out;
}

inline void write_schema(const Schema& schema, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorCode::IoError, "cannot open '" + path + "' for writing");
    out << write_schema_text(schema);
}

}  // namespace synthdp
