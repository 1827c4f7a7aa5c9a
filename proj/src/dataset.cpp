#include <zkai/dataset.hpp>

#include <zkai/errors.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace zkai::data {

std::vector<double> Dataset::column(std::size_t feature_idx) const {
    std::vector<double> out(rows.size());
    for (size_t i = 0; i < rows.size(); i++) out[i] = rows[i][feature_idx];
    return out;
}

std::size_t Dataset::feature_index(const std::string& name) const {
    auto it = std::find(feature_names.begin(), feature_names.end(), name);
    if (it == feature_names.end())
        throw SchemaError("unknown feature column: " + name);
    return size_t(it - feature_names.begin());
}

Dataset Dataset::select(const std::vector<std::string>& names) const {
    std::vector<size_t> idx;
    idx.reserve(names.size());
    for (const auto& n : names) idx.push_back(feature_index(n));

    Dataset out;
    out.feature_names = names;
    out.target_name = target_name;
    out.targets = targets;
    out.rows.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<double> r(idx.size());
        for (size_t j = 0; j < idx.size(); j++) r[j] = row[idx[j]];
        out.rows.push_back(std::move(r));
    }
    return out;
}

std::string Dataset::canonical_serialization() const {
    std::string out;
    for (size_t j = 0; j < feature_names.size(); j++) {
        out += feature_names[j];
        out += ',';
    }
    out += target_name;
    out += '\n';
    char buf[64];
    for (size_t i = 0; i < rows.size(); i++) {
        for (size_t j = 0; j < rows[i].size(); j++) {
            std::snprintf(buf, sizeof(buf), "%.17g", rows[i][j]);
            out += buf;
            out += ',';
        }
        std::snprintf(buf, sizeof(buf), "%.17g", targets[i]);
        out += buf;
        out += '\n';
    }
    return out;
}

double FeatureCorrelation::strength() const {
    return std::max(std::fabs(pearson_r), std::fabs(spearman_rho));
}

std::vector<double> ScalerParams::transform(const std::vector<double>& raw) const {
    if (raw.size() != names.size())
        throw DimensionError("scaler expects " + std::to_string(names.size()) +
                             " features, got " + std::to_string(raw.size()));
    std::vector<double> out(raw.size());
    for (size_t j = 0; j < raw.size(); j++) out[j] = transform_one(j, raw[j]);
    return out;
}

double ScalerParams::transform_one(std::size_t idx, double v) const {
    return (v - mins[idx]) / (maxs[idx] - mins[idx]);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

double parse_cell(const std::string& raw, size_t line_no, const std::string& col) {
    std::string cell = trim(raw);
    if (cell.empty()) return std::numeric_limits<double>::quiet_NaN();
    // nan/inf tokens load as non-finite values and are handled by clean()
    const char* begin = cell.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + cell.size())
        throw ParseError("unparseable cell '" + cell + "' at line " +
                             std::to_string(line_no) + ", column " + col,
                         line_no, col);
    return v;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& target_name) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open dataset file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw SchemaError("empty dataset file: " + path);

    std::vector<std::string> header = split_csv_line(line);
    for (auto& h : header) h = trim(h);

    long target_col = -1;
    std::vector<size_t> feature_cols;
    std::vector<std::string> feature_names;
    for (size_t j = 0; j < header.size(); j++) {
        if (header[j] == target_name) {
            target_col = (long)j;
        } else if (header[j] == "date") {
            continue;  // timestamps are not model features
        } else {
            feature_cols.push_back(j);
            feature_names.push_back(header[j]);
        }
    }
    if (target_col < 0)
        throw SchemaError("target column '" + target_name + "' not found in " + path);

    Dataset d;
    d.feature_names = std::move(feature_names);
    d.target_name = target_name;

    size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (trim(line).empty()) continue;
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size())
            throw ParseError("row at line " + std::to_string(line_no) + " has " +
                                 std::to_string(cells.size()) + " cells, expected " +
                                 std::to_string(header.size()),
                             line_no, "");
        std::vector<double> row(feature_cols.size());
        for (size_t j = 0; j < feature_cols.size(); j++) {
            row[j] = parse_cell(cells[feature_cols[j]], line_no, d.feature_names[j]);
        }
        d.rows.push_back(std::move(row));
        d.targets.push_back(
            parse_cell(cells[(size_t)target_col], line_no, target_name));
    }
    return d;
}

void save_csv(const Dataset& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write dataset file: " + path);
    out << d.canonical_serialization();
}

CleanResult clean(const Dataset& d) {
    CleanResult out;
    out.dataset.feature_names = d.feature_names;
    out.dataset.target_name = d.target_name;

    for (size_t i = 0; i < d.rows.size(); i++) {
        bool ok = std::isfinite(d.targets[i]);
        for (double v : d.rows[i]) ok = ok && std::isfinite(v);
        if (ok) {
            out.dataset.rows.push_back(d.rows[i]);
            out.dataset.targets.push_back(d.targets[i]);
        } else {
            out.rows_removed++;
        }
    }
    if (out.dataset.rows.size() < 2)
        throw InsufficientData("fewer than 2 usable rows after cleaning (" +
                               std::to_string(out.dataset.rows.size()) + ")");

    // Drop zero-variance feature columns; they carry no signal and break
    // both correlation and min-max scaling.
    std::vector<size_t> keep;
    for (size_t j = 0; j < out.dataset.n_features(); j++) {
        bool constant = true;
        for (size_t i = 1; i < out.dataset.rows.size() && constant; i++) {
            constant = out.dataset.rows[i][j] == out.dataset.rows[0][j];
        }
        if (constant) {
            out.dropped_features.push_back(out.dataset.feature_names[j]);
        } else {
            keep.push_back(j);
        }
    }
    if (keep.size() != out.dataset.n_features()) {
        Dataset pruned;
        pruned.target_name = out.dataset.target_name;
        pruned.targets = out.dataset.targets;
        for (size_t j : keep) pruned.feature_names.push_back(out.dataset.feature_names[j]);
        for (const auto& row : out.dataset.rows) {
            std::vector<double> r(keep.size());
            for (size_t j = 0; j < keep.size(); j++) r[j] = row[keep[j]];
            pruned.rows.push_back(std::move(r));
        }
        out.dataset = std::move(pruned);
    }
    return out;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw DimensionError("pearson: length mismatch");
    const size_t n = xs.size();
    if (n < 2) throw InsufficientData("pearson: need at least 2 points");

    double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / double(n);
    double my = std::accumulate(ys.begin(), ys.end(), 0.0) / double(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < n; i++) {
        double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0)
        throw ZeroVariance("pearson: constant input sequence");
    return sxy / std::sqrt(sxx * syy);
}

namespace {
// Average-rank assignment (ties share the mean of their rank positions).
std::vector<double> average_ranks(const std::vector<double>& v) {
    const size_t n = v.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return v[a] < v[b]; });

    std::vector<double> ranks(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) j++;
        double avg = (double(i) + double(j)) / 2.0 + 1.0;
        for (size_t k = i; k <= j; k++) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}
}  // namespace

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw DimensionError("spearman: length mismatch");
    if (xs.size() < 2) throw InsufficientData("spearman: need at least 2 points");
    return pearson(average_ranks(xs), average_ranks(ys));
}

CorrelationReport analyze(const Dataset& d, ExecPolicy policy) {
    CorrelationReport report;
    report.features.resize(d.n_features());
    parallel_for(policy, d.n_features(), [&](size_t j) {
        std::vector<double> col = d.column(j);
        report.features[j] = FeatureCorrelation{
            d.feature_names[j],
            pearson(col, d.targets),
            spearman(col, d.targets),
        };
    });
    return report;
}

std::pair<Dataset, ScalerParams> normalize(const Dataset& d) {
    ScalerParams scaler;
    scaler.names = d.feature_names;
    scaler.mins.resize(d.n_features());
    scaler.maxs.resize(d.n_features());

    for (size_t j = 0; j < d.n_features(); j++) {
        double lo = d.rows[0][j], hi = d.rows[0][j];
        for (const auto& row : d.rows) {
            lo = std::min(lo, row[j]);
            hi = std::max(hi, row[j]);
        }
        if (hi <= lo)
            throw ZeroRange("feature '" + d.feature_names[j] +
                            "' has zero range; cannot rescale");
        scaler.mins[j] = lo;
        scaler.maxs[j] = hi;
    }

    Dataset out = d;
    for (auto& row : out.rows) {
        for (size_t j = 0; j < row.size(); j++) {
            row[j] = scaler.transform_one(j, row[j]);
        }
    }
    return {std::move(out), std::move(scaler)};
}

namespace {
std::vector<std::string> ranked_features(const CorrelationReport& report) {
    std::vector<const FeatureCorrelation*> items;
    items.reserve(report.features.size());
    for (const auto& f : report.features) items.push_back(&f);
    std::sort(items.begin(), items.end(),
              [](const FeatureCorrelation* a, const FeatureCorrelation* b) {
                  if (a->strength() != b->strength())
                      return a->strength() > b->strength();
                  return a->name < b->name;
              });
    std::vector<std::string> out;
    out.reserve(items.size());
    for (const auto* f : items) out.push_back(f->name);
    return out;
}
}  // namespace

std::vector<std::string> select_features(const CorrelationReport& report,
                                         double threshold) {
    if (threshold < 0.0 || threshold > 1.0)
        throw std::invalid_argument("selection threshold must be in [0,1]");
    std::vector<std::string> ranked = ranked_features(report);
    std::vector<std::string> out;
    for (const auto& name : ranked) {
        for (const auto& f : report.features) {
            if (f.name == name && f.strength() >= threshold) out.push_back(name);
        }
    }
    return out;
}

std::vector<std::string> select_top_features(const CorrelationReport& report,
                                             std::size_t n) {
    std::vector<std::string> ranked = ranked_features(report);
    if (ranked.size() > n) ranked.resize(n);
    return ranked;
}

}  // namespace zkai::data
