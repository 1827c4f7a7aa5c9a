#pragma once

#include <zkai/exec.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace zkai::data {

// Tabular metric data: one row per observation, named feature columns plus
// one target column. Loaded raw, then passed through clean() which
// establishes the no-non-finite invariant.
struct Dataset {
    std::vector<std::string> feature_names;
    std::string target_name;
    std::vector<std::vector<double>> rows;  // rows[i].size() == feature_names.size()
    std::vector<double> targets;            // targets.size() == rows.size()

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_features() const { return feature_names.size(); }

    std::vector<double> column(std::size_t feature_idx) const;
    std::size_t feature_index(const std::string& name) const;  // SchemaError if absent

    // Dataset restricted to the named features, preserving row order.
    Dataset select(const std::vector<std::string>& names) const;

    // Canonical text form used for digests: header line, then one line per
    // row with %.17g cells.
    std::string canonical_serialization() const;
};

struct FeatureCorrelation {
    std::string name;
    double pearson_r = 0.0;
    double spearman_rho = 0.0;

    double strength() const;  // max(|r|, |rho|)
};

struct CorrelationReport {
    std::vector<FeatureCorrelation> features;  // dataset column order
};

// Per-feature min/max retained for inference-time reuse.
struct ScalerParams {
    std::vector<std::string> names;
    std::vector<double> mins;
    std::vector<double> maxs;

    // Maps a raw feature vector into [0,1] coordinates.
    std::vector<double> transform(const std::vector<double>& raw) const;
    double transform_one(std::size_t idx, double v) const;
};

struct CleanResult {
    Dataset dataset;
    std::size_t rows_removed = 0;
    std::vector<std::string> dropped_features;  // constant columns, with reason
};

// Parses a UTF-8 comma-separated file: first row header, decimal-point
// reals, optional `date` column ignored. Empty cells and nan/inf load as
// non-finite values for clean() to remove.
// Throws SchemaError (missing target), ParseError (bad cell; carries the
// 1-based file line and column name).
Dataset load_csv(const std::string& path, const std::string& target_name);

// Writes the canonical CSV form (full-precision cells); load_csv reads it
// back exactly.
void save_csv(const Dataset& d, const std::string& path);

// Drops rows with any non-finite value, then drops constant feature
// columns. Throws InsufficientData when fewer than 2 rows survive.
CleanResult clean(const Dataset& d);

// Eq-style product-moment correlation; result in [-1, 1].
// Throws ZeroVariance on constant input, DimensionError on length mismatch.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

// Rank correlation with average-rank tie handling (Pearson of ranks, which
// reduces to the classic rank-difference formula in the tie-free case).
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

CorrelationReport analyze(const Dataset& d,
                          ExecPolicy policy = ExecPolicy::parallel);

// Min-max rescaling of every feature column into [0,1].
// Throws ZeroRange if a feature is constant.
std::pair<Dataset, ScalerParams> normalize(const Dataset& d);

// Features whose correlation strength reaches the threshold, strongest
// first, ties broken by name. threshold must be in [0,1].
std::vector<std::string> select_features(const CorrelationReport& report,
                                         double threshold);

// Strongest n features (same ordering rule as select_features).
std::vector<std::string> select_top_features(const CorrelationReport& report,
                                             std::size_t n);

}  // namespace zkai::data
