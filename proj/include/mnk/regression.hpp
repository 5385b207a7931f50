// Ordinary least squares over standardized game features: the combined
// fun-score regression and its feature-matrix plumbing.
#pragma once

#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mnk {

// Bad input data (as opposed to a usage error): duplicate ids, join
// mismatches, rank deficiency, and the like.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FeatureMatrix {
    std::vector<std::string> game_ids;               // row order
    std::vector<std::string> columns;                // column names
    std::vector<std::vector<double>> standardized;   // rows x columns, z-scores
    std::vector<double> means;                       // per column
    std::vector<double> stds;                        // per column, population
};

// Z-score standardization (population standard deviation) with the
// parameters retained for prediction-time reuse.
inline FeatureMatrix build_features(const std::vector<std::string>& game_ids,
                                    const std::vector<std::string>& columns,
                                    const std::vector<std::vector<double>>& raw) {
    if (raw.size() != game_ids.size())
        throw DataError("feature rows do not match game id count");
    std::set<std::string> seen;
    for (const std::string& id : game_ids)
        if (!seen.insert(id).second)
            throw DataError("duplicate game id in feature table: " + id);
    for (const std::vector<double>& row : raw)
        if (row.size() != columns.size())
            throw DataError("feature row width does not match column count");

    FeatureMatrix matrix;
    matrix.game_ids = game_ids;
    matrix.columns = columns;
    std::size_t n = raw.size();
    for (std::size_t c = 0; c < columns.size(); ++c) {
        double mean = 0.0;
        for (std::size_t r = 0; r < n; ++r) mean += raw[r][c];
        mean /= static_cast<double>(n);
        double variance = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            double d = raw[r][c] - mean;
            variance += d * d;
        }
        double sd = std::sqrt(variance / static_cast<double>(n));
        if (sd < 1e-12)
            throw DataError("zero-variance feature column: " + columns[c]);
        matrix.means.push_back(mean);
        matrix.stds.push_back(sd);
    }
    matrix.standardized.resize(n, std::vector<double>(columns.size(), 0.0));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < columns.size(); ++c)
            matrix.standardized[r][c] = (raw[r][c] - matrix.means[c]) / matrix.stds[c];
    return matrix;
}

struct RegressionModel {
    double intercept = 0.0;
    std::vector<std::string> columns;   // weight order
    std::vector<double> weights;
    std::vector<double> means;          // standardization parameters
    std::vector<double> stds;
    double r_squared = 0.0;

    double weight_for(const std::string& column) const {
        for (std::size_t c = 0; c < columns.size(); ++c)
            if (columns[c] == column) return weights[c];
        throw DataError("model has no weight for column: " + column);
    }
};

namespace detail {

// Gauss-Jordan with partial pivoting on the (tiny, symmetric) normal-equation
// system; a vanishing pivot means the design matrix is rank-deficient.
inline std::vector<double> solve_linear_system(std::vector<std::vector<double>> a,
                                               std::vector<double> b) {
    std::size_t n = b.size();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a[i][i]));
    double tolerance = 1e-10 * std::max(scale, 1.0);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        if (std::abs(a[pivot][col]) < tolerance)
            throw DataError("rank-deficient design matrix (collinear feature columns)");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col) continue;
            double factor = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
            b[row] -= factor * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

}  // namespace detail

// Closed-form least squares via the normal equations, with an intercept term
// and training R^2. Targets are keyed by game id and must cover every row.
inline RegressionModel fit_ols(const FeatureMatrix& features,
                               const std::map<std::string, double>& targets) {
    std::size_t rows = features.game_ids.size();
    std::size_t cols = features.columns.size();
    if (rows < cols + 2)
        throw DataError("too few games to fit: need at least " +
                        std::to_string(cols + 2) + ", have " + std::to_string(rows));
    std::vector<double> y;
    y.reserve(rows);
    std::string missing;
    for (const std::string& id : features.game_ids) {
        auto it = targets.find(id);
        if (it == targets.end()) {
            if (!missing.empty()) missing += ", ";
            missing += id;
        } else {
            y.push_back(it->second);
        }
    }
    if (!missing.empty())
        throw DataError("targets missing for game ids: " + missing);

    // Design matrix [1 | z-columns]; normal equations X^T X w = X^T y.
    std::size_t terms = cols + 1;
    std::vector<std::vector<double>> xtx(terms, std::vector<double>(terms, 0.0));
    std::vector<double> xty(terms, 0.0);
    auto design = [&](std::size_t row, std::size_t term) {
        return term == 0 ? 1.0 : features.standardized[row][term - 1];
    };
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < terms; ++i) {
            xty[i] += design(r, i) * y[r];
            for (std::size_t j = 0; j < terms; ++j)
                xtx[i][j] += design(r, i) * design(r, j);
        }
    }
    std::vector<double> solution = detail::solve_linear_system(xtx, xty);

    RegressionModel model;
    model.intercept = solution[0];
    model.columns = features.columns;
    model.weights.assign(solution.begin() + 1, solution.end());
    model.means = features.means;
    model.stds = features.stds;

    double y_mean = 0.0;
    for (double v : y) y_mean += v;
    y_mean /= static_cast<double>(rows);
    double ss_residual = 0.0;
    double ss_total = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        double fitted = model.intercept;
        for (std::size_t c = 0; c < cols; ++c)
            fitted += model.weights[c] * features.standardized[r][c];
        ss_residual += (y[r] - fitted) * (y[r] - fitted);
        ss_total += (y[r] - y_mean) * (y[r] - y_mean);
    }
    model.r_squared = ss_total == 0.0 ? 0.0 : 1.0 - ss_residual / ss_total;
    return model;
}

// Applies the stored standardization, then the linear model, to raw feature
// values for one game.
inline double predict_fun(const RegressionModel& model,
                          const std::map<std::string, double>& raw_features) {
    double prediction = model.intercept;
    for (std::size_t c = 0; c < model.columns.size(); ++c) {
        auto it = raw_features.find(model.columns[c]);
        if (it == raw_features.end())
            throw DataError("missing feature column: " + model.columns[c]);
        prediction += model.weights[c] * (it->second - model.means[c]) / model.stds[c];
    }
    return prediction;
}

}  // namespace mnk
