#include "treek/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "treek/errors.hpp"

namespace treek {

namespace {
constexpr double kCurvatureFloor = 1e-12;
}

// Solves  min 1/2 a'Qa - e'a  s.t. 0 <= a_i <= C, sum y_i a_i = 0 with
// Q_ij = y_i y_j K_ij. grad_i = (Qa)_i - 1, and -y_i grad_i = y_i - f_i
// where f_i is the bias-free decision value, so the maximal violating pair
// brackets the bias.
SvmModel svm_train(const Matrix& kernel, const std::vector<int>& labels, const SvmOptions& opts) {
    const std::size_t n = labels.size();
    if (kernel.rows != n || kernel.cols != n) {
        throw std::invalid_argument("svm_train: kernel must be " + std::to_string(n) + "x" +
                                    std::to_string(n));
    }
    if (!(opts.C > 0.0)) throw ConfigError("svm_train: C must be > 0");
    bool has_pos = false, has_neg = false;
    for (int y : labels) {
        if (y == 1) has_pos = true;
        else if (y == -1) has_neg = true;
        else throw std::invalid_argument("svm_train: labels must be -1 or +1");
    }
    if (!has_pos || !has_neg) {
        throw SolverError("svm_train: training set contains a single class, the equality "
                          "constraint is unsatisfiable");
    }

    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);
    const double C = opts.C;

    SvmModel model;
    model.C = C;
    model.labels = labels;

    std::int64_t iter = 0;
    double residual = std::numeric_limits<double>::infinity();
    while (true) {
        // maximal violating pair
        int i = -1, j = -1;
        double up = -std::numeric_limits<double>::infinity();
        double low = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            const double y = labels[t];
            const double v = -y * grad[t];
            const bool in_up = (y > 0 && alpha[t] < C) || (y < 0 && alpha[t] > 0);
            const bool in_low = (y > 0 && alpha[t] > 0) || (y < 0 && alpha[t] < C);
            if (in_up && v > up) {
                up = v;
                i = static_cast<int>(t);
            }
            if (in_low && v < low) {
                low = v;
                j = static_cast<int>(t);
            }
        }
        residual = up - low;
        if (residual <= opts.tolerance) break;
        if (iter >= opts.max_iterations) {
            throw SolverError("svm_train: no convergence after " +
                              std::to_string(opts.max_iterations) +
                              " iterations, residual " + std::to_string(residual));
        }

        const std::size_t si = static_cast<std::size_t>(i);
        const std::size_t sj = static_cast<std::size_t>(j);
        const double yi = labels[si];
        const double yj = labels[sj];

        // One step along alpha_i += yi*delta, alpha_j -= yj*delta keeps the
        // equality constraint; clip delta to the box.
        double eta = kernel(si, si) + kernel(sj, sj) - 2.0 * kernel(si, sj);
        eta = std::max(eta, kCurvatureFloor);
        double delta = residual / eta;
        const double max_i = yi > 0 ? C - alpha[si] : alpha[si];
        const double max_j = yj > 0 ? alpha[sj] : C - alpha[sj];
        delta = std::min(delta, std::min(max_i, max_j));

        alpha[si] += yi * delta;
        alpha[sj] -= yj * delta;
        alpha[si] = std::clamp(alpha[si], 0.0, C);
        alpha[sj] = std::clamp(alpha[sj], 0.0, C);
        for (std::size_t t = 0; t < n; ++t) {
            grad[t] += labels[t] * delta * (kernel(t, si) - kernel(t, sj));
        }
        ++iter;
    }
    model.iterations = iter;
    model.alpha = std::move(alpha);

    // Bias from free support vectors; fall back to the violating-pair
    // midpoint when every alpha sits on the box.
    double bias_sum = 0.0;
    int free_count = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (model.alpha[t] > 0.0) model.support.push_back(static_cast<int>(t));
        if (model.alpha[t] > 0.0 && model.alpha[t] < C) {
            bias_sum += -labels[t] * grad[t];
            ++free_count;
        }
    }
    if (free_count > 0) {
        model.bias = bias_sum / free_count;
    } else {
        double up = -std::numeric_limits<double>::infinity();
        double low = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            const double y = labels[t];
            const double v = -y * grad[t];
            const bool in_up = (y > 0 && model.alpha[t] < C) || (y < 0 && model.alpha[t] > 0);
            const bool in_low = (y > 0 && model.alpha[t] > 0) || (y < 0 && model.alpha[t] < C);
            if (in_up) up = std::max(up, v);
            if (in_low) low = std::min(low, v);
        }
        model.bias = (up + low) / 2.0;
    }
    return model;
}

std::vector<double> svm_decision(const SvmModel& model, const Matrix& rows) {
    if (rows.cols != model.alpha.size()) {
        throw std::invalid_argument("svm_predict: expected " + std::to_string(model.alpha.size()) +
                                    " kernel columns, got " + std::to_string(rows.cols));
    }
    std::vector<double> out(rows.rows, 0.0);
    for (std::size_t r = 0; r < rows.rows; ++r) {
        double f = model.bias;
        for (int t : model.support) {
            const std::size_t st = static_cast<std::size_t>(t);
            f += model.alpha[st] * model.labels[st] * rows(r, st);
        }
        out[r] = f;
    }
    return out;
}

std::vector<int> svm_predict(const SvmModel& model, const Matrix& rows) {
    const auto decisions = svm_decision(model, rows);
    std::vector<int> labels(decisions.size());
    for (std::size_t i = 0; i < decisions.size(); ++i) {
        labels[i] = decisions[i] < 0.0 ? -1 : 1;
    }
    return labels;
}

}  // namespace treek
