#pragma once

#include <cstdint>
#include <vector>

namespace treek {

/// Minimal row-major dense matrix used for kernel slices.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

/// Dual solution of a binary C-SVM trained on a precomputed kernel.
struct SvmModel {
    std::vector<double> alpha;   // dual coefficients, 0 <= alpha_i <= C
    std::vector<int> labels;     // training labels (-1/+1)
    std::vector<int> support;    // indices with alpha_i > 0
    double bias = 0.0;
    double C = 1.0;
    std::int64_t iterations = 0;
};

struct SvmOptions {
    double C = 1.0;
    double tolerance = 1e-3;               // KKT stopping tolerance
    std::int64_t max_iterations = 1'000'000;
};

/// Trains a binary C-SVM with sequential minimal optimization over the
/// precomputed train kernel (n x n) using maximal-violating-pair working
/// set selection (ties resolved toward the smaller index, so the solver is
/// deterministic). Throws SolverError when only one class is present or
/// when the iteration limit is reached (the message carries the residual).
SvmModel svm_train(const Matrix& kernel, const std::vector<int>& labels, const SvmOptions& opts);

/// Predicted labels: sign of the decision value, exact zeros map to +1.
/// `rows` holds kernel values between test points (rows) and the model's
/// training points (columns). Throws std::invalid_argument on a column
/// count mismatch.
std::vector<int> svm_predict(const SvmModel& model, const Matrix& rows);

/// Decision values rather than labels.
std::vector<double> svm_decision(const SvmModel& model, const Matrix& rows);

}  // namespace treek
