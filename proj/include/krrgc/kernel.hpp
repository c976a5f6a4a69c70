#pragma once

#include <span>

#include "krrgc/panel.hpp"

namespace krrgc {

// exp(-gamma * ||a - b||^2). Throws on dimension mismatch or gamma <= 0.
double rbf_kernel(std::span<const double> a, std::span<const double> b, double gamma);

// Symmetric Gram matrix over the rows of `rows`, unit diagonal. Rows are
// distributed over OpenMP threads; every entry is computed by the same
// fixed-order loop, so the result does not depend on the thread count.
Eigen::MatrixXd gram_matrix(const Matrix& rows, double gamma);

// out[m] = sum_i alpha[i] * k(train_i, query_m), summed in training-row order.
Vector kernel_predict(const Matrix& train, const Vector& alpha, const Matrix& query, double gamma);

// Single-threaded reference versions. Kept for tests and benchmarks; results
// are bit-identical to the parallel kernels.
namespace reference {
Eigen::MatrixXd gram_matrix(const Matrix& rows, double gamma);
Vector kernel_predict(const Matrix& train, const Vector& alpha, const Matrix& query, double gamma);
}  // namespace reference

}  // namespace krrgc
